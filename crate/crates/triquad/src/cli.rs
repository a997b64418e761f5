//! Command-line front end.
//!
//! Exit codes: 0 success (or a true verdict), 1 false verdict or failed
//! checks, 2 usage, parse and input errors, 3 degenerate angles, 4 more than
//! three angles without an exact rational form.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use triquad_core::counterexample::{
    counterexample_grid, normalize_angles, normalize_rational_angles, rational_angle_k,
    rational_counterexample, rational_grid, three_angle_counterexample, DUPLICATE_TOLERANCE,
    THREE_ANGLE_TOLERANCE,
};
use triquad_core::frft::{frft_grid, frft_spectral, quadrature_intensity};
use triquad_core::hermite::{expand, max_supported_index, synthesize};
use triquad_core::phasespace::{radon_slice, wigner};
use triquad_core::signal::{DEFAULT_HALFWIDTH, DEFAULT_POINTS};
use triquad_core::symplectic::{obstruction_search, OBSTRUCTION_CAVEAT};
use triquad_core::{Grid, IntensityProfile, RationalAngle, SampledSignal};

use crate::angles::{parse_angle, Angle};
use crate::io::{read_signal, read_wigner, write_density, write_signal, write_wigner};
use crate::report::{to_json, CounterexampleJson, ObstructionJson};
use crate::verify::{self, Suite, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "triquad",
    version,
    about = "Rotated-quadrature counterexamples and phase-space checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Grid half-width [default: 12, or sized to the problem]
    #[arg(long)]
    pub grid_halfwidth: Option<f64>,
    /// Number of grid points [default: 1024, or sized to the problem]
    #[arg(long)]
    pub grid_points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Spectral,
    Grid,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a pair of orthogonal states with equal intensities at the given angles
    Counterexample {
        /// Angles such as `0`, `pi/4`, `3pi/8`, `acot(pi)` or `0.7`; put
        /// negative angles after `--`
        #[arg(required = true)]
        angles: Vec<String>,
        #[command(flatten)]
        grid: GridArgs,
        /// Intensity tolerance [default: 1e-10 for rational angles, 1e-5 otherwise]
        #[arg(long)]
        tol: Option<f64>,
        /// Write `density_plus_J.csv` and `density_minus_J.csv` per angle
        #[arg(long, value_name = "DIR")]
        emit_densities: Option<PathBuf>,
        /// Also write the JSON report here
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Fractional Fourier transform of a signal CSV
    Frft {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, value_enum, default_value = "spectral")]
        method: Method,
        /// Output CSV [default: stdout]
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rotated-quadrature density of a signal CSV
    Intensity {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, value_enum, default_value = "spectral")]
        method: Method,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Wigner function of a signal CSV on a phase-space lattice
    Wigner {
        #[arg(long)]
        input: PathBuf,
        /// Momentum half-width [default: the signal half-width, capped at pi / (2 dx)]
        #[arg(long)]
        p_halfwidth: Option<f64>,
        /// Momentum points [default: the signal length]
        #[arg(long)]
        p_points: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Line integrals of a Wigner CSV across one direction
    Radon {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Output grid [default: 0.9 of the lattice disc radius, lattice q points]
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bounded search for a symplectic map onto rational target lines
    Obstruction {
        theta4: String,
        #[arg(long, default_value_t = 6)]
        max_denominator: u64,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Replace the bound of a check, e.g. `weyl.composition_50_pairs=1e-30`
        #[arg(long = "override", value_name = "CHECK=BOUND")]
        overrides: Vec<String>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn degenerate(message: impl ToString) -> Self {
        Failure {
            code: EXIT_DEGENERATE,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

pub fn run_from_env() -> i32 {
    run(std::env::args_os())
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(command: Command) -> CmdResult {
    match command {
        Command::Counterexample {
            angles,
            grid,
            tol,
            emit_densities,
            json,
        } => cmd_counterexample(
            &angles,
            &grid,
            tol,
            emit_densities.as_deref(),
            json.as_deref(),
        ),
        Command::Frft {
            input,
            theta,
            method,
            output,
        } => cmd_frft(&input, &theta, method, output.as_deref()),
        Command::Intensity {
            input,
            theta,
            method,
            output,
        } => cmd_intensity(&input, &theta, method, output.as_deref()),
        Command::Wigner {
            input,
            p_halfwidth,
            p_points,
            output,
        } => cmd_wigner(&input, p_halfwidth, p_points, output.as_deref()),
        Command::Radon {
            input,
            theta,
            grid,
            output,
        } => cmd_radon(&input, &theta, &grid, output.as_deref()),
        Command::Obstruction {
            theta4,
            max_denominator,
            json,
        } => cmd_obstruction(&theta4, max_denominator, json.as_deref()),
        Command::Verify {
            suite,
            overrides,
            json,
        } => cmd_verify(suite, &overrides, json.as_deref()),
    }
}

fn parse_theta(text: &str) -> Result<Angle, Failure> {
    parse_angle(text).map_err(Failure::usage)
}

fn explicit_grid(args: &GridArgs, fallback: impl FnOnce() -> Grid) -> Result<Grid, Failure> {
    match (args.grid_halfwidth, args.grid_points) {
        (None, None) => Ok(fallback()),
        (h, n) => Grid::symmetric(h.unwrap_or(DEFAULT_HALFWIDTH), n.unwrap_or(DEFAULT_POINTS))
            .map_err(Failure::usage),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(
    output: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> Result<(), crate::io::CsvError>,
) -> Result<(), Failure> {
    match output {
        Some(path) => {
            let mut w = create(path)?;
            write(&mut w).map_err(Failure::usage)?;
            w.flush().map_err(Failure::usage)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).map_err(Failure::usage)
        }
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_counterexample(
    inputs: &[String],
    grid_args: &GridArgs,
    tol: Option<f64>,
    densities_dir: Option<&Path>,
    json_path: Option<&Path>,
) -> CmdResult {
    if inputs.len() < 3 {
        return Err(Failure::usage("at least three angles are required"));
    }
    let parsed = inputs
        .iter()
        .map(|s| parse_angle(s))
        .collect::<Result<Vec<Angle>, _>>()
        .map_err(Failure::usage)?;
    if let Some(t) = tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Failure::usage("--tol must be a finite non-negative number"));
        }
    }

    let radians: Vec<f64> = parsed.iter().map(|a| a.radians).collect();
    let normalized = normalize_angles(&radians).map_err(Failure::usage)?;
    if normalized.len() < parsed.len() {
        return Err(Failure::degenerate(format!(
            "angles coincide modulo pi (within {DUPLICATE_TOLERANCE:e})"
        )));
    }

    if let Some(exact) = parsed
        .iter()
        .map(|a| a.exact)
        .collect::<Option<Vec<RationalAngle>>>()
    {
        let exact = normalize_rational_angles(&exact).map_err(Failure::usage)?;
        let choice = rational_angle_k(&exact).map_err(Failure::usage)?;
        let grid = explicit_grid(grid_args, || rational_grid(choice.recipe))?;
        let tol = tol.unwrap_or(1e-10);
        let (plus, minus, report) =
            rational_counterexample(&exact, &grid, tol).map_err(Failure::usage)?;
        if let Some(dir) = densities_dir {
            let mut pairs = Vec::with_capacity(exact.len());
            for theta in &exact {
                pairs.push((
                    quadrature_intensity(&plus, *theta, &grid).map_err(Failure::usage)?,
                    quadrature_intensity(&minus, *theta, &grid).map_err(Failure::usage)?,
                ));
            }
            write_densities(dir, &pairs)?;
        }
        let json = to_json(&CounterexampleJson::new("rational", inputs, &report, &grid));
        return finish_counterexample(&json, json_path, report.verdict.indistinguishable);
    }

    if normalized.len() != 3 {
        return Err(Failure {
            code: EXIT_UNSUPPORTED,
            message: "more than three angles need exact rational multiples of pi".to_string(),
        });
    }
    let (t1, t2, t3) = (normalized[0], normalized[1], normalized[2]);
    let auto = counterexample_grid(t1, t2, t3).map_err(|e| match e {
        triquad_core::Error::DegenerateAngles => Failure::degenerate(e),
        other => Failure::usage(other),
    })?;
    let grid = explicit_grid(grid_args, || auto)?;
    let (plus, minus, mut report) =
        three_angle_counterexample(t1, t2, t3, &grid).map_err(Failure::usage)?;
    let tol = tol.unwrap_or(THREE_ANGLE_TOLERANCE);
    report.verdict.tolerance = tol;
    report.verdict.indistinguishable = report
        .verdict
        .deviations
        .iter()
        .all(|d| d.sup_difference <= tol);
    if let Some(dir) = densities_dir {
        let mut pairs = Vec::with_capacity(3);
        for theta in [t1, t2, t3] {
            pairs.push((
                frft_grid(&plus, theta).map_err(Failure::usage)?.intensity(),
                frft_grid(&minus, theta)
                    .map_err(Failure::usage)?
                    .intensity(),
            ));
        }
        write_densities(dir, &pairs)?;
    }
    let json = to_json(&CounterexampleJson::new(
        "three-angle",
        inputs,
        &report,
        &grid,
    ));
    finish_counterexample(&json, json_path, report.verdict.indistinguishable)
}

fn write_densities(
    dir: &Path,
    pairs: &[(IntensityProfile, IntensityProfile)],
) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    for (j, (plus, minus)) in pairs.iter().enumerate() {
        for (label, profile) in [("plus", plus), ("minus", minus)] {
            let path = dir.join(format!("density_{label}_{}.csv", j + 1));
            let mut w = create(&path)?;
            write_density(&mut w, profile).map_err(Failure::usage)?;
            w.flush().map_err(Failure::usage)?;
        }
    }
    Ok(())
}

fn finish_counterexample(json: &str, path: Option<&Path>, indistinguishable: bool) -> CmdResult {
    println!("{json}");
    if let Some(path) = path {
        write_text(path, &format!("{json}\n"))?;
    }
    Ok(if indistinguishable {
        EXIT_OK
    } else {
        EXIT_FALSE
    })
}

fn is_identity(theta: &Angle) -> bool {
    theta.exact.is_some_and(|a| {
        a.as_fraction()
            .is_some_and(|(q, p)| q.rem_euclid(2 * p as i64) == 0)
    })
}

fn transform(psi: &SampledSignal, theta: &Angle, method: Method) -> Result<SampledSignal, Failure> {
    if is_identity(theta) {
        return Ok(psi.clone());
    }
    match method {
        Method::Grid => frft_grid(psi, theta.radians).map_err(Failure::usage),
        Method::Spectral => {
            let max_index = max_supported_index(psi.grid())
                .ok_or_else(|| Failure::usage("grid too narrow for a Hermite expansion"))?;
            let e = expand(psi, max_index).map_err(Failure::usage)?;
            Ok(synthesize(
                &frft_spectral(&e, theta.to_rational_angle()),
                psi.grid(),
            ))
        }
    }
}

fn cmd_frft(input: &Path, theta: &str, method: Method, output: Option<&Path>) -> CmdResult {
    let theta = parse_theta(theta)?;
    let psi = read_signal(open(input)?).map_err(Failure::usage)?;
    let out = transform(&psi, &theta, method)?;
    emit(output, |w| write_signal(w, &out))?;
    Ok(EXIT_OK)
}

fn cmd_intensity(input: &Path, theta: &str, method: Method, output: Option<&Path>) -> CmdResult {
    let theta = parse_theta(theta)?;
    let psi = read_signal(open(input)?).map_err(Failure::usage)?;
    let density = transform(&psi, &theta, method)?.intensity();
    emit(output, |w| write_density(w, &density))?;
    Ok(EXIT_OK)
}

fn cmd_wigner(
    input: &Path,
    p_halfwidth: Option<f64>,
    p_points: Option<usize>,
    output: Option<&Path>,
) -> CmdResult {
    let psi = read_signal(open(input)?).map_err(Failure::usage)?;
    let g = psi.grid();
    let limit = std::f64::consts::PI / (2.0 * g.dx());
    let pg = Grid::symmetric(
        p_halfwidth.unwrap_or_else(|| g.halfwidth().min(limit)),
        p_points.unwrap_or(g.len()),
    )
    .map_err(Failure::usage)?;
    let w = wigner(&psi, &pg).map_err(Failure::usage)?;
    emit(output, |out| write_wigner(out, &w))?;
    Ok(EXIT_OK)
}

fn cmd_radon(input: &Path, theta: &str, grid_args: &GridArgs, output: Option<&Path>) -> CmdResult {
    let theta = parse_theta(theta)?;
    let w = read_wigner(open(input)?).map_err(Failure::usage)?;
    let fallback =
        Grid::symmetric(0.9 * w.disc_radius(), w.q_grid().len()).map_err(Failure::usage)?;
    let g = explicit_grid(grid_args, || fallback)?;
    let density = radon_slice(&w, theta.radians, &g).map_err(Failure::usage)?;
    emit(output, |out| write_density(out, &density))?;
    Ok(EXIT_OK)
}

fn cmd_obstruction(text: &str, max_denominator: u64, json_path: Option<&Path>) -> CmdResult {
    let theta4 = parse_theta(text)?;
    let report =
        obstruction_search(theta4.to_rational_angle(), max_denominator).map_err(Failure::usage)?;
    let json = to_json(&ObstructionJson::new(text, &report));
    println!("{json}");
    eprintln!("{OBSTRUCTION_CAVEAT}");
    if let Some(path) = json_path {
        write_text(path, &format!("{json}\n"))?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(suite: Suite, overrides: &[String], json_path: Option<&Path>) -> CmdResult {
    let mut parsed = Vec::with_capacity(overrides.len());
    for o in overrides {
        let (name, bound) = o
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("override `{o}` is not CHECK=BOUND")))?;
        let bound: f64 = bound
            .parse()
            .map_err(|_| Failure::usage(format!("override `{o}` has a bad bound")))?;
        parsed.push((name.to_string(), bound));
    }
    let mut checks = verify::run(suite);
    for (name, bound) in &parsed {
        let check = checks.iter_mut().find(|c| &c.name == name).ok_or_else(|| {
            Failure::usage(format!("no check named `{name}` in suite {}", suite.name()))
        })?;
        check.set_bound(*bound);
    }
    let summary = Summary::new(suite, checks);
    let json = to_json(&summary);
    println!("{json}");
    eprint!("{}", summary.table());
    for name in &summary.failed {
        eprintln!("FAILED: {name}");
    }
    if let Some(path) = json_path {
        write_text(path, &format!("{json}\n"))?;
    }
    Ok(if summary.passed { EXIT_OK } else { EXIT_FALSE })
}
