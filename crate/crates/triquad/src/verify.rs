//! Verification suites.
//!
//! Each check records a measured deviation against a bound. Numerical
//! errors inside a check are recorded as a non-finite measurement, which
//! always fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use triquad_core::counterexample::{
    build_pair, counterexample_grid, discriminating_angle, indistinguishability_verdict,
    indistinguishability_verdict_with, rational_angle_k, three_angle_counterexample, CANONICAL_K,
};
use triquad_core::frft::{frft_grid, frft_spectral, quadrature_intensity, quadrature_mean};
use triquad_core::hermite::{expand, hermite_eval, required_halfwidth, synthesize};
use triquad_core::phasespace::{radon_slice, wigner};
use triquad_core::signal::{
    inner_product, phase_aligned_sup_distance, sup_density_difference, sup_distance,
    total_variation_distance,
};
use triquad_core::symplectic::{
    canonical_scale_factors, canonical_targets, canonical_triple_matrix, map_line,
    obstruction_search,
};
use triquad_core::weyl::{
    characteristic_function, metaplectic_apply, symplectic_form, weyl_apply, weyl_expectation,
};
use triquad_core::{
    Complex64, Grid, HermiteExpansion, HermiteTable, PhasePoint, QuadratureLine, RationalAngle,
    SymplecticMatrix2,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Hermite,
    Frft,
    Weyl,
    Symplectic,
    Counterexample,
    Phasespace,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Hermite => "hermite",
            Suite::Frft => "frft",
            Suite::Weyl => "weyl",
            Suite::Symplectic => "symplectic",
            Suite::Counterexample => "counterexample",
            Suite::Phasespace => "phasespace",
            Suite::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Hermite,
                Suite::Frft,
                Suite::Weyl,
                Suite::Symplectic,
                Suite::Counterexample,
                Suite::Phasespace,
            ],
            s => vec![s],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `measured <= bound`
    AtMost,
    /// `measured > bound`
    Above,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl Check {
    fn new(
        suite: &'static str,
        name: &str,
        measured: f64,
        bound: f64,
        comparison: Comparison,
    ) -> Self {
        let mut c = Check {
            suite,
            name: format!("{suite}.{name}"),
            measured,
            bound,
            comparison,
            passed: false,
        };
        c.evaluate();
        c
    }

    fn at_most(suite: &'static str, name: &str, measured: f64, bound: f64) -> Self {
        Check::new(suite, name, measured, bound, Comparison::AtMost)
    }

    fn above(suite: &'static str, name: &str, measured: f64, bound: f64) -> Self {
        Check::new(suite, name, measured, bound, Comparison::Above)
    }

    fn evaluate(&mut self) {
        self.passed = match self.comparison {
            Comparison::AtMost => self.measured <= self.bound,
            Comparison::Above => self.measured > self.bound,
        };
    }

    /// Replaces the bound and re-evaluates.
    pub fn set_bound(&mut self, bound: f64) {
        self.bound = bound;
        self.evaluate();
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub suite: &'static str,
    pub passed: bool,
    pub failed: Vec<String>,
    pub checks: Vec<Check>,
}

impl Summary {
    pub fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let failed: Vec<String> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.clone())
            .collect();
        Summary {
            suite: suite.name(),
            passed: failed.is_empty(),
            failed,
            checks,
        }
    }

    /// Fixed-width table, one line per check.
    pub fn table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut out = format!(
            "{:<width$}  {:>24}  {:>2}  {:>24}  result\n",
            "check", "measured", "", "bound"
        );
        for c in &self.checks {
            let op = match c.comparison {
                Comparison::AtMost => "<=",
                Comparison::Above => ">",
            };
            out.push_str(&format!(
                "{:<width$}  {:>24.16e}  {:>2}  {:>24.16e}  {}\n",
                c.name,
                c.measured,
                op,
                c.bound,
                if c.passed { "PASS" } else { "FAIL" }
            ));
        }
        out
    }
}

/// Runs every check in `suite`.
pub fn run(suite: Suite) -> Vec<Check> {
    let mut checks = Vec::new();
    for s in suite.members() {
        checks.extend(match s {
            Suite::Hermite => hermite_checks(),
            Suite::Frft => frft_checks(),
            Suite::Weyl => weyl_checks(),
            Suite::Symplectic => symplectic_checks(),
            Suite::Counterexample => counterexample_checks(),
            Suite::Phasespace => phasespace_checks(),
            Suite::All => unreachable!("expanded by members"),
        });
    }
    checks
}

/// `max` that propagates NaN.
fn worst(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn or_nan<E>(r: Result<f64, E>) -> f64 {
    r.unwrap_or(f64::NAN)
}

fn random_state(rng: &mut ChaCha8Rng, max_index: usize) -> HermiteExpansion {
    let c: Vec<Complex64> = (0..=max_index)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = c.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    HermiteExpansion::new(c.into_iter().map(|v| v / norm).collect())
}

fn hermite_checks() -> Vec<Check> {
    const S: &str = "hermite";
    let g = Grid::default_verification();
    let table = HermiteTable::new(g, 20);
    let mut gram = 0.0f64;
    for m in 0..=20 {
        for n in 0..=m {
            let prod: Vec<f64> = table
                .row(m)
                .iter()
                .zip(table.row(n))
                .map(|(a, b)| a * b)
                .collect();
            let want = if m == n { 1.0 } else { 0.0 };
            gram = worst(gram, (g.integrate(&prod) - want).abs());
        }
    }

    let closed = |n: usize, x: f64| {
        let h0 = (-x * x / 2.0).exp() / PI.powf(0.25);
        match n {
            0 => h0,
            1 => 2f64.sqrt() * x * h0,
            2 => (2.0 * x * x - 1.0) / 2f64.sqrt() * h0,
            _ => (2.0 * x * x * x - 3.0 * x) / 3f64.sqrt() * h0,
        }
    };
    let mut closed_dev = 0.0f64;
    for j in 0..=80 {
        let x = -8.0 + 0.2 * j as f64;
        for n in 0..=3 {
            closed_dev = worst(
                closed_dev,
                (or_nan(hermite_eval(n, x)) - closed(n, x)).abs(),
            );
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let e = random_state(&mut rng, 16);
    let round_trip = or_nan(expand(&synthesize(&e, &g), 16).map(|back| {
        back.coefficients()
            .iter()
            .zip(e.coefficients())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()))
    }));

    vec![
        Check::at_most(S, "gram_matrix_to_20", gram, 1e-8),
        Check::at_most(S, "closed_forms_0_to_3", closed_dev, 1e-13),
        Check::at_most(S, "expand_synthesize_round_trip", round_trip, 1e-8),
    ]
}

fn frft_checks() -> Vec<Check> {
    const S: &str = "frft";
    let g = Grid::default_verification();
    let mut rng = ChaCha8Rng::seed_from_u64(202);

    let mut dual = 0.0f64;
    let mut grid_norm = 0.0f64;
    for _ in 0..20 {
        let max_index = rng.gen_range(0..=16);
        let e = random_state(&mut rng, max_index);
        let theta = rng.gen_range(0.0..2.0 * PI);
        let psi = synthesize(&e, &g);
        match frft_grid(&psi, theta) {
            Ok(out) => {
                dual = worst(
                    dual,
                    or_nan(sup_distance(
                        &out,
                        &synthesize(&frft_spectral(&e, theta), &g),
                    )),
                );
                grid_norm = worst(grid_norm, (out.norm_sqr() - psi.norm_sqr()).abs());
            }
            Err(_) => dual = f64::NAN,
        }
    }

    let e = random_state(&mut rng, 16);
    let mut rational_group = 0.0f64;
    for (q1, p1, q2, p2) in [
        (1, 3, 1, 6),
        (5, 4, 7, 8),
        (2, 5, 3, 5),
        (11, 12, 1, 12),
        (1, 4, 1, 4),
        (1, 2, 3, 2),
    ] {
        let a = RationalAngle::rational(q1, p1).expect("nonzero denominator");
        let b = RationalAngle::rational(q2, p2).expect("nonzero denominator");
        let composed = frft_spectral(&frft_spectral(&e, a), b);
        let direct = frft_spectral(&e, a.add(&b));
        for (x, y) in composed.coefficients().iter().zip(direct.coefficients()) {
            rational_group = worst(rational_group, (x - y).norm());
        }
    }

    let mut group = 0.0f64;
    let mut unitarity = 0.0f64;
    for _ in 0..20 {
        let (a, b) = (rng.gen_range(-7.0..7.0), rng.gen_range(-7.0..7.0));
        let composed = frft_spectral(&frft_spectral(&e, a), b);
        let direct = frft_spectral(&e, a + b);
        for (x, y) in composed.coefficients().iter().zip(direct.coefficients()) {
            group = worst(group, (x - y).norm());
        }
        unitarity = worst(
            unitarity,
            (frft_spectral(&e, a).norm_sqr() - e.norm_sqr()).abs(),
        );
    }

    let mut mean_dev = 0.0f64;
    for theta in [0.0, 0.4, 1.3, 2.9] {
        let m = quadrature_intensity(&e, theta, &g).map(|d| d.mean());
        mean_dev = worst(
            mean_dev,
            or_nan(m.map(|m| (m - quadrature_mean(&e, theta)).abs())),
        );
    }

    vec![
        Check::at_most(S, "dual_route_20_angles", dual, 1e-6),
        Check::at_most(S, "group_law_rational", rational_group, 1e-14),
        Check::at_most(S, "group_law_real", group, 1e-12),
        Check::at_most(S, "spectral_unitarity", unitarity, 1e-12),
        Check::at_most(S, "grid_unitarity", grid_norm, 1e-6),
        Check::at_most(S, "quadrature_mean_ladder", mean_dev, 1e-8),
    ]
}

fn weyl_checks() -> Vec<Check> {
    const S: &str = "weyl";
    let g = Grid::default_verification();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let psi = synthesize(&random_state(&mut rng, 6), &g);
    let point =
        |rng: &mut ChaCha8Rng| PhasePoint::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));

    let mut composition = 0.0f64;
    let mut commutation = 0.0f64;
    for _ in 0..50 {
        let (x, y) = (point(&mut rng), point(&mut rng));
        let omega = symplectic_form(&x, &y);
        let r = (|| {
            let xy = weyl_apply(&weyl_apply(&psi, y)?, x)?;
            let yx = weyl_apply(&weyl_apply(&psi, x)?, y)?;
            let mut joint = weyl_apply(&psi, x.add(&y))?;
            joint.scale(Complex64::from_polar(1.0, -0.5 * omega));
            let mut swapped = yx;
            swapped.scale(Complex64::from_polar(1.0, -omega));
            Ok::<_, triquad_core::Error>((sup_distance(&xy, &joint)?, sup_distance(&xy, &swapped)?))
        })();
        match r {
            Ok((a, b)) => {
                composition = worst(composition, a);
                commutation = worst(commutation, b);
            }
            Err(_) => composition = f64::NAN,
        }
    }

    let e = random_state(&mut rng, 8);
    let phi = synthesize(&e, &g);
    let mut characteristic = 0.0f64;
    for _ in 0..20 {
        let theta = rng.gen_range(0.0..PI);
        let u = rng.gen_range(-2.0..2.0);
        let (s, c) = theta.sin_cos();
        let r = (|| {
            let a = characteristic_function(&e, theta, u, &g)?;
            let b = weyl_expectation(&phi, PhasePoint::new(u * s, -u * c))?;
            Ok::<_, triquad_core::Error>((a - b).norm())
        })();
        characteristic = worst(characteristic, or_nan(r));
    }

    let mut covariance = 0.0f64;
    for _ in 0..20 {
        let psi = synthesize(&random_state(&mut rng, 5), &g);
        let s = SymplecticMatrix2::from_iwasawa(
            rng.gen_range(-PI..PI),
            rng.gen_range(0.7..1.4),
            rng.gen_range(-0.5..0.5),
        );
        let x = PhasePoint::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let r = (|| {
            let lhs = metaplectic_apply(&weyl_apply(&psi, x)?, &s)?;
            let rhs = weyl_apply(&metaplectic_apply(&psi, &s)?, s.apply(x))?;
            phase_aligned_sup_distance(&lhs, &rhs)
        })();
        covariance = worst(covariance, or_nan(r));
    }

    vec![
        Check::at_most(S, "composition_50_pairs", composition, 1e-8),
        Check::at_most(S, "commutation_50_pairs", commutation, 1e-8),
        Check::at_most(S, "characteristic_two_route_20", characteristic, 1e-6),
        Check::at_most(S, "metaplectic_covariance_20", covariance, 1e-6),
    ]
}

fn random_triple(rng: &mut ChaCha8Rng, gap: f64) -> (f64, f64, f64) {
    loop {
        let mut t = [
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..PI),
            rng.gen_range(0.0..PI),
        ];
        t.sort_by(f64::total_cmp);
        if t[1] - t[0] >= gap && t[2] - t[1] >= gap && PI - t[2] + t[0] >= gap {
            return (t[0], t[1], t[2]);
        }
    }
}

fn symplectic_checks() -> Vec<Check> {
    const S: &str = "symplectic";
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let targets = canonical_targets();
    let (mut angle_dev, mut det_dev, mut scale_dev) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let (t1, t2, t3) = random_triple(&mut rng, 0.05);
        let (Ok(s), Ok(scales)) = (
            canonical_triple_matrix(t1, t2, t3),
            canonical_scale_factors(t1, t2, t3),
        ) else {
            angle_dev = f64::NAN;
            continue;
        };
        det_dev = worst(det_dev, (s.det() - 1.0).abs());
        for (j, t) in [t1, t2, t3].into_iter().enumerate() {
            angle_dev = worst(
                angle_dev,
                map_line(&s, &QuadratureLine::new(t)).distance(&targets[j]),
            );
            let (vx, vy) = s.apply_vec((t.sin(), -t.cos()));
            let (tx, ty) = targets[j].direction();
            scale_dev = worst(
                scale_dev,
                (vx - scales[j] * tx).abs().max((vy - scales[j] * ty).abs()),
            );
        }
    }

    let residual = |theta: RationalAngle, d: u64| {
        obstruction_search(theta, d)
            .ok()
            .and_then(|r| r.min_residual)
            .unwrap_or(f64::NAN)
    };
    let transcendental = RationalAngle::from(1.0f64.atan2(PI));
    let third = RationalAngle::rational(1, 3).expect("nonzero denominator");
    let r6 = residual(transcendental, 6);
    let r8 = residual(transcendental, 8);

    vec![
        Check::at_most(S, "canonical_images_angle_100", angle_dev, 1e-10),
        Check::at_most(S, "canonical_det_100", det_dev, 1e-12),
        Check::at_most(S, "canonical_scale_factors_100", scale_dev, 1e-10),
        Check::at_most(
            S,
            "obstruction_rational_pi_over_3_d6",
            residual(third, 6),
            0.0,
        ),
        Check::above(S, "obstruction_acot_pi_d6", r6, 0.0),
        Check::at_most(S, "obstruction_monotone_d6_to_d8", r8 - r6, 0.0),
    ]
}

/// The twelve distinct angles `q pi / p` in `[0, pi)` with `p <= 6`.
pub fn small_denominator_angles() -> Vec<RationalAngle> {
    let mut out: Vec<RationalAngle> = Vec::new();
    for p in 1..=6u64 {
        for q in 0..p as i64 {
            let a = RationalAngle::rational(q, p).expect("nonzero denominator");
            if !out.contains(&a) {
                out.push(a);
            }
        }
    }
    out.sort_by(|a, b| a.value().total_cmp(&b.value()));
    out
}

/// Every list of 2 to 4 distinct angles from [`small_denominator_angles`].
pub fn small_denominator_lists() -> Vec<Vec<RationalAngle>> {
    let angles = small_denominator_angles();
    let n = angles.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones();
        if (2..=4).contains(&size) {
            out.push(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| angles[i])
                    .collect(),
            );
        }
    }
    out
}

/// Worst sup difference of the constructed pairs over all small-denominator
/// angle lists, and the number of lists.
pub fn closure_over_small_denominators(tol: f64) -> (f64, usize) {
    let lists = small_denominator_lists();
    let mut ks = Vec::with_capacity(lists.len());
    for list in &lists {
        match rational_angle_k(list) {
            Ok(k) => ks.push(k.recipe),
            Err(_) => return (f64::NAN, lists.len()),
        }
    }
    let top = ks.iter().copied().max().unwrap_or(1);
    let mut support: Vec<usize> = ks.iter().map(|&k| k as usize).collect();
    support.push(0);
    support.sort_unstable();
    support.dedup();
    let halfwidth = required_halfwidth(top as usize);
    let points = ((2.0 * halfwidth / 0.325).ceil() as usize) | 1;
    let Ok(grid) = Grid::symmetric(halfwidth, points) else {
        return (f64::NAN, lists.len());
    };
    let table = HermiteTable::sparse(grid, &support);
    let mut max_dev = 0.0f64;
    for (list, &k) in lists.iter().zip(&ks) {
        let r = build_pair(k).and_then(|(plus, minus)| {
            let back = list[0].neg();
            let (plus, minus) = (frft_spectral(&plus, back), frft_spectral(&minus, back));
            indistinguishability_verdict_with(&table, &plus, &minus, list, tol)
        });
        max_dev = worst(max_dev, r.map_or(f64::NAN, |v| v.max_sup_difference()));
    }
    (max_dev, lists.len())
}

fn counterexample_checks() -> Vec<Check> {
    const S: &str = "counterexample";
    let (plus, minus) = build_pair(CANONICAL_K).expect("positive index");
    let g = Grid::default_verification();
    let canonical: Vec<RationalAngle> = [(0, 1), (1, 4), (1, 2)]
        .iter()
        .map(|&(q, p)| RationalAngle::rational(q, p).expect("nonzero denominator"))
        .collect();
    let canonical_dev = or_nan(
        indistinguishability_verdict(&plus, &minus, &canonical, &g, 1e-10)
            .map(|v| v.max_sup_difference()),
    );
    let probe =
        or_nan(quadrature_intensity(&plus, FRAC_PI_3, &g).and_then(|a| {
            sup_density_difference(&a, &quadrature_intensity(&minus, FRAC_PI_3, &g)?)
        }));
    let overlap = plus.inner(&minus).norm();

    let (closure, lists) = closure_over_small_denominators(1e-10);

    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let (mut equal, mut orth, mut discrimination) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..20 {
        let (t1, t2, t3) = random_triple(&mut rng, 0.05);
        let r = counterexample_grid(t1, t2, t3).and_then(|grid| {
            let (a, b, report) = three_angle_counterexample(t1, t2, t3, &grid)?;
            let (_, diff) = discriminating_angle(&a, &b)?;
            let overlap = inner_product(&a, &b)?.norm();
            Ok((report.verdict.max_sup_difference(), overlap, diff))
        });
        match r {
            Ok((e, o, d)) => {
                equal = worst(equal, e);
                orth = worst(orth, o);
                discrimination = discrimination.min(d);
            }
            Err(_) => equal = f64::NAN,
        }
    }

    vec![
        Check::at_most(S, "canonical_0_pi4_pi2_k16", canonical_dev, 1e-10),
        Check::at_most(S, "canonical_pair_overlap", overlap, 1e-12),
        Check::above(S, "canonical_probe_pi3", probe, 1e-3),
        Check::at_most(
            S,
            &format!("closure_denominators_le_6_{lists}_lists"),
            closure,
            1e-10,
        ),
        Check::at_most(S, "three_angle_equal_intensities_20", equal, 1e-5),
        Check::at_most(S, "three_angle_overlap_20", orth, 1e-6),
        Check::above(S, "three_angle_discrimination_20", discrimination, 1e-3),
    ]
}

/// Direct quadrature of `(1/pi) int conj(psi(q+y)) psi(q-y) e^{2ipy} dy`.
fn wigner_point(e: &HermiteExpansion, q: f64, p: f64) -> f64 {
    let n = 4001;
    let ys = Grid::symmetric(14.0, n).expect("valid grid");
    let shifted = synthesize(e, &Grid::new(q - 14.0, ys.dx(), n).expect("valid grid"));
    let v = shifted.values();
    let integrand: Vec<f64> = ys
        .points()
        .enumerate()
        .map(|(j, y)| (v[j].conj() * v[n - 1 - j] * Complex64::from_polar(1.0, 2.0 * p * y)).re)
        .collect();
    ys.integrate(&integrand) / PI
}

fn phasespace_checks() -> Vec<Check> {
    const S: &str = "phasespace";
    let qg = Grid::symmetric(10.0, 256).expect("valid grid");
    let pg = qg;
    let out = Grid::symmetric(9.0, 181).expect("valid grid");
    let mut rng = ChaCha8Rng::seed_from_u64(606);

    let vacuum = wigner(&synthesize(&HermiteExpansion::basis(0), &qg), &pg);
    let (mut gauss, mut total) = (0.0f64, f64::NAN);
    match &vacuum {
        Ok(w) => {
            for i in (0..256).step_by(7) {
                for j in (0..256).step_by(5) {
                    let (q, p) = (qg.point(i), pg.point(j));
                    gauss = worst(gauss, (w.value(i, j) - (-(q * q + p * p)).exp() / PI).abs());
                }
            }
            total = (w.total() - 1.0).abs();
        }
        Err(_) => gauss = f64::NAN,
    }

    let mut tomography = 0.0f64;
    let mut marginal = 0.0f64;
    let mut residue = 0.0f64;
    for _ in 0..10 {
        let e = random_state(&mut rng, 8);
        let psi = synthesize(&e, &qg);
        let Ok(w) = wigner(&psi, &pg) else {
            tomography = f64::NAN;
            continue;
        };
        residue = worst(residue, w.imaginary_residue());
        for (m, d) in w.position_marginal().iter().zip(psi.intensity().density()) {
            marginal = worst(marginal, (m - d).abs());
        }
        for _ in 0..10 {
            let theta = rng.gen_range(0.0..PI);
            let r = radon_slice(&w, theta, &out).and_then(|slice| {
                total_variation_distance(&slice, &quadrature_intensity(&e, theta, &out)?)
            });
            tomography = worst(tomography, or_nan(r));
        }
    }

    let e = random_state(&mut rng, 5);
    let theta = 0.7;
    let mut covariance = 0.0f64;
    match frft_grid(&synthesize(&e, &qg), theta).and_then(|r| wigner(&r, &pg)) {
        Ok(w) => {
            let (sin, cos) = theta.sin_cos();
            for _ in 0..15 {
                let (i, j) = (rng.gen_range(64..192), rng.gen_range(64..192));
                let (q, p) = (qg.point(i), pg.point(j));
                let want = wigner_point(&e, q * cos - p * sin, q * sin + p * cos);
                covariance = worst(covariance, (w.value(i, j) - want).abs());
            }
        }
        Err(_) => covariance = f64::NAN,
    }

    let (plus, minus) = build_pair(CANONICAL_K).expect("positive index");
    let (mut pair_equal, mut pair_probe) = (0.0f64, f64::NAN);
    match (
        wigner(&synthesize(&plus, &qg), &pg),
        wigner(&synthesize(&minus, &qg), &pg),
    ) {
        (Ok(wp), Ok(wm)) => {
            let diff = |theta: f64| {
                or_nan(
                    radon_slice(&wp, theta, &out)
                        .and_then(|a| sup_density_difference(&a, &radon_slice(&wm, theta, &out)?)),
                )
            };
            for theta in [0.0, FRAC_PI_4, FRAC_PI_2] {
                pair_equal = worst(pair_equal, diff(theta));
            }
            pair_probe = diff(FRAC_PI_3);
        }
        _ => pair_equal = f64::NAN,
    }

    vec![
        Check::at_most(S, "vacuum_gaussian", gauss, 1e-6),
        Check::at_most(S, "vacuum_normalization", total, 1e-5),
        Check::at_most(S, "imaginary_residue", residue, 1e-10),
        Check::at_most(S, "position_marginal", marginal, 1e-6),
        Check::at_most(S, "tomography_10_states_10_angles_tv", tomography, 1e-3),
        Check::at_most(S, "rotation_covariance", covariance, 1e-4),
        Check::at_most(S, "pair_slices_equal_0_pi4_pi2", pair_equal, 2e-3),
        Check::above(S, "pair_slices_differ_pi3", pair_probe, 1e-3),
    ]
}
