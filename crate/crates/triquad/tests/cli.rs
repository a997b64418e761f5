use std::fs::{self, File};
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use triquad::io::{read_density, read_signal, write_signal, write_wigner};
use triquad_core::hermite::synthesize;
use triquad_core::phasespace::wigner;
use triquad_core::{Grid, HermiteExpansion, SampledSignal};

fn triquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triquad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_signal_file(path: &Path, psi: &SampledSignal) {
    write_signal(File::create(path).unwrap(), psi).unwrap();
}

fn read_signal_file(path: &Path) -> SampledSignal {
    read_signal(File::open(path).unwrap()).unwrap()
}

fn max_diff(a: &SampledSignal, b: &SampledSignal) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .fold(0.0, |m, (x, y)| f64::max(m, (x - y).norm()))
}

fn gaussian_mixture() -> SampledSignal {
    let g = Grid::symmetric(12.0, 1024).unwrap();
    let e = HermiteExpansion::from_sparse(&[
        (0, triquad_core::Complex64::new(0.6, 0.0)),
        (3, triquad_core::Complex64::new(0.0, 0.64)),
        (5, triquad_core::Complex64::new(-0.48, 0.0)),
    ]);
    synthesize(&e, &g)
}

#[test]
fn canonical_counterexample_uses_k_16() {
    let out = triquad(&["counterexample", "0", "pi/4", "pi/2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["k"], 16);
    assert_eq!(v["construction"], "rational");
    assert_eq!(v["verdict"]["indistinguishable"], true);
    assert!(v["verdict"]["max_sup_difference"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn emitted_densities_come_in_equal_pairs() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("out");
    let out = triquad(&[
        "counterexample",
        "0",
        "pi/3",
        "2pi/3",
        "--emit-densities",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let mut names: Vec<String> = fs::read_dir(&out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 6);
    for j in 1..=3 {
        let plus = read_density(File::open(out_dir.join(format!("density_plus_{j}.csv"))).unwrap())
            .unwrap();
        let minus =
            read_density(File::open(out_dir.join(format!("density_minus_{j}.csv"))).unwrap())
                .unwrap();
        for (a, b) in plus.density().iter().zip(minus.density()) {
            assert!((a - b).abs() <= 1e-5);
        }
        assert!((plus.total() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn degenerate_angles_exit_3() {
    assert_eq!(code(&triquad(&["counterexample", "0", "0", "pi/2"])), 3);
    assert_eq!(code(&triquad(&["counterexample", "0", "pi", "pi/2"])), 3);
    assert_eq!(code(&triquad(&["counterexample", "0.2", "0.2", "1.5"])), 3);
}

#[test]
fn bad_counterexample_input_exits_2() {
    assert_eq!(code(&triquad(&["counterexample", "0", "pi/4"])), 2);
    assert_eq!(
        code(&triquad(&["counterexample", "0", "pi/4", "banana"])),
        2
    );
    assert_eq!(code(&triquad(&["counterexample"])), 2);
    assert_eq!(
        code(&triquad(&["counterexample", "0", "1", "2", "--tol", "-1"])),
        2
    );
}

#[test]
fn real_triple_runs_the_metaplectic_pipeline() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let out = triquad(&[
        "counterexample",
        "0.1",
        "acot(pi)",
        "2.0",
        "--json",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["construction"], "three-angle");
    assert_eq!(v["k"], 16);
    assert!(v["overlap"].as_f64().unwrap() <= 1e-6);
    assert!(v["verdict"]["max_sup_difference"].as_f64().unwrap() <= 1e-5);
    assert!(v["matrix"].is_array());
    let saved: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(saved, v);
}

#[test]
fn zero_tolerance_gives_a_false_verdict() {
    let out = triquad(&["counterexample", "0.1", "1.0", "2.0", "--tol", "0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["verdict"]["indistinguishable"], false);
}

#[test]
fn four_real_angles_are_unsupported() {
    assert_eq!(
        code(&triquad(&["counterexample", "0.1", "0.7", "1.3", "2.0"])),
        4
    );
}

#[test]
fn four_rational_angles_use_the_recipe() {
    let out = triquad(&["counterexample", "0", "pi/3", "pi/2", "3pi/4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["construction"], "rational");
    assert_eq!(v["verdict"]["deviations"].as_array().unwrap().len(), 4);
}

#[test]
fn negative_angles_after_double_dash() {
    let out = triquad(&["counterexample", "--", "-pi/4", "0", "pi/4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn frft_at_zero_is_the_identity() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in.csv");
    let psi = gaussian_mixture();
    write_signal_file(&input, &psi);
    for method in ["spectral", "grid"] {
        let output = dir.path().join(format!("{method}.csv"));
        let out = triquad(&[
            "frft",
            "--input",
            input.to_str().unwrap(),
            "--theta",
            "0",
            "--method",
            method,
            "--output",
            output.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        assert_eq!(read_signal_file(&output).values(), psi.values());
    }
}

#[test]
fn frft_at_pi_agrees_across_methods() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in.csv");
    write_signal_file(&input, &gaussian_mixture());
    let mut outputs = Vec::new();
    for method in ["spectral", "grid"] {
        let output = dir.path().join(format!("{method}.csv"));
        let out = triquad(&[
            "frft",
            "--input",
            input.to_str().unwrap(),
            "--theta",
            "pi",
            "--method",
            method,
            "--output",
            output.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        outputs.push(read_signal_file(&output));
    }
    assert!(max_diff(&outputs[0], &outputs[1]) <= 1e-6);
}

#[test]
fn gaussian_is_fourier_invariant() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("h0.csv");
    let g = Grid::symmetric(12.0, 1024).unwrap();
    let h0 = synthesize(&HermiteExpansion::basis(0), &g);
    write_signal_file(&input, &h0);
    for method in ["spectral", "grid"] {
        let out = triquad(&[
            "frft",
            "--input",
            input.to_str().unwrap(),
            "--theta",
            "pi/2",
            "--method",
            method,
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let back = read_signal(out.stdout.as_slice()).unwrap();
        assert!(max_diff(&back, &h0) <= 1e-6, "{method}");
    }
}

#[test]
fn malformed_csv_exits_2() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "x,re,im\n0,1,0\n1,abc,0\n").unwrap();
    for cmd in ["frft", "intensity"] {
        let out = triquad(&[cmd, "--input", input.to_str().unwrap(), "--theta", "pi"]);
        assert_eq!(code(&out), 2);
        assert!(stderr(&out).contains("line 3"));
    }
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        code(&triquad(&[
            "frft",
            "--input",
            missing.to_str().unwrap(),
            "--theta",
            "1"
        ])),
        2
    );
    fs::write(&input, "q,p,w\n0,0,1\n").unwrap();
    assert_eq!(
        code(&triquad(&[
            "radon",
            "--input",
            input.to_str().unwrap(),
            "--theta",
            "1"
        ])),
        2
    );
}

#[test]
fn intensity_is_a_probability_density() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in.csv");
    write_signal_file(&input, &gaussian_mixture());
    let out = triquad(&[
        "intensity",
        "--input",
        input.to_str().unwrap(),
        "--theta",
        "0.9",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let d = read_density(out.stdout.as_slice()).unwrap();
    assert!((d.total() - 1.0).abs() <= 1e-6);
    assert!(d.density().iter().all(|v| *v >= 0.0));
}

#[test]
fn wigner_then_radon_recovers_the_intensity() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in.csv");
    let w_path = dir.path().join("w.csv");
    let g = Grid::symmetric(10.0, 256).unwrap();
    let psi = synthesize(&HermiteExpansion::basis(1), &g);
    write_signal_file(&input, &psi);
    let out = triquad(&[
        "wigner",
        "--input",
        input.to_str().unwrap(),
        "--output",
        w_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = triquad(&[
        "radon",
        "--input",
        w_path.to_str().unwrap(),
        "--theta",
        "pi/2",
        "--grid-halfwidth",
        "8",
        "--grid-points",
        "161",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let slice = read_density(out.stdout.as_slice()).unwrap();
    for (x, d) in slice.grid().points().zip(slice.density()) {
        let h1_sq = 2.0 * x * x * (-x * x).exp() / std::f64::consts::PI.sqrt();
        assert!((d - h1_sq).abs() <= 1e-3, "x = {x}");
    }
}

#[test]
fn radon_outside_the_disc_exits_2() {
    let dir = TempDir::new().unwrap();
    let w_path = dir.path().join("w.csv");
    let g = Grid::symmetric(5.0, 64).unwrap();
    let w = wigner(&synthesize(&HermiteExpansion::basis(0), &g), &g).unwrap();
    write_wigner(File::create(&w_path).unwrap(), &w).unwrap();
    let out = triquad(&[
        "radon",
        "--input",
        w_path.to_str().unwrap(),
        "--theta",
        "0",
        "--grid-halfwidth",
        "9",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn obstruction_examples() {
    let out = triquad(&["obstruction", "acot(pi)", "--max-denominator", "6"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["min_residual"].as_f64().unwrap() > 0.0);
    assert!(v["caveat"].as_str().unwrap().contains("does not prove"));
    assert!(stderr(&out).contains("does not prove"));

    let out = triquad(&["obstruction", "pi/3", "--max-denominator", "6"]);
    assert_eq!(json(&out)["min_residual"].as_f64(), Some(0.0));

    assert_eq!(
        code(&triquad(&["obstruction", "pi/3", "--max-denominator", "1"])),
        2
    );
    assert_eq!(code(&triquad(&["obstruction", "acot("])), 2);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &["obstruction", "acot(pi)", "--max-denominator", "6"][..],
        &["counterexample", "0.1", "1.0", "2.0"][..],
        &["counterexample", "0", "pi/5", "pi/2"][..],
    ] {
        assert_eq!(triquad(args).stdout, triquad(args).stdout);
    }
}

#[test]
fn verify_all_passes() {
    let out = triquad(&["verify", "--suite", "all"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    for check in v["checks"].as_array().unwrap() {
        assert!(check["name"].is_string());
        assert!(check["bound"].is_number());
        assert!(check["measured"].is_number());
    }
}

#[test]
fn verify_counterexample_lists_the_closure_check() {
    let out = triquad(&["verify", "--suite", "counterexample"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let names: Vec<String> = json(&out)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert!(names.contains(&"counterexample.closure_denominators_le_6_781_lists".to_string()));
}

#[test]
fn corrupted_bound_fails_and_names_the_check() {
    let out = triquad(&[
        "verify",
        "--suite",
        "weyl",
        "--override",
        "weyl.composition_50_pairs=1e-300",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["failed"][0], "weyl.composition_50_pairs");
    assert!(stderr(&out).contains("FAILED: weyl.composition_50_pairs"));

    let out = triquad(&["verify", "--suite", "weyl", "--override", "nope=1"]);
    assert_eq!(code(&out), 2);
}
