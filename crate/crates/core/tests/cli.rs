use std::path::Path;
use std::process::{Command, Output};

use cohenclass::grid::{gaussian, GaussianKind, SetDomain};
use cohenclass::{io, Complex64, Grid, MeasurableSet, TfFunction};
use serde_json::Value;
use tempfile::TempDir;

fn cohenclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohenclass"))
        .args(args)
        .output()
        .expect("spawn cohenclass")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn small_grid() -> Grid {
    Grid::centered(1, 64, 0.125).unwrap()
}

fn write_phi(dir: &TempDir, grid: &Grid, lambda: f64, name: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    io::write_signal(&path, &gaussian(GaussianKind::UnitL2, lambda, grid).unwrap()).unwrap();
    path
}

#[test]
fn constants_eval_h() {
    let out = cohenclass(&["constants", "eval", "--name", "H", "--p", "4", "--q", "2", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let expected = 0.5f64.powf(0.25);
    assert!((v["value"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert!(v["value"].to_string().starts_with("0.8408964"));
}

#[test]
fn wigner_writes_tf_file_and_image() {
    let dir = TempDir::new().unwrap();
    let grid = small_grid();
    let f = write_phi(&dir, &grid, 1.0, "f.json");
    let w = dir.path().join("w.tf");
    let pgm = dir.path().join("w.pgm");
    let out = cohenclass(&["wigner", "--f", s(&f), "--g", s(&f), "--out", s(&w), "--pgm", s(&pgm)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let tf = io::read_tf(&w).unwrap();
    let peak = tf.get(32, 32);
    assert!((peak.re - 2.0).abs() < 1e-6 && peak.im.abs() < 1e-9);
    assert!(std::fs::read(&pgm).unwrap().starts_with(b"P5\n64 64\n65535\n"));
}

#[test]
fn stft_and_cohen_dirac_agree_with_library() {
    let dir = TempDir::new().unwrap();
    let grid = small_grid();
    let f = write_phi(&dir, &grid, 1.0, "f.json");
    let g = write_phi(&dir, &grid, 2.0, "g.json");
    let (stft, cohen, wig) = (
        dir.path().join("v.tf"),
        dir.path().join("c.tf"),
        dir.path().join("w.tf"),
    );
    assert_eq!(
        cohenclass(&["stft", "--f", s(&f), "--g", s(&g), "--out", s(&stft)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        cohenclass(&[
            "cohen",
            "--f",
            s(&f),
            "--g",
            s(&g),
            "--kernel",
            "dirac",
            "--out",
            s(&cohen)
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        cohenclass(&["wigner", "--f", s(&f), "--g", s(&g), "--out", s(&wig)])
            .status
            .code(),
        Some(0)
    );
    let (fs, gs) = (io::read_signal(&f).unwrap(), io::read_signal(&g).unwrap());
    assert_eq!(
        io::read_tf(&stft).unwrap(),
        cohenclass::transforms::gabor(&fs, &gs).unwrap()
    );
    let (c, w) = (io::read_tf(&cohen).unwrap(), io::read_tf(&wig).unwrap());
    assert!(c.max_abs_diff(&w).unwrap() < 1e-12);
}

#[test]
fn unknown_flag_exits_two_with_usage() {
    let out = cohenclass(&["wigner", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(cohenclass(&["transmogrify"]).status.code(), Some(2));
}

#[test]
fn inadmissible_exponents_exit_two() {
    let out = cohenclass(&["constants", "eval", "--name", "H", "--p", "1000000", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn op_build_apply_norm() {
    let dir = TempDir::new().unwrap();
    let grid = small_grid();
    let sym = dir.path().join("a.tf");
    let a = TfFunction::from_fn(grid, |x, w| Complex64::new((-(x * x + w * w) / 4.0).exp(), 0.0)).unwrap();
    io::write_tf(&sym, &a).unwrap();
    let op = dir.path().join("loc.op");
    let out = cohenclass(&["op", "build", "--type", "loc", "--symbol", s(&sym), "--out", s(&op)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let m = io::read_operator(&op).unwrap();
    assert_eq!(m.provenance().window_phi.as_deref(), Some("Phi_1"));

    let f = write_phi(&dir, &grid, 1.0, "f.json");
    let af = dir.path().join("af.json");
    assert_eq!(
        cohenclass(&["op", "apply", "--op", s(&op), "--signal", s(&f), "--out", s(&af)])
            .status
            .code(),
        Some(0)
    );
    let expected = cohenclass::operators::apply(&m, &io::read_signal(&f).unwrap()).unwrap();
    assert_eq!(io::read_signal(&af).unwrap(), expected);

    let out = cohenclass(&["op", "norm", "--op", s(&op)]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let norm = v["norm"].as_f64().unwrap();
    assert!(norm > 0.0 && norm <= a.lp_norm(cohenclass::Exponent::Infinity) + 1e-9);

    let cohen = dir.path().join("cohen.op");
    let out = cohenclass(&[
        "op",
        "build",
        "--type",
        "cohen",
        "--symbol",
        s(&sym),
        "--out",
        s(&cohen),
    ]);
    assert_eq!(out.status.code(), Some(2), "missing --kernel is a usage error");
}

#[test]
fn up_check_gaussian_is_applicable_and_satisfied() {
    let dir = TempDir::new().unwrap();
    let grid = Grid::centered(1, 128, 0.125).unwrap();
    let f = write_phi(&dir, &grid, 1.0, "f.json");
    let (t, w) = (dir.path().join("t.json"), dir.path().join("w.json"));
    io::write_set(
        &t,
        &MeasurableSet::from_intervals(grid, SetDomain::Time, &[[-1.0, 1.0]]).unwrap(),
    )
    .unwrap();
    io::write_set(
        &w,
        &MeasurableSet::from_intervals(grid, SetDomain::Frequency, &[[-1.0, 1.0]]).unwrap(),
    )
    .unwrap();
    let report = dir.path().join("report.json");
    let out = cohenclass(&[
        "up",
        "check",
        "--signal",
        s(&f),
        "--set-t",
        s(&t),
        "--set-omega",
        s(&w),
        "--out",
        s(&report),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["applicable"], true);
    assert_eq!(v["satisfied"], true);
    assert!(v["bound_improved"].as_f64().unwrap() >= v["bound_classical"].as_f64().unwrap());

    // A set pair swapped into the wrong domain is rejected.
    let out = cohenclass(&["up", "check", "--signal", s(&f), "--set-t", s(&w), "--set-omega", s(&t)]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn up_bound_and_scaling() {
    let out = cohenclass(&["up", "bound", "--eps-t", "0.05", "--eps-omega", "0.05", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["r_star"].as_f64().unwrap() - 1.3509870944).abs() < 1e-6);
    assert_eq!(v["r_star_at_boundary"], false);

    let out = cohenclass(&["up", "scaling", "--q", "2", "--lambdas", "1,2,4,8"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["slope"].as_f64().unwrap().abs() < 0.02);
}

#[test]
fn render_from_tf_file() {
    let dir = TempDir::new().unwrap();
    let grid = Grid::centered(1, 16, 0.5).unwrap();
    let tf = dir.path().join("one.tf");
    io::write_tf(
        &tf,
        &TfFunction::from_fn(grid, |_, _| Complex64::new(3.0, 0.0)).unwrap(),
    )
    .unwrap();
    let pgm = dir.path().join("one.pgm");
    assert_eq!(
        cohenclass(&["render", "--tf", s(&tf), "--out", s(&pgm)]).status.code(),
        Some(0)
    );
    let bytes = std::fs::read(&pgm).unwrap();
    let header = b"P5\n16 16\n65535\n";
    assert!(bytes[header.len()..].chunks(2).all(|px| px == [0xff, 0xff]));
}

#[test]
fn verify_constants_exits_zero_and_writes_report() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("verify.json");
    let out = cohenclass(&["verify", "constants", "--out", s(&report)]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["overall"], true);
    assert_eq!(v["seed"], 0xC04E);
}

#[test]
fn identical_invocations_give_identical_outputs() {
    let dir = TempDir::new().unwrap();
    let grid = small_grid();
    let f = write_phi(&dir, &grid, 0.5, "f.json");
    let (a, b) = (dir.path().join("a.tf"), dir.path().join("b.tf"));
    for out in [&a, &b] {
        let o = cohenclass(&[
            "cohen",
            "--f",
            s(&f),
            "--g",
            s(&f),
            "--kernel",
            "gausswig:1",
            "--out",
            s(out),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let x = cohenclass(&["verify", "constants"]).stdout;
    let y = cohenclass(&["verify", "constants"]).stdout;
    assert_eq!(x, y);
}
