use freegen::{Measure, Tail};
use freegen_cli::config::{Command, MeasureSpec};
use freegen_cli::parse_config;
use proptest::prelude::*;
use std::path::Path;
use std::process::{Command as Proc, Output};

fn bin(args: &[&str]) -> Output {
    Proc::new(env!("CARGO_BIN_EXE_freegen")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn minimal_config_gets_defaults() {
    let cfg = parse_config(r#"{"command": "density"}"#).unwrap();
    assert_eq!(cfg.command, Command::Density);
    assert_eq!(cfg.measure, MeasureSpec::Named("dirac(0)".into()));
    assert_eq!((cfg.alpha, cfg.s, cfg.t, cfg.x, cfg.q), (0.0, 0.0, 1.0, 0.0, 0.0));
    assert_eq!(cfg.seed, 42);
    assert!(cfg.suites.is_empty() && cfg.grid.is_none() && cfg.eps.is_none());
}

#[test]
fn config_round_trips() {
    let text = r#"{
        "command": "kernel",
        "measure": {"type": "jacobi", "alphas": [0, 0.5], "betas": [1, 2], "tail": {"semicircle": 2}},
        "alpha": -0.25, "s": 0.5, "t": 1.5, "x": 0.3,
        "grid": {"lo": -4, "hi": 4, "n": 81}, "eps": 0.01,
        "function": {"type": "polynomial", "coeffs": [1, 0, 2]},
        "suites": ["fl1-bm", "q-mehler"], "seed": 7, "monotone": true
    }"#;
    let cfg = parse_config(text).unwrap();
    let again = parse_config(&cfg.to_json()).unwrap();
    assert_eq!(cfg, again);
    assert_eq!(cfg.to_json(), again.to_json());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_configs_round_trip(
        alpha in -5.0..5.0f64,
        s in 0.0..3.0f64,
        t in 0.0..3.0f64,
        x in -5.0..5.0f64,
        q in -0.99..0.99f64,
        seed in any::<u64>(),
        lo in -10.0..0.0f64,
        width in 0.1..10.0f64,
        n in 2usize..5000,
    ) {
        let text = serde_json::json!({
            "command": "verify", "measure": "semicircle(0.5,2)",
            "alpha": alpha, "s": s, "t": t, "x": x, "q": q, "seed": seed,
            "grid": {"lo": lo, "hi": lo + width, "n": n},
        })
        .to_string();
        let cfg = parse_config(&text).unwrap();
        let json = cfg.to_json();
        let again = parse_config(&json).unwrap();
        prop_assert_eq!(&cfg, &again);
        prop_assert_eq!(json, again.to_json());
    }
}

#[test]
fn zero_beta_is_rejected() {
    let text = r#"{"command": "density", "measure": {"type": "jacobi", "alphas": [0], "betas": [0], "tail": "repeat"}}"#;
    let e = parse_config(text).unwrap_err().to_string();
    assert!(e.contains("betas must be positive"), "{e}");
}

#[test]
fn meixner_shorthand_is_jacobi() {
    let cfg = parse_config(r#"{"command": "density", "measure": "meixner(1,0.5,1)"}"#).unwrap();
    let m = cfg.measure.to_measure().unwrap();
    assert_eq!(m, Measure::Jacobi { alphas: vec![0.0, 1.0], betas: vec![1.0, 1.5], tail: Tail::Repeat });
}

#[test]
fn bad_configs_name_the_field() {
    let e = parse_config(r#"{"command": "density", "temperature": 3}"#).unwrap_err().to_string();
    assert!(e.contains("temperature"), "{e}");
    let e = parse_config(r#"{"measure": "bernoulli"}"#).unwrap_err().to_string();
    assert!(e.contains("command"), "{e}");
    let e = parse_config(r#"{"command": "density", "t": 1e400}"#).unwrap_err().to_string();
    assert!(e.contains("config"), "{e}");
    let e = parse_config(r#"{"command": "density", "q": 1}"#).unwrap_err().to_string();
    assert!(e.contains("q"), "{e}");
    let e = parse_config(r#"{"command": "density", "measure": "gamma(2)"}"#).unwrap_err().to_string();
    assert!(e.contains("unknown name"), "{e}");
}

#[test]
fn density_matches_semicircle_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.csv");
    let o = bin(&["density", "--measure", "semicircle(0,1)", "--t", "1", "--grid", "-2.7:2.7:55", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["y", "density"]);
    assert_eq!(rows.len(), 55);
    // semicircle(0,1) ⊞ γ_1 = γ_2
    for r in rows {
        let want = (8.0 - r[0] * r[0]).max(0.0).sqrt() / (4.0 * std::f64::consts::PI);
        assert!((r[1] - want).abs() < 1e-3, "y = {}: {} vs {want}", r[0], r[1]);
    }
}

#[test]
fn verify_fl1_bm_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = bin(&["verify", "--suite", "fl1-bm", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["residual"].as_f64().unwrap() < 1e-8);
        assert!(c["check"].is_string() && c["tolerance"].is_number() && c["pass"].is_boolean());
    }
}

#[test]
fn kernel_rejects_reversed_times() {
    let o = bin(&["kernel", "--s", "2", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("s must not exceed t"));
}

#[test]
fn unknown_suite_lists_valid_ones() {
    let o = bin(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("no-such-suite"));
    for name in freegen_cli::suites::SUITES {
        assert!(e.contains(name), "{name} missing from: {e}");
    }
}

#[test]
fn qverify_rejects_non_q_suites() {
    let o = bin(&["qverify", "--suite", "fl1-bm"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn kernel_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = bin(&["kernel", "--measure", "arcsine(1.5)", "--alpha", "0.3", "--s", "0.2", "--t", "0.9", "--x", "0.4", "--grid", "-4:4:201", "--out", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn kernel_atoms_go_to_side_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.csv");
    let o = bin(&["kernel", "--measure", "bernoulli", "--s", "0.1", "--t", "0.3", "--x", "0", "--grid", "-3:3:121", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&dir.path().join("k.csv.atoms.csv"));
    assert_eq!(header, ["y", "weight"]);
    assert_eq!(rows.len(), 1);
    assert!(rows[0][0].abs() < 1e-12);
    assert!(rows[0][1] > 0.0 && rows[0][1] < 1.0);
    // the grid point on the atom carries no density
    let (_, grid) = read_csv(&out);
    assert_eq!(grid[60][1], 0.0);
}

#[test]
fn monotone_kernel_finds_its_atom() {
    // sigma = δ_0: F_1(z) = sqrt(z^2 - 2), so 1/(F_1 - 0.5) has a pole at
    // y = 1.5 with residue F_1(1.5)/1.5 = 1/3
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let o = bin(&["kernel", "--monotone", "--measure", "dirac(0)", "--t", "1", "--x", "0.5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(!stderr(&o).contains("warning"), "{}", stderr(&o));
    let (_, rows) = read_csv(&dir.path().join("m.csv.atoms.csv"));
    assert_eq!(rows.len(), 1);
    assert!((rows[0][0] - 1.5).abs() < 1e-8 && (rows[0][1] - 1.0 / 3.0).abs() < 1e-8, "{rows:?}");
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"command": "flow", "alpha": 1.0, "t": 0.5, "z": [0, 1]}"#).unwrap();
    let out = dir.path().join("f.csv");
    let o = bin(&["--config", cfg.to_str().unwrap(), "--alpha", "0", "--measure", "dirac(0)", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (header, rows) = read_csv(&out);
    assert_eq!(header, ["time", "re", "im"]);
    let last = rows.last().unwrap();
    // sigma = δ_0, no drift: F_t(z)^2 = z^2 - 2t
    let want = (1.0 + 2.0 * last[0]).sqrt();
    assert!(last[1].abs() < 1e-8 && (last[2] - want).abs() < 1e-8, "{last:?}");
}

#[test]
fn generator_modes_agree_at_time_zero() {
    // at t = 0 the first-kind generator equals the second-kind one
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (p, extra) in [(&a, None), (&b, Some("--monotone"))] {
        let mut args = vec!["generator", "--measure", "bernoulli", "--alpha", "0.4", "--t", "0", "--grid", "-2:2:9", "--out", p.to_str().unwrap()];
        args.extend(extra);
        let o = bin(&args);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let (_, ra) = read_csv(&a);
    let (_, rb) = read_csv(&b);
    for (u, v) in ra.iter().zip(&rb) {
        assert!((u[1] - v[1]).abs() < 1e-9 && (u[2] - v[2]).abs() < 1e-9, "{u:?} vs {v:?}");
    }
}

#[test]
fn qdensity_at_zero_q_is_semicircle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.csv");
    let o = bin(&["qdensity", "--q", "0", "--t", "1", "--grid", "-1.9:1.9:39", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let (_, rows) = read_csv(&out);
    for r in rows {
        let want = (4.0 - r[0] * r[0]).sqrt() / (2.0 * std::f64::consts::PI);
        assert!((r[1] - want).abs() < 1e-10);
    }
}
