//! Named verification suites. Each suite runs a family of identity checks
//! and reports one entry per check.

use crate::error::CliError;
use freegen::convolve::{bercovici_pata_check, bp_probes};
use freegen::cumulants::CumulantSeq;
use freegen::freelevy::{classical_generator, fl1_equals_fbm_check, CanonicalPair, Fl1Process};
use freegen::func::{SmoothFunction, Spline};
use freegen::measure::semicircle_density;
use freegen::monotone::{chernoff_check, fl2_generator};
use freegen::qbm::QContext;
use freegen::quad::adaptive;
use freegen::singular::{carre_du_champ, dissipativity_functional, generator, generator_series, pseudo_diff_check, IsometryForm};
use freegen::stieltjes::stieltjes_invert;
use freegen::transform::{phi, probe_set_16, probe_set_64, strip, CauchyTransform, Origin};
use freegen::twostate::{TwoStateBM, MAX_DEGREE, TIME_STEP};
use freegen::{Complex64 as C64, Measure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::Arc;

pub const SUITES: [&str; 19] = [
    "stieltjes",
    "stripping",
    "evolution",
    "fl1-bm",
    "generator-limit",
    "martingale",
    "contraction",
    "chernoff",
    "isometry",
    "carre",
    "dissipativity",
    "q-mehler",
    "q-martingale",
    "q-multiplier",
    "two-state",
    "cumulant-consistency",
    "pseudo-diff",
    "generator-series",
    "bercovici-pata",
];

pub const Q_SUITES: [&str; 3] = ["q-mehler", "q-martingale", "q-multiplier"];

/// Inner tolerance of adaptive x-integrals.
const QUAD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckReport {
    /// pass when residual < tolerance.
    fn below(check: &str, params: Value, residual: f64, tolerance: f64) -> Self {
        CheckReport { check: check.into(), params, residual, tolerance, pass: residual < tolerance }
    }
}

type Checks = Result<Vec<CheckReport>, CliError>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rho_set() -> Vec<(&'static str, Measure)> {
    vec![
        ("dirac(0)", Measure::dirac(0.0)),
        ("bernoulli", Measure::bernoulli()),
        ("arcsine(1.4142135623730951)", Measure::arcsine(2f64.sqrt()).unwrap()),
        ("semicircle(0.6,0.5)", Measure::semicircle(0.6, 0.5).unwrap()),
    ]
}

fn arcsine() -> Measure {
    Measure::arcsine(2f64.sqrt()).unwrap()
}

fn process(alpha: f64, rho: Measure) -> Result<Fl1Process, CliError> {
    Ok(Fl1Process::new(CanonicalPair::new(alpha, rho)?))
}

fn stieltjes() -> Checks {
    let mut out = Vec::new();
    let g = CauchyTransform::from_measure(Arc::new(Measure::semicircle(0.0, 1.0)?));
    let inv = stieltjes_invert(&g, -1.9, 1.9, 381, None)?;
    let err = inv
        .xs()
        .iter()
        .zip(&inv.values)
        .map(|(x, v)| (v - semicircle_density(*x, 1.0)).abs())
        .fold(0.0, f64::max);
    out.push(CheckReport::below("stieltjes semicircle", json!({"lo": -1.9, "hi": 1.9, "n": 381}), err, 1e-3));
    let cauchy = CauchyTransform::new(Origin::Composed, |z| Ok(1.0 / (z + C64::i())));
    let inv = stieltjes_invert(&cauchy, -10.0, 10.0, 2001, None)?;
    let err = inv
        .xs()
        .iter()
        .zip(&inv.values)
        .map(|(x, v)| (v - 1.0 / (std::f64::consts::PI * (1.0 + x * x))).abs())
        .fold(0.0, f64::max);
    out.push(CheckReport::below("stieltjes cauchy", json!({"lo": -10.0, "hi": 10.0, "n": 2001}), err, 1e-4));
    let dirac = CauchyTransform::new(Origin::Composed, |z| Ok(1.0 / z));
    let inv = stieltjes_invert(&dirac, -1.0, 1.0, 201, None)?;
    let err = match inv.atoms.as_slice() {
        [(x, w)] => x.abs().max((w - 1.0).abs()),
        _ => f64::INFINITY,
    };
    out.push(CheckReport::below("stieltjes atom", json!({"lo": -1.0, "hi": 1.0, "n": 201}), err, 1e-3));
    Ok(out)
}

fn stripping() -> Checks {
    let mut out = Vec::new();
    let probes = probe_set_64();
    for (name, mu) in [
        ("bernoulli", Measure::bernoulli()),
        ("arcsine(1.4142135623730951)", arcsine()),
        ("meixner(0.5,0.5,1)", Measure::free_meixner(0.5, 0.5, 1.0)?),
    ] {
        let st = strip(&mu)?;
        let back = phi(&st.j, st.beta);
        let mut worst: f64 = 0.0;
        for &z in &probes {
            worst = worst.max((back.f(z)? - st.alpha - 1.0 / mu.g(z)).norm());
        }
        out.push(CheckReport::below("strip then phi", json!({"measure": name}), worst, 1e-10));
    }
    Ok(out)
}

fn evolution() -> Checks {
    let mut out = Vec::new();
    let probes = probe_set_16();
    for (name, rho) in rho_set() {
        for alpha in [0.0, 0.4] {
            let p = Arc::new(process(alpha, rho.clone())?);
            for t in [0.25, 1.0, 2.0] {
                let r = p.strip_evolution_check(t, &probes)?;
                out.push(CheckReport::below("stripped law", json!({"rho": name, "alpha": alpha, "t": t}), r, 1e-9));
            }
            let r = p.verify_evolution_pde(1.0, c(0.4, 0.8), 1e-3)?;
            out.push(CheckReport::below("evolution pde", json!({"rho": name, "alpha": alpha, "t": 1.0}), r, 1e-6));
        }
    }
    Ok(out)
}

fn fl1_bm() -> Checks {
    let probes = probe_set_16();
    let mut out = Vec::new();
    for (name, rho) in rho_set() {
        for (s, t) in [(0.25, 1.0), (1.0, 2.0)] {
            let r = fl1_equals_fbm_check(&rho, 0.0, s, t, &probes)?;
            out.push(CheckReport::below("fl1 equals free bm", json!({"rho": name, "s": s, "t": t}), r, 1e-8));
        }
    }
    Ok(out)
}

fn generator_limit() -> Checks {
    let hs = [1e-2, 5e-3, 2.5e-3];
    let xs: Vec<f64> = (0..13).map(|i| -3.0 + 0.5 * i as f64).collect();
    let cases = [
        ("resolvent", 0.0, Measure::dirac(0.0), SmoothFunction::single_resolvent(c(0.3, 1.0))?),
        ("resolvent", 0.3, arcsine(), SmoothFunction::single_resolvent(c(-0.4, 0.8))?),
        ("quadratic", 0.5, arcsine(), SmoothFunction::monomial(2)),
    ];
    let mut out = Vec::new();
    for (fname, alpha, rho, f) in cases {
        let p = process(alpha, rho)?;
        let e = p.generator_limit_check(0.5, &f, &hs, &xs)?;
        // first-order decay: each halving of h halves the error
        let worst = e.windows(2).map(|w| (w[0] / w[1] - 2.0).abs()).fold(0.0, f64::max);
        out.push(CheckReport::below(
            "generator limit ratio",
            json!({"f": fname, "alpha": alpha, "s": 0.5, "h": hs, "errors": e}),
            worst,
            0.2,
        ));
    }
    Ok(out)
}

fn martingale() -> Checks {
    let mut out = Vec::new();
    for (name, alpha, rho) in [("dirac(0)", 0.0, Measure::dirac(0.0)), ("bernoulli", -0.3, Measure::bernoulli())] {
        let p = process(alpha, rho)?;
        let mut worst: f64 = 0.0;
        for z in [c(0.2, 0.5), c(-1.0, 1.0)] {
            for x in [-0.7, 0.3] {
                worst = worst.max(p.martingale_check(0.2, 1.0, z, x)?.norm());
            }
        }
        out.push(CheckReport::below("martingale identity", json!({"rho": name, "alpha": alpha, "s": 0.2, "t": 1.0}), worst, 1e-6));
    }
    Ok(out)
}

fn contraction(seed: u64) -> Checks {
    let p = process(0.0, arcsine())?;
    let (s, t) = (0.1, 0.6);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..5 {
        let (center, width, amp) = (rng.gen_range(-1.5..1.5), rng.gen_range(0.3..1.0), rng.gen_range(-2.0..2.0));
        let f = SmoothFunction::bump(center, width, amp)?;
        let kf = |x: f64| p.apply_k(s, t, &f, x).map(|v| v.re).unwrap_or(f64::NAN);
        let mut excess = f64::NEG_INFINITY;
        for i in 0..=60 {
            excess = excess.max(kf(-3.0 + 0.1 * i as f64).abs() - amp.abs());
        }
        let b = 6.0;
        let total = adaptive(&kf, -b, b, QUAD_TOL)
            + adaptive(&|u: f64| kf(1.0 / u) / (u * u), 0.0, 1.0 / b, QUAD_TOL)
            + adaptive(&|u: f64| kf(-1.0 / u) / (u * u), 0.0, 1.0 / b, QUAD_TOL);
        let want = adaptive(&|x: f64| f.eval(x).re, center - width, center + width, QUAD_TOL);
        let params = json!({"center": center, "width": width, "amp": amp, "s": s, "t": t});
        out.push(CheckReport::below("averaging", params.clone(), (total - want).abs(), 1e-5));
        out.push(CheckReport {
            check: "sup contraction".into(),
            params,
            residual: excess,
            tolerance: 0.0,
            pass: excess <= 1e-12,
        });
    }
    Ok(out)
}

fn chernoff() -> Checks {
    let p = process(0.3, arcsine())?;
    let xs: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
    let ns = [2, 4, 8, 16];
    let e = chernoff_check(&p, 0.5, 0.3, &ns, c(0.2, 2.0), &xs)?;
    let decreasing = e.windows(2).all(|w| w[1] < w[0]);
    let last = e[e.len() - 1];
    Ok(vec![CheckReport {
        check: "chernoff product".into(),
        params: json!({"s": 0.5, "t": 0.3, "n": ns, "errors": e}),
        residual: last,
        tolerance: 1e-4,
        pass: decreasing && last < 1e-4,
    }])
}

fn test_functions(rng: &mut ChaCha8Rng) -> Vec<SmoothFunction> {
    let mut fs = vec![
        SmoothFunction::single_resolvent(c(0.5, 0.8)).unwrap(),
        SmoothFunction::single_resolvent(c(-0.2, 1.3)).unwrap(),
    ];
    for _ in 0..3 {
        fs.push(SmoothFunction::polynomial((0..4).map(|_| rng.gen_range(-1.0..1.0)).collect()));
    }
    fs
}

fn pair_measures() -> Result<Vec<(&'static str, Measure)>, CliError> {
    Ok(vec![("bernoulli", Measure::bernoulli()), ("arcsine(1.4142135623730951)", arcsine()), ("meixner(0.7,0.4,1.2)", Measure::free_meixner(0.7, 0.4, 1.2)?)])
}

fn isometry(seed: u64) -> Checks {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (name, mu) in pair_measures()? {
        let form = IsometryForm::new(&mu)?;
        let fs = test_functions(&mut rng);
        let mut worst: f64 = 0.0;
        for f in &fs {
            for g in &fs {
                let (l, r) = form.sides(f, g);
                worst = worst.max((l - r).norm());
            }
        }
        out.push(CheckReport::below("isometry", json!({"measure": name}), worst, 1e-8));
    }
    Ok(out)
}

fn carre(seed: u64) -> Checks {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let alpha = 0.8;
    for (name, mu) in pair_measures()? {
        let rule = mu.rule();
        let fs = test_functions(&mut rng);
        let mut worst: f64 = 0.0;
        for f in &fs {
            for g in &fs {
                let fg = SmoothFunction::product(f.clone(), g.clone());
                let x: f64 = rng.gen_range(-2.0..2.0);
                let lhs = carre_du_champ(&rule, f, g, x);
                let rhs = generator(alpha, &rule, &fg, x) - f.eval(x) * generator(alpha, &rule, g, x) - generator(alpha, &rule, f, x) * g.eval(x);
                worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
            }
        }
        out.push(CheckReport::below("carre du champ", json!({"measure": name, "alpha": alpha}), worst, 1e-8));
    }
    Ok(out)
}

fn dissipativity() -> Checks {
    let ys: Vec<f64> = (0..61)
        .map(|i| {
            let u = -1.0 + i as f64 / 30.0;
            (1.0 - u * u).powi(3)
        })
        .collect();
    let spline = SmoothFunction::spline(Spline::clamped(-1.0, 1.0, ys, 0.0, 0.0)?);
    let cases = [
        ("semicircle(0,1)", "spline", 0.0, Measure::semicircle(0.0, 1.0)?, spline, (-1.5, 1.5)),
        ("dirac(0)", "bump", 0.7, Measure::dirac(0.0), SmoothFunction::bump(0.3, 1.0, 1.0)?, (-2.0, 2.5)),
        ("arcsine(1.4142135623730951)", "bump", -0.4, arcsine(), SmoothFunction::bump(-0.2, 0.8, 1.5)?, (-2.0, 2.0)),
    ];
    let mut out = Vec::new();
    for (name, fname, alpha, nu, f, window) in cases {
        let (lhs, rhs) = dissipativity_functional(alpha, &nu.rule(), &f, window, QUAD_TOL)?;
        let rel = (lhs - rhs).abs() / rhs.abs();
        out.push(CheckReport {
            check: "dissipativity".into(),
            params: json!({"nu": name, "f": fname, "alpha": alpha, "lhs": lhs, "rhs": rhs}),
            residual: rel,
            tolerance: 1e-6,
            pass: rel < 1e-6 && lhs <= 0.0,
        });
    }
    Ok(out)
}

fn q_mehler(seed: u64) -> Checks {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for q in [-0.9, -0.5, 0.0, 0.5, 0.9] {
        let ctx = QContext::new(q)?;
        let mut worst: f64 = 0.0;
        for r in [-0.9, -0.3, 0.5, 0.9] {
            for _ in 0..3 {
                let phi = rng.gen_range(0.0..std::f64::consts::PI);
                let th = rng.gen_range(0.0..std::f64::consts::PI);
                let (s, p) = ctx.mehler(r, phi, th, None)?;
                worst = worst.max((s - p).abs() / p.abs().max(1.0));
            }
        }
        out.push(CheckReport::below("mehler series vs product", json!({"q": q}), worst, 1e-10));
    }
    Ok(out)
}

fn q_martingale() -> Checks {
    let mut out = Vec::new();
    for q in [-0.5, 0.0, 0.3, 0.7, 0.9] {
        let ctx = QContext::new(q)?;
        for (s, t, x) in [(0.5, 1.0, 0.2), (0.9, 1.2, -1.1)] {
            let r = ctx.martingale_check(s, t, x, 10)?;
            out.push(CheckReport::below("q-hermite martingale", json!({"q": q, "s": s, "t": t, "x": x, "n_max": 10}), r, 1e-8));
        }
    }
    let zero = QContext::new(0.0)?;
    let free = process(0.0, Measure::dirac(0.0))?;
    let (s, t, x) = (0.4, 1.0, 0.5);
    let k = zero.transition_kernel(s, t, x, 401)?;
    let mut gap: f64 = 0.0;
    for (y, v) in k.xs().iter().zip(&k.values) {
        gap = gap.max((v - free.kernel_density(s, t, x, *y)?).abs());
    }
    out.push(CheckReport::below("q = 0 kernel vs free kernel", json!({"s": s, "t": t, "x": x}), gap, 1e-4));
    Ok(out)
}

fn q_multiplier() -> Checks {
    let mut out = Vec::new();
    for q in [-0.5, 0.0, 0.3, 0.7, 0.9] {
        let ctx = QContext::new(q)?;
        for x in [-0.9, 0.7] {
            let r = ctx.multiplier_check(1.0, x, 8)?;
            out.push(CheckReport::below("gamma multiplier", json!({"q": q, "t": 1.0, "x": x, "n_max": 8}), r, 1e-8));
        }
    }
    let near = QContext::new(0.95)?;
    let f = SmoothFunction::monomial(4);
    let mut worst: f64 = 0.0;
    for x in [-1.0, 0.5, 1.0] {
        let v = near.generator(1.0, &f, x)?.re;
        let half = 0.5 * f.d2(x).re;
        worst = worst.max((v - half).abs() / half.abs());
    }
    out.push(CheckReport::below("q = 0.95 generator vs f''/2", json!({"q": 0.95, "f": "x^4"}), worst, 0.1));
    Ok(out)
}

fn two_state(seed: u64) -> Checks {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for alpha in [0.0, 0.5, -1.0] {
        let bm = TwoStateBM::new(alpha)?;
        let mut worst: f64 = 0.0;
        for deg in 1..=MAX_DEGREE {
            let f: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
            worst = worst.max(bm.moment_evolution_check(&f, 1.0, TIME_STEP)?);
        }
        out.push(CheckReport::below("two-state moment evolution", json!({"alpha": alpha, "t": 1.0, "h": TIME_STEP}), worst, 1e-5));
    }
    Ok(out)
}

fn cumulant_consistency() -> Checks {
    let mut out = Vec::new();
    for (alpha, (name, rho)) in [0.0, 0.4, -0.7, 1.1].into_iter().zip(rho_set()) {
        let m = rho.moments(6);
        let pair = CanonicalPair::new(alpha, rho.clone())?;
        let free = Fl1Process::new(pair.clone());
        let rule = rho.rule();
        let mut worst: f64 = 0.0;
        for n in 0..=8 {
            let f = SmoothFunction::monomial(n);
            let want = match n {
                0 => 0.0,
                1 => alpha,
                _ => m[n - 2],
            };
            for v in [classical_generator(&pair, &f, 0.0), free.generator_a(0.0, &f, 0.0)?, fl2_generator(alpha, &rule, &f, 0.0)] {
                worst = worst.max((v - want).norm());
            }
        }
        out.push(CheckReport::below("generators at origin vs cumulant functional", json!({"rho": name, "alpha": alpha}), worst, 1e-9));
    }
    Ok(out)
}

fn pseudo_diff() -> Checks {
    let mut out = Vec::new();
    for (name, nu) in [
        ("bernoulli", Measure::bernoulli()),
        ("arcsine(1.4142135623730951)", arcsine()),
        ("meixner(0.5,0.5,1)", Measure::free_meixner(0.5, 0.5, 1.0)?),
    ] {
        let r = pseudo_diff_check(&nu, 12)?;
        out.push(CheckReport::below("pseudo-differential form", json!({"nu": name, "order": 12}), r, 1e-9));
    }
    Ok(out)
}

fn generator_series_suite(seed: u64) -> Checks {
    let (b, cc) = (0.7, 0.4);
    let rho = Measure::semicircle(b, cc)?;
    let m = rho.moments(8);
    let mut rates = vec![0.0];
    rates.extend_from_slice(&m[..8]);
    let rates = CumulantSeq::from_cumulants(rates);
    let p = process(0.0, rho)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for s in [0.3, 1.0] {
        let mu_s = Measure::free_meixner(b, cc, s)?;
        let mut worst: f64 = 0.0;
        for deg in 1..=8 {
            let f: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let fs = SmoothFunction::polynomial(f.clone());
            for x in [-0.8, 0.1, 1.4] {
                let got = generator_series(&rates, &f, x, &mu_s)?;
                let want = p.generator_a(s, &fs, x)?.re;
                worst = worst.max((got - want).abs() / (1.0 + want.abs()));
            }
        }
        out.push(CheckReport::below("cumulant series vs generator", json!({"rho": "semicircle(0.7,0.4)", "s": s}), worst, 1e-9));
    }
    Ok(out)
}

fn bercovici_pata() -> Checks {
    let probes = bp_probes();
    let mut out = Vec::new();
    for (name, rho) in rho_set() {
        let r = bercovici_pata_check(&rho, &probes)?;
        out.push(CheckReport::below("boolean to free", json!({"rho": name}), r, 1e-8));
    }
    Ok(out)
}

pub fn run_suite(name: &str, seed: u64) -> Checks {
    let mut checks = match name {
        "stieltjes" => stieltjes(),
        "stripping" => stripping(),
        "evolution" => evolution(),
        "fl1-bm" => fl1_bm(),
        "generator-limit" => generator_limit(),
        "martingale" => martingale(),
        "contraction" => contraction(seed),
        "chernoff" => chernoff(),
        "isometry" => isometry(seed),
        "carre" => carre(seed),
        "dissipativity" => dissipativity(),
        "q-mehler" => q_mehler(seed),
        "q-martingale" => q_martingale(),
        "q-multiplier" => q_multiplier(),
        "two-state" => two_state(seed),
        "cumulant-consistency" => cumulant_consistency(),
        "pseudo-diff" => pseudo_diff(),
        "generator-series" => generator_series_suite(seed),
        "bercovici-pata" => bercovici_pata(),
        other => Err(CliError::Usage(format!("unknown suite '{other}'; valid suites: {}", SUITES.join(", ")))),
    }?;
    for c in &mut checks {
        c.check = format!("{name}: {}", c.check);
    }
    Ok(checks)
}

/// Runs the named suites concurrently (all suites when `names` is empty)
/// and returns the reports in suite order.
pub fn verify_suite(names: &[String], seed: u64) -> Checks {
    let names: Vec<String> = if names.is_empty() { SUITES.iter().map(|s| s.to_string()).collect() } else { names.to_vec() };
    for n in &names {
        if !SUITES.contains(&n.as_str()) {
            return Err(CliError::Usage(format!("unknown suite '{n}'; valid suites: {}", SUITES.join(", "))));
        }
    }
    let results: Vec<Checks> = names.par_iter().map(|n| run_suite(n, seed)).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
