//! Command implementations. Tables go out as CSV with 17 significant digits.

use crate::config::{Command, GridSpec, RunConfig};
use crate::error::CliError;
use crate::suites::{verify_suite, Q_SUITES, SUITES};
use freegen::convolve::SemicircularFlow;
use freegen::freelevy::{CanonicalPair, Fl1Process};
use freegen::monotone::{fl2_generator, MonotoneFlow};
use freegen::qbm::QContext;
use freegen::stieltjes::{stieltjes_invert, Inversion, Status};
use freegen::twostate::TwoStateBM;
use freegen::{CauchyTransform, Complex64 as C64, Measure};
use rayon::prelude::*;
use serde_json::json;
use std::fs::File;
use std::io::{self, Write};
use std::sync::Arc;

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// A header plus rows of numbers.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

fn write_table<W: Write>(w: W, t: &Table) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(&t.header)?;
    for row in &t.rows {
        out.write_record(row.iter().map(|v| num(*v)))?;
    }
    out.flush()?;
    Ok(())
}

/// Main table to `out` (or stdout). Atoms, when present, go to
/// `<out>.atoms.csv` or follow the main table on stdout after a blank line.
fn emit(cfg: &RunConfig, main: &Table, atoms: &[(f64, f64)]) -> Result<(), CliError> {
    let atoms = (!atoms.is_empty()).then(|| Table {
        header: vec!["y", "weight"],
        rows: atoms.iter().map(|(y, w)| vec![*y, *w]).collect(),
    });
    match &cfg.out {
        Some(path) => {
            write_table(File::create(path)?, main)?;
            if let Some(a) = atoms {
                write_table(File::create(format!("{path}.atoms.csv"))?, &a)?;
            }
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_table(&mut lock, main)?;
            if let Some(a) = atoms {
                writeln!(lock)?;
                write_table(&mut lock, &a)?;
            }
        }
    }
    Ok(())
}

fn warn(inv: &Inversion) {
    if let Status::Warning(w) = &inv.status {
        eprintln!("warning: {w}");
    }
}

fn grid_points(g: GridSpec) -> Vec<f64> {
    let h = (g.hi - g.lo) / (g.n - 1) as f64;
    (0..g.n).map(|i| g.lo + h * i as f64).collect()
}

fn inversion_table(inv: &Inversion) -> Table {
    Table {
        header: vec!["y", "density"],
        rows: inv.xs().into_iter().zip(&inv.values).map(|(y, v)| vec![y, *v]).collect(),
    }
}

fn fl1(cfg: &RunConfig, rho: Measure) -> Result<Arc<Fl1Process>, CliError> {
    Ok(Arc::new(Fl1Process::new(CanonicalPair::new(cfg.alpha, rho)?)))
}

fn monotone_flow(cfg: &RunConfig, rho: Measure) -> Arc<MonotoneFlow> {
    Arc::new(MonotoneFlow::new(cfg.alpha, Some(CauchyTransform::from_measure(Arc::new(rho)))))
}

/// Window for monotone laws and kernels started at `center` after time `tau`.
fn monotone_window(cfg: &RunConfig, rho: &Measure, center: f64, tau: f64) -> GridSpec {
    let (lo, hi) = rho.support_bounds();
    let reach = cfg.alpha.abs() * tau + 2.0 * (2.0 * tau).sqrt() + lo.abs().max(hi.abs()) + 1.0;
    GridSpec { lo: center - reach, hi: center + reach, n: 801 }
}

/// rho ⊞ γ_t ⊞ δ_{alpha t}, or the monotone law with `monotone`.
fn density(cfg: &RunConfig) -> Result<(), CliError> {
    let rho = cfg.measure.to_measure()?;
    if cfg.monotone {
        let flow = monotone_flow(cfg, rho.clone());
        let g = cfg.grid.unwrap_or_else(|| monotone_window(cfg, &rho, 0.0, cfg.t));
        let inv = stieltjes_invert(&flow.law(cfg.t), g.lo, g.hi, g.n, cfg.eps)?;
        warn(&inv);
        return emit(cfg, &inversion_table(&inv), &inv.atoms);
    }
    let flow = Arc::new(SemicircularFlow::new(Arc::new(rho), cfg.t).with_shift(cfg.alpha * cfg.t));
    let g = cfg.grid.unwrap_or_else(|| {
        let (lo, hi) = flow.support_bounds();
        let pad = 0.1 * (hi - lo) + 0.5;
        GridSpec { lo: lo - pad, hi: hi + pad, n: 801 }
    });
    if cfg.t == 0.0 || cfg.eps.is_some() {
        let inv = stieltjes_invert(&flow.transform(), g.lo, g.hi, g.n, cfg.eps)?;
        warn(&inv);
        return emit(cfg, &inversion_table(&inv), &inv.atoms);
    }
    let rows = grid_points(g).into_par_iter().map(|y| vec![y, flow.density(y)]).collect();
    emit(cfg, &Table { header: vec!["y", "density"], rows }, &[])
}

fn kernel(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.s > cfg.t {
        return Err(CliError::Usage("s must not exceed t".into()));
    }
    let rho = cfg.measure.to_measure()?;
    let inv = if cfg.monotone {
        let tau = cfg.t - cfg.s;
        let g = cfg.grid.unwrap_or_else(|| monotone_window(cfg, &rho, cfg.x, tau));
        monotone_flow(cfg, rho).monotone_kernel(tau, cfg.x, (g.lo, g.hi, g.n), cfg.eps)?
    } else {
        fl1(cfg, rho)?.transition_kernel(cfg.s, cfg.t, cfg.x, cfg.grid.map(|g| (g.lo, g.hi, g.n)), cfg.eps)?
    };
    warn(&inv);
    emit(cfg, &inversion_table(&inv), &inv.atoms)
}

/// F_tau(z) of the monotone flow for tau on [0, t] (or on the grid).
fn flow(cfg: &RunConfig) -> Result<(), CliError> {
    let rho = cfg.measure.to_measure()?;
    let flow = monotone_flow(cfg, rho);
    let z = C64::new(cfg.z[0], cfg.z[1]);
    let g = cfg.grid.unwrap_or(GridSpec { lo: 0.0, hi: cfg.t, n: 101 });
    if g.lo < 0.0 {
        return Err(CliError::Usage("flow times must be nonnegative".into()));
    }
    let rows = grid_points(g)
        .into_par_iter()
        .map(|tau| flow.flow(tau, z).map(|w| vec![tau, w.re, w.im]))
        .collect::<Result<Vec<_>, _>>()?;
    emit(cfg, &Table { header: vec!["time", "re", "im"], rows }, &[])
}

fn generator(cfg: &RunConfig) -> Result<(), CliError> {
    let f = cfg.function.to_function()?;
    let xs = grid_points(cfg.grid.unwrap_or(GridSpec { lo: -3.0, hi: 3.0, n: 61 }));
    let values: Vec<C64> = if cfg.two_state {
        let bm = TwoStateBM::new(cfg.alpha)?;
        xs.par_iter().map(|&x| bm.generator(cfg.t, &f, x)).collect::<Result<_, _>>()?
    } else if cfg.monotone {
        let rule = cfg.measure.to_measure()?.rule();
        xs.par_iter().map(|&x| fl2_generator(cfg.alpha, &rule, &f, x)).collect()
    } else {
        let p = fl1(cfg, cfg.measure.to_measure()?)?;
        xs.par_iter().map(|&x| p.generator_a(cfg.t, &f, x)).collect::<Result<_, _>>()?
    };
    let rows = xs.iter().zip(values).map(|(x, v)| vec![*x, v.re, v.im]).collect();
    emit(cfg, &Table { header: vec!["x", "re", "im"], rows }, &[])
}

fn qdensity(cfg: &RunConfig) -> Result<(), CliError> {
    let ctx = QContext::new(cfg.q)?;
    if !(cfg.t > 0.0) {
        return Err(CliError::Usage("qdensity needs t > 0".into()));
    }
    let g = cfg.grid.unwrap_or_else(|| {
        let e = ctx.edge(cfg.t);
        GridSpec { lo: -e, hi: e, n: 801 }
    });
    let rows = grid_points(g).into_iter().map(|y| vec![y, ctx.gaussian_density(y, cfg.t)]).collect();
    emit(cfg, &Table { header: vec!["y", "density"], rows }, &[])
}

fn qkernel(cfg: &RunConfig) -> Result<(), CliError> {
    let ctx = QContext::new(cfg.q)?;
    if cfg.s > cfg.t {
        return Err(CliError::Usage("s must not exceed t".into()));
    }
    match cfg.grid {
        Some(g) if cfg.s < cfg.t => {
            let rows = grid_points(g)
                .into_par_iter()
                .map(|y| ctx.kernel_density(cfg.s, cfg.t, cfg.x, y).map(|v| vec![y, v]))
                .collect::<Result<Vec<_>, _>>()?;
            emit(cfg, &Table { header: vec!["y", "density"], rows }, &[])
        }
        g => {
            let n = g.map_or(801, |g| g.n);
            let inv = ctx.transition_kernel(cfg.s, cfg.t, cfg.x, n)?;
            warn(&inv);
            emit(cfg, &inversion_table(&inv), &inv.atoms)
        }
    }
}

/// Runs the suites and writes the JSON report. Returns whether all passed.
fn verify(cfg: &RunConfig, q_only: bool) -> Result<bool, CliError> {
    let names: Vec<String> = if q_only {
        if let Some(bad) = cfg.suites.iter().find(|n| !Q_SUITES.contains(&n.as_str())) {
            return Err(CliError::Usage(format!("'{bad}' is not a q suite; valid: {}", Q_SUITES.join(", "))));
        }
        if cfg.suites.is_empty() {
            Q_SUITES.iter().map(|s| s.to_string()).collect()
        } else {
            cfg.suites.clone()
        }
    } else {
        cfg.suites.clone()
    };
    let checks = verify_suite(&names, cfg.seed)?;
    let pass = checks.iter().all(|c| c.pass);
    let ran: Vec<String> = if names.is_empty() { SUITES.iter().map(|s| s.to_string()).collect() } else { names };
    let report = json!({ "seed": cfg.seed, "suites": ran, "pass": pass, "checks": checks });
    let text = serde_json::to_string_pretty(&report)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(pass)
}

/// Executes the configured command. `Ok(false)` means a verification failed.
pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    match cfg.command {
        Command::Density => density(cfg)?,
        Command::Kernel => kernel(cfg)?,
        Command::Flow => flow(cfg)?,
        Command::Generator => generator(cfg)?,
        Command::Qdensity => qdensity(cfg)?,
        Command::Qkernel => qkernel(cfg)?,
        Command::Verify => return verify(cfg, false),
        Command::Qverify => return verify(cfg, true),
    }
    Ok(true)
}
