//! Free convolution with semicircle laws by subordination, Boolean and
//! monotone convolution, numeric inversion of G and the R-transform.

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::quad::{density_rule, Rule};
use crate::transform::{CauchyTransform, Origin};
use num_complex::Complex64;
use parking_lot::RwLock;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

type C64 = Complex64;

pub const FIXED_POINT_TOL: f64 = 1e-12;
pub const MAX_ITER: usize = 10_000;

/// A converged subordination point.
#[derive(Debug, Clone, Copy)]
pub struct FlowPoint {
    pub omega: C64,
    pub iters: usize,
    pub residual: f64,
}

/// Memo table of converged subordination points, keyed by (t, z).
/// Readers share the lock; inserts take it exclusively.
#[derive(Debug, Default)]
pub struct FlowCache {
    map: RwLock<HashMap<(u64, u64, u64), FlowPoint>>,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

const CACHE_CAP: usize = 1 << 20;

impl FlowCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(t: f64, z: C64) -> (u64, u64, u64) {
        (t.to_bits(), z.re.to_bits(), z.im.to_bits())
    }

    pub fn get(&self, t: f64, z: C64) -> Option<FlowPoint> {
        let hit = self.map.read().get(&Self::key(t, z)).copied();
        match hit {
            Some(_) => self.hits.fetch_add(1, Ordering::Relaxed),
            None => self.misses.fetch_add(1, Ordering::Relaxed),
        };
        hit
    }

    pub fn insert(&self, t: f64, z: C64, p: FlowPoint) {
        let mut m = self.map.write();
        if m.len() >= CACHE_CAP {
            m.clear();
        }
        m.insert(Self::key(t, z), p);
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// (hits, misses)
    pub fn stats(&self) -> (usize, usize) {
        (self.hits.load(Ordering::Relaxed), self.misses.load(Ordering::Relaxed))
    }
}

/// The law rho ⊞ γ_t, optionally shifted by a constant.
#[derive(Debug)]
pub struct SemicircularFlow {
    rho: Arc<Measure>,
    t: f64,
    shift: f64,
    cache: Option<Arc<FlowCache>>,
    rule: OnceLock<Rule>,
}

impl SemicircularFlow {
    pub fn new(rho: Arc<Measure>, t: f64) -> Self {
        assert!(t >= 0.0, "time must be nonnegative");
        SemicircularFlow { rho, t, shift: 0.0, cache: None, rule: OnceLock::new() }
    }

    pub fn with_shift(mut self, shift: f64) -> Self {
        self.shift = shift;
        self
    }

    pub fn with_cache(mut self, cache: Arc<FlowCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn rho(&self) -> &Arc<Measure> {
        &self.rho
    }

    fn residual(&self, z: C64, w: C64) -> f64 {
        (w - (z - self.t * self.rho.g(w))).norm()
    }

    /// Solves omega = z - t G_rho(omega) for Im z > 0 (unshifted variable).
    /// A direct solve from omega = z is tried first. If it stalls, the
    /// solution is continued down from a height where the map is a strict
    /// contraction, halving the height at each stage.
    pub fn omega(&self, z: C64) -> Result<FlowPoint> {
        if !(z.im > 0.0) {
            return Err(Error::NotUpperHalfPlane(z));
        }
        if self.t == 0.0 {
            return Ok(FlowPoint { omega: z, iters: 0, residual: 0.0 });
        }
        if let Some(c) = &self.cache {
            if let Some(p) = c.get(self.t, z) {
                return Ok(p);
            }
        }
        let p = match self.solve_at(z, z, 60) {
            Ok(p) => p,
            Err(_) => {
                let top = (2.0 * z.im).max(2.0 * self.t.sqrt() + 1.0);
                let mut eta = top;
                let mut p = self.solve_at(C64::new(z.re, eta), C64::new(z.re, eta), MAX_ITER)?;
                let mut iters = p.iters;
                while eta > z.im {
                    eta = (0.5 * eta).max(z.im);
                    p = self.solve_at(C64::new(z.re, eta), p.omega, MAX_ITER)?;
                    iters += p.iters;
                }
                FlowPoint { iters, ..p }
            }
        };
        if let Some(c) = &self.cache {
            c.insert(self.t, z, p);
        }
        Ok(p)
    }

    /// Fixed-point solve at z from w0: Newton with backtracking while it
    /// reduces the residual and stays above Im z, otherwise a damped
    /// fixed-point step whose size halves when the residual grows.
    fn solve_at(&self, z: C64, w0: C64, max_iter: usize) -> Result<FlowPoint> {
        let t = self.t;
        let mut w = if w0.im >= z.im { w0 } else { C64::new(w0.re, z.im) };
        let mut lambda = 1.0;
        let mut r = self.residual(z, w);
        let mut iters = 0;
        while r >= FIXED_POINT_TOL {
            if iters >= max_iter || !r.is_finite() {
                return Err(Error::NoConvergence { z, t, residual: r });
            }
            iters += 1;
            let (g, dg) = self.rho.gd(w);
            // Any fixed point with Im omega > 0 is the subordination point,
            // so Newton steps are safe as long as they stay above Im z.
            let step = (w + t * g - z) / (1.0 + t * dg);
            let mut mu = 1.0;
            let mut moved = false;
            for _ in 0..8 {
                let wn = w - mu * step;
                if wn.im >= z.im && wn.re.is_finite() && wn.im.is_finite() {
                    let rn = self.residual(z, wn);
                    if rn < r {
                        w = wn;
                        r = rn;
                        moved = true;
                        break;
                    }
                }
                mu *= 0.5;
            }
            if moved {
                continue;
            }
            let target = z - t * g;
            let wn = (1.0 - lambda) * w + lambda * target;
            let rn = self.residual(z, wn);
            if rn > r {
                lambda = (0.5 * lambda).max(1.0 / 1024.0);
            } else {
                lambda = (2.0 * lambda).min(1.0);
            }
            w = wn;
            r = rn;
        }
        Ok(FlowPoint { omega: w, iters, residual: r })
    }

    /// Boundary value omega(x + i0), by continuation in the height with
    /// Newton steps that keep Im omega >= 0.
    pub fn boundary_omega(&self, x: f64) -> C64 {
        let t = self.t;
        if t == 0.0 {
            return C64::new(x, 0.0);
        }
        let scale = self.t.sqrt().max(1e-3);
        let mut w = match self.omega(C64::new(x, scale)) {
            Ok(p) => p.omega,
            Err(_) => C64::new(x, scale),
        };
        let mut eta = scale;
        loop {
            eta = if eta > 1e-14 * scale { eta * 0.1 } else { 0.0 };
            let z = C64::new(x, eta);
            for _ in 0..60 {
                let (g, dg) = self.rho.gd(w);
                let res = w + t * g - z;
                let r0 = res.norm();
                if r0 < 1e-15 * (1.0 + w.norm()) {
                    break;
                }
                let step = res / (1.0 + t * dg);
                let mut lam = 1.0;
                let mut moved = false;
                for _ in 0..30 {
                    let mut wn = w - lam * step;
                    if wn.im < 0.0 {
                        wn.im = 0.0;
                    }
                    let rn = (wn + t * self.rho.g(wn) - z).norm();
                    if rn.is_finite() && rn < r0 {
                        w = wn;
                        moved = true;
                        break;
                    }
                    lam *= 0.5;
                }
                if !moved {
                    break;
                }
            }
            if eta == 0.0 {
                break;
            }
        }
        w
    }

    /// G_nu(z) and G_nu'(z) for Im z > 0.
    pub fn gd(&self, z: C64) -> Result<(C64, C64)> {
        let u = z - self.shift;
        if self.t == 0.0 {
            if !(u.im > 0.0) {
                return Err(Error::NotUpperHalfPlane(z));
            }
            return Ok(self.rho.gd(u));
        }
        let w = self.omega(u)?.omega;
        let (g, dg) = self.rho.gd(w);
        let dw = 1.0 / (1.0 + self.t * dg);
        Ok((g, dg * dw))
    }

    pub fn g(&self, z: C64) -> Result<C64> {
        Ok(self.gd(z)?.0)
    }

    /// G_nu(x + i0) and its derivative along the axis.
    pub fn boundary_gd(&self, x: f64) -> (C64, C64) {
        let u = x - self.shift;
        if self.t == 0.0 {
            return self.rho.gd(C64::new(u, 0.0));
        }
        let w = self.boundary_omega(u);
        let (g, dg) = self.rho.gd(w);
        (g, dg / (1.0 + self.t * dg))
    }

    pub fn density(&self, x: f64) -> f64 {
        if self.t == 0.0 {
            return f64::NAN;
        }
        let w = self.boundary_omega(x - self.shift);
        (w.im / (PI * self.t)).max(0.0)
    }

    pub fn support_bounds(&self) -> (f64, f64) {
        let (lo, hi) = self.rho.support_bounds();
        let r = 2.0 * self.t.sqrt();
        (lo - r + self.shift, hi + r + self.shift)
    }

    pub fn mean(&self) -> f64 {
        self.rho.mean() + self.shift
    }

    pub fn variance(&self) -> f64 {
        self.rho.variance() + self.t
    }

    /// An integration rule for the law, built once. Semicircular and
    /// time-zero cases reuse Gauss rules; otherwise the density is refined
    /// adaptively over the support window.
    pub fn rule(&self) -> &Rule {
        self.rule.get_or_init(|| {
            if self.t == 0.0 {
                return self.rho.rule().shifted(self.shift);
            }
            if let Some((m, v)) = semicircle_params(&self.rho) {
                return Measure::semicircle(m + self.shift, v + self.t).unwrap().rule();
            }
            let (lo, hi) = self.support_bounds();
            let pad = 1e-3 * (hi - lo);
            let dens = |x: f64| self.density(x);
            density_rule(&dens, lo - pad, hi + pad, 32, 1e-14)
        })
    }

    pub fn transform(self: &Arc<Self>) -> CauchyTransform {
        let me = self.clone();
        CauchyTransform::new(Origin::FixedPoint, move |z| me.g(z))
    }
}

/// (mean, variance) if the measure is a point mass or a semicircle.
fn semicircle_params(m: &Measure) -> Option<(f64, f64)> {
    match m {
        Measure::Atomic(a) if a.len() == 1 => Some((a[0].0, 0.0)),
        Measure::Jacobi { alphas, betas, tail: crate::measure::Tail::Repeat } if alphas.len() == 1 => {
            Some((alphas[0], betas[0]))
        }
        _ => None,
    }
}

/// Cauchy transform of rho ⊞ γ_t.
pub fn semicircular_flow(rho: &Measure, t: f64) -> Result<CauchyTransform> {
    if !(t >= 0.0) {
        return Err(Error::Domain("time must be nonnegative".into()));
    }
    Ok(Arc::new(SemicircularFlow::new(Arc::new(rho.clone()), t)).transform())
}

/// F = F_1 + F_2 - z.
pub fn boolean_conv(a: &CauchyTransform, b: &CauchyTransform) -> CauchyTransform {
    let (a, b) = (a.clone(), b.clone());
    CauchyTransform::new(Origin::Composed, move |z| Ok(1.0 / (a.f(z)? + b.f(z)? - z)))
}

/// Boolean power: F = z + t (F_mu - z).
pub fn boolean_power(a: &CauchyTransform, t: f64) -> CauchyTransform {
    let a = a.clone();
    CauchyTransform::new(Origin::Composed, move |z| Ok(1.0 / (z + t * (a.f(z)? - z))))
}

/// F = F_1 ∘ F_2.
pub fn monotone_conv(a: &CauchyTransform, b: &CauchyTransform) -> CauchyTransform {
    let (a, b) = (a.clone(), b.clone());
    CauchyTransform::new(Origin::Composed, move |z| a.g(b.f(z)?))
}

/// Transform of mu ⊞ δ_a.
pub fn dirac_shift(a: &CauchyTransform, shift: f64) -> CauchyTransform {
    a.shifted(shift)
}

/// Newton solve of G(z) = w in the upper half-plane, starting from z0.
pub fn invert_cauchy(g: &CauchyTransform, w: C64, z0: C64) -> Result<C64> {
    let fail = |reason: &str| Error::Inversion { w, reason: reason.to_string() };
    if !(z0.im > 0.0) {
        return Err(fail("starting point is not in the upper half-plane"));
    }
    let mut z = z0;
    let mut r = (g.g(z)? - w).norm();
    for _ in 0..200 {
        if r < 1e-13 * w.norm().max(1e-300) || r < 1e-15 {
            break;
        }
        let d = g.derivative(z)?;
        let step = (g.g(z)? - w) / d;
        let mut lam = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let zn = z - lam * step;
            if zn.im > 0.0 {
                let rn = (g.g(zn)? - w).norm();
                if rn < r {
                    z = zn;
                    r = rn;
                    accepted = true;
                    break;
                }
            }
            lam *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if r > 1e-12 {
        return Err(fail(&format!("residual {r:e} after Newton iteration")));
    }
    Ok(z)
}

/// R(w) = G^{-1}(w) - 1/w with the inversion seeded at 1/w + mean + var w.
/// Requires |w| < 0.2 / sigma.
pub fn r_transform(g: &CauchyTransform, w: C64, mean: f64, var: f64) -> Result<C64> {
    let sigma = var.max(0.0).sqrt();
    if sigma > 0.0 && w.norm() >= 0.2 / sigma {
        return Err(Error::Inversion { w, reason: format!("|w| beyond inversion radius {:.3}", 0.2 / sigma) });
    }
    let mut z0 = 1.0 / w + mean + var * w;
    if !(z0.im > 0.0) {
        z0.im = (1.0 / w).im.abs().max(1e-3);
    }
    Ok(invert_cauchy(g, w, z0)? - 1.0 / w)
}

/// Probes for the Boolean-to-free check: |z| >= 6 so that 1/z lies inside
/// the inversion radius of a unit-variance law.
pub fn bp_probes() -> Vec<C64> {
    (0..8)
        .map(|k| {
            let th = PI * (0.1 + 0.8 * k as f64 / 7.0);
            C64::from_polar(6.0 + k as f64, th)
        })
        .collect()
}

/// Residual of z - F_nu(z) = R_{mu_1}(1/z) where nu = Phi[rho] and mu_1 is
/// the time-one law of the centered process with canonical measure rho.
pub fn bercovici_pata_check(rho: &Measure, probes: &[C64]) -> Result<f64> {
    let flow = Arc::new(SemicircularFlow::new(Arc::new(rho.clone()), 1.0));
    let nu_flow = flow.transform();
    let mu1 = CauchyTransform::new(Origin::Composed, move |z| Ok(1.0 / (z - nu_flow.g(z)?)));
    let nu = crate::transform::phi(&CauchyTransform::from_measure(Arc::new(rho.clone())), 1.0);
    let mut worst: f64 = 0.0;
    for &z in probes {
        let lhs = z - nu.f(z)?;
        let rhs = r_transform(&mu1, 1.0 / z, 0.0, 1.0)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{phi, probe_set_64};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn semicircle_closed(z: C64, t: f64) -> C64 {
        2.0 / (z + (z - 2.0 * t.sqrt()).sqrt() * (z + 2.0 * t.sqrt()).sqrt())
    }

    #[test]
    fn dirac_flow_is_semicircle() {
        let t = 0.7;
        let g = semicircular_flow(&Measure::dirac(0.0), t).unwrap();
        for z in probe_set_64() {
            assert!((g.g(z).unwrap() - semicircle_closed(z, t)).norm() < 1e-11);
        }
    }

    #[test]
    fn time_zero_is_identity() {
        let rho = Measure::bernoulli();
        let g = semicircular_flow(&rho, 0.0).unwrap();
        for z in probe_set_64() {
            assert_eq!(g.g(z).unwrap(), rho.g(z));
        }
    }

    #[test]
    fn bernoulli_flow_high_precision_oracle() {
        // Plain iteration run to exhaustion as an independent oracle.
        let z = c(0.0, 2.0);
        let mut w = z;
        for _ in 0..2000 {
            w = z - 0.5 * (1.0 / (w - 1.0) + 1.0 / (w + 1.0));
        }
        let oracle = 0.5 * (1.0 / (w - 1.0) + 1.0 / (w + 1.0));
        let g = semicircular_flow(&Measure::bernoulli(), 1.0).unwrap();
        assert!((g.g(z).unwrap() - oracle).norm() < 1e-14);
    }

    #[test]
    fn fixed_point_invariants() {
        let f = SemicircularFlow::new(Arc::new(Measure::arcsine(2f64.sqrt()).unwrap()), 0.6);
        for z in probe_set_64() {
            let p = f.omega(z).unwrap();
            assert!(p.omega.im >= z.im);
            assert!((p.omega - (z - 0.6 * f.rho().g(p.omega))).norm() < FIXED_POINT_TOL);
        }
    }

    #[test]
    fn near_axis_converges() {
        let f = SemicircularFlow::new(Arc::new(Measure::bernoulli()), 0.3);
        let p = f.omega(c(0.9, 1e-4)).unwrap();
        assert!(p.residual < FIXED_POINT_TOL && p.iters < MAX_ITER);
    }

    #[test]
    fn variance_adds() {
        let rho = Measure::arcsine(2f64.sqrt()).unwrap();
        let g = semicircular_flow(&rho, 0.8).unwrap();
        let (m, v) = g.asymptotic_mean_variance().unwrap();
        assert!(m.abs() < 1e-8 && (v - 1.8).abs() < 1e-8, "{m} {v}");
    }

    #[test]
    fn boundary_density_and_rule() {
        let f = SemicircularFlow::new(Arc::new(Measure::dirac(0.0)), 1.0);
        for x in [-1.9, -0.5, 0.0, 1.3] {
            let d = f.density(x);
            assert!((d - crate::measure::semicircle_density(x, 1.0)).abs() < 1e-12, "{x}: {d}");
        }
        assert!(f.density(2.5) < 1e-14);
        let b = SemicircularFlow::new(Arc::new(Measure::bernoulli()), 0.5);
        let r = b.rule();
        assert!((r.mass() - 1.0).abs() < 1e-11, "{}", r.mass());
        assert!((r.moment(2) - 1.5).abs() < 1e-10);
        let z = c(0.3, 0.4);
        assert!((r.cauchy(z) - b.g(z).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn boolean_and_monotone_units() {
        let mu = CauchyTransform::from_measure(Arc::new(Measure::arcsine(1.0).unwrap()));
        let d0 = CauchyTransform::from_measure(Arc::new(Measure::dirac(0.0)));
        let b1 = boolean_conv(&mu, &d0);
        let b2 = boolean_conv(&d0, &mu);
        let m1 = monotone_conv(&mu, &d0);
        for z in probe_set_64() {
            let f = mu.f(z).unwrap();
            assert!((b1.f(z).unwrap() - f).norm() < 1e-13);
            assert!((b2.f(z).unwrap() - f).norm() < 1e-13);
            assert!((m1.f(z).unwrap() - f).norm() < 1e-13);
        }
    }

    #[test]
    fn dirac_convolutions() {
        let da = CauchyTransform::from_measure(Arc::new(Measure::dirac(0.4)));
        let db = CauchyTransform::from_measure(Arc::new(Measure::dirac(-1.1)));
        let z = c(0.2, 0.9);
        let want = 1.0 / (z - 0.4 + 1.1);
        assert!((boolean_conv(&da, &db).g(z).unwrap() - want).norm() < 1e-15);
        assert!((monotone_conv(&da, &db).g(z).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn boolean_power_of_phi() {
        let nu = CauchyTransform::from_measure(Arc::new(Measure::bernoulli()));
        let t = 2.3;
        let a = boolean_power(&phi(&nu, 1.0), t);
        let b = phi(&nu, t);
        for z in probe_set_64() {
            assert!((a.f(z).unwrap() - b.f(z).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn monotone_associative() {
        let m1 = CauchyTransform::from_measure(Arc::new(Measure::arcsine(1.0).unwrap()));
        let m2 = CauchyTransform::from_measure(Arc::new(Measure::bernoulli()));
        let m3 = CauchyTransform::from_measure(Arc::new(Measure::semicircle(0.5, 0.3).unwrap()));
        let left = monotone_conv(&monotone_conv(&m1, &m2), &m3);
        for z in probe_set_64() {
            let direct = m1.f(m2.f(m3.f(z).unwrap()).unwrap()).unwrap();
            assert!((left.f(z).unwrap() - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn monotone_kernel_mass() {
        let nu = CauchyTransform::from_measure(Arc::new(Measure::semicircle(0.0, 1.0).unwrap()));
        let dx = CauchyTransform::from_measure(Arc::new(Measure::dirac(0.7)));
        let k = monotone_conv(&dx, &nu);
        let inv = crate::stieltjes::stieltjes_invert(&k, -6.0, 6.0, 4001, None).unwrap();
        assert!((inv.mass - 1.0).abs() < 1e-6, "{}", inv.mass);
    }

    #[test]
    fn inversion_examples() {
        let d = CauchyTransform::from_measure(Arc::new(Measure::dirac(0.0)));
        let w = c(0.05, -0.1);
        assert!((invert_cauchy(&d, w, c(1.0, 5.0)).unwrap() - 1.0 / w).norm() < 1e-10);
        let s = CauchyTransform::from_measure(Arc::new(Measure::semicircle(0.0, 1.0).unwrap()));
        let z = invert_cauchy(&s, w, 1.0 / w).unwrap();
        assert!((z - (1.0 / w + w)).norm() < 1e-10);
        assert!((s.g(z).unwrap() - w).norm() < 1e-12);
    }

    #[test]
    fn r_transforms() {
        let a = 0.8;
        let d = CauchyTransform::from_measure(Arc::new(Measure::dirac(a)));
        let w = c(0.03, -0.08);
        assert!((r_transform(&d, w, a, 0.0).unwrap() - a).norm() < 1e-10);
        let t = 2.0;
        let s = CauchyTransform::from_measure(Arc::new(Measure::semicircle(0.0, t).unwrap()));
        assert!((r_transform(&s, w, 0.0, t).unwrap() - t * w).norm() < 1e-10);
        let (b, cc) = (1.0, 0.5);
        let m = CauchyTransform::from_measure(Arc::new(Measure::free_meixner(b, cc, 1.0).unwrap()));
        for w in [c(0.05, -0.1), c(-0.1, -0.05), c(0.0, -0.15)] {
            let r = r_transform(&m, w, 0.0, 1.0).unwrap();
            assert!((r - w * (1.0 + b * r + cc * r * r)).norm() < 1e-9);
        }
        assert!(r_transform(&s, c(0.0, -0.5), 0.0, t).is_err());
    }

    #[test]
    fn bercovici_pata() {
        let r0 = bercovici_pata_check(&Measure::dirac(0.0), &bp_probes()).unwrap();
        assert!(r0 < 1e-12, "{r0}");
        let r1 = bercovici_pata_check(&Measure::semicircle(0.7, 0.4).unwrap(), &bp_probes()).unwrap();
        assert!(r1 < 1e-8, "{r1}");
        let r2 = bercovici_pata_check(&Measure::arcsine(2f64.sqrt()).unwrap(), &bp_probes()).unwrap();
        assert!(r2 < 1e-8, "{r2}");
    }

    #[test]
    fn cache_is_used() {
        let cache = Arc::new(FlowCache::new());
        let f = SemicircularFlow::new(Arc::new(Measure::bernoulli()), 1.0).with_cache(cache.clone());
        let z = c(0.1, 0.5);
        let a = f.omega(z).unwrap();
        let b = f.omega(z).unwrap();
        assert_eq!(a.omega, b.omega);
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.stats().0, 1);
    }
}
