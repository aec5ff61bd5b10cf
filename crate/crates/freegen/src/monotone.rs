//! Monotone semigroups: the half-plane flow -dF/dt = alpha + G_sigma(F),
//! its transition operators, the second-kind generator and the Chernoff
//! product comparison with first-kind kernels.

use crate::error::{Error, Result};
use crate::freelevy::Fl1Process;
use crate::func::SmoothFunction;
use crate::quad::Rule;
use crate::singular::apply_dx_l;
use crate::stieltjes::{stieltjes_invert, Inversion, Status};
use crate::transform::{CauchyTransform, Origin};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

type C64 = Complex64;

pub const LOCAL_TOL: f64 = 1e-10;
pub const AXIS_FLOOR: f64 = 1e-9;
pub const MIN_STEP: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct MonotoneFlow {
    pub alpha: f64,
    /// None is the zero measure (pure drift).
    pub sigma: Option<CauchyTransform>,
    pub initial_step: f64,
    pub tol: f64,
}

impl MonotoneFlow {
    pub fn new(alpha: f64, sigma: Option<CauchyTransform>) -> Self {
        MonotoneFlow { alpha, sigma, initial_step: 0.05, tol: LOCAL_TOL }
    }

    fn field(&self, w: C64) -> Result<C64> {
        let g = match &self.sigma {
            Some(s) => s.g(w)?,
            None => C64::new(0.0, 0.0),
        };
        Ok(-(self.alpha + g))
    }

    fn rk4(&self, w: C64, h: f64) -> Result<C64> {
        let k1 = self.field(w)?;
        let k2 = self.field(w + 0.5 * h * k1)?;
        let k3 = self.field(w + 0.5 * h * k2)?;
        let k4 = self.field(w + h * k3)?;
        Ok(w + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
    }

    /// F_t(z) by RK4 with step doubling. A step is rejected when the two
    /// estimates differ by more than the tolerance or when it comes within
    /// twice the axis floor of the real line.
    pub fn flow(&self, t: f64, z: C64) -> Result<C64> {
        if !(z.im > 0.0) {
            return Err(Error::NotUpperHalfPlane(z));
        }
        if !(t >= 0.0) {
            return Err(Error::Domain("time must be nonnegative".into()));
        }
        let mut w = z;
        let mut done = 0.0;
        let mut h = self.initial_step.min(t);
        while done < t {
            h = h.min(t - done);
            if h < MIN_STEP {
                return Err(Error::NoConvergence { z, t, residual: w.im });
            }
            let one = self.rk4(w, h);
            let two = self.rk4(w, 0.5 * h).and_then(|m| self.rk4(m, 0.5 * h));
            let (one, two) = match (one, two) {
                (Ok(a), Ok(b)) => (a, b),
                _ => {
                    h *= 0.5;
                    continue;
                }
            };
            let err = (two - one).norm() / 15.0;
            let next = two + (two - one) / 15.0;
            if err > self.tol || next.im < 2.0 * AXIS_FLOOR || !next.re.is_finite() {
                h *= 0.5;
                continue;
            }
            debug_assert!(next.im > 0.0);
            w = next;
            done += h;
            let grow = if err > 0.0 { 0.9 * (self.tol / err).powf(0.2) } else { 2.0 };
            h *= grow.clamp(0.2, 2.0);
        }
        Ok(w)
    }

    /// The law tau_t as a Cauchy transform: G = 1/F_t.
    pub fn law(self: &Arc<Self>, t: f64) -> CauchyTransform {
        let me = self.clone();
        CauchyTransform::new(Origin::Composed, move |z| Ok(1.0 / me.flow(t, z)?))
    }

    /// Kernel delta_x ▷ tau_t by Stieltjes inversion of 1/(F_t - x).
    pub fn monotone_kernel(self: &Arc<Self>, t: f64, x: f64, grid: (f64, f64, usize), eps: Option<f64>) -> Result<Inversion> {
        let (lo, hi, n) = grid;
        if t == 0.0 {
            return Ok(Inversion {
                lo,
                hi,
                values: vec![0.0; n],
                atoms: vec![(x, 1.0)],
                eps: 0.0,
                mass: 1.0,
                status: Status::Ok,
            });
        }
        let me = self.clone();
        let k = CauchyTransform::new(Origin::Composed, move |z| Ok(1.0 / (me.flow(t, z)? - x)));
        let mut inv = stieltjes_invert(&k, lo, hi, n, eps)?;
        if inv.status == Status::Ok && (inv.mass - 1.0).abs() > 1e-5 {
            inv.status = Status::Warning(format!("kernel mass {:.8} outside 1 ± 1e-5", inv.mass));
        }
        Ok(inv)
    }

    /// ∫ y^k d(delta_x ▷ tau_t)(y), k = 0..=n, by the trapezoid rule on a
    /// circle of radius r around the origin enclosing the support, using
    /// G(conj z) = conj G(z) on the lower half.
    pub fn kernel_moments(&self, t: f64, x: f64, n: usize, r: f64) -> Result<Vec<f64>> {
        let m = 256;
        let mut out = vec![0.0; n + 1];
        for j in 0..m / 2 {
            let th = PI * (j as f64 + 0.5) / (m / 2) as f64;
            let z = C64::from_polar(r, th);
            let g = 1.0 / (self.flow(t, z)? - x);
            // (1/2πi) ∮ z^k G dz with dz = i z dθ; pair z with its conjugate.
            for (k, o) in out.iter_mut().enumerate() {
                let term = z.powu(k as u32 + 1) * g;
                *o += 2.0 * term.re / m as f64;
            }
        }
        Ok(out)
    }
}

/// alpha f'(x) + d/dx L_rho f (x).
pub fn fl2_generator(alpha: f64, rho: &Rule, f: &SmoothFunction, x: f64) -> C64 {
    alpha * f.d1(x) + apply_dx_l(rho, f, x)
}

/// Monotone flow driven by nu_s of a first-kind process, for the Chernoff
/// comparison.
pub fn driving_flow(proc: &Fl1Process, s: f64) -> Result<MonotoneFlow> {
    let nu = proc.nu(s)?;
    let g = if s == 0.0 {
        CauchyTransform::from_measure(proc.pair.rho.clone())
    } else {
        nu.transform()
    };
    Ok(MonotoneFlow::new(proc.alpha(), Some(g)))
}

/// For each n, max over xs of |1/(F^n(z) - x) - 1/(F_t(z) - x)| where F^n is
/// the n-fold composition of F_{s,s+t/n} and F_t the monotone flow driven by
/// nu_s.
pub fn chernoff_check(proc: &Fl1Process, s: f64, t: f64, ns: &[usize], z: C64, xs: &[f64]) -> Result<Vec<f64>> {
    if ns.windows(2).any(|w| w[1] <= w[0]) || ns.first() == Some(&0) {
        return Err(Error::Domain("n must be positive and increasing".into()));
    }
    let limit = driving_flow(proc, s)?.flow(t, z)?;
    ns.iter()
        .map(|&n| {
            let map = proc.subordination(s, s + t / n as f64)?;
            let mut w = z;
            for _ in 0..n {
                w = map.eval(w)?;
            }
            Ok(xs.iter().map(|&x| (1.0 / (w - x) - 1.0 / (limit - x)).norm()).fold(0.0, f64::max))
        })
        .collect()
}
