//! Cauchy transforms as evaluators on the upper half-plane, dilation and
//! coefficient stripping.

use crate::error::{Error, Result};
use crate::measure::Measure;
use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    FromMeasure,
    Composed,
    FixedPoint,
    Shifted,
}

type Eval = dyn Fn(C64) -> Result<C64> + Send + Sync;

/// z -> G(z) on the upper half-plane.
#[derive(Clone)]
pub struct CauchyTransform {
    eval: Arc<Eval>,
    pub origin: Origin,
}

impl fmt::Debug for CauchyTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CauchyTransform({:?})", self.origin)
    }
}

impl CauchyTransform {
    pub fn new(origin: Origin, eval: impl Fn(C64) -> Result<C64> + Send + Sync + 'static) -> Self {
        CauchyTransform { eval: Arc::new(eval), origin }
    }

    pub fn from_measure(mu: Arc<Measure>) -> Self {
        Self::new(Origin::FromMeasure, move |z| Ok(mu.g(z)))
    }

    /// G(z); rejects points off the open upper half-plane.
    pub fn g(&self, z: C64) -> Result<C64> {
        if !(z.im > 0.0) || !z.re.is_finite() {
            return Err(Error::NotUpperHalfPlane(z));
        }
        (self.eval)(z)
    }

    /// Reciprocal Cauchy transform F = 1/G.
    pub fn f(&self, z: C64) -> Result<C64> {
        Ok(1.0 / self.g(z)?)
    }

    /// Complex derivative by a centered difference with step proportional
    /// to the distance from the real axis.
    pub fn derivative(&self, z: C64) -> Result<C64> {
        let h = 1e-4 * z.im.min(1.0);
        Ok((self.g(z + h)? - self.g(z - h)?) / (2.0 * h))
    }

    /// Transform of the law shifted by a: G(z - a).
    pub fn shifted(&self, a: f64) -> Self {
        let inner = self.clone();
        Self::new(Origin::Shifted, move |z| inner.g(z - a))
    }

    /// Mean and variance read off the expansion at i*infinity, with one
    /// Richardson step in the height.
    pub fn asymptotic_mean_variance(&self) -> Result<(f64, f64)> {
        let est = |y: f64| -> Result<(f64, f64)> {
            let z = C64::new(0.0, y);
            let w = z * (z * self.g(z)? - 1.0);
            Ok((w.re, -y * w.im))
        };
        let (m1a, m2a) = est(1e3)?;
        let (m1b, m2b) = est(2e3)?;
        let m1 = (4.0 * m1b - m1a) / 3.0;
        let m2 = (4.0 * m2b - m2a) / 3.0;
        Ok((m1, m2 - m1 * m1))
    }

    /// Largest violation of the Nevanlinna invariants on the probe set:
    /// Im G < 0, |G| <= 1/Im z, and zG -> 1 along the imaginary axis.
    pub fn invariant_violation(&self, probes: &[C64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &z in probes {
            let g = self.g(z)?;
            worst = worst.max(g.im.max(0.0));
            worst = worst.max(g.norm() - 1.0 / z.im);
        }
        for y in [1e3, 1e4] {
            let z = C64::new(0.0, y);
            let r = (z * self.g(z)? - 1.0).norm();
            worst = worst.max((r - 1e-3).max(0.0));
        }
        Ok(worst)
    }
}

/// 64 probe points: an 8 x 8 lattice with Re z in [-3, 3] and Im z from 0.05 to 3.
pub fn probe_set_64() -> Vec<C64> {
    let mut out = Vec::with_capacity(64);
    for i in 0..8 {
        let x = -3.0 + 6.0 * i as f64 / 7.0;
        for j in 0..8 {
            let y = 0.05 * (60f64).powf(j as f64 / 7.0);
            out.push(C64::new(x, y));
        }
    }
    out
}

/// 16 probes away from the real axis.
pub fn probe_set_16() -> Vec<C64> {
    let mut out = Vec::with_capacity(16);
    for i in 0..4 {
        let x = -2.0 + 4.0 * i as f64 / 3.0;
        for y in [0.25, 0.6, 1.2, 2.5] {
            out.push(C64::new(x, y));
        }
    }
    out
}

/// Dilation: F_{Phi_t[nu]}(z) = z - t G_nu(z).
pub fn phi(nu: &CauchyTransform, t: f64) -> CauchyTransform {
    let nu = nu.clone();
    CauchyTransform::new(Origin::Composed, move |z| {
        if t == 0.0 {
            return Ok(1.0 / z);
        }
        Ok(1.0 / (z - t * nu.g(z)?))
    })
}

#[derive(Debug, Clone)]
pub struct Stripped {
    pub alpha: f64,
    pub beta: f64,
    pub j: CauchyTransform,
}

pub const DEGENERATE_VARIANCE: f64 = 1e-12;

/// Coefficient stripping: G_J = (z - alpha - F_mu(z)) / beta, with the mean
/// and variance taken from the representation.
pub fn strip(mu: &Measure) -> Result<Stripped> {
    let alpha = mu.mean();
    let beta = mu.variance();
    strip_transform(&CauchyTransform::from_measure(Arc::new(mu.clone())), alpha, beta)
}

/// Coefficient stripping of a transform with known mean and variance.
pub fn strip_transform(mu: &CauchyTransform, alpha: f64, beta: f64) -> Result<Stripped> {
    if !(beta > DEGENERATE_VARIANCE) {
        return Err(Error::Degenerate(beta));
    }
    let inner = mu.clone();
    let j = CauchyTransform::new(Origin::Composed, move |z| Ok((z - alpha - inner.f(z)?) / beta));
    Ok(Stripped { alpha, beta, j })
}
