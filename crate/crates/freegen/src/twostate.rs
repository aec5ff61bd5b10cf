//! Two-state free Brownian motion with drift.
//!
//! ν_t is the semicircle law with mean αt and variance t, and μ_t = Φ_t[ν_t].
//! Both laws have exact Jacobi parameters: μ_t has alphas (0, αt), betas
//! (t, t) and a repeating tail.

use crate::error::{Error, Result};
use crate::func::SmoothFunction;
use crate::measure::{Measure, Tail};
use crate::quad::Rule;
use crate::singular::{apply_dx_l, apply_l};
use num_complex::Complex64;
use parking_lot::Mutex;
use std::collections::HashMap;
use std::sync::Arc;

type C64 = Complex64;

/// Step of the centered difference in t.
pub const TIME_STEP: f64 = 1e-3;
pub const MAX_DEGREE: usize = 8;

type RulePair = Arc<(Rule, Rule)>;

#[derive(Debug, Clone)]
pub struct TwoStateBM {
    pub alpha: f64,
    rules: Arc<Mutex<HashMap<u64, RulePair>>>,
}

impl TwoStateBM {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain("alpha must be finite".into()));
        }
        Ok(TwoStateBM { alpha, rules: Arc::default() })
    }

    fn check_time(t: f64) -> Result<()> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("t = {t} must be positive")));
        }
        Ok(())
    }

    pub fn nu(&self, t: f64) -> Result<Measure> {
        Self::check_time(t)?;
        Measure::semicircle(self.alpha * t, t)
    }

    pub fn mu(&self, t: f64) -> Result<Measure> {
        Self::check_time(t)?;
        Measure::jacobi(vec![0.0, self.alpha * t], vec![t, t], Tail::Repeat)
    }

    /// Gauss rules of (μ_t, ν_t), built once per t.
    pub fn rules(&self, t: f64) -> Result<RulePair> {
        if let Some(r) = self.rules.lock().get(&t.to_bits()) {
            return Ok(r.clone());
        }
        let pair = Arc::new((self.mu(t)?.rule(), self.nu(t)?.rule()));
        self.rules.lock().insert(t.to_bits(), pair.clone());
        Ok(pair)
    }

    /// α (f'(x) - L_{μ_t} f(x)) + ∂_x L_{ν_t} f(x).
    pub fn generator(&self, t: f64, f: &SmoothFunction, x: f64) -> Result<C64> {
        let r = self.rules(t)?;
        Ok(generator_with_rules(self.alpha, &r.0, &r.1, f, x))
    }

    /// |∂_t μ_t[f] - μ_t[A_t f]| for a polynomial f, with the time
    /// derivative from the five-point centered stencil of step h.
    pub fn moment_evolution_check(&self, coeffs: &[f64], t: f64, h: f64) -> Result<f64> {
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::Domain(format!("degree must not exceed {MAX_DEGREE}")));
        }
        if !(t > 2.0 * h) || !(h > 0.0) {
            return Err(Error::Domain("need t > 2h > 0".into()));
        }
        let deg = coeffs.len().saturating_sub(1);
        let expect = |s: f64| -> Result<f64> {
            let m = self.mu(s)?.moments(deg);
            Ok(coeffs.iter().zip(&m).map(|(c, v)| c * v).sum())
        };
        let fd = (expect(t - 2.0 * h)? - 8.0 * expect(t - h)? + 8.0 * expect(t + h)? - expect(t + 2.0 * h)?)
            / (12.0 * h);
        let f = SmoothFunction::polynomial(coeffs.to_vec());
        let r = self.rules(t)?;
        let rhs = r.0.integrate(|x| generator_with_rules(self.alpha, &r.0, &r.1, &f, x));
        Ok((fd - rhs.re).abs().max(rhs.im.abs()))
    }
}

fn generator_with_rules(alpha: f64, mu: &Rule, nu: &Rule, f: &SmoothFunction, x: f64) -> C64 {
    alpha * (f.d1(x) - apply_l(mu, f, x)) + apply_dx_l(nu, f, x)
}

pub fn twostate_generator(bm: &TwoStateBM, t: f64, f: &SmoothFunction, x: f64) -> Result<C64> {
    bm.generator(t, f, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{phi, probe_set_64, strip, CauchyTransform};
    use proptest::prelude::*;

    #[test]
    fn laws() {
        let bm = TwoStateBM::new(0.7).unwrap();
        let t = 1.3;
        let mu = bm.mu(t).unwrap();
        assert!(mu.mean().abs() < 1e-12);
        assert!((mu.variance() - t).abs() < 1e-8);
        let nu = CauchyTransform::from_measure(Arc::new(bm.nu(t).unwrap()));
        let built = phi(&nu, t);
        let st = strip(&mu).unwrap();
        assert!(st.alpha.abs() < 1e-9 && (st.beta - t).abs() < 1e-9);
        for z in probe_set_64() {
            assert!((built.g(z).unwrap() - mu.g(z)).norm() < 1e-10);
            assert!((st.j.g(z).unwrap() - nu.g(z).unwrap()).norm() < 1e-9);
        }
        assert!(bm.mu(0.0).is_err());
    }

    #[test]
    fn generator_examples() {
        let t = 0.9;
        let x1 = SmoothFunction::monomial(1);
        let x2 = SmoothFunction::monomial(2);
        for alpha in [0.0, 0.5, -1.0] {
            let bm = TwoStateBM::new(alpha).unwrap();
            for x in [-1.2, 0.0, 0.4] {
                assert!(bm.generator(t, &x1, x).unwrap().norm() < 1e-12);
                let v = bm.generator(t, &x2, x).unwrap();
                assert!((v - C64::new(alpha * x + 1.0, 0.0)).norm() < 1e-12);
            }
        }
        // α = 0 is the free Brownian generator
        let bm = TwoStateBM::new(0.0).unwrap();
        let f = SmoothFunction::single_resolvent(C64::new(0.2, 0.5)).unwrap();
        let g = Measure::semicircle(0.0, t).unwrap().rule();
        for x in [-1.0, 0.3] {
            let a = bm.generator(t, &f, x).unwrap();
            assert!((a - apply_dx_l(&g, &f, x)).norm() < 1e-14);
        }
    }

    #[test]
    fn moment_evolution() {
        for alpha in [0.0, 0.5, -1.0] {
            let bm = TwoStateBM::new(alpha).unwrap();
            assert!(bm.moment_evolution_check(&[0.0, 0.0, 1.0], 1.0, TIME_STEP).unwrap() < 1e-9);
            assert!(bm.moment_evolution_check(&[0.0, 1.0], 1.0, TIME_STEP).unwrap() < 1e-12);
            for k in 3..=MAX_DEGREE {
                let mut c = vec![0.0; k + 1];
                c[k] = 1.0;
                let r = bm.moment_evolution_check(&c, 0.8, TIME_STEP).unwrap();
                assert!(r < 1e-5, "alpha={alpha} k={k} r={r}");
            }
        }
        let bm = TwoStateBM::new(0.5).unwrap();
        assert!(bm.moment_evolution_check(&[0.0; 10], 1.0, TIME_STEP).is_err());
        assert!(bm.moment_evolution_check(&[1.0], 0.001, TIME_STEP).is_err());
    }

    static BMS: std::sync::LazyLock<Vec<TwoStateBM>> =
        std::sync::LazyLock::new(|| [-1.5, -0.5, 0.5, 1.5].iter().map(|&a| TwoStateBM::new(a).unwrap()).collect());

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn generator_linear_in_f(alpha in -2.0f64..2.0, x in -1.5f64..1.5, k in -3.0f64..3.0,
                                 c in proptest::collection::vec(-1.0f64..1.0, 1..7),
                                 d in proptest::collection::vec(-1.0f64..1.0, 1..7)) {
            let t = 0.7;
            let bm = &BMS[((alpha + 2.0) * 2.0) as usize % 4];
            let n = c.len().max(d.len());
            let at = |v: &Vec<f64>, i: usize| v.get(i).copied().unwrap_or(0.0);
            let mix: Vec<f64> = (0..n).map(|i| at(&c, i) + k * at(&d, i)).collect();
            let f = SmoothFunction::polynomial(c);
            let g = SmoothFunction::polynomial(d);
            let lhs = bm.generator(t, &SmoothFunction::polynomial(mix), x).unwrap();
            let rhs = bm.generator(t, &f, x).unwrap() + k * bm.generator(t, &g, x).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        }
    }
}
