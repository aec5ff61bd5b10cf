//! The singular integral operators L_nu and d/dx L_nu, the carré du champ
//! and the identities they satisfy.
//!
//! Every operator takes the measure through an integration [`Rule`] so that
//! callers can reuse one rule across many evaluation points.

use crate::cumulants::CumulantSeq;
use crate::error::{Error, Result};
use crate::func::{FnKind, SmoothFunction};
use crate::measure::Measure;
use crate::quad::{adaptive, adaptive_pieces, Rule};
use crate::transform::DEGENERATE_VARIANCE;
use num_complex::Complex64;

type C64 = Complex64;

/// L_nu f(x) = ∫ (f(x) - f(y))/(x - y) dnu(y).
pub fn apply_l(nu: &Rule, f: &SmoothFunction, x: f64) -> C64 {
    nu.integrate(|y| f.dd1(x, y))
}

/// d/dx L_nu f(x) = ∫ (f(y) - f(x) - (y - x) f'(x))/(y - x)^2 dnu(y).
pub fn apply_dx_l(nu: &Rule, f: &SmoothFunction, x: f64) -> C64 {
    let v = nu.integrate(|y| f.dd2(x, y));
    if let Some(s) = f.sup_d2() {
        debug_assert!(
            v.norm() <= nu.mass() * s * (1.0 + 1e-8) + 1e-12,
            "|dx L f| = {} exceeds mass * sup|f''| = {}",
            v.norm(),
            nu.mass() * s
        );
    }
    v
}

/// D(f, g)(x) = ∫ f[x, y] g[x, y] dnu(y).
pub fn carre_du_champ(nu: &Rule, f: &SmoothFunction, g: &SmoothFunction, x: f64) -> C64 {
    nu.integrate(|y| f.dd1(x, y) * g.dd1(x, y))
}

/// The generator alpha d/dx + d/dx L_nu applied to f at x.
pub fn generator(alpha: f64, nu: &Rule, f: &SmoothFunction, x: f64) -> C64 {
    alpha * f.d1(x) + apply_dx_l(nu, f, x)
}

fn is_zero(f: &SmoothFunction) -> bool {
    matches!(&f.kind, FnKind::Polynomial(c) if c.iter().all(|v| *v == 0.0))
}

/// (2 Re <A f, f>, -∬ |f[x, y]|^2 dnu(y) dx) for a real f supported inside
/// the window (a, b). The x-integral outside the window is done in closed
/// form: for y in the window, ∫_b^∞ dx/(x - y)^2 = 1/(b - y).
pub fn dissipativity_functional(
    alpha: f64,
    nu: &Rule,
    f: &SmoothFunction,
    window: (f64, f64),
    tol: f64,
) -> Result<(f64, f64)> {
    if is_zero(f) {
        return Ok((0.0, 0.0));
    }
    if !f.is_real() {
        return Err(Error::Domain("dissipativity needs a real function".into()));
    }
    let (a, b) = window;
    let (lo, hi) = f
        .support()
        .ok_or_else(|| Error::Domain("function has no compact support".into()))?;
    if !(a < lo && hi < b) {
        return Err(Error::Domain(format!("support [{lo}, {hi}] escapes the window ({a}, {b})")));
    }
    let lhs_integrand = |x: f64| 2.0 * (generator(alpha, nu, f, x) * f.eval(x).conj()).re;
    let lhs = adaptive(&lhs_integrand, lo, hi, tol);
    let inner = |x: f64| -nu.integrate(|y| f.dd1(x, y).norm_sqr());
    let mut breaks = vec![a, lo, hi, b];
    breaks.dedup();
    let body = adaptive_pieces(&inner, &breaks, tol);
    let tails = -nu.integrate(|y| {
        if y <= lo || y >= hi {
            0.0
        } else {
            f.eval(y).norm_sqr() * (1.0 / (b - y) + 1.0 / (y - a))
        }
    });
    Ok((lhs, body + tails))
}

/// Both sides of the isometry f ↦ L_mu f from the centered L^2(mu) into
/// L^2(J), scaled by beta, the variance of mu, with J the stripped measure.
/// Rules are built once, so many pairs can be checked cheaply.
pub struct IsometryForm {
    rule: Rule,
    stripped: Rule,
    beta: f64,
}

impl IsometryForm {
    pub fn new(mu: &Measure) -> Result<Self> {
        let beta = mu.variance();
        if !(beta > DEGENERATE_VARIANCE) {
            return Err(Error::Degenerate(beta));
        }
        Ok(IsometryForm { rule: mu.rule(), stripped: mu.stripped_measure()?.rule(), beta })
    }

    /// (<f - mu[f], g - mu[g]>_mu, beta <L_mu f, L_mu g>_J). Inner products
    /// are conjugate-linear in the second slot.
    pub fn sides(&self, f: &SmoothFunction, g: &SmoothFunction) -> (C64, C64) {
        let rule = &self.rule;
        let mf = rule.integrate(|y| f.eval(y));
        let mg = rule.integrate(|y| g.eval(y));
        let lhs = rule.integrate(|y| (f.eval(y) - mf) * (g.eval(y) - mg).conj());
        let rhs = self.beta * self.stripped.integrate(|x| apply_l(rule, f, x) * apply_l(rule, g, x).conj());
        (lhs, rhs)
    }
}

/// IsometryForm::sides for a single pair.
pub fn isometry_check(mu: &Measure, f: &SmoothFunction, g: &SmoothFunction) -> Result<(C64, C64)> {
    Ok(IsometryForm::new(mu)?.sides(f, g))
}

/// L_nu x^k = sum_{j<k} m_j(nu) x^{k-1-j}, as coefficient vectors.
pub fn l_on_polynomial(moments: &[f64], coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n.saturating_sub(1).max(1)];
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        for j in 0..k {
            out[k - 1 - j] += c * moments[j];
        }
    }
    out
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect()
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |a, &v| a * x + v)
}

pub const PSEUDO_DIFF_PROBES: [f64; 5] = [-1.3, -0.4, 0.2, 0.9, 1.7];
pub const MAX_PSEUDO_DIFF_ORDER: usize = 12;

/// Largest relative gap between L_nu x^k by quadrature and the moment sum,
/// over k = 0..=n and the probe points.
pub fn pseudo_diff_check(nu: &Measure, n: usize) -> Result<f64> {
    if n > MAX_PSEUDO_DIFF_ORDER {
        return Err(Error::Domain(format!("order {n} exceeds {MAX_PSEUDO_DIFF_ORDER}")));
    }
    let rule = nu.rule();
    let m = nu.moments(n);
    let mut worst: f64 = 0.0;
    for k in 0..=n {
        let f = SmoothFunction::monomial(k);
        let mut e = vec![0.0; k + 1];
        e[k] = 1.0;
        let series = l_on_polynomial(&m, &e);
        for &x in &PSEUDO_DIFF_PROBES {
            let want = horner(&series, x);
            let got = apply_l(&rule, &f, x);
            worst = worst.max((got - want).norm() / (1.0 + want.abs()));
        }
    }
    Ok(worst)
}

/// sum_n r_n d/dx L_{mu_s}^{n-1} f at x, where r_n are the cumulant rates
/// (free cumulants of the time-one law) and mu_s supplies the moments in L.
/// The series terminates after deg f terms on polynomials.
pub fn generator_series(rates: &CumulantSeq, f: &[f64], x: f64, mu_s: &Measure) -> Result<f64> {
    let deg = f.iter().rposition(|v| *v != 0.0).unwrap_or(0);
    if deg > rates.order() {
        return Err(Error::Domain(format!(
            "polynomial degree {deg} needs cumulants up to order {deg}, have {}",
            rates.order()
        )));
    }
    let m = mu_s.moments(deg.max(1));
    let mut p = f.to_vec();
    let mut total = 0.0;
    for n in 1..=deg.max(1) {
        total += rates.r(n) * horner(&derivative(&p), x);
        p = l_on_polynomial(&m, &p);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::Spline;
    use crate::transform::probe_set_16;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn measures() -> Vec<Measure> {
        vec![
            Measure::dirac(0.3),
            Measure::bernoulli(),
            Measure::semicircle(0.0, 1.0).unwrap(),
            Measure::arcsine(2f64.sqrt()).unwrap(),
            Measure::free_meixner(1.0, 0.5, 1.0).unwrap(),
        ]
    }

    #[test]
    fn l_on_low_degree() {
        for mu in measures() {
            let r = mu.rule();
            let m = mu.mean();
            for x in [-1.0, 0.0, 0.7] {
                assert!((apply_l(&r, &SmoothFunction::monomial(1), x) - 1.0).norm() < 1e-12);
                assert!((apply_l(&r, &SmoothFunction::monomial(2), x) - (x + m)).norm() < 1e-12);
                assert!(apply_dx_l(&r, &SmoothFunction::monomial(1), x).norm() < 1e-12);
                assert!((apply_dx_l(&r, &SmoothFunction::monomial(2), x) - 1.0).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn resolvent_closed_forms() {
        for mu in measures() {
            let r = mu.rule();
            for z in probe_set_16() {
                let f = SmoothFunction::single_resolvent(z).unwrap();
                for x in [-1.1, 0.4] {
                    let want = mu.g(z) / (z - x);
                    assert!((apply_l(&r, &f, x) - want).norm() < 1e-9, "{mu:?} {z}");
                    let want2 = mu.g(z) / ((z - x) * (z - x));
                    assert!((apply_dx_l(&r, &f, x) - want2).norm() < 1e-9, "{mu:?} {z}");
                }
            }
        }
    }

    #[test]
    fn linearity_and_additivity() {
        let f = SmoothFunction::single_resolvent(c(0.2, 0.5)).unwrap();
        let g = SmoothFunction::single_resolvent(c(-0.7, 1.1)).unwrap();
        let fg = SmoothFunction::resolvent(vec![(c(2.0, 0.0), c(0.2, 0.5)), (c(0.0, -3.0), c(-0.7, 1.1))]).unwrap();
        let r = Measure::arcsine(1.0).unwrap().rule();
        let x = 0.35;
        let lin = 2.0 * apply_l(&r, &f, x) + c(0.0, -3.0) * apply_l(&r, &g, x);
        assert!((apply_l(&r, &fg, x) - lin).norm() < 1e-12);
        let lin2 = 2.0 * apply_dx_l(&r, &f, x) + c(0.0, -3.0) * apply_dx_l(&r, &g, x);
        assert!((apply_dx_l(&r, &fg, x) - lin2).norm() < 1e-12);

        let a = Measure::atomic(vec![(-0.5, 0.3), (1.2, 0.7)]).unwrap().rule().scaled(0.4);
        let b = Measure::atomic(vec![(0.1, 1.0)]).unwrap().rule().scaled(0.6);
        let ab = a.clone().merged(&b);
        for h in [&f, &g] {
            let s = apply_dx_l(&a, h, x) + apply_dx_l(&b, h, x);
            assert!((apply_dx_l(&ab, h, x) - s).norm() < 1e-12);
        }
    }

    #[test]
    fn carre_examples() {
        for mu in measures() {
            let r = mu.rule();
            let x1 = SmoothFunction::monomial(1);
            let x2 = SmoothFunction::monomial(2);
            for x in [-0.6, 0.9] {
                assert!((carre_du_champ(&r, &x1, &x1, x) - 1.0).norm() < 1e-12);
                assert!((carre_du_champ(&r, &x2, &x1, x) - (x + mu.mean())).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn carre_identity_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let alpha = 0.8;
        let f = SmoothFunction::single_resolvent(c(0.4, 0.9)).unwrap();
        let g = SmoothFunction::single_resolvent(c(-0.3, 0.6)).unwrap();
        let gb = g.conj();
        let fg = SmoothFunction::product(f.clone(), gb.clone());
        for mu in measures() {
            let r = mu.rule();
            for _ in 0..20 {
                let x: f64 = rng.gen_range(-2.0..2.0);
                let lhs = carre_du_champ(&r, &f, &gb, x);
                let rhs = generator(alpha, &r, &fg, x)
                    - f.eval(x) * generator(alpha, &r, &gb, x)
                    - generator(alpha, &r, &f, x) * gb.eval(x);
                assert!((lhs - rhs).norm() < 1e-8, "{mu:?} at {x}: {}", (lhs - rhs).norm());
            }
        }
    }

    #[test]
    fn dissipativity_zero_function() {
        let r = Measure::dirac(0.0).rule();
        let z = SmoothFunction::polynomial(vec![0.0]);
        assert_eq!(dissipativity_functional(1.0, &r, &z, (-1.0, 1.0), 1e-12).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn dissipativity_dirac_oracle() {
        // For nu = delta_0: rhs = -∫ |(f(x) - f(0))/x|^2 dx over the line.
        let f = SmoothFunction::bump(0.3, 1.0, 1.0).unwrap();
        let r = Measure::dirac(0.0).rule();
        let (lhs, rhs) = dissipativity_functional(0.7, &r, &f, (-2.0, 2.5), 1e-13).unwrap();
        let f0 = f.eval(0.0).re;
        let inner = |x: f64| -f.dd1(x, 0.0).norm_sqr();
        let body = adaptive_pieces(&inner, &[-0.7, 0.0, 1.3], 1e-13);
        let outer = -f0 * f0 * (1.0 / 0.7 + 1.0 / 1.3);
        let oracle = body + outer;
        assert!(rhs < 0.0);
        assert!((rhs - oracle).abs() < 1e-9 * oracle.abs(), "{rhs} {oracle}");
        assert!((lhs - rhs).abs() < 1e-8 * rhs.abs(), "{lhs} {rhs}");
    }

    #[test]
    fn dissipativity_semicircle_spline_bump() {
        let ys: Vec<f64> = (0..61)
            .map(|i| {
                let u = -1.0 + i as f64 / 30.0;
                (1.0 - u * u).powi(3)
            })
            .collect();
        let f = SmoothFunction::spline(Spline::clamped(-1.0, 1.0, ys, 0.0, 0.0).unwrap());
        let r = Measure::semicircle(0.0, 1.0).unwrap().rule();
        let (lhs, rhs) = dissipativity_functional(0.0, &r, &f, (-1.5, 1.5), 1e-12).unwrap();
        assert!(lhs <= 1e-8);
        assert!((lhs - rhs).abs() <= 1e-6 * rhs.abs(), "{lhs} {rhs}");
    }

    #[test]
    fn dissipativity_window_enforced() {
        let f = SmoothFunction::bump(0.0, 1.0, 1.0).unwrap();
        let r = Measure::dirac(0.0).rule();
        assert!(dissipativity_functional(0.0, &r, &f, (-0.5, 2.0), 1e-10).is_err());
    }

    #[test]
    fn isometry_linear_and_resolvent() {
        let x1 = SmoothFunction::monomial(1);
        for mu in measures().into_iter().skip(1) {
            let (l, r) = isometry_check(&mu, &x1, &x1).unwrap();
            let b = mu.variance();
            assert!((l - b).norm() < 1e-10 && (r - b).norm() < 1e-10, "{mu:?}");
            let f = SmoothFunction::single_resolvent(c(0.5, 0.8)).unwrap();
            let g = SmoothFunction::single_resolvent(c(-0.2, 1.3)).unwrap();
            let (l, r) = isometry_check(&mu, &f, &g).unwrap();
            assert!((l - r).norm() < 1e-8, "{mu:?}: {}", (l - r).norm());
        }
        assert!(matches!(isometry_check(&Measure::dirac(1.0), &x1, &x1), Err(Error::Degenerate(_))));
    }

    #[test]
    fn isometry_random_cubics_meixner() {
        let mu = Measure::free_meixner(0.7, 0.4, 1.2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let f = SmoothFunction::polynomial((0..4).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let g = SmoothFunction::polynomial((0..4).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let (l, r) = isometry_check(&mu, &f, &g).unwrap();
            assert!((l - r).norm() < 1e-8, "{}", (l - r).norm());
        }
    }

    #[test]
    fn pseudo_diff_random_atomic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let k = rng.gen_range(2..6);
            let w: Vec<f64> = (0..k).map(|_| rng.gen_range(0.1..1.0)).collect();
            let s: f64 = w.iter().sum();
            let atoms = w.iter().map(|wi| (rng.gen_range(-1.5..1.5), wi / s)).collect();
            let nu = Measure::atomic(atoms).unwrap();
            assert!(pseudo_diff_check(&nu, 8).unwrap() < 1e-10);
        }
        assert!(pseudo_diff_check(&Measure::free_meixner(0.5, 0.5, 1.0).unwrap(), 12).unwrap() < 1e-10);
        assert!(pseudo_diff_check(&Measure::bernoulli(), 13).is_err());
    }

    #[test]
    fn series_for_semicircle_is_single_term() {
        let s = 0.6;
        let rates = CumulantSeq::from_cumulants(vec![0.0, 1.0, 0.0, 0.0, 0.0]);
        let mu = Measure::semicircle(0.0, s).unwrap();
        let r = mu.rule();
        let f = vec![0.3, -1.0, 0.5, 2.0, 0.7];
        let fs = SmoothFunction::polynomial(f.clone());
        for x in [-0.8, 0.1, 1.4] {
            let got = generator_series(&rates, &f, x, &mu).unwrap();
            assert!((got - apply_dx_l(&r, &fs, x).re).abs() < 1e-10);
        }
        let q = generator_series(&rates, &[0.0, 0.0, 1.0], 0.4, &mu).unwrap();
        assert!((q - 1.0).abs() < 1e-14);
        assert!(generator_series(&rates, &[0.0; 8].iter().chain([1.0].iter()).copied().collect::<Vec<_>>(), 0.0, &mu).is_err());
    }

    proptest! {
        #[test]
        fn dx_l_bound(px in -1.0f64..1.0, py in 0.1f64..1.5, x in -2.0f64..2.0) {
            let f = SmoothFunction::single_resolvent(c(px, py)).unwrap();
            let r = Measure::arcsine(2f64.sqrt()).unwrap().rule();
            let v = apply_dx_l(&r, &f, x);
            prop_assert!(v.norm() <= r.mass() * f.sup_d2().unwrap());
        }

        #[test]
        fn l_polynomial_matches_quadrature(coef in proptest::collection::vec(-2.0f64..2.0, 1..7), x in -1.5f64..1.5) {
            let mu = Measure::free_meixner(0.4, 0.3, 1.0).unwrap();
            let m = mu.moments(coef.len());
            let want = horner(&l_on_polynomial(&m, &coef), x);
            let got = apply_l(&mu.rule(), &SmoothFunction::polynomial(coef), x);
            prop_assert!((got.re - want).abs() < 1e-10 * (1.0 + want.abs()));
        }
    }
}
