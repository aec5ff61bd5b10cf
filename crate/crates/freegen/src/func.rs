//! Test functions for the singular operators, with exact divided
//! differences where the algebra allows it.

use crate::error::{Error, Result};
use num_complex::Complex64;

type C64 = Complex64;

/// Below this relative distance divided differences switch to Taylor
/// expansions about x.
pub const TAYLOR_WINDOW: f64 = 1e-3;

/// Cubic spline on a uniform grid, constant outside it.
#[derive(Debug, Clone, PartialEq)]
pub struct Spline {
    lo: f64,
    h: f64,
    y: Vec<f64>,
    m: Vec<f64>,
}

/// Thomas algorithm for a tridiagonal system.
fn tridiag(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup.first().copied().unwrap_or(0.0) / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let den = diag[i] - sub[i - 1] * c[i - 1];
        c[i] = if i + 1 < n { sup[i] / den } else { 0.0 };
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / den;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

impl Spline {
    fn check(lo: f64, hi: f64, y: &[f64]) -> Result<f64> {
        if y.len() < 4 || !(lo < hi) || y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("spline needs lo < hi and at least 4 finite samples".into()));
        }
        Ok((hi - lo) / (y.len() - 1) as f64)
    }

    /// Natural end conditions (zero second derivative).
    pub fn natural(lo: f64, hi: f64, y: Vec<f64>) -> Result<Self> {
        let h = Self::check(lo, hi, &y)?;
        let n = y.len();
        let k = n - 2;
        let rhs: Vec<f64> = (1..n - 1).map(|i| 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h)).collect();
        let inner = tridiag(&vec![1.0; k - 1], &vec![4.0; k], &vec![1.0; k - 1], &rhs);
        let mut m = vec![0.0; n];
        m[1..n - 1].copy_from_slice(&inner);
        Ok(Spline { lo, h, y, m })
    }

    /// Prescribed end slopes.
    pub fn clamped(lo: f64, hi: f64, y: Vec<f64>, d0: f64, dn: f64) -> Result<Self> {
        let h = Self::check(lo, hi, &y)?;
        let n = y.len();
        let mut diag = vec![4.0; n];
        diag[0] = 2.0;
        diag[n - 1] = 2.0;
        let off = vec![1.0; n - 1];
        let mut rhs = vec![0.0; n];
        rhs[0] = 6.0 * ((y[1] - y[0]) / h - d0) / h;
        rhs[n - 1] = 6.0 * (dn - (y[n - 1] - y[n - 2]) / h) / h;
        for i in 1..n - 1 {
            rhs[i] = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
        }
        let m = tridiag(&off, &diag, &off, &rhs);
        Ok(Spline { lo, h, y, m })
    }

    pub fn hi(&self) -> f64 {
        self.lo + self.h * (self.y.len() - 1) as f64
    }

    /// Value and first three derivatives.
    pub fn eval_all(&self, x: f64) -> [f64; 4] {
        let n = self.y.len();
        if x <= self.lo {
            return [self.y[0], 0.0, 0.0, 0.0];
        }
        if x >= self.hi() {
            return [self.y[n - 1], 0.0, 0.0, 0.0];
        }
        let i = (((x - self.lo) / self.h) as usize).min(n - 2);
        let h = self.h;
        let t = x - (self.lo + h * i as f64);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let a = self.y[i];
        let b = (self.y[i + 1] - self.y[i]) / h - h * (2.0 * m0 + m1) / 6.0;
        let c = 0.5 * m0;
        let d = (m1 - m0) / (6.0 * h);
        [a + t * (b + t * (c + t * d)), b + t * (2.0 * c + 3.0 * t * d), 2.0 * c + 6.0 * t * d, 6.0 * d]
    }

    /// sup |f''|; the second derivative is piecewise linear so knots suffice.
    pub fn sup_d2(&self) -> f64 {
        self.m.iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FnKind {
    /// sum of c / (p - x), poles off the real axis.
    Resolvent(Vec<(C64, C64)>),
    /// Real coefficients, lowest degree first.
    Polynomial(Vec<f64>),
    Spline(Spline),
    /// amp * exp(1 - 1/(1 - u^2)) with u = (x - center)/width, zero for |u| >= 1.
    Bump { center: f64, width: f64, amp: f64 },
    Product(Box<SmoothFunction>, Box<SmoothFunction>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothFunction {
    pub kind: FnKind,
}

fn bump_all(u: f64) -> [f64; 4] {
    let s = 1.0 - u * u;
    if s <= 0.0 {
        return [0.0; 4];
    }
    let g = 1.0 - 1.0 / s;
    if g < -700.0 {
        return [0.0; 4];
    }
    let p = g.exp();
    let s2 = s * s;
    let s3 = s2 * s;
    let g1 = -2.0 * u / s2;
    let g2 = -2.0 / s2 - 8.0 * u * u / s3;
    let g3 = -24.0 * u / s3 - 48.0 * u * u * u / (s3 * s);
    [p, p * g1, p * (g2 + g1 * g1), p * (g3 + 3.0 * g1 * g2 + g1 * g1 * g1)]
}

/// Synthetic division of p(t) by (t - y): returns q with p(t) = q(t)(t - y) + p(y).
fn deflate(c: &[f64], y: f64) -> Vec<f64> {
    let n = c.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut q = vec![0.0; n - 1];
    q[n - 2] = c[n - 1];
    for k in (1..n - 1).rev() {
        q[k - 1] = c[k] + y * q[k];
    }
    q
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |a, &v| a * x + v)
}

impl SmoothFunction {
    pub fn resolvent(terms: Vec<(C64, C64)>) -> Result<Self> {
        if terms.iter().any(|(_, p)| p.im == 0.0 || !p.re.is_finite()) {
            return Err(Error::Domain("resolvent poles must be off the real axis".into()));
        }
        Ok(SmoothFunction { kind: FnKind::Resolvent(terms) })
    }

    /// x -> 1/(z - x).
    pub fn single_resolvent(z: C64) -> Result<Self> {
        Self::resolvent(vec![(C64::new(1.0, 0.0), z)])
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        SmoothFunction { kind: FnKind::Polynomial(coeffs) }
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        Self::polynomial(c)
    }

    pub fn spline(s: Spline) -> Self {
        SmoothFunction { kind: FnKind::Spline(s) }
    }

    pub fn bump(center: f64, width: f64, amp: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::Domain("bump width must be positive".into()));
        }
        Ok(SmoothFunction { kind: FnKind::Bump { center, width, amp } })
    }

    pub fn product(f: SmoothFunction, g: SmoothFunction) -> Self {
        SmoothFunction { kind: FnKind::Product(Box::new(f), Box::new(g)) }
    }

    /// Complex conjugate function x -> conj(f(x)).
    pub fn conj(&self) -> Self {
        match &self.kind {
            FnKind::Resolvent(t) => SmoothFunction {
                kind: FnKind::Resolvent(t.iter().map(|(c, p)| (c.conj(), p.conj())).collect()),
            },
            FnKind::Product(f, g) => Self::product(f.conj(), g.conj()),
            _ => self.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        match &self.kind {
            FnKind::Resolvent(_) => false,
            FnKind::Product(f, g) => f.is_real() && g.is_real(),
            _ => true,
        }
    }

    /// Closed interval outside which f vanishes identically, if any.
    pub fn support(&self) -> Option<(f64, f64)> {
        match &self.kind {
            FnKind::Bump { center, width, .. } => Some((center - width, center + width)),
            FnKind::Spline(s) => {
                let n = s.y.len();
                if s.y[0] == 0.0 && s.y[n - 1] == 0.0 {
                    Some((s.lo, s.hi()))
                } else {
                    None
                }
            }
            FnKind::Product(f, g) => match (f.support(), g.support()) {
                (Some(a), Some(b)) => Some((a.0.max(b.0), a.1.min(b.1))),
                (Some(a), None) | (None, Some(a)) => Some(a),
                _ => None,
            },
            _ => None,
        }
    }

    /// f, f', f'', f''' at x.
    pub fn derivs(&self, x: f64) -> [C64; 4] {
        match &self.kind {
            FnKind::Resolvent(t) => {
                let mut out = [C64::new(0.0, 0.0); 4];
                for &(c, p) in t {
                    let r = 1.0 / (p - x);
                    out[0] += c * r;
                    out[1] += c * r * r;
                    out[2] += 2.0 * c * r * r * r;
                    out[3] += 6.0 * c * r * r * r * r;
                }
                out
            }
            FnKind::Polynomial(c) => {
                let mut p = c.clone();
                let mut out = [C64::new(0.0, 0.0); 4];
                for slot in out.iter_mut() {
                    *slot = C64::new(horner(&p, x), 0.0);
                    p = p.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect();
                }
                out
            }
            FnKind::Spline(s) => s.eval_all(x).map(|v| C64::new(v, 0.0)),
            FnKind::Bump { center, width, amp } => {
                let b = bump_all((x - center) / width);
                let mut out = [C64::new(0.0, 0.0); 4];
                let mut scale = *amp;
                for k in 0..4 {
                    out[k] = C64::new(scale * b[k], 0.0);
                    scale /= width;
                }
                out
            }
            FnKind::Product(f, g) => {
                let a = f.derivs(x);
                let b = g.derivs(x);
                [
                    a[0] * b[0],
                    a[1] * b[0] + a[0] * b[1],
                    a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2],
                    a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3],
                ]
            }
        }
    }

    pub fn eval(&self, x: f64) -> C64 {
        match &self.kind {
            FnKind::Polynomial(c) => C64::new(horner(c, x), 0.0),
            FnKind::Resolvent(t) => t.iter().map(|&(c, p)| c / (p - x)).sum(),
            _ => self.derivs(x)[0],
        }
    }

    pub fn d1(&self, x: f64) -> C64 {
        self.derivs(x)[1]
    }

    pub fn d2(&self, x: f64) -> C64 {
        self.derivs(x)[2]
    }

    /// sup over the line of |f''| when finite and cheaply known.
    pub fn sup_d2(&self) -> Option<f64> {
        match &self.kind {
            FnKind::Resolvent(t) => Some(t.iter().map(|(c, p)| 2.0 * c.norm() / p.im.abs().powi(3)).sum()),
            FnKind::Polynomial(c) => {
                if c.iter().skip(3).all(|v| *v == 0.0) {
                    Some(2.0 * c.get(2).copied().unwrap_or(0.0).abs())
                } else {
                    None
                }
            }
            FnKind::Spline(s) => Some(s.sup_d2()),
            FnKind::Bump { width, amp, .. } => {
                let m = (0..=4000).map(|i| bump_all(-1.0 + i as f64 / 2000.0)[2].abs()).fold(0.0, f64::max);
                // grid maximum padded for the spacing
                Some(1.01 * m * amp.abs() / (width * width))
            }
            FnKind::Product(..) => None,
        }
    }

    /// f[x, y] = (f(x) - f(y))/(x - y), with f'(x) on the diagonal.
    pub fn dd1(&self, x: f64, y: f64) -> C64 {
        match &self.kind {
            FnKind::Polynomial(c) => C64::new(horner(&deflate(c, y), x), 0.0),
            FnKind::Resolvent(t) => t.iter().map(|&(c, p)| c / ((p - x) * (p - y))).sum(),
            FnKind::Product(f, g) => f.eval(x) * g.dd1(x, y) + g.eval(y) * f.dd1(x, y),
            _ => {
                let d = y - x;
                if d.abs() < TAYLOR_WINDOW * (1.0 + x.abs()) {
                    let a = self.derivs(x);
                    a[1] + a[2] * (d / 2.0) + a[3] * (d * d / 6.0)
                } else {
                    (self.eval(x) - self.eval(y)) / (x - y)
                }
            }
        }
    }

    /// f[x, x, y] = (f(y) - f(x) - (y - x) f'(x))/(y - x)^2, with f''(x)/2
    /// on the diagonal.
    pub fn dd2(&self, x: f64, y: f64) -> C64 {
        match &self.kind {
            FnKind::Polynomial(c) => {
                let q = deflate(c, x);
                C64::new(horner(&deflate(&q, x), y), 0.0)
            }
            FnKind::Resolvent(t) => t.iter().map(|&(c, p)| c / ((p - x) * (p - x) * (p - y))).sum(),
            FnKind::Product(f, g) => {
                f.eval(x) * g.dd2(x, y) + g.eval(x) * f.dd2(x, y) + f.dd1(x, y) * g.dd1(x, y)
            }
            _ => {
                let d = y - x;
                let a = self.derivs(x);
                if d.abs() < TAYLOR_WINDOW * (1.0 + x.abs()) {
                    a[2] / 2.0 + a[3] * (d / 6.0)
                } else {
                    (self.eval(y) - a[0] - d * a[1]) / (d * d)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn samples() -> Vec<SmoothFunction> {
        let ys: Vec<f64> = (0..41).map(|i| (-1.0 + i as f64 / 20.0f64).powi(2).mul_add(-1.0, 1.0).powi(2)).collect();
        vec![
            SmoothFunction::resolvent(vec![(c(1.0, 0.5), c(0.3, 0.7)), (c(-0.4, 0.0), c(-1.0, -1.2))]).unwrap(),
            SmoothFunction::polynomial(vec![0.5, -1.0, 0.25, 2.0, -0.3]),
            SmoothFunction::spline(Spline::clamped(-1.0, 1.0, ys, 0.0, 0.0).unwrap()),
            SmoothFunction::bump(0.2, 1.5, 2.0).unwrap(),
            SmoothFunction::product(SmoothFunction::monomial(2), SmoothFunction::bump(0.0, 1.0, 1.0).unwrap()),
        ]
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-4;
        for f in samples() {
            for x in [-0.73, -0.1, 0.37, 0.81] {
                let fd1 = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
                let fd2 = (f.eval(x + h) - 2.0 * f.eval(x) + f.eval(x - h)) / (h * h);
                let scale = 1.0 + f.d1(x).norm() + f.d2(x).norm();
                assert!((fd1 - f.d1(x)).norm() < 1e-5 * scale, "{f:?} at {x}");
                assert!((fd2 - f.d2(x)).norm() < 1e-4 * scale, "{f:?} at {x}");
            }
        }
    }

    #[test]
    fn divided_differences_against_direct_formula() {
        for f in samples() {
            for (x, y) in [(-0.5, 0.6), (0.1, -0.9), (0.3, 0.35)] {
                let d1 = (f.eval(x) - f.eval(y)) / (x - y);
                let d2 = (f.eval(y) - f.eval(x) - (y - x) * f.d1(x)) / ((y - x) * (y - x));
                assert!((f.dd1(x, y) - d1).norm() < 1e-9, "{f:?}");
                assert!((f.dd2(x, y) - d2).norm() < 1e-7, "{f:?}");
            }
        }
    }

    #[test]
    fn diagonal_limits() {
        for f in samples() {
            for x in [-0.4, 0.25] {
                assert!((f.dd1(x, x) - f.d1(x)).norm() < 1e-12);
                assert!((f.dd2(x, x) - f.d2(x) / 2.0).norm() < 1e-11);
                let y = x + 1e-9;
                assert!((f.dd2(x, y) - f.d2(x) / 2.0).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn spline_reproduces_cubic() {
        let p = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x * x;
        let ys: Vec<f64> = (0..11).map(|i| p(i as f64 / 10.0)).collect();
        let s = Spline::clamped(0.0, 1.0, ys, -2.0, -2.0 + 1.5).unwrap();
        for x in [0.05, 0.33, 0.77] {
            let v = s.eval_all(x);
            assert!((v[0] - p(x)).abs() < 1e-13);
            assert!((v[2] - 3.0 * x).abs() < 1e-11);
        }
        let lin: Vec<f64> = (0..6).map(|i| i as f64).collect();
        let n = Spline::natural(0.0, 5.0, lin).unwrap();
        assert!((n.eval_all(2.5)[0] - 2.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_real_poles() {
        assert!(SmoothFunction::single_resolvent(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn bump_support_and_bound() {
        let f = SmoothFunction::bump(1.0, 0.5, 3.0).unwrap();
        assert_eq!(f.support(), Some((0.5, 1.5)));
        assert_eq!(f.eval(1.6), c(0.0, 0.0));
        let s = f.sup_d2().unwrap();
        for i in 0..1000 {
            let x = 0.5 + i as f64 / 1000.0;
            assert!(f.d2(x).norm() <= s);
        }
    }

    proptest! {
        #[test]
        fn polynomial_dd_exact(coef in proptest::collection::vec(-3.0f64..3.0, 1..9), x in -2.0f64..2.0, y in -2.0f64..2.0) {
            prop_assume!((x - y).abs() > 0.05);
            let f = SmoothFunction::polynomial(coef);
            let d1 = (f.eval(x) - f.eval(y)) / (x - y);
            prop_assert!((f.dd1(x, y) - d1).norm() < 1e-9 * (1.0 + d1.norm()));
        }

        #[test]
        fn product_rule_dd(x in -1.5f64..1.5, y in -1.5f64..1.5) {
            prop_assume!((x - y).abs() > 0.05);
            let f = SmoothFunction::single_resolvent(c(0.2, 0.8)).unwrap();
            let g = SmoothFunction::polynomial(vec![1.0, 0.0, -2.0]);
            let fg = SmoothFunction::product(f.clone(), g.clone());
            let direct = (fg.eval(x) - fg.eval(y)) / (x - y);
            prop_assert!((fg.dd1(x, y) - direct).norm() < 1e-10);
            let d2 = (fg.eval(y) - fg.eval(x) - (y - x) * fg.d1(x)) / ((y - x) * (y - x));
            prop_assert!((fg.dd2(x, y) - d2).norm() < 1e-8);
        }
    }
}
