//! q-Brownian motion: q-Pochhammer symbols, q-Gaussian laws, transition
//! kernels, the Γ map and the generator, the q-Hermite martingale
//! polynomials and the Mehler formula.
//!
//! Points of the support are parametrized by angle, y = c_t cos(theta) with
//! c_t = 2 sqrt(t) / sqrt(1 - q). Integrands in theta are even and
//! 2π-periodic, so the trapezoid rule on [0, π] converges geometrically.

use crate::error::{Error, Result};
use crate::func::SmoothFunction;
use crate::stieltjes::{Inversion, Status};
use num_complex::Complex64;
use std::f64::consts::PI;
use twofloat::TwoFloat;

type C64 = Complex64;

#[derive(Debug, Clone)]
pub struct QContext {
    pub q: f64,
    /// Products are truncated after `order` factors, |q|^order < 1e-16.
    pub order: usize,
    qq_inf: f64,
}

const EDGE_CLAMP: f64 = 1e-15;
const MAX_NODES: usize = 400_000;

impl QContext {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > -1.0 && q < 1.0) {
            return Err(Error::Domain(format!("q = {q} must lie in (-1, 1)")));
        }
        let order = if q == 0.0 { 1 } else { ((1e-16f64).ln() / q.abs().ln()).ceil() as usize + 1 };
        let mut ctx = QContext { q, order, qq_inf: 1.0 };
        ctx.qq_inf = ctx.pochhammer(C64::new(q, 0.0)).re;
        Ok(ctx)
    }

    /// (a; q)_∞.
    pub fn pochhammer(&self, a: C64) -> C64 {
        let mut p = C64::new(1.0, 0.0);
        let mut qk = 1.0;
        for _ in 0..self.order {
            p *= 1.0 - a * qk;
            qk *= self.q;
        }
        p
    }

    /// (a_1, ..., a_k; q)_∞.
    pub fn pochhammer_list(&self, a: &[C64]) -> C64 {
        a.iter().map(|&x| self.pochhammer(x)).product()
    }

    /// (q; q)_∞.
    pub fn qq_inf(&self) -> f64 {
        self.qq_inf
    }

    /// [n]_q = 1 + q + ... + q^{n-1}.
    pub fn number(&self, n: usize) -> f64 {
        (0..n).map(|k| self.q.powi(k as i32)).sum()
    }

    pub fn factorial(&self, n: usize) -> f64 {
        (1..=n).map(|k| self.number(k)).product()
    }

    /// Half-width of the support of the q-Gaussian of variance t.
    pub fn edge(&self, t: f64) -> f64 {
        2.0 * t.sqrt() / (1.0 - self.q).sqrt()
    }

    fn angle(&self, y: f64, t: f64) -> f64 {
        let u = (y / self.edge(t)).clamp(-1.0 - EDGE_CLAMP, 1.0 + EDGE_CLAMP).clamp(-1.0, 1.0);
        u.acos()
    }

    /// Weight of the q-Gaussian in the angle variable:
    /// (2/π) sin^2 θ (q;q)_∞ |(q e^{2iθ}; q)_∞|^2.
    pub fn theta_weight(&self, th: f64) -> f64 {
        let s = th.sin();
        2.0 / PI * s * s * self.qq_inf * self.pochhammer(self.q * C64::from_polar(1.0, 2.0 * th)).norm_sqr()
    }

    /// Density of γ_{t;q} at y.
    pub fn gaussian_density(&self, y: f64, t: f64) -> f64 {
        let c = self.edge(t);
        if y.abs() >= c {
            return 0.0;
        }
        let u = y / c;
        // sin θ from the factored form keeps accuracy near the edges
        let s = ((1.0 - u) * (1.0 + u)).sqrt();
        let th = u.acos();
        2.0 / PI * s * self.qq_inf * self.pochhammer(self.q * C64::from_polar(1.0, 2.0 * th)).norm_sqr() / c
    }

    /// H_0..=H_n at (y, t): y H_k = H_{k+1} + [k]_q t H_{k-1}.
    pub fn hermite(&self, n: usize, y: f64, t: f64) -> Vec<f64> {
        let mut h = vec![1.0; n + 1];
        if n >= 1 {
            h[1] = y;
        }
        for k in 1..n {
            h[k + 1] = y * h[k] - self.number(k) * t * h[k - 1];
        }
        h
    }

    /// Orthonormal q-Hermite values p_0..=p_n at cos θ:
    /// 2 cos θ p_k = sqrt(1 - q^{k+1}) p_{k+1} + sqrt(1 - q^k) p_{k-1}.
    pub fn hermite_normalized(&self, n: usize, th: f64) -> Vec<f64> {
        let x2 = 2.0 * th.cos();
        let mut p = vec![0.0; n + 1];
        p[0] = 1.0;
        if n >= 1 {
            p[1] = x2 / (1.0 - self.q).sqrt();
        }
        for k in 1..n {
            let a = (1.0 - self.q.powi(k as i32 + 1)).sqrt();
            let b = (1.0 - self.q.powi(k as i32)).sqrt();
            p[k + 1] = (x2 * p[k] - b * p[k - 1]) / a;
        }
        p
    }

    /// (r^2; q)_∞ / |(r e^{i(φ+θ)}, r e^{i(φ-θ)}; q)_∞|^2.
    pub fn kernel_factor(&self, r: f64, phi: f64, th: f64) -> f64 {
        let num = self.pochhammer(C64::new(r * r, 0.0)).re;
        let den = self.pochhammer(C64::from_polar(r, phi + th)) * self.pochhammer(C64::from_polar(r, phi - th));
        num / den.norm_sqr()
    }

    /// Trapezoid nodes in θ adequate for a kernel with ratio r.
    fn nodes_for(&self, r: f64, min: usize) -> usize {
        let strip = if r > 0.0 { (1.0 / r).ln() } else { f64::INFINITY };
        let need = (40.0 / strip).ceil();
        if need.is_finite() {
            (need as usize).clamp(min, MAX_NODES)
        } else {
            min
        }
    }

    fn check_kernel_args(&self, s: f64, t: f64, x: f64) -> Result<()> {
        if !(0.0 <= s && s <= t) || !(t > 0.0) {
            return Err(Error::Domain("need 0 <= s <= t and t > 0; s must not exceed t".into()));
        }
        let c = self.edge(s);
        if x.abs() > c * (1.0 + 1e-12) {
            return Err(Error::Domain(format!("x = {x} outside the support [-{c}, {c}]")));
        }
        Ok(())
    }

    /// ∫ f(y) K_{s,t;q}(x, dy) by the trapezoid rule in θ.
    pub fn kernel_integrate(&self, s: f64, t: f64, x: f64, f: &dyn Fn(f64) -> C64) -> Result<C64> {
        self.check_kernel_args(s, t, x)?;
        if s == t {
            return Ok(f(x));
        }
        let r = (s / t).sqrt();
        let phi = if s == 0.0 { 0.5 * PI } else { self.angle(x, s) };
        let m = self.nodes_for(r, 256);
        let c = self.edge(t);
        let h = PI / m as f64;
        let mut acc = C64::new(0.0, 0.0);
        // endpoints carry zero weight (sin^2 θ)
        for j in 1..m {
            let th = h * j as f64;
            acc += f(c * th.cos()) * (self.kernel_factor(r, phi, th) * self.theta_weight(th));
        }
        Ok(acc * h)
    }

    /// ∫ f dγ_{t;q}.
    pub fn gaussian_integrate(&self, t: f64, f: &dyn Fn(f64) -> C64, nodes: usize) -> C64 {
        let c = self.edge(t);
        let h = PI / nodes as f64;
        let mut acc = C64::new(0.0, 0.0);
        for j in 1..nodes {
            let th = h * j as f64;
            acc += f(c * th.cos()) * self.theta_weight(th);
        }
        acc * h
    }

    /// Density of K_{s,t;q}(x, ·) at y, for s < t.
    pub fn kernel_density(&self, s: f64, t: f64, x: f64, y: f64) -> Result<f64> {
        self.check_kernel_args(s, t, x)?;
        if s == t {
            return Err(Error::Domain("the kernel at s = t is a point mass".into()));
        }
        Ok(self.density_unchecked(s, t, x, y))
    }

    fn density_unchecked(&self, s: f64, t: f64, x: f64, y: f64) -> f64 {
        let d = self.gaussian_density(y, t);
        if d == 0.0 {
            return 0.0;
        }
        let r = (s / t).sqrt();
        let phi = if s == 0.0 { 0.5 * PI } else { self.angle(x, s) };
        self.kernel_factor(r, phi, self.angle(y, t)) * d
    }

    /// Kernel density K_{s,t;q}(x, ·) on a uniform grid of the support
    /// of γ_{t;q}, with the mass from the θ rule.
    pub fn transition_kernel(&self, s: f64, t: f64, x: f64, n: usize) -> Result<Inversion> {
        self.check_kernel_args(s, t, x)?;
        let c = self.edge(t);
        if s == t {
            return Ok(Inversion {
                lo: -c,
                hi: c,
                values: vec![0.0; n],
                atoms: vec![(x, 1.0)],
                eps: 0.0,
                mass: 1.0,
                status: Status::Ok,
            });
        }
        let h = 2.0 * c / (n - 1) as f64;
        let values = (0..n).map(|i| self.density_unchecked(s, t, x, -c + h * i as f64)).collect();
        let mass = self.kernel_integrate(s, t, x, &|_| C64::new(1.0, 0.0))?.re;
        let status = if (mass - 1.0).abs() > 1e-6 {
            Status::Warning(format!("kernel mass {mass:.9} outside 1 ± 1e-6"))
        } else {
            Status::Ok
        };
        Ok(Inversion { lo: -c, hi: c, values, atoms: Vec::new(), eps: 0.0, mass, status })
    }

    /// ∫ f(y) Γ_{t;q}(x, dy) with Γ_{t;q}(x, ·) = K_{q^2 t, t; q}(q x, ·).
    pub fn gamma_integrate(&self, t: f64, x: f64, f: &dyn Fn(f64) -> C64) -> Result<C64> {
        self.kernel_integrate(self.q * self.q * t, t, self.q * x, f)
    }

    pub fn gamma_kernel(&self, t: f64, x: f64, n: usize) -> Result<Inversion> {
        self.transition_kernel(self.q * self.q * t, t, self.q * x, n)
    }

    /// Δ_{t;q} f (x) = ∫ f[x, x, y] Γ_{t;q}(x, dy).
    pub fn generator(&self, t: f64, f: &SmoothFunction, x: f64) -> Result<C64> {
        let v = self.gamma_integrate(t, x, &|y| f.dd2(x, y))?;
        if let Some(b) = f.sup_d2() {
            debug_assert!(v.norm() <= b * (1.0 + 1e-8) + 1e-12);
        }
        Ok(v)
    }

    /// max over xs of |(K_{s,s+h} f - f)/h - Δ_{s;q} f| for each h.
    pub fn generator_limit_check(&self, s: f64, f: &SmoothFunction, hs: &[f64], xs: &[f64]) -> Result<Vec<f64>> {
        let a: Vec<C64> = xs.iter().map(|&x| self.generator(s, f, x)).collect::<Result<_>>()?;
        hs.iter()
            .map(|&h| {
                let mut worst: f64 = 0.0;
                for (i, &x) in xs.iter().enumerate() {
                    let k = self.kernel_integrate(s, s + h, x, &|y| f.eval(y))?;
                    worst = worst.max(((k - f.eval(x)) / h - a[i]).norm());
                }
                Ok(worst)
            })
            .collect()
    }

    /// Mehler formula in angle variables: the series
    /// sum_n r^n p_n(cos φ) p_n(cos θ) against the product
    /// (r^2; q)_∞ / |(r e^{i(φ+θ)}, r e^{i(φ-θ)}; q)_∞|^2. With `terms = None`
    /// the series runs until the terms in its second half fall below 1e-20.
    pub fn mehler(&self, r: f64, phi: f64, th: f64, terms: Option<usize>) -> Result<(f64, f64)> {
        if !(r.abs() < 1.0) {
            return Err(Error::Domain("|r| must be below 1".into()));
        }
        let product = self.kernel_factor(r, phi, th);
        let n = match terms {
            Some(n) => n,
            None => {
                let mut n = 64;
                loop {
                    let a = self.hermite_normalized(n, phi);
                    let b = self.hermite_normalized(n, th);
                    // terms oscillate, so bound the tail by the late maximum
                    let late = (n / 2..=n)
                        .map(|k| r.abs().powi(k as i32) * (a[k] * b[k]).abs().max(1.0))
                        .fold(0.0, f64::max);
                    if late < 1e-20 || n >= 20_000 {
                        break n;
                    }
                    n *= 2;
                }
            }
        };
        Ok((self.mehler_series(r, phi, th, n), product))
    }

    /// The Mehler series in double-double arithmetic: near q = 1 the terms
    /// exceed the sum by many orders of magnitude.
    fn mehler_series(&self, r: f64, phi: f64, th: f64, n: usize) -> f64 {
        let one = TwoFloat::from(1.0);
        let q = TwoFloat::from(self.q);
        let x = TwoFloat::from(2.0 * phi.cos());
        let y = TwoFloat::from(2.0 * th.cos());
        let r = TwoFloat::from(r);
        let c1 = recip((one - q).sqrt());
        let (mut a0, mut a1) = (one, x * c1);
        let (mut b0, mut b1) = (one, y * c1);
        let mut rn = r;
        let mut sum = one;
        if n >= 1 {
            sum += rn * a1 * b1;
        }
        // qk = q^k at step k
        let mut qk = q;
        for _ in 1..n {
            let qk1 = qk * q;
            let a = recip((one - qk1).sqrt());
            let b = (one - qk).sqrt();
            let a2 = (x * a1 - b * a0) * a;
            let b2 = (y * b1 - b * b0) * a;
            (a0, a1, b0, b1) = (a1, a2, b1, b2);
            rn *= r;
            sum += rn * a1 * b1;
            qk = qk1;
        }
        sum.hi() + sum.lo()
    }

    /// max over n, k <= n_max of the relative error of
    /// ∫ H_n H_k dγ_{t;q} = δ_{nk} [n]_q! t^n.
    pub fn orthogonality_check(&self, t: f64, n_max: usize) -> f64 {
        let nodes = 512;
        let c = self.edge(t);
        let h = PI / nodes as f64;
        let mut gram = vec![vec![0.0; n_max + 1]; n_max + 1];
        for j in 1..nodes {
            let th = h * j as f64;
            let w = self.theta_weight(th) * h;
            let hv = self.hermite(n_max, c * th.cos(), t);
            for a in 0..=n_max {
                for b in 0..=n_max {
                    gram[a][b] += w * hv[a] * hv[b];
                }
            }
        }
        let mut worst: f64 = 0.0;
        for a in 0..=n_max {
            let norm = self.factorial(a) * t.powi(a as i32);
            for b in 0..=n_max {
                let want = if a == b { norm } else { 0.0 };
                let scale = (self.factorial(a) * self.factorial(b)).sqrt() * t.powf(0.5 * (a + b) as f64);
                worst = worst.max((gram[a][b] - want).abs() / scale);
            }
        }
        worst
    }

    /// max over n <= n_max of |K_{s,t} H_n(·, t)(x) - H_n(x, s)| / max(1, |H_n(x, s)|).
    pub fn martingale_check(&self, s: f64, t: f64, x: f64, n_max: usize) -> Result<f64> {
        let want = self.hermite(n_max, x, s);
        let mut worst: f64 = 0.0;
        for n in 0..=n_max {
            let got = self.kernel_integrate(s, t, x, &|y| C64::new(self.hermite(n, y, t)[n], 0.0))?;
            worst = worst.max((got.re - want[n]).abs() / want[n].abs().max(1.0));
        }
        Ok(worst)
    }

    /// max over n <= n_max of |Γ H_n(·, t)(x) - q^n H_n(x, t)| / max(1, |H_n(x, t)|).
    pub fn multiplier_check(&self, t: f64, x: f64, n_max: usize) -> Result<f64> {
        let hx = self.hermite(n_max, x, t);
        let mut worst: f64 = 0.0;
        for n in 0..=n_max {
            let got = self.gamma_integrate(t, x, &|y| C64::new(self.hermite(n, y, t)[n], 0.0))?;
            let want = self.q.powi(n as i32) * hx[n];
            worst = worst.max((got.re - want).abs() / hx[n].abs().max(1.0));
        }
        Ok(worst)
    }
}

/// Double-double reciprocal: one Newton step from the f64 reciprocal.
fn recip(a: TwoFloat) -> TwoFloat {
    let x = TwoFloat::from(1.0 / a.hi());
    x + x * (TwoFloat::from(1.0) - a * x)
}
