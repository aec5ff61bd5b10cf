//! Probability measures in three concrete representations and their
//! Cauchy transforms.

use crate::error::{Error, Result};
use crate::quad::{GaussLegendre, Rule};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::f64::consts::PI;

type C64 = Complex64;

/// Rule for continuing a Jacobi continued fraction past the listed levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// The fraction stops: `betas` has one entry fewer than `alphas`.
    Finite,
    /// Last alpha and last beta repeat forever.
    Repeat,
    /// Last alpha repeats with the given constant beta.
    Semicircle(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Atomic(Vec<(f64, f64)>),
    /// Density samples on a uniform grid, linearly interpolated.
    Grid { lo: f64, hi: f64, values: Vec<f64> },
    Jacobi { alphas: Vec<f64>, betas: Vec<f64>, tail: Tail },
}

/// Levels used for Gauss rules of measures with an infinite fraction.
pub const GAUSS_LEVELS: usize = 256;

impl Measure {
    pub fn atomic(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        let mut total = 0.0;
        for &(x, w) in &atoms {
            if !x.is_finite() || !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidMeasure(format!("bad atom ({x}, {w})")));
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMeasure(format!("atom weights sum to {total}")));
        }
        Ok(Measure::Atomic(atoms))
    }

    pub fn grid(lo: f64, hi: f64, values: Vec<f64>) -> Result<Self> {
        if !(lo < hi) || values.len() < 2 {
            return Err(Error::InvalidMeasure("grid needs lo < hi and n >= 2".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidMeasure("grid values must be finite and nonnegative".into()));
        }
        let m = Self::trapezoid(lo, hi, &values);
        if (m - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidMeasure(format!("grid mass {m} is not 1")));
        }
        Ok(Measure::Grid { lo, hi, values })
    }

    pub fn jacobi(alphas: Vec<f64>, betas: Vec<f64>, tail: Tail) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidMeasure("alphas must be nonempty".into()));
        }
        if alphas.iter().chain(&betas).any(|v| !v.is_finite()) {
            return Err(Error::InvalidMeasure("Jacobi parameters must be finite".into()));
        }
        if betas.iter().any(|&b| b <= 0.0) {
            return Err(Error::InvalidMeasure("betas must be positive".into()));
        }
        let want = match tail {
            Tail::Finite => alphas.len() - 1,
            Tail::Repeat | Tail::Semicircle(_) => alphas.len(),
        };
        if betas.len() != want {
            return Err(Error::InvalidMeasure(format!(
                "{} alphas need {} betas for this tail, got {}",
                alphas.len(),
                want,
                betas.len()
            )));
        }
        if let Tail::Semicircle(b) = tail {
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::InvalidMeasure("betas must be positive".into()));
            }
        }
        Ok(Measure::Jacobi { alphas, betas, tail })
    }

    pub fn dirac(a: f64) -> Self {
        Measure::Atomic(vec![(a, 1.0)])
    }

    /// Semicircle law with the given mean and variance.
    pub fn semicircle(mean: f64, var: f64) -> Result<Self> {
        if var == 0.0 {
            return Ok(Self::dirac(mean));
        }
        Self::jacobi(vec![mean], vec![var], Tail::Repeat)
    }

    /// Symmetric Bernoulli law on {-1, 1}.
    pub fn bernoulli() -> Self {
        Measure::Atomic(vec![(-1.0, 0.5), (1.0, 0.5)])
    }

    /// Arcsine law on [-r, r].
    pub fn arcsine(r: f64) -> Result<Self> {
        Self::jacobi(vec![0.0], vec![r * r / 2.0], Tail::Semicircle(r * r / 4.0))
    }

    /// Free Meixner law at time t: alphas (0, b, b, ...), betas (t, t+c, ...).
    pub fn free_meixner(b: f64, c: f64, t: f64) -> Result<Self> {
        if t + c <= 0.0 {
            return Err(Error::InvalidMeasure("betas must be positive".into()));
        }
        Self::jacobi(vec![0.0, b], vec![t, t + c], Tail::Repeat)
    }

    fn trapezoid(lo: f64, hi: f64, v: &[f64]) -> f64 {
        let h = (hi - lo) / (v.len() - 1) as f64;
        let inner: f64 = v[1..v.len() - 1].iter().sum();
        h * (inner + 0.5 * (v[0] + v[v.len() - 1]))
    }

    /// Cauchy transform, checked: requires Im z > 0.
    pub fn cauchy(&self, z: C64) -> Result<C64> {
        if !(z.im > 0.0) || !z.re.is_finite() {
            return Err(Error::NotUpperHalfPlane(z));
        }
        Ok(self.g(z))
    }

    /// Cauchy transform for Im z >= 0; on the real axis this is the
    /// boundary value from above where it exists.
    pub fn g(&self, z: C64) -> C64 {
        self.gd(z).0
    }

    /// Cauchy transform and its derivative.
    pub fn gd(&self, z: C64) -> (C64, C64) {
        match self {
            Measure::Atomic(atoms) => atoms.iter().fold(
                (C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
                |(g, d), &(x, w)| {
                    let r = 1.0 / (z - x);
                    (g + w * r, d - w * r * r)
                },
            ),
            Measure::Grid { lo, hi, values } => grid_cauchy(*lo, *hi, values, z),
            Measure::Jacobi { alphas, betas, tail } => jacobi_cauchy_d(alphas, betas, *tail, z),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            Measure::Jacobi { alphas, .. } => alphas[0],
            Measure::Atomic(a) => a.iter().map(|(x, w)| x * w).sum(),
            Measure::Grid { .. } => self.rule().moment(1),
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            Measure::Jacobi { betas, .. } => betas.first().copied().unwrap_or(0.0),
            _ => {
                let m = self.mean();
                self.rule().integrate(|x| (x - m) * (x - m))
            }
        }
    }

    /// An interval containing the support.
    pub fn support_bounds(&self) -> (f64, f64) {
        match self {
            Measure::Atomic(a) => a.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &(x, _)| {
                (l.min(x), h.max(x))
            }),
            Measure::Grid { lo, hi, .. } => (*lo, *hi),
            Measure::Jacobi { alphas, betas, tail } => {
                let (a, b) = extended_params(alphas, betas, *tail, alphas.len() + 2);
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for n in 0..a.len() {
                    let below = if n > 0 { b[n - 1].sqrt() } else { 0.0 };
                    let above = b.get(n).map_or(0.0, |v| v.sqrt());
                    lo = lo.min(a[n] - below - above);
                    hi = hi.max(a[n] + below + above);
                }
                (lo, hi)
            }
        }
    }

    /// An integration rule for this measure: exact for atomic measures,
    /// Gauss rules for Jacobi measures, and 4-point panels on each grid cell.
    pub fn rule(&self) -> Rule {
        match self {
            Measure::Atomic(a) => Rule::new(a.iter().map(|p| p.0).collect(), a.iter().map(|p| p.1).collect()),
            Measure::Grid { lo, hi, values } => grid_rule(*lo, *hi, values, 4),
            Measure::Jacobi { alphas, betas, tail } => {
                let levels = match tail {
                    Tail::Finite => alphas.len(),
                    _ => GAUSS_LEVELS.max(alphas.len() + 64),
                };
                let (a, b) = extended_params(alphas, betas, *tail, levels);
                gauss_rule(&a, &b[..levels - 1])
            }
        }
    }

    /// Moments m_0..=m_n. Jacobi moments come from powers of the Jacobi
    /// matrix rather than from a quadrature rule.
    pub fn moments(&self, n: usize) -> Vec<f64> {
        match self {
            Measure::Atomic(a) => (0..=n)
                .map(|k| a.iter().map(|&(x, w)| w * x.powi(k as i32)).sum())
                .collect(),
            Measure::Grid { lo, hi, values } => {
                let r = grid_rule(*lo, *hi, values, n / 2 + 2);
                (0..=n).map(|k| r.moment(k as i32)).collect()
            }
            Measure::Jacobi { alphas, betas, tail } => {
                let half = n / 2 + 1;
                let levels = match tail {
                    Tail::Finite => alphas.len(),
                    _ => alphas.len().max(half + 1),
                };
                let (a, b) = extended_params(alphas, betas, *tail, levels);
                jacobi_moments(&a, &b[..levels - 1], n)
            }
        }
    }

    pub fn shifted(&self, c: f64) -> Measure {
        match self {
            Measure::Atomic(a) => Measure::Atomic(a.iter().map(|&(x, w)| (x + c, w)).collect()),
            Measure::Grid { lo, hi, values } => Measure::Grid { lo: lo + c, hi: hi + c, values: values.clone() },
            Measure::Jacobi { alphas, betas, tail } => Measure::Jacobi {
                alphas: alphas.iter().map(|a| a + c).collect(),
                betas: betas.clone(),
                tail: *tail,
            },
        }
    }

    /// Jacobi parameters of an atomic or Jacobi measure. Atomic measures are
    /// converted by the discrete Stieltjes procedure.
    pub fn to_jacobi(&self) -> Result<Measure> {
        match self {
            Measure::Jacobi { .. } => Ok(self.clone()),
            Measure::Atomic(a) => {
                let atoms: Vec<(f64, f64)> = a.iter().copied().filter(|p| p.1 > 0.0).collect();
                let (al, be) = stieltjes_procedure(&atoms);
                Measure::jacobi(al, be, Tail::Finite)
            }
            Measure::Grid { .. } => Err(Error::InvalidMeasure(
                "grid measures have no finite Jacobi representation".into(),
            )),
        }
    }

    /// The measure with F = z - t G_self(z), for atomic or Jacobi input.
    pub fn phi_measure(&self, t: f64) -> Result<Measure> {
        if t == 0.0 {
            return Ok(Measure::dirac(0.0));
        }
        match self.to_jacobi()? {
            Measure::Jacobi { alphas, betas, tail } => {
                let mut a = vec![0.0];
                a.extend(alphas);
                let mut b = vec![t];
                b.extend(betas);
                Measure::jacobi(a, b, tail)
            }
            _ => unreachable!(),
        }
    }

    /// The coefficient-stripped measure, for atomic or Jacobi input.
    pub fn stripped_measure(&self) -> Result<Measure> {
        match self.to_jacobi()? {
            Measure::Jacobi { alphas, betas, tail } => {
                if betas.is_empty() {
                    return Err(Error::Degenerate(0.0));
                }
                if alphas.len() == 1 {
                    return match tail {
                        Tail::Repeat => Measure::jacobi(alphas, betas, Tail::Repeat),
                        Tail::Semicircle(b) => Measure::jacobi(alphas, vec![b], Tail::Repeat),
                        Tail::Finite => unreachable!(),
                    };
                }
                Measure::jacobi(alphas[1..].to_vec(), betas[1..].to_vec(), tail)
            }
            _ => unreachable!(),
        }
    }
}

/// Resolvent of the semicircle law centered at 0 with Jacobi parameter
/// beta, evaluated at w, and its derivative. Branch with Im < 0 for Im w > 0.
pub fn semicircle_tail(w: C64, beta: f64) -> (C64, C64) {
    let r = 2.0 * beta.sqrt();
    let root = (w - r).sqrt() * (w + r).sqrt();
    let s = 2.0 / (w + root);
    let d = -s * s / (1.0 - beta * s * s);
    (s, d)
}

/// Parameters extended to `levels` alphas and `levels` betas following the tail.
fn extended_params(alphas: &[f64], betas: &[f64], tail: Tail, levels: usize) -> (Vec<f64>, Vec<f64>) {
    let mut a = alphas.to_vec();
    let mut b = betas.to_vec();
    let last_a = *alphas.last().unwrap();
    match tail {
        Tail::Finite => {
            a.truncate(levels.min(alphas.len()));
            b.truncate(a.len().saturating_sub(1));
            b.push(0.0);
        }
        Tail::Repeat => {
            let last_b = *betas.last().unwrap();
            a.resize(levels.max(a.len()), last_a);
            b.resize(a.len(), last_b);
        }
        Tail::Semicircle(beta) => {
            a.resize(levels.max(a.len()), last_a);
            b.resize(a.len(), beta);
        }
    }
    (a, b)
}

/// Continued fraction with the declared tail.
pub fn jacobi_cauchy(alphas: &[f64], betas: &[f64], tail: Tail, z: C64) -> C64 {
    jacobi_cauchy_d(alphas, betas, tail, z).0
}

/// Continued fraction and its z-derivative, evaluated bottom-up.
pub fn jacobi_cauchy_d(alphas: &[f64], betas: &[f64], tail: Tail, z: C64) -> (C64, C64) {
    let n = alphas.len();
    let (mut k, mut dk) = match tail {
        Tail::Finite => (C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
        Tail::Repeat => semicircle_tail(z - alphas[n - 1], betas[n - 1]),
        Tail::Semicircle(b) => semicircle_tail(z - alphas[n - 1], b),
    };
    for level in (0..n).rev() {
        let b = betas.get(level).copied().unwrap_or(0.0);
        let den = z - alphas[level] - b * k;
        assert!(den.norm() > 0.0, "zero denominator in continued fraction");
        let next = 1.0 / den;
        dk = -next * next * (1.0 - b * dk);
        k = next;
    }
    (k, dk)
}

/// Golub-Welsch: nodes and weights of the Gauss rule for the truncated
/// Jacobi matrix with diagonal `a` and off-diagonal squares `b`.
pub fn gauss_rule(a: &[f64], b: &[f64]) -> Rule {
    let n = a.len();
    if n == 1 {
        return Rule::new(vec![a[0]], vec![1.0]);
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = a[i];
        if i + 1 < n {
            let s = b[i].sqrt();
            m[(i, i + 1)] = s;
            m[(i + 1, i)] = s;
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut pts: Vec<(f64, f64)> = (0..n)
        .map(|j| (eig.eigenvalues[j], eig.eigenvectors[(0, j)].powi(2)))
        .collect();
    pts.sort_by(|p, q| p.0.total_cmp(&q.0));
    Rule::new(pts.iter().map(|p| p.0).collect(), pts.iter().map(|p| p.1).collect())
}

/// m_k = <e_0, J^k e_0> for the tridiagonal Jacobi matrix.
fn jacobi_moments(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let dim = a.len();
    let s: Vec<f64> = b.iter().map(|v| v.sqrt()).collect();
    let mul = |v: &[f64]| -> Vec<f64> {
        (0..dim)
            .map(|i| {
                let mut r = a[i] * v[i];
                if i > 0 {
                    r += s[i - 1] * v[i - 1];
                }
                if i + 1 < dim {
                    r += s[i] * v[i + 1];
                }
                r
            })
            .collect()
    };
    let mut pows = vec![{
        let mut e = vec![0.0; dim];
        e[0] = 1.0;
        e
    }];
    for j in 1..=n.div_ceil(2) {
        let next = mul(&pows[j - 1]);
        pows.push(next);
    }
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(x, y)| x * y).sum::<f64>();
    (0..=n)
        .map(|k| {
            let i = k / 2;
            dot(&pows[i], &pows[k - i])
        })
        .collect()
}

/// Discrete Stieltjes procedure (three-term recursion in the weighted
/// inner product of the atoms).
fn stieltjes_procedure(atoms: &[(f64, f64)]) -> (Vec<f64>, Vec<f64>) {
    let n = atoms.len();
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n.saturating_sub(1));
    let mut p_prev = vec![0.0; n];
    let mut p = vec![1.0; n];
    let mut norm_prev = 1.0;
    for k in 0..n {
        let norm: f64 = atoms.iter().zip(&p).map(|(&(_, w), &v)| w * v * v).sum();
        if k > 0 {
            let beta = norm / norm_prev;
            if beta <= 1e-14 * norm_prev.max(1.0) {
                break;
            }
            betas.push(beta);
        }
        let alpha = atoms.iter().zip(&p).map(|(&(x, w), &v)| w * x * v * v).sum::<f64>() / norm;
        alphas.push(alpha);
        let beta_k = if k > 0 { *betas.last().unwrap() } else { 0.0 };
        let next: Vec<f64> = (0..n)
            .map(|i| (atoms[i].0 - alpha) * p[i] - beta_k * p_prev[i])
            .collect();
        p_prev = std::mem::replace(&mut p, next);
        norm_prev = norm;
    }
    (alphas, betas)
}

/// Exact Cauchy transform of the piecewise-linear density and its derivative.
fn grid_cauchy(lo: f64, hi: f64, v: &[f64], z: C64) -> (C64, C64) {
    let n = v.len();
    let h = (hi - lo) / (n - 1) as f64;
    let mut g = C64::new(0.0, 0.0);
    let mut d = C64::new(0.0, 0.0);
    let mut l_prev = (z - lo).ln();
    for i in 0..n - 1 {
        let x0 = lo + h * i as f64;
        let x1 = if i + 2 == n { hi } else { x0 + h };
        let l_next = (z - x1).ln();
        let s = (v[i + 1] - v[i]) / h;
        let dz = v[i] + s * (z - x0);
        let dl = l_prev - l_next;
        g += dz * dl - s * h;
        d += s * dl + dz * (1.0 / (z - x0) - 1.0 / (z - x1));
        l_prev = l_next;
    }
    (g, d)
}

fn grid_rule(lo: f64, hi: f64, v: &[f64], per_cell: usize) -> Rule {
    let gl = GaussLegendre::new(per_cell.max(2));
    let n = v.len();
    let h = (hi - lo) / (n - 1) as f64;
    let mut nodes = Vec::with_capacity((n - 1) * gl.nodes.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for i in 0..n - 1 {
        let x0 = lo + h * i as f64;
        for (x, w) in gl.mapped(x0, x0 + h) {
            let dens = v[i] + (v[i + 1] - v[i]) * (x - x0) / h;
            if dens != 0.0 {
                nodes.push(x);
                weights.push(w * dens);
            }
        }
    }
    Rule::new(nodes, weights)
}

/// Semicircle density with variance t centered at 0.
pub fn semicircle_density(x: f64, t: f64) -> f64 {
    let r = 4.0 * t - x * x;
    if r <= 0.0 {
        0.0
    } else {
        r.sqrt() / (2.0 * PI * t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn dirac_transform() {
        let g = Measure::dirac(0.0).cauchy(c(0.0, 1.0)).unwrap();
        assert!((g - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn bernoulli_transform() {
        let g = Measure::bernoulli().cauchy(c(0.0, 1.0)).unwrap();
        let oracle = 0.5 * (1.0 / c(1.0, 1.0) + 1.0 / c(-1.0, 1.0));
        assert!((g - oracle).norm() < 1e-15);
        assert!((g - c(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(Measure::dirac(0.0).cauchy(c(1.0, 0.0)).is_err());
        assert!(Measure::dirac(0.0).cauchy(c(1.0, -1.0)).is_err());
    }

    #[test]
    fn semicircle_matches_quadrature_oracle() {
        let z = c(0.0, 2.0);
        let oracle = crate::quad::adaptive(
            &|x: f64| semicircle_density(x, 1.0) / (z - x),
            -2.0,
            2.0,
            1e-13,
        );
        let g = Measure::semicircle(0.0, 1.0).unwrap().cauchy(z).unwrap();
        assert!((g - oracle).norm() < 1e-11, "{g} vs {oracle}");
        assert!((g - c(0.0, 1.0 - 2f64.sqrt())).norm() < 1e-14);
    }

    #[test]
    fn depth_zero_fraction() {
        let m = Measure::jacobi(vec![0.7], vec![], Tail::Finite).unwrap();
        let z = c(0.3, 0.4);
        assert!((m.g(z) - 1.0 / (z - 0.7)).norm() < 1e-15);
    }

    #[test]
    fn arcsine_density_on_axis() {
        let m = Measure::arcsine(2f64.sqrt()).unwrap();
        let x: f64 = 0.4;
        let dens = -m.g(c(x, 0.0)).im / PI;
        let oracle = 1.0 / (PI * (2.0 - x * x).sqrt());
        assert!((dens - oracle).abs() < 1e-13);
        assert!((m.variance() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn grid_transform_matches_quadrature() {
        let n = 401;
        let vals: Vec<f64> = (0..n)
            .map(|i| semicircle_density(-2.0 + 4.0 * i as f64 / (n - 1) as f64, 1.0))
            .collect();
        let mass = Measure::trapezoid(-2.0, 2.0, &vals);
        let vals: Vec<f64> = vals.iter().map(|v| v / mass).collect();
        let m = Measure::grid(-2.0, 2.0, vals).unwrap();
        let z = c(0.3, 0.5);
        let oracle = m.rule().cauchy(z);
        let g = m.cauchy(z).unwrap();
        assert!((g - oracle).norm() < 1e-6, "{g} vs {oracle}");
        let h = 1e-6;
        let fd = (m.g(z + h) - m.g(z - h)) / (2.0 * h);
        assert!((m.gd(z).1 - fd).norm() < 1e-6);
    }

    #[test]
    fn jacobi_derivative_matches_difference() {
        let m = Measure::free_meixner(1.0, 0.5, 1.0).unwrap();
        let z = c(0.2, 0.7);
        let h = 1e-6;
        let fd = (m.g(z + h) - m.g(z - h)) / (2.0 * h);
        assert!((m.gd(z).1 - fd).norm() < 1e-8);
    }

    #[test]
    fn gauss_rule_matches_moments() {
        let m = Measure::free_meixner(0.5, 0.3, 1.0).unwrap();
        let mom = m.moments(10);
        let r = m.rule();
        for (k, mk) in mom.iter().enumerate() {
            assert!((r.moment(k as i32) - mk).abs() < 1e-10 * mk.abs().max(1.0));
        }
        assert!((mom[1]).abs() < 1e-15 && (mom[2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn semicircle_moments_are_catalan() {
        let m = Measure::semicircle(0.0, 1.0).unwrap().moments(6);
        let want = [1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0];
        for (a, b) in m.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn stieltjes_procedure_roundtrip() {
        let m = Measure::atomic(vec![(-1.0, 0.2), (0.5, 0.3), (2.0, 0.5)]).unwrap();
        let j = m.to_jacobi().unwrap();
        let z = c(0.1, 0.3);
        assert!((m.g(z) - j.g(z)).norm() < 1e-13);
        let b = Measure::bernoulli().to_jacobi().unwrap();
        assert_eq!(b, Measure::Jacobi { alphas: vec![0.0, 0.0], betas: vec![1.0], tail: Tail::Finite });
    }

    #[test]
    fn phi_then_strip() {
        let nu = Measure::semicircle(0.3, 0.7).unwrap();
        let mu = nu.phi_measure(1.5).unwrap();
        assert!((mu.variance() - 1.5).abs() < 1e-15);
        assert_eq!(mu.stripped_measure().unwrap(), nu);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Measure::jacobi(vec![0.0], vec![0.0], Tail::Repeat).is_err());
        assert!(Measure::atomic(vec![(0.0, 0.5)]).is_err());
        assert!(Measure::grid(0.0, 1.0, vec![0.5, 0.5]).is_err());
    }
}
