//! Gauss-Legendre quadrature: fixed panels, adaptive bisection, and
//! discrete integration rules built from a density.

use num_complex::Complex64;
use rayon::prelude::*;
use std::ops::{Add, Mul, Sub};
use std::sync::LazyLock;

/// Values that can be integrated.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[n - 1 - i] = weights[i];
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Maps the rule to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }

    pub fn panel<V: QuadValue>(&self, a: f64, b: f64, f: &dyn Fn(f64) -> V) -> V {
        let mut s = V::zero();
        for (x, w) in self.mapped(a, b) {
            s = s + f(x) * w;
        }
        s
    }
}

/// The 64-node rule used throughout.
pub static GL64: LazyLock<GaussLegendre> = LazyLock::new(|| GaussLegendre::new(64));

pub const MAX_DEPTH: usize = 48;

/// Adaptive bisection with 64-node panels. A panel is accepted when the
/// two halves agree with the whole to `tol` (absolute) or 1e-14 relative.
pub fn adaptive<V: QuadValue>(f: &dyn Fn(f64) -> V, a: f64, b: f64, tol: f64) -> V {
    if a == b {
        return V::zero();
    }
    let gl = &*GL64;
    let mut total = V::zero();
    let mut stack = vec![(a, b, gl.panel(a, b, f), 0usize)];
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = gl.panel(lo, mid, f);
        let right = gl.panel(mid, hi, f);
        let both = left + right;
        let err = (both - whole).magnitude();
        if err <= tol.max(1e-14 * both.magnitude()) || depth >= MAX_DEPTH {
            total = total + both;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    total
}

/// Adaptive integral over a list of breakpoints.
pub fn adaptive_pieces<V: QuadValue>(f: &dyn Fn(f64) -> V, breaks: &[f64], tol: f64) -> V {
    breaks
        .windows(2)
        .fold(V::zero(), |acc, w| acc + adaptive(f, w[0], w[1], tol))
}

/// A discrete integration rule: integral of g against a measure is
/// approximated by sum of weights[i] * g(nodes[i]).
#[derive(Debug, Clone, Default)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Self {
        assert_eq!(nodes.len(), weights.len());
        Rule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate<V: QuadValue>(&self, f: impl Fn(f64) -> V) -> V {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(V::zero(), |acc, (&x, &w)| acc + f(x) * w)
    }

    pub fn moment(&self, k: i32) -> f64 {
        self.integrate(|x| x.powi(k))
    }

    pub fn cauchy(&self, z: Complex64) -> Complex64 {
        self.integrate(|x| 1.0 / (z - x))
    }

    /// Concatenates two rules (sum of the measures).
    pub fn merged(mut self, other: &Rule) -> Rule {
        self.nodes.extend_from_slice(&other.nodes);
        self.weights.extend_from_slice(&other.weights);
        self
    }

    pub fn scaled(mut self, c: f64) -> Rule {
        for w in &mut self.weights {
            *w *= c;
        }
        self
    }

    pub fn shifted(mut self, a: f64) -> Rule {
        for x in &mut self.nodes {
            *x += a;
        }
        self
    }
}

/// Builds a rule for the measure `density(x) dx` on [a, b] by adaptive
/// bisection. Panels are refined breadth-first and evaluated in parallel.
/// Refinement stops when the panel mass and first moment agree with the
/// bisected estimate to `tol`.
pub fn density_rule(
    density: &(dyn Fn(f64) -> f64 + Sync),
    a: f64,
    b: f64,
    init_panels: usize,
    tol: f64,
) -> Rule {
    let gl = &*GL64;
    let eval = |lo: f64, hi: f64| -> Vec<(f64, f64)> {
        gl.mapped(lo, hi).map(|(x, w)| (x, w * density(x))).collect()
    };
    let sums = |pts: &[(f64, f64)]| -> (f64, f64) {
        pts.iter().fold((0.0, 0.0), |(m, m1), &(x, w)| (m + w, m1 + w * x))
    };
    let n0 = init_panels.max(1);
    let h = (b - a) / n0 as f64;
    let mut pending: Vec<(f64, f64, Vec<(f64, f64)>, usize)> = (0..n0)
        .into_par_iter()
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == n0 { b } else { lo + h };
            (lo, hi, eval(lo, hi), 0)
        })
        .collect();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let scale = (b - a).abs().max(1.0);
    while !pending.is_empty() {
        let results: Vec<_> = pending
            .into_par_iter()
            .map(|(lo, hi, whole, depth)| {
                let mid = 0.5 * (lo + hi);
                let left = eval(lo, mid);
                let right = eval(mid, hi);
                let (m0, m1) = sums(&whole);
                let (l0, l1) = sums(&left);
                let (r0, r1) = sums(&right);
                let err = ((l0 + r0) - m0).abs() + ((l1 + r1) - m1).abs() / scale;
                (lo, mid, hi, left, right, depth, err)
            })
            .collect();
        pending = Vec::new();
        for (lo, mid, hi, left, right, depth, err) in results {
            if err <= tol || depth >= MAX_DEPTH {
                for &(x, w) in left.iter().chain(right.iter()) {
                    if w != 0.0 {
                        nodes.push(x);
                        weights.push(w);
                    }
                }
            } else {
                pending.push((lo, mid, left, depth + 1));
                pending.push((mid, hi, right, depth + 1));
            }
        }
    }
    Rule::new(nodes, weights)
}
