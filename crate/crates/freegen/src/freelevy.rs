//! Free Lévy processes of the first kind built from a canonical pair
//! (alpha, rho): laws, subordination maps, transition kernels, the
//! generator and the identities relating them.
//!
//! With nu_t = rho ⊞ γ_t ⊞ δ_{alpha t} the law at time t has
//! F_{mu_t}(z) = z - alpha t - t G_{rho ⊞ γ_t}(z - alpha t), and the map
//! F_{s,t}(z) = z - (t - s)(alpha + G_{nu_t}(z)) satisfies
//! G_{mu_t} = G_{mu_s} ∘ F_{s,t}.

use crate::convolve::{invert_cauchy, r_transform, FlowCache, SemicircularFlow};
use crate::cumulants::{moments_and_cumulants, CumulantSeq};
use crate::error::{Error, Result};
use crate::func::{FnKind, SmoothFunction};
use crate::measure::Measure;
use crate::quad::{adaptive, density_rule, GaussLegendre, Rule, GL64};
use crate::singular::apply_dx_l;
use crate::stieltjes::{stieltjes_invert, Inversion, Status};
use crate::transform::{strip_transform, CauchyTransform, Origin};
use num_complex::Complex64;
use parking_lot::Mutex;
use rayon::prelude::*;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, LazyLock, OnceLock};

type C64 = Complex64;

#[derive(Debug, Clone)]
pub struct CanonicalPair {
    pub alpha: f64,
    pub rho: Arc<Measure>,
}

impl CanonicalPair {
    /// rho must be a probability measure.
    pub fn new(alpha: f64, rho: Measure) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain("alpha must be finite".into()));
        }
        let mass = rho.rule().mass();
        if (mass - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidMeasure(format!("canonical measure has mass {mass}")));
        }
        Ok(CanonicalPair { alpha, rho: Arc::new(rho) })
    }
}

/// Everything attached to one time t: the flow for nu_t, its support
/// components and a fixed boundary rule on them.
#[derive(Debug)]
struct TimeSlice {
    flow: Arc<SemicircularFlow>,
    support: OnceLock<Vec<(f64, f64)>>,
    nodes: OnceLock<Vec<BoundaryNode>>,
}

#[derive(Debug, Clone, Copy)]
struct BoundaryNode {
    y: f64,
    w: f64,
    g: C64,
}

const SUPPORT_SCAN: usize = 2048;
const NODE_PANELS: usize = 64;
static GL16: LazyLock<GaussLegendre> = LazyLock::new(|| GaussLegendre::new(16));

impl TimeSlice {
    /// Components of supp nu_t located by scanning the boundary density and
    /// bisecting each edge.
    fn support(&self) -> &[(f64, f64)] {
        self.support.get_or_init(|| {
            let f = &self.flow;
            if f.t() == 0.0 {
                return Vec::new();
            }
            let (lo, hi) = f.support_bounds();
            let h = (hi - lo) / (SUPPORT_SCAN - 1) as f64;
            let d: Vec<f64> = (0..SUPPORT_SCAN).into_par_iter().map(|i| f.density(lo + h * i as f64)).collect();
            let top = d.iter().cloned().fold(0.0, f64::max);
            let thr = 1e-10 * top;
            let inside = |y: f64| f.density(y) > thr;
            let edge = |mut out: f64, mut inn: f64| {
                for _ in 0..60 {
                    let m = 0.5 * (out + inn);
                    if inside(m) {
                        inn = m;
                    } else {
                        out = m;
                    }
                }
                inn
            };
            let mut parts = Vec::new();
            let mut i = 0;
            while i < SUPPORT_SCAN {
                if d[i] > thr {
                    let start = i;
                    while i + 1 < SUPPORT_SCAN && d[i + 1] > thr {
                        i += 1;
                    }
                    let a = if start == 0 { lo } else { edge(lo + h * (start - 1) as f64, lo + h * start as f64) };
                    let b = if i + 1 == SUPPORT_SCAN { hi } else { edge(lo + h * (i + 1) as f64, lo + h * i as f64) };
                    parts.push((a, b));
                }
                i += 1;
            }
            parts
        })
    }

    /// Cosine-mapped Gauss panels on every support component, with the
    /// boundary value of G_{nu_t} stored at each node.
    fn nodes(&self) -> &[BoundaryNode] {
        self.nodes.get_or_init(|| {
            let mut pts = Vec::new();
            for &(a, b) in self.support() {
                let c = 0.5 * (a + b);
                let r = 0.5 * (b - a);
                for p in 0..NODE_PANELS {
                    let t0 = PI * p as f64 / NODE_PANELS as f64;
                    let t1 = PI * (p + 1) as f64 / NODE_PANELS as f64;
                    for (th, w) in GL16.mapped(t0, t1) {
                        pts.push((c - r * th.cos(), w * r * th.sin()));
                    }
                }
            }
            pts.into_par_iter()
                .map(|(y, w)| BoundaryNode { y, w, g: self.flow.boundary_gd(y).0 })
                .collect()
        })
    }
}

/// z -> F_{s,t}(z).
#[derive(Debug, Clone)]
pub struct SubordinationMap {
    pub s: f64,
    pub t: f64,
    alpha: f64,
    flow: Arc<SemicircularFlow>,
}

impl SubordinationMap {
    pub fn tau(&self) -> f64 {
        self.t - self.s
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        if self.tau() == 0.0 {
            return Ok(z);
        }
        Ok(z - self.tau() * (self.alpha + self.flow.g(z)?))
    }

    /// F and F' at z.
    pub fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        if self.tau() == 0.0 {
            return Ok((z, C64::new(1.0, 0.0)));
        }
        let (g, dg) = self.flow.gd(z)?;
        Ok((z - self.tau() * (self.alpha + g), 1.0 - self.tau() * dg))
    }

    /// Boundary values F(y + i0), F'(y + i0).
    pub fn boundary(&self, y: f64) -> (C64, C64) {
        if self.tau() == 0.0 {
            return (C64::new(y, 0.0), C64::new(1.0, 0.0));
        }
        let (g, dg) = self.flow.boundary_gd(y);
        (y - self.tau() * (self.alpha + g), 1.0 - self.tau() * dg)
    }
}

/// Integration rule for the kernel measure at a point, with its atoms.
#[derive(Debug, Clone)]
pub struct KernelRule {
    pub rule: Rule,
    pub atoms: Vec<(f64, f64)>,
    pub mass: f64,
}

#[derive(Debug)]
pub struct Fl1Process {
    pub pair: CanonicalPair,
    cache: Arc<FlowCache>,
    slices: Mutex<HashMap<u64, Arc<TimeSlice>>>,
}

pub const PROBE_TOL: f64 = 1e-9;

impl Fl1Process {
    pub fn new(pair: CanonicalPair) -> Self {
        Fl1Process { pair, cache: Arc::new(FlowCache::new()), slices: Mutex::new(HashMap::new()) }
    }

    pub fn alpha(&self) -> f64 {
        self.pair.alpha
    }

    pub fn cache(&self) -> &Arc<FlowCache> {
        &self.cache
    }

    fn slice(&self, t: f64) -> Arc<TimeSlice> {
        self.slices
            .lock()
            .entry(t.to_bits())
            .or_insert_with(|| {
                let flow = SemicircularFlow::new(self.pair.rho.clone(), t)
                    .with_shift(self.pair.alpha * t)
                    .with_cache(self.cache.clone());
                Arc::new(TimeSlice { flow: Arc::new(flow), support: OnceLock::new(), nodes: OnceLock::new() })
            })
            .clone()
    }

    fn check_time(t: f64) -> Result<()> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain("time must be nonnegative".into()));
        }
        Ok(())
    }

    fn check_pair(s: f64, t: f64) -> Result<()> {
        Self::check_time(s)?;
        if s > t {
            return Err(Error::Domain("s must not exceed t".into()));
        }
        Ok(())
    }

    /// nu_t = rho ⊞ γ_t ⊞ δ_{alpha t}, the stripped law of mu_t.
    pub fn nu(&self, t: f64) -> Result<Arc<SemicircularFlow>> {
        Self::check_time(t)?;
        Ok(self.slice(t).flow.clone())
    }

    /// Support components of nu_t.
    pub fn nu_support(&self, t: f64) -> Result<Vec<(f64, f64)>> {
        Self::check_time(t)?;
        Ok(self.slice(t).support().to_vec())
    }

    /// G_{mu_t}(z).
    pub fn law_g(&self, t: f64, z: C64) -> Result<C64> {
        Self::check_time(t)?;
        if !(z.im > 0.0) {
            return Err(Error::NotUpperHalfPlane(z));
        }
        if t == 0.0 {
            return Ok(1.0 / z);
        }
        let g = self.slice(t).flow.g(z)?;
        Ok(1.0 / (z - self.alpha() * t - t * g))
    }

    pub fn law(self: &Arc<Self>, t: f64) -> Result<CauchyTransform> {
        Self::check_time(t)?;
        let me = self.clone();
        Ok(CauchyTransform::new(Origin::Composed, move |z| me.law_g(t, z)))
    }

    /// F_{s,t}; the defining identity is verified on 16 probes.
    pub fn subordination(&self, s: f64, t: f64) -> Result<SubordinationMap> {
        Self::check_pair(s, t)?;
        let map = SubordinationMap { s, t, alpha: self.alpha(), flow: self.slice(t).flow.clone() };
        for z in crate::transform::probe_set_16() {
            let f = map.eval(z)?;
            if f.im < z.im * (1.0 - 1e-12) {
                return Err(Error::Consistency(format!("Im F({z}) = {} below Im z", f.im)));
            }
            let lhs = self.law_g(t, z)?;
            let rhs = self.law_g(s, f)?;
            if (lhs - rhs).norm() > PROBE_TOL {
                return Err(Error::Consistency(format!("G_t(z) != G_s(F(z)) at {z}: {:e}", (lhs - rhs).norm())));
            }
        }
        Ok(map)
    }

    fn map_unchecked(&self, s: f64, t: f64) -> SubordinationMap {
        SubordinationMap { s, t, alpha: self.alpha(), flow: self.slice(t).flow.clone() }
    }

    /// Density of the kernel measure at y from exact boundary values.
    pub fn kernel_density(&self, s: f64, t: f64, x: f64, y: f64) -> Result<f64> {
        Self::check_pair(s, t)?;
        if s == t {
            return Ok(0.0);
        }
        let (f, _) = self.map_unchecked(s, t).boundary(y);
        // F is real off supp nu_t; a root of F = x there is an atom, not density
        if f.im <= 1e-12 * (1.0 + f.norm()) {
            return Ok(0.0);
        }
        Ok((f.im / (PI * (f - x).norm_sqr())).max(0.0))
    }

    /// Point masses of the kernel: roots of F(y) = x in the gaps of
    /// supp nu_t, where F is real and increasing, with weight 1/F'(y).
    pub fn kernel_atoms(&self, s: f64, t: f64, x: f64) -> Result<Vec<(f64, f64)>> {
        Self::check_pair(s, t)?;
        if s == t {
            return Ok(vec![(x, 1.0)]);
        }
        let slice = self.slice(t);
        let map = self.map_unchecked(s, t);
        let phi = |y: f64| map.boundary(y).0.re - x;
        let supp = slice.support();
        let mut gaps: Vec<(f64, f64)> = Vec::new();
        let first = supp.first().map(|p| p.0).unwrap_or(0.0);
        let last = supp.last().map(|p| p.1).unwrap_or(0.0);
        gaps.push((f64::NEG_INFINITY, first));
        for w in supp.windows(2) {
            gaps.push((w[0].1, w[1].0));
        }
        gaps.push((last, f64::INFINITY));
        let mut atoms = Vec::new();
        for (a, b) in gaps {
            let (mut lo, mut hi) = (a, b);
            if a == f64::NEG_INFINITY {
                if phi(b) <= 0.0 {
                    continue;
                }
                let mut step = 1.0;
                lo = b - step;
                while phi(lo) >= 0.0 {
                    step *= 2.0;
                    lo = b - step;
                }
            } else if b == f64::INFINITY {
                if phi(a) >= 0.0 {
                    continue;
                }
                let mut step = 1.0;
                hi = a + step;
                while phi(hi) <= 0.0 {
                    step *= 2.0;
                    hi = a + step;
                }
            } else if !(phi(a) < 0.0 && phi(b) > 0.0) {
                continue;
            }
            // Newton inside the bracket, bisection when a step leaves it
            let mut y = 0.5 * (lo + hi);
            for _ in 0..200 {
                let (f, d) = map.boundary(y);
                let v = f.re - x;
                if v < 0.0 {
                    lo = y;
                } else {
                    hi = y;
                }
                if v.abs() <= 1e-15 * (1.0 + x.abs()) || hi - lo <= 4.0 * f64::EPSILON * (1.0 + y.abs()) {
                    break;
                }
                let next = y - v / d.re;
                y = if next > lo && next < hi && d.re > 0.0 { next } else { 0.5 * (lo + hi) };
            }
            let w = 1.0 / map.boundary(y).1.re;
            if w > 1e-14 {
                atoms.push((y, w));
            }
        }
        Ok(atoms)
    }

    /// The kernel measure delta_x ▷ nu_{s,t} as an integration rule. The
    /// continuous part uses the cached boundary rule of nu_t; if its mass
    /// is off the density is refined adaptively instead.
    pub fn kernel_rule(&self, s: f64, t: f64, x: f64) -> Result<KernelRule> {
        let atoms = self.kernel_atoms(s, t, x)?;
        if s == t {
            return Ok(KernelRule { rule: Rule::new(vec![x], vec![1.0]), atoms, mass: 1.0 });
        }
        let slice = self.slice(t);
        let tau = t - s;
        let alpha = self.alpha();
        let dens = |y: f64, g: C64| {
            let f = y - tau * (alpha + g);
            (-tau * g.im / (PI * (f - x).norm_sqr())).max(0.0)
        };
        let nodes = slice.nodes();
        let mut rule = Rule::new(
            nodes.iter().map(|n| n.y).collect(),
            nodes.iter().map(|n| n.w * dens(n.y, n.g)).collect(),
        );
        let atom_mass: f64 = atoms.iter().map(|a| a.1).sum();
        if (rule.mass() + atom_mass - 1.0).abs() > 1e-9 {
            let mut refined = Rule::default();
            for &(a, b) in slice.support() {
                let d = |y: f64| dens(y, slice.flow.boundary_gd(y).0);
                refined = refined.merged(&density_rule(&d, a, b, 16, 1e-12));
            }
            rule = refined;
        }
        for &(y, w) in &atoms {
            rule = rule.merged(&Rule::new(vec![y], vec![w]));
        }
        let mass = rule.mass();
        Ok(KernelRule { rule, atoms, mass })
    }

    /// Default grid for kernel output: supp nu_t and x padded by four
    /// standard deviations of mu_t.
    pub fn kernel_window(&self, t: f64, x: f64) -> (f64, f64) {
        let (lo, hi) = self.slice(t).flow.support_bounds();
        let pad = 4.0 * t.sqrt().max(1e-3);
        (lo.min(x) - pad, hi.max(x) + pad)
    }

    /// Kernel density on a uniform grid. With `eps = None` the density is the
    /// boundary limit and atoms come from the gap roots; with `Some(eps)`
    /// it is the Stieltjes inversion of 1/(F(· + i eps) - x).
    pub fn transition_kernel(
        &self,
        s: f64,
        t: f64,
        x: f64,
        grid: Option<(f64, f64, usize)>,
        eps: Option<f64>,
    ) -> Result<Inversion> {
        Self::check_pair(s, t)?;
        let (lo, hi, n) = grid.unwrap_or_else(|| {
            let (a, b) = self.kernel_window(t, x);
            (a, b, 2048)
        });
        if s == t {
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
        if let Some(e) = eps {
            let map = Arc::new(self.map_unchecked(s, t));
            let k = CauchyTransform::new(Origin::Composed, move |z| Ok(1.0 / (map.eval(z)? - x)));
            return stieltjes_invert(&k, lo, hi, n, Some(e));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let values: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| self.kernel_density(s, t, x, lo + h * i as f64).unwrap_or(0.0))
            .collect();
        let atoms = self.kernel_atoms(s, t, x)?;
        let kr = self.kernel_rule(s, t, x)?;
        let mut inv = Inversion { lo, hi, values, atoms, eps: 0.0, mass: kr.mass, status: Status::Ok };
        if (kr.mass - 1.0).abs() > 1e-5 {
            inv.status = Status::Warning(format!("kernel mass {:.8} outside 1 ± 1e-5", kr.mass));
        }
        Ok(inv)
    }

    /// Moments ∫ y^k d(delta_x ▷ nu_{s,t}) for k = 0..=n, read off the
    /// expansion of 1/(F(z) - x) at infinity.
    pub fn kernel_moments(&self, s: f64, t: f64, x: f64, n: usize) -> Result<Vec<f64>> {
        Self::check_pair(s, t)?;
        let tau = t - s;
        let mut out = vec![0.0; n + 1];
        if tau == 0.0 {
            for (k, m) in out.iter_mut().enumerate() {
                *m = x.powi(k as i32);
            }
            return Ok(out);
        }
        let m = self.nu_moments(t, n.saturating_sub(1))?;
        // 1/(F - x) = w / D(w), D = 1 - (x + tau alpha) w - tau sum_j m_j w^{j+2}
        let mut d = vec![0.0; n + 1];
        if n >= 1 {
            d[1] = -(x + tau * self.alpha());
        }
        for j in 0..n.saturating_sub(1) {
            d[j + 2] = -tau * m[j];
        }
        out[0] = 1.0;
        for k in 1..=n {
            out[k] = -(1..=k).map(|i| d[i] * out[k - i]).sum::<f64>();
        }
        Ok(out)
    }

    /// Moments of nu_t from the free cumulants of rho with t added to r_2
    /// and alpha t to r_1.
    pub fn nu_moments(&self, t: f64, n: usize) -> Result<Vec<f64>> {
        let c = moments_and_cumulants(&self.pair.rho, n.max(2))?;
        let mut r = c.cumulants.clone();
        r[0] += self.alpha() * t;
        r[1] += t;
        let mut m = CumulantSeq::from_cumulants(r).moments;
        m.truncate(n + 1);
        Ok(m)
    }

    /// K_{s,t} f (x). Resolvents use 1/(F(z) - x); polynomials use kernel
    /// moments; other functions integrate against the kernel rule.
    pub fn apply_k(&self, s: f64, t: f64, f: &SmoothFunction, x: f64) -> Result<C64> {
        Self::check_pair(s, t)?;
        match &f.kind {
            FnKind::Resolvent(terms) => {
                let map = self.map_unchecked(s, t);
                let mut acc = C64::new(0.0, 0.0);
                for &(c, p) in terms {
                    acc += if p.im > 0.0 {
                        c / (map.eval(p)? - x)
                    } else {
                        c * (1.0 / (map.eval(p.conj())? - x)).conj()
                    };
                }
                Ok(acc)
            }
            FnKind::Polynomial(c) => {
                let m = self.kernel_moments(s, t, x, c.len().saturating_sub(1))?;
                Ok(C64::new(c.iter().zip(&m).map(|(a, b)| a * b).sum(), 0.0))
            }
            _ => self.apply_k_quadrature(s, t, f, x),
        }
    }

    /// K_{s,t} f (x) by integrating f against the kernel rule.
    pub fn apply_k_quadrature(&self, s: f64, t: f64, f: &SmoothFunction, x: f64) -> Result<C64> {
        let kr = self.kernel_rule(s, t, x)?;
        Ok(kr.rule.integrate(|y| f.eval(y)))
    }

    /// Integration rule for nu_t.
    pub fn nu_rule(&self, t: f64) -> Result<Rule> {
        Self::check_time(t)?;
        Ok(self.slice(t).flow.rule().clone())
    }

    /// A_t f (x) = alpha f'(x) + d/dx L_{nu_t} f (x).
    pub fn generator_a(&self, t: f64, f: &SmoothFunction, x: f64) -> Result<C64> {
        Self::check_time(t)?;
        let slice = self.slice(t);
        Ok(self.alpha() * f.d1(x) + apply_dx_l(slice.flow.rule(), f, x))
    }

    /// A_t applied to 1/(z - ·) in closed form: (alpha + G_{nu_t}(z))/(z - x)^2.
    pub fn generator_a_resolvent(&self, t: f64, z: C64, x: f64) -> Result<C64> {
        Self::check_time(t)?;
        let g = self.slice(t).flow.g(z)?;
        Ok((self.alpha() + g) / ((z - x) * (z - x)))
    }

    /// sup over xs of |(K_{s,s+h} f - f)/h - A_s f| for each h.
    pub fn generator_limit_check(&self, s: f64, f: &SmoothFunction, hs: &[f64], xs: &[f64]) -> Result<Vec<f64>> {
        if hs.windows(2).any(|w| !(w[1] < w[0])) || hs.iter().any(|h| !(*h > 0.0)) {
            return Err(Error::Domain("step sizes must be positive and decreasing".into()));
        }
        let a: Vec<C64> = xs.iter().map(|&x| self.generator_a(s, f, x)).collect::<Result<_>>()?;
        hs.iter()
            .map(|&h| {
                let mut worst: f64 = 0.0;
                for (i, &x) in xs.iter().enumerate() {
                    let kf = self.apply_k(s, s + h, f, x)?;
                    worst = worst.max(((kf - f.eval(x)) / h - a[i]).norm());
                }
                Ok(worst)
            })
            .collect()
    }

    /// Residual of the evolution equation d/dt G + R_mu(G) G' = 0 at (t, z)
    /// with centered differences of step h in t and z. R_mu(w) is taken on
    /// the cumulant side as alpha + G_rho(1/w).
    pub fn verify_evolution_pde(&self, t: f64, z: C64, h: f64) -> Result<f64> {
        if !(t - h >= 0.0) {
            return Err(Error::Domain("need t >= h for a centered difference".into()));
        }
        let dt = (self.law_g(t + h, z)? - self.law_g(t - h, z)?) / (2.0 * h);
        let dz = (self.law_g(t, z + h)? - self.law_g(t, z - h)?) / (2.0 * h);
        let g = self.law_g(t, z)?;
        let r = self.alpha() + self.pair.rho.g(1.0 / g);
        Ok((dt + r * dz).norm())
    }

    /// max over probes |F_{s,u}(z) - F_{s,t}(F_{t,u}(z))|.
    pub fn semigroup_check(&self, s: f64, t: f64, u: f64, probes: &[C64]) -> Result<f64> {
        Self::check_pair(s, t)?;
        Self::check_pair(t, u)?;
        let (a, b, c) = (self.map_unchecked(s, u), self.map_unchecked(s, t), self.map_unchecked(t, u));
        let mut worst: f64 = 0.0;
        for &z in probes {
            worst = worst.max((a.eval(z)? - b.eval(c.eval(z)?)?).norm());
        }
        Ok(worst)
    }

    /// max over w of |R_{mu_t}(w) - t R_{mu_1}(w)|.
    pub fn r_linearity_check(self: &Arc<Self>, t: f64, ws: &[C64]) -> Result<f64> {
        let lt = self.law(t)?;
        let l1 = self.law(1.0)?;
        let mut worst: f64 = 0.0;
        for &w in ws {
            let a = r_transform(&lt, w, self.alpha() * t, t)?;
            let b = r_transform(&l1, w, self.alpha(), 1.0)?;
            worst = worst.max((a - t * b).norm());
        }
        Ok(worst)
    }

    /// max over probes |G_{J[mu_t]}(z) - G_{nu_t}(z)| with J the coefficient
    /// stripping of the law at mean alpha t and variance t.
    pub fn strip_evolution_check(self: &Arc<Self>, t: f64, probes: &[C64]) -> Result<f64> {
        let st = strip_transform(&self.law(t)?, self.alpha() * t, t)?;
        let nu = self.slice(t).flow.clone();
        let mut worst: f64 = 0.0;
        for &z in probes {
            worst = worst.max((st.j.g(z)? - nu.g(z)?).norm());
        }
        Ok(worst)
    }

    /// K_{s,t} f - f - ∫_s^t K_{s,v} A_v f dv at x for f = 1/(z - ·), with a
    /// 64-point Gauss rule in v. K_{s,v} of the double pole is F'/(F - x)^2.
    pub fn martingale_check(&self, s: f64, t: f64, z: C64, x: f64) -> Result<C64> {
        Self::check_pair(s, t)?;
        let kf = 1.0 / (self.map_unchecked(s, t).eval(z)? - x);
        let f = 1.0 / (z - x);
        let mut integral = C64::new(0.0, 0.0);
        for (v, w) in GL64.mapped(s, t) {
            let (fv, dfv) = self.map_unchecked(s, v).eval_d(z)?;
            let a = self.alpha() + self.slice(v).flow.g(z)?;
            integral += w * a * dfv / ((fv - x) * (fv - x));
        }
        Ok(kf - f - integral)
    }
}

/// Compares F_{s,t} for alpha = 0 with G_{rho ⊞ γ_s}^{-1} ∘ G_{rho ⊞ γ_t}, the
/// subordination of free Brownian motion started from rho, computed by
/// Newton inversion from z.
pub fn fl1_equals_fbm_check(rho: &Measure, alpha: f64, s: f64, t: f64, probes: &[C64]) -> Result<f64> {
    if alpha != 0.0 {
        return Err(Error::Domain("the transition operators agree only for centered processes (alpha = 0)".into()));
    }
    if !(0.0 <= s && s <= t) {
        return Err(Error::Domain("s must not exceed t".into()));
    }
    let rho = Arc::new(rho.clone());
    let fs = Arc::new(SemicircularFlow::new(rho.clone(), s));
    let ft = SemicircularFlow::new(rho, t);
    let gs = fs.transform();
    let mut worst: f64 = 0.0;
    for &z in probes {
        let g = ft.g(z)?;
        let closed = z - (t - s) * g;
        let inverted = invert_cauchy(&gs, g, z)?;
        worst = worst.max((closed - inverted).norm());
    }
    Ok(worst)
}

/// alpha f'(x) + ∫ (f(x + y) - f(x) - y f'(x))/y^2 drho(y).
pub fn classical_generator(pair: &CanonicalPair, f: &SmoothFunction, x: f64) -> C64 {
    let rule = pair.rho.rule();
    pair.alpha * f.d1(x) + rule.integrate(|y| f.dd2(x, x + y))
}

/// alpha f'(0) + ∫ (f(y) - f(0) - y f'(0))/y^2 drho(y).
pub fn cumulant_functional(pair: &CanonicalPair, f: &SmoothFunction) -> C64 {
    classical_generator(pair, f, 0.0)
}

/// Integral of f over a window, used for the averaging identity.
pub fn line_integral(f: &(dyn Fn(f64) -> f64 + Sync), a: f64, b: f64) -> f64 {
    adaptive(f, a, b, 1e-12)
}
