//! Moments and free cumulants.

use crate::error::{Error, Result};
use crate::measure::Measure;

#[derive(Debug, Clone, PartialEq)]
pub struct CumulantSeq {
    /// m_0..=m_N
    pub moments: Vec<f64>,
    /// r_1..=r_N stored at index n - 1
    pub cumulants: Vec<f64>,
}

impl CumulantSeq {
    pub fn from_moments(moments: Vec<f64>) -> Self {
        let cumulants = moments_to_free_cumulants(&moments);
        CumulantSeq { moments, cumulants }
    }

    pub fn from_cumulants(cumulants: Vec<f64>) -> Self {
        let moments = free_cumulants_to_moments(&cumulants);
        CumulantSeq { moments, cumulants }
    }

    pub fn order(&self) -> usize {
        self.cumulants.len()
    }

    /// r_n, 1-based; zero beyond the stored order.
    pub fn r(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.cumulants.get(n - 1).copied().unwrap_or(0.0)
        }
    }

    /// Free cumulants of the t-th free convolution power.
    pub fn power(&self, t: f64) -> Self {
        Self::from_cumulants(self.cumulants.iter().map(|r| r * t).collect())
    }
}

/// Coefficients of M(z)^s truncated at degree n, for s = 0..=n.
fn powers_of_series(m: &[f64], n: usize) -> Vec<Vec<f64>> {
    let mut out = vec![{
        let mut one = vec![0.0; n + 1];
        one[0] = 1.0;
        one
    }];
    for s in 1..=n {
        let prev = &out[s - 1];
        let mut next = vec![0.0; n + 1];
        for i in 0..=n {
            if prev[i] == 0.0 {
                continue;
            }
            for j in 0..=(n - i) {
                next[i + j] += prev[i] * m[j];
            }
        }
        out.push(next);
    }
    out
}

/// Non-crossing moment-cumulant recursion:
/// m_n = sum_{s=1}^{n} r_s [z^{n-s}] M(z)^s.
pub fn moments_to_free_cumulants(m: &[f64]) -> Vec<f64> {
    let n = m.len().saturating_sub(1);
    let mut r = vec![0.0; n];
    let pw = powers_of_series(m, n);
    for k in 1..=n {
        let mut acc = m[k];
        for s in 1..k {
            acc -= r[s - 1] * pw[s][k - s];
        }
        r[k - 1] = acc;
    }
    r
}

pub fn free_cumulants_to_moments(r: &[f64]) -> Vec<f64> {
    let n = r.len();
    let mut m = vec![0.0; n + 1];
    m[0] = 1.0;
    for k in 1..=n {
        let pw = powers_of_series(&m, k);
        let mut acc = 0.0;
        for s in 1..=k {
            acc += r[s - 1] * pw[s][k - s];
        }
        m[k] = acc;
    }
    m
}

pub const MAX_ORDER: usize = 20;

pub fn moments_and_cumulants(mu: &Measure, n: usize) -> Result<CumulantSeq> {
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("cumulant order {n} exceeds {MAX_ORDER}")));
    }
    if let Measure::Grid { .. } = mu {
        let mass = mu.rule().mass();
        if (mass - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidMeasure(format!("grid mass defect {:e}", mass - 1.0)));
        }
    }
    Ok(CumulantSeq::from_moments(mu.moments(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dirac_cumulants() {
        let c = moments_and_cumulants(&Measure::dirac(0.7), 8).unwrap();
        assert!((c.r(1) - 0.7).abs() < 1e-14);
        for n in 2..=8 {
            assert!(c.r(n).abs() < 1e-12, "r_{n} = {}", c.r(n));
        }
    }

    #[test]
    fn semicircle_cumulants() {
        let c = moments_and_cumulants(&Measure::semicircle(0.0, 2.5).unwrap(), 10).unwrap();
        assert!((c.r(2) - 2.5).abs() < 1e-13);
        for n in [1, 3, 4, 5, 6, 7, 8, 9, 10] {
            assert!(c.r(n).abs() < 1e-10, "r_{n} = {}", c.r(n));
        }
    }

    #[test]
    fn bernoulli_cumulants_known_values() {
        // m = (1, 0, 1, 0, 1, 0, 1): r_2 = 1, r_4 = -1, r_6 = 2.
        let c = CumulantSeq::from_moments(vec![1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]);
        assert_eq!(c.cumulants, vec![0.0, 1.0, 0.0, -1.0, 0.0, 2.0]);
    }

    proptest! {
        #[test]
        fn roundtrip(r in proptest::collection::vec(-2.0f64..2.0, 1..12)) {
            let m = free_cumulants_to_moments(&r);
            let back = moments_to_free_cumulants(&m);
            for (a, b) in r.iter().zip(&back) {
                prop_assert!((a - b).abs() < 1e-10 * (1.0 + m.iter().fold(0.0f64, |s, v| s.max(v.abs()))));
            }
        }
    }
}
