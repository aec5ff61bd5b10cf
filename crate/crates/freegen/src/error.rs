use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("point {0} is not in the open upper half-plane")]
    NotUpperHalfPlane(Complex64),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("degenerate measure (variance {0:e})")]
    Degenerate(f64),

    #[error("subordination did not converge at z = {z}, t = {t} (last residual {residual:e})")]
    NoConvergence { z: Complex64, t: f64, residual: f64 },

    #[error("inversion failed at w = {w}: {reason}")]
    Inversion { w: Complex64, reason: String },

    #[error("trajectory reached the real axis at time {0}")]
    RealAxis(f64),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
