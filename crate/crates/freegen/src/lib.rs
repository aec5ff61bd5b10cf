//! Numerical machinery for free, monotone, Boolean and q-deformed Levy
//! processes: Cauchy transforms, subordination, transition kernels,
//! generators and the operator identities relating them.

pub mod convolve;
pub mod cumulants;
pub mod error;
pub mod freelevy;
pub mod func;
pub mod measure;
pub mod monotone;
pub mod qbm;
pub mod quad;
pub mod singular;
pub mod stieltjes;
pub mod transform;
pub mod twostate;

pub use error::{Error, Result};
pub use measure::{Measure, Tail};
pub use num_complex::Complex64;
pub use transform::CauchyTransform;
