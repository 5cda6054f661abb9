#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod checks;
pub mod correlate;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod quad;
pub mod riemann;
pub mod scalar;
pub mod xform;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;
