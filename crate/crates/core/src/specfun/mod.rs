//! Special functions: Gamma, Bessel `J`, Hermite, and the hypergeometric
//! functions `2F1` and `1F1`.

mod bessel;
mod gamma;
mod hermite;
mod hypergeometric;

pub use bessel::{bessel_j, RealOrder};
pub use gamma::{factorial, gamma, ln_gamma, pochhammer, rgamma, sinpi};
pub use hermite::{hermite, MAX_HERMITE_DEGREE};
pub use hypergeometric::{gauss_2f1, kummer_1f1};
