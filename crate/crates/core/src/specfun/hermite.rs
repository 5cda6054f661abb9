use crate::error::{precondition, Result};
use crate::scalar::Real;

/// Largest supported degree.
pub const MAX_HERMITE_DEGREE: usize = 64;

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence.
pub fn hermite<T: Real>(n: usize, x: T) -> Result<T> {
    if n > MAX_HERMITE_DEGREE {
        return Err(precondition(format!("Hermite degree {n} exceeds {MAX_HERMITE_DEGREE}")));
    }
    let two = T::lit(2.0);
    let (mut h0, mut h1) = (T::one(), two * x);
    if n == 0 {
        return Ok(h0);
    }
    for k in 1..n {
        let h2 = two * x * h1 - two * T::from_usize_lossy(k) * h0;
        h0 = h1;
        h1 = h2;
    }
    Ok(h1)
}
