//! Hankel determinants by LU with partial pivoting, for real or complex
//! entries.

use std::ops::Neg;

use num_complex::Complex;
use num_traits::Num;

use crate::error::{precondition, Result};
use crate::scalar::Real;

/// Pivot ratio above which a determinant is flagged as ill conditioned.
pub const ILL_CONDITIONED: f64 = 1e12;

/// Scalar usable as a matrix entry.
pub trait Entry: Num + Copy + Neg<Output = Self> + Send + Sync {
    fn modulus(self) -> f64;
}

impl<T: Real> Entry for T {
    fn modulus(self) -> f64 {
        self.abs().f64()
    }
}

impl<T: Real> Entry for Complex<T> {
    fn modulus(self) -> f64 {
        self.norm().f64()
    }
}

/// Determinant with the ratio of largest to smallest pivot magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Determinant<S> {
    pub value: S,
    pub conditioning: f64,
}

impl<S> Determinant<S> {
    pub fn ill_conditioned(&self) -> bool {
        !(self.conditioning <= ILL_CONDITIONED)
    }
}

/// Determinant of a square matrix given row-major.
pub fn determinant<S: Entry>(mut a: Vec<Vec<S>>) -> Result<Determinant<S>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(precondition("determinant needs a square matrix"));
    }
    if n == 0 {
        return Ok(Determinant { value: S::one(), conditioning: 1.0 });
    }
    let mut det = S::one();
    let (mut pmax, mut pmin) = (0.0f64, f64::INFINITY);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].modulus().partial_cmp(&a[j][k].modulus()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(k);
        let pivot = a[p][k];
        let pm = pivot.modulus();
        pmax = pmax.max(pm);
        pmin = pmin.min(pm);
        if pm == 0.0 {
            return Ok(Determinant { value: S::zero(), conditioning: f64::INFINITY });
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det = det * pivot;
        let (head, tail) = a.split_at_mut(k + 1);
        let row_k = &head[k];
        for row in tail.iter_mut().take(n - k - 1) {
            let factor = row[k] / pivot;
            for (x, &akj) in row.iter_mut().zip(row_k.iter()).take(n).skip(k + 1) {
                *x = *x - factor * akj;
            }
        }
    }
    Ok(Determinant { value: det, conditioning: pmax / pmin })
}

/// `det[h_{i+j}]_{i,j=0}^{n-1}`; needs `2n - 1` entries.
pub fn hankel_determinant<S: Entry>(h: &[S], n: usize) -> Result<Determinant<S>> {
    if n == 0 {
        return Err(precondition("Hankel order must be >= 1"));
    }
    if h.len() < 2 * n - 1 {
        return Err(precondition(format!("Hankel order {n} needs {} entries, got {}", 2 * n - 1, h.len())));
    }
    let m = (0..n).map(|i| (0..n).map(|j| h[i + j]).collect()).collect();
    determinant(m)
}
