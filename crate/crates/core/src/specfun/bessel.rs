use super::gamma::{gamma, rgamma};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Order of a Bessel function, restricted to `nu > -1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RealOrder<T>(T);

impl<T: Real> RealOrder<T> {
    pub fn new(nu: T) -> Result<Self> {
        if nu.is_finite() && nu > -T::one() {
            Ok(Self(nu))
        } else {
            Err(domain(format!("Bessel order must be finite and > -1, got {}", nu)))
        }
    }

    pub fn value(self) -> T {
        self.0
    }

    fn is_integer(self) -> bool {
        self.0 == self.0.floor()
    }
}

/// Bessel function of the first kind `J_nu(x)`.
///
/// Power series below `x = 12`, Miller backward recurrence above,
/// normalized by `(x/2)^nu = sum_k (nu+2k) Gamma(nu+k)/k! J_{nu+2k}(x)`.
/// Negative `x` is accepted only for integer orders.
pub fn bessel_j<T: Real>(order: RealOrder<T>, x: T) -> Result<T> {
    let nu = order.value();
    if !x.is_finite() {
        return Err(domain("Bessel argument must be finite"));
    }
    if x < T::zero() {
        if !order.is_integer() {
            return Err(domain("J_nu(x) for x < 0 requires integer order"));
        }
        let v = bessel_j(order, -x)?;
        let odd = (nu.f64() as i64) % 2 != 0;
        return Ok(if odd { -v } else { v });
    }
    if x == T::zero() {
        return if nu == T::zero() {
            Ok(T::one())
        } else if nu > T::zero() {
            Ok(T::zero())
        } else {
            Err(Error::Overflow)
        };
    }
    let threshold = T::lit(12.0);
    if x < threshold {
        series(nu, x)
    } else {
        miller(nu, x)
    }
}

fn series<T: Real>(nu: T, x: T) -> Result<T> {
    let q = x * x / T::lit(4.0);
    let mut term = rgamma(nu + T::one());
    let mut sum = term;
    let eps = T::epsilon();
    for k in 1..2000usize {
        let kf = T::from_usize_lossy(k);
        term = term * (-q) / (kf * (kf + nu));
        sum = sum + term;
        if term.abs() <= eps * sum.abs() && kf * kf > q {
            return Ok((x / T::lit(2.0)).powf(nu) * sum);
        }
    }
    Err(Error::NoConvergence { estimate: sum.f64(), abs_error: term.abs().f64(), evaluations: 2000 })
}

fn miller<T: Real>(nu: T, x: T) -> Result<T> {
    let xf = x.f64();
    let mut n = (xf + 30.0 + 4.0 * xf.cbrt() + (40.0 * xf).sqrt()).ceil() as usize;
    n += n % 2;
    let big = T::max_value().sqrt();
    let two = T::lit(2.0);
    let mut p_next = T::zero();
    let mut p = T::min_positive_value().sqrt();
    let mut norm = T::zero();
    // weights W_0 = Gamma(nu+1), W_k = (nu+2k) Gamma(nu+k)/k! on p_{2k}
    let weight = |k: usize| -> Result<T> {
        if k == 0 {
            return gamma(nu + T::one());
        }
        let kf = T::from_usize_lossy(k);
        Ok((nu + two * kf) * gamma(nu + kf)? * rgamma(kf + T::one()))
    };
    for k in (0..=n).rev() {
        if k % 2 == 0 {
            norm = norm + weight(k / 2)? * p;
        }
        if k == 0 {
            break;
        }
        let prev = two * (nu + T::from_usize_lossy(k)) / x * p - p_next;
        p_next = p;
        p = prev;
        if p.abs() > big {
            let s = T::one() / big;
            p = p * s;
            p_next = p_next * s;
            norm = norm * s;
        }
    }
    Ok(p * (x / two).powf(nu) / norm)
}
