use std::f64::consts::PI;

use super::Normalization;
use crate::error::{Error, Result};
use crate::kernels::KernelId;
use crate::specfun::{factorial, gamma, gauss_2f1, pochhammer, rgamma};

/// Gaussian constant `a_n = n^{-1/2} (2 pi)^{(n-1)/2} prod_{k<n} k!` of
/// `nu_n = a_n e^{-t^2/(2n)}`.
pub fn gaussian_constant(n: usize) -> f64 {
    let nf = n as f64;
    let prod: f64 = (0..n).map(factorial::<f64>).product();
    (2.0 * PI).powf((nf - 1.0) / 2.0) / nf.sqrt() * prod
}

/// Laguerre constant `a_n = Gamma(a+1)^n / Gamma(n(n+a)) prod_{k<n} k! (a+1)_k`
/// of `nu_n = a_n t^{n(n+a)-1} e^{-t}`.
pub fn laguerre_constant(alpha: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    let prod: f64 = (0..n).map(|k| factorial::<f64>(k) * pochhammer(alpha + 1.0, k)).product();
    Ok(gamma(alpha + 1.0)?.powi(n as i32) * rgamma(nf * (nf + alpha)) * prod)
}

fn nonneg_integer(x: f64) -> Option<usize> {
    (x >= 0.0 && x == x.floor() && x < 1e6).then_some(x as usize)
}

/// `C(a) X^{2a+3} Y^b 2F1(-b, a+1; a+5/2; -X^2/(4Y))` with
/// `C(a) = Gamma(3/2) Gamma(a+1) / (2^{2a+1} Gamma(a+5/2))`.
///
/// This one shape covers the Jacobi form (`X = 2-t`, `Y = 2t`) and both
/// branches of the `[0,1]` Jacobi form. For integer `b` the terminating sum
/// is expanded as `sum_k c_k Y^{b-k} (-X^2/4)^k`, which stays finite at `Y = 0`.
fn jacobi_branch(a: f64, b: f64, x: f64, y: f64) -> Result<f64> {
    let c = gamma(1.5)? * gamma(a + 1.0)? * rgamma(a + 2.5) / 2f64.powf(2.0 * a + 1.0);
    let xp = x.powf(2.0 * a + 3.0);
    if let Some(m) = nonneg_integer(b) {
        let w = -x * x / 4.0;
        let mut coef = 1.0;
        let mut sum = 0.0;
        for k in 0..=m {
            if k > 0 {
                let kf = (k - 1) as f64;
                coef *= (-b + kf) * (a + 1.0 + kf) / ((a + 2.5 + kf) * (kf + 1.0));
            }
            sum += coef * y.powi((m - k) as i32) * w.powi(k as i32);
        }
        return Ok(c * xp * sum);
    }
    let z = -x * x / (4.0 * y);
    Ok(c * xp * y.powf(b) * gauss_2f1(-b, a + 1.0, a + 2.5, z)?)
}

fn jacobi_raw(alpha: f64, beta: f64, t: f64) -> Result<f64> {
    if t.abs() >= 2.0 {
        return Ok(0.0);
    }
    if t >= 0.0 {
        jacobi_branch(alpha, beta, 2.0 - t, 2.0 * t)
    } else {
        jacobi_branch(beta, alpha, 2.0 + t, -2.0 * t)
    }
}

fn ujacobi_raw(alpha: f64, beta: f64, t: f64) -> Result<f64> {
    if t <= 0.0 || t >= 2.0 {
        return Ok(0.0);
    }
    if t <= 1.0 {
        jacobi_branch(alpha, beta, t, 1.0 - t)
    } else {
        jacobi_branch(beta, alpha, 2.0 - t, t - 1.0)
    }
}

fn tent_raw(t: f64) -> f64 {
    let a = t.abs();
    if a >= 4.0 {
        0.0
    } else if a >= 2.0 {
        (4.0 - a).powi(5) / 480.0
    } else {
        ((4.0 - a).powi(5) - 4.0 * (2.0 - a).powi(5) - 80.0 * (2.0 - a).powi(3)) / 480.0
    }
}

/// Closed-form `nu_n(t)` of a catalog kernel.
///
/// Gaussian and Laguerre for every `n`; Jacobi, Gegenbauer, box, tent and
/// the `[0,1]` Jacobi kernel for `n = 2`. Jacobi-type forms need
/// terminating hypergeometric parameters unless `|z| < 1`.
pub fn nu_closed(id: KernelId, n: usize, t: f64, norm: Normalization) -> Result<f64> {
    let none = || Error::NoClosedForm { kernel: format!("{id:?}"), n };
    if n == 0 {
        return Err(none());
    }
    let to_norm = |transform: f64| transform * norm.factor(n) * factorial::<f64>(n);
    let from_raw = |raw: f64| raw * norm.factor(n);
    match id {
        KernelId::Gaussian => Ok(to_norm(gaussian_constant(n) * (-t * t / (2.0 * n as f64)).exp())),
        KernelId::Laguerre { alpha } => {
            if t <= 0.0 {
                return Ok(0.0);
            }
            let nf = n as f64;
            let p = nf * (nf + alpha) - 1.0;
            Ok(to_norm(laguerre_constant(alpha, n)? * t.powf(p) * (-t).exp()))
        }
        _ if n == 1 => Err(none()),
        _ if n > 2 => Err(none()),
        KernelId::Box => Ok(from_raw(if t.abs() >= 2.0 { 0.0 } else { (2.0 - t.abs()).powi(3) / 3.0 })),
        KernelId::Tent => Ok(from_raw(tent_raw(t))),
        KernelId::Jacobi { alpha, beta } => Ok(from_raw(jacobi_raw(alpha, beta, t)?)),
        KernelId::Gegenbauer { lambda } => Ok(from_raw(jacobi_raw(lambda - 0.5, lambda - 0.5, t)?)),
        KernelId::UJacobi { alpha, beta } => Ok(from_raw(ujacobi_raw(alpha, beta, t)?)),
        KernelId::UnitBox => Ok(from_raw(ujacobi_raw(0.0, 0.0, t)?)),
        KernelId::RiemannPhi => Err(none()),
    }
}
