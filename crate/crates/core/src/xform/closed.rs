use std::f64::consts::PI;

use num_complex::Complex64;

use super::{fourier_sign, TransformKind};
use crate::error::{Error, Result};
use crate::kernels::KernelId;
use crate::specfun::{bessel_j, factorial, gamma, kummer_1f1, pochhammer, rgamma, RealOrder};

fn no_closed_form(id: KernelId, n: usize) -> Error {
    Error::NoClosedForm { kernel: format!("{id:?}"), n }
}

fn beta_fn(p: f64, q: f64) -> Result<f64> {
    Ok(gamma(p)? * gamma(q)? * rgamma(p + q))
}

/// `(2/x)^mu J_mu(x) = sum_k (-1)^k (x/2)^{2k} / (k! Gamma(k+mu+1))`, an even
/// entire function with value `1/Gamma(mu+1)` at 0.
pub fn normalized_bessel(mu: f64, x: f64) -> Result<f64> {
    let x = x.abs();
    if x > 2.0 {
        return Ok((2.0 / x).powf(mu) * bessel_j(RealOrder::new(mu)?, x)?);
    }
    let q = -0.25 * x * x;
    let mut term = rgamma(mu + 1.0);
    let mut sum = term;
    for k in 1..200 {
        term *= q / (k as f64 * (k as f64 + mu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    Ok(sum)
}

/// `J'(x)^2 - J(x) J''(x)` for `J(x) = x^{-lambda} J_lambda(x)`.
pub fn bessel_laguerre_expression(lambda: f64, x: f64) -> Result<f64> {
    let g0 = normalized_bessel(lambda, x)?;
    let g1 = normalized_bessel(lambda + 1.0, x)?;
    let g2 = normalized_bessel(lambda + 2.0, x)?;
    let q = 0.25 * x * x;
    Ok(4f64.powf(-lambda) * (q * g1 * g1 + 0.5 * g0 * g1 - q * g0 * g2))
}

/// `x - sin x` without cancellation.
fn x_minus_sin(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        return x - x.sin();
    }
    let x2 = x * x;
    let mut term = x * x2 / 6.0;
    let mut sum = term;
    let mut k = 2.0;
    while term.abs() > 1e-18 * sum.abs() {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        k += 1.0;
    }
    sum
}

/// `(2 cosh x - x^2 - 2) e^{-x} / x^4`.
fn unitbox_laplace_w2(x: f64) -> f64 {
    if x.abs() < 1.0 {
        let x2 = x * x;
        let mut sum = 0.0;
        let mut term = 2.0_f64 / 24.0;
        let mut k = 0.0;
        while term.abs() > 1e-18 {
            sum += term;
            term *= x2 / ((2.0 * k + 5.0) * (2.0 * k + 6.0));
            k += 1.0;
        }
        sum * (-x).exp()
    } else {
        (1.0 + (-2.0 * x).exp() - (x * x + 2.0) * (-x).exp()) / x.powi(4)
    }
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Closed-form transform of an unmodulated catalog kernel.
pub fn closed_transform(id: KernelId, kind: TransformKind, x: f64) -> Result<Complex64> {
    let i = Complex64::i();
    match kind {
        TransformKind::Fourier => match id {
            KernelId::Gaussian => Ok(real((2.0 * PI).sqrt() * (-0.5 * x * x).exp())),
            KernelId::Laguerre { alpha } => Ok(gamma(alpha + 1.0)? * (1.0 + i * x).powf(-alpha - 1.0)),
            KernelId::Jacobi { alpha, beta } => {
                let pre = 2f64.powf(alpha + beta + 1.0) * beta_fn(beta + 1.0, alpha + 1.0)?;
                let f = kummer_1f1(beta + 1.0, alpha + beta + 2.0, Complex64::new(0.0, -2.0 * x))?;
                Ok(pre * Complex64::from_polar(1.0, x) * f)
            }
            KernelId::Gegenbauer { lambda } => {
                Ok(real(PI.sqrt() * gamma(lambda + 0.5)? * normalized_bessel(lambda, x)?))
            }
            KernelId::Box => Ok(real(if x == 0.0 { 2.0 } else { 2.0 * x.sin() / x })),
            KernelId::UnitBox => {
                let sinc = if x == 0.0 { 1.0 } else { (0.5 * x).sin() / (0.5 * x) };
                Ok(Complex64::from_polar(sinc, -0.5 * x))
            }
            KernelId::Tent => {
                let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
                Ok(real(sinc * sinc))
            }
            KernelId::UJacobi { alpha, beta } => {
                let pre = beta_fn(alpha + 1.0, beta + 1.0)?;
                Ok(pre * kummer_1f1(alpha + 1.0, alpha + beta + 2.0, Complex64::new(0.0, -x))?)
            }
            KernelId::RiemannPhi => Err(no_closed_form(id, 1)),
        },
        TransformKind::Laplace => match id {
            KernelId::Laguerre { alpha } => {
                if x <= -1.0 {
                    return Err(crate::error::precondition("Laplace transform of laguerre needs x > -1"));
                }
                Ok(real(gamma(alpha + 1.0)? * (1.0 + x).powf(-alpha - 1.0)))
            }
            KernelId::UnitBox => Ok(real(if x == 0.0 { 1.0 } else { -(-x).exp_m1() / x })),
            KernelId::UJacobi { alpha, beta } => {
                let pre = beta_fn(alpha + 1.0, beta + 1.0)?;
                Ok(pre * kummer_1f1(alpha + 1.0, alpha + beta + 2.0, real(-x))?)
            }
            _ => Err(no_closed_form(id, 1)),
        },
    }
}

/// Closed-form `W_n` of a catalog transform.
pub fn closed_wronskian(id: KernelId, kind: TransformKind, n: usize, x: f64) -> Result<Complex64> {
    if n == 1 {
        return closed_transform(id, kind, x);
    }
    let nf = n as f64;
    let facts: f64 = (0..n).map(factorial::<f64>).product();
    match (kind, id) {
        (TransformKind::Fourier, KernelId::Gaussian) => {
            Ok(real(fourier_sign(n) * (2.0 * PI).powf(0.5 * nf) * facts * (-0.5 * nf * x * x).exp()))
        }
        (TransformKind::Fourier, KernelId::Laguerre { alpha }) => {
            let c = laguerre_wronskian_constant(alpha, n)?;
            Ok(fourier_sign(n) * c * (1.0 + Complex64::i() * x).powf(-nf * (nf + alpha)))
        }
        (TransformKind::Fourier, KernelId::Box) if n == 2 => {
            let s = x.sin();
            let v = if x == 0.0 { -4.0 / 3.0 } else { -4.0 * x_minus_sin(x) * (x + s) / x.powi(4) };
            Ok(real(v))
        }
        (TransformKind::Fourier, KernelId::Gegenbauer { lambda }) if n == 2 => {
            let g = gamma(lambda + 0.5)?;
            Ok(real(-PI * g * g * 4f64.powf(lambda) * bessel_laguerre_expression(lambda, x)?))
        }
        (TransformKind::Laplace, KernelId::Laguerre { alpha }) => {
            let c = laguerre_wronskian_constant(alpha, n)?;
            Ok(real(c * (1.0 + x).powf(-nf * (nf + alpha))))
        }
        (TransformKind::Laplace, KernelId::UnitBox) if n == 2 => Ok(real(unitbox_laplace_w2(x))),
        _ => Err(no_closed_form(id, n)),
    }
}

/// `Gamma(a+1)^n prod_{k<n} k! (a+1)_k`.
fn laguerre_wronskian_constant(alpha: f64, n: usize) -> Result<f64> {
    let prod: f64 = (0..n).map(|k| factorial::<f64>(k) * pochhammer(alpha + 1.0, k)).product();
    Ok(gamma(alpha + 1.0)?.powi(n as i32) * prod)
}
