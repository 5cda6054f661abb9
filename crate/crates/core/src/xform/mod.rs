//! Fourier and Laplace transforms of weight kernels, their derivative jets
//! and Hankel-structured Wronskians.
//!
//! Conventions: `F mu(x) = int e^{-ixt} dmu(t)`, `L mu(x) = int e^{-xt} dmu(t)`,
//! `W_n(f; x) = det[f^{(i+j)}(x)]_{i,j<n}`.

mod closed;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub use closed::{bessel_laguerre_expression, closed_transform, closed_wronskian, normalized_bessel};

use crate::error::{precondition, Result};
use crate::kernels::{Modulation, Parity, WeightKernel};
use crate::linalg::{hankel_determinant, ILL_CONDITIONED};
use crate::quad::{integrate_line, integrate_oscillatory, Decay, Oscillation};

/// Largest supported Wronskian order.
pub const MAX_WRONSKIAN_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformKind {
    Fourier,
    Laplace,
}

/// Derivatives `0..=k_max` of a transform at one point.
#[derive(Debug, Clone, Serialize)]
pub struct TransformJet {
    pub kind: TransformKind,
    pub x: f64,
    /// Strip offset of a `cosh`/`sinh` modulated jet, zero otherwise.
    pub y: f64,
    pub values: Vec<Complex64>,
    pub errors: Vec<f64>,
}

impl TransformJet {
    pub fn k_max(&self) -> usize {
        self.values.len() - 1
    }

    /// Real parts of the entries.
    pub fn real(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }
}

/// `W_n` of a jet.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WronskianValue {
    pub n: usize,
    pub x: f64,
    pub value: Complex64,
    /// Ratio of the largest to the smallest pivot.
    pub conditioning: f64,
    pub ill_conditioned: bool,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(precondition("tolerance must be positive"))
    }
}

/// `(F w)^{(k)}(x) = (-i)^k F(t^k w)(x)` for `k = 0..=k_max`, each from a
/// cosine and a sine quadrature of `t^k w(t)`. Entries that vanish by parity
/// are exact zeros.
pub fn fourier_jet(k: &WeightKernel, x: f64, k_max: usize, tol: f64) -> Result<TransformJet> {
    check_tol(tol)?;
    if !x.is_finite() {
        return Err(precondition("transform point must be finite"));
    }
    let entries = (0..=k_max)
        .into_par_iter()
        .map(|m| {
            let p = m as i32;
            let f = k.weighted(move |t| t.powi(p));
            let parity = match k.parity() {
                Parity::Even => Some(m % 2 == 0),
                Parity::Odd => Some(m % 2 == 1),
                Parity::None => None,
            };
            let omega = x.abs();
            // parity is Some(true) when t^m w(t) is even.
            let (c, ce) = if parity == Some(false) {
                (0.0, 0.0)
            } else {
                let r = integrate_oscillatory(&f, omega, Oscillation::Cos, tol)?;
                (r.value, r.abs_error)
            };
            let (s, se) = if parity == Some(true) || x == 0.0 {
                (0.0, 0.0)
            } else {
                let r = integrate_oscillatory(&f, omega, Oscillation::Sin, tol)?;
                (r.value * x.signum(), r.abs_error)
            };
            let phase = match m % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, -1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, 1.0),
            };
            Ok((phase * Complex64::new(c, -s), ce + se))
        })
        .collect::<Result<Vec<_>>>()?;
    let (values, errors) = entries.into_iter().unzip();
    Ok(TransformJet { kind: TransformKind::Fourier, x, y: 0.0, values, errors })
}

/// Jets of `F(cosh(y.) w)` and `F(sinh(y.) w)` at `x`: the transforms whose
/// sum is `F w(x + iy)` up to the factor `-i` on the odd part.
pub fn strip_jets(k: &WeightKernel, x: f64, y: f64, k_max: usize, tol: f64) -> Result<(TransformJet, TransformJet)> {
    let c = k.modulate(Modulation::Cosh(y))?;
    let s = k.modulate(Modulation::Sinh(y))?;
    let mut jc = fourier_jet(&c, x, k_max, tol)?;
    let mut js = fourier_jet(&s, x, k_max, tol)?;
    jc.y = y;
    js.y = y;
    Ok((jc, js))
}

/// `(L w)^{(k)}(x) = int (-t)^k w(t) e^{-xt} dt` for `k = 0..=k_max`.
pub fn laplace_jet(k: &WeightKernel, x: f64, k_max: usize, tol: f64) -> Result<TransformJet> {
    check_tol(tol)?;
    if !k.on_half_line() {
        return Err(precondition(format!("Laplace transform needs support in [0, inf), got {}", k.spec_string())));
    }
    if !x.is_finite() || (k.decay() == Decay::Exponential && x * k.decay_width() <= -1.0) {
        return Err(precondition(format!("x = {x} is left of the abscissa of convergence")));
    }
    let entries = (0..=k_max)
        .into_par_iter()
        .map(|m| {
            let p = m as i32;
            let f = k.weighted(move |t| (-t).powi(p) * (-x * t).exp());
            let r = integrate_line(&f, tol)?;
            Ok((Complex64::new(r.value, 0.0), r.abs_error))
        })
        .collect::<Result<Vec<_>>>()?;
    let (values, errors) = entries.into_iter().unzip();
    Ok(TransformJet { kind: TransformKind::Laplace, x, y: 0.0, values, errors })
}

/// `W_n` as the Hankel determinant of the jet entries.
pub fn wronskian(jet: &TransformJet, n: usize) -> Result<WronskianValue> {
    if n > MAX_WRONSKIAN_ORDER {
        return Err(precondition(format!("Wronskian order {n} exceeds {MAX_WRONSKIAN_ORDER}")));
    }
    let d = hankel_determinant(&jet.values, n)?;
    Ok(WronskianValue {
        n,
        x: jet.x,
        value: d.value,
        conditioning: d.conditioning,
        ill_conditioned: d.conditioning > ILL_CONDITIONED,
    })
}

/// `(-1)^{n(n-1)/2}`, the sign in `W_n(F f) = sign * F(nu_n(f))`.
pub fn fourier_sign(n: usize) -> f64 {
    if (n * (n.saturating_sub(1)) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}
