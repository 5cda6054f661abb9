//! Catalog of weight kernels with evaluation, metadata, moments and
//! cosh/sinh/power modulation.

mod phi;
mod spec;

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

pub use phi::phi;
pub use spec::parse_kernel;

use crate::error::{domain, Error, Result};
use crate::quad::{integrate_line, Decay, Integrand, Support};
use crate::specfun::{gamma, rgamma};

/// Catalog kernel and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kernel", rename_all = "kebab-case")]
pub enum KernelId {
    /// `e^{-t^2/2}`
    Gaussian,
    /// `t^alpha e^{-t}` on `[0, inf)`
    Laguerre { alpha: f64 },
    /// `(1-t)^alpha (1+t)^beta` on `[-1, 1]`
    Jacobi { alpha: f64, beta: f64 },
    /// `(1-t^2)^{lambda-1/2}` on `[-1, 1]`
    Gegenbauer { lambda: f64 },
    /// indicator of `[-1, 1]`
    Box,
    /// indicator of `[0, 1]`
    UnitBox,
    /// `(2-|t|)_+ / 4`
    Tent,
    /// `t^alpha (1-t)^beta` on `[0, 1]`
    UJacobi { alpha: f64, beta: f64 },
    /// the Riemann kernel `Phi`
    RiemannPhi,
}

/// Pointwise factor applied to a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "param", rename_all = "kebab-case")]
pub enum Modulation {
    Cosh(f64),
    Sinh(f64),
    Power(u32),
}

impl Modulation {
    #[inline]
    fn factor(self, t: f64) -> f64 {
        match self {
            Modulation::Cosh(y) => (y * t).cosh(),
            Modulation::Sinh(y) => (y * t).sinh(),
            Modulation::Power(k) => t.powi(k as i32),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
    None,
}

/// A weight function with its support, parity and decay metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightKernel {
    id: KernelId,
    mods: Vec<Modulation>,
    support: Support<f64>,
    parity: Parity,
    decay: Decay,
    width: f64,
    singular_endpoints: bool,
}

/// Builds a catalog kernel after validating its parameters.
pub fn make_kernel(id: KernelId) -> Result<WeightKernel> {
    let check = |name: &str, v: f64, min: f64| {
        if v.is_finite() && v > min {
            Ok(())
        } else {
            Err(domain(format!("{name} must be > {min}, got {v}")))
        }
    };
    let (support, parity, decay, singular) = match id {
        KernelId::Gaussian => (Support::WholeLine, Parity::Even, Decay::Gaussian, false),
        KernelId::Laguerre { alpha } => {
            check("alpha", alpha, -1.0)?;
            (Support::HalfLine(0.0), Parity::None, Decay::Exponential, alpha < 0.0)
        }
        KernelId::Jacobi { alpha, beta } => {
            check("alpha", alpha, -1.0)?;
            check("beta", beta, -1.0)?;
            let parity = if alpha == beta { Parity::Even } else { Parity::None };
            (Support::Interval(-1.0, 1.0), parity, Decay::Compact, alpha < 0.0 || beta < 0.0)
        }
        KernelId::Gegenbauer { lambda } => {
            check("lambda", lambda, -0.5)?;
            (Support::Interval(-1.0, 1.0), Parity::Even, Decay::Compact, lambda < 0.5)
        }
        KernelId::Box => (Support::Interval(-1.0, 1.0), Parity::Even, Decay::Compact, false),
        KernelId::UnitBox => (Support::Interval(0.0, 1.0), Parity::None, Decay::Compact, false),
        KernelId::Tent => (Support::Interval(-2.0, 2.0), Parity::Even, Decay::Compact, false),
        KernelId::UJacobi { alpha, beta } => {
            check("alpha", alpha, -1.0)?;
            check("beta", beta, -1.0)?;
            (Support::Interval(0.0, 1.0), Parity::None, Decay::Compact, alpha < 0.0 || beta < 0.0)
        }
        KernelId::RiemannPhi => (Support::WholeLine, Parity::Even, Decay::DoubleExponential, false),
    };
    Ok(WeightKernel { id, mods: Vec::new(), support, parity, decay, width: 1.0, singular_endpoints: singular })
}

fn base_eval(id: KernelId, t: f64) -> f64 {
    match id {
        KernelId::Gaussian => (-0.5 * t * t).exp(),
        KernelId::Laguerre { alpha } => {
            if t < 0.0 {
                0.0
            } else if alpha == 0.0 {
                (-t).exp()
            } else {
                t.powf(alpha) * (-t).exp()
            }
        }
        KernelId::Jacobi { alpha, beta } => {
            if t.abs() > 1.0 {
                0.0
            } else {
                pow0(1.0 - t, alpha) * pow0(1.0 + t, beta)
            }
        }
        KernelId::Gegenbauer { lambda } => {
            if t.abs() > 1.0 {
                0.0
            } else {
                pow0(1.0 - t * t, lambda - 0.5)
            }
        }
        KernelId::Box => {
            if t.abs() <= 1.0 {
                1.0
            } else {
                0.0
            }
        }
        KernelId::UnitBox => {
            if (0.0..=1.0).contains(&t) {
                1.0
            } else {
                0.0
            }
        }
        KernelId::Tent => 0.25 * (2.0 - t.abs()).max(0.0),
        KernelId::UJacobi { alpha, beta } => {
            if !(0.0..=1.0).contains(&t) {
                0.0
            } else {
                pow0(t, alpha) * pow0(1.0 - t, beta)
            }
        }
        KernelId::RiemannPhi => phi(t),
    }
}

/// `x^p` with `x^0 = 1` including at `x = 0`.
#[inline]
fn pow0(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else if p == p.round() && p.abs() < 64.0 {
        x.powi(p as i32)
    } else {
        x.powf(p)
    }
}

/// `w(t)` for a kernel; zero off the support.
pub fn evaluate(k: &WeightKernel, t: f64) -> f64 {
    k.evaluate(t)
}

/// Moment `int t^m w(t) dt`.
pub fn moment(k: &WeightKernel, m: usize, tol: f64) -> Result<f64> {
    k.moment(m, tol)
}

/// Applies a pointwise modulation.
pub fn modulate(k: &WeightKernel, m: Modulation) -> Result<WeightKernel> {
    k.modulate(m)
}

impl WeightKernel {
    pub fn id(&self) -> KernelId {
        self.id
    }

    pub fn modulations(&self) -> &[Modulation] {
        &self.mods
    }

    pub fn support(&self) -> Support<f64> {
        self.support
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn singular_endpoints(&self) -> bool {
        self.singular_endpoints
    }

    /// True when the kernel may take negative values (after `sinh` or odd
    /// power modulation).
    pub fn is_signed(&self) -> bool {
        let odd_power = self.mods.iter().any(|m| matches!(m, Modulation::Power(k) if k % 2 == 1));
        let sinh = self.mods.iter().any(|m| matches!(m, Modulation::Sinh(_)));
        let lower_neg = self.support.lower().map_or(true, |a| a < 0.0);
        sinh || (odd_power && lower_neg)
    }

    /// True when the support lies in `[0, inf)`.
    pub fn on_half_line(&self) -> bool {
        self.support.lower().is_some_and(|a| a >= 0.0)
    }

    /// Unmodulated catalog kernel without any modulations.
    pub fn is_plain(&self) -> bool {
        self.mods.is_empty()
    }

    #[inline]
    pub fn evaluate(&self, t: f64) -> f64 {
        if !self.support.contains(t) {
            return 0.0;
        }
        let mut v = base_eval(self.id, t);
        for m in &self.mods {
            v *= m.factor(t);
        }
        v
    }

    /// Points where the kernel or one of its derivatives jumps.
    pub fn kinks(&self) -> Vec<f64> {
        match self.id {
            KernelId::Box | KernelId::Jacobi { .. } | KernelId::Gegenbauer { .. } => vec![-1.0, 1.0],
            KernelId::Tent => vec![-2.0, 0.0, 2.0],
            KernelId::UnitBox | KernelId::UJacobi { .. } => vec![0.0, 1.0],
            KernelId::Laguerre { .. } => vec![0.0],
            KernelId::Gaussian | KernelId::RiemannPhi => Vec::new(),
        }
    }

    /// Length unit of the decay profile.
    pub fn decay_width(&self) -> f64 {
        self.width
    }

    /// Rough peak magnitude on the support.
    pub fn scale(&self) -> f64 {
        let mut s = match self.id {
            KernelId::RiemannPhi => phi(0.0),
            KernelId::Laguerre { alpha } if alpha > 0.0 => alpha.powf(alpha) * (-alpha).exp(),
            KernelId::Jacobi { alpha, beta } => 2f64.powf(alpha.max(0.0) + beta.max(0.0)),
            _ => 1.0,
        };
        for m in &self.mods {
            s *= match *m {
                Modulation::Cosh(y) | Modulation::Sinh(y) => match self.decay {
                    Decay::Gaussian => (0.5 * y * y).exp(),
                    Decay::Exponential => 1.0,
                    _ => (y.abs() * self.radius()).cosh(),
                },
                Modulation::Power(k) => self.radius().max(1.0).powi(k as i32),
            };
        }
        s.max(f64::MIN_POSITIVE)
    }

    /// Half-width of the bulk of the support.
    fn radius(&self) -> f64 {
        match self.support {
            Support::Interval(a, b) => a.abs().max(b.abs()),
            _ => match self.decay {
                Decay::DoubleExponential => 1.0,
                _ => 4.0 * self.width,
            },
        }
    }

    /// The kernel as a quadrature integrand.
    pub fn integrand(&self) -> Integrand<f64, impl Fn(f64) -> f64 + '_> {
        self.weighted(|_| 1.0)
    }

    /// `t -> g(t) w(t)` with this kernel's quadrature metadata.
    pub fn weighted<'a, G: Fn(f64) -> f64 + 'a>(&'a self, g: G) -> Integrand<f64, impl Fn(f64) -> f64 + 'a> {
        Integrand::new(move |t| g(t) * self.evaluate(t), self.support, self.decay)
            .with_breakpoints(self.kinks())
            .with_scale(self.scale())
            .with_profile(0.0, self.width)
            .with_singular_endpoints(self.singular_endpoints)
    }

    /// Closed-form moment, when the catalog has one.
    pub fn closed_moment(&self, m: usize) -> Option<f64> {
        let mut shift = 0usize;
        for md in &self.mods {
            match *md {
                Modulation::Power(k) => shift += k as usize,
                Modulation::Cosh(0.0) => {}
                _ => return None,
            }
        }
        closed_base_moment(self.id, m + shift)
    }

    /// Moment `int t^m w(t) dt`, closed form when available.
    pub fn moment(&self, m: usize, tol: f64) -> Result<f64> {
        if let Some(v) = self.closed_moment(m) {
            return Ok(v);
        }
        if self.is_even() && m % 2 == 1 || self.parity == Parity::Odd && m % 2 == 0 {
            return Ok(0.0);
        }
        let f = self.weighted(move |t| t.powi(m as i32));
        Ok(integrate_line(&f, tol)?.value)
    }

    /// Applies `cosh(y t)`, `sinh(y t)` or `t^k`.
    pub fn modulate(&self, m: Modulation) -> Result<WeightKernel> {
        let mut out = self.clone();
        match m {
            Modulation::Cosh(y) | Modulation::Sinh(y) => {
                if !y.is_finite() {
                    return Err(Error::Decay(format!("modulation parameter {y} not finite")));
                }
                if let Modulation::Cosh(y) = m {
                    if y == 0.0 {
                        return Ok(out);
                    }
                }
                if self.decay == Decay::Exponential {
                    let rate = 1.0 / self.width - y.abs();
                    if rate <= 0.0 {
                        return Err(Error::Decay(format!(
                            "e^{{|{y}| t}} growth is not dominated by the e^{{-{}t}} decay",
                            1.0 / self.width
                        )));
                    }
                    out.width = 1.0 / rate;
                }
                if matches!(m, Modulation::Sinh(_)) {
                    out.parity = match self.parity {
                        Parity::Even => Parity::Odd,
                        Parity::Odd => Parity::Even,
                        Parity::None => Parity::None,
                    };
                }
            }
            Modulation::Power(k) => {
                if k % 2 == 1 {
                    out.parity = match self.parity {
                        Parity::Even => Parity::Odd,
                        Parity::Odd => Parity::Even,
                        Parity::None => Parity::None,
                    };
                }
            }
        }
        out.mods.push(m);
        Ok(out)
    }

    /// Canonical spec string, accepted by [`parse_kernel`].
    pub fn spec_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for WeightKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.id {
            KernelId::Gaussian => write!(f, "gaussian")?,
            KernelId::Laguerre { alpha } => write!(f, "laguerre:alpha={alpha}")?,
            KernelId::Jacobi { alpha, beta } => write!(f, "jacobi:alpha={alpha},beta={beta}")?,
            KernelId::Gegenbauer { lambda } => write!(f, "gegenbauer:lambda={lambda}")?,
            KernelId::Box => write!(f, "box")?,
            KernelId::UnitBox => write!(f, "unitbox")?,
            KernelId::Tent => write!(f, "tent")?,
            KernelId::UJacobi { alpha, beta } => write!(f, "ujacobi:alpha={alpha},beta={beta}")?,
            KernelId::RiemannPhi => write!(f, "riemann-phi")?,
        }
        for m in &self.mods {
            match m {
                Modulation::Cosh(y) => write!(f, ":cosh={y}")?,
                Modulation::Sinh(y) => write!(f, ":sinh={y}")?,
                Modulation::Power(k) => write!(f, ":pow={k}")?,
            }
        }
        Ok(())
    }
}

fn beta_fn(a: f64, b: f64) -> f64 {
    match (gamma(a), gamma(b)) {
        (Ok(ga), Ok(gb)) => ga * gb * rgamma(a + b),
        _ => f64::NAN,
    }
}

fn binomial(m: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

fn jacobi_moment(alpha: f64, beta: f64, m: usize) -> f64 {
    // t = 2u - 1: 2^{a+b+1} sum_j C(m,j) 2^j (-1)^{m-j} B(b+j+1, a+1)
    let pre = 2f64.powf(alpha + beta + 1.0);
    let s: f64 = (0..=m)
        .map(|j| {
            let sign = if (m - j) % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(m, j) * 2f64.powi(j as i32) * beta_fn(beta + j as f64 + 1.0, alpha + 1.0)
        })
        .sum();
    pre * s
}

fn closed_base_moment(id: KernelId, m: usize) -> Option<f64> {
    let mf = m as f64;
    let even = m % 2 == 0;
    Some(match id {
        KernelId::Gaussian => {
            if !even {
                0.0
            } else {
                let dfact = (1..m).step_by(2).fold(1.0, |acc, k| acc * k as f64);
                dfact * (2.0 * PI).sqrt()
            }
        }
        KernelId::Laguerre { alpha } => gamma(alpha + mf + 1.0).ok()?,
        KernelId::Jacobi { alpha, beta } => jacobi_moment(alpha, beta, m),
        KernelId::Gegenbauer { lambda } => {
            if !even {
                0.0
            } else {
                jacobi_moment(lambda - 0.5, lambda - 0.5, m)
            }
        }
        KernelId::Box => {
            if even {
                2.0 / (mf + 1.0)
            } else {
                0.0
            }
        }
        KernelId::UnitBox => 1.0 / (mf + 1.0),
        KernelId::Tent => {
            if even {
                0.5 * 2f64.powi(m as i32 + 2) / ((mf + 1.0) * (mf + 2.0))
            } else {
                0.0
            }
        }
        KernelId::UJacobi { alpha, beta } => beta_fn(alpha + mf + 1.0, beta + 1.0),
        KernelId::RiemannPhi => return None,
    })
}

#[cfg(test)]
mod tests;
