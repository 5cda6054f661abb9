use super::adaptive::{integrate_adaptive, AdaptiveOptions};
use super::QuadResult;
use crate::error::{domain, precondition, Result};
use crate::scalar::Real;

/// How fast an integrand decays away from its center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decay {
    Compact,
    Gaussian,
    Exponential,
    DoubleExponential,
}

/// Declared support of an integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support<T> {
    Interval(T, T),
    /// `[a, inf)`
    HalfLine(T),
    WholeLine,
}

impl<T: Real> Support<T> {
    pub fn contains(&self, t: T) -> bool {
        match *self {
            Support::Interval(a, b) => t >= a && t <= b,
            Support::HalfLine(a) => t >= a,
            Support::WholeLine => true,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, Support::Interval(..))
    }

    pub fn lower(&self) -> Option<T> {
        match *self {
            Support::Interval(a, _) | Support::HalfLine(a) => Some(a),
            Support::WholeLine => None,
        }
    }

    pub fn upper(&self) -> Option<T> {
        match *self {
            Support::Interval(_, b) => Some(b),
            _ => None,
        }
    }
}

/// A real function of one variable together with the metadata the
/// quadrature engines need: support, decay class, scale and kinks.
#[derive(Clone)]
pub struct Integrand<T, F> {
    f: F,
    support: Support<T>,
    decay: Decay,
    scale: T,
    center: T,
    width: T,
    breakpoints: Vec<T>,
    singular_endpoints: bool,
}

impl<T: Real, F: Fn(T) -> T> Integrand<T, F> {
    pub fn new(f: F, support: Support<T>, decay: Decay) -> Self {
        Self { f, support, decay, scale: T::one(), center: T::zero(), width: T::one(), breakpoints: Vec::new(), singular_endpoints: false }
    }

    /// Points where the integrand has a derivative discontinuity.
    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = T>) -> Self {
        self.breakpoints.extend(points);
        self
    }

    /// Rough peak magnitude, used to size the truncation radius.
    pub fn with_scale(mut self, scale: T) -> Self {
        self.scale = scale.abs().max(T::min_positive_value());
        self
    }

    /// Location and length unit of the decay profile: `exp(-((t-c)/w)^2/2)`
    /// for gaussian decay, `exp(-|t-c|/w)` for exponential.
    pub fn with_profile(mut self, center: T, width: T) -> Self {
        self.center = center;
        self.width = width.abs();
        self
    }

    /// Marks integrable power singularities at the support ends or at
    /// breakpoints.
    pub fn with_singular_endpoints(mut self, on: bool) -> Self {
        self.singular_endpoints = on;
        self
    }

    pub fn singular_endpoints(&self) -> bool {
        self.singular_endpoints
    }

    #[inline]
    pub fn eval(&self, t: T) -> T {
        if self.support.contains(t) {
            (self.f)(t)
        } else {
            T::zero()
        }
    }

    pub fn support(&self) -> Support<T> {
        self.support
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    fn base_radius(&self, tol: T) -> T {
        let ratio = (self.scale / tol).max(T::lit(std::f64::consts::E));
        let r = match self.decay {
            Decay::Compact => T::zero(),
            Decay::Gaussian => (T::lit(2.0) * ratio.ln()).sqrt() + T::lit(2.0),
            Decay::Exponential => ratio.ln() + T::lit(2.0),
            Decay::DoubleExponential => T::lit(6.0),
        };
        r * self.width
    }

    /// Finite interval carrying all but `tol/10` of the mass.
    ///
    /// Starts from the decay-class radius and extends while the integrand at
    /// the cut still exceeds `tol/10` per unit width. The flag is false when
    /// the extension budget ran out.
    pub fn truncation(&self, tol: T) -> Result<(T, T, bool)> {
        if let Support::Interval(a, b) = self.support {
            return Ok((a, b, true));
        }
        if self.decay == Decay::Compact {
            return Err(domain("compact decay declared on an unbounded support"));
        }
        let r = self.base_radius(tol);
        let cut = tol / T::lit(10.0);
        let step = r.max(self.width) / T::lit(2.0);
        let tail_small = |t: T| ((self.f)(t).abs() * self.width) <= cut;
        let extend = |mut edge: T, dir: T| {
            for _ in 0..64 {
                if tail_small(edge) {
                    return (edge, true);
                }
                edge = edge + dir * step;
            }
            (edge, tail_small(edge))
        };
        if self.decay == Decay::DoubleExponential {
            let lo = self.support.lower().unwrap_or(self.center - r).max(self.center - r);
            return Ok((lo, self.center + r, true));
        }
        let (hi, ok_hi) = extend(self.support.lower().unwrap_or(self.center).max(self.center) + r, T::one());
        let (lo, ok_lo) = match self.support.lower() {
            Some(a) => (a, true),
            None => extend(self.center - r, -T::one()),
        };
        Ok((lo, hi, ok_hi && ok_lo))
    }
}

/// Integrates over the declared support, truncating unbounded supports by
/// decay class so the discarded tails stay below `tol/10`.
pub fn integrate_line<T: Real, F: Fn(T) -> T>(f: &Integrand<T, F>, tol: T) -> Result<QuadResult<T>> {
    if !(tol > T::zero()) {
        return Err(precondition("tolerance must be positive"));
    }
    let (lo, hi, _) = f.truncation(tol)?;
    integrate_adaptive(&|t| f.eval(t), lo, hi, &f.breakpoints, AdaptiveOptions::new(tol).with_smooth_endpoints(f.singular_endpoints))
}
