use num_complex::Complex;

use super::gamma::{gamma, rgamma};
use crate::error::{domain, Error, Result};
use crate::scalar::Real;

const MAX_TERMS: usize = 200_000;
/// Below this modulus the confluent series is summed in double-double.
const KUMMER_SERIES_RADIUS: f64 = 30.0;

fn nonpositive_integer<T: Real>(x: T) -> Option<usize> {
    (x <= T::zero() && x == x.floor()).then(|| (-x).to_usize().unwrap_or(usize::MAX))
}

/// Number of terms after which the series terminates, if it does so before
/// reaching a pole of the lower parameter.
fn termination<T: Real>(uppers: &[T], c: T) -> Result<Option<usize>> {
    let stop = uppers.iter().filter_map(|&u| nonpositive_integer(u)).min();
    match (stop, nonpositive_integer(c)) {
        (_, None) => Ok(stop),
        (Some(m), Some(p)) if m < p => Ok(Some(m)),
        (_, Some(_)) => Err(Error::Pole(c.f64())),
    }
}

/// Gauss hypergeometric function `2F1(a, b; c; z)` for real arguments.
///
/// Terminating series are summed for any `z`. Otherwise `|z| < 1` is
/// required; the Pfaff transformation maps `z < 0` into `(0, 1/2)`.
pub fn gauss_2f1<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(domain("2F1 arguments must be finite"));
    }
    if let Some(m) = termination(&[a, b], c)? {
        return Ok(series_2f1(a, b, c, z, m + 1, true)?.0);
    }
    if z.abs() >= T::one() {
        return Err(domain(format!("non-terminating 2F1 requires |z| < 1, got {}", z)));
    }
    if z < T::zero() {
        let w = z / (z - T::one());
        let s = series_2f1(a, c - b, c, w, MAX_TERMS, false)?;
        return Ok((T::one() - z).powf(-a) * s.0);
    }
    Ok(series_2f1(a, b, c, z, MAX_TERMS, false)?.0)
}

fn series_2f1<T: Real>(a: T, b: T, c: T, z: T, max_terms: usize, exhaust: bool) -> Result<(T, usize)> {
    let mut term = T::one();
    let mut sum = T::one();
    for k in 0..max_terms {
        let kf = T::from_usize_lossy(k);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + T::one())) * z;
        sum = sum + term;
        if term == T::zero() || (!exhaust && term.abs() <= T::epsilon() * sum.abs() * T::lit(0.1) && k > 2) {
            return Ok((sum, k + 1));
        }
    }
    if max_terms < MAX_TERMS {
        return Ok((sum, max_terms));
    }
    Err(Error::NoConvergence { estimate: sum.f64(), abs_error: term.abs().f64(), evaluations: max_terms })
}

/// Kummer confluent hypergeometric function `1F1(a; c; z)` for real
/// parameters and complex argument.
///
/// Double-double power series for `|z| <= 30` (or when terminating), the
/// two-sided large-argument expansion beyond.
pub fn kummer_1f1<T: Real>(a: T, c: T, z: Complex<T>) -> Result<Complex<T>> {
    if !(a.is_finite() && c.is_finite() && z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("1F1 arguments must be finite"));
    }
    let stop = termination(&[a], c)?;
    if stop.is_some() || z.norm() <= T::lit(KUMMER_SERIES_RADIUS) {
        return kummer_series(a, c, z, stop);
    }
    kummer_asymptotic(a, c, z)
}

fn kummer_series<T: Real>(a: T, c: T, z: Complex<T>, stop: Option<usize>) -> Result<Complex<T>> {
    let zd = CDd::from(z);
    let mut term = CDd::from(Complex::new(T::one(), T::zero()));
    let mut sum = term;
    let limit = stop.map_or(MAX_TERMS, |m| m + 1);
    let zn = z.norm();
    let tol = T::epsilon() * T::lit(1e-3);
    for k in 0..limit {
        let kf = T::from_usize_lossy(k);
        let ratio = Dd::from(a + kf).div(Dd::from(c + kf).mul(Dd::from(kf + T::one())));
        term = term.mul(zd).scale(ratio);
        sum = sum.add(term);
        let tn = term.hi_norm();
        if tn == T::zero() || (kf > zn && tn <= tol * sum.hi_norm()) {
            return Ok(sum.hi());
        }
    }
    if stop.is_some() {
        return Ok(sum.hi());
    }
    let s = sum.hi();
    Err(Error::NoConvergence { estimate: s.norm().f64(), abs_error: term.hi_norm().f64(), evaluations: limit })
}

fn kummer_asymptotic<T: Real>(a: T, c: T, z: Complex<T>) -> Result<Complex<T>> {
    let z = if z.im == T::zero() { Complex::new(z.re, T::zero()) } else { z };
    let one = T::one();
    let pi = T::PI();
    let lz = z.ln();
    // e^z z^{a-c} / Gamma(a) * sum (1-a)_s (c-a)_s / s! z^{-s}
    let s1 = asymptotic_sum(one - a, c - a, z.inv());
    // e^{+-i pi a} z^{-a} / Gamma(c-a) * sum (a)_s (a-c+1)_s / s! (-z)^{-s}
    let s2 = asymptotic_sum(a, a - c + one, (-z).inv());
    let phase = if z.im >= T::zero() { pi * a } else { -pi * a };
    let t1 = (z + lz * (a - c)).exp() * s1 * rgamma(a);
    let t2 = (Complex::new(T::zero(), phase) - lz * a).exp() * s2 * rgamma(c - a);
    Ok((t1 + t2) * gamma(c)?)
}

fn asymptotic_sum<T: Real>(p: T, q: T, w: Complex<T>) -> Complex<T> {
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = term;
    let mut prev = T::infinity();
    for s in 0..200usize {
        let sf = T::from_usize_lossy(s);
        let next = term * w * ((p + sf) * (q + sf) / (sf + T::one()));
        let n = next.norm();
        if n >= prev {
            break;
        }
        sum = sum + next;
        term = next;
        prev = n;
        if n <= T::epsilon() * sum.norm() * T::lit(0.1) {
            break;
        }
    }
    sum
}

#[derive(Debug, Clone, Copy)]
struct Dd<T> {
    hi: T,
    lo: T,
}

fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum<T: Real>(a: T, b: T) -> Dd<T> {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl<T: Real> Dd<T> {
    fn from(x: T) -> Self {
        Dd { hi: x, lo: T::zero() }
    }

    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    fn neg(self) -> Self {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Dd::from(q1)).neg());
        let q2 = r.hi / o.hi;
        let r2 = r.add(o.mul(Dd::from(q2)).neg());
        let q3 = r2.hi / o.hi;
        let (s, e) = two_sum(q1, q2);
        quick_two_sum(s, e + q3)
    }
}

#[derive(Debug, Clone, Copy)]
struct CDd<T> {
    re: Dd<T>,
    im: Dd<T>,
}

impl<T: Real> CDd<T> {
    fn from(z: Complex<T>) -> Self {
        CDd { re: Dd::from(z.re), im: Dd::from(z.im) }
    }

    fn add(self, o: Self) -> Self {
        CDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    fn mul(self, o: Self) -> Self {
        CDd {
            re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn scale(self, s: Dd<T>) -> Self {
        CDd { re: self.re.mul(s), im: self.im.mul(s) }
    }

    fn hi(self) -> Complex<T> {
        Complex::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }

    fn hi_norm(self) -> T {
        self.re.hi.hypot(self.im.hi)
    }
}
