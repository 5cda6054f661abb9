use crate::error::{domain, Error, Result};
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi x)` with exact argument reduction, so integers give exact zeros.
pub fn sinpi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let mut r = x - two * (x / two).round();
    if r > half {
        r = T::one() - r;
    } else if r < -half {
        r = -T::one() - r;
    }
    (T::PI() * r).sin()
}

fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.floor()
}

/// Euler Gamma function.
///
/// Lanczos approximation (g = 7, nine terms) for `x >= 1/2` and the
/// reflection formula below. Exact for small positive integers.
pub fn gamma<T: Real>(x: T) -> Result<T> {
    if x.is_nan() {
        return Err(domain("gamma of NaN"));
    }
    if x.is_infinite() {
        return if x > T::zero() { Err(Error::Overflow) } else { Err(domain("gamma of -inf")) };
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x.f64()));
    }
    if x == x.floor() && x <= T::lit(24.0) {
        let mut acc = T::one();
        let mut k = T::lit(2.0);
        while k < x {
            acc = acc * k;
            k = k + T::one();
        }
        return Ok(acc);
    }
    if x < T::lit(0.5) {
        let s = sinpi(x);
        let y = T::one() - x;
        let g = match gamma(y) {
            Ok(g) => g,
            Err(Error::Overflow) => {
                // 1 - x beyond the overflow threshold: Gamma(1-x) = (-x) Gamma(-x)
                return match gamma(-x) {
                    Ok(g) => Ok(T::PI() / (s * g) / (-x)),
                    Err(Error::Overflow) => Ok(T::zero()),
                    Err(e) => Err(e),
                };
            }
            Err(e) => return Err(e),
        };
        return Ok(T::PI() / (s * g));
    }
    let z = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::lit(c) / (z + T::from_usize_lossy(i));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    let half_pow = t.powf((z + T::lit(0.5)) / T::lit(2.0));
    let out = (T::lit(2.0) * T::PI()).sqrt() * half_pow * (half_pow * (-t).exp()) * a;
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Overflow)
    }
}

/// `1/Gamma(x)`, entire: zero at the poles of Gamma and at overflow.
pub fn rgamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::zero();
    }
    match gamma(x) {
        Ok(g) => T::one() / g,
        Err(_) => T::zero(),
    }
}

/// Natural log of `|Gamma(x)|` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("ln_gamma requires x > 0"));
    }
    if x < T::lit(0.5) {
        return Ok((T::PI() / sinpi(x)).ln() - ln_gamma(T::one() - x)?);
    }
    let z = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::lit(c) / (z + T::from_usize_lossy(i));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    Ok(T::lit(0.5) * (T::lit(2.0) * T::PI()).ln() + (z + T::lit(0.5)) * t.ln() - t + a.ln())
}

/// Rising factorial `(a)_k`.
pub fn pochhammer<T: Real>(a: T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * (a + T::from_usize_lossy(i)))
}

/// `k!` as a float.
pub fn factorial<T: Real>(k: usize) -> T {
    (2..=k).fold(T::one(), |acc, i| acc * T::from_usize_lossy(i))
}
