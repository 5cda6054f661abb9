//! Verifiers that turn the identities and positivity statements into
//! pass/fail reports.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::correlate::{build_k2y, CorrelationKernel, Tabulation};
use crate::error::Result;
use crate::kernels::{Parity, WeightKernel};
use crate::xform::{closed_wronskian, fourier_jet, fourier_sign, laplace_jet, strip_jets, wronskian, TransformKind};

/// One probed point of a check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PointDetail {
    pub x: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// Outcome of a check; `pass` holds exactly when `worst <= tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub grid: String,
    pub worst: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub summary: serde_json::Map<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointDetail>,
}

impl CheckReport {
    fn new(check: &str, params: Value, grid: String, tolerance: f64) -> Self {
        Self {
            check: check.into(),
            params,
            grid,
            worst: 0.0,
            tolerance,
            pass: true,
            summary: Default::default(),
            points: Vec::new(),
        }
    }

    fn finish(mut self, worst: f64) -> Self {
        self.worst = worst;
        self.pass = worst <= self.tolerance;
        self
    }

    /// A check that could not be carried out.
    fn failed(mut self, err: impl std::fmt::Display) -> Self {
        self.worst = f64::INFINITY;
        self.pass = false;
        self.summary.insert("error".into(), json!(err.to_string()));
        self
    }

    fn note(&mut self, key: &str, v: Value) {
        self.summary.insert(key.into(), v);
    }
}

fn describe(xs: &[f64]) -> String {
    match xs {
        [] => "empty".into(),
        [x] => format!("{x}"),
        _ => format!("{} points in [{}, {}]", xs.len(), xs[0], xs[xs.len() - 1]),
    }
}

/// Internal quadrature tolerance for a check tolerance.
fn quad_tol(tol: f64) -> f64 {
    (tol * 1e-4).clamp(1e-13, 1e-8)
}

fn residual(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / rhs.norm().max(1.0)
}

fn x_max(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn compare(mut report: CheckReport, xs: &[f64], side: impl Fn(f64) -> Result<(Complex64, Complex64)> + Sync) -> CheckReport {
    let pts = xs.par_iter().map(|&x| side(x).map(|(l, r)| PointDetail { x, lhs: l, rhs: r, residual: residual(l, r) }));
    match pts.collect::<Result<Vec<_>>>() {
        Ok(points) => {
            let worst = points.iter().fold(0.0f64, |m, p| m.max(p.residual));
            report.points = points;
            report.finish(worst)
        }
        Err(e) => report.failed(e),
    }
}

/// `W_n(F w; x)` from modulated-quadrature jets against
/// `(-1)^{n(n-1)/2} F(nu_n(w))(x)`.
pub fn check_fourier_identity(k: &WeightKernel, n: usize, xs: &[f64], tol: f64) -> CheckReport {
    let report = CheckReport::new("fourier-identity", json!({"kernel": k.spec_string(), "n": n}), describe(xs), tol);
    let qtol = quad_tol(tol);
    let tab = match CorrelationKernel::best(k, n, qtol).and_then(|ck| ck.tabulate(x_max(xs))) {
        Ok(t) => t,
        Err(e) => return report.failed(e),
    };
    compare(report, xs, |x| {
        let lhs = wronskian(&fourier_jet(k, x, 2 * n - 2, qtol)?, n)?.value;
        Ok((lhs, tab.fourier(x).0 * fourier_sign(n)))
    })
}

/// `W_n(L w; x)` from jets against `L(nu_n(w))(x)`.
pub fn check_laplace_identity(k: &WeightKernel, n: usize, xs: &[f64], tol: f64) -> CheckReport {
    let report = CheckReport::new("laplace-identity", json!({"kernel": k.spec_string(), "n": n}), describe(xs), tol);
    if !k.on_half_line() {
        return report.failed(format!("{} is not supported on [0, inf)", k.spec_string()));
    }
    let qtol = quad_tol(tol);
    let tab = match CorrelationKernel::best(k, n, qtol).and_then(|ck| ck.tabulate(1.0)) {
        Ok(t) => t,
        Err(e) => return report.failed(e),
    };
    compare(report, xs, |x| {
        let lhs = wronskian(&laplace_jet(k, x, 2 * n - 2, qtol)?, n)?.value;
        Ok((lhs, Complex64::new(tab.laplace(x).0, 0.0)))
    })
}

/// `x -> (-1)^{n(n-1)/2} W_n(F w; x)`, closed form when the catalog has
/// one and jets otherwise.
pub fn fourier_wronskian_fn(k: &WeightKernel, n: usize, tol: f64) -> impl Fn(f64) -> Result<f64> + Sync + '_ {
    let closed = k.is_plain() && closed_wronskian(k.id(), TransformKind::Fourier, n, 0.0).is_ok();
    move |x| {
        let w = if closed {
            closed_wronskian(k.id(), TransformKind::Fourier, n, x)?
        } else {
            wronskian(&fourier_jet(k, x, 2 * n - 2, tol)?, n)?.value
        };
        Ok(fourier_sign(n) * w.re)
    }
}

/// Random Gram matrices `[f(x_i - x_j)]` of sizes 2..=8 with points in
/// `range`. Passes when every smallest eigenvalue is at least
/// `-tol * ||G||`, `f(0) > 0` and `|f(x)| <= f(0)` on all sampled
/// differences.
pub fn check_positive_definite<F>(f: F, samples: usize, range: (f64, f64), tol: f64, seed: u64) -> CheckReport
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let mut report = CheckReport::new(
        "psd",
        json!({"samples": samples, "range": [range.0, range.1], "seed": seed}),
        format!("{samples} Gram matrices of size 2..=8"),
        tol,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets: Vec<Vec<f64>> = (0..samples)
        .map(|_| {
            let m = rng.random_range(2..=8);
            (0..m).map(|_| rng.random_range(range.0..=range.1)).collect()
        })
        .collect();
    let f0 = match f(0.0) {
        Ok(v) => v,
        Err(e) => return report.failed(e),
    };
    let results = sets
        .par_iter()
        .map(|pts| {
            let m = pts.len();
            let mut g = DMatrix::zeros(m, m);
            let mut sup = 0.0f64;
            for i in 0..m {
                for j in 0..=i {
                    let v = if i == j { f0 } else { f(pts[i] - pts[j])? };
                    g[(i, j)] = v;
                    g[(j, i)] = v;
                    sup = sup.max(v.abs());
                }
            }
            let eig = SymmetricEigen::new(g).eigenvalues;
            let lo = eig.iter().cloned().fold(f64::INFINITY, f64::min);
            let norm = eig.iter().fold(0.0f64, |m, e| m.max(e.abs()));
            Ok((lo, norm, sup))
        })
        .collect::<Result<Vec<_>>>();
    let results = match results {
        Ok(r) => r,
        Err(e) => return report.failed(e),
    };
    let mut worst = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let mut sup = 0.0f64;
    for (lo, norm, s) in results {
        worst = worst.max(-lo / norm.max(f64::MIN_POSITIVE));
        min_eig = min_eig.min(lo);
        sup = sup.max(s);
    }
    report.note("f0", json!(f0));
    report.note("sup_abs", json!(sup));
    report.note("min_eigenvalue", json!(min_eig));
    if !(f0 > 0.0) || sup > f0 * (1.0 + tol) {
        report.note("bounded_by_f0", json!(false));
        return report.finish(f64::INFINITY);
    }
    report.finish(worst)
}

/// `(-1)^k d^k/dx^k phi(x) >= -tol` for `k = 0..=k_max` on the grid;
/// `jet(x, k_max)` returns the derivatives `0..=k_max`.
pub fn check_completely_monotone<J>(label: &str, jet: J, k_max: usize, xs: &[f64], tol: f64) -> CheckReport
where
    J: Fn(f64, usize) -> Result<Vec<f64>> + Sync,
{
    let report = CheckReport::new("cm", json!({"function": label, "k_max": k_max}), describe(xs), tol);
    let rows = xs.par_iter().map(|&x| jet(x, k_max).map(|d| (x, d))).collect::<Result<Vec<_>>>();
    let rows = match rows {
        Ok(r) => r,
        Err(e) => return report.failed(e),
    };
    let mut worst = f64::NEG_INFINITY;
    let mut report = report;
    for (x, d) in rows {
        for (k, v) in d.iter().enumerate().take(k_max + 1) {
            let signed = if k % 2 == 0 { *v } else { -*v };
            worst = worst.max(-signed);
            if -signed > tol {
                report.points.push(PointDetail {
                    x,
                    lhs: Complex64::new(signed, 0.0),
                    rhs: Complex64::new(k as f64, 0.0),
                    residual: -signed,
                });
            }
        }
    }
    report.finish(worst)
}

/// Laplace jets of `L(nu)` for a tabulated correlation kernel.
pub fn tabulated_laplace_jet(tab: &Tabulation) -> impl Fn(f64, usize) -> Result<Vec<f64>> + Sync + '_ {
    move |x, k_max| Ok((0..=k_max).map(|k| tab.laplace_derivative(x, k).0).collect())
}

/// `0 < J'(x)^2 - J(x) J''(x) <= (1/Gamma(l+1)^2 - 1/(Gamma(l) Gamma(l+2)))/2`
/// for `J(x) = x^{-l} J_l(x)`. The worst value is the larger of the two
/// violations (negative when both sides hold).
pub fn check_bessel_bound(lambda: f64, xs: &[f64]) -> CheckReport {
    use crate::specfun::rgamma;
    use crate::xform::bessel_laguerre_expression;
    let bound = 0.5 * (rgamma(lambda + 1.0).powi(2) - rgamma(lambda) * rgamma(lambda + 2.0));
    let mut report = CheckReport::new("bessel-bound", json!({"lambda": lambda}), describe(xs), 0.0);
    let vals = xs.par_iter().map(|&x| bessel_laguerre_expression(lambda, x)).collect::<Result<Vec<_>>>();
    let vals = match vals {
        Ok(v) => v,
        Err(e) => return report.failed(e),
    };
    let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    report.note("bound", json!(bound));
    report.note("max", json!(max));
    report.note("min", json!(min));
    report.note("upper_margin", json!(bound - max));
    // Strict positivity fails on a value that is not > 0.
    let worst = if min > 0.0 { max - bound } else { f64::INFINITY };
    report.finish(worst)
}

/// Left side `W_2(F(cosh(y.)w)) + W_2(F(sinh(y.)w))` from strip jets against
/// the right side `-F(cosh(y.) nu_2(w))`; also reports the sign of the right
/// side and the Jensen sum `W_2(phi) + W_2(psi)` with `psi = i F(sinh(y.)w)`.
pub fn check_jensen_wronskian(k: &WeightKernel, y: f64, xs: &[f64], tol: f64) -> CheckReport {
    let mut report = CheckReport::new("jensen", json!({"kernel": k.spec_string(), "y": y}), describe(xs), tol);
    if k.parity() != Parity::Even {
        return report.failed(format!("{} is not even", k.spec_string()));
    }
    let qtol = quad_tol(tol);
    let tab = match build_k2y(k, y, qtol).and_then(|ck| ck.tabulate(x_max(xs))) {
        Ok(t) => t,
        Err(e) => return report.failed(e),
    };
    let rows = xs
        .par_iter()
        .map(|&x| {
            let (c, s) = if y == 0.0 {
                let c = fourier_jet(k, x, 2, qtol)?;
                let mut s = c.clone();
                s.values.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
                (c, s)
            } else {
                strip_jets(k, x, y, 2, qtol)?
            };
            let wc = wronskian(&c, 2)?.value;
            let ws = wronskian(&s, 2)?.value;
            let rhs = -tab.cosine(x).0;
            Ok((x, wc + ws, Complex64::new(rhs, 0.0), (wc - ws).re))
        })
        .collect::<Result<Vec<_>>>();
    let rows = match rows {
        Ok(r) => r,
        Err(e) => return report.failed(e),
    };
    let mut worst = 0.0f64;
    let mut rhs_max = f64::NEG_INFINITY;
    let mut jensen_max = f64::NEG_INFINITY;
    for (x, lhs, rhs, jensen) in rows {
        let r = residual(lhs, rhs);
        worst = worst.max(r);
        rhs_max = rhs_max.max(rhs.re);
        jensen_max = jensen_max.max(jensen);
        report.points.push(PointDetail { x, lhs, rhs, residual: r });
    }
    report.note("rhs_max", json!(rhs_max));
    report.note("rhs_negative_everywhere", json!(rhs_max < 0.0));
    report.note("jensen_sum_max", json!(jensen_max));
    report.note("jensen_sum_nonpositive", json!(jensen_max <= 0.0));
    report.finish(worst)
}

/// Scans `F(ck)` on `[0, x_max]` for real zeros.
///
/// Values not exceeding their own error estimate are unresolved and ignored.
/// For an even kernel the transform is real and a sign change between
/// resolved grid values is a zero. Independently, every interior local
/// minimum of `|F(ck)|` is refined by golden-section search; one whose
/// refined value is below `tol * max |F(ck)|` counts as an isolated
/// (possibly touching) zero. Point details carry the value in `lhs` and its
/// error estimate in `rhs`.
/// `worst` is the number of zeros found, so the check passes when there
/// are none.
pub fn check_density_surrogate(ck: &CorrelationKernel, x_max: f64, step: f64, tol: f64) -> CheckReport {
    let mut report = CheckReport::new(
        "density",
        json!({"kernel": ck.base().spec_string(), "n": ck.order(), "cosh_y": ck.cosh_y(), "x_max": x_max, "step": step}),
        format!("[0, {x_max}] step {step}"),
        tol,
    );
    if !(step > 0.0 && x_max >= 0.0) {
        return report.failed("need step > 0 and x_max >= 0");
    }
    let tab = match ck.tabulate(x_max) {
        Ok(t) => t,
        Err(e) => return report.failed(e),
    };
    let even = ck.parity() == Parity::Even;
    let eval = |x: f64| -> (Complex64, f64) {
        if even {
            let (v, e) = tab.cosine(x);
            (Complex64::new(v, 0.0), e)
        } else {
            tab.fourier(x)
        }
    };
    let xs = crate::riemann::grid(0.0, x_max, step);
    let (vals, errs): (Vec<Complex64>, Vec<f64>) = xs.par_iter().map(|&x| eval(x)).unzip();
    let mods: Vec<f64> = vals.iter().map(|v| v.norm()).collect();
    let resolved: Vec<bool> = mods.iter().zip(&errs).map(|(m, e)| m > e).collect();
    let scale = mods.iter().cloned().fold(0.0f64, f64::max).max(f64::MIN_POSITIVE);
    let mut sign_changes = Vec::new();
    if even {
        let mut last: Option<(f64, f64)> = None;
        for i in 0..xs.len() {
            if !resolved[i] {
                continue;
            }
            let v = vals[i].re;
            if let Some((xp, vp)) = last {
                if vp * v < 0.0 {
                    sign_changes.push(0.5 * (xp + xs[i]));
                }
            }
            last = Some((xs[i], v));
        }
    }
    let mut zeros = Vec::new();
    let mut min_abs = f64::INFINITY;
    let mut min_x = 0.0;
    for i in 0..xs.len() {
        if mods[i] < min_abs {
            min_abs = mods[i];
            min_x = xs[i];
        }
    }
    // A dip counts only when both neighbours stand above the noise.
    for i in 1..xs.len().saturating_sub(1) {
        if mods[i] <= mods[i - 1] && mods[i] <= mods[i + 1] && resolved[i - 1] && resolved[i + 1] {
            let (xr, vr) = golden_min(|x| eval(x).0.norm(), xs[i - 1], xs[i + 1]);
            if vr < min_abs {
                min_abs = vr;
                min_x = xr;
            }
            if vr < tol * scale {
                zeros.push(xr);
            }
        }
    }
    let unresolved = xs.iter().zip(&resolved).find(|(_, r)| !**r).map(|(x, _)| *x);
    let verdict = if !sign_changes.is_empty() || !zeros.is_empty() {
        "zero-found"
    } else if unresolved.is_some() {
        "inconclusive"
    } else {
        "zero-free"
    };
    report.note("verdict", json!(verdict));
    report.note("first_unresolved", json!(unresolved));
    report.note("min_abs", json!(min_abs));
    report.note("min_abs_x", json!(min_x));
    report.note("max_abs", json!(scale));
    report.note("sign_changes", json!(sign_changes));
    report.note("isolated_zeros", json!(zeros));
    report.note("isolated_zero_count", json!(zeros.len()));
    report.points = xs
        .iter()
        .zip(vals.iter().zip(&errs))
        .map(|(&x, (&v, &e))| PointDetail { x, lhs: v, rhs: Complex64::new(e, 0.0), residual: v.norm() / scale })
        .collect();
    report.note("relative_tolerance", json!(tol));
    report.tolerance = 0.0;
    report.finish((sign_changes.len() + zeros.len()) as f64)
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
        if b - a < 1e-12 * (1.0 + a.abs()) {
            break;
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::parse_kernel;

    fn lin(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    fn k(s: &str) -> WeightKernel {
        parse_kernel(s).unwrap()
    }

    #[test]
    fn fourier_identity_examples() {
        let r = check_fourier_identity(&k("gaussian"), 2, &lin(-3.0, 3.0, 13), 1e-6);
        assert!(r.pass && r.worst < 1e-6);
        let r = check_fourier_identity(&k("gaussian"), 3, &lin(-2.0, 2.0, 9), 1e-6);
        assert!(r.pass);
        assert!(r.points.iter().all(|p| p.rhs.re < 0.0));
        let r = check_fourier_identity(&k("box"), 2, &lin(0.5, 10.0, 11), 1e-5);
        assert!(r.pass);
        for p in &r.points {
            let x = p.x;
            let expected = -2.0 * (-1.0 + 2.0 * x * x + (2.0 * x).cos()) / x.powi(4);
            assert!((p.lhs.re - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn laplace_identity_examples() {
        let r = check_laplace_identity(&k("laguerre:alpha=0"), 2, &lin(0.2, 5.0, 9), 1e-5);
        assert!(r.pass);
        for p in &r.points {
            assert!((p.rhs.re - (1.0 + p.x).powi(-4)).abs() < 1e-10);
        }
        let r = check_laplace_identity(&k("unitbox"), 2, &lin(0.5, 4.0, 8), 1e-5);
        assert!(r.pass);
        assert!(check_laplace_identity(&k("laguerre:alpha=1"), 1, &[0.7], 1e-5).pass);
        let r = check_laplace_identity(&k("box"), 2, &[1.0], 1e-5);
        assert!(!r.pass && r.summary.contains_key("error"));
    }

    #[test]
    fn psd_examples() {
        let bx = k("box");
        let r = check_positive_definite(fourier_wronskian_fn(&bx, 2, 1e-12), 50, (-8.0, 8.0), 1e-8, 1);
        assert!(r.pass);
        assert_eq!(r.summary["f0"], json!(4.0 / 3.0));
        let not_pd = |x: f64| Ok(x.cos() - 0.5);
        assert!(!check_positive_definite(not_pd, 50, (-3.0, 3.0), 1e-8, 1).pass);
    }

    #[test]
    fn psd_is_deterministic() {
        let f = |x: f64| Ok((-x * x).exp());
        let a = check_positive_definite(f, 20, (-2.0, 2.0), 1e-8, 9);
        let b = check_positive_definite(f, 20, (-2.0, 2.0), 1e-8, 9);
        assert_eq!(a.summary["min_eigenvalue"], b.summary["min_eigenvalue"]);
    }

    #[test]
    fn bessel_bound_examples() {
        let xs = lin(0.0, 40.0, 401);
        let r = check_bessel_bound(1.0, &xs);
        assert!(r.pass);
        assert_eq!(r.summary["bound"], json!(0.25));
        let r = check_bessel_bound(0.0, &xs);
        assert!(r.pass);
        assert_eq!(r.summary["bound"], json!(0.5));
    }

    #[test]
    fn completely_monotone_examples() {
        let xs = lin(0.1, 5.0, 20);
        let exp = |x: f64, k_max: usize| Ok((0..=k_max).map(|k| if k % 2 == 0 { (-x).exp() } else { -(-x).exp() }).collect());
        assert!(check_completely_monotone("e^-x", exp, 8, &xs, 1e-12).pass);
        let ub = k("unitbox");
        let jet = |x: f64, k_max: usize| Ok(crate::xform::laplace_jet(&ub, x, k_max, 1e-13)?.real());
        assert!(check_completely_monotone("L unitbox", jet, 6, &xs, 1e-9).pass);
        let sinx = |x: f64, _k: usize| Ok(vec![x.sin(), x.cos()]);
        assert!(!check_completely_monotone("sin", sinx, 1, &xs, 1e-9).pass);
    }

    #[test]
    fn jensen_examples() {
        let r = check_jensen_wronskian(&k("gaussian"), 0.7, &lin(-3.0, 3.0, 13), 1e-6);
        assert!(r.pass);
        for p in &r.points {
            let (x, y) = (p.x, 0.7f64);
            let want = -2.0 * std::f64::consts::PI * (y * y - x * x).exp() * (2.0 * x * y).cos();
            assert!((p.rhs.re - want).abs() < 1e-9, "x={x}: {} vs {want}", p.rhs.re);
        }
        let tent = k("tent");
        let r = check_jensen_wronskian(&tent, 0.0, &[0.0], 1e-8);
        let m2 = tent.moment(2, 1e-14).unwrap();
        assert!((r.points[0].lhs.re + m2).abs() < 1e-10);
        assert!(!check_jensen_wronskian(&k("unitbox"), 0.3, &[1.0], 1e-6).pass);
    }

    #[test]
    fn density_examples() {
        let jac = CorrelationKernel::closed(&k("jacobi:alpha=1,beta=2"), 2).unwrap();
        assert!(check_density_surrogate(&jac, 40.0, 0.1, 1e-6).pass);
        let tent = CorrelationKernel::closed(&k("tent"), 2).unwrap();
        let r = check_density_surrogate(&tent, 15.0, 0.05, 1e-6);
        assert!(!r.pass);
        let z = r.summary["isolated_zeros"].as_array().unwrap()[0].as_f64().unwrap();
        assert!((z - std::f64::consts::PI).abs() < 1e-6);
        let g = CorrelationKernel::closed(&k("gaussian"), 2).unwrap();
        assert!(check_density_surrogate(&g, 8.0, 0.05, 1e-6).pass);
    }
}
