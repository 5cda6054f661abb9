//! The Riemann kernel `Phi`, `Xi` on the critical line, `Phi_{2,y}` and the
//! positivity scan of its Fourier transform.

use rayon::prelude::*;
use serde::Serialize;

pub use crate::kernels::phi;

use crate::correlate::{build_k2y, nu_numeric_with, CorrelationKernel, Normalization};
use crate::error::{precondition, Result};
use crate::kernels::{make_kernel, KernelId, WeightKernel};
use crate::quad::{integrate_oscillatory, Decay, Integrand, Oscillation, Support};

/// `Phi` is integrated over `[-PHI_CUTOFF, PHI_CUTOFF]`.
pub const PHI_CUTOFF: f64 = 6.0;
/// Largest height accepted by the `Xi` tools.
pub const MAX_HEIGHT: f64 = 200.0;
/// Largest `|y|` accepted by [`phi_2y`].
pub const MAX_Y: f64 = 2.0;
/// Grid step of the zero search.
pub const ZERO_SEARCH_STEP: f64 = 0.1;

fn riemann_kernel() -> WeightKernel {
    make_kernel(KernelId::RiemannPhi).expect("catalog kernel")
}

/// `Xi(x) = 2 int_0^6 Phi(u) cos(xu) du`.
pub fn xi_on_critical_line(x: f64, tol: f64) -> Result<f64> {
    Ok(xi_with_error(x, tol)?.0)
}

fn xi_with_error(x: f64, tol: f64) -> Result<(f64, f64)> {
    if !(x.abs() <= MAX_HEIGHT) {
        return Err(precondition(format!("|x| must be <= {MAX_HEIGHT}, got {x}")));
    }
    let f = Integrand::new(phi, Support::Interval(0.0, PHI_CUTOFF), Decay::Compact);
    let r = integrate_oscillatory(&f, x.abs(), Oscillation::Cos, tol)?;
    Ok((2.0 * r.value, 2.0 * r.abs_error))
}

/// `Phi_{2,y}(t) = cosh(ty) int (t-2s)^2 Phi(t-s) Phi(s) ds`, by direct
/// quadrature.
pub fn phi_2y(t: f64, y: f64, tol: f64) -> Result<f64> {
    if !(y.abs() < MAX_Y) {
        return Err(precondition(format!("|y| must be < {MAX_Y}, got {y}")));
    }
    let nu = nu_numeric_with(&riemann_kernel(), 2, t, tol, Normalization::Simplex)?;
    Ok((t * y).cosh() * nu)
}

/// `Phi_{2,y}` as a correlation kernel on the cached lattice.
pub fn phi_2y_kernel(y: f64) -> Result<CorrelationKernel> {
    Ok(build_k2y(&riemann_kernel(), y, crate::correlate::DEFAULT_TOL)?.with_normalization(Normalization::Simplex))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AllPositive,
    SignChangeFound,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::AllPositive => "no sign change detected on grid",
            Verdict::SignChangeFound => "sign change found",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Values of `F(Phi_{2,y})` on a grid, with a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct PositivityScan {
    pub y: f64,
    pub x: Vec<f64>,
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub min_value: f64,
    pub min_x: f64,
    /// Bracket of the first strict sign change, narrowed by bisection.
    pub first_sign_change: Option<(f64, f64)>,
    /// First grid point whose value is within the tolerance band.
    pub first_unresolved: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// `|y| < 1/2`, the strip covered by the positivity criterion.
    pub in_theorem_range: bool,
}

pub(crate) fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

/// Scans `x -> int Phi_{2,y}(t) cos(xt) dt` on `[0, x_max]`.
///
/// A value counts as resolved when it exceeds both `tol` and its own error
/// estimate in magnitude. A sign change is declared only between two
/// resolved values of opposite sign; its location is then bisected.
pub fn scan_rh_positivity(y: f64, x_max: f64, grid_step: f64, tol: f64) -> Result<PositivityScan> {
    if !(grid_step > 0.0) {
        return Err(precondition("grid step must be positive"));
    }
    if !(0.0..=MAX_HEIGHT).contains(&x_max) {
        return Err(precondition(format!("x_max must lie in [0, {MAX_HEIGHT}], got {x_max}")));
    }
    if !(tol >= 0.0) {
        return Err(precondition("tolerance must be nonnegative"));
    }
    let tab = phi_2y_kernel(y)?.tabulate(x_max)?;
    let x = grid(0.0, x_max, grid_step);
    let (values, errors): (Vec<f64>, Vec<f64>) = x.par_iter().map(|&xi| tab.cosine(xi)).unzip();
    let resolved = |v: f64, e: f64| v.abs() > tol && v.abs() > e;
    let mut min_value = f64::INFINITY;
    let mut min_x = 0.0;
    let mut first_unresolved = None;
    let mut first_sign_change = None;
    let mut last_resolved: Option<(f64, f64)> = None;
    for i in 0..x.len() {
        let (v, e) = (values[i], errors[i]);
        if v < min_value {
            min_value = v;
            min_x = x[i];
        }
        if !resolved(v, e) {
            first_unresolved.get_or_insert(x[i]);
            continue;
        }
        if first_sign_change.is_none() {
            if let Some((xp, vp)) = last_resolved {
                if vp.signum() != v.signum() {
                    let (mut a, mut b) = (xp, x[i]);
                    for _ in 0..60 {
                        let m = 0.5 * (a + b);
                        if m <= a || m >= b {
                            break;
                        }
                        if tab.cosine(m).0.signum() == vp.signum() {
                            a = m;
                        } else {
                            b = m;
                        }
                    }
                    first_sign_change = Some((a, b));
                }
            }
        }
        last_resolved = Some((x[i], v));
    }
    let verdict = if first_sign_change.is_some() {
        Verdict::SignChangeFound
    } else if first_unresolved.is_none() && values.iter().all(|&v| v > tol) {
        Verdict::AllPositive
    } else {
        Verdict::Inconclusive
    };
    Ok(PositivityScan {
        y,
        x,
        values,
        errors,
        min_value,
        min_x,
        first_sign_change,
        first_unresolved,
        tolerance: tol,
        verdict,
        in_theorem_range: y.abs() < 0.5,
    })
}

/// Zeros of `Xi` in `[x_lo, x_hi]`: sign changes on a step-0.1 grid, then
/// bisection to `tol`. Sign changes between values that do not exceed their
/// quadrature error are skipped; past height ~48 `|Xi|` falls below the
/// binary64 resolution of the integral.
pub fn find_xi_zeros(x_lo: f64, x_hi: f64, tol: f64) -> Result<Vec<f64>> {
    if !(x_lo < x_hi) {
        return Err(precondition(format!("need x_lo < x_hi, got [{x_lo}, {x_hi}]")));
    }
    if x_hi > MAX_HEIGHT || x_lo < -MAX_HEIGHT {
        return Err(precondition(format!("search range must lie within |x| <= {MAX_HEIGHT}")));
    }
    if !(tol > 0.0) {
        return Err(precondition("tolerance must be positive"));
    }
    const QUAD_TOL: f64 = 1e-15;
    let mut xs = grid(x_lo, x_hi, ZERO_SEARCH_STEP);
    if *xs.last().unwrap() < x_hi {
        xs.push(x_hi);
    }
    let vals = xs.par_iter().map(|&x| xi_with_error(x, QUAD_TOL)).collect::<Result<Vec<(f64, f64)>>>()?;
    let resolved = |(v, e): (f64, f64)| v.abs() > e;
    let brackets: Vec<(f64, f64, f64)> = (1..xs.len())
        .filter(|&i| resolved(vals[i - 1]) && resolved(vals[i]) && vals[i - 1].0.signum() != vals[i].0.signum())
        .map(|i| (xs[i - 1], xs[i], vals[i - 1].0))
        .collect();
    brackets
        .into_par_iter()
        .map(|(mut a, mut b, va)| {
            while b - a > tol {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let vm = xi_on_critical_line(m, QUAD_TOL)?;
                if vm == 0.0 {
                    return Ok(m);
                }
                if vm.signum() == va.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            Ok(0.5 * (a + b))
        })
        .collect()
}
