use rayon::prelude::*;

use crate::kernels::phi;

/// Default lattice step.
pub const LATTICE_STEP: f64 = 1.0 / 64.0;
/// Default lattice half-width.
pub const LATTICE_HALF_WIDTH: f64 = 8.0;

/// Raw `nu_2` of the Riemann kernel on the uniform grid `t_j = -L + j h`.
///
/// Each node value is a trapezoid sum of `(2s - t)^2 Phi(s) Phi(t - s)` over
/// the same grid, which converges geometrically for this integrand. A second
/// sum at step `2h` gives a per-node error estimate.
#[derive(Debug, Clone)]
pub struct Lattice {
    h: f64,
    half_width: f64,
    values: Vec<f64>,
    errors: Vec<f64>,
}

impl Lattice {
    pub fn new(h: f64, half_width: f64) -> Self {
        let m = (half_width / h).round() as i64;
        let phis: Vec<f64> = (-m..=m).map(|i| phi(i as f64 * h)).collect();
        let at = |i: i64| -> f64 {
            if i.abs() > m {
                0.0
            } else {
                phis[(i + m) as usize]
            }
        };
        let sum = |j: i64, start: i64, stride: i64| -> f64 {
            let t = j as f64 * h;
            let mut acc = 0.0;
            let mut i = start;
            while i <= m {
                let p = at(i);
                if p != 0.0 {
                    let d = 2.0 * i as f64 * h - t;
                    acc += d * d * p * at(j - i);
                }
                i += stride;
            }
            acc * h * stride as f64
        };
        let (values, errors): (Vec<f64>, Vec<f64>) = (-m..=m)
            .into_par_iter()
            .map(|j| {
                let fine = sum(j, -m, 1);
                let coarse = sum(j, -m + (j + m).rem_euclid(2), 2);
                (fine, (fine - coarse).abs())
            })
            .unzip();
        Self { h, half_width: m as f64 * h, values, errors }
    }

    /// The default `h = 1/64` lattice on `[-8, 8]`.
    pub fn phi_nu2() -> Self {
        Self::new(LATTICE_STEP, LATTICE_HALF_WIDTH)
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |j| -self.half_width + j as f64 * self.h)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Per-node error estimates.
    pub fn errors(&self) -> &[f64] {
        &self.errors
    }

    /// Four-point cubic interpolation; zero outside the grid.
    pub fn interpolate(&self, t: f64) -> f64 {
        let u = (t + self.half_width) / self.h;
        let last = self.values.len() - 1;
        if !(u >= 0.0 && u <= last as f64) {
            return 0.0;
        }
        let j = (u.floor() as usize).clamp(1, last.saturating_sub(2));
        let r = u - j as f64;
        let (f0, f1, f2, f3) = (self.values[j - 1], self.values[j], self.values[j + 1], self.values[j + 2]);
        let w0 = -r * (r - 1.0) * (r - 2.0) / 6.0;
        let w1 = (r + 1.0) * (r - 1.0) * (r - 2.0) / 2.0;
        let w2 = -(r + 1.0) * r * (r - 2.0) / 2.0;
        let w3 = (r + 1.0) * r * (r - 1.0) / 6.0;
        w0 * f0 + w1 * f1 + w2 * f2 + w3 * f3
    }
}
