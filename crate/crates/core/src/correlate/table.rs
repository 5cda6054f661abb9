use num_complex::Complex64;
use rayon::prelude::*;

use super::Lattice;
use crate::error::Result;
use crate::quad::{WG, WGK, XGK};

/// A kernel sampled on quadrature nodes, with a fine and a coarse rule
/// sharing those nodes.
///
/// Transforms are weighted sums over the nodes. The error estimate of each
/// sum is the fine/coarse difference plus the propagated node errors and
/// the rounding of the sum.
#[derive(Debug, Clone)]
pub struct Tabulation {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    coarse: Vec<f64>,
    values: Vec<f64>,
    node_err: Vec<f64>,
    tail: f64,
}

impl Tabulation {
    /// Composite 21-point Kronrod rule on `[lo, hi]`, split at `kinks` and
    /// into panels no longer than `max_len`; the embedded 10-point Gauss rule
    /// is the coarse rule. `node_err` is the absolute error of each value.
    pub fn build<F>(lo: f64, hi: f64, kinks: &[f64], max_len: f64, node_err: f64, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        let mut edges = vec![lo];
        edges.extend(kinks.iter().copied().filter(|&k| k > lo && k < hi));
        edges.push(hi);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut coarse = Vec::new();
        for seg in edges.windows(2) {
            let len = seg[1] - seg[0];
            if len <= 0.0 {
                continue;
            }
            let panels = (len / max_len).ceil().max(1.0) as usize;
            let width = len / panels as f64;
            for p in 0..panels {
                let a = seg[0] + p as f64 * width;
                let half = 0.5 * width;
                let c = a + half;
                for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).enumerate() {
                    let g = if i % 2 == 1 { WG[i / 2] } else { 0.0 };
                    if x == 0.0 {
                        nodes.push(c);
                        weights.push(half * w);
                        coarse.push(half * g);
                    } else {
                        for s in [-1.0, 1.0] {
                            nodes.push(c + s * half * x);
                            weights.push(half * w);
                            coarse.push(half * g);
                        }
                    }
                }
            }
        }
        let values = nodes.par_iter().map(|&t| f(t)).collect::<Result<Vec<f64>>>()?;
        let node_err = vec![node_err; nodes.len()];
        Ok(Self { nodes, weights, coarse, values, node_err, tail: 0.0 })
    }

    /// Trapezoid rule on the lattice nodes, `cosh(y t)`-weighted and scaled;
    /// the coarse rule uses every second node.
    pub fn from_lattice(l: &Lattice, y: f64, scale: f64) -> Self {
        let h = l.step();
        let nodes: Vec<f64> = l.nodes().collect();
        let weight = |t: f64| if y == 0.0 { scale } else { scale * (y * t).cosh() };
        let values: Vec<f64> = nodes.iter().zip(l.values()).map(|(&t, &v)| weight(t) * v).collect();
        let node_err: Vec<f64> = nodes.iter().zip(l.errors()).map(|(&t, &e)| weight(t) * e).collect();
        let weights = vec![h; nodes.len()];
        let coarse = (0..nodes.len()).map(|j| if j % 2 == 0 { 2.0 * h } else { 0.0 }).collect();
        Self { nodes, weights, coarse, values, node_err, tail: 0.0 }
    }

    /// Adds a bound on the mass outside the tabulated range to every error
    /// estimate.
    pub fn with_tail(mut self, tail: f64) -> Self {
        self.tail = tail;
        self
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn sum<K: Copy + std::ops::Mul<f64, Output = K> + std::ops::Add<Output = K>>(
        &self,
        zero: K,
        modulus: impl Fn(K) -> f64,
        kernel: impl Fn(f64) -> K,
    ) -> (K, f64) {
        let mut fine = zero;
        let mut rough = zero;
        let mut prop = 0.0;
        let mut size = 0.0;
        for j in 0..self.nodes.len() {
            let k = kernel(self.nodes[j]);
            size += (self.weights[j] * self.values[j]).abs() * modulus(k);
            fine = fine + k * (self.weights[j] * self.values[j]);
            rough = rough + k * (self.coarse[j] * self.values[j]);
            prop += self.weights[j].abs() * self.node_err[j] * modulus(k);
        }
        let diff = modulus(fine + rough * -1.0);
        let rounding = f64::EPSILON * (self.nodes.len() as f64).sqrt() * size;
        (fine, diff + prop + rounding + self.tail)
    }

    /// `int v(t) dt` with an error estimate.
    pub fn integral(&self) -> (f64, f64) {
        self.sum(0.0, f64::abs, |_| 1.0)
    }

    /// `int v(t) e^{-ixt} dt` with an error estimate.
    pub fn fourier(&self, x: f64) -> (Complex64, f64) {
        self.sum(Complex64::new(0.0, 0.0), |z| z.norm(), |t| Complex64::from_polar(1.0, -x * t))
    }

    /// `int v(t) cos(xt) dt`, the Fourier transform of an even kernel.
    pub fn cosine(&self, x: f64) -> (f64, f64) {
        self.sum(0.0, f64::abs, |t| (x * t).cos())
    }

    /// `int v(t) e^{-xt} dt` with an error estimate.
    pub fn laplace(&self, x: f64) -> (f64, f64) {
        self.sum(0.0, f64::abs, |t| (-x * t).exp())
    }

    /// `d^k/dx^k int v(t) e^{-xt} dt = int (-t)^k v(t) e^{-xt} dt`.
    pub fn laplace_derivative(&self, x: f64, k: usize) -> (f64, f64) {
        let p = k as i32;
        self.sum(0.0, f64::abs, |t| (-t).powi(p) * (-x * t).exp())
    }
}
