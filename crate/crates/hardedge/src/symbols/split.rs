//! Wiener–Hopf splitting b = b₊ + b₋ by spectral half-line projection, and
//! the Fourier data of e^{z b₊} − 1.

use super::SymbolSpec;
use crate::error::{Error, Result};
use crate::quadrature::{barycentric_weights, gauss_legendre, lagrange_basis, uniform_edges};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rustfft::FftPlanner;

/// Samples of b₊ and b₋ on a periodic grid over [−A, A).
#[derive(Debug, Clone)]
pub struct FactorizationPair {
    pub grid: Vec<f64>,
    pub b_plus: Vec<Complex64>,
    pub b_minus: Vec<Complex64>,
    /// Angular frequency of each DFT bin.
    pub spectral_cut: Vec<f64>,
}

/// Tolerated relative size of b at the edge of the periodic axis.
const WRAP_TOL: f64 = 1e-9;

/// Splits the even extension of b on [−A, A) with n points (power of two).
pub fn wh_split(spec: &SymbolSpec, axis_half_length: f64, n_points: usize) -> Result<FactorizationPair> {
    if !n_points.is_power_of_two() || n_points < 4 {
        return Err(Error::Domain(format!("n_points must be a power of two, got {n_points}")));
    }
    if !(axis_half_length > 0.0) {
        return Err(Error::Domain("axis_half_length must be positive".into()));
    }
    let peak = spec.sup_norm();
    let edge = spec.value(axis_half_length).abs();
    if peak > 0.0 && edge > WRAP_TOL * peak {
        return Err(Error::AxisTooShort(edge / peak));
    }
    let h = 2.0 * axis_half_length / n_points as f64;
    let grid: Vec<f64> = (0..n_points).map(|j| -axis_half_length + h * j as f64).collect();
    let samples: Vec<Complex64> = grid.iter().map(|&x| Complex64::new(spec.value(x), 0.0)).collect();
    let (b_plus, b_minus) = project(&samples);
    let spectral_cut = (0..n_points)
        .map(|k| {
            let kk = if k <= n_points / 2 { k as f64 } else { k as f64 - n_points as f64 };
            std::f64::consts::PI * kk / axis_half_length
        })
        .collect();
    Ok(FactorizationPair { grid, b_plus, b_minus, spectral_cut })
}

/// Discrete P₊, P₋ on periodic samples; zero and Nyquist bins split equally.
pub fn project(samples: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = samples.len();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mut spec = samples.to_vec();
    fwd.process(&mut spec);
    let mut plus = vec![Complex64::new(0.0, 0.0); n];
    let mut minus = vec![Complex64::new(0.0, 0.0); n];
    for (k, v) in spec.iter().enumerate() {
        if k == 0 || k == n / 2 {
            plus[k] = 0.5 * v;
            minus[k] = 0.5 * v;
        } else if k < n / 2 {
            plus[k] = *v;
        } else {
            minus[k] = *v;
        }
    }
    inv.process(&mut plus);
    inv.process(&mut minus);
    let scale = 1.0 / n as f64;
    plus.iter_mut().for_each(|v| *v *= scale);
    minus.iter_mut().for_each(|v| *v *= scale);
    (plus, minus)
}

/// h(s) = F[e^{z b₊} − 1](s), supported on s ≥ 0, from the Volterra equation
/// s h(s) = s z b̂(s) + ∫_0^s (s − v) z b̂(s − v) h(v) dv.
#[derive(Debug, Clone)]
pub struct PlusExponential {
    edges: Vec<f64>,
    ref_nodes: Vec<f64>,
    bary: Vec<f64>,
    values: Vec<Vec<Complex64>>,
}

const ORDER: usize = 16;

impl PlusExponential {
    pub fn new(spec: &SymbolSpec, z: Complex64) -> Result<Self> {
        let panel = 0.5 / spec.scale();
        let mut top = spec.spectral_extent() * (1.0 + (z.norm() * spec.sup_norm()).sqrt());
        for _ in 0..6 {
            let out = Self::solve(spec, z, top, panel);
            let peak = out.values.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
            let tail = out.values.last().unwrap().iter().map(|v| v.norm()).fold(0.0, f64::max);
            if tail <= 1e-16 * peak.max(1e-300) || peak == 0.0 {
                return Ok(out);
            }
            top *= 2.0;
        }
        Err(Error::NotConverged("e^{z b+} - 1 transform did not decay".into()))
    }

    fn solve(spec: &SymbolSpec, z: Complex64, top: f64, panel: f64) -> Self {
        let edges = uniform_edges(0.0, top, panel);
        let (t, w) = gauss_legendre(ORDER);
        let bary = barycentric_weights(&t);
        let kern = |u: f64| z * (u * spec.cosine_transform(u));
        let np = edges.len() - 1;
        let nodes: Vec<Vec<f64>> =
            edges.windows(2).map(|e| t.iter().map(|s| 0.5 * (e[0] + e[1]) + 0.5 * (e[1] - e[0]) * s).collect()).collect();
        let mut values: Vec<Vec<Complex64>> = Vec::with_capacity(np);
        for p in 0..np {
            let (a, b) = (edges[p], edges[p + 1]);
            let mut mat = DMatrix::<Complex64>::identity(ORDER, ORDER);
            let mut rhs = DVector::<Complex64>::zeros(ORDER);
            for i in 0..ORDER {
                let s = nodes[p][i];
                let mut acc = z * spec.cosine_transform(s);
                for q in 0..p {
                    let half = 0.5 * (edges[q + 1] - edges[q]);
                    for j in 0..ORDER {
                        acc += kern(s - nodes[q][j]) * (w[j] * half) * values[q][j] / s;
                    }
                }
                rhs[i] = acc;
                // Partial panel [a, s]: Gauss nodes there, h by interpolation.
                let half = 0.5 * (s - a);
                for r in 0..ORDER {
                    let v = a + half * (1.0 + t[r]);
                    let basis = lagrange_basis(&t, &bary, (2.0 * v - a - b) / (b - a));
                    let k = kern(s - v) * (w[r] * half) / s;
                    for j in 0..ORDER {
                        mat[(i, j)] -= k * basis[j];
                    }
                }
            }
            let sol = mat.lu().solve(&rhs).expect("Volterra panel system is a small perturbation of I");
            values.push(sol.iter().copied().collect());
        }
        Self { edges, ref_nodes: t, bary, values }
    }

    /// Right end of the computed support.
    pub fn support_end(&self) -> f64 {
        *self.edges.last().unwrap()
    }

    /// h(s); zero for s < 0 and beyond the computed support.
    pub fn eval(&self, s: f64) -> Complex64 {
        if s < 0.0 || s >= self.support_end() {
            return Complex64::new(0.0, 0.0);
        }
        let width = self.edges[1] - self.edges[0];
        let p = ((s / width) as usize).min(self.values.len() - 1);
        let (a, b) = (self.edges[p], self.edges[p + 1]);
        let basis = lagrange_basis(&self.ref_nodes, &self.bary, (2.0 * s - a - b) / (b - a));
        basis.iter().zip(&self.values[p]).map(|(l, v)| v * *l).sum()
    }
}
