//! Nyström matrices of B_f, W_f, H_f and R_f from a shared t-quadrature:
//! every kernel is Σ_k w_k f(t_k)·φ(x t_k)ψ(y t_k), so the matrix is a
//! weighted Gram product of two factor matrices.

use super::decomposition::t_edges;
use super::profile::Profile;
use crate::fredholm::{discretize, CMatrix, DiscretizedOperator, QuadratureGrid};
use crate::quadrature::composite;
use crate::special_functions::{oscillatory_parts_unchecked, BesselOrder};
use crate::Result;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::sync::Arc;

/// t-nodes and weights (weights already multiplied by f(t_k)).
pub struct TRule {
    pub t: Vec<f64>,
    /// Plain quadrature weights.
    pub w: Vec<f64>,
    pub fw: Vec<Complex64>,
}

impl TRule {
    /// Panels of one period at frequency `max_freq`, halved `refine` times.
    pub fn new(profile: &Profile, max_freq: f64, refine: u32) -> Self {
        let period = 2.0 * PI / max_freq.max(1e-3);
        let step = period.min(profile.feature_length()) / 2f64.powi(refine as i32);
        let mut edges = t_edges(profile, period.min(step), step, profile.extent());
        for b in profile.breakpoints() {
            if !edges.iter().any(|e| (e - b).abs() < 1e-14) {
                edges.push(b);
            }
        }
        edges.sort_by(f64::total_cmp);
        let (t, w) = composite(&edges, 16);
        let fw = t.iter().zip(&w).map(|(t, w)| profile.value(*t) * *w).collect();
        Self { t, w, fw }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

fn factor<F: Fn(f64) -> f64 + Sync>(grid: &QuadratureGrid, rule: &TRule, f: F) -> DMatrix<f64> {
    let n = grid.len();
    let m = rule.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (x, sw) = (grid.nodes[i], grid.weights[i].sqrt());
            rule.t.iter().map(|t| sw * f(x * t)).collect()
        })
        .collect();
    DMatrix::from_fn(n, m, |i, k| rows[i][k])
}

fn bessel_factor(order: BesselOrder, grid: &QuadratureGrid, rule: &TRule) -> DMatrix<f64> {
    let nu = order.nu();
    factor(grid, rule, |u| oscillatory_parts_unchecked(nu, u).frak_j)
}

/// Σ_p sign_p · A_p diag(d) A_pᵀ, computed in parallel row blocks.
fn weighted_gram(factors: &[(&DMatrix<f64>, f64)], d: &[Complex64]) -> CMatrix {
    let n = factors[0].0.nrows();
    let real = d.iter().all(|v| v.im == 0.0);
    let parts: Vec<(DMatrix<f64>, DMatrix<f64>)> = factors
        .iter()
        .map(|(a, sign)| {
            let scale = |pick: fn(&Complex64) -> f64| {
                let mut s = (*a).clone();
                for (k, mut col) in s.column_iter_mut().enumerate() {
                    col *= sign * pick(&d[k]);
                }
                s
            };
            let re = scale(|v| v.re);
            let im = if real { DMatrix::zeros(0, 0) } else { scale(|v| v.im) };
            (re, im)
        })
        .collect();
    const BLOCK: usize = 64;
    let blocks: Vec<(usize, DMatrix<f64>, DMatrix<f64>)> = (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let rows = BLOCK.min(n - lo);
            let mut re = DMatrix::zeros(rows, n);
            let mut im = DMatrix::zeros(if real { 0 } else { rows }, if real { 0 } else { n });
            for ((a, _), (sre, sim)) in factors.iter().zip(&parts) {
                re += sre.rows(lo, rows) * a.transpose();
                if !real {
                    im += sim.rows(lo, rows) * a.transpose();
                }
            }
            (lo, re, im)
        })
        .collect();
    let mut out = CMatrix::zeros(n, n);
    for (lo, re, im) in blocks {
        for i in 0..re.nrows() {
            for j in 0..n {
                let v = if real { 0.0 } else { im[(i, j)] };
                out[(lo + i, j)] = Complex64::new(re[(i, j)], v);
            }
        }
    }
    out
}

fn max_node(grid: &QuadratureGrid) -> f64 {
    grid.nodes.last().copied().unwrap_or(1.0)
}

/// Matrix of B_f on `grid`.
pub fn bessel_matrix(
    profile: &Profile,
    order: BesselOrder,
    grid: Arc<QuadratureGrid>,
    refine: u32,
) -> Result<DiscretizedOperator> {
    let rule = TRule::new(profile, 2.0 * max_node(&grid), refine);
    bessel_matrix_with_rule(order, grid, &rule)
}

/// Matrix of B_f with a caller-supplied t-rule (weights already carry f).
pub fn bessel_matrix_with_rule(order: BesselOrder, grid: Arc<QuadratureGrid>, rule: &TRule) -> Result<DiscretizedOperator> {
    let u = bessel_factor(order, &grid, rule);
    BesselFactor { u, t: rule.t.clone() }.matrix(grid, &rule.fw)
}

/// The k-independent factor √w_i 𝔍(x_i t_k) of B_f, reusable across profiles
/// sharing the same t-nodes.
pub struct BesselFactor {
    u: DMatrix<f64>,
    pub t: Vec<f64>,
}

impl BesselFactor {
    pub fn new(order: BesselOrder, grid: &QuadratureGrid, rule: &TRule) -> Self {
        Self { u: bessel_factor(order, grid, rule), t: rule.t.clone() }
    }

    /// B_f on `grid` for weights fw_k = w_k f(t_k).
    pub fn matrix(&self, grid: Arc<QuadratureGrid>, fw: &[Complex64]) -> Result<DiscretizedOperator> {
        let m = weighted_gram(&[(&self.u, 1.0)], fw);
        DiscretizedOperator::from_matrix(grid, m, "bessel")
    }
}

fn trig_matrix(profile: &Profile, grid: Arc<QuadratureGrid>, refine: u32, hankel: bool) -> Result<DiscretizedOperator> {
    let kind = if hankel { "hankel" } else { "wiener-hopf" };
    if !matches!(profile, Profile::ExpMinusOne { .. }) {
        let p = profile.clone();
        return discretize(move |x, y| p.cosine_transform(if hankel { x + y } else { x - y }), grid, kind);
    }
    let rule = TRule::new(profile, 2.0 * max_node(&grid), refine);
    let c = factor(&grid, &rule, f64::cos);
    let s = factor(&grid, &rule, f64::sin);
    let fw: Vec<Complex64> = rule.fw.iter().map(|v| v / PI).collect();
    let sign = if hankel { -1.0 } else { 1.0 };
    let m = weighted_gram(&[(&c, 1.0), (&s, sign)], &fw);
    DiscretizedOperator::from_matrix(grid, m, kind)
}

/// Matrix of W_f (kernel f̂(x − y)).
pub fn wiener_hopf_matrix(profile: &Profile, grid: Arc<QuadratureGrid>, refine: u32) -> Result<DiscretizedOperator> {
    trig_matrix(profile, grid, refine, false)
}

/// Matrix of H_f (kernel f̂(x + y)).
pub fn hankel_matrix(profile: &Profile, grid: Arc<QuadratureGrid>, refine: u32) -> Result<DiscretizedOperator> {
    trig_matrix(profile, grid, refine, true)
}

/// Matrix of R_f = B_f − W_f; at ν = ±1/2 this is ∓H_f.
pub fn difference_matrix(
    profile: &Profile,
    order: BesselOrder,
    grid: Arc<QuadratureGrid>,
    refine: u32,
) -> Result<DiscretizedOperator> {
    if order.is_half_integer() {
        let h = hankel_matrix(profile, grid, refine)?;
        let sign = if order.nu() > 0.0 { -1.0 } else { 1.0 };
        let mut out = h.scaled(Complex64::new(sign, 0.0));
        out.kind = "difference".into();
        return Ok(out);
    }
    let rule = TRule::new(profile, 2.0 * max_node(&grid), refine);
    let u = bessel_factor(order, &grid, &rule);
    let c = factor(&grid, &rule, f64::cos);
    let s = factor(&grid, &rule, f64::sin);
    let inv_pi = 1.0 / PI;
    let m = weighted_gram(&[(&u, 1.0), (&c, -inv_pi), (&s, -inv_pi)], &rule.fw);
    DiscretizedOperator::from_matrix(grid, m, "difference")
}
