//! The remainder determinant Q_R on a truncated tail [R, R+L].
//!
//! Direct route: with g = e^{−zb} − 1, the product W_{e^{zb₋}} R_{e^{−zb}} W_{e^{zb₊}}
//! restricted to [R, ∞) has the same nonzero spectrum as R_g·T, where
//! T = χ W_{e^{zb₊}} W_{e^{zb₋}} χ = I + W_{e^{zb}−1} − M and M is the Gram operator of
//! the shifted one-sided transforms h(x − R + v), h = F[e^{zb₊} − 1].
//!
//! Hankel route (ν = ±1/2): Q_R = det(I ∓ χ H χ) with kernel G(x + y),
//! G = F[e^{zb₋ − zb₊}] built from the two one-sided transforms.

use crate::fredholm::{build_grid, prefix_log_dets, prefix_log_dets_split, CMatrix, QuadratureGrid};
use crate::kernels::{difference_matrix, wiener_hopf_matrix, Profile};
use crate::quadrature::{barycentric_weights, composite, gauss_legendre, lagrange_basis, uniform_edges};
use crate::special_functions::BesselOrder;
use crate::symbols::{PlusExponential, SymbolSpec};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::Arc;

/// Which route computes Q_R.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QMethod {
    Direct,
    Hankel,
}

/// log det(I + K_X) for every panel end X of a truncated tail [R, R+L].
#[derive(Debug, Clone)]
pub struct TailSeries {
    pub ends: Vec<f64>,
    pub logs: Vec<Complex64>,
}

/// Largest t at which |f(t)| exceeds 1e-12 of its peak.
pub fn bandwidth(profile: &Profile) -> f64 {
    let ext = profile.extent();
    let step = profile.feature_length() / 8.0;
    let n = (ext / step).ceil() as usize;
    let vals: Vec<f64> = (0..=n).map(|k| profile.value(k as f64 * step).norm()).collect();
    let peak = vals.iter().cloned().fold(0.0, f64::max);
    let last = vals.iter().rposition(|v| *v > 1e-12 * peak).unwrap_or(0);
    ((last + 1) as f64 * step).min(ext).max(step)
}

/// Uniform order-16 grid on [a, b] resolving oscillations up to `freq`
/// (half a panel spans at most four radians).
pub fn resolving_grid(a: f64, b: f64, freq: f64, refine: u32) -> Result<QuadratureGrid> {
    let len = 1f64.min(8.0 / freq) / 2f64.powi(refine as i32);
    build_grid(a, b, ((b - a) / len).ceil().max(1.0) as usize, 16 + 4 * refine as usize)
}

pub(crate) fn plus_exponential(b: &SymbolSpec, z: Complex64) -> Result<PlusExponential> {
    PlusExponential::new(b, z)
}

/// T = χW_{e^{zb₊}}χW_{e^{zb₋}}χ on [R, ∞) restricted to `grid`:
/// I + W_{e^{zb}−1} − ∫_0^∞ h(x − R + v)h(y − R + v)dv, h = F[e^{zb₊} − 1].
pub(crate) fn triangular_product(
    b: &SymbolSpec,
    z: Complex64,
    grid: &Arc<QuadratureGrid>,
    r: f64,
    refine: u32,
) -> Result<CMatrix> {
    let e = Profile::exp_minus_one(b, z);
    let mut t = wiener_hopf_matrix(&e, grid.clone(), refine)?.matrix;
    t -= shifted_gram(&plus_exponential(b, z)?, grid, -r, refine);
    for i in 0..grid.len() {
        t[(i, i)] += 1.0;
    }
    Ok(t)
}

/// √w_i √w_j ∫_0^∞ h(x_i + shift + v)h(x_j + shift + v)dv.
pub(crate) fn shifted_gram(h: &PlusExponential, grid: &QuadratureGrid, shift: f64, refine: u32) -> CMatrix {
    let (v, wv) = composite(&uniform_edges(0.0, h.support_end(), 0.25 / 2f64.powi(refine as i32)), 16);
    let hm =
        CMatrix::from_fn(grid.len(), v.len(), |i, k| h.eval(grid.nodes[i] + shift + v[k]) * (grid.weights[i] * wv[k]).sqrt());
    &hm * hm.transpose()
}

/// log det(I + AB) on every panel prefix of the grid, as the leading minors
/// of [[I, −A], [B, I]] with the two copies of each panel adjacent.
pub(crate) fn product_prefix_logs(a: &CMatrix, b: &CMatrix, order: usize) -> Vec<Complex64> {
    let n = a.nrows();
    let first = |i: usize| i + order * (i / order);
    let second = |i: usize| first(i) + order;
    let real = a.iter().chain(b.iter()).all(|v| v.im == 0.0);
    let mut re = DMatrix::<f64>::zeros(2 * n, 2 * n);
    let mut im = DMatrix::<f64>::zeros(if real { 0 } else { 2 * n }, if real { 0 } else { 2 * n });
    for j in 0..n {
        re[(first(j), first(j))] = 1.0;
        re[(second(j), second(j))] = 1.0;
        for i in 0..n {
            re[(first(i), second(j))] = -a[(i, j)].re;
            re[(second(i), first(j))] = b[(i, j)].re;
            if !real {
                im[(first(i), second(j))] = -a[(i, j)].im;
                im[(second(i), first(j))] = b[(i, j)].im;
            }
        }
    }
    prefix_log_dets_split(re, if real { None } else { Some(im) }, 2 * order)
}

/// Direct route on [R, R+L]: det(I + R_g T), g = e^{−zb} − 1, on every prefix [R, X].
pub fn q_direct_tail(b: &SymbolSpec, z: Complex64, order: BesselOrder, r: f64, l: f64, refine: u32) -> Result<TailSeries> {
    let g = Profile::exp_minus_one(b, -z);
    let grid = Arc::new(resolving_grid(r, r + l, bandwidth(&g), refine)?);
    let rg = difference_matrix(&g, order, grid.clone(), refine)?.matrix;
    let t = triangular_product(b, z, &grid, r, refine)?;
    let logs = product_prefix_logs(&rg, &t, grid.order);
    Ok(TailSeries { ends: grid.edges[1..].to_vec(), logs })
}

/// Piecewise-polynomial table of G(s) = F[e^{zb₋ − zb₊}](s) − δ on s ≥ 0.
pub(crate) struct HankelSymbol {
    edges: Vec<f64>,
    ref_nodes: Vec<f64>,
    bary: Vec<f64>,
    values: Vec<Vec<Complex64>>,
}

impl HankelSymbol {
    pub fn new(b: &SymbolSpec, z: Complex64, s_lo: f64, s_hi: f64) -> Result<Self> {
        let hp = plus_exponential(b, z)?;
        let hm = plus_exponential(b, -z)?;
        let top = hp.support_end().max(hm.support_end());
        let (u, wu) = composite(&uniform_edges(0.0, hp.support_end(), 0.125), 16);
        let hu: Vec<Complex64> = u.iter().map(|x| hp.eval(*x)).collect();
        let g = |s: f64| -> Complex64 {
            let conv: Complex64 = u.iter().zip(&wu).zip(&hu).map(|((x, w), h)| h * hm.eval(s + x) * *w).sum();
            hm.eval(s) + conv
        };
        let hi = s_hi.min(s_lo.max(0.0) + 2.0 * top).max(s_lo + 0.25);
        let edges = uniform_edges(s_lo, hi, 0.25);
        let (t, _) = gauss_legendre(20);
        let bary = barycentric_weights(&t);
        let values =
            edges.par_windows(2).map(|p| t.iter().map(|x| g(0.5 * (p[0] + p[1]) + 0.5 * (p[1] - p[0]) * x)).collect()).collect();
        Ok(Self { edges, ref_nodes: t, bary, values })
    }

    pub fn eval(&self, s: f64) -> Complex64 {
        let (lo, hi) = (self.edges[0], *self.edges.last().unwrap());
        if s < lo || s >= hi {
            return Complex64::default();
        }
        let width = self.edges[1] - self.edges[0];
        let p = (((s - lo) / width) as usize).min(self.values.len() - 1);
        let (a, b) = (self.edges[p], self.edges[p + 1]);
        let basis = lagrange_basis(&self.ref_nodes, &self.bary, (2.0 * s - a - b) / (b - a));
        basis.iter().zip(&self.values[p]).map(|(l, v)| v * *l).sum()
    }
}

/// Hankel route on [R, R+L]; only for ν = ±1/2.
pub fn q_hankel_tail(b: &SymbolSpec, z: Complex64, order: BesselOrder, r: f64, l: f64, refine: u32) -> Result<TailSeries> {
    let sign = match order.nu() {
        0.5 => -1.0,
        -0.5 => 1.0,
        nu => return Err(Error::Precondition(format!("hankel route needs order ±1/2, got {nu}"))),
    };
    let g = Profile::exp_minus_one(b, -z);
    let grid = resolving_grid(r, r + l, bandwidth(&g), refine)?;
    let table = HankelSymbol::new(b, z, 2.0 * r, 2.0 * (r + l))?;
    let n = grid.len();
    let mut k = CMatrix::from_fn(n, n, |i, j| {
        let (x, y) = (grid.nodes[i], grid.nodes[j]);
        table.eval(x + y) * (sign * (grid.weights[i] * grid.weights[j]).sqrt())
    });
    for i in 0..n {
        k[(i, i)] += 1.0;
    }
    let logs = prefix_log_dets(&k, grid.order);
    Ok(TailSeries { ends: grid.edges[1..].to_vec(), logs })
}

/// Least-squares fit of log Q(X) = q∞ + Σ_{k=1}^{5} c_k X^{−k} over the
/// prefixes with X in [lo, hi]; returns q∞.
pub fn extrapolate(series: &TailSeries, lo: f64, hi: f64) -> Result<Complex64> {
    let pts: Vec<(f64, Complex64)> = series
        .ends
        .iter()
        .zip(&series.logs)
        .filter(|(x, _)| **x >= lo - 1e-9 && **x <= hi + 1e-9)
        .map(|(x, v)| (*x, *v))
        .collect();
    const TERMS: usize = 6;
    if pts.len() < TERMS + 2 {
        return Err(Error::Precondition(format!("{} tail points are too few to extrapolate", pts.len())));
    }
    let scale = hi;
    let design = DMatrix::from_fn(pts.len(), TERMS, |i, k| (scale / pts[i].0).powi(k as i32));
    let svd = design.svd(true, true);
    let solve = |rhs: DVector<f64>| svd.solve(&rhs, 1e-14).map(|c| c[0]).map_err(|e| Error::Fit(e.to_string()));
    let re = solve(DVector::from_iterator(pts.len(), pts.iter().map(|p| p.1.re)))?;
    let im = solve(DVector::from_iterator(pts.len(), pts.iter().map(|p| p.1.im)))?;
    Ok(Complex64::new(re, im))
}

/// Tail-length and resolution controls for Q_R.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RemainderOptions {
    pub start_length: f64,
    pub max_length: f64,
    /// Required change of log Q_R under doubling of L.
    pub tail_tol: f64,
    /// Tail length of the refinement check.
    pub check_length: f64,
}

impl Default for RemainderOptions {
    fn default() -> Self {
        Self { start_length: 20.0, max_length: 160.0, tail_tol: 1e-9, check_length: 10.0 }
    }
}

/// Q_R with the bookkeeping of its tail truncation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RemainderResult {
    pub log: Complex64,
    pub value: Complex64,
    pub method: QMethod,
    /// Final L of the truncation [R, R+L].
    pub tail_length: f64,
    /// Extrapolated minus raw log Q_R at that L (zero when the raw value had settled).
    pub tail_correction: Complex64,
    /// |Δ log Q_R| between L/2 and L.
    pub tail_change: f64,
    /// |Δ log Q_R| under grid and t-rule refinement on [R, R + check_length].
    pub convergence_estimate: f64,
}

fn tail(b: &SymbolSpec, z: Complex64, order: BesselOrder, r: f64, l: f64, refine: u32, method: QMethod) -> Result<TailSeries> {
    match method {
        QMethod::Direct => q_direct_tail(b, z, order, r, l, refine),
        QMethod::Hankel => q_hankel_tail(b, z, order, r, l, refine),
    }
}

fn value_at(series: &TailSeries, x: f64) -> Complex64 {
    let i = series.ends.iter().position(|e| *e >= x - 1e-9).unwrap_or(series.ends.len() - 1);
    series.logs[i]
}

/// log Q_R for the multiple z·b with adaptive tail length.
pub fn remainder_with(
    b: &SymbolSpec,
    z: Complex64,
    order: BesselOrder,
    r: f64,
    method: QMethod,
    opts: &RemainderOptions,
) -> Result<RemainderResult> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    if method == QMethod::Hankel && !order.is_half_integer() {
        return Err(Error::Precondition(format!("hankel route needs order ±1/2, got {}", order.nu())));
    }
    if b.is_zero() || z == Complex64::default() {
        let zero = Complex64::default();
        return Ok(RemainderResult {
            log: zero,
            value: Complex64::new(1.0, 0.0),
            method,
            tail_length: 0.0,
            tail_correction: zero,
            tail_change: 0.0,
            convergence_estimate: 0.0,
        });
    }
    let coarse = tail(b, z, order, r, opts.check_length, 0, method)?;
    let fine = tail(b, z, order, r, opts.check_length, 1, method)?;
    let convergence_estimate = (coarse.logs.last().unwrap() - fine.logs.last().unwrap()).norm();
    let mut l = opts.start_length;
    loop {
        let series = tail(b, z, order, r, l, 0, method)?;
        let raw = *series.logs.last().unwrap();
        let raw_change = (raw - value_at(&series, r + 0.5 * l)).norm();
        let ext = extrapolate(&series, r + 0.25 * l, r + l)?;
        // Too short a half window simply rules the extrapolation out for this L.
        let ext_change = extrapolate(&series, r + 0.125 * l, r + 0.5 * l).map_or(f64::INFINITY, |h| (ext - h).norm());
        let (log, change) = if raw_change <= ext_change { (raw, raw_change) } else { (ext, ext_change) };
        if change < opts.tail_tol || 2.0 * l > opts.max_length {
            if change >= opts.tail_tol {
                return Err(Error::NotConverged(format!(
                    "Q_R tail at R = {r}: change {change:.3e} at L = {l} exceeds {:.1e}",
                    opts.tail_tol
                )));
            }
            return Ok(RemainderResult {
                log,
                value: log.exp(),
                method,
                tail_length: l,
                tail_correction: log - raw,
                tail_change: change,
                convergence_estimate,
            });
        }
        l *= 2.0;
    }
}

/// Q_R(b) with default controls.
pub fn q_remainder(b: &SymbolSpec, order: BesselOrder, r: f64, method: QMethod) -> Result<Complex64> {
    Ok(remainder_with(b, Complex64::new(1.0, 0.0), order, r, method, &RemainderOptions::default())?.value)
}
