//! Eigenpairs of the hard-edge kernel K(x, y) = ∫_0^1 𝔍(xt)𝔍(yt)dt restricted to [0, R].

use crate::fredholm::QuadratureGrid;
use crate::special_functions::{bessel_pair, dpp_kernel_unchecked, BesselOrder};
use crate::{Error, Result};
use nalgebra::DMatrix;
use std::sync::Arc;

/// Largest tolerated eigenvalue excursion outside [0, 1] before clamping.
const CLAMP_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct RestrictedSpectrum {
    pub order: BesselOrder,
    pub r: f64,
    pub grid: Arc<QuadratureGrid>,
    /// Descending, clamped to [0, 1].
    pub eigenvalues: Vec<f64>,
    /// Column k holds √w_i φ_k(x_i), orthonormal in ℓ².
    pub eigenvectors: DMatrix<f64>,
    /// Largest excursion removed by clamping.
    pub clamped: f64,
}

/// Grid on [0, R]: panels of length ≤ 2 (the kernel is band-limited to
/// frequency 1), graded towards the hard edge.
pub fn spectrum_grid(r: f64) -> Result<QuadratureGrid> {
    QuadratureGrid::graded(0.0, r, 2.0, 1e-6 * r.min(1.0), 4.0, 16)
}

pub fn restricted_spectrum(order: BesselOrder, r: f64) -> Result<RestrictedSpectrum> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    restricted_spectrum_on(order, Arc::new(spectrum_grid(r)?))
}

/// Kernel values with J_ν, J_{ν+1} shared across rows and columns.
pub(crate) struct KernelTable {
    nu: f64,
    pairs_x: Vec<(f64, f64)>,
    pairs_y: Vec<(f64, f64)>,
}

impl KernelTable {
    pub(crate) fn new(order: BesselOrder, xs: &[f64], ys: &[f64]) -> Result<Self> {
        let pairs = |v: &[f64]| v.iter().map(|x| bessel_pair(order, *x)).collect::<Result<Vec<_>>>();
        Ok(Self { nu: order.nu(), pairs_x: pairs(xs)?, pairs_y: pairs(ys)? })
    }

    /// K(x_i, y_j) by the Lommel form, falling back near the diagonal.
    pub(crate) fn at(&self, x: f64, y: f64, i: usize, j: usize) -> f64 {
        if (x - y).abs() < 1e-6 * (1.0 + x) || x == 0.0 || y == 0.0 {
            return if x == 0.0 || y == 0.0 { 0.0 } else { dpp_kernel_unchecked(self.nu, x, y) };
        }
        let (jx, jx1) = self.pairs_x[i];
        let (jy, jy1) = self.pairs_y[j];
        (x * y).sqrt() * (x * jx1 * jy - y * jx * jy1) / (x * x - y * y)
    }
}

pub fn restricted_spectrum_on(order: BesselOrder, grid: Arc<QuadratureGrid>) -> Result<RestrictedSpectrum> {
    let x = &grid.nodes;
    let n = x.len();
    let table = KernelTable::new(order, x, x)?;
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = sw[i] * sw[j] * table.at(x[i], x[j], i, j);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    let eig = m.symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|a, b| eig.eigenvalues[*b].total_cmp(&eig.eigenvalues[*a]));
    let mut clamped = 0.0f64;
    let eigenvalues: Vec<f64> = idx
        .iter()
        .map(|&k| {
            let l = eig.eigenvalues[k];
            let c = l.clamp(0.0, 1.0);
            clamped = clamped.max((l - c).abs());
            c
        })
        .collect();
    log::debug!("restricted spectrum: n={n}, clamping magnitude {clamped:.3e}");
    if clamped > CLAMP_TOL {
        return Err(Error::Resolution { estimate: clamped, tolerance: CLAMP_TOL });
    }
    let eigenvectors = DMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, idx[k])]);
    Ok(RestrictedSpectrum { order, r: grid.interval.1, grid, eigenvalues, eigenvectors, clamped })
}

impl RestrictedSpectrum {
    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Σλ(1 − λ), the variance of the point count.
    pub fn count_variance(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l * (1.0 - l)).sum()
    }

    /// Nyström extension of eigenfunction `k` to arbitrary points: row k of the
    /// result holds φ_k(y) = λ_k⁻¹ Σ_j K(y, x_j)√w_j v_jk. Rows for vanishing
    /// (clamped) eigenvalues are zero.
    pub fn eigenfunctions_at(&self, ks: &[usize], ys: &[f64]) -> Result<DMatrix<f64>> {
        let x = &self.grid.nodes;
        let table = KernelTable::new(self.order, ys, x)?;
        let sw: Vec<f64> = self.grid.weights.iter().map(|w| w.sqrt()).collect();
        let kmat = DMatrix::from_fn(ys.len(), x.len(), |i, j| sw[j] * table.at(ys[i], x[j], i, j));
        let mut v = DMatrix::zeros(x.len(), ks.len());
        for (c, &k) in ks.iter().enumerate() {
            let lam = self.eigenvalues[k];
            let inv = if lam > 0.0 { 1.0 / lam } else { 0.0 };
            v.set_column(c, &(self.eigenvectors.column(k) * inv));
        }
        Ok((kmat * v).transpose())
    }
}
