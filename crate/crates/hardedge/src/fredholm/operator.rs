use super::grid::QuadratureGrid;
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;

pub type CMatrix = DMatrix<Complex64>;

/// Symmetrized Nyström matrix √w_i K(x_i, x_j) √w_j.
#[derive(Debug, Clone)]
pub struct DiscretizedOperator {
    pub grid: Arc<QuadratureGrid>,
    pub matrix: CMatrix,
    pub kind: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeterminantResult {
    pub value: Complex64,
    /// Branch-accumulated complex logarithm; `log.re` is ln|det|.
    pub log: Complex64,
    pub log_abs: f64,
    /// |Δ log det| under grid refinement (0 when not estimated).
    pub convergence_estimate: f64,
}

impl DeterminantResult {
    pub fn from_log(log: Complex64, convergence_estimate: f64) -> Self {
        Self { value: log.exp(), log, log_abs: log.re, convergence_estimate }
    }

    pub fn converged(&self, tol: f64) -> bool {
        self.convergence_estimate < tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Functionals {
    pub trace: Complex64,
    pub det: Complex64,
    pub log_det: Complex64,
    pub det2: Complex64,
    pub nuclear_norm: f64,
    pub op_norm: f64,
}

impl DiscretizedOperator {
    pub fn from_matrix(grid: Arc<QuadratureGrid>, matrix: CMatrix, kind: impl Into<String>) -> Result<Self> {
        let n = grid.len();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, matrix, kind: kind.into() })
    }

    pub fn zero(grid: Arc<QuadratureGrid>) -> Self {
        let n = grid.len();
        Self { grid, matrix: CMatrix::zeros(n, n), kind: "zero".into() }
    }

    pub fn len(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.nrows() == 0
    }

    /// Rows (and columns) whose node lies outside [lo, hi] are zeroed.
    pub fn masked(&self, lo: f64, hi: f64) -> Self {
        let keep: Vec<bool> = self.grid.nodes.iter().map(|x| *x >= lo && *x <= hi).collect();
        let mut m = self.matrix.clone();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if !(keep[i] && keep[j]) {
                    m[(i, j)] = Complex64::new(0.0, 0.0);
                }
            }
        }
        Self { grid: self.grid.clone(), matrix: m, kind: format!("mask({})", self.kind) }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self { grid: self.grid.clone(), matrix: &self.matrix * factor, kind: self.kind.clone() }
    }

    pub fn log_det(&self) -> Complex64 {
        log_det_identity_plus(&self.matrix)
    }

    pub fn functionals(&self) -> Functionals {
        functionals(self)
    }
}

/// Evaluate `kernel` on grid × grid; rows are built in parallel.
pub fn discretize<K>(kernel: K, grid: Arc<QuadratureGrid>, kind: impl Into<String>) -> Result<DiscretizedOperator>
where
    K: Fn(f64, f64) -> Complex64 + Sync,
{
    let n = grid.len();
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let rows: Vec<Result<Vec<Complex64>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = grid.nodes[i];
            (0..n)
                .map(|j| {
                    let v = kernel(xi, grid.nodes[j]);
                    if v.re.is_finite() && v.im.is_finite() {
                        Ok(v * sw[i] * sw[j])
                    } else {
                        Err(Error::Evaluation { x: xi, y: grid.nodes[j] })
                    }
                })
                .collect()
        })
        .collect();
    let mut matrix = CMatrix::zeros(n, n);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row?.into_iter().enumerate() {
            matrix[(i, j)] = v;
        }
    }
    Ok(DiscretizedOperator { grid, matrix, kind: kind.into() })
}

/// Real-valued convenience wrapper around [`discretize`].
pub fn discretize_real<K>(kernel: K, grid: Arc<QuadratureGrid>, kind: impl Into<String>) -> Result<DiscretizedOperator>
where
    K: Fn(f64, f64) -> f64 + Sync,
{
    discretize(|x, y| Complex64::new(kernel(x, y), 0.0), grid, kind)
}

/// log det(I + K) by partial-pivot LU, summing logarithms of the pivots.
pub fn log_det_identity_plus(k: &CMatrix) -> Complex64 {
    let n = k.nrows();
    let a = CMatrix::identity(n, n) + k;
    log_det(a)
}

/// log det(A) by partial-pivot LU; −∞ real part for singular A.
pub fn log_det(a: CMatrix) -> Complex64 {
    let n = a.nrows();
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let lu = a.lu();
    let sign: Complex64 = lu.p().determinant();
    let u = lu.u();
    let mut acc = if sign.re < 0.0 { Complex64::new(0.0, std::f64::consts::PI) } else { Complex64::new(0.0, 0.0) };
    for i in 0..n {
        let d = u[(i, i)];
        if d.norm() == 0.0 {
            return Complex64::new(f64::NEG_INFINITY, 0.0);
        }
        acc += d.ln();
    }
    acc
}

pub fn functionals(op: &DiscretizedOperator) -> Functionals {
    let trace = op.matrix.trace();
    let log_det = op.log_det();
    let det = if log_det.re == f64::NEG_INFINITY { Complex64::new(0.0, 0.0) } else { log_det.exp() };
    let sv = if op.is_empty() { nalgebra::DVector::zeros(0) } else { op.matrix.clone().singular_values() };
    Functionals {
        trace,
        det,
        log_det,
        det2: det * (-trace).exp(),
        nuclear_norm: sv.iter().sum(),
        op_norm: sv.iter().cloned().fold(0.0, f64::max),
    }
}

pub fn nuclear_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone().singular_values().iter().sum()
}

/// Operator product; the symmetrized weights make this a plain matrix product.
pub fn compose(a: &DiscretizedOperator, b: &DiscretizedOperator) -> Result<DiscretizedOperator> {
    if !(Arc::ptr_eq(&a.grid, &b.grid) || a.grid == b.grid) {
        return Err(Error::GridMismatch);
    }
    Ok(DiscretizedOperator { grid: a.grid.clone(), matrix: &a.matrix * &b.matrix, kind: format!("{}*{}", a.kind, b.kind) })
}

/// log det(I + K) on `grid` and on its refinement; the difference is the convergence estimate.
pub fn refined_determinant<K>(kernel: K, grid: &QuadratureGrid, extra_order: usize) -> Result<DeterminantResult>
where
    K: Fn(f64, f64) -> Complex64 + Sync,
{
    let coarse = Arc::new(grid.clone());
    let fine = Arc::new(grid.refined(extra_order)?);
    let lc = discretize(&kernel, coarse, "coarse")?.log_det();
    let lf = discretize(&kernel, fine, "fine")?.log_det();
    Ok(DeterminantResult::from_log(lf, (lf - lc).norm()))
}
