//! Decay of |Q_R − 1| and of the truncated difference operator's trace norm in R.

use super::remainder::{q_remainder, QMethod};
use crate::fredholm::QuadratureGrid;
use crate::kernels::{difference_matrix, Profile};
use crate::special_functions::BesselOrder;
use crate::symbols::{exp_symbol_norm_bound, wh_split, SymbolSpec};
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    #[serde(rename = "R")]
    pub r: f64,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    /// Least-squares slope of log value against log R; NaN when degenerate.
    pub fitted_slope: f64,
    /// Envelope constant fixed by the first row.
    pub fitted_constant: f64,
    /// All values vanish (b = 0), so no slope exists.
    pub degenerate: bool,
}

impl ScanResult {
    /// Rows ordered by R; `envelope(R)` is the bound up to the constant
    /// fitted so that it matches the first value.
    pub(crate) fn from_values(mut pts: Vec<(f64, f64)>, envelope: impl Fn(f64) -> f64) -> Result<Self> {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        if pts.iter().any(|(_, v)| !v.is_finite()) {
            return Err(Error::NotConverged("scan produced a non-finite value".into()));
        }
        let degenerate = pts.iter().all(|(_, v)| *v == 0.0);
        let (r0, v0) = pts.first().copied().unwrap_or((1.0, 0.0));
        let constant = if envelope(r0) > 0.0 { v0 / envelope(r0) } else { 0.0 };
        let rows = pts.iter().map(|&(r, value)| ScanRow { r, value, bound: constant * envelope(r) }).collect::<Vec<_>>();
        let fitted_slope = if degenerate { f64::NAN } else { loglog_slope(&rows) };
        Ok(Self { rows, fitted_slope, fitted_constant: constant, degenerate })
    }

    /// Slope over the first k rows (NaN for k < 2).
    pub fn running_slope(&self, k: usize) -> f64 {
        if k < 2 || self.degenerate {
            return f64::NAN;
        }
        loglog_slope(&self.rows[..k])
    }

    /// CSV with header `R,value,bound,slope_running`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("R,value,bound,slope_running\n");
        for (i, row) in self.rows.iter().enumerate() {
            let slope = self.running_slope(i + 1);
            let slope = if slope.is_nan() { String::new() } else { format!("{slope:.16e}") };
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e},{}", row.r, row.value, row.bound, slope);
        }
        out
    }

    /// Every row has value ≤ bound (up to a relative slack).
    pub fn dominated(&self, slack: f64) -> bool {
        self.rows.iter().all(|r| r.value <= r.bound * (1.0 + slack))
    }
}

fn loglog_slope(rows: &[ScanRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.value > 0.0).map(|r| (r.r.ln(), r.value.ln())).collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn check_list(rs: &[f64]) -> Result<()> {
    if rs.is_empty() || rs.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return Err(Error::Domain("R list must be non-empty and positive".into()));
    }
    if rs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("R list must increase".into()));
    }
    Ok(())
}

/// sup |b₊| from the spectral splitting on a wide periodic axis.
pub fn plus_part_sup(b: &SymbolSpec) -> Result<f64> {
    if b.is_zero() {
        return Ok(0.0);
    }
    let pair = wh_split(b, 4.0 * b.extent(), 8192)?;
    Ok(pair.b_plus.iter().map(|v| v.norm()).fold(0.0, f64::max))
}

/// |Q_R − 1| over `rs` against C·L(b)e^{4‖b₊‖_∞}/√R.
pub fn rate_scan(b: &SymbolSpec, order: BesselOrder, rs: &[f64]) -> Result<ScanResult> {
    check_list(rs)?;
    if b.is_zero() {
        return ScanResult::from_values(rs.iter().map(|r| (*r, 0.0)).collect(), |r| 1.0 / r.sqrt());
    }
    let method = if order.is_half_integer() { QMethod::Hankel } else { QMethod::Direct };
    let values = rs.par_iter().map(|&r| Ok((r, (q_remainder(b, order, r, method)? - 1.0).norm()))).collect::<Result<Vec<_>>>()?;
    let scale = b.norms().l_b * (4.0 * plus_part_sup(b)?).exp();
    ScanResult::from_values(values, |r| scale / r.sqrt())
}

/// Length of the truncation window [R, R+L] for the trace-norm scan.
pub fn trace_window(r: f64) -> f64 {
    (2.0 * r).max(40.0)
}

/// Nuclear norm of R_{e^{−b}} restricted to [R, R+L].
pub fn truncated_trace_norm(b: &SymbolSpec, order: BesselOrder, r: f64, l: f64) -> Result<f64> {
    let profile = Profile::exp_minus_one(b, Complex64::new(-1.0, 0.0));
    let edges = crate::quadrature::uniform_edges(r, r + l, 1.0);
    let grid = Arc::new(QuadratureGrid::from_edges(&edges, 12)?);
    let m = difference_matrix(&profile, order, grid, 0)?.matrix;
    // Real symmetric for real b: eigenvalues give the singular values.
    if m.iter().all(|v| v.im == 0.0) {
        let re = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| 0.5 * (m[(i, j)].re + m[(j, i)].re));
        Ok(re.symmetric_eigenvalues().iter().map(|v| v.abs()).sum())
    } else {
        Ok(crate::fredholm::nuclear_norm(&m))
    }
}

/// Trace norm of the truncated difference operator against C‖e^{−b} − 1‖_ℬ/√R.
pub fn trace_decay_scan(b: &SymbolSpec, order: BesselOrder, rs: &[f64]) -> Result<ScanResult> {
    check_list(rs)?;
    if b.is_zero() {
        return ScanResult::from_values(rs.iter().map(|r| (*r, 0.0)).collect(), |r| 1.0 / r.sqrt());
    }
    let values =
        rs.par_iter().map(|&r| Ok((r, truncated_trace_norm(b, order, r, trace_window(r))?))).collect::<Result<Vec<_>>>()?;
    let semi = exp_symbol_norm_bound(&b.scaled(-1.0)?)?.direct_semi;
    ScanResult::from_values(values, |r| semi / r.sqrt())
}
