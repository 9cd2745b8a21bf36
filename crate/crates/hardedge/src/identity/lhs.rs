//! det(χ_{[0,R]} B_{e^{zb}} χ_{[0,R]}) as det(I + B_{e^{zb}−1}) on [0, R].

use super::remainder::bandwidth;
use crate::fredholm::{DeterminantResult, QuadratureGrid};
use crate::kernels::{bessel_matrix, Profile};
use crate::special_functions::BesselOrder;
use crate::symbols::SymbolSpec;
use crate::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

/// Grid on [0, R] graded towards the hard edge, where J_ν(xt)√x is not smooth.
fn edge_grid(r: f64, freq: f64) -> Result<QuadratureGrid> {
    QuadratureGrid::graded(0.0, r, 1f64.min(8.0 / freq), 1e-6 * r.min(1.0), 4.0, 16)
}

fn log_det_on(profile: &Profile, order: BesselOrder, grid: QuadratureGrid, refine: u32) -> Result<Complex64> {
    Ok(bessel_matrix(profile, order, Arc::new(grid), refine)?.log_det())
}

/// Left side for the multiple z·b; the estimate compares against a refined grid and t-rule.
pub fn lhs_determinant_with(b: &SymbolSpec, z: Complex64, order: BesselOrder, r: f64) -> Result<DeterminantResult> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    if b.is_zero() || z == Complex64::default() {
        return Ok(DeterminantResult::from_log(Complex64::default(), 0.0));
    }
    let profile = Profile::exp_minus_one(b, z);
    let grid = edge_grid(r, bandwidth(&profile))?;
    let fine = grid.refined(4)?;
    let coarse = log_det_on(&profile, order, grid, 0)?;
    let refined = log_det_on(&profile, order, fine, 1)?;
    Ok(DeterminantResult::from_log(refined, (refined - coarse).norm()))
}

pub fn lhs_determinant(b: &SymbolSpec, order: BesselOrder, r: f64) -> Result<DeterminantResult> {
    lhs_determinant_with(b, Complex64::new(1.0, 0.0), order, r)
}
