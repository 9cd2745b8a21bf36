//! Both sides of the factorization det(χ B_{e^b} χ) = exp(Rc₁ + c₂ + c₃)·Q_R.

use super::lhs::lhs_determinant_with;
use super::remainder::{remainder_with, QMethod, RemainderOptions, RemainderResult};
use crate::fredholm::DeterminantResult;
use crate::special_functions::BesselOrder;
use crate::symbols::{szego_constants, SymbolSpec};
use crate::Result;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    #[serde(rename = "R")]
    pub r: f64,
    pub lhs: DeterminantResult,
    pub q_r: Complex64,
    /// log of exp(Rc₁ + c₂ + c₃)·Q_R.
    pub log_rhs: Complex64,
    pub rhs: Complex64,
    /// |lhs/rhs − 1| from the log difference.
    pub rel_residual: f64,
    pub tail_length: f64,
    /// lhs·e^{−Rc₁}/Q_R; independent of R and equal to e^{c₂+c₃}.
    pub z_constant: Complex64,
    pub remainder: RemainderResult,
}

/// Report for the multiple z·b with explicit remainder controls.
pub fn bo_residual_with(
    b: &SymbolSpec,
    z: Complex64,
    order: BesselOrder,
    r: f64,
    method: QMethod,
    opts: &RemainderOptions,
) -> Result<IdentityReport> {
    let lhs = lhs_determinant_with(b, z, order, r)?;
    let remainder = remainder_with(b, z, order, r, method, opts)?;
    let [c1, c2, c3] = szego_constants(b, order).bessel_for_multiple(z);
    let log_rhs = r * c1 + c2 + c3 + remainder.log;
    let diff = lhs.log - log_rhs;
    Ok(IdentityReport {
        r,
        lhs,
        q_r: remainder.value,
        log_rhs,
        rhs: log_rhs.exp(),
        rel_residual: (diff.exp() - 1.0).norm(),
        tail_length: remainder.tail_length,
        z_constant: (lhs.log - r * c1 - remainder.log).exp(),
        remainder,
    })
}

pub fn bo_residual(b: &SymbolSpec, order: BesselOrder, r: f64) -> Result<IdentityReport> {
    bo_residual_with(b, Complex64::new(1.0, 0.0), order, r, QMethod::Direct, &RemainderOptions::default())
}

/// Largest relative spread of the Z constant over a set of reports.
pub fn z_spread(reports: &[IdentityReport]) -> f64 {
    let Some(first) = reports.first() else { return 0.0 };
    reports.iter().map(|rep| (rep.z_constant / first.z_constant - 1.0).norm()).fold(0.0, f64::max)
}
