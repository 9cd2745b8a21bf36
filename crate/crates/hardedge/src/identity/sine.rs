//! The Wiener–Hopf counterpart: det(χ_{[0,R]} W_{e^f} χ) = exp(Rc₁ + c₂)·Q_R
//! and Widom's det(W_{e^f} W_{e^{−f}}) = e^{c₂}.
//!
//! With W_{e^{f₋}} X W_{e^{f₊}} = I − W_{e^{f₋}} Γ W_{e^{f₊}}, X = W_{e^{−f₊}}W_{e^{−f₋}},
//! Γ(x, y) = ∫_0^∞ h̃(x+v)h̃(y+v)dv and h̃ = F[e^{−f₊} − 1], the four-factor
//! remainder becomes det(I − Γ T) on [R, ∞) with the same T as the Bessel route.

use super::remainder::{bandwidth, plus_exponential, product_prefix_logs, resolving_grid, shifted_gram, triangular_product};
use crate::fredholm::{prefix_log_dets, DeterminantResult};
use crate::kernels::{hankel_matrix, wiener_hopf_matrix, Profile};
use crate::special_functions::BesselOrder;
use crate::symbols::{szego_constants, SymbolSpec};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SineReport {
    #[serde(rename = "R")]
    pub r: f64,
    pub lhs: DeterminantResult,
    pub log_q: Complex64,
    /// |det(χW_{e^f}χ)·exp(−Rc₁ − c₂)/Q_R − 1|.
    pub residual: f64,
    pub log_widom: Complex64,
    /// |det(W_{e^{f₋}}W_{e^{f₊}}W_{e^{−f₋}}W_{e^{−f₊}}) − e^{c₂}|.
    pub widom_residual: f64,
    pub tail_length: f64,
}

const TAIL: f64 = 20.0;

fn lhs(f: &SymbolSpec, r: f64, freq: f64) -> Result<DeterminantResult> {
    let e = Profile::exp_minus_one(f, Complex64::new(1.0, 0.0));
    let at = |refine: u32| -> Result<Complex64> {
        let grid = Arc::new(resolving_grid(0.0, r, freq, refine)?);
        Ok(wiener_hopf_matrix(&e, grid, refine)?.log_det())
    };
    let (coarse, fine) = (at(0)?, at(1)?);
    Ok(DeterminantResult::from_log(fine, (fine - coarse).norm()))
}

/// log det(I − ΓT) on [R, R+L]; returns the values at L and L/2.
fn remainder(f: &SymbolSpec, r: f64, l: f64, freq: f64) -> Result<(Complex64, Complex64)> {
    let grid = Arc::new(resolving_grid(r, r + l, freq, 0)?);
    let hm = plus_exponential(f, Complex64::new(-1.0, 0.0))?;
    let gamma = -shifted_gram(&hm, &grid, 0.0, 0);
    let t = triangular_product(f, Complex64::new(1.0, 0.0), &grid, r, 0)?;
    let logs = product_prefix_logs(&gamma, &t, grid.order);
    Ok((*logs.last().unwrap(), logs[logs.len() / 2 - 1]))
}

/// log det(I − H_{e^f−1}H_{e^{−f}−1}) on [0, L]; returns the values at L and L/2.
fn widom(f: &SymbolSpec, l: f64, freq: f64) -> Result<(Complex64, Complex64)> {
    let grid = Arc::new(resolving_grid(0.0, l, freq, 0)?);
    let hp = hankel_matrix(&Profile::exp_minus_one(f, Complex64::new(1.0, 0.0)), grid.clone(), 0)?.matrix;
    let hn = hankel_matrix(&Profile::exp_minus_one(f, Complex64::new(-1.0, 0.0)), grid.clone(), 0)?.matrix;
    let n = grid.len();
    let m = nalgebra::DMatrix::<Complex64>::identity(n, n) - hp * hn;
    let logs = prefix_log_dets(&m, grid.order);
    Ok((*logs.last().unwrap(), logs[logs.len() / 2 - 1]))
}

pub fn sine_identity_residual(f: &SymbolSpec, r: f64) -> Result<SineReport> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    let zero = Complex64::default();
    if f.is_zero() {
        let lhs = DeterminantResult::from_log(zero, 0.0);
        return Ok(SineReport { r, lhs, log_q: zero, residual: 0.0, log_widom: zero, widom_residual: 0.0, tail_length: 0.0 });
    }
    let freq = bandwidth(&Profile::exp_minus_one(f, Complex64::new(-1.0, 0.0)))
        .max(bandwidth(&Profile::exp_minus_one(f, Complex64::new(1.0, 0.0))));
    let consts = szego_constants(f, BesselOrder::new(0.0)?);
    let lhs = lhs(f, r, freq)?;
    let mut l = TAIL;
    loop {
        let (log_q, q_half) = remainder(f, r, l, freq)?;
        let (log_widom, w_half) = widom(f, l, freq)?;
        let settled = (log_q - q_half).norm() < 1e-12 && (log_widom - w_half).norm() < 1e-12;
        if settled || l >= 8.0 * TAIL {
            let diff = lhs.log - r * consts.c1s - consts.c2s - log_q;
            return Ok(SineReport {
                r,
                lhs,
                log_q,
                residual: (diff.exp() - 1.0).norm(),
                log_widom,
                widom_residual: (log_widom.exp() - consts.c2s.exp()).norm(),
                tail_length: l,
            });
        }
        l *= 2.0;
    }
}
