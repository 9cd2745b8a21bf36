//! Characteristic function of S = Σ b(x_i/R) as a Fredholm determinant and
//! the Kolmogorov–Smirnov distance of the centered S to the standard normal.

use super::functionals::{additive_stats, expectation_exact};
use super::sampler::sample;
use crate::fredholm::QuadratureGrid;
use crate::identity::{bandwidth, lhs_determinant_with, ScanResult};
use crate::kernels::{BesselFactor, Profile, TRule};
use crate::quadrature::gauss_legendre_on;
use crate::special_functions::BesselOrder;
use crate::symbols::{szego_constants, SymbolSpec};
use crate::{Error, Result};
use libm::erfc;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};
use std::sync::Arc;

/// Conditioning cap on |k|·‖b‖_∞.
const K_CAP: f64 = 8.0;

fn check_cap(b: &SymbolSpec, k: f64) -> Result<()> {
    let s = k.abs() * b.sup_norm();
    if s > K_CAP {
        return Err(Error::Precondition(format!("|k|·sup|b| = {s:.3} exceeds {K_CAP}")));
    }
    Ok(())
}

/// E e^{ikS} = det(I + χ_{[0,R]}B_{e^{ikb}−1}χ_{[0,R]}), refined discretization.
pub fn char_fn(b: &SymbolSpec, order: BesselOrder, r: f64, k: f64) -> Result<Complex64> {
    check_cap(b, k)?;
    Ok(lhs_determinant_with(b, Complex64::new(0.0, k), order, r)?.value)
}

/// Many evaluations of log E e^{ikS} at one (b, R): the Bessel factor of the
/// Nyström matrix does not depend on k, only the t-weights e^{ikb(t)} − 1 do.
/// The grid is coarser than [`char_fn`]'s (about 1e−12 agreement in tests).
pub struct CfEvaluator {
    grid: Arc<QuadratureGrid>,
    factor: BesselFactor,
    w: Vec<f64>,
    bt: Vec<f64>,
}

impl CfEvaluator {
    pub fn new(b: &SymbolSpec, order: BesselOrder, r: f64, k_max: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("R must be positive, got {r}")));
        }
        let profile = Profile::exp_minus_one(b, Complex64::new(0.0, k_max.abs().max(1.0)));
        let freq = bandwidth(&profile);
        let grid = Arc::new(QuadratureGrid::graded(0.0, r, 2f64.min(12.0 / freq), 1e-6 * r.min(1.0), 4.0, 12)?);
        let rule = TRule::new(&profile, r, 0);
        let factor = BesselFactor::new(order, &grid, &rule);
        let bt = rule.t.iter().map(|t| b.value(*t)).collect();
        Ok(Self { grid, factor, w: rule.w, bt })
    }

    pub fn log_eval(&self, k: f64) -> Result<Complex64> {
        let fw: Vec<Complex64> =
            self.w.iter().zip(&self.bt).map(|(w, b)| (Complex64::new(0.0, k * b).exp() - 1.0) * *w).collect();
        Ok(self.factor.matrix(self.grid.clone(), &fw)?.log_det())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CltMethod {
    CfInversion,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CltOptions {
    /// T = truncation_factor · ln R for the inversion integral.
    pub truncation_factor: f64,
    pub grid_points: usize,
    /// Gauss–Legendre nodes on [0, T].
    pub k_nodes: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CltOptions {
    fn default() -> Self {
        Self { truncation_factor: 1.0, grid_points: 401, k_nodes: 40, samples: 10_000, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdfPoint {
    pub x: f64,
    /// Distribution function of S − E S.
    pub f: f64,
    /// Standard normal Φ(x).
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CltReport {
    #[serde(rename = "R")]
    pub r: f64,
    pub ks_distance: f64,
    pub method: CltMethod,
    /// E S − (R·c₁ + c₂).
    pub mean_shift: f64,
    pub cdf_grid: Vec<CdfPoint>,
    /// Inversion cutoff T (cf_inversion only).
    pub truncation: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

fn check_normalized(b: &SymbolSpec, order: BesselOrder) -> Result<()> {
    let c3 = szego_constants(b, order).c3b;
    if (c3 - 0.5).abs() > 1e-8 {
        return Err(Error::Precondition(format!("symbol must be normalized to c3 = 1/2, got {c3}")));
    }
    Ok(())
}

/// Distribution of S − E S against Φ on a uniform grid over [−5, 5].
pub fn clt_report(b: &SymbolSpec, order: BesselOrder, r: f64, method: CltMethod, opts: &CltOptions) -> Result<CltReport> {
    check_normalized(b, order)?;
    if opts.grid_points < 2 {
        return Err(Error::Precondition("need at least two grid points".into()));
    }
    let expectation = expectation_exact(b, order, r)?;
    let c = szego_constants(b, order);
    let mean_shift = expectation - (r * c.c1b + c.c2b);
    let xs: Vec<f64> = (0..opts.grid_points).map(|i| -5.0 + 10.0 * i as f64 / (opts.grid_points - 1) as f64).collect();
    let (f, truncation, samples, seed) = match method {
        CltMethod::CfInversion => {
            let t = opts.truncation_factor * r.ln();
            if !(t > 0.0) {
                return Err(Error::Domain(format!("inversion cutoff must be positive (R > 1), got {t}")));
            }
            // No cap here: the evaluator's grid is sized for e^{iTb}, and
            // |φ(k)| is already tiny where |k|·‖b‖_∞ is large.
            let eval = CfEvaluator::new(b, order, r, t)?;
            let (ks, ws) = gauss_legendre_on(opts.k_nodes, 0.0, t);
            let centered = ks
                .par_iter()
                .map(|&k| Ok((eval.log_eval(k)? - Complex64::new(0.0, k * expectation)).exp()))
                .collect::<Result<Vec<Complex64>>>()?;
            // Gil-Pelaez: F(x) = 1/2 − (1/π)∫_0^T Im(e^{−ikx}φ(k))/k dk.
            let f: Vec<f64> = xs
                .iter()
                .map(|&x| {
                    let s: f64 = ks
                        .iter()
                        .zip(&ws)
                        .zip(&centered)
                        .map(|((k, w), p)| w * (Complex64::new(0.0, -k * x).exp() * p).im / k)
                        .sum();
                    0.5 - s / PI
                })
                .collect();
            (f, Some(t), None, None)
        }
        CltMethod::MonteCarlo => {
            let batch = sample(order, r * b.extent(), opts.seed, opts.samples)?;
            let stats = additive_stats(&batch, b, r)?;
            let f = xs.iter().map(|x| stats.ecdf.eval(x + expectation)).collect();
            (f, None, Some(opts.samples), Some(opts.seed))
        }
    };
    let cdf_grid: Vec<CdfPoint> = xs.iter().zip(f).map(|(&x, f)| CdfPoint { x, f, phi: normal_cdf(x) }).collect();
    let ks_distance = cdf_grid.iter().map(|p| (p.f - p.phi).abs()).fold(0.0, f64::max).min(1.0);
    Ok(CltReport { r, ks_distance, method, mean_shift, cdf_grid, truncation, samples, seed })
}

/// KS distance by characteristic-function inversion against C/ln R.
pub fn ks_scan(b: &SymbolSpec, order: BesselOrder, rs: &[f64], opts: &CltOptions) -> Result<ScanResult> {
    check_normalized(b, order)?;
    if rs.iter().any(|r| !(*r > 1.0)) {
        return Err(Error::Domain("KS scan needs R > 1".into()));
    }
    let values = rs
        .iter()
        .map(|&r| Ok((r, clt_report(b, order, r, CltMethod::CfInversion, opts)?.ks_distance)))
        .collect::<Result<Vec<_>>>()?;
    ScanResult::from_values(values, |r| 1.0 / r.ln())
}
