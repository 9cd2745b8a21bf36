//! Additive functionals S = Σ b(x_i/R), their exact mean, and multiplicative
//! functionals Π(1 + f(x_i)) against det(I + fKχ).

use super::sampler::{sample_from, SampleBatch};
use super::spectrum::restricted_spectrum;
use crate::fredholm::log_det_identity_plus;
use crate::quadrature::{composite, uniform_edges};
use crate::special_functions::{dpp_diagonal, BesselOrder};
use crate::symbols::SymbolSpec;
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Number of batches behind every Monte Carlo error bar.
pub const BATCHES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanEstimate {
    pub mean: f64,
    /// Standard error from the spread of batch means.
    pub std_error: f64,
}

/// Sample mean with a batch-means standard error.
pub fn batch_means(values: &[f64]) -> MeanEstimate {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n.max(1) as f64;
    let batches = BATCHES.min(n);
    if batches < 2 {
        return MeanEstimate { mean, std_error: f64::INFINITY };
    }
    let size = n / batches;
    let means: Vec<f64> = (0..batches).map(|b| values[b * size..(b + 1) * size].iter().sum::<f64>() / size as f64).collect();
    let mm = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|m| (m - mm).powi(2)).sum::<f64>() / (batches - 1) as f64;
    MeanEstimate { mean, std_error: (var / batches as f64).sqrt() }
}

/// Empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(values: &[f64]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Self { sorted }
    }

    /// Fraction of values ≤ x.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|v| *v <= x) as f64 / self.sorted.len().max(1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdditiveStats {
    pub mean: MeanEstimate,
    pub variance: MeanEstimate,
    /// S for each configuration, in batch order.
    pub values: Vec<f64>,
    #[serde(skip)]
    pub ecdf: Ecdf,
}

/// S = Σ b(x_i/R) per configuration, with mean, variance and ECDF. The
/// batch window should cover the support of b(·/R), i.e. R·extent.
pub fn additive_stats(batch: &SampleBatch, b: &SymbolSpec, r: f64) -> Result<AdditiveStats> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    if batch.configs.is_empty() {
        return Err(Error::Precondition("empty sample batch".into()));
    }
    let values: Vec<f64> = batch.configs.iter().map(|c| c.points.iter().map(|x| b.value(x / r)).sum()).collect();
    let mean = batch_means(&values);
    // Variance error bar from per-batch variances.
    let batches = BATCHES.min(values.len());
    let size = values.len() / batches.max(1);
    let var_of = |v: &[f64]| {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() as f64 - 1.0).max(1.0)
    };
    let per_batch: Vec<f64> = (0..batches).map(|k| var_of(&values[k * size..(k + 1) * size])).collect();
    let spread = batch_means(&per_batch);
    let variance = MeanEstimate { mean: var_of(&values), std_error: spread.std_error };
    let ecdf = Ecdf::new(&values);
    Ok(AdditiveStats { mean, variance, values, ecdf })
}

/// E S = ∫ b(x/R) K(x, x) dx, split as R·c₁ (the 1/π bulk) plus the
/// quadrature of b(x/R)(K(x, x) − 1/π) over the support of b(·/R).
pub fn expectation_exact(b: &SymbolSpec, order: BesselOrder, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    if b.is_zero() {
        return Ok(0.0);
    }
    let top = r * b.extent();
    let step = 1f64.min(r * b.feature_length());
    let mut edges = vec![0.0];
    let mut g = 1e-8 * step;
    while g < step {
        edges.push(g);
        g *= 4.0;
    }
    edges.extend(uniform_edges(step, top.max(2.0 * step), step));
    let (x, w) = composite(&edges, 16);
    let body: f64 = x.iter().zip(&w).map(|(x, w)| w * b.value(x / r) * (dpp_diagonal(order, *x) - 1.0 / PI)).sum();
    Ok(r * b.cosine_transform(0.0) + body)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultiplicativeReport {
    pub mc: MeanEstimate,
    pub det: f64,
    /// |mc − det|.
    pub diff: f64,
}

/// Monte Carlo average of Π(1 + f(x_i)) against det(I + fKχ_{[0,R]}).
pub fn multiplicative_check(
    order: BesselOrder,
    r: f64,
    f: impl Fn(f64) -> f64 + Sync,
    seed: u64,
    count: usize,
) -> Result<MultiplicativeReport> {
    let spec = restricted_spectrum(order, r)?;
    let probe = (0..=10_000).map(|i| r * i as f64 / 10_000.0).chain(spec.grid.nodes.iter().copied());
    let sup = probe.map(|x| f(x).abs()).fold(0.0, f64::max);
    if sup >= 1.0 {
        return Err(Error::Precondition(format!("need sup|f| < 1, got {sup}")));
    }
    let v = &spec.eigenvectors;
    let lam = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(spec.eigenvalues.clone()));
    let kmat = v * lam * v.transpose();
    let n = kmat.nrows();
    let a = crate::fredholm::CMatrix::from_fn(n, n, |i, j| Complex64::new(f(spec.grid.nodes[i]) * kmat[(i, j)], 0.0));
    let det = log_det_identity_plus(&a).exp().re;
    let batch = sample_from(&spec, seed, count)?;
    let values: Vec<f64> = batch.configs.iter().map(|c| c.points.iter().map(|x| 1.0 + f(*x)).product()).collect();
    let mc = batch_means(&values);
    Ok(MultiplicativeReport { mc, det, diff: (mc.mean - det).abs() })
}
