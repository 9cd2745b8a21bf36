//! Spectral sampling: each eigenfunction is kept with probability λ_k, then
//! points are drawn one at a time from the projection density, conditioning
//! the span on every accepted point.

use super::spectrum::{restricted_spectrum, RestrictedSpectrum};
use crate::special_functions::BesselOrder;
use crate::Result;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Configuration {
    /// Sorted points in [0, window].
    pub points: Vec<f64>,
    pub window: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleBatch {
    pub configs: Vec<Configuration>,
    pub seed: u64,
    pub count: usize,
}

/// Eigenvalues below this are never selected (probability per draw < 1e−13).
const MIN_EIGENVALUE: f64 = 1e-13;
/// Spacing of the density grid; the density oscillates with wavelength ≈ π.
const STEP: f64 = 0.01;

pub fn sample(order: BesselOrder, r: f64, seed: u64, count: usize) -> Result<SampleBatch> {
    sample_from(&restricted_spectrum(order, r)?, seed, count)
}

/// Points 0 < … ≤ R, geometric near the hard edge, then uniform.
fn density_grid(r: f64) -> Vec<f64> {
    let step = STEP.min(r / 8.0);
    let mut pts = vec![];
    let mut g = 1e-6 * step;
    while g < step {
        pts.push(g);
        g *= 2.0;
    }
    let n = (r / step).ceil() as usize;
    pts.extend((1..=n).map(|i| i as f64 * r / n as f64));
    pts
}

/// `count` configurations; configuration i uses ChaCha8 stream i of `seed`,
/// so batches do not depend on scheduling.
pub fn sample_from(spec: &RestrictedSpectrum, seed: u64, count: usize) -> Result<SampleBatch> {
    let usable: Vec<usize> = (0..spec.eigenvalues.len()).filter(|&k| spec.eigenvalues[k] > MIN_EIGENVALUE).collect();
    let xs = density_grid(spec.r);
    let phi = if usable.is_empty() { DMatrix::zeros(0, xs.len()) } else { spec.eigenfunctions_at(&usable, &xs)? };
    let lambda: Vec<f64> = usable.iter().map(|&k| spec.eigenvalues[k]).collect();
    let configs = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            draw(&lambda, &phi, &xs, spec.r, &mut rng)
        })
        .collect();
    Ok(SampleBatch { configs, seed, count })
}

fn draw(lambda: &[f64], phi: &DMatrix<f64>, xs: &[f64], r: f64, rng: &mut ChaCha8Rng) -> Configuration {
    let chosen: Vec<usize> = (0..lambda.len()).filter(|&k| rng.gen::<f64>() < lambda[k]).collect();
    let mut psi = phi.select_rows(&chosen);
    let mut points = Vec::with_capacity(chosen.len());
    // Cells [0, x_0], [x_0, x_1], …; the density vanishes at the origin.
    let mut cum = vec![0.0; xs.len()];
    while psi.nrows() > 0 {
        let dens: Vec<f64> = psi.column_iter().map(|c| c.norm_squared()).collect();
        let mut acc = 0.0;
        for c in 0..xs.len() {
            let (x0, d0) = if c == 0 { (0.0, 0.0) } else { (xs[c - 1], dens[c - 1]) };
            acc += 0.5 * (d0 + dens[c]) * (xs[c] - x0);
            cum[c] = acc;
        }
        let target = rng.gen::<f64>() * acc;
        let c = cum.partition_point(|v| *v <= target).min(xs.len() - 1);
        let (x0, d0, before) = if c == 0 { (0.0, 0.0, 0.0) } else { (xs[c - 1], dens[c - 1], cum[c - 1]) };
        let h = xs[c] - x0;
        // Invert the linear density d0 + (d1 − d0)s on the cell.
        let q = ((target - before) / h).max(0.0);
        let slope = dens[c] - d0;
        let s = (2.0 * q / (d0 + (d0 * d0 + 2.0 * slope * q).max(0.0).sqrt())).clamp(0.0, 1.0);
        let s = if s.is_finite() { s } else { 0.5 };
        points.push((x0 + s * h).min(r));
        if psi.nrows() == 1 {
            break;
        }
        let left: DVector<f64> = if c == 0 { DVector::zeros(psi.nrows()) } else { psi.column(c - 1).into_owned() };
        let v = left * (1.0 - s) + psi.column(c) * s;
        psi = condition(psi, v);
    }
    points.sort_by(f64::total_cmp);
    Configuration { points, window: r }
}

/// Rotates the span so that only its first row is non-zero at the accepted
/// point (Householder on `v`), then drops that row.
fn condition(psi: DMatrix<f64>, v: DVector<f64>) -> DMatrix<f64> {
    let k = psi.nrows();
    let norm = v.norm();
    if norm == 0.0 {
        return psi.rows(1, k - 1).into_owned();
    }
    let mut u = v;
    u[0] += if u[0] >= 0.0 { norm } else { -norm };
    let uu = u.norm_squared();
    let proj = u.transpose() * &psi;
    let reflected = psi - (&u * proj) * (2.0 / uu);
    reflected.rows(1, k - 1).into_owned()
}
