//! Quadrature Hankel transform H_ν f(λ) = ∫_0^∞ √(λx) J_ν(λx) f(x) dx.

use super::oscillatory::parts_unchecked;
use super::BesselOrder;
use crate::error::{Error, Result};
use crate::quadrature::{composite, uniform_edges};
use std::f64::consts::PI;

/// Composite Gauss–Legendre nodes on [0, extent].
#[derive(Debug, Clone, PartialEq)]
pub struct HankelGrid {
    pub extent: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl HankelGrid {
    /// Panels of length at most `panel_len`, `order` nodes each.
    pub fn new(extent: f64, panel_len: f64, order: usize) -> Result<Self> {
        if !(extent > 0.0) || !(panel_len > 0.0) || order < 2 {
            return Err(Error::Domain("invalid Hankel grid parameters".into()));
        }
        let (nodes, weights) = composite(&uniform_edges(0.0, extent, panel_len), order);
        Ok(Self { extent, nodes, weights })
    }

    /// Largest gap between consecutive nodes.
    fn max_spacing(&self) -> f64 {
        let mut gap = self.nodes[0];
        for w in self.nodes.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
        gap.max(self.extent - self.nodes[self.nodes.len() - 1])
    }

    /// Discrete L₂ norm of samples on this grid.
    pub fn l2_norm(&self, values: &[f64]) -> f64 {
        values.iter().zip(&self.weights).map(|(v, w)| w * v * v).sum::<f64>().sqrt()
    }
}

/// Applies H_ν to samples of f on `source`, evaluating on `target` nodes.
pub fn hankel_transform(samples: &[f64], source: &HankelGrid, order: BesselOrder, target: &HankelGrid) -> Result<Vec<f64>> {
    if samples.len() != source.nodes.len() {
        return Err(Error::Domain("sample count does not match grid".into()));
    }
    // At least 8 nodes per period of J_ν(λx) at the largest λ.
    let period = 2.0 * PI / target.extent;
    let per_period = period / source.max_spacing();
    if per_period < 8.0 {
        return Err(Error::Resolution { estimate: 8.0 / per_period, tolerance: 1.0 });
    }
    let nu = order.nu();
    Ok(target
        .nodes
        .iter()
        .map(|&lam| {
            source
                .nodes
                .iter()
                .zip(&source.weights)
                .zip(samples)
                .map(|((&x, &w), &f)| w * f * parts_unchecked(nu, lam * x).frak_j)
                .sum()
        })
        .collect())
}
