//! Admissible symbols b on the half-line: evaluation, cosine transforms,
//! Sobolev seminorms, the Wiener–Hopf splitting b = b₊ + b₋ and the
//! constants of the determinant asymptotics.

mod constants;
mod norms;
mod shape;
mod split;

pub use constants::{clt_normalize, szego_constants, SzegoConstants};
pub use norms::{exp_symbol_norm_bound, norms_b, sobolev_seminorm, sobolev_seminorm_physical, ExpNormBound, NormReport, Weight};
pub use shape::Shape;
pub use split::{wh_split, FactorizationPair, PlusExponential};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// JSON form of a symbol: {"family", "amplitude", "scale", "k"?}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolConfig {
    pub family: String,
    pub amplitude: f64,
    pub scale: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

/// A real symbol b(x) = a·g(x/s) from one of the built-in families.
#[derive(Debug, Clone)]
pub struct SymbolSpec {
    shape: Shape,
    amplitude: f64,
    scale: f64,
    norms: OnceLock<NormReport>,
}

impl PartialEq for SymbolSpec {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.amplitude == other.amplitude && self.scale == other.scale
    }
}

impl SymbolSpec {
    /// Builds a symbol and verifies its ℬ-norm is finite.
    pub fn new(shape: Shape, amplitude: f64, scale: f64) -> Result<Self> {
        if !amplitude.is_finite() {
            return Err(Error::NotInSpace(format!("amplitude {amplitude}")));
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::NotInSpace(format!("scale must be positive, got {scale}")));
        }
        if let Shape::Rational(k) = shape {
            if k < 3 {
                return Err(Error::NotInSpace(format!("rational-decay needs k >= 3, got {k}")));
            }
        }
        let spec = Self { shape, amplitude, scale, norms: OnceLock::new() };
        let report = spec.norms();
        if !report.normb_full.is_finite() {
            return Err(Error::NotInSpace("seminorm diverges".into()));
        }
        Ok(spec)
    }

    pub fn gaussian(amplitude: f64, scale: f64) -> Result<Self> {
        Self::new(Shape::Gaussian, amplitude, scale)
    }

    pub fn from_config(cfg: &SymbolConfig) -> Result<Self> {
        let shape = match cfg.family.as_str() {
            "gaussian" => Shape::Gaussian,
            "exp-decay" => Shape::ExpDecay,
            "smooth-bump" => Shape::SmoothBump,
            "rational-decay" => Shape::Rational(cfg.k.unwrap_or(3)),
            other => return Err(Error::NotInSpace(format!("unknown family {other:?}"))),
        };
        if cfg.k.is_some() && !matches!(shape, Shape::Rational(_)) {
            return Err(Error::NotInSpace("k only applies to rational-decay".into()));
        }
        Self::new(shape, cfg.amplitude, cfg.scale)
    }

    pub fn to_config(&self) -> SymbolConfig {
        let (family, k) = match self.shape {
            Shape::Gaussian => ("gaussian", None),
            Shape::ExpDecay => ("exp-decay", None),
            Shape::SmoothBump => ("smooth-bump", None),
            Shape::Rational(k) => ("rational-decay", Some(k)),
        };
        SymbolConfig { family: family.into(), amplitude: self.amplitude, scale: self.scale, k }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude == 0.0
    }

    /// The same profile with amplitude multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.shape, self.amplitude * factor, self.scale)
    }

    /// b(x) for x ≥ 0 (even extension for x < 0).
    pub fn value(&self, x: f64) -> f64 {
        self.amplitude * self.shape.value(x.abs() / self.scale)
    }

    /// [b, b′, b″, b‴] at x ≥ 0.
    pub fn derivs(&self, x: f64) -> [f64; 4] {
        let g = self.shape.derivs(x / self.scale);
        let mut out = [0.0; 4];
        let mut f = self.amplitude;
        for (o, gi) in out.iter_mut().zip(g) {
            *o = f * gi;
            f /= self.scale;
        }
        out
    }

    /// b₀(x) = b(x) − b(0).
    pub fn centered(&self, x: f64) -> f64 {
        self.amplitude * (self.shape.value(x / self.scale) - 1.0)
    }

    /// Even-extension Fourier transform b̂(λ) = (1/π)∫_0^∞ b(x)cos(λx)dx.
    pub fn cosine_transform(&self, lambda: f64) -> f64 {
        self.amplitude * self.scale * self.shape.cosine_transform(lambda * self.scale)
    }

    /// sup |b|; every profile peaks at the origin with value 1.
    pub fn sup_norm(&self) -> f64 {
        self.amplitude.abs()
    }

    /// x beyond which b and its derivatives are negligible.
    pub fn extent(&self) -> f64 {
        self.scale * self.shape.extent()
    }

    /// λ beyond which b̂ is negligible.
    pub fn spectral_extent(&self) -> f64 {
        self.shape.spectral_extent() / self.scale
    }

    /// Length scale on which b varies.
    pub fn feature_length(&self) -> f64 {
        self.scale * self.shape.feature_length()
    }

    /// Quadrature panel breakpoints on [0, extent] of length at most `step`.
    pub fn panel_edges(&self, step: f64) -> Vec<f64> {
        self.shape.panel_edges(step / self.scale).into_iter().map(|u| u * self.scale).collect()
    }

    /// Cached norm report.
    pub fn norms(&self) -> &NormReport {
        self.norms.get_or_init(|| norms::compute_report(self))
    }
}

#[cfg(test)]
mod tests;
