//! Constants of the determinant asymptotics and CLT normalization.

use super::SymbolSpec;
use crate::error::{Error, Result};
use crate::quadrature::{composite, uniform_edges};
use crate::special_functions::BesselOrder;
use num_complex::Complex64;
use serde::Serialize;

/// c₁, c₂, c₃ for the Bessel determinant and c₁, c₂ for the sine-kernel one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SzegoConstants {
    pub c1b: f64,
    pub c2b: f64,
    pub c3b: f64,
    pub c1s: f64,
    /// ∫_0^∞ x f̂(x)f̂(−x)dx, the Kac–Akhiezer/Widom constant (twice c₃ for even f).
    pub c2s: f64,
}

impl SzegoConstants {
    /// (c₁, c₂, c₃) of the Bessel determinant for the multiple z·b.
    pub fn bessel_for_multiple(&self, z: Complex64) -> [Complex64; 3] {
        [z * self.c1b, z * self.c2b, z * z * self.c3b]
    }

    /// (c₁, c₂) of the sine-kernel determinant for the multiple z·b.
    pub fn sine_for_multiple(&self, z: Complex64) -> [Complex64; 2] {
        [z * self.c1s, z * z * self.c2s]
    }
}

/// ½∫_0^∞ x f(x) f(−x) dx for f = b̂ (even, so f(−x) = f(x)).
fn half_moment(spec: &SymbolSpec) -> f64 {
    let top = spec.spectral_extent();
    let (x, w) = composite(&uniform_edges(0.0, top, 0.5 / spec.scale()), 16);
    0.5 * x.iter().zip(&w).map(|(x, w)| w * x * spec.cosine_transform(*x) * spec.cosine_transform(-*x)).sum::<f64>()
}

pub fn szego_constants(spec: &SymbolSpec, order: BesselOrder) -> SzegoConstants {
    if spec.is_zero() {
        return SzegoConstants { c1b: 0.0, c2b: 0.0, c3b: 0.0, c1s: 0.0, c2s: 0.0 };
    }
    let c1 = spec.cosine_transform(0.0);
    let c3 = half_moment(spec);
    SzegoConstants { c1b: c1, c2b: -0.5 * order.nu() * spec.value(0.0), c3b: c3, c1s: c1, c2s: 2.0 * c3 }
}

/// Rescales b so that c₃ = 1/2.
pub fn clt_normalize(spec: &SymbolSpec) -> Result<SymbolSpec> {
    let c3 = if spec.is_zero() { 0.0 } else { half_moment(spec) };
    if !(c3 > 0.0) {
        return Err(Error::DegenerateSymbol("c3 vanishes; cannot normalize".into()));
    }
    spec.scaled(1.0 / (2.0 * c3).sqrt())
}
