//! Bessel machinery: J_ν, the normalized oscillatory parts 𝔍 and 𝔇, the
//! Hankel transform, the hard-edge point-process kernel and related
//! asymptotic data.

mod bessel;
mod dpp_kernel;
mod hankel;
mod oscillatory;
pub mod tails;

pub use bessel::{asymptotic_threshold, bessel_j, bessel_pair, gamma, phase};
pub(crate) use dpp_kernel::kernel_unchecked as dpp_kernel_unchecked;
pub use dpp_kernel::{bessel_dpp_kernel, dpp_diagonal, remainder_primitive};
pub use hankel::{hankel_transform, HankelGrid};
pub(crate) use oscillatory::parts_unchecked as oscillatory_parts_unchecked;
pub use oscillatory::{asymptotic_coeffs, bessel_formula_limit, oscillatory_parts, AsymptoticCoefficients, OscillatoryParts};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Order ν of the Bessel function, constrained to ν > −1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu > -1.0 {
            Ok(Self(nu))
        } else {
            Err(Error::InvalidOrder(nu))
        }
    }

    pub fn nu(self) -> f64 {
        self.0
    }

    /// φ_ν = π/4 + πν/2.
    pub fn phase(self) -> f64 {
        phase(self.0)
    }

    /// True for ν = ±1/2, where 𝔍 is a pure trigonometric function.
    pub fn is_half_integer(self) -> bool {
        (self.0.abs() - 0.5).abs() < 1e-15
    }
}

impl TryFrom<f64> for BesselOrder {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<BesselOrder> for f64 {
    fn from(o: BesselOrder) -> f64 {
        o.0
    }
}

#[cfg(test)]
mod order_tests {
    use super::*;

    #[test]
    fn order_rejects_le_minus_one() {
        assert!(BesselOrder::new(-1.0).is_err());
        assert!(BesselOrder::new(-1.5).is_err());
        assert!(BesselOrder::new(f64::NAN).is_err());
        assert!(BesselOrder::new(-0.99).is_ok());
    }
}
