use super::decomposition::{difference_decomposition, difference_direct};
use super::profile::Profile;
use crate::quadrature::composite;
use crate::special_functions::{bessel_dpp_kernel, BesselOrder};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PieceLabel {
    R1,
    S,
    T0,
    T1,
    ZTilde,
}

/// Which integral kernel to evaluate.
#[derive(Debug, Clone)]
pub enum KernelKind {
    Bessel {
        profile: Profile,
        order: BesselOrder,
    },
    WienerHopf {
        profile: Profile,
    },
    Hankel {
        profile: Profile,
    },
    Difference {
        profile: Profile,
        order: BesselOrder,
    },
    /// T0 and T1 are symmetrized: T(x,y) + T(y,x).
    Piece {
        label: PieceLabel,
        profile: Profile,
        order: BesselOrder,
    },
}

/// Above this x + y the difference kernel is assembled from its pieces.
pub const DIRECT_LIMIT: f64 = 10.0;

/// Kernel value K(x, y).
pub fn kernel_eval(kind: &KernelKind, x: f64, y: f64) -> Result<Complex64> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!("kernel needs x, y > 0, got ({x}, {y})")));
    }
    match kind {
        KernelKind::WienerHopf { profile } => Ok(profile.cosine_transform(x - y)),
        KernelKind::Hankel { profile } => Ok(profile.cosine_transform(x + y)),
        KernelKind::Bessel { profile, order } => bessel_kernel(profile, *order, x, y),
        KernelKind::Difference { profile, order } => {
            if x + y <= DIRECT_LIMIT {
                difference_direct(profile, *order, x, y)
            } else {
                Ok(difference_decomposition(profile, *order, x, y)?.assembled())
            }
        }
        KernelKind::Piece { label, profile, order } => {
            let d = difference_decomposition(profile, *order, x, y)?;
            Ok(match label {
                PieceLabel::R1 => d.r1,
                PieceLabel::S => d.s,
                PieceLabel::T0 => d.t0_xy + d.t0_yx,
                PieceLabel::T1 => d.t1_xy + d.t1_yx,
                PieceLabel::ZTilde => d.z_tilde,
            })
        }
    }
}

/// B_f(x, y) = ∫ 𝔍(xt)𝔍(yt) f(t) dt, checked against a half-resolution rule.
fn bessel_kernel(profile: &Profile, order: BesselOrder, x: f64, y: f64) -> Result<Complex64> {
    if let Profile::Indicator(c) = profile {
        return Ok(Complex64::new(c * bessel_dpp_kernel(order, c * x, c * y)?, 0.0));
    }
    let nu = order.nu();
    let period = 2.0 * PI / (x + y);
    let t_max = profile.extent();
    let step = (0.5 * period).min(profile.feature_length());
    let eval = |step: f64| {
        let edges = super::decomposition::t_edges(profile, period, step, t_max);
        let (t, w) = composite(&edges, 16);
        let mut sum = Complex64::default();
        for (ti, wi) in t.iter().zip(&w) {
            let j = crate::special_functions::oscillatory_parts_unchecked(nu, x * ti).frak_j
                * crate::special_functions::oscillatory_parts_unchecked(nu, y * ti).frak_j;
            sum += profile.value(*ti) * (j * wi);
        }
        sum
    };
    let fine = eval(step);
    let coarse = eval(2.0 * step);
    let estimate = (fine - coarse).norm();
    if estimate > 1e-9 * (1.0 + fine.norm()) {
        return Err(Error::Resolution { estimate, tolerance: 1e-9 });
    }
    Ok(fine)
}
