//! The hard-edge kernel ∫_0^1 t√(xy) J_ν(xt) J_ν(yt) dt and the primitive of
//! its diagonal deviation from the bulk density 1/π.

use super::bessel::{asymptotic_threshold, pair_unchecked};
use super::tails::{hankel_coeffs, mul_series, scale_series, series_tail};
use super::BesselOrder;
use crate::error::{Error, Result};
use crate::quadrature::{composite, uniform_edges};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Diagonal value (x/2)(J_ν² − J_{ν+1}J_{ν−1}).
pub fn dpp_diagonal(order: BesselOrder, x: f64) -> f64 {
    diagonal(order.nu(), x)
}

fn diagonal(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let (j0, j1) = pair_unchecked(nu, x);
    let jm1 = 2.0 * nu / x * j0 - j1;
    0.5 * x * (j0 * j0 - j1 * jm1)
}

/// Kernel value via the Lommel closed form, with the diagonal formula
/// at the midpoint when |x − y| < 1e−6(1 + x).
pub fn bessel_dpp_kernel(order: BesselOrder, x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!("kernel arguments must be positive: ({x}, {y})")));
    }
    Ok(kernel_unchecked(order.nu(), x, y))
}

pub(crate) fn kernel_unchecked(nu: f64, x: f64, y: f64) -> f64 {
    if (x - y).abs() < 1e-6 * (1.0 + x) {
        return diagonal(nu, 0.5 * (x + y));
    }
    let (jx, jx1) = pair_unchecked(nu, x);
    let (jy, jy1) = pair_unchecked(nu, y);
    (x * y).sqrt() * (x * jx1 * jy - y * jx * jy1) / (x * x - y * y)
}

/// F(ξ) = −∫_ξ^∞ (K(x, x) − 1/π) dx.
pub fn remainder_primitive(order: BesselOrder, xi: f64) -> Result<f64> {
    if !(xi >= 0.0) || !xi.is_finite() {
        return Err(Error::Domain(format!("xi must be nonnegative, got {xi}")));
    }
    let nu = order.nu();
    let cut = xi.max(60.0_f64.max(asymptotic_threshold(nu) + asymptotic_threshold(nu - 1.0)));
    let mut edges = Vec::new();
    if xi < 1.0 {
        edges.push(xi);
        let mut g = xi.max(1e-10);
        if xi == 0.0 {
            edges.push(g);
        }
        while g * 4.0 < 1.0 {
            g *= 4.0;
            edges.push(g);
        }
        edges.extend(uniform_edges(1.0, cut, 0.5));
    } else {
        edges.extend(uniform_edges(xi, cut, 0.5));
    }
    edges.dedup();
    let mut body = 0.0;
    if cut > xi {
        let (x, w) = composite(&edges, 16);
        for (xi_, wi) in x.iter().zip(&w) {
            body += wi * (diagonal(nu, *xi_) - 1.0 / PI);
        }
    }
    Ok(-(body + diagonal_tail(nu, cut)))
}

/// ∫_X^∞ (K(x, x) − 1/π) dx from the Hankel expansions.
fn diagonal_tail(nu: f64, from: f64) -> f64 {
    let terms = 12;
    let e0 = scale_series(&hankel_coeffs(nu, terms), 1.0);
    let ep = scale_series(&hankel_coeffs(nu + 1.0, terms), 1.0);
    let em = scale_series(&hankel_coeffs(nu - 1.0, terms), 1.0);
    let conj = |v: &[Complex64]| v.iter().map(|c| c.conj()).collect::<Vec<_>>();
    let mut osc = mul_series(&e0, &e0, terms);
    let pm = mul_series(&ep, &em, terms);
    for (o, p) in osc.iter_mut().zip(&pm) {
        *o -= p;
    }
    let mut flat = mul_series(&e0, &conj(&e0), terms);
    let flat2 = mul_series(&ep, &conj(&em), terms);
    for (f, g) in flat.iter_mut().zip(&flat2) {
        *f += g;
    }
    flat[0] -= 2.0;
    let rot = Complex64::from_polar(1.0, -2.0 * super::phase(nu));
    let total = rot * series_tail(&osc, 2.0, from) + series_tail(&flat, 0.0, from);
    total.re / (2.0 * PI)
}
