//! The normalized Bessel function 𝔍(x) = √x J_ν(x), its deviation 𝔇 from
//! the leading cosine, and fitted asymptotic constants.

use super::bessel::{asymptotic_threshold, hankel_pq, pair_unchecked};
use super::tails::{hankel_coeffs, mul_series, scale_series, series_tail};
use super::BesselOrder;
use crate::error::{Error, Result};
use crate::quadrature::{composite, uniform_edges};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{FRAC_2_PI, PI};

/// 𝔍(x), 𝔇(x) and 𝔇′(x) at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryParts {
    pub frak_j: f64,
    pub frak_d: f64,
    pub frak_d_prime: f64,
}

/// Evaluates 𝔍, 𝔇 and the analytic derivative 𝔇′ at x > 0.
pub fn oscillatory_parts(order: BesselOrder, x: f64) -> Result<OscillatoryParts> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("oscillatory_parts needs x > 0, got {x}")));
    }
    Ok(parts_unchecked(order.nu(), x))
}

pub(crate) fn parts_unchecked(nu: f64, x: f64) -> OscillatoryParts {
    let amp = FRAC_2_PI.sqrt();
    let w = x - super::phase(nu);
    let (s, c) = w.sin_cos();
    let sx = x.sqrt();
    if x >= asymptotic_threshold(nu) {
        let (p0, q0) = hankel_pq(nu, x);
        let (p1, q1) = hankel_pq(nu + 1.0, x);
        let frak_j = amp * (p0 * c - q0 * s);
        let frak_d = amp * ((p0 - 1.0) * c - q0 * s);
        // 𝔍′ = (ν + 1/2)𝔍/x − 𝔍_{ν+1}, 𝔍_{ν+1} = √(2/π)(P₁ sin ω + Q₁ cos ω)
        let frak_d_prime = (nu + 0.5) / x * frak_j + amp * ((1.0 - p1) * s - q1 * c);
        OscillatoryParts { frak_j, frak_d, frak_d_prime }
    } else {
        let (j0, j1) = pair_unchecked(nu, x);
        let frak_j = sx * j0;
        let frak_j_prime = (nu + 0.5) / x * frak_j - sx * j1;
        OscillatoryParts { frak_j, frak_d: frak_j - amp * c, frak_d_prime: frak_j_prime + amp * s }
    }
}

/// Fitted large-argument constants for 𝔇.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticCoefficients {
    /// A_ν in 𝔇′(x) ≈ A_ν cos(x − φ_ν)/x.
    pub a_coeff: f64,
    /// C_ν with |𝔇(x)| ≤ C_ν/(√x(1 + √x)).
    pub c_envelope: f64,
    /// Interval used for the least-squares fits.
    pub fit_range: (f64, f64),
    /// Fitted k in 𝔇(x) ≈ −√(2/π) k sin(x − φ_ν)/x.
    pub d_coeff: f64,
    /// Candidate k = ν² − 1/4.
    pub d_coeff_unhalved: f64,
    /// Candidate k = (ν² − 1/4)/2 from the standard Hankel expansion.
    pub d_coeff_halved: f64,
    /// Relative RMS residual of the A_ν fit.
    pub fit_residual: f64,
}

const FIT_LO: f64 = 50.0;
const FIT_HI: f64 = 500.0;

/// Least-squares fit of A_ν and k, plus the envelope constant C_ν.
pub fn asymptotic_coeffs(order: BesselOrder) -> Result<AsymptoticCoefficients> {
    let nu = order.nu();
    let phi = order.phase();
    let amp = FRAC_2_PI.sqrt();
    let samples = 6000;
    let (mut num_a, mut den_a, mut num_k, mut den_k) = (0.0, 0.0, 0.0, 0.0);
    let mut pts = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = FIT_LO + (FIT_HI - FIT_LO) * (i as f64 + 0.5) / samples as f64;
        let p = parts_unchecked(nu, x);
        let cb = (x - phi).cos();
        let sb = -amp * (x - phi).sin();
        num_a += x * p.frak_d_prime * cb;
        den_a += cb * cb;
        num_k += x * p.frak_d * sb;
        den_k += sb * sb;
        pts.push((x, p, cb));
    }
    let a_coeff = num_a / den_a;
    let d_coeff = num_k / den_k;
    let (mut res, mut norm) = (0.0f64, 0.0f64);
    for (x, p, cb) in &pts {
        res += (x * p.frak_d_prime - a_coeff * cb).powi(2);
        norm += (x * p.frak_d_prime).powi(2);
    }
    let fit_residual = if norm > 0.0 { (res / norm).sqrt() } else { 0.0 };
    let half_case = order.is_half_integer();
    if !half_case && fit_residual > 0.05 {
        return Err(Error::Fit(format!("A_nu fit residual {fit_residual:.3e}")));
    }
    // Envelope over (0, FIT_HI]: log-spaced below 1, dense above.
    let mut c_max = 0.0f64;
    for i in 0..400 {
        let x = 10f64.powf(-4.0 + 4.0 * i as f64 / 400.0);
        c_max = c_max.max(envelope_ratio(nu, x));
    }
    let mut x = 1.0;
    while x <= FIT_HI {
        c_max = c_max.max(envelope_ratio(nu, x));
        x += 0.01;
    }
    Ok(AsymptoticCoefficients {
        a_coeff: if half_case { 0.0 } else { a_coeff },
        c_envelope: if half_case { 0.0 } else { 1.1 * c_max },
        fit_range: (FIT_LO, FIT_HI),
        d_coeff,
        d_coeff_unhalved: nu * nu - 0.25,
        d_coeff_halved: 0.5 * (nu * nu - 0.25),
        fit_residual,
    })
}

fn envelope_ratio(nu: f64, x: f64) -> f64 {
    let p = parts_unchecked(nu, x);
    p.frak_d.abs() * x.sqrt() * (1.0 + x.sqrt())
}

/// ∫_0^∞ (𝔍(xt)𝔍(yt) − (2/π)cos(xt − φ)cos(yt − φ)) dt with an
/// asymptotic-series completion of the oscillatory tail.
pub fn bessel_formula_limit(order: BesselOrder, x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain("bessel_formula_limit needs x, y > 0".into()));
    }
    let nu = order.nu();
    let phi = order.phase();
    let cut = 80.0_f64.max(asymptotic_threshold(nu) + 1.0) / x.min(y);
    let period = 2.0 * PI / (x + y);
    // Geometric refinement near t = 0 handles the x^{ν+1/2} behaviour.
    let mut edges = vec![0.0];
    let first = period.min(cut);
    let mut g = first * 1e-8;
    while g < first {
        edges.push(g);
        g *= 4.0;
    }
    edges.extend(uniform_edges(first, cut, 0.5 * period));
    let (t, w) = composite(&edges, 16);
    let amp2 = 2.0 / PI;
    let mut body = 0.0;
    for (ti, wi) in t.iter().zip(&w) {
        let px = parts_unchecked(nu, x * ti);
        let py = parts_unchecked(nu, y * ti);
        body += wi * (px.frak_j * py.frak_j - amp2 * (x * ti - phi).cos() * (y * ti - phi).cos());
    }
    let terms = 12;
    let c = hankel_coeffs(nu, terms);
    let ex = scale_series(&c, x);
    let ey = scale_series(&c, y);
    let ey_conj: Vec<Complex64> = ey.iter().map(|v| v.conj()).collect();
    let mut sum_series = mul_series(&ex, &ey, terms);
    let mut diff_series = mul_series(&ex, &ey_conj, terms);
    sum_series[0] -= 1.0;
    diff_series[0] -= 1.0;
    let rot = Complex64::from_polar(1.0, -2.0 * phi);
    let tail = rot * series_tail(&sum_series, x + y, cut) + series_tail(&diff_series, x - y, cut);
    Ok(body + tail.re / PI)
}
