//! Oscillatory tail integrals ∫_T^∞ e^{iωt} t^{−k} dt and the Hankel
//! expansion coefficients used to complete truncated Bessel integrals.

use crate::quadrature::{gauss_laguerre, gauss_legendre_on};
use num_complex::Complex64;
use std::sync::OnceLock;

fn laguerre() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_laguerre(60))
}

/// ∫_{t0}^∞ e^{iωt} t^{−k} dt for t0 > 0 and k ≥ 1 (k ≥ 2 when ω = 0).
pub fn exp_power_tail(omega: f64, k: u32, t0: f64) -> Complex64 {
    assert!(t0 > 0.0 && k >= 1);
    if omega == 0.0 {
        assert!(k >= 2, "divergent tail");
        return Complex64::new(t0.powi(1 - k as i32) / (k as f64 - 1.0), 0.0);
    }
    if omega < 0.0 {
        return exp_power_tail(-omega, k, t0).conj();
    }
    let switch = 12.0 / omega;
    if t0 >= switch {
        rotated(omega, k, t0)
    } else {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut a = t0;
        while a < switch {
            let b = (2.0 * a).min(switch).min(a + std::f64::consts::PI / omega);
            let (x, w) = gauss_legendre_on(24, a, b);
            for (t, wt) in x.iter().zip(&w) {
                sum += Complex64::from_polar(wt * t.powi(-(k as i32)), omega * t);
            }
            a = b;
        }
        sum + rotated(omega, k, switch)
    }
}

fn rotated(omega: f64, k: u32, t0: f64) -> Complex64 {
    // t = t0 + i u/ω, u ∈ [0, ∞)
    let (u, w) = laguerre();
    let i = Complex64::new(0.0, 1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for (uj, wj) in u.iter().zip(w) {
        let z = Complex64::new(t0, uj / omega);
        sum += wj * z.powi(-(k as i32));
    }
    i * Complex64::from_polar(1.0 / omega, omega * t0) * sum
}

/// Coefficients c_k with P(u) + iQ(u) = Σ_k c_k u^{−k}, where
/// J_ν(u) = √(2/πu) Re[(P + iQ) e^{i(u − φ_ν)}].
pub fn hankel_coeffs(nu: f64, terms: usize) -> Vec<Complex64> {
    let mu = 4.0 * nu * nu;
    let mut out = Vec::with_capacity(terms);
    let mut a = 1.0;
    let mut ipow = Complex64::new(1.0, 0.0);
    out.push(Complex64::new(1.0, 0.0));
    for k in 1..terms {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0);
        ipow *= Complex64::new(0.0, 1.0);
        out.push(ipow * a);
    }
    out
}

/// Series in 1/t: coefficient k multiplies t^{−k}.
pub type InverseSeries = Vec<Complex64>;

/// Σ c_k (s·t)^{−k} rewritten as a series in t^{−k}.
pub fn scale_series(coeffs: &[Complex64], s: f64) -> InverseSeries {
    coeffs.iter().enumerate().map(|(k, c)| c * s.powi(-(k as i32))).collect()
}

/// Product of two inverse-power series, truncated to `terms`.
pub fn mul_series(a: &[Complex64], b: &[Complex64], terms: usize) -> InverseSeries {
    let mut out = vec![Complex64::new(0.0, 0.0); terms];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if i + j < terms {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// ∫_{t0}^∞ e^{iωt} Σ_k c_k t^{−k} dt, skipping the constant term (which must vanish).
pub fn series_tail(series: &[Complex64], omega: f64, t0: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, c) in series.iter().enumerate().skip(1) {
        if c.norm() == 0.0 || (k == 1 && omega == 0.0) {
            continue;
        }
        sum += c * exp_power_tail(omega, k as u32, t0);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(omega: f64, k: u32, t0: f64) -> Complex64 {
        // Integrate to a far cutoff, then integrate by parts once more for the remainder.
        let far = t0 + 4000.0 * std::f64::consts::PI / omega.abs().max(1e-3);
        let mut sum = Complex64::new(0.0, 0.0);
        let step = std::f64::consts::PI / omega.abs().max(0.5);
        let mut a = t0;
        while a < far {
            let b = (a + step).min(far);
            let (x, w) = gauss_legendre_on(16, a, b);
            for (t, wt) in x.iter().zip(&w) {
                sum += Complex64::from_polar(wt * t.powi(-(k as i32)), omega * t);
            }
            a = b;
        }
        // ∫_F^∞ e^{iωt}t^{-k} ≈ −e^{iωF}F^{-k}/(iω) + k/(iω) ∫ e^{iωt} t^{-k-1}
        let i = Complex64::new(0.0, 1.0);
        let lead = -Complex64::from_polar(far.powi(-(k as i32)), omega * far) / (i * omega);
        let next = -Complex64::from_polar(far.powi(-(k as i32) - 1), omega * far) * (k as f64) / (i * omega * i * omega);
        sum + lead + next
    }

    #[test]
    fn tail_matches_brute_force() {
        for &(om, k, t0) in &[(1.0, 1, 0.5), (3.0, 2, 2.0), (0.05, 2, 1.0), (-2.0, 1, 3.0), (20.0, 3, 0.2)] {
            let got = exp_power_tail(om, k, t0);
            let want = brute(om, k, t0);
            assert!((got - want).norm() < 1e-9, "{om} {k} {t0}: {got} vs {want}");
        }
    }

    #[test]
    fn zero_frequency_closed_form() {
        let v = exp_power_tail(0.0, 3, 2.0);
        assert!((v.re - 0.125).abs() < 1e-15);
    }
}
