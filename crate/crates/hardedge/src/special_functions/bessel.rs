//! Bessel functions of the first kind for real order ν > −1 and real x ≥ 0.
//!
//! Three regimes: the power series near the origin, Miller's backward
//! recurrence with the Neumann normalization sum in the transition
//! region, and the Hankel expansion for large arguments.

use super::BesselOrder;
use crate::error::{Error, Result};
use std::f64::consts::{FRAC_2_PI, PI};

const SERIES_LIMIT: f64 = 2.0;

/// Argument above which the Hankel expansion is used for the given order.
pub fn asymptotic_threshold(nu: f64) -> f64 {
    (25.0f64).max(2.0 * nu.abs()).max(nu * nu)
}

/// Γ(x) for real x > 0 (Lanczos, g = 7).
pub fn gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// J_ν(x).
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    Ok(bessel_pair(order, x)?.0)
}

/// (J_ν(x), J_{ν+1}(x)).
pub fn bessel_pair(order: BesselOrder, x: f64) -> Result<(f64, f64)> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel argument {x}")));
    }
    Ok(pair_unchecked(order.nu(), x))
}

pub(crate) fn pair_unchecked(nu: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        let j0 = if nu == 0.0 { 1.0 } else { 0.0 };
        return (j0, 0.0);
    }
    if x <= SERIES_LIMIT {
        (series(nu, x), series(nu + 1.0, x))
    } else if x >= asymptotic_threshold(nu) {
        let (p0, q0) = hankel_pq(nu, x);
        let (p1, q1) = hankel_pq(nu + 1.0, x);
        let amp = (FRAC_2_PI / x).sqrt();
        let w0 = x - phase(nu);
        let w1 = x - phase(nu + 1.0);
        (amp * (p0 * w0.cos() - q0 * w0.sin()), amp * (p1 * w1.cos() - q1 * w1.sin()))
    } else {
        miller(nu, x)
    }
}

/// φ_ν = π/4 + πν/2.
pub fn phase(nu: f64) -> f64 {
    0.25 * PI + 0.5 * PI * nu
}

fn series(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    (0.5 * x).powf(nu) / gamma(nu + 1.0) * sum
}

/// Hankel expansion factors P, Q with J_ν(x) = √(2/πx)(P cos ω − Q sin ω).
pub(crate) fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (kf * 8.0 * x);
        if a == 0.0 {
            break;
        }
        if a.abs() > prev {
            break;
        }
        prev = a.abs();
        // a_k / x^k with sign (−1)^{⌊k/2⌋}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    (p, q)
}

fn miller(nu: f64, x: f64) -> (f64, f64) {
    // Reduce to fractional order μ ∈ (0, 1] ∪ {0}, then shift.
    let (mu, shift): (f64, i64) = if nu < 0.0 {
        (nu + 1.0, -1)
    } else {
        let fl = nu.floor();
        (nu - fl, fl as i64)
    };
    let top = (x + 40.0 + 12.0 * x.powf(1.0 / 3.0)).ceil() as i64 + shift.max(0) + 2;
    let top = top + (top & 1);
    let mut jk1 = 0.0; // J_{μ+k+1}
    let mut jk = 1e-300; // J_{μ+k}
    let mut norm = 0.0;
    let mut want_lo = 0.0;
    let mut want_hi = 0.0;
    let target = shift.max(0);
    // Neumann weights c_k for even indices m = 2k: c_0 = Γ(μ+1), c_k = (μ+2k)Γ(μ+k)/k!.
    let mut weights = vec![0.0; (top / 2 + 1) as usize];
    weights[0] = gamma(mu + 1.0);
    let mut g = gamma(mu + 1.0); // Γ(μ+k)/k! at k = 1
    for k in 1..weights.len() {
        if k > 1 {
            let kf = k as f64;
            g *= (mu + kf - 1.0) / kf;
        }
        weights[k] = (mu + 2.0 * k as f64) * g;
    }
    let mut m = top;
    while m >= 0 {
        if m == target {
            want_lo = jk;
            want_hi = jk1;
        }
        if m % 2 == 0 {
            norm += weights[(m / 2) as usize] * jk;
        }
        if m == 0 {
            break;
        }
        let jm1 = 2.0 * (mu + m as f64) / x * jk - jk1;
        jk1 = jk;
        jk = jm1;
        m -= 1;
        if jk.abs() > 1e250 {
            jk *= 1e-250;
            jk1 *= 1e-250;
            norm *= 1e-250;
            want_lo *= 1e-250;
            want_hi *= 1e-250;
        }
    }
    // jk = J_μ, jk1 = J_{μ+1} (unnormalized)
    let scale = (0.5 * x).powf(mu) / norm;
    if shift < 0 {
        let j_mu = jk * scale;
        let j_mu1 = jk1 * scale;
        let j_lower = 2.0 * mu / x * j_mu - j_mu1;
        (j_lower, j_mu)
    } else {
        (want_lo * scale, want_hi * scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(nu: f64, x: f64) -> f64 {
        pair_unchecked(nu, x).0
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(1.0) - 1.0).abs() < 1e-15);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(1.7) - 0.908_638_732_853_290_2).abs() < 1e-14);
    }

    #[test]
    fn half_order_closed_forms() {
        for &x in &[0.3, 1.0, 1.9, 2.5, 7.0, 15.0, 24.9, 25.1, 80.0, 900.0] {
            let s = (2.0 / (PI * x)).sqrt();
            assert!((j(0.5, x) - s * x.sin()).abs() < 1e-14 * (1.0 + s), "x={x}");
            assert!((j(-0.5, x) - s * x.cos()).abs() < 1e-14 * (1.0 + s), "x={x}");
            let j32 = s * (x.sin() / x - x.cos());
            assert!((j(1.5, x) - j32).abs() < 1e-14 * (1.0 + s), "x={x}");
        }
    }

    #[test]
    fn regimes_agree_at_switch_points() {
        for &nu in &[0.0, 0.3, 0.7, 1.0, 2.5, -0.3, -0.7] {
            for &x in &[SERIES_LIMIT, asymptotic_threshold(nu)] {
                let lo = pair_unchecked(nu, x * (1.0 - 1e-14));
                let hi = pair_unchecked(nu, x * (1.0 + 1e-14));
                assert!((lo.0 - hi.0).abs() < 1e-12, "nu={nu} x={x}");
                assert!((lo.1 - hi.1).abs() < 1e-12, "nu={nu} x={x}");
            }
        }
    }
}
