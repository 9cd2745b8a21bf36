//! Trace-norm upper bounds for the truncated pieces χ_{[R,∞)}·K·χ_{[R,∞)} of
//! the difference kernel.
//!
//! Tail L₂ norms come from the envelopes |𝔇(u)| ≤ C/(√u(1+√u)) and
//! |𝔇′(u) − A cos(u−φ)/u| ≤ C′/(u^{3/2}(1+√u)), for which
//! ∫_R^∞ du/(u(1+√u)²) = 2G(R), G(x) = ln(1 + 1/√x) − 1/(1 + √x).

use super::decomposition::a_coefficient;
use super::profile::Profile;
use crate::quadrature::composite;
use crate::special_functions::{asymptotic_coeffs, BesselOrder};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::{FRAC_2_PI, PI};
use std::sync::{Mutex, OnceLock};

/// G(x) = ∫_x^∞ du/(2u(1+√u)²).
pub fn envelope_tail(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::INFINITY;
    }
    let s = x.sqrt();
    (1.0 / s).ln_1p() - 1.0 / (1.0 + s)
}

/// ∫_0^∞ |a(t)|·n₁(t)·n₂(t) dt, where n_i(t) bounds ‖h_i(·, t)‖_{L₂[R,∞)}.
///
/// This bounds the trace norm of χ_{[R,∞)}Kχ_{[R,∞)} for
/// K(x, y) = ∫ a(t) h₁(x, t) h₂(y, t) dt. `t_edges` are panel breakpoints
/// on [0, T] resolving `weight`; [T, ∞) is mapped onto (0, 1] by t = T/s.
pub fn separable_trace_bound(
    weight: impl Fn(f64) -> f64,
    tail1: impl Fn(f64, f64) -> f64,
    tail2: impl Fn(f64, f64) -> f64,
    r: f64,
    t_edges: &[f64],
) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    if t_edges.len() < 2 || t_edges[0] != 0.0 {
        return Err(Error::Precondition("t panels must start at 0".into()));
    }
    let f = |t: f64| {
        let a = weight(t).abs();
        if a == 0.0 {
            0.0
        } else {
            a * tail1(t, r) * tail2(t, r)
        }
    };
    let (t, w) = composite(t_edges, 20);
    let body: f64 = t.iter().zip(&w).map(|(t, w)| w * f(*t)).sum();
    let top = *t_edges.last().unwrap();
    let (s, ws) = composite(&[0.0, 1e-4, 1e-3, 1e-2, 0.1, 0.4, 1.0], 20);
    let tail: f64 = s.iter().zip(&ws).map(|(s, w)| w * top / (s * s) * f(top / s)).sum();
    // Far-field check: t·f(t) must die off for the improper integral to exist.
    let far = 1e12 * top;
    let total = body + tail;
    if !total.is_finite() || far * f(far) > 1e-6 * total.max(f64::MIN_POSITIVE) {
        return Err(Error::NotConverged("separable bound: t-integral diverges".into()));
    }
    Ok(total)
}

/// Bound for a kernel with |K| ≤ A/(x+y)² and |∂_y K| ≤ A/(x+y)² on [R,∞)²:
/// A·C·(1/R + 1/√R) with C = 2√3 + √3 from the Hilbert–Schmidt splitting over
/// unit intervals.
pub fn corridor_trace_bound(a: f64, r: f64) -> f64 {
    let c = 3.0 * 3f64.sqrt();
    a.abs() * c * (1.0 / r + 1.0 / r.sqrt())
}

/// Per-piece trace-norm bounds on [R, ∞). `t0` and `t1` cover both the
/// (x, y) and (y, x) copies, so [`PieceBounds::total`] bounds the full R_f.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PieceBounds {
    pub r1: f64,
    pub s: f64,
    pub t0: f64,
    pub t1: f64,
    pub z_tilde: f64,
}

impl PieceBounds {
    pub fn total(&self) -> f64 {
        self.r1 + self.s + self.t0 + self.t1 + self.z_tilde
    }
}

type Envelope = (f64, f64, f64);

/// (A_ν, C_ν, C′_ν), cached per order.
pub fn envelope_constants(order: BesselOrder) -> Result<(f64, f64, f64)> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Envelope>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = order.nu().to_bits();
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(*v);
    }
    let a = a_coefficient(order)?;
    let c = asymptotic_coeffs(order)?.c_envelope;
    let cp = if order.is_half_integer() { 0.0 } else { derivative_envelope(order, a) };
    cache.lock().unwrap().insert(key, (a, c, cp));
    Ok((a, c, cp))
}

/// 1.1·sup |𝔇′(u) − A cos(u−φ)/u|·u^{3/2}(1+√u) over [1e-4, 500].
fn derivative_envelope(order: BesselOrder, a: f64) -> f64 {
    let (nu, phi) = (order.nu(), order.phase());
    let ratio = |u: f64| {
        let p = crate::special_functions::oscillatory_parts_unchecked(nu, u);
        (p.frak_d_prime - a * (u - phi).cos() / u).abs() * u.powf(1.5) * (1.0 + u.sqrt())
    };
    let low = (0..400).map(|i| ratio(10f64.powf(-4.0 + 4.0 * i as f64 / 400.0)));
    let high = (0..=49_900).map(|i| ratio(1.0 + 0.01 * i as f64));
    1.1 * low.chain(high).fold(0.0, f64::max)
}

/// Panels on [0, extent] for the profile's t-integrals.
fn profile_edges(profile: &Profile) -> Vec<f64> {
    let mut edges = profile.panel_edges(profile.feature_length().min(0.25));
    if edges.len() < 2 {
        edges = vec![0.0, 1.0];
    }
    edges
}

/// ∫_0^∞ |g(t)| dt over the profile's panels (g vanishes beyond the extent).
fn l1(profile: &Profile, g: impl Fn(f64) -> f64) -> f64 {
    let (t, w) = composite(&profile_edges(profile), 20);
    t.iter().zip(&w).map(|(t, w)| w * g(*t).abs()).sum()
}

/// Bounds for R_f with f = `profile` (R ≥ 1 is not required).
///
/// - S: h₁ = 𝔇(xt), h₂ = 𝔇(yt), a = f − f(0).
/// - T0: h₁ = 𝔇(xt), h₂ = √(2/π) sin(yt−φ)/y, a = f′.
/// - T1: h₁ = x𝔇′(xt) − A cos(xt−φ)/t, same h₂, a = f − f(0).
/// - Z̃: integrated by parts to a rank-one f′(0) term plus a separable
///   kernel with a = (b₀/t)′ and sines on both sides.
/// - R1: corridor bound with A the larger of the value and derivative envelopes.
pub fn piece_bounds(profile: &Profile, order: BesselOrder, r: f64) -> Result<PieceBounds> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    let (a_nu, c, cp) = envelope_constants(order)?;
    let amp = FRAC_2_PI.sqrt();
    let f0 = profile.value(0.0);
    let f1_0 = profile.derivs(0.0)[1].norm();
    let ext = profile.extent();
    let edges = profile_edges(profile);
    let at = |t: f64| if t <= ext { profile.derivs(t) } else { [num_complex::Complex64::default(); 4] };
    let b0 = |t: f64| (at(t)[0] - f0).norm();
    let d_tail = |t: f64, r: f64| c * (2.0 * envelope_tail(t * r) / t).sqrt();
    let dp_tail = |t: f64, r: f64| cp * (2.0 * envelope_tail(t * r) / t.powi(3)).sqrt();
    let sin_tail = |_: f64, r: f64| amp / r.sqrt();

    let (s, t0, t1, z_int) = if c == 0.0 && cp == 0.0 && a_nu == 0.0 {
        (0.0, 0.0, 0.0, 0.0)
    } else {
        let s = separable_trace_bound(b0, d_tail, d_tail, r, &edges)?;
        let t0 = separable_trace_bound(|t| at(t)[1].norm(), d_tail, sin_tail, r, &edges)?;
        let t1 = separable_trace_bound(b0, dp_tail, sin_tail, r, &edges)?;
        // (b₀/t)′ = f′/t − b₀/t², Taylor-expanded near 0 to avoid cancellation.
        let db = |t: f64| {
            let [f, f1, f2, f3] = at(t);
            if t < 1e-3 * profile.feature_length() {
                (f2 / 2.0 + f3 * t / 6.0).norm()
            } else {
                (f1 / t - (f - f0) / (t * t)).norm()
            }
        };
        let unit = |_: f64, r: f64| 1.0 / r.sqrt();
        let z = separable_trace_bound(db, unit, unit, r, &edges)?;
        (s, 2.0 * t0, 2.0 * t1, z)
    };
    let phi = order.phase();
    let z_tilde = a_nu.abs() * amp * (f1_0 * phi.sin().powi(2) + z_int) / r;

    let f2_l1 = l1(profile, |t| at(t)[2].norm());
    let tf3_l1 = l1(profile, |t| t * at(t)[3].norm());
    let value_env = (f1_0 + f2_l1) / PI;
    let deriv_env = (2.0 * f1_0 + 3.0 * f2_l1 + tf3_l1) / (2.0 * PI * r);
    let r1 = corridor_trace_bound(value_env.max(deriv_env), r);
    Ok(PieceBounds { r1, s, t0, t1, z_tilde })
}
