//! Pointwise evaluation of the difference kernel R_f = B_f − W_f, both directly
//! and through its splitting into the pieces R1, S, T0, T1 and Z̃.

use super::profile::Profile;
use crate::quadrature::{composite, uniform_edges};
use crate::special_functions::tails::{hankel_coeffs, mul_series, scale_series, series_tail, InverseSeries};
use crate::special_functions::{asymptotic_coeffs, asymptotic_threshold, BesselOrder, OscillatoryParts};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::{FRAC_2_PI, PI};
use std::sync::{Mutex, OnceLock};

/// Pieces of R_f(x, y); see [`Decomposition::assembled`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Decomposition {
    pub r1: Complex64,
    pub s: Complex64,
    pub t0_xy: Complex64,
    pub t0_yx: Complex64,
    pub t1_xy: Complex64,
    pub t1_yx: Complex64,
    pub z_tilde: Complex64,
}

impl Decomposition {
    /// (S + T0(x,y) + T1(x,y) + T0(y,x) + T1(y,x) + Z̃) − R1.
    ///
    /// Integrating the cos((x+y)t − 2φ) part by parts gives R_f = R2 − R1 with
    /// R2 the sum of the remaining pieces.
    pub fn assembled(&self) -> Complex64 {
        self.s + self.t0_xy + self.t1_xy + self.t0_yx + self.t1_yx + self.z_tilde - self.r1
    }
}

/// Fitted A_ν, cached per order.
pub(crate) fn a_coefficient(order: BesselOrder) -> Result<f64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = order.nu().to_bits();
    if let Some(a) = cache.lock().unwrap().get(&key) {
        return Ok(*a);
    }
    let a = asymptotic_coeffs(order)?.a_coeff;
    cache.lock().unwrap().insert(key, a);
    Ok(a)
}

fn parts(nu: f64, u: f64) -> OscillatoryParts {
    crate::special_functions::oscillatory_parts_unchecked(nu, u)
}

/// t-panels: geometric grading below the first period, the profile's own
/// panels (at most `step` long) to its extent, then half-period panels to `t_cut`.
pub(crate) fn t_edges(profile: &Profile, period: f64, step: f64, t_cut: f64) -> Vec<f64> {
    let t_max = profile.extent();
    let first = period.min(step).min(t_max);
    let mut edges = vec![0.0];
    let mut g = first * 1e-8;
    while g < first {
        edges.push(g);
        g *= 4.0;
    }
    edges.push(first);
    edges.extend(profile.panel_edges(step).into_iter().filter(|e| *e > first * (1.0 + 1e-12)));
    if t_cut > t_max {
        edges.extend(uniform_edges(t_max, t_cut, 0.5 * period).into_iter().skip(1));
    }
    edges
}

fn check_point(x: f64, y: f64) -> Result<()> {
    if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("kernel needs x, y > 0, got ({x}, {y})")))
    }
}

fn require_smooth(profile: &Profile) -> Result<()> {
    match profile {
        Profile::Indicator(_) => Err(Error::NotInSpace("indicator profiles are not differentiable".into())),
        _ => Ok(()),
    }
}

/// R_f(x, y) = ∫ (𝔍(xt)𝔍(yt) − cos((x−y)t)/π) f(t) dt by direct quadrature.
pub fn difference_direct(profile: &Profile, order: BesselOrder, x: f64, y: f64) -> Result<Complex64> {
    check_point(x, y)?;
    let nu = order.nu();
    let period = 2.0 * PI / (x + y);
    let t_max = profile.extent();
    let edges = t_edges(profile, period, (0.5 * period).min(profile.feature_length()), t_max);
    let (t, w) = composite(&edges, 16);
    let mut sum = Complex64::default();
    for (ti, wi) in t.iter().zip(&w) {
        let j = parts(nu, x * ti).frak_j * parts(nu, y * ti).frak_j - ((x - y) * ti).cos() / PI;
        sum += profile.value(*ti) * (j * wi);
    }
    Ok(sum)
}

/// Asymptotic series of 𝔇(xt) and x𝔇′(xt) − A cos(xt−φ)/t as Re[e^{−iφ}e^{ixt}·series].
fn deviation_series(nu: f64, x: f64, a_nu: f64, terms: usize) -> (InverseSeries, InverseSeries) {
    let amp = FRAC_2_PI.sqrt();
    let c = hankel_coeffs(nu, terms);
    let mut d = scale_series(&c, x);
    d[0] = Complex64::default();
    for v in d.iter_mut() {
        *v *= amp;
    }
    let mut f = vec![Complex64::default(); terms + 1];
    for (j, cj) in c.iter().enumerate() {
        let xj = x.powi(-(j as i32));
        f[j + 1] -= cj * (j as f64 * xj);
        if j >= 1 {
            f[j] += Complex64::new(0.0, 1.0) * cj * (x * xj);
        }
    }
    for v in f.iter_mut() {
        *v *= amp;
    }
    f[1] -= a_nu;
    f.truncate(terms);
    (d, f)
}

/// ∫_{t0}^∞ Re[e^{−iφ}e^{ixt}α]·Re[e^{−iφ}e^{iyt}β] dt.
fn product_tail(alpha: &[Complex64], beta: &[Complex64], x: f64, y: f64, phi: f64, t0: f64, terms: usize) -> f64 {
    let conj: Vec<Complex64> = beta.iter().map(|v| v.conj()).collect();
    let sum = series_tail(&mul_series(alpha, beta, terms), x + y, t0) * Complex64::from_polar(1.0, -2.0 * phi);
    let diff = series_tail(&mul_series(alpha, &conj, terms), x - y, t0);
    0.5 * (sum.re + diff.re)
}

/// All decomposition pieces of R_f at (x, y) from one shared t-quadrature.
pub fn difference_decomposition(profile: &Profile, order: BesselOrder, x: f64, y: f64) -> Result<Decomposition> {
    check_point(x, y)?;
    require_smooth(profile)?;
    let nu = order.nu();
    let phi = order.phase();
    let amp = FRAC_2_PI.sqrt();
    let a_nu = a_coefficient(order)?;
    let f0 = profile.value(0.0);
    let f1_0 = profile.derivs(0.0)[1];
    let t_max = profile.extent();
    let t_cut = t_max.max(80f64.max(asymptotic_threshold(nu) + 1.0) / x.min(y));
    let period = 2.0 * PI / (x + y);
    let edges = t_edges(profile, period, (0.5 * period).min(profile.feature_length()), t_cut);
    let (t, w) = composite(&edges, 16);

    let mut acc = [Complex64::default(); 8];
    for (ti, wi) in t.iter().zip(&w) {
        let (ti, wi) = (*ti, *wi);
        let [f, f1, f2, _] = if ti <= t_max { profile.derivs(ti) } else { [Complex64::default(); 4] };
        let b0 = f - f0;
        let px = parts(nu, x * ti);
        let py = parts(nu, y * ti);
        let (sx, cx) = (x * ti - phi).sin_cos();
        let (sy, cy) = (y * ti - phi).sin_cos();
        let r1 = ((x + y) * ti - 2.0 * phi).cos();
        let dev_x = x * px.frak_d_prime - a_nu * cx / ti;
        let dev_y = y * py.frak_d_prime - a_nu * cy / ti;
        let terms = [
            f2 * r1,
            b0 * (px.frak_d * py.frak_d),
            f1 * (-px.frak_d * amp * sy / y),
            f1 * (-py.frak_d * amp * sx / x),
            b0 * (-dev_x * amp * sy / y),
            b0 * (-dev_y * amp * sx / x),
            b0 * (-a_nu * amp * cx * sy / (ti * y)),
            b0 * (-a_nu * amp * cy * sx / (ti * x)),
        ];
        for (a, v) in acc.iter_mut().zip(terms) {
            *a += v * wi;
        }
    }

    // Beyond t_cut only the constant b0 = −f(0) survives.
    if f0 != Complex64::default() {
        let terms = 12;
        let (dx, fx) = deviation_series(nu, x, a_nu, terms);
        let (dy, fy) = deviation_series(nu, y, a_nu, terms);
        let sin_y = vec![Complex64::new(0.0, -amp / y)];
        let sin_x = vec![Complex64::new(0.0, -amp / x)];
        let cos_only = vec![Complex64::default(), Complex64::new(a_nu, 0.0)];
        acc[1] -= f0 * product_tail(&dx, &dy, x, y, phi, t_cut, terms);
        acc[4] += f0 * product_tail(&fx, &sin_y, x, y, phi, t_cut, terms);
        acc[5] += f0 * product_tail(&fy, &sin_x, y, x, phi, t_cut, terms);
        acc[6] += f0 * product_tail(&cos_only, &sin_y, x, y, phi, t_cut, terms);
        acc[7] += f0 * product_tail(&cos_only, &sin_x, y, x, phi, t_cut, terms);
    }

    let s2 = (x + y) * (x + y);
    Ok(Decomposition {
        r1: ((2.0 * phi).cos() * f1_0 + acc[0]) / (PI * s2),
        s: acc[1],
        t0_xy: acc[2],
        t0_yx: acc[3],
        t1_xy: acc[4],
        t1_yx: acc[5],
        z_tilde: acc[6] + acc[7],
    })
}
