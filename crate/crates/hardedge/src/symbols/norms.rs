//! Sobolev seminorms (spectral and physical routes), the ℬ-norm report and
//! the norm bound for exponentiated symbols.

use super::shape::Shape;
use super::SymbolSpec;
use crate::error::{Error, Result};
use crate::quadrature::{composite, uniform_edges};
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

/// Polynomial weight applied before differentiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Weight {
    One,
    X,
    X2,
}

impl Weight {
    fn power(self) -> u32 {
        match self {
            Weight::One => 0,
            Weight::X => 1,
            Weight::X2 => 2,
        }
    }
}

/// Norms entering the ℬ-space and the remainder bound L(b).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormReport {
    /// ‖b‖_{H_p} seminorms for p = 1, 2, 3.
    pub h_seminorms: [f64; 3],
    /// ‖x b‖_{H_2} and ‖x² b‖_{H_3}.
    pub weighted_seminorms: [f64; 2],
    pub normb_semi: f64,
    pub normb_full: f64,
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    pub xb_linf: f64,
    pub xbprime_linf: f64,
    pub l_b: f64,
}

type UnitCache = Mutex<HashMap<(Shape, u32, u32), f64>>;

fn unit_cache() -> &'static UnitCache {
    static CACHE: OnceLock<UnitCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// ∫_0^∞ μ^{2p} T_m(μ)² dμ for the unit profile.
fn unit_spectral_integral(shape: Shape, p: u32, m: u32) -> Result<f64> {
    if let Some(v) = unit_cache().lock().unwrap().get(&(shape, p, m)) {
        return Ok(*v);
    }
    let top = shape.spectral_extent();
    let (mu, w) = composite(&uniform_edges(0.0, top, 0.5), 16);
    let mut total = 0.0;
    let mut last = 0.0;
    for (x, wx) in mu.iter().zip(&w) {
        let t = shape.weighted_transform(m, *x);
        last = x.powi(2 * p as i32) * t * t;
        total += wx * last;
    }
    if !total.is_finite() || last > 1e-10 * total.max(1e-300) {
        return Err(Error::NotInSpace(format!("spectral integral for p={p}, weight power {m} not decayed at the cut")));
    }
    unit_cache().lock().unwrap().insert((shape, p, m), total);
    Ok(total)
}

/// Spectral-side seminorm ‖w·b‖_{H_p} = (∫_0^∞ |(w b)^(λ)|² λ^{2p} dλ)^{1/2}.
///
/// The weighted function is extended evenly for even weight powers and
/// oddly for odd ones, which keeps the extension smooth at the origin.
pub fn sobolev_seminorm(spec: &SymbolSpec, p: u32, weight: Weight) -> Result<f64> {
    if !(1..=3).contains(&p) {
        return Err(Error::Domain(format!("seminorm order {p} outside 1..3")));
    }
    if spec.is_zero() {
        return Ok(0.0);
    }
    let m = weight.power();
    let s = spec.scale();
    let unit = unit_spectral_integral(spec.shape(), p, m)?;
    Ok(spec.amplitude().abs() * s.powf(m as f64 + 0.5 - p as f64) * unit.sqrt())
}

/// Physical-side value (2π)^{−1/2} ‖(w b)^{(p)}‖_{L₂(ℝ₊)}.
pub fn sobolev_seminorm_physical(spec: &SymbolSpec, p: u32, weight: Weight) -> Result<f64> {
    if !(1..=3).contains(&p) {
        return Err(Error::Domain(format!("seminorm order {p} outside 1..3")));
    }
    Ok(physical(|x| spec.derivs(x), p, weight.power(), &physical_edges(spec)))
}

pub(crate) fn physical_edges(spec: &SymbolSpec) -> Vec<f64> {
    let ext = spec.extent();
    match spec.shape() {
        Shape::SmoothBump => {
            let mut e = uniform_edges(0.0, 0.9 * ext, spec.feature_length());
            let mut a = 0.9;
            while 1.0 - a > 1e-3 {
                a = 1.0 - 0.5 * (1.0 - a);
                e.push(a * ext);
            }
            e.push(ext);
            e
        }
        Shape::Rational(_) => {
            // Fine panels near the origin, geometric growth in the algebraic tail.
            let mut e = uniform_edges(0.0, 4.0 * spec.scale(), spec.feature_length());
            let mut a = 4.0 * spec.scale();
            while a < ext {
                a = (a * 1.25).min(ext);
                e.push(a);
            }
            e
        }
        _ => uniform_edges(0.0, ext, spec.feature_length()),
    }
}

/// (2π)^{−1/2}‖(x^m f)^{(p)}‖ from derivative samples of f.
pub(crate) fn physical(f: impl Fn(f64) -> [f64; 4], p: u32, m: u32, edges: &[f64]) -> f64 {
    let (x, w) = composite(edges, 16);
    let binom = |n: u32, k: u32| -> f64 { (1..=k).fold(1.0, |acc, i| acc * (n + 1 - i) as f64 / i as f64) };
    let mut total = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let d = f(*xi);
        let mut v = 0.0;
        for j in 0..=p.min(m) {
            // D^j x^m = m!/(m−j)! x^{m−j}
            let fall = (0..j).fold(1.0, |acc, i| acc * (m - i) as f64);
            v += binom(p, j) * fall * xi.powi((m - j) as i32) * d[(p - j) as usize];
        }
        total += wi * v * v;
    }
    (total / (2.0 * PI)).sqrt()
}

fn sup_on(f: impl Fn(f64) -> f64, ext: f64) -> f64 {
    let n = 40_000;
    (0..=n).map(|i| f(ext * i as f64 / n as f64).abs()).fold(0.0, f64::max)
}

pub(crate) fn compute_report(spec: &SymbolSpec) -> NormReport {
    let h = |p, w| sobolev_seminorm(spec, p, w).unwrap_or(f64::INFINITY);
    let h_seminorms = [h(1, Weight::One), h(2, Weight::One), h(3, Weight::One)];
    let weighted_seminorms = [h(2, Weight::X), h(3, Weight::X2)];
    let normb_semi = h_seminorms[0] + h_seminorms[2] + weighted_seminorms[0] + weighted_seminorms[1];
    let edges = physical_edges(spec);
    let (x, w) = composite(&edges, 16);
    let (mut l1, mut l2) = (0.0, 0.0);
    for (xi, wi) in x.iter().zip(&w) {
        let v = spec.value(*xi);
        l1 += wi * v.abs();
        l2 += wi * v * v;
    }
    let l2 = l2.sqrt();
    let ext = spec.extent();
    let xb_linf = sup_on(|t| t * spec.value(t), ext);
    let xbprime_linf = sup_on(|t| t * spec.derivs(t)[1], ext);
    let l_b = (1.0 + xbprime_linf * xbprime_linf + normb_semi * normb_semi) * normb_semi;
    NormReport {
        h_seminorms,
        weighted_seminorms,
        normb_semi,
        normb_full: l1 + l2 + xb_linf + normb_semi,
        l1,
        l2,
        linf: spec.sup_norm(),
        xb_linf,
        xbprime_linf,
        l_b,
    }
}

/// Norm report for b (convenience wrapper around the cached value).
pub fn norms_b(spec: &SymbolSpec) -> Result<NormReport> {
    let r = spec.norms().clone();
    if !r.normb_full.is_finite() {
        return Err(Error::NotInSpace("seminorm diverges".into()));
    }
    Ok(r)
}

/// Right-hand side of the ℬ-seminorm bound for e^b together with the
/// directly computed seminorms of e^b − 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpNormBound {
    /// 6·e^{‖b‖_∞}(1 + ‖x b′‖_∞² + ‖b‖_ℬ²)‖b‖_ℬ.
    pub bound: f64,
    /// ‖e^b − 1‖ seminorms: [H₁, H₂, H₃, H₂(x·), H₃(x²·)].
    pub direct: [f64; 5],
    pub direct_semi: f64,
    /// e^{‖b‖_∞}‖b‖_{H₁}.
    pub h1_bound: f64,
    pub holds: bool,
}

/// Seminorm bound for the exponentiated symbol (constant 6 in front).
pub fn exp_symbol_norm_bound(spec: &SymbolSpec) -> Result<ExpNormBound> {
    let r = norms_b(spec)?;
    let edges = physical_edges(spec);
    let e = |x: f64| {
        let [b, b1, b2, b3] = spec.derivs(x);
        let ex = b.exp();
        [b.exp_m1(), b1 * ex, (b2 + b1 * b1) * ex, (b3 + 3.0 * b1 * b2 + b1 * b1 * b1) * ex]
    };
    let direct = [
        physical(e, 1, 0, &edges),
        physical(e, 2, 0, &edges),
        physical(e, 3, 0, &edges),
        physical(e, 2, 1, &edges),
        physical(e, 3, 2, &edges),
    ];
    let direct_semi = direct[0] + direct[2] + direct[3] + direct[4];
    let growth = r.linf.exp();
    let bound = 6.0 * growth * (1.0 + r.xbprime_linf.powi(2) + r.normb_semi.powi(2)) * r.normb_semi;
    Ok(ExpNormBound { bound, direct, direct_semi, h1_bound: growth * r.h_seminorms[0], holds: direct_semi <= bound })
}
