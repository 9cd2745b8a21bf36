use crate::quadrature::{composite, uniform_edges};
use crate::symbols::SymbolSpec;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Weight function f(t) on t ≥ 0 entering B_f, W_f and H_f.
#[derive(Debug, Clone)]
pub enum Profile {
    /// The symbol b itself.
    Symbol(SymbolSpec),
    /// e^{z b} − 1.
    ExpMinusOne { symbol: SymbolSpec, z: Complex64 },
    /// χ_{[0, cut]}.
    Indicator(f64),
}

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

impl Profile {
    pub fn exp_minus_one(symbol: &SymbolSpec, z: Complex64) -> Self {
        Profile::ExpMinusOne { symbol: symbol.clone(), z }
    }

    /// [f, f′, f″, f‴] at t.
    pub fn derivs(&self, t: f64) -> [Complex64; 4] {
        match self {
            Profile::Symbol(b) => b.derivs(t).map(|v| Complex64::new(v, 0.0)),
            Profile::ExpMinusOne { symbol, z } => {
                let [b, b1, b2, b3] = symbol.derivs(t);
                let e = (z * b).exp();
                let z2 = z * z;
                [e - ONE, z * b1 * e, (z * b2 + z2 * b1 * b1) * e, (z * b3 + z2 * 3.0 * b1 * b2 + z2 * z * b1 * b1 * b1) * e]
            }
            Profile::Indicator(c) => {
                let v = if t <= *c { 1.0 } else { 0.0 };
                [Complex64::new(v, 0.0), Complex64::default(), Complex64::default(), Complex64::default()]
            }
        }
    }

    pub fn value(&self, t: f64) -> Complex64 {
        match self {
            Profile::Symbol(b) => Complex64::new(b.value(t), 0.0),
            Profile::ExpMinusOne { symbol, z } => (z * symbol.value(t)).exp() - ONE,
            Profile::Indicator(c) => Complex64::new(if t <= *c { 1.0 } else { 0.0 }, 0.0),
        }
    }

    /// Beyond this t the profile and its derivatives are negligible.
    pub fn extent(&self) -> f64 {
        match self {
            Profile::Symbol(b) | Profile::ExpMinusOne { symbol: b, .. } => b.extent(),
            Profile::Indicator(c) => *c,
        }
    }

    /// Shortest t-scale on which the profile varies; quadrature panels stay below it.
    pub fn feature_length(&self) -> f64 {
        match self {
            Profile::Symbol(b) | Profile::ExpMinusOne { symbol: b, .. } => b.feature_length(),
            Profile::Indicator(c) => *c,
        }
    }

    /// Panel breakpoints on [0, extent] no longer than `step`, including discontinuities.
    pub fn panel_edges(&self, step: f64) -> Vec<f64> {
        match self {
            Profile::Symbol(b) | Profile::ExpMinusOne { symbol: b, .. } => b.panel_edges(step),
            Profile::Indicator(c) => uniform_edges(0.0, *c, step),
        }
    }

    /// Extra panel breakpoints (discontinuities).
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Profile::Indicator(c) => vec![*c],
            _ => Vec::new(),
        }
    }

    /// Whether f is real-valued.
    pub fn is_real(&self) -> bool {
        match self {
            Profile::ExpMinusOne { z, .. } => z.im == 0.0,
            _ => true,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Profile::Symbol(b) => b.is_zero(),
            Profile::ExpMinusOne { symbol, z } => symbol.is_zero() || *z == Complex64::default(),
            Profile::Indicator(c) => *c == 0.0,
        }
    }

    /// f̂(s) = (1/π)∫_0^∞ cos(st) f(t) dt.
    pub fn cosine_transform(&self, s: f64) -> Complex64 {
        match self {
            Profile::Symbol(b) => Complex64::new(b.cosine_transform(s), 0.0),
            Profile::Indicator(c) => {
                let v = if s == 0.0 { *c } else { (s * c).sin() / s };
                Complex64::new(v / PI, 0.0)
            }
            Profile::ExpMinusOne { .. } => {
                let step = self.feature_length().min(PI / s.abs().max(1e-9));
                let (t, w) = composite(&self.panel_edges(step), 16);
                let sum: Complex64 = t.iter().zip(&w).map(|(t, w)| self.value(*t) * (s * t).cos() * *w).sum();
                sum / PI
            }
        }
    }
}
