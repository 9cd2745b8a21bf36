//! Unit-scale profiles g(u) of the symbol families, their derivatives and
//! cosine transforms ĝ(μ) = (1/π)∫_0^∞ g(u) cos(μu) du.

use crate::quadrature::{barycentric_weights, composite, gauss_legendre, lagrange_basis, uniform_edges};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Family of the unit profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Gaussian,
    ExpDecay,
    SmoothBump,
    Rational(u32),
}

impl Shape {
    /// [g, g′, g″, g‴] at u ≥ 0.
    pub fn derivs(self, u: f64) -> [f64; 4] {
        match self {
            Shape::Gaussian => {
                let e = (-u * u).exp();
                [e, -2.0 * u * e, (4.0 * u * u - 2.0) * e, (12.0 * u - 8.0 * u * u * u) * e]
            }
            Shape::ExpDecay => {
                let r = (1.0 + u * u).sqrt();
                let g = (1.0 - r).exp();
                let d1 = -u / r;
                let m2 = u * u / (r * r) - 1.0 / (r * r * r);
                let r4 = r * r * r * r;
                let dm2 = 2.0 * u / r4 + 3.0 * u / (r4 * r);
                [g, d1 * g, m2 * g, (dm2 + m2 * d1) * g]
            }
            Shape::SmoothBump => {
                if u >= 1.0 {
                    return [0.0; 4];
                }
                let q = 1.0 - u * u;
                let g = (1.0 - 1.0 / q).exp();
                if g == 0.0 {
                    return [0.0; 4];
                }
                let (q2, q3) = (q * q, q * q * q);
                let (q4, q5) = (q2 * q2, q2 * q3);
                let d1 = -2.0 * u / q2;
                let m = -2.0 / q2 - 8.0 * u * u / q3 + 4.0 * u * u / q4;
                let dm = -8.0 * u / q3 - 16.0 * u / q3 - 48.0 * u.powi(3) / q4 + 8.0 * u / q4 + 32.0 * u.powi(3) / q5;
                [g, d1 * g, m * g, (dm + m * d1) * g]
            }
            Shape::Rational(k) => {
                let kf = k as f64;
                let p = 1.0 + u * u;
                let base = p.powf(-kf);
                let g1 = -2.0 * kf * u * base / p;
                let g2 = -2.0 * kf * base / p + 4.0 * kf * (kf + 1.0) * u * u * base / (p * p);
                let g3 = 12.0 * kf * (kf + 1.0) * u * base / (p * p)
                    - 8.0 * kf * (kf + 1.0) * (kf + 2.0) * u.powi(3) * base / (p * p * p);
                [base, g1, g2, g3]
            }
        }
    }

    pub fn value(self, u: f64) -> f64 {
        self.derivs(u)[0]
    }

    /// u beyond which the profile and its derivatives are negligible (< 1e-18).
    pub fn extent(self) -> f64 {
        match self {
            Shape::Gaussian => 6.6,
            Shape::ExpDecay => 45.0,
            Shape::SmoothBump => 1.0,
            Shape::Rational(k) => 10f64.powf(18.0 / (2.0 * k as f64)).max(10.0),
        }
    }

    /// μ beyond which |ĝ(μ)| is negligible.
    pub fn spectral_extent(self) -> f64 {
        match self {
            Shape::Gaussian => 13.0,
            Shape::ExpDecay => 42.0,
            Shape::SmoothBump => 600.0,
            Shape::Rational(k) => 45.0 + 2.0 * k as f64,
        }
    }

    /// Typical length over which the profile varies.
    pub fn feature_length(self) -> f64 {
        match self {
            Shape::SmoothBump => 0.05,
            _ => 0.25,
        }
    }

    /// T_m(μ) = (1/π)∫ u^m g(u) cs_m(μu) du, cs_m = cos for even m, sin for odd m.
    pub fn weighted_transform(self, m: u32, mu: f64) -> f64 {
        let mu = if m.is_multiple_of(2) { mu.abs() } else { mu };
        match self {
            Shape::Gaussian => {
                let g = (-mu * mu / 4.0).exp() / (2.0 * PI.sqrt());
                match m {
                    0 => g,
                    1 => 0.5 * mu * g,
                    2 => (0.5 - 0.25 * mu * mu) * g,
                    _ => quad_transform(self, m, mu),
                }
            }
            Shape::Rational(k) if m <= 2 => {
                let sign = mu.signum();
                let a = mu.abs();
                let p = rational_poly(k);
                let e = (-a).exp();
                let v = eval_poly(&p, a);
                let d1 = eval_poly(&deriv_poly(&p), a);
                let d2 = eval_poly(&deriv_poly(&deriv_poly(&p)), a);
                match m {
                    0 => e * v,
                    1 => -sign * e * (d1 - v),
                    _ => -e * (d2 - 2.0 * d1 + v),
                }
            }
            Shape::ExpDecay | Shape::SmoothBump if m == 0 => table(self).eval(mu),
            _ => quad_transform(self, m, mu),
        }
    }

    /// ĝ(μ).
    pub fn cosine_transform(self, mu: f64) -> f64 {
        self.weighted_transform(0, mu)
    }
}

/// Coefficients of P with ĝ = e^{−μ}P(μ) for g = (1+u²)^{−k}.
fn rational_poly(k: u32) -> Vec<f64> {
    let n = (k - 1) as usize;
    let fact = |m: usize| (1..=m).fold(1.0, |a, b| a * b as f64);
    let pre = 1.0 / (2f64.powi(2 * n as i32 + 1) * fact(n));
    (0..=n).map(|j| pre * fact(2 * n - j) / (fact(j) * fact(n - j)) * 2f64.powi(j as i32)).collect()
}

fn deriv_poly(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(j, c)| j as f64 * c).collect()
}

fn eval_poly(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

impl Shape {
    /// Panel breakpoints on [0, extent] no longer than `step` (unit coordinates),
    /// refined towards the support edge for the bump.
    pub(crate) fn panel_edges(self, step: f64) -> Vec<f64> {
        match self {
            Shape::SmoothBump => bump_edges(step),
            _ => uniform_edges(0.0, self.extent(), step),
        }
    }
}

/// Direct quadrature of T_m(μ).
pub(crate) fn quad_transform(shape: Shape, m: u32, mu: f64) -> f64 {
    let ext = shape.extent();
    let step = (shape.feature_length()).min(PI / mu.abs().max(1e-9));
    let edges = if shape == Shape::SmoothBump { bump_edges(step) } else { uniform_edges(0.0, ext, step) };
    let (u, w) = composite(&edges, 16);
    let mut sum = 0.0;
    for (ui, wi) in u.iter().zip(&w) {
        let arg = mu * ui;
        let trig = if m.is_multiple_of(2) { arg.cos() } else { arg.sin() };
        sum += wi * ui.powi(m as i32) * shape.value(*ui) * trig;
    }
    sum / PI
}

/// Panels on [0, 1] shrinking in proportion to the distance from the flat endpoint.
fn bump_edges(step: f64) -> Vec<f64> {
    let mut edges = uniform_edges(0.0, 0.5, step);
    let mut a = 0.5;
    while 1.0 - a > 1e-3 {
        a += step.min(0.1 * (1.0 - a));
        edges.push(a);
    }
    edges.push(1.0);
    edges
}

/// Piecewise-polynomial interpolant of ĝ on [0, spectral_extent].
struct Table {
    edges: Vec<f64>,
    nodes: Vec<f64>,
    bary: Vec<f64>,
    values: Vec<Vec<f64>>,
    shape: Shape,
}

impl Table {
    fn build(shape: Shape) -> Self {
        let order = 20;
        let (t, _) = gauss_legendre(order);
        let bary = barycentric_weights(&t);
        let edges = uniform_edges(0.0, shape.spectral_extent(), 0.25);
        let values = edges
            .windows(2)
            .map(|p| t.iter().map(|s| quad_transform(shape, 0, 0.5 * (p[0] + p[1]) + 0.5 * (p[1] - p[0]) * s)).collect())
            .collect();
        Self { edges, nodes: t, bary, values, shape }
    }

    fn eval(&self, mu: f64) -> f64 {
        let last = *self.edges.last().unwrap();
        if mu >= last {
            return quad_transform(self.shape, 0, mu);
        }
        let width = self.edges[1] - self.edges[0];
        let p = ((mu / width) as usize).min(self.values.len() - 1);
        let (a, b) = (self.edges[p], self.edges[p + 1]);
        let s = (2.0 * mu - a - b) / (b - a);
        let basis = lagrange_basis(&self.nodes, &self.bary, s);
        basis.iter().zip(&self.values[p]).map(|(l, v)| l * v).sum()
    }
}

fn table(shape: Shape) -> &'static Table {
    static EXP: OnceLock<Table> = OnceLock::new();
    static BUMP: OnceLock<Table> = OnceLock::new();
    match shape {
        Shape::ExpDecay => EXP.get_or_init(|| Table::build(shape)),
        _ => BUMP.get_or_init(|| Table::build(Shape::SmoothBump)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_match_difference_quotients() {
        for shape in [Shape::Gaussian, Shape::ExpDecay, Shape::SmoothBump, Shape::Rational(3), Shape::Rational(5)] {
            for &u in &[0.1, 0.4, 0.77, 1.3, 2.5] {
                let h = 1e-5;
                let lo = shape.derivs(u - h);
                let hi = shape.derivs(u + h);
                let d = shape.derivs(u);
                for k in 0..3 {
                    let fd = (hi[k] - lo[k]) / (2.0 * h);
                    assert!((fd - d[k + 1]).abs() < 1e-6 * (1.0 + d[k + 1].abs()), "{shape:?} u={u} k={k}");
                }
            }
        }
    }

    // Algebraic tails need a far longer range than the production cutoff.
    fn long_quad(shape: Shape, m: u32, mu: f64) -> f64 {
        let step = 0.25f64.min(PI / mu.max(1e-9));
        let (u, w) = composite(&uniform_edges(0.0, 2000.0, step), 16);
        let trig = |x: f64| if m.is_multiple_of(2) { x.cos() } else { x.sin() };
        let body: f64 = u.iter().zip(&w).map(|(u, w)| w * u.powi(m as i32) * shape.value(*u) * trig(mu * u)).sum();
        // Non-oscillating algebraic tail beyond the range, leading order.
        let tail = match shape {
            Shape::Rational(k) if mu == 0.0 => {
                let p = 2.0 * k as f64 - m as f64 - 1.0;
                2000f64.powf(-p) / p
            }
            _ => 0.0,
        };
        (body + tail) / PI
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for shape in [Shape::Gaussian, Shape::Rational(3), Shape::Rational(4)] {
            for m in 0..3 {
                for &mu in &[0.0, 0.3, 1.0, 2.7, 6.0] {
                    let a = shape.weighted_transform(m, mu);
                    let b = long_quad(shape, m, mu);
                    assert!((a - b).abs() < 1e-12, "{shape:?} m={m} mu={mu}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn tables_match_quadrature() {
        for shape in [Shape::ExpDecay, Shape::SmoothBump] {
            for &mu in &[0.0, 0.11, 1.37, 7.9, 20.3] {
                let a = shape.cosine_transform(mu);
                let b = quad_transform(shape, 0, mu);
                assert!((a - b).abs() < 1e-13, "{shape:?} mu={mu}: {a} vs {b}");
            }
        }
    }
}
