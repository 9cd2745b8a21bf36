use crate::quadrature::gauss_legendre;
use crate::{Error, Result};
use serde::Serialize;

/// Composite Gauss–Legendre rule on [a, b].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureGrid {
    pub interval: (f64, f64),
    pub panels: usize,
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub edges: Vec<f64>,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Rule with explicit panel breakpoints (strictly increasing).
    pub fn from_edges(edges: &[f64], order: usize) -> Result<Self> {
        if edges.len() < 2 || order < 2 {
            return Err(Error::Precondition("need at least one panel and order >= 2".into()));
        }
        let (a, b) = (edges[0], edges[edges.len() - 1]);
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::DegenerateInterval { a, b });
        }
        if edges.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::Precondition("panel edges must increase".into()));
        }
        let (t, w) = gauss_legendre(order);
        let n = (edges.len() - 1) * order;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for p in edges.windows(2) {
            let (mid, half) = (0.5 * (p[0] + p[1]), 0.5 * (p[1] - p[0]));
            for (ti, wi) in t.iter().zip(&w) {
                nodes.push(mid + half * ti);
                weights.push(half * wi);
            }
        }
        Ok(Self { interval: (a, b), panels: edges.len() - 1, order, nodes, weights, edges: edges.to_vec() })
    }

    /// Panels geometrically graded towards `a` (ratio `ratio`, smallest width `finest`),
    /// uniform of width at most `max_len` elsewhere.
    pub fn graded(a: f64, b: f64, max_len: f64, finest: f64, ratio: f64, order: usize) -> Result<Self> {
        if !(b > a) {
            return Err(Error::DegenerateInterval { a, b });
        }
        let mut edges = vec![a];
        let mut width = finest.min(b - a);
        let mut x = a;
        while x + width < b && width < max_len {
            x += width;
            edges.push(x);
            width *= ratio;
        }
        let rest = b - x;
        let n = (rest / max_len).ceil().max(1.0) as usize;
        for k in 1..=n {
            edges.push(x + rest * k as f64 / n as f64);
        }
        Self::from_edges(&edges, order)
    }

    /// Same breakpoints with every panel split in two and `extra` more nodes per panel.
    pub fn refined(&self, extra: usize) -> Result<Self> {
        let edges = &self.edges;
        let mut fine = Vec::with_capacity(2 * edges.len());
        for p in edges.windows(2) {
            fine.push(p[0]);
            fine.push(0.5 * (p[0] + p[1]));
        }
        fine.push(*edges.last().unwrap());
        Self::from_edges(&fine, self.order + extra)
    }
}

/// Uniform composite rule: `panels` equal panels of `order` nodes.
pub fn build_grid(a: f64, b: f64, panels: usize, order: usize) -> Result<QuadratureGrid> {
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::DegenerateInterval { a, b });
    }
    if panels < 1 || order < 2 {
        return Err(Error::Precondition(format!("panels {panels} >= 1 and order {order} >= 2 required")));
    }
    let edges: Vec<f64> = (0..=panels).map(|k| a + (b - a) * k as f64 / panels as f64).collect();
    QuadratureGrid::from_edges(&edges, order)
}

/// Default layout: order 16 panels no longer than min(2, 2π/rate).
pub fn default_grid(a: f64, b: f64, rate: f64) -> Result<QuadratureGrid> {
    let len = 2f64.min(2.0 * std::f64::consts::PI / rate.max(1e-12));
    build_grid(a, b, ((b - a) / len).ceil().max(1.0) as usize, 16)
}
