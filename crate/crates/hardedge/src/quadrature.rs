//! Gauss-type quadrature rules on reference intervals.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1], nodes ascending.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1, "order must be positive");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = ((4 * i + 3) as f64 * PI / (4 * n + 2) as f64).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(order: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (t, w) = gauss_legendre(order);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (t.iter().map(|&s| mid + half * s).collect(), w.iter().map(|&v| v * half).collect())
}

/// Gauss–Laguerre nodes and weights for ∫_0^∞ e^{-u} f(u) du (Golub–Welsch).
pub fn gauss_laguerre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut jac = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jac[(i, i)] = (2 * i + 1) as f64;
        if i + 1 < n {
            let off = (i + 1) as f64;
            jac[(i, i + 1)] = off;
            jac[(i + 1, i)] = off;
        }
    }
    let eig = jac.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n).map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Composite Gauss–Legendre nodes/weights over consecutive panel edges.
pub fn composite(edges: &[f64], order: usize) -> (Vec<f64>, Vec<f64>) {
    let (t, w) = gauss_legendre(order);
    let mut nodes = Vec::with_capacity(order * edges.len());
    let mut weights = Vec::with_capacity(order * edges.len());
    for pair in edges.windows(2) {
        let half = 0.5 * (pair[1] - pair[0]);
        let mid = 0.5 * (pair[1] + pair[0]);
        for (s, v) in t.iter().zip(&w) {
            nodes.push(mid + half * s);
            weights.push(v * half);
        }
    }
    (nodes, weights)
}

/// Uniform panel edges on [a, b] with panel length at most `max_len`.
pub fn uniform_edges(a: f64, b: f64, max_len: f64) -> Vec<f64> {
    let panels = ((b - a) / max_len).ceil().max(1.0) as usize;
    (0..=panels).map(|k| a + (b - a) * k as f64 / panels as f64).collect()
}

/// Barycentric Lagrange interpolation weights for the given nodes.
pub fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    nodes
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let prod: f64 = nodes.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &xk)| xj - xk).product();
            1.0 / prod
        })
        .collect()
}

/// Lagrange basis values at `x` (second barycentric form).
pub fn lagrange_basis(nodes: &[f64], bary: &[f64], x: f64) -> Vec<f64> {
    if let Some(j) = nodes.iter().position(|&xj| xj == x) {
        let mut out = vec![0.0; nodes.len()];
        out[j] = 1.0;
        return out;
    }
    let terms: Vec<f64> = nodes.iter().zip(bary).map(|(&xj, &wj)| wj / (x - xj)).collect();
    let denom: f64 = terms.iter().sum();
    terms.into_iter().map(|t| t / denom).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        for order in 1..40 {
            let (x, w) = gauss_legendre(order);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            let deg = 2 * order - 2;
            let val: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((val - 2.0 / (deg as f64 + 1.0)).abs() < 1e-13, "order {order}");
        }
    }

    #[test]
    fn laguerre_moments() {
        let (x, w) = gauss_laguerre(20);
        // ∫ e^{-u} u^k du = k!
        let mut fact = 1.0;
        for k in 0..10 {
            if k > 0 {
                fact *= k as f64;
            }
            let val: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            assert!((val / fact - 1.0).abs() < 1e-11, "moment {k}");
        }
    }

    #[test]
    fn interpolation_reproduces_polynomial() {
        let (x, _) = gauss_legendre_on(8, 0.0, 2.0);
        let bary = barycentric_weights(&x);
        let f: Vec<f64> = x.iter().map(|t| t.powi(5) - 3.0 * t).collect();
        let at = 1.37;
        let basis = lagrange_basis(&x, &bary, at);
        let got: f64 = basis.iter().zip(&f).map(|(b, v)| b * v).sum();
        assert!((got - (at.powi(5) - 3.0 * at)).abs() < 1e-12);
    }
}
