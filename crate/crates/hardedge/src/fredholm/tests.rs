use super::*;
use crate::symbols::SymbolSpec;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> CMatrix {
    DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale)
}

#[test]
fn grid_basics() {
    let g = build_grid(0.0, 1.0, 1, 3).unwrap();
    assert_eq!(g.len(), 3);
    assert!((g.weights.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    let g = build_grid(0.0, 1.0, 3, 2).unwrap();
    let q: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x * x).sum();
    assert!((q - 1.0 / 3.0).abs() < 1e-15);
    let g = build_grid(0.0, 2.0 * std::f64::consts::PI, 8, 10).unwrap();
    let q: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.cos()).sum();
    assert!(q.abs() < 1e-12);
    assert!(g.nodes.windows(2).all(|p| p[1] > p[0]) && g.nodes[0] > 0.0);
    assert!(matches!(build_grid(1.0, 1.0, 2, 4), Err(crate::Error::DegenerateInterval { .. })));
}

#[test]
fn graded_grid_is_a_valid_rule() {
    let g = QuadratureGrid::graded(0.0, 7.0, 1.0, 1e-4, 2.0, 12).unwrap();
    assert!((g.weights.iter().sum::<f64>() - 7.0).abs() < 1e-12 * 7.0);
    // √x is resolved thanks to the grading.
    let q: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.sqrt()).sum();
    assert!((q - 2.0 / 3.0 * 7f64.powf(1.5)).abs() < 1e-9);
    let r = g.refined(4).unwrap();
    assert_eq!(r.panels, 2 * g.panels);
    assert!((r.weights.iter().sum::<f64>() - 7.0).abs() < 1e-12 * 7.0);
}

#[test]
fn rank_one_kernel() {
    let g = Arc::new(build_grid(0.0, 1.0, 2, 10).unwrap());
    let op = discretize_real(|x, y| (-(x + y)).exp(), g.clone(), "rank1").unwrap();
    let sv = op.matrix.clone().singular_values();
    assert!(sv.iter().filter(|s| **s > 1e-12).count() == 1);
    let f = op.functionals();
    let want = 1.0 + (1.0 - (-2f64).exp()) / 2.0;
    assert!((f.det.re - want).abs() < 1e-13 && f.det.im.abs() < 1e-15);
    assert!((f.det2 - f.det * (-f.trace).exp()).norm() < 1e-15);
    let z = discretize_real(|_, _| 0.0, g.clone(), "zero").unwrap().functionals();
    assert_eq!((z.trace, z.det, z.det2, z.nuclear_norm, z.op_norm), (c(0.0), c(1.0), c(1.0), 0.0, 0.0));
    assert!(discretize_real(|_, _| f64::NAN, g, "nan").is_err());
}

#[test]
fn wiener_hopf_trace_is_linear_in_length() {
    let b = SymbolSpec::gaussian(0.8, 1.0).unwrap();
    let r = 7.5;
    let g = Arc::new(default_grid(0.0, r, 1.0).unwrap());
    let op = discretize_real(|x, y| b.cosine_transform(x - y), g, "W").unwrap();
    assert!((op.matrix.trace().re - r * b.cosine_transform(0.0)).abs() < 1e-8);
    assert!((&op.matrix - op.matrix.adjoint()).camax() < 1e-12);
}

#[test]
fn composition_rules() {
    let g = Arc::new(build_grid(0.0, 3.0, 3, 8).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m: Vec<CMatrix> = (0..3).map(|_| random_matrix(&mut rng, g.len(), 0.1)).collect();
    let ops: Vec<_> = m.iter().map(|m| DiscretizedOperator::from_matrix(g.clone(), m.clone(), "r").unwrap()).collect();
    let zero = DiscretizedOperator::zero(g.clone());
    assert_eq!(compose(&ops[0], &zero).unwrap().matrix.camax(), 0.0);
    let left = compose(&compose(&ops[0], &ops[1]).unwrap(), &ops[2]).unwrap();
    let right = compose(&ops[0], &compose(&ops[1], &ops[2]).unwrap()).unwrap();
    assert!((left.matrix - right.matrix).camax() < 1e-14);
    let other = Arc::new(build_grid(0.0, 3.0, 4, 6).unwrap());
    assert!(matches!(compose(&ops[0], &DiscretizedOperator::zero(other)), Err(crate::Error::GridMismatch)));
}

#[test]
fn matrix_oracles_fixed_cases() {
    let a = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(2.0), c(4.0)]));
    assert!(jacobi_dodgson_residual(&a, &[true, false]).unwrap() < 1e-15);
    assert_eq!(jacobi_dodgson_residual(&CMatrix::identity(3, 3), &[true, false, true]).unwrap(), 0.0);
    let a = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
    let b = DMatrix::from_row_slice(2, 2, &[c(0.0), c(0.0), c(1.0), c(0.0)]);
    assert!(helton_howe_residual(&a, &b).unwrap() < 1e-14);
    assert!(helton_howe_residual(&a, &a).unwrap() < 1e-15);
}

#[test]
fn matrix_oracles_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let n = rng.gen_range(2..=20);
        let a = CMatrix::identity(n, n) + random_matrix(&mut rng, n, 0.1 / (n as f64).sqrt());
        let keep: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        assert!(jacobi_dodgson_residual(&a, &keep).unwrap() < 1e-10);
        let x = random_matrix(&mut rng, n.min(6), 0.3);
        let y = random_matrix(&mut rng, n.min(6), 0.3);
        assert!(helton_howe_residual(&x, &y).unwrap() < 1e-9);
        let h = random_matrix(&mut rng, n, 0.2);
        let h = (&h + h.adjoint()) * c(0.5);
        assert!(det_eigen_residual(&h) < 1e-10);
    }
}

#[test]
fn mercer_trace_of_smooth_kernel() {
    // K(x,y) = Σ_k φ_k(x)φ_k(y)/k² with φ_k = cos(kx): tr = Σ (π/2 + sin(2kπ)/4k)/k² on [0, π].
    let g = Arc::new(build_grid(0.0, std::f64::consts::PI, 4, 12).unwrap());
    let op =
        discretize_real(|x, y| (1..=5).map(|k| ((k as f64) * x).cos() * ((k as f64) * y).cos() / (k * k) as f64).sum(), g, "m")
            .unwrap();
    let exact: f64 = (1..=5).map(|k| std::f64::consts::FRAC_PI_2 / (k * k) as f64).sum();
    assert!(mercer_trace_residual(&op.matrix, c(exact)) < 1e-12);
}

#[test]
fn determinant_converges_under_refinement() {
    let b = SymbolSpec::gaussian(0.5, 1.0).unwrap();
    let g = default_grid(0.0, 6.0, 1.0).unwrap();
    let det = refined_determinant(|x, y| c(b.cosine_transform(x - y)), &g, 16).unwrap();
    assert!(det.converged(1e-8), "{}", det.convergence_estimate);
}

#[test]
fn truncation_trace_estimate() {
    // K(x,y) = e^{−x²−y²/2} sin(x+y): nuclear norm on [a,b] ≤ ‖K‖ + (b−a)/√2 ‖∂_y K‖_HS.
    let kern = |x: f64, y: f64| (-x * x - 0.5 * y * y).exp() * (x + y).sin();
    let dy = |x: f64, y: f64| (-x * x - 0.5 * y * y).exp() * ((x + y).cos() - y * (x + y).sin());
    let (a, b) = (0.5, 2.5);
    let g = Arc::new(build_grid(0.0, 4.0, 8, 12).unwrap());
    let full = discretize_real(kern, g.clone(), "K").unwrap();
    let masked = full.masked(a, b);
    let lhs = nuclear_norm(&masked.matrix);
    let dk = discretize_real(dy, g, "dK").unwrap().masked(a, b);
    let rhs = full.functionals().op_norm + (b - a) / 2f64.sqrt() * dk.matrix.norm();
    assert!(lhs <= rhs, "{lhs} > {rhs}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn det_perturbation_bound(seed in 0u64..10_000, n in 2usize..15, scale in 0.01f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_matrix(&mut rng, n, scale);
        let det = log_det_identity_plus(&k).exp();
        let nuc = nuclear_norm(&k);
        prop_assert!((det - c(1.0)).norm() <= nuc * nuc.exp() * (1.0 + 1e-12));
    }

    #[test]
    fn log_det_matches_lu_determinant(seed in 0u64..10_000, n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_matrix(&mut rng, n, 0.4);
        let direct = (CMatrix::identity(n, n) + &k).lu().determinant();
        let via_log = log_det_identity_plus(&k).exp();
        prop_assert!((direct - via_log).norm() <= 1e-12 * direct.norm().max(1.0));
    }

    #[test]
    fn prefix_dets_match_principal_minors(seed in 0u64..10_000, n in 1usize..150, block in 1usize..40, real in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut k = random_matrix(&mut rng, n, 0.5 / n as f64);
        if real {
            k.iter_mut().for_each(|v| v.im = 0.0);
        }
        let a = CMatrix::identity(n, n) + &k;
        let prefixes = prefix_log_dets(&a, block);
        prop_assert_eq!(prefixes.len(), n.div_ceil(block));
        for (j, got) in prefixes.iter().enumerate() {
            let m = ((j + 1) * block).min(n);
            let want = log_det(a.view((0, 0), (m, m)).into_owned());
            prop_assert!(((got - want).exp() - c(1.0)).norm() < 1e-12, "m={} {} vs {}", m, got, want);
        }
    }
}

#[test]
fn oracle_suite_is_deterministic_and_small() {
    let a = oracle_suite(3, 20).unwrap();
    assert_eq!(a, oracle_suite(3, 20).unwrap());
    assert!(a.max_residual() < 1e-9, "{a:?}");
    assert_eq!(oracle_suite(3, 0).unwrap().max_residual(), 0.0);
}
