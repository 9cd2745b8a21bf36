//! Oracle checks for the symbol space.

use super::*;
use crate::quadrature::{composite, uniform_edges};
use crate::special_functions::BesselOrder;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

fn families() -> Vec<SymbolSpec> {
    vec![
        SymbolSpec::new(Shape::Gaussian, 0.7, 1.3).unwrap(),
        SymbolSpec::new(Shape::ExpDecay, 0.4, 0.8).unwrap(),
        SymbolSpec::new(Shape::SmoothBump, 0.5, 2.0).unwrap(),
        SymbolSpec::new(Shape::Rational(3), 0.6, 1.0).unwrap(),
        SymbolSpec::new(Shape::Rational(5), -0.3, 0.7).unwrap(),
    ]
}

#[test]
fn gaussian_transform_closed_form() {
    let b = SymbolSpec::gaussian(1.0, 1.0).unwrap();
    for &l in &[0.0f64, 0.5, 2.0, 5.0] {
        let want = (-l * l / 4.0).exp() / (2.0 * PI.sqrt());
        assert!((b.cosine_transform(l) - want).abs() < 1e-15);
    }
}

#[test]
fn exp_decay_transform_matches_bessel_k_form() {
    // (1/π)∫ e^{1−√(1+u²)} cos(μu) du = (e/π) K₁(√(1+μ²))/√(1+μ²),
    // K₁(z) = ∫_0^∞ e^{−z cosh t} cosh t dt.
    let k1 = |z: f64| {
        let (t, w) = composite(&uniform_edges(0.0, 6.0, 0.05), 16);
        t.iter().zip(&w).map(|(t, w)| w * (-z * t.cosh()).exp() * t.cosh()).sum::<f64>()
    };
    let b = SymbolSpec::new(Shape::ExpDecay, 1.0, 1.0).unwrap();
    for &mu in &[0.0f64, 0.4, 1.7, 6.0] {
        let r = (1.0 + mu * mu).sqrt();
        let want = 1f64.exp() / PI * k1(r) / r;
        assert!((b.cosine_transform(mu) - want).abs() < 1e-12, "mu={mu}");
    }
}

#[test]
fn transform_at_zero_is_mean() {
    for b in families() {
        let r = b.norms();
        let mean = b.amplitude().signum() * r.l1 / PI;
        assert!((b.cosine_transform(0.0) - mean).abs() < 1e-10 * (1.0 + mean.abs()), "{:?}", b.shape());
    }
}

#[test]
fn parseval_dual_route() {
    for b in families() {
        for (p, w) in [(1, Weight::One), (2, Weight::One), (3, Weight::One), (2, Weight::X), (3, Weight::X2)] {
            let spectral = sobolev_seminorm(&b, p, w).unwrap();
            let physical = sobolev_seminorm_physical(&b, p, w).unwrap();
            assert!((spectral - physical).abs() <= 1e-6 * physical, "{:?} p={p} {w:?}: {spectral} vs {physical}", b.shape());
        }
    }
}

#[test]
fn seminorm_zero_and_homogeneity() {
    let z = SymbolSpec::gaussian(0.0, 1.0).unwrap();
    assert_eq!(sobolev_seminorm(&z, 2, Weight::One).unwrap(), 0.0);
    let r = norms_b(&z).unwrap();
    assert_eq!(r.normb_full, 0.0);
    assert_eq!(r.l_b, 0.0);
    let b = SymbolSpec::gaussian(0.4, 1.0).unwrap();
    let b3 = b.scaled(-3.0).unwrap();
    for p in 1..=3 {
        let a = sobolev_seminorm(&b, p, Weight::One).unwrap();
        let c = sobolev_seminorm(&b3, p, Weight::One).unwrap();
        assert!((c - 3.0 * a).abs() < 1e-14 * c);
    }
}

#[test]
fn norm_report_sums_independent_terms() {
    let b = SymbolSpec::gaussian(1.0, 1.0).unwrap();
    let r = norms_b(&b).unwrap();
    let sum = sobolev_seminorm_physical(&b, 1, Weight::One).unwrap()
        + sobolev_seminorm_physical(&b, 3, Weight::One).unwrap()
        + sobolev_seminorm_physical(&b, 2, Weight::X).unwrap()
        + sobolev_seminorm_physical(&b, 3, Weight::X2).unwrap();
    assert!((r.normb_semi - sum).abs() < 1e-6 * sum);
    assert!((r.l1 - PI.sqrt() / 2.0).abs() < 1e-12);
    assert!((r.xb_linf - (0.5f64).sqrt() * (-0.5f64).exp()).abs() < 1e-8);
    for b in families() {
        let r = b.norms();
        assert!(b.derivs(0.0)[1].abs() <= r.h_seminorms[0] + r.h_seminorms[1]);
    }
}

#[test]
fn pointwise_inequalities() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for b in families() {
        let r = b.norms().clone();
        let b1_0 = b.derivs(0.0)[1].abs();
        // Cauchy-Schwarz yields the unnormalized L2 norms, i.e. √(2π) times the seminorms.
        let h1 = (2.0 * PI).sqrt() * r.h_seminorms[0];
        let h2 = (2.0 * PI).sqrt() * r.h_seminorms[1];
        for _ in 0..1000 {
            let t: f64 = rng.gen_range(1e-4..3.0 * b.extent());
            let d = b.derivs(t);
            assert!(b.centered(t).abs() <= t.sqrt() * h1 * (1.0 + 1e-12));
            assert!(d[1].abs() <= t.sqrt() * (b1_0 + h2) * (1.0 + 1e-12));
            let frac = d[1] / t - b.centered(t) / (t * t);
            assert!(frac.abs() <= h2 / t.sqrt() * (1.0 + 1e-12), "{:?} t={t}", b.shape());
        }
    }
}

#[test]
fn decay_at_grid_edge() {
    for b in families() {
        let e = b.extent();
        let d = b.derivs(e);
        assert!(d[0].abs() < 1e-6 && d[1].abs() < 1e-6 && (e * d[2]).abs() < 1e-6, "{:?}", b.shape());
    }
}

#[test]
fn split_reconstruction_idempotence_conjugacy() {
    for b in families() {
        let pair = wh_split(&b, 40.0 * b.scale(), 1 << 14).unwrap();
        let mut worst = 0.0f64;
        let mut conj = 0.0f64;
        for (j, x) in pair.grid.iter().enumerate() {
            worst = worst.max((pair.b_plus[j] + pair.b_minus[j] - b.value(*x)).norm());
            conj = conj.max((pair.b_minus[j] - pair.b_plus[j].conj()).norm());
        }
        assert!(worst < 1e-8, "{:?} {worst}", b.shape());
        assert!(conj < 1e-10);
        let (pp, pm) = split::project(&pair.b_plus);
        let again = pp.iter().zip(&pair.b_plus).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let cross = pm.iter().map(|v| v.norm()).fold(0.0, f64::max);
        // The zero bin is shared, so P₊ applied twice halves it once more.
        let dc = pair.b_plus.iter().sum::<Complex64>().norm() / pair.grid.len() as f64;
        assert!(again <= 0.5 * dc + 1e-10 && cross <= 0.5 * dc + 1e-10, "{again} {cross} {dc}");
    }
    let short = SymbolSpec::new(Shape::Rational(3), 1.0, 1.0).unwrap();
    assert!(matches!(wh_split(&short, 5.0, 256), Err(crate::Error::AxisTooShort(_))));
}

#[test]
fn szego_constants_gaussian() {
    let b = SymbolSpec::gaussian(1.0, 1.0).unwrap();
    let c = szego_constants(&b, BesselOrder::new(0.7).unwrap());
    assert!((c.c1b - 1.0 / (2.0 * PI.sqrt())).abs() < 1e-14);
    assert!((c.c2b + 0.35).abs() < 1e-15);
    assert!((c.c3b - 1.0 / (8.0 * PI)).abs() < 1e-13);
    // Widom's constant carries no factor ½ (checked against determinants in identity).
    assert_eq!(c.c2s, 2.0 * c.c3b);
    let z = szego_constants(&b.scaled(0.0).unwrap(), BesselOrder::new(0.7).unwrap());
    assert_eq!((z.c1b, z.c2b, z.c3b), (0.0, 0.0, 0.0));
    assert_eq!(szego_constants(&b, BesselOrder::new(0.0).unwrap()).c2b, 0.0);
}

#[test]
fn clt_normalization() {
    let b = SymbolSpec::gaussian(1.0, 1.0).unwrap();
    let n = clt_normalize(&b).unwrap();
    assert!((n.amplitude() - (4.0 * PI).sqrt()).abs() < 1e-10);
    let again = clt_normalize(&n).unwrap();
    assert!((again.amplitude() - n.amplitude()).abs() < 1e-12);
    for f in families() {
        let g = clt_normalize(&f).unwrap();
        let c3 = szego_constants(&g, BesselOrder::new(0.0).unwrap()).c3b;
        assert!((c3 - 0.5).abs() < 1e-10, "{:?}", f.shape());
    }
    assert!(clt_normalize(&b.scaled(0.0).unwrap()).is_err());
}

#[test]
fn exp_norm_bound() {
    let zero = SymbolSpec::gaussian(0.0, 1.0).unwrap();
    assert_eq!(exp_symbol_norm_bound(&zero).unwrap().direct, [0.0; 5]);
    let b = SymbolSpec::gaussian(0.3, 1.0).unwrap();
    let r = exp_symbol_norm_bound(&b).unwrap();
    assert!(r.direct[0] <= r.h1_bound);
    assert!(r.holds);
    let r2 = exp_symbol_norm_bound(&b.scaled(2.0).unwrap()).unwrap();
    assert!(r2.bound >= r.bound);
}

#[test]
fn plus_exponential_second_order_term() {
    let b = SymbolSpec::gaussian(1.0, 1.0).unwrap();
    let z = Complex64::new(1e-3, 0.0);
    let h = PlusExponential::new(&b, z).unwrap();
    for &s in &[0.2, 1.0, 3.0] {
        let (mu, w) = composite(&uniform_edges(0.0, s, 0.05), 16);
        let conv: f64 = mu.iter().zip(&w).map(|(m, w)| w * b.cosine_transform(s - m) * b.cosine_transform(*m)).sum();
        let second = (h.eval(s) - z * b.cosine_transform(s)) / (z * z);
        assert!((second.re - 0.5 * conv).abs() < 1e-3 * conv.abs() + 1e-9, "s={s}: {second} vs {}", 0.5 * conv);
    }
}

#[test]
fn plus_exponential_inverse_identity() {
    // (1 + ĥ_z) * (1 + ĥ_{−z}) = δ  ⇒  h_z + h_{−z} + h_z * h_{−z} = 0.
    let b = SymbolSpec::gaussian(0.6, 1.0).unwrap();
    let hp = PlusExponential::new(&b, Complex64::new(1.0, 0.0)).unwrap();
    let hm = PlusExponential::new(&b, Complex64::new(-1.0, 0.0)).unwrap();
    for &s in &[0.1, 0.9, 2.5, 6.0] {
        let (v, w) = composite(&uniform_edges(0.0, s, 0.1), 20);
        let conv: Complex64 = v.iter().zip(&w).map(|(v, w)| hp.eval(s - v) * hm.eval(*v) * *w).sum();
        let res = hp.eval(s) + hm.eval(s) + conv;
        assert!(res.norm() < 1e-11, "s={s} res={res}");
    }
}
