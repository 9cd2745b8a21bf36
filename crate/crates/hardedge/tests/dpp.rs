use hardedge::dpp::*;
use hardedge::special_functions::BesselOrder;
use hardedge::symbols::SymbolSpec;

fn order(nu: f64) -> BesselOrder {
    BesselOrder::new(nu).unwrap()
}

#[test]
fn count_moments_match_the_spectrum() {
    let s = restricted_spectrum(order(0.0), 20.0).unwrap();
    let batch = sample_from(&s, 2024, 10_000).unwrap();
    let counts: Vec<f64> = batch.configs.iter().map(|c| c.points.len() as f64).collect();
    let m = batch_means(&counts);
    assert!((m.mean - s.trace()).abs() < 3.0 * m.std_error, "mean {m:?} vs {}", s.trace());
    let mean = m.mean;
    let sq: Vec<f64> = counts.iter().map(|c| (c - mean).powi(2)).collect();
    let v = batch_means(&sq);
    assert!((v.mean - s.count_variance()).abs() < 3.0 * v.std_error, "variance {v:?} vs {}", s.count_variance());
}

#[test]
fn multiplicative_functional_matches_the_determinant() {
    let r = 20.0;
    let smooth_step = |x: f64, edge: f64| 0.5 * (1.0 - ((x - edge) / 0.5).tanh());
    let rep = multiplicative_check(order(0.0), r, |x| -0.5 * smooth_step(x, r / 2.0), 77, 10_000).unwrap();
    assert!(rep.diff < 3.0 * rep.mc.std_error, "{rep:?}");
    // Gap probability: f close to −1 on the whole window.
    let gap = multiplicative_check(order(0.0), 4.0, |x| -0.999 * smooth_step(x, 4.5), 5, 2000).unwrap();
    assert!(gap.det > 0.0 && gap.det < 1.0, "{gap:?}");
    assert!(gap.diff < 3.0 * gap.mc.std_error.max(1e-3), "{gap:?}");
}

#[test]
fn char_fn_and_mean_agree_with_sampling() {
    let b = SymbolSpec::gaussian(0.5, 1.0).unwrap();
    let (o, r, k) = (order(0.0), 10.0, 1.0);
    let batch = sample(o, r * b.extent(), 99, 10_000).unwrap();
    let stats = additive_stats(&batch, &b, r).unwrap();
    let exact = expectation_exact(&b, o, r).unwrap();
    assert!((stats.mean.mean - exact).abs() < 3.0 * stats.mean.std_error, "{:?} vs {exact}", stats.mean);
    let phi = char_fn(&b, o, r, k).unwrap();
    let re = batch_means(&stats.values.iter().map(|s| (k * s).cos()).collect::<Vec<_>>());
    let im = batch_means(&stats.values.iter().map(|s| (k * s).sin()).collect::<Vec<_>>());
    assert!((phi.re - re.mean).abs() < 3.0 * re.std_error, "{phi} vs {re:?}");
    assert!((phi.im - im.mean).abs() < 3.0 * im.std_error, "{phi} vs {im:?}");
}
