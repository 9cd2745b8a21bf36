use hardedge::identity::{bo_residual, rate_scan, z_spread};
use hardedge::special_functions::BesselOrder;
use hardedge::symbols::SymbolSpec;

fn gaussian(a: f64) -> SymbolSpec {
    SymbolSpec::gaussian(a, 1.0).unwrap()
}

#[test]
fn identity_holds_at_non_half_order() {
    let b = gaussian(0.3);
    let nu = BesselOrder::new(0.7).unwrap();
    let reports: Vec<_> = [2.0, 5.0, 10.0].iter().map(|&r| bo_residual(&b, nu, r).unwrap()).collect();
    for rep in &reports {
        assert!(rep.rel_residual < 1e-5, "R={}: {}", rep.r, rep.rel_residual);
        assert!(rep.lhs.convergence_estimate < 1e-8, "R={}: {}", rep.r, rep.lhs.convergence_estimate);
    }
    assert!(z_spread(&reports) < 1e-5);
}

#[test]
fn remainder_decays_at_least_like_inverse_root() {
    let scan = rate_scan(&gaussian(0.3), BesselOrder::new(0.0).unwrap(), &[5.0, 10.0, 20.0, 40.0, 80.0]).unwrap();
    eprintln!("{}", scan.to_csv());
    for w in scan.rows.windows(2) {
        assert!(w[1].value < w[0].value, "{:?}", scan.rows);
    }
    assert!(scan.fitted_slope <= -0.45, "slope {}", scan.fitted_slope);
    assert!(scan.dominated(1e-12));
}
