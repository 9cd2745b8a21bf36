use super::*;
use crate::fredholm::{discretize, nuclear_norm, QuadratureGrid};
use crate::kernels::Profile;
use crate::special_functions::BesselOrder;
use crate::symbols::{szego_constants, SymbolSpec};
use num_complex::Complex64;
use std::sync::Arc;

fn order(nu: f64) -> BesselOrder {
    BesselOrder::new(nu).unwrap()
}

fn gaussian(a: f64) -> SymbolSpec {
    SymbolSpec::gaussian(a, 1.0).unwrap()
}

#[test]
fn zero_symbol_is_trivial_everywhere() {
    let b = gaussian(0.0);
    assert_eq!(lhs_determinant(&b, order(0.0), 5.0).unwrap().value, Complex64::new(1.0, 0.0));
    for method in [QMethod::Direct, QMethod::Hankel] {
        assert_eq!(q_remainder(&b, order(0.5), 5.0, method).unwrap(), Complex64::new(1.0, 0.0));
    }
    assert_eq!(bo_residual(&b, order(0.7), 3.0).unwrap().rel_residual, 0.0);
    let s = sine_identity_residual(&b, 4.0).unwrap();
    assert_eq!((s.residual, s.widom_residual), (0.0, 0.0));
    let scan = rate_scan(&b, order(0.0), &[5.0, 10.0]).unwrap();
    assert!(scan.degenerate && scan.fitted_slope.is_nan());
    assert!(scan.rows.iter().all(|r| r.value == 0.0));
    let scan = trace_decay_scan(&b, order(0.0), &[4.0, 8.0]).unwrap();
    assert!(scan.rows.iter().all(|r| r.value == 0.0 && r.bound == 0.0));
}

#[test]
fn vanishing_interval_gives_unit_determinant() {
    let d = lhs_determinant(&gaussian(0.6), order(0.0), 1e-6).unwrap();
    assert!((d.value - 1.0).norm() < 1e-6);
}

#[test]
fn hankel_route_rejects_other_orders() {
    assert!(q_remainder(&gaussian(0.3), order(0.0), 5.0, QMethod::Hankel).is_err());
}

#[test]
fn direct_and_hankel_routes_agree_at_half_orders() {
    for nu in [0.5, -0.5] {
        let b = gaussian(0.3);
        let d = q_remainder(&b, order(nu), 5.0, QMethod::Direct).unwrap();
        let h = q_remainder(&b, order(nu), 5.0, QMethod::Hankel).unwrap();
        assert!((d / h - 1.0).norm() < 1e-6, "nu={nu}: {d} vs {h}");
    }
}

#[test]
fn identity_and_z_constancy_at_half_order() {
    let b = gaussian(0.3);
    let reports: Vec<_> = [2.0, 5.0, 10.0].iter().map(|&r| bo_residual(&b, order(0.5), r).unwrap()).collect();
    for rep in &reports {
        assert!(rep.rel_residual < 1e-5, "R={}: {}", rep.r, rep.rel_residual);
        assert!(rep.lhs.convergence_estimate < 1e-8);
    }
    assert!(z_spread(&reports) < 1e-5);
    // Z equals exp(c₂ + c₃) by the identity itself.
    let c = szego_constants(&b, order(0.5));
    assert!((reports[0].z_constant / (c.c2b + c.c3b).exp() - 1.0).norm() < 1e-5);
}

#[test]
fn remainder_tends_to_one() {
    // The half-order Hankel kernel decays like a Gaussian in x + y, so small R.
    let b = gaussian(0.3);
    let mut last = f64::INFINITY;
    for r in [1.0, 2.0, 3.0, 4.0] {
        let d = (q_remainder(&b, order(-0.5), r, QMethod::Hankel).unwrap() - 1.0).norm();
        assert!(d > 0.0 && d < last, "R={r}: {d} vs {last}");
        last = d;
    }
}

#[test]
fn scan_csv_layout() {
    let scan = trace_decay_scan(&gaussian(0.3), order(0.5), &[4.0, 8.0, 16.0]).unwrap();
    let csv = scan.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "R,value,bound,slope_running");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with(','));
    let fields: Vec<&str> = lines[3].split(',').collect();
    let slope: f64 = fields[3].parse().unwrap();
    assert!((slope - scan.fitted_slope).abs() < 1e-12);
    assert_eq!(fields[0].parse::<f64>().unwrap(), 16.0);
}

#[test]
fn trace_scan_at_half_order_is_the_hankel_tail() {
    let b = gaussian(0.3);
    let p = Profile::exp_minus_one(&b, Complex64::new(-1.0, 0.0));
    for r in [4.0, 16.0] {
        let l = trace_window(r);
        let grid = Arc::new(QuadratureGrid::from_edges(&crate::quadrature::uniform_edges(r, r + l, 1.0), 12).unwrap());
        // Pointwise cosine transform of e^{−b} − 1, independent of the factorized matrices.
        let h = discretize(|x, y| p.cosine_transform(x + y), grid, "hankel").unwrap();
        let want = nuclear_norm(&h.matrix);
        let got = truncated_trace_norm(&b, order(0.5), r, l).unwrap();
        assert!((got - want).abs() < 1e-7, "R={r}: {got} vs {want}");
    }
}

#[test]
fn trace_norm_decays_like_inverse_root() {
    let scan = trace_decay_scan(&gaussian(0.3), order(0.7), &[4.0, 8.0, 16.0, 32.0, 64.0]).unwrap();
    assert!(scan.fitted_slope <= -0.45, "slope {}", scan.fitted_slope);
    assert!(scan.dominated(1e-12), "{:?}", scan.rows);
}

#[test]
fn sine_identity_for_gaussian() {
    let s = sine_identity_residual(&gaussian(0.3), 10.0).unwrap();
    assert!(s.residual < 1e-5 && s.widom_residual < 1e-5, "{s:?}");
}
