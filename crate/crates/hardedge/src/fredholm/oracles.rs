//! Matrix-level identity checks used by the self-test suite.

use super::grid::build_grid;
use super::operator::{discretize_real, log_det, CMatrix};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

fn submatrix(a: &CMatrix, idx: &[usize]) -> CMatrix {
    CMatrix::from_fn(idx.len(), idx.len(), |i, j| a[(idx[i], idx[j])])
}

fn det(a: CMatrix) -> Complex64 {
    if a.nrows() == 0 {
        return Complex64::new(1.0, 0.0);
    }
    a.lu().determinant()
}

/// |det(PAP) − det(A)·det(QA⁻¹Q)| with both small determinants taken on the
/// ranges of the coordinate projector `keep` and its complement.
pub fn jacobi_dodgson_residual(a: &CMatrix, keep: &[bool]) -> Result<f64> {
    if !a.is_square() || keep.len() != a.nrows() {
        return Err(Error::GridMismatch);
    }
    let inv = a.clone().lu().try_inverse().ok_or(Error::Singular)?;
    let p: Vec<usize> = (0..keep.len()).filter(|i| keep[*i]).collect();
    let q: Vec<usize> = (0..keep.len()).filter(|i| !keep[*i]).collect();
    let lhs = det(submatrix(a, &p));
    let rhs = det(a.clone()) * det(submatrix(&inv, &q));
    Ok((lhs - rhs).norm())
}

/// |ln det(e^A e^B e^{−A−B}) − ½ tr[A, B]|; both terms vanish in finite dimension.
pub fn helton_howe_residual(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::GridMismatch);
    }
    let prod = a.exp() * b.exp() * (-(a + b)).exp();
    let ld = log_det(prod);
    let comm = (a * b - b * a).trace();
    // Principal branch: the product is a perturbation of the identity.
    let ld = Complex64::new(ld.re, ld.im.sin().atan2(ld.im.cos()));
    Ok((ld - 0.5 * comm).norm())
}

/// |det(I + K) − Π(1 + λ_i)| relative to |det(I + K)|.
pub fn det_eigen_residual(k: &CMatrix) -> f64 {
    let n = k.nrows();
    let d = det(CMatrix::identity(n, n) + k);
    let prod: Complex64 = k.clone().complex_eigenvalues_product();
    (d - prod).norm() / d.norm().max(f64::MIN_POSITIVE)
}

trait EigenProduct {
    fn complex_eigenvalues_product(self) -> Complex64;
}

impl EigenProduct for CMatrix {
    /// Π(1 + λ_i) from the Schur form (eigenvalues on the triangular diagonal).
    fn complex_eigenvalues_product(self) -> Complex64 {
        let schur = nalgebra::Schur::new(self);
        let (_, t) = schur.unpack();
        (0..t.nrows()).map(|i| Complex64::new(1.0, 0.0) + t[(i, i)]).product()
    }
}

/// |tr K − exact| for a discretized kernel whose diagonal integral is known.
pub fn mercer_trace_residual(k: &CMatrix, exact: Complex64) -> f64 {
    (k.trace() - exact).norm()
}

/// Largest residual of each oracle over a batch of random instances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleSuite {
    pub instances: usize,
    pub jacobi_dodgson: f64,
    pub helton_howe: f64,
    pub mercer: f64,
    pub det_eigen: f64,
}

impl OracleSuite {
    pub fn max_residual(&self) -> f64 {
        self.jacobi_dodgson.max(self.helton_howe).max(self.mercer).max(self.det_eigen)
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale)
}

/// Runs every oracle on `instances` random matrices of size 2..=20.
///
/// The Mercer leg discretizes Σ c_k cos(kx)cos(ky) (k ≤ 3) on [0, π] with
/// 20 nodes, whose trace is (π/2)Σc_k.
pub fn oracle_suite(seed: u64, instances: usize) -> Result<OracleSuite> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = OracleSuite { instances, jacobi_dodgson: 0.0, helton_howe: 0.0, mercer: 0.0, det_eigen: 0.0 };
    let grid = Arc::new(build_grid(0.0, PI, 2, 10)?);
    for _ in 0..instances {
        let n = rng.gen_range(2..=20);
        let scale = 0.3 / (n as f64).sqrt();
        let a = CMatrix::identity(n, n) + random_matrix(&mut rng, n, scale);
        let keep: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        s.jacobi_dodgson = s.jacobi_dodgson.max(jacobi_dodgson_residual(&a, &keep)?);
        let x = random_matrix(&mut rng, n, scale);
        let y = random_matrix(&mut rng, n, scale);
        s.helton_howe = s.helton_howe.max(helton_howe_residual(&x, &y)?);
        let c: Vec<f64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let cc = c.clone();
        let kernel = move |x: f64, y: f64| {
            cc.iter().enumerate().map(|(k, ck)| ck * ((k + 1) as f64 * x).cos() * ((k + 1) as f64 * y).cos()).sum()
        };
        let op = discretize_real(kernel, grid.clone(), "mercer")?;
        let exact = Complex64::new(PI / 2.0 * c.iter().sum::<f64>(), 0.0);
        s.mercer = s.mercer.max(mercer_trace_residual(&op.matrix, exact));
        s.det_eigen = s.det_eigen.max(det_eigen_residual(&random_matrix(&mut rng, n, 0.5 / (n as f64).sqrt())));
    }
    Ok(s)
}
