//! Log-determinants of all leading principal blocks from one unpivoted
//! blocked LU factorization.

use super::operator::CMatrix;
use nalgebra::{DMatrix, DMatrixViewMut};
use num_complex::Complex64;
use rayon::prelude::*;

/// log det of the leading principal submatrices of sizes block, 2·block, …, n.
///
/// No pivoting: meant for matrices close to the identity whose leading minors
/// are all well away from zero. A vanishing pivot yields −∞ from then on.
pub fn prefix_log_dets(a: &CMatrix, block: usize) -> Vec<Complex64> {
    assert_eq!(a.nrows(), a.ncols(), "square matrix required");
    let im = a.map(|v| v.im);
    let im = if im.iter().all(|v| *v == 0.0) { None } else { Some(im) };
    prefix_log_dets_split(a.map(|v| v.re), im, block)
}

/// [`prefix_log_dets`] on a matrix stored as real and (optional) imaginary parts.
pub fn prefix_log_dets_split(mut re: DMatrix<f64>, im: Option<DMatrix<f64>>, block: usize) -> Vec<Complex64> {
    let n = re.nrows();
    let block = block.max(1);
    let real = im.is_none();
    let mut im = im.unwrap_or_else(|| DMatrix::zeros(0, 0));
    let mut out = Vec::with_capacity(n.div_ceil(block));
    let mut acc = Complex64::default();
    let mut k = 0;
    while k < n {
        let bs = block.min(n - k);
        let at = |re: &DMatrix<f64>, im: &DMatrix<f64>, i: usize, j: usize| {
            Complex64::new(re[(i, j)], if real { 0.0 } else { im[(i, j)] })
        };
        let mut d = CMatrix::from_fn(bs, bs, |i, j| at(&re, &im, k + i, k + j));
        for p in 0..bs {
            let piv = d[(p, p)];
            acc += piv.ln();
            for i in p + 1..bs {
                d[(i, p)] /= piv;
            }
            for j in p + 1..bs {
                let u = d[(p, j)];
                for i in p + 1..bs {
                    let l = d[(i, p)];
                    d[(i, j)] -= l * u;
                }
            }
        }
        out.push(acc);
        let rest = n - k - bs;
        if rest == 0 {
            break;
        }
        let lo = k + bs;
        // U₁₂ = L₁₁⁻¹A₁₂ column by column, L₂₁ = A₂₁U₁₁⁻¹ row by row.
        let u12: Vec<Vec<Complex64>> = (0..rest)
            .into_par_iter()
            .map(|j| {
                let mut col: Vec<Complex64> = (0..bs).map(|i| at(&re, &im, k + i, lo + j)).collect();
                for i in 0..bs {
                    let s = (0..i).fold(col[i], |s, p| s - d[(i, p)] * col[p]);
                    col[i] = s;
                }
                col
            })
            .collect();
        let l21: Vec<Vec<Complex64>> = (0..rest)
            .into_par_iter()
            .map(|i| {
                let mut row: Vec<Complex64> = (0..bs).map(|j| at(&re, &im, lo + i, k + j)).collect();
                for j in 0..bs {
                    let s = (0..j).fold(row[j], |s, p| s - row[p] * d[(p, j)]);
                    row[j] = s / d[(j, j)];
                }
                row
            })
            .collect();
        let lr = DMatrix::from_fn(rest, bs, |i, j| l21[i][j].re);
        let li = DMatrix::from_fn(rest, bs, |i, j| l21[i][j].im);
        let ur = DMatrix::from_fn(bs, rest, |i, j| u12[j][i].re);
        let ui = DMatrix::from_fn(bs, rest, |i, j| u12[j][i].im);
        trailing_update(&mut re, lo, &[(&lr, &ur, -1.0), (&li, &ui, 1.0)], real);
        if !real {
            trailing_update(&mut im, lo, &[(&lr, &ui, -1.0), (&li, &ur, -1.0)], false);
        }
        k = lo;
    }
    out
}

/// A[lo.., lo..] += Σ sign·L·U over column chunks in parallel; with `real_only`
/// the imaginary products (second term) are skipped.
fn trailing_update(a: &mut DMatrix<f64>, lo: usize, terms: &[(&DMatrix<f64>, &DMatrix<f64>, f64)], real_only: bool) {
    let n = a.nrows();
    let rest = n - lo;
    const CHUNK: usize = 64;
    let used = if real_only { &terms[..1] } else { terms };
    a.as_mut_slice()[lo * n..].par_chunks_mut(n * CHUNK).enumerate().for_each(|(c, slab)| {
        let cols = slab.len() / n;
        let mut view = DMatrixViewMut::from_slice(slab, n, cols);
        let mut target = view.rows_mut(lo, rest);
        for (l, u, sign) in used {
            target.gemm(*sign, l, &u.columns(c * CHUNK, cols), 1.0);
        }
    });
}
