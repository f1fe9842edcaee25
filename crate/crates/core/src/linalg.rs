//! Dense linear algebra over a [`Field`]: exact Gaussian elimination and an
//! SVD-based numeric kernel for complex doubles.

use nalgebra::DMatrix;

use crate::algebra::field::{Complex64, Field};

/// Reduced row echelon form with pivots at the leftmost possible columns.
/// Returns the nonzero rows and their pivot columns (increasing).
pub fn exact_rref<F: Field>(mut rows: Vec<Vec<F>>) -> (Vec<Vec<F>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for x in rows[r].iter_mut().skip(c) {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Kernel basis in reduced echelon form whose pivots are the smallest column
/// indices: each vector has a 1 at its own free column, zeros at the other
/// free columns and nothing to the left of it.
pub fn exact_kernel<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    // eliminate from the right so every dependency is expressed through
    // columns to the right of the free one
    let reversed: Vec<Vec<F>> = rows
        .iter()
        .map(|r| r.iter().rev().cloned().collect())
        .collect();
    let (red, piv) = exact_rref(reversed);
    let pivot_cols: Vec<usize> = piv.iter().map(|&c| ncols - 1 - c).collect();
    let mut is_pivot = vec![None; ncols];
    for (k, &c) in pivot_cols.iter().enumerate() {
        is_pivot[c] = Some(k);
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut v = vec![F::zero(); ncols];
        v[f] = F::one();
        for (k, &p) in pivot_cols.iter().enumerate() {
            let entry = &red[k][ncols - 1 - f];
            if !entry.is_zero() {
                v[p] = -entry.clone();
            }
        }
        basis.push(v);
    }
    basis
}

pub fn exact_rank<F: Field>(rows: Vec<Vec<F>>) -> usize {
    exact_rref(rows).1.len()
}

/// One solution of `A x = b`, or `None` when inconsistent.
pub fn exact_solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, piv) = exact_rref(aug);
    if piv.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (row, &p) in red.iter().zip(&piv) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

fn to_matrix(rows: &[Vec<Complex64>], ncols: usize) -> DMatrix<Complex64> {
    // pad to at least ncols rows so the SVD returns a full right basis
    let nrows = rows.len().max(ncols).max(1);
    DMatrix::from_fn(nrows, ncols, |i, j| {
        rows.get(i).map_or(Complex64::new(0.0, 0.0), |r| r[j])
    })
}

/// Orthonormal kernel basis: right singular vectors with σ ≤ tol·σ_max
/// (every vector when σ_max = 0).
pub fn numeric_kernel(rows: &[Vec<Complex64>], ncols: usize, tol: f64) -> Vec<Vec<Complex64>> {
    numeric_kernel_scaled(rows, ncols, tol, 0.0)
}

/// As [`numeric_kernel`] with threshold `tol·max(σ_max, scale)`; `scale`
/// guards against treating a matrix of tiny entries as full rank.
pub fn numeric_kernel_scaled(
    rows: &[Vec<Complex64>],
    ncols: usize,
    tol: f64,
    scale: f64,
) -> Vec<Vec<Complex64>> {
    if ncols == 0 {
        return Vec::new();
    }
    let m = to_matrix(rows, ncols);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = tol * sigma_max.max(scale);
    let mut out = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if sigma_max == 0.0 || s <= threshold {
            out.push(v_t.row(k).iter().map(|z| z.conj()).collect());
        }
    }
    out
}

/// Numerical reduced echelon form: column-by-column partial pivoting,
/// skipping columns whose best entry is below `tol` times the largest entry.
pub fn numeric_rref(mut rows: Vec<Vec<Complex64>>, tol: f64) -> (Vec<Vec<Complex64>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let scale = rows
        .iter()
        .flat_map(|r| r.iter().map(|z| z.norm()))
        .fold(0.0, f64::max);
    let mut pivots = Vec::new();
    if scale == 0.0 {
        return (Vec::new(), pivots);
    }
    let cutoff = tol * scale;
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let (p, best) = (r..rows.len())
            .map(|i| (i, rows[i][c].norm()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= cutoff {
            continue;
        }
        rows.swap(r, p);
        let inv = Complex64::new(1.0, 0.0) / rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            if x.norm() <= cutoff {
                *x = Complex64::new(0.0, 0.0);
            }
        }
    }
    (rows, pivots)
}

/// Number of singular values above `tol·σ_max`.
pub fn numeric_rank(rows: &[Vec<Complex64>], ncols: usize, tol: f64) -> usize {
    ncols - numeric_kernel(rows, ncols, tol).len()
}
