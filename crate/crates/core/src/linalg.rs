//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

/// Numerical rank of the matrix whose columns are the flattened `items`.
///
/// Singular values below `max(rows, cols) * eps * sigma_max` count as zero.
pub fn numerical_rank(items: &[DMatrix<f64>]) -> usize {
    if items.is_empty() {
        return 0;
    }
    let len = items[0].len();
    let stacked = DMatrix::from_fn(len, items.len(), |r, c| items[c].as_slice()[r]);
    rank_of(&stacked)
}

pub fn rank_of(m: &DMatrix<f64>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    let cutoff = m.nrows().max(m.ncols()) as f64 * f64::EPSILON * smax;
    sv.iter().filter(|s| **s > cutoff).count()
}

/// Orthonormal basis of `{x : sum x_i = 0}` as the columns of an `l x (l-1)`
/// matrix (Helmert contrasts).
pub fn tangent_basis(l: usize) -> DMatrix<f64> {
    let mut q = DMatrix::zeros(l, l.saturating_sub(1));
    for k in 1..l {
        // column k-1: (1, ..., 1, -k, 0, ...) / sqrt(k (k + 1))
        let norm = ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            q[(i, k - 1)] = 1.0 / norm;
        }
        q[(k, k - 1)] = -(k as f64) / norm;
    }
    q
}

/// Eigenvalues of a symmetric matrix in ascending order.
pub fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let sym = (&m + m.transpose()) * 0.5;
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `P_r A P_c`: subtract row and column means, add back the grand mean.
pub fn double_center(a: &DMatrix<f64>) -> DMatrix<f64> {
    let (r, c) = a.shape();
    let row_means: Vec<f64> = (0..r).map(|i| a.row(i).sum() / c as f64).collect();
    let col_means: Vec<f64> = (0..c).map(|j| a.column(j).sum() / r as f64).collect();
    let grand = a.sum() / (r * c) as f64;
    DMatrix::from_fn(r, c, |i, j| a[(i, j)] - row_means[i] - col_means[j] + grand)
}

/// Least-squares projection of `target` onto the span of `generators`
/// via the Gram matrix and a truncated pseudo-inverse.
///
/// Singular values of the Gram matrix below `rel_cutoff * sigma_max` are
/// discarded. Returns the projected vector.
pub fn gram_projection(
    generators: &[DVector<f64>],
    target: &DVector<f64>,
    rel_cutoff: f64,
) -> DVector<f64> {
    let k = generators.len();
    if k == 0 {
        return DVector::zeros(target.len());
    }
    let gram = DMatrix::from_fn(k, k, |i, j| generators[i].dot(&generators[j]));
    let rhs = DVector::from_fn(k, |i, _| generators[i].dot(target));
    let svd = gram.svd(true, true);
    let smax = svd.singular_values.max();
    let eps = rel_cutoff * smax;
    let coef = svd.solve(&rhs, eps).unwrap_or_else(|_| DVector::zeros(k));
    let mut out = DVector::zeros(target.len());
    for (g, c) in generators.iter().zip(coef.iter()) {
        out.axpy(*c, g, 1.0);
    }
    out
}
