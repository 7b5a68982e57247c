//! Floating-point helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::linalg::Mat;

pub fn to_dmatrix(m: &Mat<f64>) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

pub fn from_dmatrix(m: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Lower-triangular `L` with `gram = L Lᵀ`. Orthonormal coordinates are `y = Lᵀ x`.
pub fn cholesky(gram: &Mat<f64>) -> DMatrix<f64> {
    nalgebra::Cholesky::new(to_dmatrix(gram)).expect("gram matrix is positive definite").l()
}

/// Eigenvalues ascending, eigenvectors as matching columns.
pub fn sym_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

/// Groups sorted values into runs whose neighbours differ by at most `tol`.
pub fn cluster(sorted: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || (sorted[i] - sorted[i - 1]).abs() > tol {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Numerical rank from singular values relative to the largest.
pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Orthonormal basis (columns) of the kernel, by eigenvectors of `MᵀM`;
/// `rel_tol` bounds the eigenvalues of `MᵀM` relative to the largest.
pub fn kernel(m: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let n = m.ncols();
    let mtm = m.transpose() * m;
    let (vals, vecs) = sym_eigen(&mtm);
    let top = vals.iter().cloned().fold(0.0, f64::max).max(1e-300);
    let cols: Vec<DVector<f64>> =
        (0..n).filter(|&i| vals[i] <= rel_tol * top).map(|i| vecs.column(i).into_owned()).collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Orthonormal basis of the column span, by Gram–Schmidt with a drop tolerance.
pub fn orthonormal_span(vectors: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        if let Some(u) = orthonormal_extend(&basis, v, tol) {
            basis.push(u);
        }
    }
    basis
}

/// Normalized component of `v` orthogonal to `basis`, if its norm relative to `|v|` exceeds `tol`.
pub fn orthonormal_extend(basis: &[DVector<f64>], v: &DVector<f64>, tol: f64) -> Option<DVector<f64>> {
    let scale = v.norm();
    if scale == 0.0 {
        return None;
    }
    let mut w = v.clone();
    for _ in 0..2 {
        for b in basis {
            let c = b.dot(&w);
            w -= b * c;
        }
    }
    let n = w.norm();
    (n > tol * scale).then(|| w / n)
}

/// Thin QR: orthonormal columns spanning the columns of `m`.
pub fn qr_q(m: &DMatrix<f64>) -> DMatrix<f64> {
    let qr = m.clone().qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..r.ncols().min(r.nrows()) {
        if r[(j, j)] < 0.0 {
            let mut c = q.column_mut(j);
            c.neg_mut();
        }
    }
    q
}
