//! Finite-dimensional real Lie algebras given by structure constants.

use crate::error::{Error, Result};
use crate::linalg::{inertia, Mat};
use crate::scalar::{is_zero_vec, Scalar, Q};

/// Sparse vector: `(index, coefficient)` pairs with nonzero coefficients.
pub type Sparse = Vec<(usize, Q)>;

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`, stored sparsely per pair.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    label: String,
    dim: usize,
    table: Vec<Sparse>,
    table_f64: Vec<Vec<(usize, f64)>>,
    rep: Option<MatrixRep>,
}

/// A faithful matrix representation, kept for oracle cross-checks.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub size: usize,
    pub basis: Vec<Mat<Q>>,
    // Rows of the flattened basis used to read off coordinates, and the
    // inverse of the corresponding square block.
    probe_rows: Vec<usize>,
    probe_inverse: Mat<Q>,
}

impl MatrixRep {
    /// Requires the basis matrices to be linearly independent.
    pub fn new(basis: Vec<Mat<Q>>) -> Result<Self> {
        let size = basis.first().map_or(0, Mat::rows);
        let d = basis.len();
        let flat = Mat::from_fn(d, size * size, |i, j| basis[i].as_slice()[j].clone());
        let (_, pivots) = flat.rref();
        if pivots.len() != d {
            return Err(Error::DependentBasis);
        }
        let block = Mat::from_fn(d, d, |i, j| basis[j].as_slice()[pivots[i]].clone());
        let probe_inverse = block.inverse()?;
        Ok(Self { size, basis, probe_rows: pivots, probe_inverse })
    }

    /// Coordinates of a matrix known to lie in the span of the basis.
    pub fn coords_unchecked(&self, m: &Mat<Q>) -> Vec<Q> {
        let probe: Vec<Q> = self.probe_rows.iter().map(|&r| m.as_slice()[r].clone()).collect();
        self.probe_inverse.mul_vec(&probe)
    }

    /// Coordinates of `m`, or `None` if it is not in the span.
    pub fn coords(&self, m: &Mat<Q>) -> Option<Vec<Q>> {
        let c = self.coords_unchecked(m);
        (self.matrix(&c) == *m).then_some(c)
    }

    pub fn matrix(&self, coords: &[Q]) -> Mat<Q> {
        let mut out = Mat::zeros(self.size, self.size);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }
}

pub fn commutator(a: &Mat<Q>, b: &Mat<Q>) -> Mat<Q> {
    a.mul(b).sub(&b.mul(a))
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(label: impl Into<String>, dim: usize, table: Vec<Sparse>) -> Result<Self> {
        assert_eq!(table.len(), dim * dim, "table must have dim^2 entries");
        let table_f64 = table.iter().map(|s| s.iter().map(|(k, c)| (*k, c.to_f64())).collect()).collect();
        let alg = Self { label: label.into(), dim, table, table_f64, rep: None };
        alg.check_antisymmetry()?;
        if let Some((i, j, k)) = alg.jacobi_violation() {
            return Err(Error::JacobiFailure(i, j, k));
        }
        Ok(alg)
    }

    /// From a dense rank-3 array `c[i][j][k]`.
    pub fn from_structure_constants(label: impl Into<String>, c: &[Vec<Vec<Q>>]) -> Result<Self> {
        let dim = c.len();
        let mut table = Vec::with_capacity(dim * dim);
        for ci in c {
            if ci.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: ci.len() });
            }
            for cij in ci {
                if cij.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: cij.len() });
                }
                table.push(to_sparse(cij));
            }
        }
        Self::new(label, dim, table)
    }

    /// Structure constants computed from commutators of a matrix basis.
    pub fn from_matrix_basis(label: impl Into<String>, basis: Vec<Mat<Q>>) -> Result<Self> {
        let rep = MatrixRep::new(basis)?;
        let d = rep.basis.len();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let c = commutator(&rep.basis[i], &rep.basis[j]);
                let coords = rep.coords(&c).ok_or_else(|| {
                    Error::Invariant(format!("basis not closed under bracket at ({i}, {j})"))
                })?;
                table.push(to_sparse(&coords));
            }
        }
        let mut alg = Self::new(label, d, table)?;
        alg.rep = Some(rep);
        Ok(alg)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rep(&self) -> Option<&MatrixRep> {
        self.rep.as_ref()
    }

    /// `[e_i, e_j]` in sparse form.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim + j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Q {
        self.basis_bracket(i, j)
            .iter()
            .find(|(idx, _)| *idx == k)
            .map_or_else(Q::zero, |(_, c)| c.clone())
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let s = self.basis_bracket(i, j);
                if s.is_empty() {
                    continue;
                }
                let f = xi * yj;
                for (k, c) in s {
                    out[*k] += &f * c;
                }
            }
        }
        out
    }

    pub fn bracket_f64(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0.0 {
                    continue;
                }
                for &(k, c) in &self.table_f64[i * self.dim + j] {
                    out[k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad x`: column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &[Q]) -> Mat<Q> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.basis_bracket(i, j) {
                    m[(*k, j)] += xi * c;
                }
            }
        }
        m
    }

    pub fn ad_f64(&self, x: &[f64]) -> Mat<f64> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for j in 0..self.dim {
                for &(k, c) in &self.table_f64[i * self.dim + j] {
                    m[(k, j)] += xi * c;
                }
            }
        }
        m
    }

    fn check_antisymmetry(&self) -> Result<()> {
        for i in 0..self.dim {
            if !self.basis_bracket(i, i).is_empty() {
                return Err(Error::NotAntisymmetric(i, i));
            }
            for j in 0..i {
                let a = self.basis_bracket(i, j);
                let b = self.basis_bracket(j, i);
                let sum = add_sparse(a, b);
                if !sum.is_empty() {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(())
    }

    /// First basis triple `i < j < k` on which the Jacobi identity fails.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    if !self.jacobi_zero(i, j, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Largest absolute coefficient of `[[e_i,e_j],e_k] + cyclic` over all basis triples.
    pub fn jacobi_residual(&self) -> Q {
        let d = self.dim;
        let mut worst = Q::zero();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    for c in self.jacobi_sum(i, j, k) {
                        let a = num_traits::Signed::abs(&c);
                        if a > worst {
                            worst = a;
                        }
                    }
                }
            }
        }
        worst
    }

    fn jacobi_sum(&self, i: usize, j: usize, k: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (l, x) in self.basis_bracket(a, b) {
                for (m, y) in self.basis_bracket(*l, c) {
                    out[*m] += x * y;
                }
            }
        }
        out
    }

    fn jacobi_zero(&self, i: usize, j: usize, k: usize) -> bool {
        is_zero_vec(&self.jacobi_sum(i, j, k))
    }

    /// `B(e_i, e_j) = trace(ad e_i ∘ ad e_j)`.
    pub fn killing_form(&self) -> BilinearForm {
        let d = self.dim;
        // ad(e_i)[k][l] = c[i][l][k]
        let ads: Vec<Vec<(usize, usize, Q)>> = (0..d)
            .map(|i| {
                let mut nz = Vec::new();
                for l in 0..d {
                    for (k, c) in self.basis_bracket(i, l) {
                        nz.push((*k, l, c.clone()));
                    }
                }
                nz
            })
            .collect();
        let dense: Vec<Mat<Q>> = (0..d)
            .map(|i| {
                let mut m = Mat::zeros(d, d);
                for (k, l, c) in &ads[i] {
                    m[(*k, *l)] = c.clone();
                }
                m
            })
            .collect();
        let mut b = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..=i {
                let mut t = Q::zero();
                for (k, l, c) in &ads[i] {
                    let o = &dense[j][(*l, *k)];
                    if !o.is_zero() {
                        t += c * o;
                    }
                }
                b[(i, j)] = t.clone();
                b[(j, i)] = t;
            }
        }
        BilinearForm::new(b)
    }

    /// Re-expresses the algebra in the basis given by the columns of `change`.
    pub fn change_basis(&self, change: &Mat<Q>) -> Result<Self> {
        let d = self.dim;
        let inv = change.inverse()?;
        let cols: Vec<Vec<Q>> = (0..d).map(|a| change.col(a)).collect();
        let mut table = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let br = self.bracket_unchecked(&cols[a], &cols[b]);
                table.push(to_sparse(&inv.mul_vec(&br)));
            }
        }
        let mut alg = Self::new(self.label.clone(), d, table)?;
        if let Some(rep) = &self.rep {
            let basis = cols.iter().map(|c| rep.matrix(c)).collect();
            alg.rep = Some(MatrixRep::new(basis)?);
        }
        Ok(alg)
    }

    /// Ideal generated by `x`: closure of `span{x}` under `ad e_i`.
    pub fn ideal_closure(&self, x: &[Q]) -> crate::linalg::Subspace<Q> {
        use crate::linalg::Subspace;
        let mut span = Subspace::span(self.dim, &[x.to_vec()]).expect("dimension checked by caller");
        let mut frontier = span.basis().to_vec();
        while let Some(v) = frontier.pop() {
            for i in 0..self.dim {
                let mut e = vec![Q::zero(); self.dim];
                e[i] = Q::one();
                let w = self.bracket_unchecked(&e, &v);
                if !span.contains(&w) {
                    span = span.sum(&Subspace::span(self.dim, &[w.clone()]).unwrap()).unwrap();
                    frontier.push(w);
                }
            }
            if span.is_full() {
                break;
            }
        }
        span
    }
}

pub(crate) fn to_sparse(v: &[Q]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

fn add_sparse(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out: Sparse = a.clone();
    for (k, c) in b {
        match out.iter_mut().find(|(i, _)| i == k) {
            Some((_, x)) => *x += c,
            None => out.push((*k, c.clone())),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Symmetric bilinear form with cached inertia.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    matrix: Mat<Q>,
    signature: (usize, usize, usize),
}

impl BilinearForm {
    pub fn new(matrix: Mat<Q>) -> Self {
        assert!(matrix.is_symmetric(), "bilinear form must be symmetric");
        let signature = inertia(&matrix);
        Self { matrix, signature }
    }

    pub fn matrix(&self) -> &Mat<Q> {
        &self.matrix
    }

    /// `(n+, n-, n0)`.
    pub fn signature(&self) -> (usize, usize, usize) {
        self.signature
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature.0 == self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn eval(&self, x: &[Q], y: &[Q]) -> Q {
        crate::scalar::dot(x, &self.matrix.mul_vec(y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn e(n: usize, i: usize, j: usize) -> Mat<Q> {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = q(1);
        m
    }

    fn sl2() -> LieAlgebra {
        let h = e(2, 0, 0).sub(&e(2, 1, 1));
        LieAlgebra::from_matrix_basis("sl2", vec![h, e(2, 0, 1), e(2, 1, 0)]).unwrap()
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let g = sl2();
        let x = vec![q(1), q(-2), q(3)];
        let y = vec![q(0), q(5), q(-1)];
        let xy = g.bracket(&x, &y).unwrap();
        let yx = g.bracket(&y, &x).unwrap();
        assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
        assert!(is_zero_vec(&g.bracket(&x, &x).unwrap()));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let g = sl2();
        assert!(matches!(g.bracket(&[q(1)], &[q(1), q(0), q(0)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn sl2_killing_form_of_h_is_eight() {
        // Oracle: trace(ad H ∘ ad H) from the eigenvalues 2, 0, -2 of ad H.
        let b = sl2().killing_form();
        assert_eq!(b.matrix()[(0, 0)], q(8));
        assert_eq!(b.signature(), (2, 1, 0));
    }

    #[test]
    fn abelian_algebra_has_zero_killing_form() {
        let g = LieAlgebra::new("R^3", 3, vec![Vec::new(); 9]).unwrap();
        assert!(g.killing_form().is_zero());
    }

    #[test]
    fn broken_tables_are_rejected() {
        // [e0,e1] = e2 without the matching [e1,e0] = -e2.
        let mut t = vec![Vec::new(); 9];
        t[1] = vec![(2, q(1))];
        assert!(matches!(LieAlgebra::new("bad", 3, t), Err(Error::NotAntisymmetric(1, 0))));

        // Antisymmetric but not Jacobi: [e0,e1]=e1, [e0,e2]=e0... pick a known failing table.
        let mut t = vec![Vec::new(); 9];
        let set = |t: &mut Vec<Sparse>, i: usize, j: usize, v: Sparse| {
            t[i * 3 + j] = v.clone();
            t[j * 3 + i] = v.into_iter().map(|(k, c)| (k, -c)).collect();
        };
        set(&mut t, 0, 1, vec![(2, q(1))]);
        set(&mut t, 1, 2, vec![(1, q(1))]);
        set(&mut t, 0, 2, vec![(2, q(1))]);
        assert!(matches!(LieAlgebra::new("bad", 3, t), Err(Error::JacobiFailure(..))));
    }

    #[test]
    fn change_basis_preserves_brackets() {
        let g = sl2();
        let p = Mat::from_rows(&[vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)], vec![q(0), q(0), q(1)]]);
        let h = g.change_basis(&p).unwrap();
        assert!(h.jacobi_residual().is_zero());
        assert_eq!(h.killing_form().signature(), (2, 1, 0));
        let rep = h.rep().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = commutator(&rep.basis[i], &rep.basis[j]);
                let mut ei = vec![q(0); 3];
                ei[i] = q(1);
                let mut ej = vec![q(0); 3];
                ej[j] = q(1);
                assert_eq!(rep.matrix(&h.bracket(&ei, &ej).unwrap()), lhs);
            }
        }
    }
}
