//! Dense matrices, reduced echelon forms and canonical subspaces.
//!
//! A [`Subspace`] stores its basis as the rows of a reduced row echelon
//! matrix, so two exact subspaces are equal iff their bases are equal.

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{is_zero_vec, Scalar, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_cols(cols: &[Vec<T>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(b))
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(&self[(i, i)]))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)].sub(&self[(j, i)]).is_zero()))
    }

    /// Row-reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best: Option<usize> = None;
            for i in r..self.rows {
                let x = &self[(i, c)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) if x.better_pivot(&self[(b, c)]) => best = Some(i),
                    _ => {}
                }
            }
            let Some(p) = best else { continue };
            self.swap_rows(r, p);
            let inv = T::one().div(&self[(r, c)]);
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].mul(&inv);
            }
            self[(r, c)] = T::one();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let d = self[(r, j)].mul(&f);
                    if !d.is_zero() {
                        self[(i, j)] = self[(i, j)].sub(&d);
                    }
                }
                self[(i, c)] = T::zero();
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r[(i, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Mat<Q> {
    pub fn to_f64(&self) -> Mat<f64> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::to_f64).collect() }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// A linear subspace of `T^ambient` in canonical (reduced echelon) form.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![T::zero(); ambient];
                v[i] = T::one();
                v
            })
            .collect();
        Self { ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: &[Vec<T>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: v.len() });
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let (m, pivots) = Mat::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Ok(Self { ambient, basis, pivots })
    }

    /// Span of vectors that must be linearly independent.
    pub fn from_independent(ambient: usize, vectors: &[Vec<T>]) -> Result<Self> {
        let s = Self::span(ambient, vectors)?;
        if s.dim() != vectors.len() {
            return Err(Error::DependentBasis);
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The component of `v` left over after eliminating the pivot entries.
    /// Zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let f = r[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = x.sub(&y.mul(&f));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[T]) -> bool {
        v.len() == self.ambient && is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the canonical basis. Assumes `v` is in the span.
    pub fn coords(&self, v: &[T]) -> Vec<T> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn combine(&self, coeffs: &[T]) -> Vec<T> {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = vec![T::zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o = o.add(&c.mul(x));
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let vs: Vec<Vec<T>> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(self.ambient, &vs)
    }

    /// `U ∩ V` through the kernel of `[U^T | -V^T]`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        let (m, n) = (self.dim(), other.dim());
        let a = Mat::from_fn(self.ambient, m + n, |i, j| {
            if j < m {
                self.basis[j][i].clone()
            } else {
                other.basis[j - m][i].neg()
            }
        });
        let vs: Vec<Vec<T>> = a.kernel().iter().map(|k| self.combine(&k[..m])).collect();
        Self::span(self.ambient, &vs)
    }

    /// Complement with respect to the symmetric form `gram` on the ambient space.
    pub fn orthocomplement(&self, gram: &Mat<T>) -> Result<Self> {
        if gram.rows() != self.ambient || gram.cols() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: gram.rows() });
        }
        if gram.rank() < self.ambient {
            return Err(Error::DegenerateForm);
        }
        if self.is_zero() {
            return Ok(Self::full(self.ambient));
        }
        let constraints = Mat::from_rows(&self.basis).mul(gram);
        Self::span(self.ambient, &constraints.kernel())
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R, range: i64) -> Vec<T> {
        let coeffs: Vec<T> = (0..self.dim()).map(|_| T::from_int(rng.random_range(-range..=range))).collect();
        self.combine(&coeffs)
    }

    pub fn basis_matrix(&self) -> Mat<T> {
        if self.basis.is_empty() {
            return Mat::zeros(0, self.ambient);
        }
        Mat::from_rows(&self.basis)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

impl Subspace<Q> {
    pub fn to_f64(&self) -> Subspace<f64> {
        Subspace {
            ambient: self.ambient,
            basis: self.basis.iter().map(|b| b.iter().map(Scalar::to_f64).collect()).collect(),
            pivots: self.pivots.clone(),
        }
    }
}

/// Gram matrix `B G B^T` of the rows of `basis` under `gram`.
pub fn gram_of<T: Scalar>(basis: &[Vec<T>], gram: &Mat<T>) -> Mat<T> {
    let gb: Vec<Vec<T>> = basis.iter().map(|b| gram.mul_vec(b)).collect();
    Mat::from_fn(basis.len(), basis.len(), |i, j| crate::scalar::dot(&basis[i], &gb[j]))
}

/// Inertia `(n+, n-, n0)` of a symmetric matrix by symmetric Gaussian elimination.
pub fn inertia<T: Scalar>(sym: &Mat<T>) -> (usize, usize, usize) {
    let n = sym.rows();
    let mut a = sym.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                // Zero diagonal: fold an off-diagonal entry onto the diagonal.
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                let Some((i, j)) = pair else { break };
                // Row/column operation: e_i <- e_i + e_j.
                for k in 0..n {
                    let v = a[(i, k)].add(&a[(j, k)]);
                    a[(i, k)] = v;
                }
                for k in 0..n {
                    let v = a[(k, i)].add(&a[(k, j)]);
                    a[(k, i)] = v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.to_f64() > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f = a[(i, p)].div(&d);
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = a[(i, j)].sub(&f.mul(&a[(p, j)]));
                a[(i, j)] = v;
            }
        }
    }
    (pos, neg, n - pos - neg)
}
