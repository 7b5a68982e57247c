//! A Lie algebra together with a Cartan involution, expressed in a basis
//! adapted to `g = k ⊕ p`: coordinates `0..dim_k` span `k`, the remaining
//! `dim_p` coordinates span `p`. Vectors "in p" are length-`dim_p` arrays.

use rand::Rng;

use crate::algebra::{LieAlgebra, Sparse};
use crate::cartan::{cartan_decompose, CartanDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{Scalar, Q};

#[derive(Clone, Debug)]
pub struct SymmetricSpaceModel {
    spec: String,
    label: String,
    algebra: LieAlgebra,
    cartan: CartanDecomposition,
    dim_k: usize,
    dim_p: usize,
    k_names: Vec<String>,
    p_names: Vec<String>,
    pp: Vec<Sparse>,
    kp: Vec<Sparse>,
    p_gram: Mat<Q>,
    k_gram: Mat<Q>,
    pp_f64: Vec<Vec<(usize, f64)>>,
    kp_f64: Vec<Vec<(usize, f64)>>,
    p_gram_f64: Mat<f64>,
    k_gram_f64: Mat<f64>,
    flat: Option<(Subspace<Q>, Vec<Q>)>,
}

impl SymmetricSpaceModel {
    /// `theta` must already be `diag(+1 (dim_k times), -1 (dim_p times))`.
    pub fn from_adapted(
        spec: impl Into<String>,
        label: impl Into<String>,
        algebra: LieAlgebra,
        dim_k: usize,
        k_names: Vec<String>,
        p_names: Vec<String>,
    ) -> Result<Self> {
        let d = algebra.dim();
        let theta = Mat::from_fn(d, d, |i, j| match (i == j, i < dim_k) {
            (false, _) => Q::zero(),
            (true, true) => Q::one(),
            (true, false) => Q::from_int(-1),
        });
        let cartan = cartan_decompose(&algebra, &theta)?;
        Self::assemble(spec.into(), label.into(), algebra, cartan, k_names, p_names)
    }

    /// Rebases `algebra` onto eigenvectors of `theta` and builds the model.
    pub fn from_involution(spec: impl Into<String>, label: impl Into<String>, algebra: &LieAlgebra, theta: &Mat<Q>) -> Result<Self> {
        let cd = cartan_decompose(algebra, theta)?;
        let d = algebra.dim();
        let cols: Vec<Vec<Q>> = cd.k_space.basis().iter().chain(cd.p_space.basis()).cloned().collect();
        let change = Mat::from_cols(&cols, d);
        let rebased = algebra.change_basis(&change)?;
        let dk = cd.dim_k();
        let k_names = (0..dk).map(|i| format!("k{i}")).collect();
        let p_names = (0..d - dk).map(|i| format!("p{i}")).collect();
        Self::from_adapted(spec, label, rebased, dk, k_names, p_names)
    }

    fn assemble(
        spec: String,
        label: String,
        algebra: LieAlgebra,
        cartan: CartanDecomposition,
        k_names: Vec<String>,
        p_names: Vec<String>,
    ) -> Result<Self> {
        if !cartan.is_adapted() {
            return Err(Error::Invariant("basis is not adapted to the Cartan decomposition".into()));
        }
        let dim_k = cartan.dim_k();
        let dim_p = cartan.dim_p();
        assert_eq!(k_names.len(), dim_k);
        assert_eq!(p_names.len(), dim_p);
        let d = algebra.dim();
        let mut pp = Vec::with_capacity(dim_p * dim_p);
        for a in 0..dim_p {
            for b in 0..dim_p {
                let s = algebra.basis_bracket(dim_k + a, dim_k + b);
                pp.push(s.iter().map(|(i, c)| (*i, c.clone())).collect::<Sparse>());
            }
        }
        let mut kp = Vec::with_capacity(dim_k * dim_p);
        for i in 0..dim_k {
            for a in 0..dim_p {
                let s = algebra.basis_bracket(i, dim_k + a);
                kp.push(s.iter().map(|(j, c)| (*j - dim_k, c.clone())).collect::<Sparse>());
            }
        }
        let ip = cartan.inner_product.matrix();
        let p_gram = Mat::from_fn(dim_p, dim_p, |a, b| ip[(dim_k + a, dim_k + b)].clone());
        let k_gram = Mat::from_fn(dim_k, dim_k, |a, b| ip[(a, b)].clone());
        debug_assert!((0..dim_k).all(|i| (dim_k..d).all(|j| ip[(i, j)].is_zero())));
        let to_f = |v: &Vec<Sparse>| v.iter().map(|s| s.iter().map(|(i, c)| (*i, c.to_f64())).collect()).collect();
        Ok(Self {
            spec,
            label,
            pp_f64: to_f(&pp),
            kp_f64: to_f(&kp),
            p_gram_f64: p_gram.to_f64(),
            k_gram_f64: k_gram.to_f64(),
            algebra,
            cartan,
            dim_k,
            dim_p,
            k_names,
            p_names,
            pp,
            kp,
            p_gram,
            k_gram,
            flat: None,
        })
    }

    pub(crate) fn set_standard_flat(&mut self, flat: Subspace<Q>, witness: Vec<Q>) {
        self.flat = Some((flat, witness));
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn cartan(&self) -> &CartanDecomposition {
        &self.cartan
    }

    pub fn dim_g(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn dim_p(&self) -> usize {
        self.dim_p
    }

    pub fn k_names(&self) -> &[String] {
        &self.k_names
    }

    pub fn p_names(&self) -> &[String] {
        &self.p_names
    }

    pub fn p_index(&self, name: &str) -> Option<usize> {
        self.p_names.iter().position(|n| n == name)
    }

    /// Rank, from the maximal abelian subspace computed when the model was built.
    pub fn rank(&self) -> usize {
        self.standard_flat().0.dim()
    }

    /// A maximal abelian subspace of `p` and a regular vector spanning its centralizer.
    pub fn standard_flat(&self) -> (&Subspace<Q>, &[Q]) {
        let (f, w) = self.flat.as_ref().expect("model built without a flat");
        (f, w)
    }

    pub fn p_gram(&self) -> &Mat<Q> {
        &self.p_gram
    }

    pub fn k_gram(&self) -> &Mat<Q> {
        &self.k_gram
    }

    pub fn p_gram_f64(&self) -> &Mat<f64> {
        &self.p_gram_f64
    }

    pub fn k_gram_f64(&self) -> &Mat<f64> {
        &self.k_gram_f64
    }

    pub fn p_inner(&self, x: &[Q], y: &[Q]) -> Q {
        crate::scalar::dot(x, &self.p_gram.mul_vec(y))
    }

    pub fn k_inner(&self, x: &[Q], y: &[Q]) -> Q {
        crate::scalar::dot(x, &self.k_gram.mul_vec(y))
    }

    pub fn check_p(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.dim_p {
            return Err(Error::DimensionMismatch { expected: self.dim_p, got: v.len() });
        }
        Ok(())
    }

    pub fn check_p_subspace(&self, w: &Subspace<Q>) -> Result<()> {
        if w.ambient() != self.dim_p {
            return Err(Error::NotInP);
        }
        Ok(())
    }

    /// `[x, y] ∈ k` for `x, y ∈ p`.
    pub fn bracket_pp(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim_k];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() || a == b {
                    continue;
                }
                let s = &self.pp[a * self.dim_p + b];
                if s.is_empty() {
                    continue;
                }
                let f = xa * yb;
                for (i, c) in s {
                    out[*i] += &f * c;
                }
            }
        }
        out
    }

    /// `[X, y] ∈ p` for `X ∈ k`, `y ∈ p`.
    pub fn bracket_kp(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim_p];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (a, ya) in y.iter().enumerate() {
                if ya.is_zero() {
                    continue;
                }
                let s = &self.kp[i * self.dim_p + a];
                if s.is_empty() {
                    continue;
                }
                let f = xi * ya;
                for (b, c) in s {
                    out[*b] += &f * c;
                }
            }
        }
        out
    }

    /// `[[x, y], z]` for `x, y, z ∈ p`.
    pub fn triple(&self, x: &[Q], y: &[Q], z: &[Q]) -> Vec<Q> {
        self.bracket_kp(&self.bracket_pp(x, y), z)
    }

    pub fn bracket_pp_f64(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim_k];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0.0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0.0 {
                    continue;
                }
                for &(i, c) in &self.pp_f64[a * self.dim_p + b] {
                    out[i] += xa * yb * c;
                }
            }
        }
        out
    }

    pub fn bracket_kp_f64(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim_p];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (a, &ya) in y.iter().enumerate() {
                if ya == 0.0 {
                    continue;
                }
                for &(b, c) in &self.kp_f64[i * self.dim_p + a] {
                    out[b] += xi * ya * c;
                }
            }
        }
        out
    }

    /// Matrix of `w ↦ [v, w]` from `p` to `k` (`dim_k × dim_p`).
    pub fn ad_p_to_k(&self, v: &[Q]) -> Mat<Q> {
        let mut m = Mat::zeros(self.dim_k, self.dim_p);
        for (a, va) in v.iter().enumerate() {
            if va.is_zero() {
                continue;
            }
            for b in 0..self.dim_p {
                for (i, c) in &self.pp[a * self.dim_p + b] {
                    m[(*i, b)] += va * c;
                }
            }
        }
        m
    }

    pub fn ad_p_to_k_f64(&self, v: &[f64]) -> Mat<f64> {
        let mut m = Mat::zeros(self.dim_k, self.dim_p);
        for (a, &va) in v.iter().enumerate() {
            if va == 0.0 {
                continue;
            }
            for b in 0..self.dim_p {
                for &(i, c) in &self.pp_f64[a * self.dim_p + b] {
                    m[(i, b)] += va * c;
                }
            }
        }
        m
    }

    /// Matrix of `y ↦ [X, y]` on `p` for `X ∈ k`.
    pub fn ad_k_on_p(&self, x: &[Q]) -> Mat<Q> {
        let mut m = Mat::zeros(self.dim_p, self.dim_p);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for a in 0..self.dim_p {
                for (b, c) in &self.kp[i * self.dim_p + a] {
                    m[(*b, a)] += xi * c;
                }
            }
        }
        m
    }

    pub fn ad_k_on_p_f64(&self, x: &[f64]) -> Mat<f64> {
        let mut m = Mat::zeros(self.dim_p, self.dim_p);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for a in 0..self.dim_p {
                for &(b, c) in &self.kp_f64[i * self.dim_p + a] {
                    m[(b, a)] += xi * c;
                }
            }
        }
        m
    }

    /// Matrix of `X ↦ [X, v]` from `k` to `p` (`dim_p × dim_k`); its image is `T_v(K.v)`.
    pub fn ad_k_to_p(&self, v: &[Q]) -> Mat<Q> {
        let cols: Vec<Vec<Q>> = (0..self.dim_k).map(|i| self.bracket_kp(&self.k_unit(i), v)).collect();
        Mat::from_cols(&cols, self.dim_p)
    }

    pub fn k_unit(&self, i: usize) -> Vec<Q> {
        let mut e = vec![Q::zero(); self.dim_k];
        e[i] = Q::one();
        e
    }

    pub fn p_unit(&self, a: usize) -> Vec<Q> {
        let mut e = vec![Q::zero(); self.dim_p];
        e[a] = Q::one();
        e
    }

    /// Embeds a `p` vector into `g` coordinates.
    pub fn embed_p(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim_k];
        out.extend_from_slice(v);
        out
    }

    pub fn embed_k(&self, x: &[Q]) -> Vec<Q> {
        let mut out = x.to_vec();
        out.resize(self.dim_g(), Q::zero());
        out
    }

    /// Uniform integer coordinates in `[-range, range]`, never the zero vector.
    pub fn random_p<R: Rng>(&self, rng: &mut R, range: i64) -> Vec<Q> {
        loop {
            let v: Vec<Q> = (0..self.dim_p).map(|_| Q::from_int(rng.random_range(-range..=range))).collect();
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }

    /// `[W, W] ⊂ k` for a subspace `W ⊂ p`.
    pub fn bracket_span(&self, w: &Subspace<Q>) -> Subspace<Q> {
        let b = w.basis();
        let mut vs = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let x = self.bracket_pp(&b[i], &b[j]);
                if x.iter().any(|c| !c.is_zero()) {
                    vs.push(x);
                }
            }
        }
        Subspace::span(self.dim_k, &vs).expect("vectors have length dim_k")
    }

    pub fn sparse_pp(&self, a: usize, b: usize) -> &Sparse {
        &self.pp[a * self.dim_p + b]
    }

    /// `p` coordinates of a matrix, for models with a matrix representation.
    pub fn p_from_matrix(&self, m: &Mat<Q>) -> Option<Vec<Q>> {
        let c = self.algebra.rep()?.coords(m)?;
        c[..self.dim_k].iter().all(|x| x.is_zero()).then(|| c[self.dim_k..].to_vec())
    }

    /// Matrix of a `p` vector, for models with a matrix representation.
    pub fn matrix_of_p(&self, v: &[Q]) -> Option<Mat<Q>> {
        Some(self.algebra.rep()?.matrix(&self.embed_p(v)))
    }

    /// Matrix of a `k` vector, for models with a matrix representation.
    pub fn matrix_of_k(&self, x: &[Q]) -> Option<Mat<Q>> {
        Some(self.algebra.rep()?.matrix(&self.embed_k(x)))
    }
}
