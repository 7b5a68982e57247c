//! Cartan involutions and the splitting `g = k ⊕ p`.

use crate::algebra::{BilinearForm, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{Scalar, Q};

#[derive(Clone, Debug)]
pub struct CartanDecomposition {
    pub theta: Mat<Q>,
    pub k_space: Subspace<Q>,
    pub p_space: Subspace<Q>,
    /// `<X, Y> = -B(X, θY)` on all of `g`.
    pub inner_product: BilinearForm,
}

/// Validates `theta` as a Cartan involution of `g` and splits `g` into its
/// `+1` and `-1` eigenspaces. `theta` acts on coordinate columns.
pub fn cartan_decompose(g: &LieAlgebra, theta: &Mat<Q>) -> Result<CartanDecomposition> {
    let d = g.dim();
    if theta.rows() != d || theta.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: theta.rows() });
    }
    if theta.mul(theta) != Mat::identity(d) {
        return Err(Error::NotAnInvolution);
    }
    let images: Vec<Vec<Q>> = (0..d).map(|i| theta.col(i)).collect();
    for i in 0..d {
        for j in i + 1..d {
            let mut ei = vec![Q::zero(); d];
            ei[i] = Q::one();
            let mut ej = vec![Q::zero(); d];
            ej[j] = Q::one();
            let lhs = theta.mul_vec(&g.bracket_unchecked(&ei, &ej));
            let rhs = g.bracket_unchecked(&images[i], &images[j]);
            if lhs != rhs {
                return Err(Error::NotAnAutomorphism(i, j));
            }
        }
    }

    let id = Mat::<Q>::identity(d);
    let k_space = Subspace::span(d, &theta.sub(&id).kernel())?;
    let p_space = Subspace::span(d, &theta.add(&id).kernel())?;

    let b = g.killing_form();
    let form = b.matrix().mul(theta).scale(&Q::from_int(-1));
    let inner_product = BilinearForm::new(form);
    if !inner_product.is_positive_definite() {
        return Err(Error::FormNotPositiveDefinite);
    }

    let cd = CartanDecomposition { theta: theta.clone(), k_space, p_space, inner_product };
    cd.check_inclusions(g)?;
    Ok(cd)
}

impl CartanDecomposition {
    /// `[k,k] ⊂ k`, `[k,p] ⊂ p`, `[p,p] ⊂ k` on basis pairs.
    pub fn check_inclusions(&self, g: &LieAlgebra) -> Result<()> {
        let checks: [(&Subspace<Q>, &Subspace<Q>, &Subspace<Q>, &'static str); 3] = [
            (&self.k_space, &self.k_space, &self.k_space, "[k,k] ⊂ k"),
            (&self.k_space, &self.p_space, &self.p_space, "[k,p] ⊂ p"),
            (&self.p_space, &self.p_space, &self.k_space, "[p,p] ⊂ k"),
        ];
        for (a, b, target, what) in checks {
            for x in a.basis() {
                for y in b.basis() {
                    if !target.contains(&g.bracket_unchecked(x, y)) {
                        return Err(Error::InclusionFailure(what));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim_k(&self) -> usize {
        self.k_space.dim()
    }

    pub fn dim_p(&self) -> usize {
        self.p_space.dim()
    }

    /// True when `theta = diag(+1,…,+1,-1,…,-1)`, i.e. the basis is already
    /// split as `(k, p)`.
    pub fn is_adapted(&self) -> bool {
        let d = self.theta.rows();
        let dk = self.dim_k();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let want = if i != j {
                    Q::zero()
                } else if i < dk {
                    Q::one()
                } else {
                    Q::from_int(-1)
                };
                self.theta[(i, j)] == want
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieAlgebra;
    use crate::scalar::q;

    fn e(n: usize, i: usize, j: usize) -> Mat<Q> {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = q(1);
        m
    }

    #[test]
    fn identity_is_not_a_cartan_involution() {
        let h = e(2, 0, 0).sub(&e(2, 1, 1));
        let g = LieAlgebra::from_matrix_basis("sl2", vec![h, e(2, 0, 1), e(2, 1, 0)]).unwrap();
        let err = cartan_decompose(&g, &Mat::identity(3)).unwrap_err();
        assert!(matches!(err, Error::FormNotPositiveDefinite));
    }

    #[test]
    fn negative_transpose_on_sl2() {
        let h = e(2, 0, 0).sub(&e(2, 1, 1));
        let g = LieAlgebra::from_matrix_basis("sl2", vec![h, e(2, 0, 1), e(2, 1, 0)]).unwrap();
        // θ(H) = -H, θ(E) = -F, θ(F) = -E.
        let theta = Mat::from_rows(&[
            vec![q(-1), q(0), q(0)],
            vec![q(0), q(0), q(-1)],
            vec![q(0), q(-1), q(0)],
        ]);
        let cd = cartan_decompose(&g, &theta).unwrap();
        assert_eq!((cd.dim_k(), cd.dim_p()), (1, 2));
        assert!(!cd.is_adapted());
    }

    #[test]
    fn non_involution_and_non_automorphism() {
        let h = e(2, 0, 0).sub(&e(2, 1, 1));
        let g = LieAlgebra::from_matrix_basis("sl2", vec![h, e(2, 0, 1), e(2, 1, 0)]).unwrap();
        let twice = Mat::identity(3).scale(&q(2));
        assert!(matches!(cartan_decompose(&g, &twice), Err(Error::NotAnInvolution)));
        // Negating only H is an involution but not an automorphism.
        let flip = Mat::from_rows(&[vec![q(-1), q(0), q(0)], vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert!(matches!(cartan_decompose(&g, &flip), Err(Error::NotAnAutomorphism(..))));
    }
}
