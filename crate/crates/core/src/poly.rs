//! Dense univariate polynomials over `Q`, enough for characteristic
//! polynomials and square-free factorization.

use crate::linalg::Mat;
use crate::scalar::{Scalar, Q};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn one() -> Self {
        Poly(vec![Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    fn lead(&self) -> &Q {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        Poly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_int(i as i64)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = Q::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) - other.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dd = d.degree();
        if r.len() < d.0.len() {
            return (Poly(Vec::new()), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        let l = d.lead();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / l;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }
}

/// `det(tI - A)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &Mat<Q>) -> Poly {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = Mat::<Q>::zeros(n, n);
    let id = Mat::<Q>::identity(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
        m = a.mul(&m).add(&id.scale(&coeffs[n - k + 1]));
        let t = a.mul(&m).trace();
        coeffs[n - k] = -t / Q::from_int(k as i64);
    }
    Poly::new(coeffs)
}

/// Yun's square-free factorization: `(factor, multiplicity)` pairs with
/// `f = lead · Π factor^multiplicity`, factors monic, square-free and coprime.
pub fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_rem(&a0).0;
    let c = fp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let nb = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = c.sub(&nb.derivative());
        if !a.is_constant() {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Multiplicities of the distinct roots (over ℂ), sorted descending.
pub fn multiplicity_profile(f: &Poly) -> Vec<usize> {
    let mut prof: Vec<usize> =
        square_free(f).into_iter().flat_map(|(p, m)| std::iter::repeat_n(m, p.degree())).collect();
    prof.sort_unstable_by(|a, b| b.cmp(a));
    prof
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int_vec, q};

    fn p(c: &[i64]) -> Poly {
        Poly::new(int_vec(c))
    }

    #[test]
    fn char_poly_of_diagonal() {
        let a = Mat::from_rows(&[int_vec(&[2, 0, 0]), int_vec(&[0, 2, 0]), int_vec(&[0, 0, -1])]);
        // (t-2)^2 (t+1) = t^3 - 3t^2 + 4
        assert_eq!(char_poly(&a), p(&[4, 0, -3, 1]));
        assert_eq!(multiplicity_profile(&char_poly(&a)), vec![2, 1]);
    }

    #[test]
    fn yun_on_known_product() {
        // (t-1)^3 (t+2)^2 (t^2+1)
        let f = [p(&[-1, 1]), p(&[-1, 1]), p(&[-1, 1]), p(&[2, 1]), p(&[2, 1]), p(&[1, 0, 1])]
            .iter()
            .fold(Poly::one(), |acc, g| {
                let mut c = vec![q(0); acc.coeffs().len() + g.coeffs().len() - 1];
                for (i, a) in acc.coeffs().iter().enumerate() {
                    for (j, b) in g.coeffs().iter().enumerate() {
                        c[i + j] += a * b;
                    }
                }
                Poly::new(c)
            });
        assert_eq!(multiplicity_profile(&f), vec![3, 2, 1, 1]);
        let sf = square_free(&f);
        assert_eq!(sf.len(), 3);
        assert!(f.eval(&q(1)).is_zero() && f.eval(&q(-2)).is_zero());
    }
}
