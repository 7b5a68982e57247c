//! Split `g₂` as the derivation algebra of the split octonions.
//!
//! Split octonions are pairs of quaternions with
//! `(a, b)(c, d) = (ac + d̄b, da + bc̄)`. Basis: `1, i, j, k` then
//! `ℓ, ℓi, ℓj, ℓk` where `ℓ = (0, 1)` and `ℓ² = 1`. The norm form has
//! signature (4, 4) and `η = diag(1,1,1,1,-1,-1,-1,-1)` is an automorphism,
//! so conjugation by `η` restricts to a Cartan involution of the derivations;
//! on matrices it equals `D ↦ -Dᵀ`.

use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::scalar::{q, Q};

type Oct = [i64; 8];

fn quat_mul(a: &[i64], b: &[i64]) -> [i64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn quat_conj(a: &[i64]) -> [i64; 4] {
    [a[0], -a[1], -a[2], -a[3]]
}

pub(crate) fn oct_mul(x: &Oct, y: &Oct) -> Oct {
    let (a, b) = x.split_at(4);
    let (c, d) = y.split_at(4);
    let ac = quat_mul(a, c);
    let dbar_b = quat_mul(&quat_conj(d), b);
    let da = quat_mul(d, a);
    let b_cbar = quat_mul(b, &quat_conj(c));
    let mut out = [0; 8];
    for i in 0..4 {
        out[i] = ac[i] + dbar_b[i];
        out[4 + i] = da[i] + b_cbar[i];
    }
    out
}

pub(crate) fn unit(i: usize) -> Oct {
    let mut e = [0; 8];
    e[i] = 1;
    e
}

/// Index of `ℓ = (0, 1)`.
pub const ELL: usize = 4;

/// All derivations, as 8×8 matrices acting on columns.
pub(crate) fn derivations() -> Vec<Mat<Q>> {
    // Unknown d[r][s] at column r*8 + s; D e_s = Σ_r d[r][s] e_r.
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for s in 0..8 {
        for t in 0..8 {
            let prod = oct_mul(&unit(s), &unit(t));
            let mut eqs = vec![vec![0i64; 64]; 8];
            // D(e_s e_t)
            for (u, &c) in prod.iter().enumerate() {
                if c != 0 {
                    for (r, eq) in eqs.iter_mut().enumerate() {
                        eq[r * 8 + u] += c;
                    }
                }
            }
            // - (D e_s) e_t - e_s (D e_t)
            for r in 0..8 {
                let rt = oct_mul(&unit(r), &unit(t));
                let sr = oct_mul(&unit(s), &unit(r));
                for o in 0..8 {
                    eqs[o][r * 8 + s] -= rt[o];
                    eqs[o][r * 8 + t] -= sr[o];
                }
            }
            rows.extend(eqs.into_iter().filter(|e| e.iter().any(|&x| x != 0)).map(|e| e.into_iter().map(q).collect()));
        }
    }
    let system = Mat::from_rows(&rows);
    system.kernel().into_iter().map(|v| Mat::from_fn(8, 8, |r, s| v[r * 8 + s].clone())).collect()
}

/// `(k, p)` bases: antisymmetric and symmetric derivations.
pub(crate) fn basis() -> Result<(Vec<Mat<Q>>, Vec<Mat<Q>>)> {
    let ders = derivations();
    if ders.len() != 14 {
        return Err(Error::Invariant(format!("derivation algebra has dimension {}, expected 14", ders.len())));
    }
    let half = Q::new(1.into(), 2.into());
    let split = |sign: i64| -> Vec<Mat<Q>> {
        let flat: Vec<Vec<Q>> = ders
            .iter()
            .map(|d| {
                let t = d.transpose().scale(&q(sign));
                d.add(&t).scale(&half).as_slice().to_vec()
            })
            .collect();
        let span = Subspace::span(64, &flat).expect("64 entries");
        span.basis().iter().map(|v| Mat::from_fn(8, 8, |r, s| v[r * 8 + s].clone())).collect()
    };
    let k = split(-1);
    let p = split(1);
    if k.len() != 6 || p.len() != 8 {
        return Err(Error::Invariant(format!("g2 split as {} + {}, expected 6 + 8", k.len(), p.len())));
    }
    Ok((k, p))
}

/// `D(ℓ)` for a derivation matrix `D`.
pub fn image_of_ell(d: &Mat<Q>) -> Vec<Q> {
    d.col(ELL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_octonion_identities() {
        let ell = unit(ELL);
        assert_eq!(oct_mul(&ell, &ell), unit(0));
        // i² = -1 and the algebra is alternative on basis pairs.
        assert_eq!(oct_mul(&unit(1), &unit(1)), {
            let mut m = [0; 8];
            m[0] = -1;
            m
        });
        for a in 0..8 {
            for b in 0..8 {
                let x = unit(a);
                let y = unit(b);
                assert_eq!(oct_mul(&oct_mul(&x, &x), &y), oct_mul(&x, &oct_mul(&x, &y)));
            }
        }
    }

    #[test]
    fn derivations_have_dimension_14() {
        let (k, p) = basis().unwrap();
        assert_eq!((k.len(), p.len()), (6, 8));
        // The stabilizer of ℓ is sl₃(ℝ), whose p part has dimension 5.
        let images: Vec<Vec<Q>> = p.iter().map(image_of_ell).collect();
        assert_eq!(8 - Mat::from_cols(&images, 8).rank(), 5);
    }
}
