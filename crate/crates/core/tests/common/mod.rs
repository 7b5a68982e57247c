#![allow(dead_code)]

use totgeo::catalog::{build_space, Family};
use totgeo::scalar::q;
use totgeo::{Mat, Subspace, SymmetricSpaceModel, Q};

pub fn sl(n: usize) -> SymmetricSpaceModel {
    build_space(Family::SlR(n)).unwrap()
}

pub fn so(p: usize, k: usize) -> SymmetricSpaceModel {
    build_space(Family::So(p, k)).unwrap()
}

pub fn diag(entries: &[i64]) -> Mat<Q> {
    let n = entries.len();
    Mat::from_fn(n, n, |i, j| if i == j { q(entries[i]) } else { q(0) })
}

/// `E_ij + E_ji` (1-based indices).
pub fn sym(n: usize, i: usize, j: usize) -> Mat<Q> {
    Mat::from_fn(n, n, |a, b| if (a + 1, b + 1) == (i, j) || (a + 1, b + 1) == (j, i) { q(1) } else { q(0) })
}

/// p-coordinates of a symmetric traceless matrix.
pub fn pv(model: &SymmetricSpaceModel, m: &Mat<Q>) -> Vec<Q> {
    model.p_from_matrix(m).expect("matrix lies in p")
}

pub fn span(model: &SymmetricSpaceModel, mats: &[Mat<Q>]) -> Subspace<Q> {
    let vs: Vec<Vec<Q>> = mats.iter().map(|m| pv(model, m)).collect();
    Subspace::from_independent(model.dim_p(), &vs).unwrap()
}

/// Tangent plane of the totally geodesic real hyperbolic plane in sl_R(3):
/// traceless symmetric matrices supported on the top-left 2×2 block.
pub fn rh2_plane(model: &SymmetricSpaceModel) -> Subspace<Q> {
    span(model, &[diag(&[1, -1, 0]), sym(3, 1, 2)])
}

/// Tangent space of the Veronese orbit through diag(1,1,-2).
pub fn veronese_tangent(model: &SymmetricSpaceModel) -> Subspace<Q> {
    span(model, &[sym(3, 1, 3), sym(3, 2, 3)])
}

pub fn veronese_normal(model: &SymmetricSpaceModel) -> Subspace<Q> {
    span(model, &[diag(&[1, 1, -2]), diag(&[1, -1, 0]), sym(3, 1, 2)])
}
