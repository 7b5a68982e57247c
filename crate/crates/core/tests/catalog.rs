use std::time::Instant;

use totgeo::catalog::{self, build_space, catalog_invariants, is_simple, shipped, Family};
use totgeo::scalar::Scalar;
use totgeo::Error;

#[test]
fn all_shipped_spaces_build() {
    for f in shipped() {
        let t = Instant::now();
        let m = build_space(f).unwrap_or_else(|e| panic!("{f}: {e}"));
        assert_eq!(m.dim_p(), f.expected_dim_p());
        assert_eq!(m.rank(), f.expected_rank());
        assert!(m.algebra().jacobi_residual().is_zero());
        eprintln!("{f}: dim g {} built in {:?}", m.dim_g(), t.elapsed());
    }
}

#[test]
fn sl3_invariants() {
    let m = build_space(Family::SlR(3)).unwrap();
    let inv = catalog_invariants(&m);
    assert_eq!((inv.n, inv.r, inv.dim_k), (5, 2, 3));
    assert_eq!(inv.killing_signature, (5, 3, 0));
}

#[test]
fn so33_matches_sl4() {
    let a = catalog_invariants(&build_space(Family::So(3, 3)).unwrap());
    let b = catalog_invariants(&build_space(Family::SlR(4)).unwrap());
    assert_eq!((a.n, a.r), (9, 3));
    assert_eq!((a.n, a.r, a.dim_k, a.killing_signature), (b.n, b.r, b.dim_k, b.killing_signature));
}

#[test]
fn split_g2() {
    let m = catalog::build("g2_split").unwrap();
    assert_eq!((m.dim_g(), m.dim_p(), m.rank()), (14, 8, 2));
    assert!(is_simple(&m));
}

#[test]
fn veronese_dimension_formula() {
    for k in 2..=5 {
        let m = build_space(Family::SlR(k + 1)).unwrap();
        assert_eq!(m.dim_p(), k * (k + 3) / 2);
    }
}

#[test]
fn real_hyperbolic_spaces_have_rank_one() {
    for k in 2..=6 {
        assert_eq!(build_space(Family::So(1, k)).unwrap().rank(), 1);
    }
}

#[test]
fn unknown_specifiers() {
    assert!(matches!(catalog::build("e8"), Err(Error::UnknownSpace(_))));
    assert!(matches!(catalog::build("so:2,2"), Err(Error::UnsupportedParameters(_))));
}
