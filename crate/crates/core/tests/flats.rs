mod common;

use common::*;
use totgeo::catalog::{build_space, shipped, Family};
use totgeo::flats::*;
use totgeo::scalar::Scalar;
use totgeo::{par, triple, Error, Subspace, Q};

#[test]
fn regularity_in_sl3() {
    let m = sl(3);
    assert!(is_regular(&m, &pv(&m, &diag(&[1, 0, -1]))).unwrap());
    assert!(!is_regular(&m, &pv(&m, &diag(&[1, 1, -2]))).unwrap());
    assert!(!is_regular(&m, &vec![Q::zero(); 5]).unwrap());
}

#[test]
fn random_flats() {
    for seed in 0..5 {
        let f = random_maximal_flat(&sl(3), seed).unwrap();
        assert_eq!(f.dim(), 2);
        assert!(f.validate(&sl(3)));
        assert_eq!(random_maximal_flat(&so(1, 4), seed).unwrap().dim(), 1);
    }
    let m = so(3, 3);
    for seed in 0..50 {
        let f = random_maximal_flat(&m, seed).unwrap();
        assert_eq!(f.dim(), 3);
        assert!(triple::is_abelian(&m, &f.subspace));
    }
}

#[test]
fn root_systems() {
    let cases = [(Family::SlR(3), 6, 3, 6), (Family::So(2, 3), 8, 4, 8), (Family::G2Split, 12, 6, 12)];
    for (f, roots, hyper, weyl) in cases {
        let m = build_space(f).unwrap();
        let rs = restricted_roots(&m, &Flat::standard(&m)).unwrap();
        assert_eq!((rs.roots.len(), rs.hyperplanes.len(), rs.weyl_order), (roots, hyper, weyl), "{f}");
        assert!(rs.roots_come_in_pairs());
    }
    for k in 2..=6 {
        let m = so(1, k);
        let rs = restricted_roots(&m, &Flat::standard(&m)).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert_eq!(rs.roots[0].multiplicity, k - 1);
        assert_eq!((rs.hyperplanes.len(), rs.weyl_order), (1, 2));
    }
}

#[test]
fn multiplicities_sum_to_orbit_dimension() {
    for f in shipped() {
        let m = build_space(f).unwrap();
        let rs = restricted_roots(&m, &Flat::standard(&m)).unwrap();
        assert_eq!(rs.positive_multiplicity(), m.dim_p() - m.rank(), "{f}");
    }
}

#[test]
fn non_abelian_flat_is_rejected() {
    let m = sl(3);
    let bad = Flat { subspace: rh2_plane(&m), regular_witness: pv(&m, &diag(&[1, -1, 0])) };
    assert!(matches!(restricted_roots(&m, &bad), Err(Error::NonSemisimpleAction)));
}

#[test]
fn profile_of_regular_vector() {
    let m = sl(3);
    let z = pv(&m, &diag(&[1, 0, -1]));
    let p = centralizer_profile(&m, &z, 1).unwrap();
    assert!(p.passes(2));
    assert_eq!((p.centralizer_dim, p.euclidean_dim, p.hyperplane_dim), (2, 2, 2));
    assert!(p.j_signature.is_empty());
}

#[test]
fn profile_of_veronese_vector() {
    let m = sl(3);
    let p = centralizer_profile(&m, &pv(&m, &diag(&[1, 1, -2])), 1).unwrap();
    assert!(p.is_lts && p.z_in_abelian_part);
    assert_eq!((p.rank_nz, p.euclidean_dim, p.j_signature.len(), p.hyperplane_dim), (2, 1, 1, 1));
    assert_eq!(p.flats_through_dim, 1);
    assert!(matches!(centralizer_profile(&m, &vec![Q::zero(); 5], 1), Err(Error::ZeroVector)));
}

#[test]
fn j_signature_battery() {
    for f in [Family::SlR(3), Family::SlR(4), Family::So(2, 3), Family::G2Split] {
        let m = build_space(f).unwrap();
        let rs = restricted_roots(&m, &Flat::standard(&m)).unwrap();
        let out = j_battery(&m, &rs, 100, 5);
        assert_eq!(out.violations, 0, "{f}");
        assert!(out.equal_j > 10, "{f}: {out:?}");
    }
}

#[test]
fn transversal_flats() {
    let m = sl(3);
    let w = veronese_normal(&m);
    let t = transversal_flat(&m, &w, 1000, 9).unwrap();
    assert!(t.flat.subspace.intersection(&w).unwrap().is_zero());
    assert!(t.trials <= 3);
    let h = so(1, 3);
    let plane = Subspace::span(3, &[h.p_unit(0), h.p_unit(1)]).unwrap();
    let t = transversal_flat(&h, &plane, 1000, 9).unwrap();
    assert_eq!(t.flat.dim(), 1);
    assert!(t.flat.subspace.intersection(&plane).unwrap().is_zero());
}

#[test]
fn transversal_budget_exhaustion_is_reported() {
    let h = so(1, 3);
    // A single trial can fail; a zero budget always does.
    let plane = Subspace::span(3, &[h.p_unit(0), h.p_unit(1)]).unwrap();
    match transversal_flat(&h, &plane, 0, 1) {
        Err(Error::BudgetExhausted { budget: 0, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn battery_on_singular_vectors() {
    let m = sl(4);
    let (a, _) = m.standard_flat();
    let mut rng = par::rng(4);
    for _ in 0..30 {
        let z = a.random_element(&mut rng, 1);
        if z.iter().all(|x| x.is_zero()) {
            continue;
        }
        let p = centralizer_profile(&m, &z, 2).unwrap();
        assert!(p.passes(3));
        assert_eq!(p.euclidean_dim, p.hyperplane_dim);
    }
}
