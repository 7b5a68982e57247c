mod common;

use common::*;
use totgeo::catalog::{build_space, Family};
use totgeo::search::*;
use totgeo::{par, triple, Error};

#[test]
fn config_validation() {
    let m = sl(3);
    assert!(matches!(lts_search(&m, &SearchConfig::new(5)), Err(Error::InvalidConfig(_))));
    assert!(matches!(lts_search(&m, &SearchConfig::new(0)), Err(Error::InvalidConfig(_))));
    let bad = SearchConfig { tol_accept: 1.0, ..SearchConfig::new(2) };
    assert!(matches!(lts_search(&m, &bad), Err(Error::InvalidConfig(_))));
}

#[test]
fn objective_is_basis_invariant() {
    for f in [Family::SlR(3), Family::So(2, 3), Family::Su(1, 2)] {
        let m = build_space(f).unwrap();
        let obj = Objective::new(&m);
        let mut rng = par::rng(3);
        let n = m.dim_p();
        let v = random_frame(n, n - 2, &mut rng);
        let base = obj.value(&v);
        for _ in 0..10 {
            let rot = random_frame(n - 2, n - 2, &mut rng);
            assert!((obj.value(&(&v * rot)) - base).abs() <= 1e-12 * base.max(1.0));
        }
    }
}

#[test]
fn objective_vanishes_on_triple_systems() {
    let m = sl(3);
    let obj = Objective::new(&m);
    let w = veronese_normal(&m).to_f64();
    let frame = obj.frame_of(w.basis());
    assert!(obj.value(&frame) < 1e-24);
    let plane = rh2_plane(&m).to_f64();
    assert!(obj.value(&obj.frame_of(plane.basis())) < 1e-24);
}

#[test]
fn gradient_matches_finite_differences() {
    for f in [Family::SlR(3), Family::So(2, 3)] {
        let m = build_space(f).unwrap();
        let obj = Objective::new(&m);
        let mut rng = par::rng(17);
        for p in 0..20 {
            // f is constant on lines and, in sl_R(3), on hyperplanes
            let d = 2 + p % (m.dim_p() - 3);
            let v = random_frame(m.dim_p(), d, &mut rng);
            let err = gradient_check(&obj, &v, 1e-5);
            assert!(err <= 1e-5, "{f} d={d}: {err}");
        }
    }
}

#[test]
fn sl3_codim_two_is_found_and_refined() {
    let m = sl(3);
    let r = lts_search(&m, &SearchConfig { seed: 1, ..SearchConfig::new(2) }).unwrap();
    assert!(r.accepted, "{:?}", r.residual_histogram);
    let w = r.refined_exact.expect("exact refinement");
    assert_eq!(w.dim(), 3);
    assert!(triple::lts_residual(&m, &w).unwrap().0 == totgeo::scalar::q(0));
    assert_eq!(triple::abelian_part(&m, &w).unwrap().dim(), 1);
}

#[test]
fn sl3_codim_one_is_rejected() {
    let m = sl(3);
    let cfg = SearchConfig { seed: 2, ..SearchConfig::new(1) };
    let r = lts_search(&m, &cfg).unwrap();
    assert!(!r.accepted);
    assert_eq!(r.residuals.len(), 50);
    assert!(r.best_residual > cfg.tol_reject, "{}", r.best_residual);
}

#[test]
fn index_probes() {
    let cfg = SearchConfig { seed: 5, ..SearchConfig::new(1) };
    let p = index_probe(&so(1, 4), 3, &cfg).unwrap();
    assert_eq!((p.rank, p.index), (1, Some(1)));
    assert!(p.witness().unwrap().refined_exact.is_some());
    let su = build_space(Family::Su(1, 2)).unwrap();
    let p = index_probe(&su, 3, &cfg).unwrap();
    assert_eq!(p.index, Some(2));
    assert!(p.results[0].best_residual > cfg.tol_reject);
}

#[test]
fn rationalization_round_trip() {
    let m = sl(3);
    let w = veronese_normal(&m);
    assert_eq!(rationalize_subspace(&m, &w.to_f64()), Some(w));
}
