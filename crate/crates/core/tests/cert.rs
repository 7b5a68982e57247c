use std::collections::BTreeMap;
use std::path::PathBuf;

use totgeo::catalog::build;
use totgeo::cert::*;
use totgeo::scalar::q;
use totgeo::{triple, Error, Subspace};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn params(k: Option<usize>) -> BTreeMap<String, usize> {
    k.map(|k| ("k".to_string(), k)).into_iter().collect()
}

#[test]
fn corpus_matches_generator() {
    let entries = corpus_entries();
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), entries.len());
    for (id, k) in entries {
        let path = corpus_dir().join(format!("{}.json", file_stem(id, k)));
        let stored = std::fs::read_to_string(&path).unwrap();
        let cert = generate_certificate(id, &params(k)).unwrap();
        assert_eq!(stored, cert.to_json(), "{}", path.display());
        assert_eq!(Certificate::from_json(&stored).unwrap(), cert);
    }
}

#[test]
fn corpus_codimensions() {
    let expect = [
        ("rh4_hyperplane", 1),
        ("ch2_hyperplane", 2),
        ("ch3_hyperplane", 2),
        ("so23_block", 2),
        ("sl3R_centralizer", 2),
        ("so33_block", 3),
        ("so34_block", 3),
        ("so35_block", 3),
        ("g2_sl3", 3),
        ("sl3C_real_form", 3),
        ("sl4R_centralizer", 3),
        ("so23_index2", 2),
        ("so34_index3", 3),
        ("so45_index4", 4),
        ("sl3R_veronese_normal", 2),
        ("sl4R_veronese_normal", 3),
        ("sl5R_veronese_normal", 4),
    ];
    for (stem, codim) in expect {
        let cert = Certificate::load(&corpus_dir().join(format!("{stem}.json"))).unwrap();
        assert_eq!(cert.claims.codim, codim, "{stem}");
        let report = verify_certificate(&cert, &VerifyOptions::default()).unwrap();
        assert!(report.overall, "{stem}\n{report}");
    }
}

#[test]
fn spec_examples() {
    let so34 = generate_certificate("so3k_block", &params(Some(4))).unwrap();
    assert_eq!((so34.space.as_str(), so34.claims.codim), ("so:3,4", 3));
    let v = generate_certificate("slkR_veronese_normal", &params(Some(3))).unwrap();
    assert_eq!((v.space.as_str(), v.claims.codim), ("sl_R:4", 3));
    let c = generate_certificate("sl4R_centralizer", &BTreeMap::new()).unwrap();
    assert_eq!((c.claims.codim, c.claims.abelian_dim), (3, 1));
    let g = generate_certificate("g2_sl3", &BTreeMap::new()).unwrap();
    assert_eq!((g.claims.codim, g.claims.abelian_dim, g.claims.sigma_rank), (3, 0, 2));
}

#[test]
fn g2_certificate_is_an_sl3() {
    let g = generate_certificate("g2_sl3", &BTreeMap::new()).unwrap();
    let m = build(&g.space).unwrap();
    let w = Subspace::span(m.dim_p(), &g.p_vectors(&m).unwrap()).unwrap();
    // [W, W] ⊕ W is 8-dimensional, and the bracket part is so(3).
    assert_eq!(triple::tangent_subalgebra(&m, &w).unwrap().dim(), 8);
    assert_eq!(m.bracket_span(&w).dim(), 3);
}

#[test]
fn with_transversal_records_trials() {
    let cert = Certificate::load(&corpus_dir().join("sl4R_centralizer.json")).unwrap();
    let opts = VerifyOptions { with_transversal: true, ..VerifyOptions::default() };
    let r = verify_certificate(&cert, &opts).unwrap();
    let t = r.check("transversal-flat").unwrap();
    assert_eq!(t.status, Status::Pass);
    assert!(t.detail.contains("trials"));
}

#[test]
fn duplicated_vector_fails_independence() {
    let mut cert = Certificate::load(&corpus_dir().join("rh4_hyperplane.json")).unwrap();
    cert.basis[1] = cert.basis[0].clone();
    let r = verify_certificate(&cert, &VerifyOptions::default()).unwrap();
    assert!(!r.overall);
    assert_eq!(r.checks[0].name, "basis-independent");
    assert_eq!(r.checks[0].status, Status::Fail);
    assert!(r.checks[2..].iter().all(|c| c.status == Status::Skip));
}

#[test]
fn wrong_claims_fail() {
    let mut cert = Certificate::load(&corpus_dir().join("sl3R_centralizer.json")).unwrap();
    cert.claims.codim = 1;
    cert.claims.abelian_dim = 0;
    let r = verify_certificate(&cert, &VerifyOptions::default()).unwrap();
    assert_eq!(r.check("codim").unwrap().status, Status::Fail);
    assert_eq!(r.check("abelian-dim").unwrap().status, Status::Fail);
    assert_eq!(r.check("lts-residual").unwrap().status, Status::Pass);
}

#[test]
fn non_lts_and_k_components_fail() {
    let mut cert = Certificate::load(&corpus_dir().join("sl3R_centralizer.json")).unwrap();
    let mut plane = cert.clone();
    // S12 and H1 + S13 in the adapted basis (k has dimension 3)
    let unit = |i: usize| (0..8).map(|j| q(i64::from(i == j))).collect::<Vec<_>>();
    let mut tilted = unit(3);
    tilted[6] = q(1);
    plane.basis = vec![unit(5), tilted];
    let r = verify_certificate(&plane, &VerifyOptions::default()).unwrap();
    assert_eq!(r.check("basis-in-p").unwrap().status, Status::Pass);
    assert_eq!(r.check("lts-residual").unwrap().status, Status::Fail);
    assert!(!r.overall);
    cert.basis[0][0] = q(1);
    let r = verify_certificate(&cert, &VerifyOptions::default()).unwrap();
    assert_eq!(r.check("basis-in-p").unwrap().status, Status::Fail);
}

#[test]
fn verifier_is_deterministic() {
    let cert = Certificate::load(&corpus_dir().join("so34_block.json")).unwrap();
    let opts = VerifyOptions { with_transversal: true, ..VerifyOptions::default() };
    let a = verify_certificate(&cert, &opts).unwrap();
    let b = verify_certificate(&cert, &opts).unwrap();
    assert_eq!(a.seed, cert.seed());
    assert_eq!(format!("{a}"), format!("{b}"));
}

#[test]
fn errors() {
    assert!(matches!(generate_certificate("nope", &BTreeMap::new()), Err(Error::UnknownPair(_))));
    assert!(matches!(generate_certificate("g2_sl3", &params(Some(2))), Err(Error::UnsupportedParameters(_))));
    assert!(matches!(generate_certificate("so3k_block", &params(Some(9))), Err(Error::UnsupportedParameters(_))));
    assert!(matches!(Certificate::from_json("{\"space\": 1}"), Err(Error::MalformedCertificate(_))));
    let mut cert = generate_certificate("rhk_hyperplane", &BTreeMap::new()).unwrap();
    cert.space = "so:9,9".into();
    assert!(verify_certificate(&cert, &VerifyOptions::default()).is_err());
}
