//! Acceptance battery: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::*;
use totgeo::catalog::{build_space, shipped, Family};
use totgeo::cert::{self, Certificate, VerifyOptions};
use totgeo::flats::{self, Flat};
use totgeo::linalg::inertia;
use totgeo::orbits::{self, SliceInput};
use totgeo::scalar::{is_zero_vec, Scalar};
use totgeo::search::{self, Objective, SearchConfig};
use totgeo::{par, triple, Subspace, SymmetricSpaceModel};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_spaces() -> Vec<Family> {
    let mut out: Vec<Family> = (2..=6).map(Family::SlR).collect();
    out.push(Family::SlC(3));
    for s in 3..=9 {
        for p in 1..=s / 2 {
            if (p, s - p) != (2, 2) {
                out.push(Family::So(p, s - p));
            }
        }
    }
    out.extend((1..=4).map(|k| Family::Su(1, k)));
    out.extend([Family::Su(2, 3), Family::SpR(2), Family::Sp(1, 2), Family::G2Split]);
    out
}

fn expected_rank(f: Family) -> usize {
    match f {
        Family::So(p, q) | Family::Su(p, q) | Family::Sp(p, q) => p.min(q),
        Family::SlR(n) => n - 1,
        Family::SlC(_) | Family::G2Split => 2,
        Family::SpR(n) => n,
    }
}

fn corpus() -> Vec<(String, Certificate)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut out: Vec<(String, Certificate)> = std::fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| {
            let path = e.expect("dir entry").path();
            let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
            (stem, Certificate::load(&path).expect("corpus certificate parses"))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn certified_subspace(c: &Certificate) -> (SymmetricSpaceModel, Subspace<totgeo::Q>) {
    let model = totgeo::catalog::build(&c.space).expect("corpus space builds");
    let vs = c.p_vectors(&model).expect("basis lies in p");
    let w = Subspace::from_independent(model.dim_p(), &vs).expect("independent basis");
    (model, w)
}

fn catalog_integrity(models: &mut Vec<(Family, SymmetricSpaceModel)>) -> Outcome {
    let start = Instant::now();
    for f in criterion_spaces() {
        let m = build_space(f).map_err(|e| format!("{f}: {e}"))?;
        ensure(m.algebra().jacobi_residual().is_zero(), || format!("{f}: Jacobi residual nonzero"))?;
        m.cartan().check_inclusions(m.algebra()).map_err(|e| format!("{f}: {e}"))?;
        let n = m.dim_p();
        ensure(inertia(m.p_gram()) == (n, 0, 0), || format!("{f}: inner product on p not definite"))?;
        ensure(inertia(m.k_gram()) == (m.dim_k(), 0, 0), || format!("{f}: inner product on k not definite"))?;
        ensure((n, m.dim_k()) == (f.expected_dim_p(), f.expected_dim_k()), || format!("{f}: dimensions"))?;
        models.push((f, m));
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:.1?}"))?;
    Ok(format!("{} spaces, Jacobi and Cartan checks exact, {t:.1?}", models.len()))
}

fn rank_table(models: &[(Family, SymmetricSpaceModel)]) -> Outcome {
    for (f, m) in models {
        for seed in [1u64, 22, 333] {
            let (r, _) = triple::rank_stable(m, seed).map_err(|e| format!("{f}: {e}"))?;
            ensure(r == expected_rank(*f), || format!("{f}: rank {r}, expected {}", expected_rank(*f)))?;
        }
    }
    Ok(format!("{} spaces, three stability checks of five greedy seeds each agree", models.len()))
}

fn rank_inequality() -> Outcome {
    let mut count = 0;
    for f in shipped() {
        let (n, r) = (f.expected_dim_p(), f.expected_rank());
        if n < 3 {
            continue;
        }
        let m = build_space(f).map_err(|e| e.to_string())?;
        ensure(m.rank() == r, || format!("{f}: rank"))?;
        ensure(2 * r < n, || format!("{f}: 2*{r}+1 > {n}"))?;
        count += 1;
    }
    let sl3 = sl(3);
    ensure(2 * sl3.rank() + 1 == sl3.dim_p(), || "no equality at sl_R(3)".into())?;
    Ok(format!("{count} spaces, equality 5 = 2*2+1 at sl_R:3"))
}

fn corpus_verifies(corpus: &[(String, Certificate)]) -> Outcome {
    let expect: BTreeMap<&str, usize> = [
        ("rh2_hyperplane", 1),
        ("rh3_hyperplane", 1),
        ("rh4_hyperplane", 1),
        ("ch2_hyperplane", 2),
        ("ch3_hyperplane", 2),
        ("so23_block", 2),
        ("so24_block", 2),
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
    ]
    .into_iter()
    .collect();
    ensure(corpus.len() == expect.len(), || format!("{} certificates, expected {}", corpus.len(), expect.len()))?;
    for (stem, c) in corpus {
        let codim = *expect.get(stem.as_str()).ok_or_else(|| format!("unexpected certificate {stem}"))?;
        let report = cert::verify_certificate(c, &VerifyOptions::default()).map_err(|e| format!("{stem}: {e}"))?;
        ensure(report.overall, || format!("{stem}:\n{report}"))?;
        ensure(c.claims.codim == codim, || format!("{stem}: codim {} expected {codim}", c.claims.codim))?;
    }
    Ok(format!("{} certificates verify with exact arithmetic", corpus.len()))
}

fn transversal_witnesses(corpus: &[(String, Certificate)]) -> Outcome {
    let mut trials = Vec::new();
    for (stem, c) in corpus {
        let (m, w) = certified_subspace(c);
        let t = flats::transversal_flat(&m, &w, 1000, c.seed()).map_err(|e| format!("{stem}: {e}"))?;
        ensure(t.flat.subspace.intersection(&w).unwrap().is_zero(), || format!("{stem}: not transversal"))?;
        ensure(t.flat.validate(&m), || format!("{stem}: invalid flat"))?;
        trials.push(t.trials);
    }
    let mean = trials.iter().sum::<usize>() as f64 / trials.len() as f64;
    let max = trials.iter().max().copied().unwrap_or(0);
    Ok(format!("{} pairs, mean trials {mean:.2}, max {max}", trials.len()))
}

fn centralizer_battery(models: &[(Family, SymmetricSpaceModel)]) -> Outcome {
    let mut samples = 0;
    let mut singular = 0;
    let mut equal_j = 0;
    for (f, m) in models {
        let r = m.rank();
        let (a, _) = m.standard_flat();
        let results = par::map_range(200, |i| -> Result<bool, String> {
            let mut rng = par::rng(par::derive_seed(0xC3A7, i as u64));
            let z = loop {
                // Small coefficients in the flat hit root hyperplanes often.
                let z = if i % 2 == 0 { a.random_element(&mut rng, 1) } else { m.random_p(&mut rng, 4) };
                if !is_zero_vec(&z) {
                    break z;
                }
            };
            let c = triple::centralizer(m, &z).map_err(|e| e.to_string())?;
            ensure(triple::is_lts(m, &c).map_err(|e| e.to_string())?, || format!("{f}: C(z) not an LTS"))?;
            let ab = triple::abelian_part(m, &c).map_err(|e| e.to_string())?;
            ensure(ab.contains(&z), || format!("{f}: z outside the abelian part of C(z)"))?;
            let rc = triple::rank_within(m, &c, i as u64).dim();
            ensure(rc == r, || format!("{f}: rank of C(z) is {rc}, expected {r}"))?;
            Ok(c.dim() > r)
        });
        for res in results {
            singular += usize::from(res?);
            samples += 1;
        }
        let roots = flats::restricted_roots(m, &Flat::standard(m)).map_err(|e| format!("{f}: {e}"))?;
        let out = flats::j_battery(m, &roots, 100, 0x7A11);
        ensure(out.violations == 0, || format!("{f}: {} J-signature violations", out.violations))?;
        equal_j += out.equal_j;
    }
    Ok(format!(
        "{samples} vectors ({singular} singular) over {} spaces; {equal_j} equal-J pairs, all with equal centralizers",
        models.len()
    ))
}

fn veronese_battery() -> Outcome {
    let m = sl(3);
    let v = pv(&m, &diag(&[1, 1, -2]));
    let o = orbits::orbit_spaces(&m, &v).map_err(|e| e.to_string())?;
    ensure((o.tangent.dim(), o.normal.dim()) == (2, 3), || format!("dims ({}, {})", o.tangent.dim(), o.normal.dim()))?;
    ensure(triple::is_lts(&m, &o.tangent).unwrap(), || "tangent is not an LTS".into())?;
    ensure(triple::is_lts(&m, &o.normal).unwrap(), || "normal is not an LTS".into())?;
    let ab = triple::abelian_part(&m, &o.normal).unwrap();
    ensure(ab == Subspace::span(5, &[v.clone()]).unwrap(), || "abelian part of the normal is not span{v}".into())?;
    ensure(orbits::symmetric_submanifold_test(&m, &v).unwrap(), || "symmetric test false".into())?;
    ensure(orbits::shape_operator(&m, &v, &v).unwrap().is_minus_identity(), || "A_v != -id".into())?;
    let s = orbits::slice_representation(&m, SliceInput::Lts(&rh2_plane(&m)), 1).map_err(|e| e.to_string())?;
    ensure(s.image_dim == 1, || format!("slice image_dim {}", s.image_dim))?;
    Ok("orbit dims (2,3), tangent and normal LTS, abelian part span{v}, symmetric, A_v = -id, slice image 1".into())
}

fn suborbit_strictness(corpus: &[(String, Certificate)]) -> Outcome {
    let mut total = 0;
    for (stem, c) in corpus {
        let (m, w) = certified_subspace(c);
        let res = par::map_range(50, |i| {
            let mut rng = par::rng(par::derive_seed(c.seed(), i as u64));
            let v = loop {
                let v = w.random_element(&mut rng, 3);
                if !is_zero_vec(&v) {
                    break v;
                }
            };
            orbits::suborbit_dimension_check(&m, &w, &v).map(|r| r.2)
        });
        for r in res {
            ensure(r.map_err(|e| format!("{stem}: {e}"))?, || format!("{stem}: dim[k',v] not below dim[k,v]"))?;
            total += 1;
        }
    }
    Ok(format!("{total} vectors over {} certificate subspaces, all strict", corpus.len()))
}

fn search_calibration() -> Outcome {
    let start = Instant::now();
    let m = sl(3);
    let two = search::lts_search(&m, &SearchConfig { seed: 11, ..SearchConfig::new(2) }).map_err(|e| e.to_string())?;
    ensure(two.accepted, || format!("codim 2 not accepted, best {:.3e}", two.best_residual))?;
    let w = two.refined_exact.as_ref().ok_or("codim 2 refinement failed")?;
    ensure(triple::lts_residual(&m, w).unwrap().0.is_zero(), || "refined subspace is not an LTS".into())?;
    let first = two.first_accepted_restart.unwrap_or(usize::MAX);
    ensure(first <= 50, || "no accepted restart".into())?;
    let cfg = SearchConfig { seed: 12, ..SearchConfig::new(1) };
    let one = search::lts_search(&m, &cfg).map_err(|e| e.to_string())?;
    ensure(one.residuals.len() == 50 && one.best_residual > cfg.tol_reject, || {
        format!("codim 1 minimum residual {:.3e}", one.best_residual)
    })?;
    let probe_cfg = SearchConfig { seed: 13, ..SearchConfig::new(1) };
    let so14 = search::index_probe(&so(1, 4), 3, &probe_cfg).map_err(|e| e.to_string())?;
    ensure(so14.index == Some(1), || format!("so(1,4) probe {:?}", so14.index))?;
    let su12 = build_space(Family::Su(1, 2)).unwrap();
    let su = search::index_probe(&su12, 3, &probe_cfg).map_err(|e| e.to_string())?;
    ensure(su.index == Some(2), || format!("su(1,2) probe {:?}", su.index))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(600), || format!("took {t:.1?}"))?;
    Ok(format!(
        "sl_R:3 codim 2 accepted at restart {first} and refined exactly; codim 1 min residual {:.3e}; probes so:1,4 -> 1, su:1,2 -> 2; {t:.1?}",
        one.best_residual
    ))
}

fn gradient_correctness() -> Outcome {
    let mut worst: f64 = 0.0;
    for f in [Family::SlR(3), Family::So(2, 3)] {
        let m = build_space(f).unwrap();
        let obj = Objective::new(&m);
        let mut rng = par::rng(0x6AD);
        let n = m.dim_p();
        for p in 0..20 {
            // Planes of dimension 1 and hyperplanes of sl_R(3) have constant f.
            let d = 2 + p % (n - 3);
            let v = search::random_frame(n, d, &mut rng);
            let err = search::gradient_check(&obj, &v, 1e-5);
            ensure(err <= 1e-5, || format!("{f}, dim {d}: relative error {err:.2e}"))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("40 points, worst relative error {worst:.2e}"))
}

fn main() {
    let mut models = Vec::new();
    let corpus = corpus();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, outcome: Outcome| {
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail}");
            }
        }
    };
    report(1, "catalog integrity", catalog_integrity(&mut models));
    report(2, "rank table", rank_table(&models));
    report(3, "2 rank + 1 <= dim p", rank_inequality());
    report(4, "certificate corpus", corpus_verifies(&corpus));
    report(5, "transversal flats", transversal_witnesses(&corpus));
    report(6, "centralizer battery", centralizer_battery(&models));
    report(7, "Veronese battery", veronese_battery());
    report(8, "suborbit strictness", suborbit_strictness(&corpus));
    report(9, "search calibration", search_calibration());
    report(10, "gradient correctness", gradient_correctness());
    if failed > 0 {
        std::process::exit(1);
    }
}
