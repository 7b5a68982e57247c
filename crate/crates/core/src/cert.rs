//! Certificates: exact witnesses that a subspace of `p` is a Lie triple
//! system of a given codimension, hence an upper bound for the index.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{self, build_space, Family};
use crate::error::{Error, Result};
use crate::flats;
use crate::linalg::{Mat, Subspace};
use crate::model::SymmetricSpaceModel;
use crate::scalar::{format_q, parse_q, Scalar, Q};
use crate::triple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub codim: usize,
    pub is_lts: bool,
    pub abelian_dim: usize,
    pub sigma_rank: usize,
    pub index_upper_bound: usize,
}

/// The basis vectors are coordinates in the adapted basis of `g`
/// (the `k` basis first, then the `p` basis).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub space: String,
    #[serde(with = "rational_rows")]
    pub basis: Vec<Vec<Q>>,
    pub claims: Claims,
    pub provenance: String,
}

mod rational_rows {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(format_q).collect()).collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Q>>, D::Error> {
        let text = Vec::<Vec<String>>::deserialize(d)?;
        text.iter()
            .map(|r| r.iter().map(|x| parse_q(x).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

fn enc<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Indented JSON with one basis vector per line and a trailing newline;
    /// the form stored in the corpus.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| enc(&r.iter().map(format_q).collect::<Vec<_>>()).replace(',', ", "))
            .collect();
        let claims = serde_json::to_string_pretty(&self.claims).expect("claims serialize").replace('\n', "\n  ");
        format!(
            "{{\n  \"space\": {},\n  \"basis\": [\n    {}\n  ],\n  \"claims\": {},\n  \"provenance\": {}\n}}\n",
            enc(&self.space),
            rows.join(",\n    "),
            claims,
            enc(&self.provenance)
        )
    }

    /// Seed for the randomized checks, from the SHA-256 of the canonical JSON.
    pub fn seed(&self) -> u64 {
        let digest = Sha256::digest(self.to_json().as_bytes());
        u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
    }

    /// The basis restricted to `p`, if every vector has length `dim g` and no `k` part.
    pub fn p_vectors(&self, model: &SymmetricSpaceModel) -> Option<Vec<Vec<Q>>> {
        let dk = model.dim_k();
        self.basis
            .iter()
            .map(|v| (v.len() == model.dim_g() && v[..dk].iter().all(Scalar::is_zero)).then(|| v[dk..].to_vec()))
            .collect()
    }
}

/// Pair ids accepted by [`generate_certificate`].
pub const PAIR_IDS: &[&str] = &[
    "rhk_hyperplane",
    "chk_hyperplane",
    "so2k_block",
    "sl3R_centralizer",
    "so3k_block",
    "g2_sl3",
    "sl3C_real_form",
    "sl4R_centralizer",
    "sokn_block",
    "slkR_veronese_normal",
];

fn default_k(pair_id: &str) -> Option<usize> {
    match pair_id {
        "rhk_hyperplane" => Some(4),
        "chk_hyperplane" => Some(2),
        "so2k_block" => Some(3),
        "so3k_block" => Some(4),
        "sokn_block" => Some(3),
        "slkR_veronese_normal" => Some(3),
        _ => None,
    }
}

/// Corpus file stem for a pair id and parameter.
pub fn file_stem(pair_id: &str, k: Option<usize>) -> String {
    match (pair_id, k) {
        ("rhk_hyperplane", Some(k)) => format!("rh{k}_hyperplane"),
        ("chk_hyperplane", Some(k)) => format!("ch{k}_hyperplane"),
        ("so2k_block", Some(k)) => format!("so2{k}_block"),
        ("so3k_block", Some(k)) => format!("so3{k}_block"),
        ("sokn_block", Some(k)) => format!("so{k}{}_index{k}", k + 1),
        ("slkR_veronese_normal", Some(k)) => format!("sl{}R_veronese_normal", k + 1),
        (id, _) => id.to_string(),
    }
}

/// The bundled corpus as `(pair_id, k)`.
pub fn corpus_entries() -> Vec<(&'static str, Option<usize>)> {
    let mut out = vec![
        ("rhk_hyperplane", Some(2)),
        ("rhk_hyperplane", Some(3)),
        ("rhk_hyperplane", Some(4)),
        ("chk_hyperplane", Some(2)),
        ("chk_hyperplane", Some(3)),
        ("so2k_block", Some(3)),
        ("so2k_block", Some(4)),
        ("sl3R_centralizer", None),
        ("so3k_block", Some(3)),
        ("so3k_block", Some(4)),
        ("so3k_block", Some(5)),
        ("g2_sl3", None),
        ("sl3C_real_form", None),
        ("sl4R_centralizer", None),
    ];
    for k in 2..=4 {
        out.push(("sokn_block", Some(k)));
        out.push(("slkR_veronese_normal", Some(k)));
    }
    out
}

fn named(model: &SymmetricSpaceModel, names: &[String]) -> Vec<Vec<Q>> {
    names.iter().map(|n| model.p_unit(model.p_index(n).unwrap_or_else(|| panic!("no basis vector {n}")))).collect()
}

/// All `p` basis vectors except those named.
fn all_but(model: &SymmetricSpaceModel, drop: &[String]) -> Vec<Vec<Q>> {
    model
        .p_names()
        .iter()
        .filter(|n| !drop.contains(n))
        .map(|n| model.p_unit(model.p_index(n).expect("own name")))
        .collect()
}

/// Names of the off-diagonal block entries `(a, col)`, with their imaginary
/// partners for the unitary families.
fn cross(rows: std::ops::RangeInclusive<usize>, col: usize, complex: bool) -> Vec<String> {
    let mut out = Vec::new();
    for a in rows {
        out.push(format!("S{a}_{col}"));
        if complex {
            out.push(format!("iA{a}_{col}"));
        }
    }
    out
}

/// Centralizer of `diag(1, …, 1, -k)` in `p` of `sl_R(k+1)`: the upper-left block.
fn upper_block(model: &SymmetricSpaceModel, k: usize) -> Vec<Vec<Q>> {
    let mut names: Vec<String> = (1..=k).map(|i| format!("H{i}")).collect();
    for a in 1..=k {
        for b in a + 1..=k {
            names.push(format!("S{a}_{b}"));
        }
    }
    named(model, &names)
}

fn g2_sl3(model: &SymmetricSpaceModel) -> Vec<Vec<Q>> {
    let images: Vec<Vec<Q>> = (0..model.dim_p())
        .map(|a| catalog::g2::image_of_ell(&model.matrix_of_p(&model.p_unit(a)).expect("g2 has a matrix model")))
        .collect();
    Mat::from_cols(&images, 8).kernel()
}

fn check_k(pair_id: &str, k: usize, range: std::ops::RangeInclusive<usize>) -> Result<()> {
    if range.contains(&k) {
        Ok(())
    } else {
        Err(Error::UnsupportedParameters(format!(
            "{pair_id} needs k in {}..={}, got {k}",
            range.start(),
            range.end()
        )))
    }
}

/// Builds the certificate for a bundled pair. `params` may hold `k`.
pub fn generate_certificate(pair_id: &str, params: &BTreeMap<String, usize>) -> Result<Certificate> {
    if !PAIR_IDS.contains(&pair_id) {
        return Err(Error::UnknownPair(pair_id.to_string()));
    }
    if let Some(key) = params.keys().find(|key| key.as_str() != "k") {
        return Err(Error::UnsupportedParameters(format!("unknown parameter {key:?}")));
    }
    let k = match (default_k(pair_id), params.get("k")) {
        (None, Some(_)) => return Err(Error::UnsupportedParameters(format!("{pair_id} takes no parameters"))),
        (d, given) => given.copied().or(d),
    };
    let kk = k.unwrap_or(0);
    let (family, provenance) = match pair_id {
        "rhk_hyperplane" => {
            check_k(pair_id, kk, 2..=9)?;
            (Family::So(1, kk), format!("totally geodesic RH^{} in RH^{kk}", kk - 1))
        }
        "chk_hyperplane" => {
            check_k(pair_id, kk, 2..=4)?;
            (Family::Su(1, kk), format!("totally geodesic CH^{} in CH^{kk}", kk - 1))
        }
        "so2k_block" => {
            check_k(pair_id, kk, 3..=7)?;
            (Family::So(2, kk), format!("block so(2,{}) in so(2,{kk})", kk - 1))
        }
        "sl3R_centralizer" => (Family::SlR(3), "R x RH^2 in SL3(R)/SO3, centralizer of diag(1,1,-2)".into()),
        "so3k_block" => {
            check_k(pair_id, kk, 3..=6)?;
            (Family::So(3, kk), format!("block so(3,{}) in so(3,{kk})", kk - 1))
        }
        "g2_sl3" => (Family::G2Split, "SL3(R)/SO3 in G2(2)/SO4, stabilizer of a split unit octonion".into()),
        "sl3C_real_form" => (Family::SlC(3), "SL3(R)/SO3 in SL3(C)/SU3, real form".into()),
        "sl4R_centralizer" => (Family::SlR(4), "R x SL3(R)/SO3 in SL4(R)/SO4, centralizer of diag(1,1,1,-3)".into()),
        "sokn_block" => {
            check_k(pair_id, kk, 2..=4)?;
            (Family::So(kk, kk + 1), format!("block so({kk},{kk}) in so({kk},{})", kk + 1))
        }
        "slkR_veronese_normal" => {
            check_k(pair_id, kk, 2..=5)?;
            (
                Family::SlR(kk + 1),
                format!("Veronese normal space R x SL{kk}(R)/SO{kk} in SL{}(R)/SO{}", kk + 1, kk + 1),
            )
        }
        _ => unreachable!("pair id checked above"),
    };
    let model = build_space(family)?;
    let vectors = match pair_id {
        "rhk_hyperplane" => all_but(&model, &[format!("S1_{}", kk + 1)]),
        "chk_hyperplane" => all_but(&model, &cross(1..=1, kk + 1, true)),
        "so2k_block" => all_but(&model, &cross(1..=2, kk + 2, false)),
        "so3k_block" => all_but(&model, &cross(1..=3, kk + 3, false)),
        "sokn_block" => all_but(&model, &cross(1..=kk, 2 * kk + 1, false)),
        "sl3R_centralizer" => upper_block(&model, 2),
        "sl4R_centralizer" => upper_block(&model, 3),
        "slkR_veronese_normal" => upper_block(&model, kk),
        "sl3C_real_form" => named(&model, &["H1", "H2", "S1_2", "S1_3", "S2_3"].map(String::from)),
        "g2_sl3" => g2_sl3(&model),
        _ => unreachable!("pair id checked above"),
    };
    let w = Subspace::from_independent(model.dim_p(), &vectors)?;
    certificate_for(&model, &w, provenance)
}

/// Certificate for a triple system `w` of `model`, with computed claims.
pub fn certificate_for(model: &SymmetricSpaceModel, w: &Subspace<Q>, provenance: String) -> Result<Certificate> {
    let codim = model.dim_p() - w.dim();
    let claims = Claims {
        codim,
        is_lts: triple::is_lts(model, w)?,
        abelian_dim: triple::abelian_part(model, w)?.dim(),
        sigma_rank: triple::sigma_rank(model, w, 0)?,
        index_upper_bound: codim,
    };
    Ok(Certificate {
        space: model.spec().to_string(),
        basis: w.basis().iter().map(|v| model.embed_p(v)).collect(),
        claims,
        provenance,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub space: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl Report {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate for {} (seed {})", self.space, self.seed)?;
        for c in &self.checks {
            writeln!(f, "  {} {:<18} {}", c.status, c.name, c.detail)?;
        }
        write!(f, "overall: {}", if self.overall { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub with_transversal: bool,
    pub seed: Option<u64>,
    pub budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { with_transversal: false, seed: None, budget: 1000 }
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &'static str, ok: bool, detail: String) -> bool {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.0.push(Check { name, status, detail });
        ok
    }

    fn skip(&mut self, name: &'static str, detail: &str) {
        self.0.push(Check { name, status: Status::Skip, detail: detail.to_string() });
    }
}

const EXACT_CHECKS: [&str; 6] = ["lts-residual", "codim", "abelian-dim", "sigma-rank", "index-bound", "transversal-flat"];

/// Runs the checks in order. Errors only for an unresolvable space; every
/// defect of the basis or the claims is a FAIL in the report.
pub fn verify_certificate(cert: &Certificate, opts: &VerifyOptions) -> Result<Report> {
    let model = catalog::build(&cert.space)?;
    let seed = opts.seed.unwrap_or_else(|| cert.seed());
    let mut checks = Checks(Vec::new());
    let n = cert.basis.len();

    let independent = if cert.basis.iter().any(|v| v.len() != model.dim_g()) {
        checks.push("basis-independent", false, format!("vectors must have length dim g = {}", model.dim_g()))
    } else {
        let rank = Mat::from_rows(&cert.basis).rank();
        checks.push("basis-independent", n > 0 && rank == n, format!("{n} vectors, rank {rank}"))
    };
    let in_p = cert.p_vectors(&model);
    let in_p_ok = checks.push(
        "basis-in-p",
        in_p.is_some(),
        if in_p.is_some() { "k components vanish".into() } else { "a vector has a k component".into() },
    );
    let w = match (independent && in_p_ok, in_p) {
        (true, Some(vs)) => Subspace::from_independent(model.dim_p(), &vs).ok(),
        _ => None,
    };
    let Some(w) = w else {
        for name in EXACT_CHECKS {
            checks.skip(name, "needs an independent basis inside p");
        }
        return Ok(finish(cert, seed, checks));
    };

    let (residual, lts) = triple::lts_residual(&model, &w)?;
    let lts_ok = checks.push(
        "lts-residual",
        lts == cert.claims.is_lts,
        format!("residual {residual}, claimed is_lts = {}", cert.claims.is_lts),
    );
    let codim = model.dim_p() - w.dim();
    checks.push("codim", codim == cert.claims.codim, format!("dim p {} - dim W {} = {codim}", model.dim_p(), w.dim()));
    if lts {
        let a = triple::abelian_part(&model, &w)?.dim();
        checks.push("abelian-dim", a == cert.claims.abelian_dim, format!("{a}, claimed {}", cert.claims.abelian_dim));
        let s = triple::sigma_rank(&model, &w, seed)?;
        checks.push("sigma-rank", s == cert.claims.sigma_rank, format!("{s}, claimed {}", cert.claims.sigma_rank));
    } else {
        checks.skip("abelian-dim", "not a Lie triple system");
        checks.skip("sigma-rank", "not a Lie triple system");
    }
    let r = model.rank();
    let bound = cert.claims.index_upper_bound;
    checks.push(
        "index-bound",
        lts_ok && lts && codim <= bound && r <= bound,
        format!("rank {r} <= index <= {bound}, witnessed by codim {codim}"),
    );
    if !opts.with_transversal {
        checks.skip("transversal-flat", "not requested");
    } else if !lts {
        checks.skip("transversal-flat", "not a Lie triple system");
    } else {
        match flats::transversal_flat(&model, &w, opts.budget, seed) {
            Ok(t) => {
                checks.push("transversal-flat", true, format!("found after {} trials", t.trials));
            }
            Err(Error::BudgetExhausted { budget, max_intersection }) => {
                checks.push(
                    "transversal-flat",
                    false,
                    format!("none in {budget} trials, largest intersection {max_intersection}"),
                );
            }
            Err(e) => return Err(e),
        }
    }
    Ok(finish(cert, seed, checks))
}

fn finish(cert: &Certificate, seed: u64, checks: Checks) -> Report {
    let overall = checks.0.iter().all(|c| c.status != Status::Fail);
    Report { space: cert.space.clone(), seed, checks: checks.0, overall }
}

/// Writes the bundled corpus into `dir`; returns the written paths.
pub fn write_corpus(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for (id, k) in corpus_entries() {
        let params: BTreeMap<String, usize> = k.map(|k| ("k".to_string(), k)).into_iter().collect();
        let cert = generate_certificate(id, &params)?;
        let path = dir.join(format!("{}.json", file_stem(id, k)));
        std::fs::write(&path, cert.to_json())?;
        out.push(path);
    }
    Ok(out)
}
