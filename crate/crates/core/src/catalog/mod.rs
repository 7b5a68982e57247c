//! Concrete symmetric spaces of noncompact type.
//!
//! Specifiers: `sl_R:n`, `sl_C:n`, `so:p,q`, `su:p,q`, `sp_R:n`, `sp:p,q`,
//! `g2_split`.

mod classical;
pub mod g2;

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::model::SymmetricSpaceModel;
use crate::numeric;
use crate::scalar::{q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    SlR(usize),
    SlC(usize),
    So(usize, usize),
    Su(usize, usize),
    SpR(usize),
    Sp(usize, usize),
    G2Split,
}

impl Family {
    pub fn expected_dim_p(&self) -> usize {
        match *self {
            Family::SlR(n) => n * (n + 1) / 2 - 1,
            Family::SlC(n) => n * n - 1,
            Family::So(p, q) => p * q,
            Family::Su(p, q) => 2 * p * q,
            Family::SpR(n) => n * (n + 1),
            Family::Sp(p, q) => 4 * p * q,
            Family::G2Split => 8,
        }
    }

    pub fn expected_rank(&self) -> usize {
        match *self {
            Family::SlR(n) | Family::SlC(n) => n - 1,
            Family::So(p, q) | Family::Su(p, q) | Family::Sp(p, q) => p.min(q),
            Family::SpR(n) => n,
            Family::G2Split => 2,
        }
    }

    pub fn expected_dim_k(&self) -> usize {
        match *self {
            Family::SlR(n) => n * (n - 1) / 2,
            Family::SlC(n) => n * n - 1,
            Family::So(p, q) => p * (p - 1) / 2 + q * (q - 1) / 2,
            Family::Su(p, q) => p * p + q * q - 1,
            Family::SpR(n) => n * n,
            Family::Sp(p, q) => p * (2 * p + 1) + q * (2 * q + 1),
            Family::G2Split => 6,
        }
    }

    /// Rejects parameters outside the supported (and simple) range.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::UnsupportedParameters(format!("{self}: {why}")));
        match *self {
            Family::SlR(n) if !(2..=7).contains(&n) => bad("need 2 ≤ n ≤ 7"),
            Family::SlC(n) if !(2..=4).contains(&n) => bad("need 2 ≤ n ≤ 4"),
            Family::So(p, q) if p == 0 || q == 0 || p + q < 3 || p + q > 10 => bad("need p, q ≥ 1 and 3 ≤ p+q ≤ 10"),
            Family::So(2, 2) => bad("so(2,2) is not simple"),
            Family::Su(p, q) if p == 0 || q == 0 || p + q > 6 => bad("need p, q ≥ 1 and p+q ≤ 6"),
            Family::SpR(n) if !(1..=4).contains(&n) => bad("need 1 ≤ n ≤ 4"),
            Family::Sp(p, q) if p == 0 || q == 0 || p + q > 4 => bad("need p, q ≥ 1 and p+q ≤ 4"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::SlR(n) => write!(f, "sl_R:{n}"),
            Family::SlC(n) => write!(f, "sl_C:{n}"),
            Family::So(p, q) => write!(f, "so:{p},{q}"),
            Family::Su(p, q) => write!(f, "su:{p},{q}"),
            Family::SpR(n) => write!(f, "sp_R:{n}"),
            Family::Sp(p, q) => write!(f, "sp:{p},{q}"),
            Family::G2Split => write!(f, "g2_split"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSpace(s.to_string());
        if s == "g2_split" {
            return Ok(Family::G2Split);
        }
        let (token, rest) = s.split_once(':').ok_or_else(unknown)?;
        let params: Vec<usize> = rest
            .split(',')
            .map(|p| {
                if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(unknown());
                }
                p.parse::<usize>().map_err(|_| unknown())
            })
            .collect::<Result<_>>()?;
        match (token, params.as_slice()) {
            ("sl_R", &[n]) => Ok(Family::SlR(n)),
            ("sl_C", &[n]) => Ok(Family::SlC(n)),
            ("sp_R", &[n]) => Ok(Family::SpR(n)),
            ("so", &[p, q]) => Ok(Family::So(p, q)),
            ("su", &[p, q]) => Ok(Family::Su(p, q)),
            ("sp", &[p, q]) => Ok(Family::Sp(p, q)),
            _ => Err(unknown()),
        }
    }
}

/// Parses a specifier and builds the model.
pub fn build(spec: &str) -> Result<SymmetricSpaceModel> {
    build_space(spec.parse()?)
}

/// Builds and validates a model: Jacobi identity, Cartan involution,
/// dimensions, rank and simplicity are all checked before returning.
pub fn build_space(family: Family) -> Result<SymmetricSpaceModel> {
    family.validate()?;
    let (k, p) = match family {
        Family::SlR(n) => classical::sl_r(n),
        Family::SlC(n) => classical::sl_c(n),
        Family::So(a, b) => classical::indefinite(a, b, 1),
        Family::Su(a, b) => classical::indefinite(a, b, 2),
        Family::Sp(a, b) => classical::indefinite(a, b, 4),
        Family::SpR(n) => classical::sp_r(n),
        Family::G2Split => {
            let (k, p) = g2::basis()?;
            let name = |pre: &str, v: Vec<Mat<Q>>| v.into_iter().enumerate().map(|(i, m)| (format!("{pre}{i}"), m)).collect();
            (name("k", k), name("p", p))
        }
    };
    let neg = q(-1);
    for (name, m) in &k {
        if m.transpose() != m.scale(&neg) {
            return Err(Error::Invariant(format!("k basis element {name} is not antisymmetric")));
        }
    }
    for (name, m) in &p {
        if !m.is_symmetric() {
            return Err(Error::Invariant(format!("p basis element {name} is not symmetric")));
        }
    }
    let dim_k = k.len();
    let (k_names, k_mats): (Vec<String>, Vec<Mat<Q>>) = k.into_iter().unzip();
    let (p_names, p_mats): (Vec<String>, Vec<Mat<Q>>) = p.into_iter().unzip();
    let mats: Vec<Mat<Q>> = k_mats.into_iter().chain(p_mats).collect();
    let algebra = LieAlgebra::from_matrix_basis(family.to_string(), mats)?;
    let mut model = SymmetricSpaceModel::from_adapted(family.to_string(), label(family), algebra, dim_k, k_names, p_names)?;

    if model.dim_p() != family.expected_dim_p() || model.dim_k() != family.expected_dim_k() {
        return Err(Error::Invariant(format!(
            "{family}: dim (k, p) = ({}, {}), expected ({}, {})",
            model.dim_k(),
            model.dim_p(),
            family.expected_dim_k(),
            family.expected_dim_p()
        )));
    }
    let (flat, witness) = crate::triple::standard_flat(&model)?;
    model.set_standard_flat(flat, witness);
    if model.rank() != family.expected_rank() {
        return Err(Error::Invariant(format!("{family}: rank {} , expected {}", model.rank(), family.expected_rank())));
    }
    if !is_simple(&model) {
        return Err(Error::Invariant(format!("{family}: algebra is not simple")));
    }
    Ok(model)
}

fn label(f: Family) -> String {
    match f {
        Family::SlR(n) => format!("SL_{n}(R)/SO_{n}"),
        Family::SlC(n) => format!("SL_{n}(C)/SU_{n}"),
        Family::So(p, q) => format!("SO_{p},{q}/SO_{p}SO_{q}"),
        Family::Su(p, q) => format!("SU_{p},{q}/S(U_{p}U_{q})"),
        Family::SpR(n) => format!("Sp_{n}(R)/U_{n}"),
        Family::Sp(p, q) => format!("Sp_{p},{q}/Sp_{p}Sp_{q}"),
        Family::G2Split => "G2(2)/SO_4".to_string(),
    }
}

/// Ideal-closure test for simplicity. An eigenvector of `ad x` (generic
/// `x ∈ p`) for an extreme eigenvalue lies in a single simple ideal; its
/// ideal closure is all of `g` exactly when `g` is simple.
pub fn is_simple(model: &SymmetricSpaceModel) -> bool {
    let g = model.algebra();
    let d = g.dim();
    let (l, l_inv_t) = crate::flats::g_orthonormal(model);
    let mut rng = crate::par::rng(0x5151);
    (0..2).all(|_| {
        let x: Vec<f64> = crate::scalar::to_f64_vec(&model.embed_p(&model.random_p(&mut rng, 10)));
        let ad = numeric::to_dmatrix(&g.ad_f64(&x));
        let sym = l.transpose() * &ad * &l_inv_t;
        let (vals, vecs) = numeric::sym_eigen(&sym);
        let top = vals.len() - 1;
        let u = &l_inv_t * vecs.column(top);
        ideal_dim_f64(g, &u) == d
    })
}

fn ideal_dim_f64(g: &LieAlgebra, x: &DVector<f64>) -> usize {
    let d = g.dim();
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut queue = vec![x.clone()];
    while let Some(v) = queue.pop() {
        let Some(u) = numeric::orthonormal_extend(&basis, &v, 1e-8) else {
            continue;
        };
        basis.push(u.clone());
        if basis.len() == d {
            break;
        }
        let us: Vec<f64> = u.iter().cloned().collect();
        let ad = g.ad_f64(&us);
        let m = numeric::to_dmatrix(&ad);
        for j in 0..d {
            queue.push(m.column(j).into_owned());
        }
    }
    basis.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogInvariants {
    pub n: usize,
    pub r: usize,
    pub dim_k: usize,
    pub killing_signature: (usize, usize, usize),
}

pub fn catalog_invariants(model: &SymmetricSpaceModel) -> CatalogInvariants {
    CatalogInvariants {
        n: model.dim_p(),
        r: model.rank(),
        dim_k: model.dim_k(),
        killing_signature: model.algebra().killing_form().signature(),
    }
}

/// The spaces listed by `catalog list`.
pub fn shipped() -> Vec<Family> {
    let mut out = Vec::new();
    out.extend((2..=6).map(Family::SlR));
    out.extend((2..=3).map(Family::SlC));
    for s in 3..=9 {
        for p in 1..=s / 2 {
            if (p, s - p) != (2, 2) {
                out.push(Family::So(p, s - p));
            }
        }
    }
    out.extend((1..=4).map(|k| Family::Su(1, k)));
    out.push(Family::Su(2, 2));
    out.push(Family::Su(2, 3));
    out.extend((1..=3).map(Family::SpR));
    out.push(Family::Sp(1, 1));
    out.push(Family::Sp(1, 2));
    out.push(Family::G2Split);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specifier_round_trip() {
        for f in shipped() {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        for bad in ["sl_R", "sl_R:", "sl_R:3,4", "so:3", "so: 3,4", "xx:1", "g2", "sl_R:-1", "sl_R:+3"] {
            assert!(bad.parse::<Family>().is_err(), "{bad}");
        }
    }

    #[test]
    fn unsupported_parameters() {
        for f in [Family::SlR(1), Family::So(2, 2), Family::So(1, 1), Family::Su(0, 3), Family::SlR(9)] {
            assert!(matches!(build_space(f), Err(Error::UnsupportedParameters(_))));
        }
    }
}
