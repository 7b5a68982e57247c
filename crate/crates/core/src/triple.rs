//! Lie triple systems in `p`: the closure test `[[W,W],W] ⊆ W`, the
//! subalgebra they generate, abelian parts, centralizers and rank.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{gram_of, Mat, Subspace};
use crate::model::SymmetricSpaceModel;
use crate::par;
use crate::scalar::{is_zero_vec, Scalar, Q};

/// Orthogonal projection onto `W` under the model's inner product on `p`.
pub struct Projector {
    basis: Vec<Vec<Q>>,
    gram_w: Mat<Q>,
    gram_inv: Mat<Q>,
    p_gram: Mat<Q>,
}

impl Projector {
    pub fn new(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> Self {
        let basis = w.basis().to_vec();
        let gram_w = gram_of(&basis, model.p_gram());
        let gram_inv = if basis.is_empty() { Mat::zeros(0, 0) } else { gram_w.inverse().expect("inner product is definite") };
        Self { basis, gram_w, gram_inv, p_gram: model.p_gram().clone() }
    }

    pub fn project(&self, x: &[Q]) -> Vec<Q> {
        if self.basis.is_empty() {
            return vec![Q::zero(); x.len()];
        }
        let gx = self.p_gram.mul_vec(x);
        let rhs: Vec<Q> = self.basis.iter().map(|b| crate::scalar::dot(b, &gx)).collect();
        let c = self.gram_inv.mul_vec(&rhs);
        let mut out = vec![Q::zero(); x.len()];
        for (ci, b) in c.iter().zip(&self.basis) {
            for (o, bi) in out.iter_mut().zip(b) {
                *o += ci * bi;
            }
        }
        out
    }

    /// Component of `x` orthogonal to `W`.
    pub fn reject(&self, x: &[Q]) -> Vec<Q> {
        let p = self.project(x);
        x.iter().zip(&p).map(|(a, b)| a - b).collect()
    }

    pub fn gram(&self) -> &Mat<Q> {
        &self.gram_w
    }
}

/// `max_{i<j, l} |[[w_i,w_j],w_l]^⊥|²` over the canonical basis of `W`, with
/// `⊥` taken in `p` for `⟨X,Y⟩ = -B(X,θY)`. The residual is the squared norm,
/// which keeps it rational; it vanishes exactly when `W` is a triple system.
pub fn lts_residual(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> Result<(Q, bool)> {
    model.check_p_subspace(w)?;
    if w.is_zero() {
        return Err(Error::Degenerate("zero subspace"));
    }
    let proj = Projector::new(model, w);
    let b = w.basis();
    let mut worst = Q::zero();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let x = model.bracket_pp(&b[i], &b[j]);
            if is_zero_vec(&x) {
                continue;
            }
            for bl in b {
                let r = proj.reject(&model.bracket_kp(&x, bl));
                let n = model.p_inner(&r, &r);
                if n > worst {
                    worst = n;
                }
            }
        }
    }
    let zero = worst.is_zero();
    Ok((worst, zero))
}

/// Exact membership test, faster than computing the residual.
pub fn is_lts(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> Result<bool> {
    model.check_p_subspace(w)?;
    let kk = model.bracket_span(w);
    Ok(kk.basis().iter().all(|x| w.basis().iter().all(|y| w.contains(&model.bracket_kp(x, y)))))
}

fn require_lts(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> Result<()> {
    if !is_lts(model, w)? {
        return Err(Error::NotLts);
    }
    Ok(())
}

/// `g′ = [W,W] ⊕ W` in `g` coordinates.
pub fn tangent_subalgebra(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> Result<Subspace<Q>> {
    require_lts(model, w)?;
    let kk = model.bracket_span(w);
    let vs: Vec<Vec<Q>> =
        kk.basis().iter().map(|x| model.embed_k(x)).chain(w.basis().iter().map(|y| model.embed_p(y))).collect();
    Subspace::span(model.dim_g(), &vs)
}

/// `{v ∈ W : [v, W] = 0}`, without checking that `W` is a triple system.
pub fn commuting_part(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> Subspace<Q> {
    let b = w.basis();
    let m = b.len();
    if m == 0 {
        return w.clone();
    }
    let dk = model.dim_k();
    // Column i stacks [w_i, w_j] over all j.
    let cols: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut c = Vec::with_capacity(dk * m);
            for bj in b {
                c.extend(model.bracket_pp(&b[i], bj));
            }
            c
        })
        .collect();
    let sys = Mat::from_cols(&cols, dk * m);
    let vs: Vec<Vec<Q>> = sys.kernel().iter().map(|c| w.combine(c)).collect();
    Subspace::span(model.dim_p(), &vs).expect("vectors lie in p")
}

/// The abelian (Euclidean) part of a triple system.
pub fn abelian_part(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> Result<Subspace<Q>> {
    require_lts(model, w)?;
    Ok(commuting_part(model, w))
}

/// `C(v) = {w ∈ p : [v, w] = 0}`.
pub fn centralizer(model: &SymmetricSpaceModel, v: &[Q]) -> Result<Subspace<Q>> {
    model.check_p(v)?;
    Ok(Subspace::span(model.dim_p(), &model.ad_p_to_k(v).kernel()).expect("kernel vectors lie in p"))
}

/// `{z ∈ Z : [v, z] = 0}`.
pub fn centralizer_within(model: &SymmetricSpaceModel, z: &Subspace<Q>, v: &[Q]) -> Subspace<Q> {
    if z.is_zero() {
        return z.clone();
    }
    let ad = model.ad_p_to_k(v);
    let cols: Vec<Vec<Q>> = z.basis().iter().map(|b| ad.mul_vec(b)).collect();
    let sys = Mat::from_cols(&cols, model.dim_k());
    let vs: Vec<Vec<Q>> = sys.kernel().iter().map(|c| z.combine(c)).collect();
    Subspace::span(model.dim_p(), &vs).expect("vectors lie in p")
}

/// True when every pair of basis vectors commutes.
pub fn is_abelian(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> bool {
    let b = w.basis();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| is_zero_vec(&model.bracket_pp(&b[i], &b[j]))))
}

/// Greedy maximal abelian subspace of `W`: pick random integer combinations
/// in the running joint centralizer until it is self-centralizing. For a
/// triple system `W` its dimension is the rank of the corresponding space.
pub fn rank_within(model: &SymmetricSpaceModel, w: &Subspace<Q>, seed: u64) -> Subspace<Q> {
    let mut rng = par::rng(seed);
    let mut a = Subspace::zero(model.dim_p());
    let mut z = w.clone();
    while z.dim() > a.dim() {
        let x = loop {
            let x = z.random_element(&mut rng, 10);
            if !a.contains(&x) {
                break x;
            }
        };
        a = a.sum(&Subspace::span(model.dim_p(), &[x.clone()]).unwrap()).unwrap();
        z = centralizer_within(model, &z, &x);
    }
    a
}

/// Rank with a maximal abelian witness, from one greedy run.
pub fn rank(model: &SymmetricSpaceModel, seed: u64) -> (usize, Subspace<Q>) {
    let a = rank_within(model, &Subspace::full(model.dim_p()), seed);
    (a.dim(), a)
}

/// Five greedy runs with derived seeds; they must agree.
pub fn rank_stable(model: &SymmetricSpaceModel, seed: u64) -> Result<(usize, Subspace<Q>)> {
    let runs = par::map_range(5, |i| rank(model, par::derive_seed(seed, i as u64)));
    let r = runs[0].0;
    if runs.iter().any(|(d, _)| *d != r) {
        let dims: Vec<usize> = runs.iter().map(|(d, _)| *d).collect();
        return Err(Error::Invariant(format!("greedy rank runs disagree: {dims:?}")));
    }
    Ok(runs.into_iter().next().unwrap())
}

/// Rank of a triple system `W`, stable over five seeds.
pub fn sigma_rank(model: &SymmetricSpaceModel, w: &Subspace<Q>, seed: u64) -> Result<usize> {
    let dims = par::map_range(5, |i| rank_within(model, w, par::derive_seed(seed, i as u64)).dim());
    if dims.iter().any(|&d| d != dims[0]) {
        return Err(Error::Invariant(format!("greedy rank runs disagree inside subspace: {dims:?}")));
    }
    Ok(dims[0])
}

/// Maximal abelian subspace built from `p` basis vectors where possible,
/// so that it has small rational coordinates, together with a regular
/// vector `x` in it (`C(x)` equals the flat).
pub fn standard_flat(model: &SymmetricSpaceModel) -> Result<(Subspace<Q>, Vec<Q>)> {
    let dp = model.dim_p();
    let mut a = Subspace::zero(dp);
    let mut z = Subspace::full(dp);
    for i in 0..dp {
        let e = model.p_unit(i);
        if z.contains(&e) && !a.contains(&e) {
            a = a.sum(&Subspace::span(dp, &[e.clone()])?)?;
            z = centralizer_within(model, &z, &e);
        }
    }
    let mut rng = par::rng(0xF1A7);
    while z.dim() > a.dim() {
        let x = z.random_element(&mut rng, 3);
        if a.contains(&x) {
            continue;
        }
        a = a.sum(&Subspace::span(dp, &[x.clone()])?)?;
        z = centralizer_within(model, &z, &x);
    }
    let witness = regular_in(model, &a, &mut rng).ok_or(Error::NotRegular)?;
    Ok((a, witness))
}

/// A vector `x ∈ a` with `C(x) = a`, for a maximal abelian `a`.
pub fn regular_in<R: Rng>(model: &SymmetricSpaceModel, a: &Subspace<Q>, rng: &mut R) -> Option<Vec<Q>> {
    for range in [3i64, 10, 100, 1000] {
        for _ in 0..20 {
            let x = a.random_element(rng, range);
            if is_zero_vec(&x) {
                continue;
            }
            if centralizer(model, &x).ok()?.dim() == a.dim() {
                return Some(x);
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct LtsReport {
    pub subspace: Subspace<Q>,
    pub residual: Q,
    pub is_lts: bool,
    pub abelian_dim: usize,
    pub semisimple: bool,
    pub tangent_algebra_dim: usize,
}

pub fn analyze(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> Result<LtsReport> {
    let (residual, is_lts) = lts_residual(model, w)?;
    let (abelian_dim, tangent_algebra_dim) = if is_lts {
        (commuting_part(model, w).dim(), model.bracket_span(w).dim() + w.dim())
    } else {
        (0, 0)
    };
    Ok(LtsReport {
        subspace: w.clone(),
        residual,
        is_lts,
        abelian_dim,
        semisimple: is_lts && abelian_dim == 0,
        tangent_algebra_dim,
    })
}

#[derive(Clone, Debug)]
pub struct ComplementReport {
    pub complement: Subspace<Q>,
    pub complement_residual: Q,
    pub complement_is_lts: bool,
    /// Dimension of the abelian part of `W^⊥` when it is a triple system.
    pub complement_abelian_dim: Option<usize>,
    /// Spanning vector of a one-dimensional abelian part.
    pub v: Option<Vec<Q>>,
    /// `T_v(K.v) = W`.
    pub tangent_matches: Option<bool>,
    /// `ν_v(K.v) = W^⊥`.
    pub normal_matches: Option<bool>,
}

impl ComplementReport {
    /// Both triple systems, `W^⊥` not semisimple, and then the orbit of
    /// the abelian direction has tangent `W` and normal `W^⊥`.
    pub fn orbit_realized(&self) -> bool {
        self.complement_is_lts
            && self.complement_abelian_dim == Some(1)
            && self.tangent_matches == Some(true)
            && self.normal_matches == Some(true)
    }
}

/// Orthogonal complement analysis for a triple system `W`.
pub fn complementary_pair_analysis(model: &SymmetricSpaceModel, w: &Subspace<Q>) -> Result<ComplementReport> {
    model.check_p_subspace(w)?;
    if w.is_zero() || w.is_full() {
        return Err(Error::Degenerate("need 0 < dim W < dim p"));
    }
    require_lts(model, w)?;
    let complement = w.orthocomplement(model.p_gram())?;
    let (complement_residual, complement_is_lts) = lts_residual(model, &complement)?;
    let mut report = ComplementReport {
        complement: complement.clone(),
        complement_residual,
        complement_is_lts,
        complement_abelian_dim: None,
        v: None,
        tangent_matches: None,
        normal_matches: None,
    };
    if complement_is_lts {
        let ab = commuting_part(model, &complement);
        report.complement_abelian_dim = Some(ab.dim());
        if ab.dim() == 1 {
            let v = ab.basis()[0].clone();
            let tangent = Subspace::span(model.dim_p(), &model.ad_k_to_p(&v).transpose().row_vecs())?;
            report.tangent_matches = Some(tangent == *w);
            report.normal_matches = Some(centralizer(model, &v)? == complement);
            report.v = Some(v);
        }
    }
    Ok(report)
}
