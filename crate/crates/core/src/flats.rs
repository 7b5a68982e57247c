//! Maximal flats, regular vectors, restricted roots and transversal flats.

use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{gram_of, Mat, Subspace};
use crate::model::SymmetricSpaceModel;
use crate::numeric;
use crate::par;
use crate::scalar::{is_zero_vec, to_f64_vec, Q};
use crate::triple;

/// Default coordinate range for random integer vectors.
pub const SAMPLE_RANGE: i64 = 10;

/// Eigenvalue clustering tolerance for root computations.
pub const CLUSTER_TOL: f64 = 1e-7;

/// A maximal abelian subspace `a ⊆ p` with a regular vector `x`, `C(x) = a`.
#[derive(Clone, Debug, PartialEq)]
pub struct Flat {
    pub subspace: Subspace<Q>,
    pub regular_witness: Vec<Q>,
}

impl Flat {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Checks that the flat is abelian, has dimension `rank`, and is the
    /// centralizer of its witness.
    pub fn validate(&self, model: &SymmetricSpaceModel) -> bool {
        triple::is_abelian(model, &self.subspace)
            && self.dim() == model.rank()
            && triple::centralizer(model, &self.regular_witness).is_ok_and(|c| c == self.subspace)
    }

    /// The flat the model was built with.
    pub fn standard(model: &SymmetricSpaceModel) -> Self {
        let (a, w) = model.standard_flat();
        Flat { subspace: a.clone(), regular_witness: w.to_vec() }
    }
}

pub fn is_regular(model: &SymmetricSpaceModel, v: &[Q]) -> Result<bool> {
    Ok(triple::centralizer(model, v)?.dim() == model.rank())
}

/// The flat `C(v)` for a regular `v`.
pub fn flat_of(model: &SymmetricSpaceModel, v: &[Q]) -> Result<Flat> {
    let c = triple::centralizer(model, v)?;
    if c.dim() != model.rank() {
        return Err(Error::NotRegular);
    }
    Ok(Flat { subspace: c, regular_witness: v.to_vec() })
}

/// Samples integer vectors until one is regular.
pub fn random_maximal_flat(model: &SymmetricSpaceModel, seed: u64) -> Result<Flat> {
    let mut rng = par::rng(seed);
    let budget = 1000;
    for _ in 0..budget {
        let v = model.random_p(&mut rng, SAMPLE_RANGE);
        if let Ok(f) = flat_of(model, &v) {
            return Ok(f);
        }
    }
    Err(Error::BudgetExhausted { budget, max_intersection: 0 })
}

/// A maximal flat containing `z`: greedy extension of `{z}` inside `C(z)`.
pub fn flat_through<R: Rng>(model: &SymmetricSpaceModel, z: &[Q], rng: &mut R) -> Result<Flat> {
    model.check_p(z)?;
    if is_zero_vec(z) {
        return Err(Error::ZeroVector);
    }
    let dp = model.dim_p();
    let mut a = Subspace::span(dp, &[z.to_vec()])?;
    let mut zc = triple::centralizer(model, z)?;
    while zc.dim() > a.dim() {
        let x = zc.random_element(rng, SAMPLE_RANGE);
        if a.contains(&x) {
            continue;
        }
        a = a.sum(&Subspace::span(dp, &[x.clone()])?)?;
        zc = triple::centralizer_within(model, &zc, &x);
    }
    let w = triple::regular_in(model, &a, rng).ok_or(Error::NotRegular)?;
    Ok(Flat { subspace: a, regular_witness: w })
}

#[derive(Clone, Debug)]
pub struct Root {
    /// Values on the canonical basis vectors of the flat.
    pub values: Vec<f64>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct RestrictedRootSystem {
    pub flat: Flat,
    pub roots: Vec<Root>,
    /// One normal functional per distinct hyperplane (proportional roots share one).
    pub hyperplanes: Vec<Vec<f64>>,
    pub weyl_order: usize,
    /// Gram matrix of the inner product on the flat, in flat coordinates.
    pub flat_gram: Mat<f64>,
}

impl RestrictedRootSystem {
    /// Sum of multiplicities over roots positive on the flat's regular witness.
    pub fn positive_multiplicity(&self) -> usize {
        let w = to_f64_vec(&self.flat.subspace.coords(&self.flat.regular_witness));
        self.roots.iter().filter(|r| dotf(&r.values, &w) > 0.0).map(|r| r.multiplicity).sum()
    }

    /// `J(u)`: indices of hyperplanes containing `u` (flat coordinates).
    pub fn j_signature(&self, u: &[f64]) -> Vec<usize> {
        let scale = u.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1e-300);
        self.hyperplanes
            .iter()
            .enumerate()
            .filter(|(_, h)| {
                let hn = h.iter().map(|x| x.abs()).fold(0.0, f64::max);
                dotf(h, u).abs() <= 1e-8 * hn * scale
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// `⋂_{j ∈ J} H_j` as an orthonormal basis (columns) in flat coordinates.
    pub fn hyperplane_intersection(&self, j: &[usize]) -> DMatrix<f64> {
        let r = self.flat.dim();
        if j.is_empty() {
            return DMatrix::identity(r, r);
        }
        let m = DMatrix::from_fn(j.len(), r, |i, c| self.hyperplanes[j[i]][c]);
        numeric::kernel(&m, 1e-12)
    }

    pub fn roots_come_in_pairs(&self) -> bool {
        self.roots.iter().all(|r| {
            self.roots.iter().any(|s| s.multiplicity == r.multiplicity && close(&s.values, &neg(&r.values), 1e-6))
        })
    }
}

fn dotf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn neg(a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| -x).collect()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    let s = a.iter().chain(b).map(|x| x.abs()).fold(1.0, f64::max);
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * s)
}

fn proportional(a: &[f64], b: &[f64]) -> bool {
    let na = dotf(a, a).sqrt();
    let nb = dotf(b, b).sqrt();
    (dotf(a, b).abs() - na * nb).abs() <= 1e-7 * na * nb
}

/// Orthonormal coordinates on `g` for the inner product `-B(X, θY)`:
/// returns `(L, L^{-T})` with `G = L Lᵀ`.
pub(crate) fn g_orthonormal(model: &SymmetricSpaceModel) -> (DMatrix<f64>, DMatrix<f64>) {
    let d = model.dim_g();
    let dk = model.dim_k();
    let mut gram = Mat::<f64>::zeros(d, d);
    for i in 0..dk {
        for j in 0..dk {
            gram[(i, j)] = model.k_gram_f64()[(i, j)];
        }
    }
    for a in 0..model.dim_p() {
        for b in 0..model.dim_p() {
            gram[(dk + a, dk + b)] = model.p_gram_f64()[(a, b)];
        }
    }
    let l = numeric::cholesky(&gram);
    let l_inv_t = l.transpose().try_inverse().expect("cholesky factor is invertible");
    (l, l_inv_t)
}

/// Joint eigenspaces of `ad(a)`, `a ∈ flat`, acting on `g`.
pub fn restricted_roots(model: &SymmetricSpaceModel, flat: &Flat) -> Result<RestrictedRootSystem> {
    if !triple::is_abelian(model, &flat.subspace) {
        return Err(Error::NonSemisimpleAction);
    }
    let g = model.algebra();
    let (l, l_inv_t) = g_orthonormal(model);
    let basis: Vec<Vec<f64>> = flat.subspace.basis().iter().map(|b| to_f64_vec(&model.embed_p(b))).collect();
    let ads: Vec<DMatrix<f64>> =
        basis.iter().map(|b| l.transpose() * numeric::to_dmatrix(&g.ad_f64(b)) * &l_inv_t).collect();
    for a in &ads {
        if (a - a.transpose()).norm() > 1e-9 * a.norm().max(1.0) {
            return Err(Error::NonSemisimpleAction);
        }
    }
    let mut rng = par::rng(0x0A7E);
    let mut generic = DMatrix::zeros(g.dim(), g.dim());
    for a in &ads {
        generic += a * rng.random_range(0.5..1.5);
    }
    let (vals, vecs) = numeric::sym_eigen(&generic);
    let scale = vals.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let mut roots = Vec::new();
    for range in numeric::cluster(&vals, CLUSTER_TOL * scale) {
        let u = vecs.columns(range.start, range.len()).into_owned();
        let m = range.len();
        let mut values = Vec::with_capacity(ads.len());
        for a in &ads {
            let au = a * &u;
            let restricted = u.transpose() * &au;
            let alpha = restricted.trace() / m as f64;
            let off = &au - &u * alpha;
            if off.norm() > 1e-6 * a.norm().max(1.0) {
                return Err(Error::NonSemisimpleAction);
            }
            values.push(alpha);
        }
        if values.iter().any(|v| v.abs() > 1e-7 * scale) {
            roots.push(Root { values, multiplicity: m });
        }
    }
    let mut hyperplanes: Vec<Vec<f64>> = Vec::new();
    for r in &roots {
        if !hyperplanes.iter().any(|h| proportional(h, &r.values)) {
            hyperplanes.push(r.values.clone());
        }
    }
    let flat_gram = gram_of(flat.subspace.basis(), model.p_gram()).to_f64();
    let weyl_order = weyl_order(&hyperplanes, &flat_gram, 10_000);
    Ok(RestrictedRootSystem { flat: flat.clone(), roots, hyperplanes, weyl_order, flat_gram })
}

/// Order of the group generated by the hyperplane reflections, closing
/// under composition with a cap.
pub fn weyl_order(hyperplanes: &[Vec<f64>], gram: &Mat<f64>, cap: usize) -> usize {
    let r = gram.rows();
    if r == 0 {
        return 1;
    }
    let g = numeric::to_dmatrix(gram);
    let g_inv = g.clone().try_inverse().expect("flat gram is definite");
    let gens: Vec<DMatrix<f64>> = hyperplanes
        .iter()
        .map(|h| {
            let alpha = DVector::from_column_slice(h);
            let sharp = &g_inv * &alpha;
            let norm = alpha.dot(&sharp);
            DMatrix::identity(r, r) - (&sharp * alpha.transpose()) * (2.0 / norm)
        })
        .collect();
    let key = |m: &DMatrix<f64>| -> Vec<i64> { m.iter().map(|x| (x * 1e6).round() as i64).collect() };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let id = DMatrix::identity(r, r);
    seen.insert(key(&id));
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for s in &gens {
            let n = s * &m;
            if seen.insert(key(&n)) {
                if seen.len() >= cap {
                    return seen.len();
                }
                frontier.push(n);
            }
        }
    }
    seen.len()
}

#[derive(Clone, Debug)]
pub struct CentralizerProfile {
    pub centralizer_dim: usize,
    pub is_lts: bool,
    /// `z` lies in the abelian part of `C(z)`.
    pub z_in_abelian_part: bool,
    pub rank_nz: usize,
    /// Dimension of the abelian part of `C(z)`.
    pub euclidean_dim: usize,
    /// `J(z)` relative to a flat through `z`.
    pub j_signature: Vec<usize>,
    /// `dim ⋂_{j ∈ J(z)} H_j`; agrees with `euclidean_dim` when the
    /// hyperplane picture is consistent.
    pub hyperplane_dim: usize,
    /// `dim C(z) - rank`, the dimension of the space of flats through `z`.
    pub flats_through_dim: usize,
    /// Image dimension of `k_z` acting on `C(z)`.
    pub slice_image_dim: usize,
    /// Image dimension of `[C(z), C(z)]` acting on `C(z)`.
    pub isotropy_image_dim: usize,
}

impl CentralizerProfile {
    pub fn passes(&self, rank: usize) -> bool {
        self.is_lts && self.z_in_abelian_part && self.rank_nz == rank
    }
}

pub fn centralizer_profile(model: &SymmetricSpaceModel, z: &[Q], seed: u64) -> Result<CentralizerProfile> {
    model.check_p(z)?;
    if is_zero_vec(z) {
        return Err(Error::ZeroVector);
    }
    let c = triple::centralizer(model, z)?;
    let is_lts = triple::is_lts(model, &c)?;
    let ab = triple::commuting_part(model, &c);
    let rank_nz = triple::sigma_rank(model, &c, seed)?;
    let mut rng = par::rng(seed);
    let flat = flat_through(model, z, &mut rng)?;
    let roots = restricted_roots(model, &flat)?;
    let zc = to_f64_vec(&flat.subspace.coords(z));
    let j_signature = roots.j_signature(&zc);
    let hyperplane_dim = roots.hyperplane_intersection(&j_signature).ncols();
    let slice_image_dim = image_dim_on(model, &stabilizer(model, z), &c);
    let isotropy_image_dim = image_dim_on(model, &model.bracket_span(&c), &c);
    Ok(CentralizerProfile {
        centralizer_dim: c.dim(),
        is_lts,
        z_in_abelian_part: ab.contains(z),
        rank_nz,
        euclidean_dim: ab.dim(),
        j_signature,
        hyperplane_dim,
        flats_through_dim: c.dim() - model.rank(),
        slice_image_dim,
        isotropy_image_dim,
    })
}

/// `k_v = {X ∈ k : [X, v] = 0}`.
pub fn stabilizer(model: &SymmetricSpaceModel, v: &[Q]) -> Subspace<Q> {
    Subspace::span(model.dim_k(), &model.ad_k_to_p(v).kernel()).expect("kernel vectors lie in k")
}

/// Dimension of the image of `acting ⊆ k` in `gl(U)` for an invariant `U ⊆ p`.
pub fn image_dim_on(model: &SymmetricSpaceModel, acting: &Subspace<Q>, u: &Subspace<Q>) -> usize {
    let flat: Vec<Vec<Q>> = acting
        .basis()
        .iter()
        .map(|x| {
            let mut out = Vec::new();
            for b in u.basis() {
                out.extend(model.bracket_kp(x, b));
            }
            out
        })
        .collect();
    if flat.is_empty() {
        return 0;
    }
    Mat::from_rows(&flat).rank()
}

#[derive(Clone, Debug)]
pub struct TransversalWitness {
    pub flat: Flat,
    pub trials: usize,
}

/// Rejection sampling for a maximal flat `a` with `a ∩ W = {0}`.
pub fn transversal_flat(
    model: &SymmetricSpaceModel,
    w: &Subspace<Q>,
    budget: usize,
    seed: u64,
) -> Result<TransversalWitness> {
    model.check_p_subspace(w)?;
    if w.is_full() {
        return Err(Error::Degenerate("W must be a proper subspace of p"));
    }
    let trial = |i: usize| -> (Option<Flat>, usize) {
        let mut rng = par::rng(par::derive_seed(seed, i as u64));
        let v = model.random_p(&mut rng, SAMPLE_RANGE);
        match flat_of(model, &v) {
            Ok(f) => {
                let meet = f.subspace.intersection(w).expect("same ambient").dim();
                ((meet == 0).then_some(f), meet)
            }
            Err(_) => (None, 0),
        }
    };
    if let Some((i, flat)) = par::find_first(budget, |i| trial(i).0) {
        return Ok(TransversalWitness { flat, trials: i + 1 });
    }
    let max_intersection = par::map_range(budget, |i| trial(i).1).into_iter().max().unwrap_or(0);
    Err(Error::BudgetExhausted { budget, max_intersection })
}

/// Centralizer of a float vector in `p`, as an orthonormal basis in the
/// model's `p` coordinates (columns).
pub fn centralizer_f64(model: &SymmetricSpaceModel, v: &[f64]) -> DMatrix<f64> {
    let ad = numeric::to_dmatrix(&model.ad_p_to_k_f64(v));
    numeric::kernel(&ad, 1e-10)
}

/// Equality of column spans.
pub fn same_span(a: &DMatrix<f64>, b: &DMatrix<f64>) -> bool {
    if a.ncols() != b.ncols() {
        return false;
    }
    let joint = DMatrix::from_columns(&a.column_iter().chain(b.column_iter()).map(|c| c.into_owned()).collect::<Vec<_>>());
    joint.ncols() == 0 || numeric::numerical_rank(&joint, 1e-6) == a.ncols()
}

#[derive(Clone, Debug, Default)]
pub struct JBatteryOutcome {
    pub pairs: usize,
    pub equal_j: usize,
    /// Pairs where `J(u) = J(u')` but `C(u) ≠ C(u')`, or conversely.
    pub violations: usize,
}

/// Samples pairs `u, u'` in the flat from intersections of random hyperplane
/// subsets and compares `J(u) = J(u')` with `C(u) = C(u')`.
pub fn j_battery(model: &SymmetricSpaceModel, roots: &RestrictedRootSystem, pairs: usize, seed: u64) -> JBatteryOutcome {
    let basis: Vec<Vec<f64>> = roots.flat.subspace.basis().iter().map(|b| to_f64_vec(b)).collect();
    let embed = |c: &DVector<f64>| -> Vec<f64> {
        let mut out = vec![0.0; model.dim_p()];
        for (ci, b) in c.iter().zip(&basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += ci * x;
            }
        }
        out
    };
    let h = roots.hyperplanes.len();
    let results = par::map_range(pairs, |i| {
        let mut rng = par::rng(par::derive_seed(seed, i as u64));
        let sample = |rng: &mut par::Rng| -> Option<DVector<f64>> {
            let subset: Vec<usize> = (0..h).filter(|_| rng.random_bool(0.4)).collect();
            let v = roots.hyperplane_intersection(&subset);
            if v.ncols() == 0 {
                return None;
            }
            let c = DVector::from_fn(v.ncols(), |_, _| rng.random_range(-1.0..1.0));
            Some(&v * c)
        };
        let (u, u2) = loop {
            let same = rng.random_bool(0.5);
            let Some(u) = sample(&mut rng) else { continue };
            let u2 = if same {
                let j = roots.j_signature(u.as_slice());
                let v = roots.hyperplane_intersection(&j);
                let c = DVector::from_fn(v.ncols(), |_, _| rng.random_range(-1.0..1.0));
                &v * c
            } else {
                match sample(&mut rng) {
                    Some(x) => x,
                    None => continue,
                }
            };
            if u.norm() > 1e-6 && u2.norm() > 1e-6 {
                break (u, u2);
            }
        };
        let ju = roots.j_signature(u.as_slice());
        let ju2 = roots.j_signature(u2.as_slice());
        let cu = centralizer_f64(model, &embed(&u));
        let cu2 = centralizer_f64(model, &embed(&u2));
        let eq_j = ju == ju2;
        (eq_j, eq_j != same_span(&cu, &cu2))
    });
    JBatteryOutcome {
        pairs,
        equal_j: results.iter().filter(|r| r.0).count(),
        violations: results.iter().filter(|r| r.1).count(),
    }
}
