//! Numerical search for Lie triple systems of a given codimension.
//!
//! Planes are represented by orthonormal bases in orthonormal coordinates on
//! `p`. The objective `f(V) = Σ ‖P⊥[[v_i, v_j], v_l]‖²` vanishes exactly on
//! triple systems; it is minimized by Riemannian gradient descent with a QR
//! retraction and a Gauss–Newton polish near zero.

use std::ops::AddAssign;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::model::SymmetricSpaceModel;
use crate::numeric;
use crate::par;
use crate::scalar::{rationalize, Scalar, Q};
use crate::triple;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub codim: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub tol_accept: f64,
    pub tol_reject: f64,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(codim: usize) -> Self {
        SearchConfig { codim, restarts: 50, max_iters: 2000, tol_accept: 1e-8, tol_reject: 1e-2, seed: 0 }
    }

    pub fn validate(&self, model: &SymmetricSpaceModel) -> Result<()> {
        if self.codim == 0 || self.codim >= model.dim_p() {
            return Err(Error::InvalidConfig(format!(
                "codimension {} outside 1..{}",
                self.codim,
                model.dim_p()
            )));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("at least one restart is required".into()));
        }
        if !(self.tol_accept < self.tol_reject) {
            return Err(Error::InvalidConfig("tol_accept must be below tol_reject".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub codim: usize,
    pub best_residual: f64,
    /// Best plane in the coordinates of `p`.
    pub best_subspace: Subspace<f64>,
    /// Final residual of every restart, in restart order.
    pub residuals: Vec<f64>,
    /// `(decade, count)` pairs: residuals in `[10^decade, 10^(decade+1))`.
    pub residual_histogram: Vec<(i32, usize)>,
    pub accepted: bool,
    /// First restart (1-based) whose residual was accepted.
    pub first_accepted_restart: Option<usize>,
    pub refined_exact: Option<Subspace<Q>>,
    pub numerical_only: bool,
    /// Restarts that stopped at `max_iters` without meeting a stopping test.
    pub unconverged: usize,
}

/// The objective on one model, in orthonormal coordinates `y = Lᵀx` of `p`.
pub struct Objective {
    n: usize,
    dk: usize,
    /// `[f_a, f_b]` in `k`, flattened `(a, b, i)`.
    kbr: Vec<f64>,
    /// `ad(k_i)` on `p` in orthonormal coordinates.
    ak: Vec<DMatrix<f64>>,
    /// Maps orthonormal coordinates back to the basis of `p`.
    to_basis: DMatrix<f64>,
    /// Columns are the basis vectors of `p` in orthonormal coordinates.
    from_basis: DMatrix<f64>,
}

impl Objective {
    pub fn new(model: &SymmetricSpaceModel) -> Self {
        let n = model.dim_p();
        let dk = model.dim_k();
        let l = numeric::cholesky(model.p_gram_f64());
        let from_basis = l.transpose();
        let to_basis = from_basis.clone().try_inverse().expect("cholesky factor is invertible");
        let frame: Vec<Vec<f64>> = (0..n).map(|a| to_basis.column(a).iter().cloned().collect()).collect();
        let mut kbr = vec![0.0; n * n * dk];
        for a in 0..n {
            for b in 0..n {
                let k = model.bracket_pp_f64(&frame[a], &frame[b]);
                kbr[(a * n + b) * dk..(a * n + b + 1) * dk].copy_from_slice(&k);
            }
        }
        let ak = (0..dk)
            .map(|i| {
                let mut e = vec![0.0; dk];
                e[i] = 1.0;
                let ad = numeric::to_dmatrix(&model.ad_k_on_p_f64(&e));
                &from_basis * ad * &to_basis
            })
            .collect();
        Objective { n, dk, kbr, ak, to_basis, from_basis }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dk];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0.0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                let s = xa * yb;
                if s == 0.0 {
                    continue;
                }
                let off = (a * self.n + b) * self.dk;
                for (o, c) in out.iter_mut().zip(&self.kbr[off..off + self.dk]) {
                    *o += s * c;
                }
            }
        }
        out
    }

    fn ad(&self, k: &[f64]) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (c, a) in k.iter().zip(&self.ak) {
            if *c != 0.0 {
                m += a * *c;
            }
        }
        m
    }

    /// `ad([v_i, v_j])` for `i < j`.
    fn pair_ads(&self, v: &DMatrix<f64>) -> Vec<(usize, usize, DMatrix<f64>)> {
        let cols: Vec<Vec<f64>> = v.column_iter().map(|c| c.iter().cloned().collect()).collect();
        let d = cols.len();
        let mut out = Vec::with_capacity(d * (d.saturating_sub(1)) / 2);
        for i in 0..d {
            for j in i + 1..d {
                out.push((i, j, self.ad(&self.bracket(&cols[i], &cols[j]))));
            }
        }
        out
    }

    /// Normal components `P⊥[[v_i, v_j], v_l]`, `i < j`, scaled so that their
    /// squared norms sum to `f`.
    pub fn residual_vector(&self, v: &DMatrix<f64>) -> Vec<f64> {
        let proj = v * v.transpose();
        let s = std::f64::consts::SQRT_2;
        let mut out = Vec::new();
        for (_, _, m) in self.pair_ads(v) {
            let t = &m * v;
            let w = &t - &proj * &t;
            out.extend(w.iter().map(|x| x * s));
        }
        out
    }

    /// `f(V)` for `V` with orthonormal columns.
    pub fn value(&self, v: &DMatrix<f64>) -> f64 {
        self.residual_vector(v).iter().map(|x| x * x).sum()
    }

    /// `f` at the plane spanned by the columns of an arbitrary full-rank `V`.
    pub fn value_of_span(&self, v: &DMatrix<f64>) -> f64 {
        self.value(&numeric::qr_q(v))
    }

    /// `f(V)` and its Riemannian gradient `P⊥ ∇f` at orthonormal `V`.
    pub fn value_and_gradient(&self, v: &DMatrix<f64>) -> (f64, DMatrix<f64>) {
        let (n, d) = (self.n, v.ncols());
        let proj = v * v.transpose();
        let q = DMatrix::identity(n, n) - &proj;
        let cols: Vec<DVector<f64>> = v.column_iter().map(|c| c.into_owned()).collect();
        let mut g = DMatrix::zeros(n, d);
        let mut f = 0.0;
        let pairs = self.pair_ads(v);
        let mut full: Vec<Vec<Option<DMatrix<f64>>>> = vec![vec![None; d]; d];
        for (i, j, m) in pairs {
            full[j][i] = Some(-&m);
            full[i][j] = Some(m);
        }
        for (i, row) in full.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                let Some(m) = m else { continue };
                for l in 0..d {
                    let t = m * &cols[l];
                    let w = &q * &t;
                    f += w.norm_squared();
                    // third slot: ad(K) is skew
                    let gl = -(m * &w) * 2.0;
                    g.column_mut(l).add_assign(&gl);
                    // first and second slots through [[v_l, w], ·]
                    let wv: Vec<f64> = w.iter().cloned().collect();
                    let vl: Vec<f64> = cols[l].iter().cloned().collect();
                    let lw = self.ad(&self.bracket(&vl, &wv));
                    g.column_mut(i).add_assign(&(-(&lw * &cols[j]) * 2.0));
                    g.column_mut(j).add_assign(&((&lw * &cols[i]) * 2.0));
                    // dependence of P⊥ on V
                    let vt = v.transpose() * &t;
                    g -= &t * vt.transpose() * 2.0;
                }
            }
        }
        (f, &q * g)
    }

    /// Converts an orthonormal frame to a float subspace of `p`.
    pub fn to_subspace(&self, v: &DMatrix<f64>) -> Subspace<f64> {
        let x = &self.to_basis * v;
        let vecs: Vec<Vec<f64>> = x.column_iter().map(|c| c.iter().cloned().collect()).collect();
        Subspace::span(self.n, &vecs).expect("frame columns have length dim p")
    }

    /// Orthonormal frame for a subspace given in the basis of `p`.
    pub fn frame_of(&self, basis: &[Vec<f64>]) -> DMatrix<f64> {
        let cols: Vec<DVector<f64>> =
            basis.iter().map(|b| &self.from_basis * DVector::from_column_slice(b)).collect();
        let m = DMatrix::from_columns(&cols);
        numeric::qr_q(&m)
    }
}

/// Central finite-difference check of the Riemannian gradient at `v`;
/// returns the relative error `‖G_fd − G‖ / ‖G‖`, meaningless where `G` vanishes.
pub fn gradient_check(obj: &Objective, v: &DMatrix<f64>, h: f64) -> f64 {
    let (_, g) = obj.value_and_gradient(v);
    let mut fd = DMatrix::zeros(v.nrows(), v.ncols());
    for a in 0..v.nrows() {
        for i in 0..v.ncols() {
            let mut plus = v.clone();
            plus[(a, i)] += h;
            let mut minus = v.clone();
            minus[(a, i)] -= h;
            fd[(a, i)] = (obj.value_of_span(&plus) - obj.value_of_span(&minus)) / (2.0 * h);
        }
    }
    (fd - &g).norm() / g.norm().max(1e-300)
}

pub fn random_frame<R: Rng>(n: usize, d: usize, rng: &mut R) -> DMatrix<f64> {
    loop {
        let m = DMatrix::from_fn(n, d, |_, _| rng.random_range(-1.0..1.0));
        if numeric::numerical_rank(&m, 1e-6) == d {
            return numeric::qr_q(&m);
        }
    }
}

struct Descent {
    frame: DMatrix<f64>,
    value: f64,
    converged: bool,
}

fn descend(obj: &Objective, start: DMatrix<f64>, max_iters: usize, tol_accept: f64) -> Descent {
    let target = (tol_accept * 1e-2).powi(2);
    let mut v = start;
    let (mut f, mut g) = obj.value_and_gradient(&v);
    let mut step = 1.0;
    let mut converged = false;
    for _ in 0..max_iters {
        let gn2 = g.norm_squared();
        if f <= target || gn2.sqrt() <= 1e-14 * (1.0 + f.sqrt()) {
            converged = true;
            break;
        }
        let mut accepted = None;
        let mut s = step * 2.0;
        for _ in 0..60 {
            let cand = numeric::qr_q(&(&v - &g * s));
            let fc = obj.value(&cand);
            if fc <= f - 1e-4 * s * gn2 {
                accepted = Some((cand, s));
                break;
            }
            s *= 0.5;
        }
        let Some((nv, s)) = accepted else {
            converged = true;
            break;
        };
        step = s;
        v = nv;
        let prev = f;
        (f, g) = obj.value_and_gradient(&v);
        if f < 1e-6 && (prev - f) < 1e-3 * prev {
            // Slow linear phase near a zero: hand over to Gauss–Newton.
            break;
        }
    }
    if f < 1e-4 {
        let (pv, pf) = polish(obj, v.clone(), f, 60);
        if pf < f {
            v = pv;
            f = pf;
        }
        converged |= f <= target;
    }
    Descent { frame: v, value: f, converged }
}

/// Levenberg–Marquardt on the residual vector, parametrized by normal
/// displacements `V + N X` followed by QR.
fn polish(obj: &Objective, mut v: DMatrix<f64>, mut f: f64, iters: usize) -> (DMatrix<f64>, f64) {
    let (n, d) = (v.nrows(), v.ncols());
    let mut lambda = 1e-6;
    for _ in 0..iters {
        if f < 1e-32 {
            break;
        }
        let normal = normal_frame(&v);
        let c = normal.ncols();
        let r0 = DVector::from_vec(obj.residual_vector(&v));
        let h = 1e-7;
        let mut jac = DMatrix::zeros(r0.len(), c * d);
        for m in 0..c {
            for i in 0..d {
                let mut dv = DMatrix::zeros(n, d);
                dv.set_column(i, &normal.column(m));
                let rp = obj.residual_vector(&numeric::qr_q(&(&v + &dv * h)));
                let rm = obj.residual_vector(&numeric::qr_q(&(&v - &dv * h)));
                for (k, (a, b)) in rp.iter().zip(&rm).enumerate() {
                    jac[(k, m * d + i)] = (a - b) / (2.0 * h);
                }
            }
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let rhs = -(&jt * &r0);
        let mut improved = false;
        for _ in 0..12 {
            let sys = &jtj + DMatrix::identity(c * d, c * d) * (lambda * (1.0 + jtj.diagonal().max()));
            let Some(delta) = sys.lu().solve(&rhs) else { break };
            let mut dv = DMatrix::zeros(n, d);
            for m in 0..c {
                for i in 0..d {
                    let mut col = dv.column_mut(i);
                    col += normal.column(m) * delta[m * d + i];
                }
            }
            let cand = numeric::qr_q(&(&v + dv));
            let fc = obj.value(&cand);
            if fc < f {
                v = cand;
                f = fc;
                lambda = (lambda / 10.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (v, f)
}

fn normal_frame(v: &DMatrix<f64>) -> DMatrix<f64> {
    let n = v.nrows();
    let basis: Vec<DVector<f64>> = v.column_iter().map(|c| c.into_owned()).collect();
    let mut all = basis.clone();
    for a in 0..n {
        let e = DVector::from_fn(n, |i, _| if i == a { 1.0 } else { 0.0 });
        if let Some(u) = numeric::orthonormal_extend(&all, &e, 1e-8) {
            all.push(u);
        }
    }
    DMatrix::from_columns(&all[basis.len()..])
}

fn histogram(residuals: &[f64]) -> Vec<(i32, usize)> {
    let mut out: Vec<(i32, usize)> = Vec::new();
    let mut decades: Vec<i32> = residuals.iter().map(|r| r.max(1e-300).log10().floor() as i32).collect();
    decades.sort_unstable();
    for d in decades {
        match out.last_mut() {
            Some((x, c)) if *x == d => *c += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

pub fn lts_search(model: &SymmetricSpaceModel, config: &SearchConfig) -> Result<SearchResult> {
    config.validate(model)?;
    let obj = Objective::new(model);
    let n = model.dim_p();
    let d = n - config.codim;
    let runs = par::map_range(config.restarts, |r| {
        let mut rng = par::rng(par::derive_seed(config.seed, r as u64));
        descend(&obj, random_frame(n, d, &mut rng), config.max_iters, config.tol_accept)
    });
    let residuals: Vec<f64> = runs.iter().map(|r| r.value.max(0.0).sqrt()).collect();
    let best = (0..runs.len()).min_by(|&a, &b| residuals[a].total_cmp(&residuals[b])).expect("restarts > 0");
    let best_residual = residuals[best];
    let accepted = best_residual <= config.tol_accept;
    let first_accepted_restart = residuals.iter().position(|&r| r <= config.tol_accept).map(|i| i + 1);
    let refined_exact = if accepted { refine(model, &obj, &runs[best].frame, config.seed) } else { None };
    Ok(SearchResult {
        codim: config.codim,
        best_residual,
        best_subspace: obj.to_subspace(&runs[best].frame),
        residual_histogram: histogram(&residuals),
        residuals,
        accepted,
        first_accepted_restart,
        numerical_only: accepted && refined_exact.is_none(),
        refined_exact,
        unconverged: runs.iter().filter(|r| !r.converged).count(),
    })
}

const DENOMINATOR_CAP: i64 = 10_000;

/// Rounds a float subspace of `p` to an exact one: RREF, continued-fraction
/// rationalization of the entries, exact triple-system check.
pub fn rationalize_subspace(model: &SymmetricSpaceModel, w: &Subspace<f64>) -> Option<Subspace<Q>> {
    let mut rows = Vec::with_capacity(w.dim());
    for b in w.basis() {
        let mut row = Vec::with_capacity(b.len());
        for &x in b {
            row.push(rationalize(x, DENOMINATOR_CAP, 1e-7)?);
        }
        rows.push(row);
    }
    let exact = Subspace::from_independent(model.dim_p(), &rows).ok()?;
    match triple::lts_residual(model, &exact) {
        Ok((r, _)) if r.is_zero() => Some(exact),
        _ => None,
    }
}

/// Alignment defect `Σ_a p_a (1 − p_a)`, `p_a = ‖P_W u_a‖²` over the unit
/// basis directions `u_a`; zero exactly when `W` is spanned by basis vectors.
struct Alignment {
    units: Vec<DVector<f64>>,
}

impl Alignment {
    fn new(obj: &Objective) -> Self {
        let units = (0..obj.n).map(|a| obj.from_basis.column(a).normalize()).collect();
        Alignment { units }
    }

    fn value(&self, v: &DMatrix<f64>) -> f64 {
        self.units
            .iter()
            .map(|u| {
                let p = (v.transpose() * u).norm_squared();
                p * (1.0 - p)
            })
            .sum()
    }

    /// Derivative along `exp(t A_i)` for each generator of `k`.
    fn gradient(&self, obj: &Objective, v: &DMatrix<f64>) -> Vec<f64> {
        let proj = v * v.transpose();
        obj.ak
            .iter()
            .map(|a| {
                self.units
                    .iter()
                    .map(|u| {
                        let pu = &proj * u;
                        let p = u.dot(&pu);
                        2.0 * (1.0 - 2.0 * p) * u.dot(&(a * pu))
                    })
                    .sum()
            })
            .collect()
    }
}

/// Moves a float triple system by the isotropy group towards a position
/// spanned by basis vectors of `p`, then rationalizes.
fn refine(model: &SymmetricSpaceModel, obj: &Objective, frame: &DMatrix<f64>, seed: u64) -> Option<Subspace<Q>> {
    if let Some(w) = rationalize_subspace(model, &obj.to_subspace(frame)) {
        return Some(w);
    }
    let align = Alignment::new(obj);
    let mut rng = par::rng(seed ^ 0x5EED_A11C);
    for attempt in 0..40 {
        let mut v = if attempt == 0 {
            frame.clone()
        } else {
            let x: Vec<f64> = (0..obj.dk).map(|_| rng.random_range(-3.0..3.0)).collect();
            numeric::qr_q(&(obj.ad(&x).exp() * frame))
        };
        let mut psi = align.value(&v);
        let mut step = 0.1;
        for _ in 0..3000 {
            if psi < 1e-22 {
                break;
            }
            let g = align.gradient(obj, &v);
            let gn2: f64 = g.iter().map(|x| x * x).sum();
            if gn2 < 1e-28 {
                break;
            }
            let mut s = step * 2.0;
            let mut moved = false;
            for _ in 0..40 {
                let x: Vec<f64> = g.iter().map(|c| -c * s).collect();
                let cand = numeric::qr_q(&(obj.ad(&x).exp() * &v));
                let pc = align.value(&cand);
                if pc <= psi - 1e-4 * s * gn2 {
                    v = cand;
                    psi = pc;
                    step = s;
                    moved = true;
                    break;
                }
                s *= 0.5;
            }
            if !moved {
                break;
            }
        }
        if psi < 1e-12 {
            if let Some(w) = rationalize_subspace(model, &obj.to_subspace(&v)) {
                return Some(w);
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct ProbeResult {
    /// Proven lower bound for the index.
    pub rank: usize,
    /// Least accepted codimension, if any up to `cmax`.
    pub index: Option<usize>,
    pub results: Vec<SearchResult>,
}

impl ProbeResult {
    pub fn witness(&self) -> Option<&SearchResult> {
        self.results.iter().find(|r| r.accepted)
    }
}

/// Searches codimensions `1..=cmax` in order and stops at the first accepted one.
pub fn index_probe(model: &SymmetricSpaceModel, cmax: usize, config: &SearchConfig) -> Result<ProbeResult> {
    if cmax == 0 || cmax >= model.dim_p() {
        return Err(Error::InvalidConfig(format!("probe bound {cmax} outside 1..{}", model.dim_p())));
    }
    let rank = model.rank();
    let mut results = Vec::new();
    for codim in 1..=cmax {
        let cfg = SearchConfig { codim, ..config.clone() };
        let r = lts_search(model, &cfg)?;
        let accepted = r.accepted;
        results.push(r);
        if accepted {
            if codim < rank {
                return Err(Error::RankFloorViolated { codim, rank });
            }
            return Ok(ProbeResult { rank, index: Some(codim), results });
        }
    }
    Ok(ProbeResult { rank, index: None, results })
}
