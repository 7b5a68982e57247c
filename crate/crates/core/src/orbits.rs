//! Isotropy orbits `K.v ⊂ p`: tangent and normal spaces, shape operators,
//! slice representations, the reflection test for symmetric orbits and
//! curvature normals of principal orbits.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::flats::{self, Flat};
use crate::linalg::{gram_of, Mat, Subspace};
use crate::model::SymmetricSpaceModel;
use crate::numeric;
use crate::par;
use crate::poly;
use crate::scalar::{dot, is_zero_vec, rationalize, to_f64_vec, Scalar, Q};
use crate::triple::{self, Projector};

#[derive(Clone, Debug)]
pub struct OrbitModel {
    pub v: Vec<Q>,
    pub tangent: Subspace<Q>,
    pub normal: Subspace<Q>,
    pub dim: usize,
}

/// `T_v(K.v) = [k, v]` and its orthogonal complement, which must equal `C(v)`.
pub fn orbit_spaces(model: &SymmetricSpaceModel, v: &[Q]) -> Result<OrbitModel> {
    model.check_p(v)?;
    let tangent = tangent_space(model, v);
    let normal = tangent.orthocomplement(model.p_gram())?;
    if normal != triple::centralizer(model, v)? {
        return Err(Error::Invariant("normal space differs from the centralizer".into()));
    }
    Ok(OrbitModel { v: v.to_vec(), dim: tangent.dim(), tangent, normal })
}

pub fn tangent_space(model: &SymmetricSpaceModel, v: &[Q]) -> Subspace<Q> {
    Subspace::span(model.dim_p(), &model.ad_k_to_p(v).transpose().row_vecs()).expect("vectors lie in p")
}

/// Shape operator data in the tangent basis `t_i = [X_i, v]`.
#[derive(Clone, Debug)]
pub struct ShapeOperator {
    /// `k` basis indices `i` whose images `[e_i, v]` form the tangent basis.
    pub generators: Vec<usize>,
    pub tangent_basis: Vec<Vec<Q>>,
    /// `G_ij = ⟨t_i, t_j⟩`.
    pub gram: Mat<Q>,
    /// `S_ij = ⟨α(t_i, t_j), ξ⟩ = ⟨[X_i, [X_j, v]], ξ⟩`.
    pub form: Mat<Q>,
    /// `A = G⁻¹ S`, acting on tangent coordinates.
    pub matrix: Mat<Q>,
}

impl ShapeOperator {
    pub fn is_minus_identity(&self) -> bool {
        self.matrix == Mat::identity(self.matrix.rows()).scale(&Q::from_int(-1))
    }

    /// Eigenvalues in float, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (l_inv, _) = self.orthonormalizer();
        let s = l_inv.clone() * numeric::to_dmatrix(&self.form.to_f64()) * l_inv.transpose();
        numeric::sym_eigen(&s).0
    }

    fn orthonormalizer(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let l = numeric::cholesky(&self.gram.to_f64());
        let l_inv = l.clone().try_inverse().expect("tangent gram is definite");
        (l_inv, l)
    }
}

/// Second fundamental form `α(t_i, t_j)` of `K.v` at `v`, projected to the normal space.
pub fn second_fundamental_form(model: &SymmetricSpaceModel, v: &[Q], i: usize, j: usize) -> Result<Vec<Q>> {
    let orbit = orbit_spaces(model, v)?;
    let x = model.k_unit(i);
    let inner = model.bracket_kp(&model.k_unit(j), v);
    let raw = model.bracket_kp(&x, &inner);
    Ok(Projector::new(model, &orbit.normal).project(&raw))
}

fn tangent_generators(model: &SymmetricSpaceModel, v: &[Q]) -> (Vec<usize>, Vec<Vec<Q>>) {
    let ad = model.ad_k_to_p(v);
    let (_, pivots) = ad.rref();
    let basis = pivots.iter().map(|&i| ad.col(i)).collect();
    (pivots, basis)
}

pub fn shape_operator(model: &SymmetricSpaceModel, v: &[Q], xi: &[Q]) -> Result<ShapeOperator> {
    model.check_p(v)?;
    model.check_p(xi)?;
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    if !triple::centralizer(model, v)?.contains(xi) {
        return Err(Error::NotNormal);
    }
    let (generators, tangent_basis) = tangent_generators(model, v);
    let m = generators.len();
    let gram = gram_of(&tangent_basis, model.p_gram());
    let gxi = model.p_gram().mul_vec(xi);
    let form = Mat::from_fn(m, m, |i, j| {
        let w = model.bracket_kp(&model.k_unit(generators[i]), &tangent_basis[j]);
        dot(&w, &gxi)
    });
    let matrix = gram.inverse()?.mul(&form);
    Ok(ShapeOperator { generators, tangent_basis, gram, form, matrix })
}

#[derive(Clone, Debug)]
pub enum SliceInput<'a> {
    /// A triple system `W`; acts by `k′ = [W, W]` on `W^⊥`.
    Lts(&'a Subspace<Q>),
    /// A nonzero vector; acts by `k_v` on `ν_v(K.v) = C(v)`.
    Vector(&'a [Q]),
}

#[derive(Clone, Debug)]
pub struct SliceData {
    pub acting_algebra: Subspace<Q>,
    pub normal: Subspace<Q>,
    pub image_dim: usize,
    pub trivial: bool,
    pub transitive_on_sphere: bool,
    /// Orbit dimensions of the image at the two sampled normals.
    pub orbit_dims: Vec<usize>,
}

pub fn slice_representation(model: &SymmetricSpaceModel, input: SliceInput<'_>, seed: u64) -> Result<SliceData> {
    let (acting, normal) = match input {
        SliceInput::Lts(w) => {
            model.check_p_subspace(w)?;
            if !triple::is_lts(model, w)? {
                return Err(Error::NotLts);
            }
            (model.bracket_span(w), w.orthocomplement(model.p_gram())?)
        }
        SliceInput::Vector(v) => {
            model.check_p(v)?;
            if is_zero_vec(v) {
                return Err(Error::ZeroVector);
            }
            (flats::stabilizer(model, v), triple::centralizer(model, v)?)
        }
    };
    let image_dim = flats::image_dim_on(model, &acting, &normal);
    let mut rng = par::rng(seed);
    let mut orbit_dims = Vec::new();
    let mut transitive = normal.dim() >= 2 && image_dim > 0;
    if transitive {
        for _ in 0..2 {
            let xi = loop {
                let x = normal.random_element(&mut rng, 10);
                if !is_zero_vec(&x) {
                    break x;
                }
            };
            let images: Vec<Vec<Q>> = acting.basis().iter().map(|x| model.bracket_kp(x, &xi)).collect();
            let d = Subspace::span(model.dim_p(), &images)?.dim();
            orbit_dims.push(d);
            transitive &= d == normal.dim() - 1;
        }
    }
    Ok(SliceData { acting_algebra: acting, normal, image_dim, trivial: image_dim == 0, transitive_on_sphere: transitive, orbit_dims })
}

/// Reflection `τ` in `ν_v(K.v)` normalizes `ad_p(k)`, i.e. `τ(K.v) = K.v`.
pub fn symmetric_submanifold_test(model: &SymmetricSpaceModel, v: &[Q]) -> Result<bool> {
    let orbit = orbit_spaces(model, v)?;
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let dp = model.dim_p();
    let proj = Projector::new(model, &orbit.normal);
    let pn = Mat::from_cols(&(0..dp).map(|a| proj.project(&model.p_unit(a))).collect::<Vec<_>>(), dp);
    let tau = pn.scale(&Q::from_int(2)).sub(&Mat::identity(dp));
    let ads: Vec<Mat<Q>> = (0..model.dim_k()).map(|i| model.ad_k_on_p(&model.k_unit(i))).collect();
    let span = Subspace::span(dp * dp, &ads.iter().map(|m| m.as_slice().to_vec()).collect::<Vec<_>>())?;
    Ok(ads.iter().all(|a| span.contains(tau.mul(a).mul(&tau).as_slice())))
}

#[derive(Clone, Debug)]
pub struct CurvatureData {
    /// Curvature normals in `p` coordinates.
    pub normals: Vec<Vec<f64>>,
    pub multiplicities: Vec<usize>,
    pub g: usize,
    pub m: usize,
    pub spans_flat: bool,
    /// Eigenvalue multiplicities confirmed over `Q` by square-free factorization.
    pub exact_confirmed: bool,
    /// `2 rank + 1 ≤ dim p`.
    pub inequality_holds: bool,
}

impl CurvatureData {
    /// Angle in degrees between normals `i` and `j` under the inner product on `p`.
    pub fn angle(&self, model: &SymmetricSpaceModel, i: usize, j: usize) -> f64 {
        let g = model.p_gram_f64();
        let ip = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(g.mul_vec(b)).map(|(x, y)| x * y).sum() };
        let (a, b) = (&self.normals[i], &self.normals[j]);
        (ip(a, b) / (ip(a, a) * ip(b, b)).sqrt()).clamp(-1.0, 1.0).acos().to_degrees()
    }
}

/// Simultaneous diagonalization of `{A_ξ : ξ ∈ C(v)}` for regular `v`.
pub fn curvature_normals(model: &SymmetricSpaceModel, v: &[Q]) -> Result<CurvatureData> {
    model.check_p(v)?;
    if is_zero_vec(v) || !flats::is_regular(model, v)? {
        return Err(Error::NotRegular);
    }
    let flat = triple::centralizer(model, v)?;
    let shapes: Vec<ShapeOperator> = flat.basis().iter().map(|xi| shape_operator(model, v, xi)).collect::<Result<_>>()?;
    let m = shapes[0].gram.rows();
    let (l_inv, _) = shapes[0].orthonormalizer();
    let sym: Vec<DMatrix<f64>> =
        shapes.iter().map(|s| &l_inv * numeric::to_dmatrix(&s.form.to_f64()) * l_inv.transpose()).collect();
    let mut rng = par::rng(0xC0DE);
    let weights: Vec<f64> = (0..sym.len()).map(|_| rand::Rng::random_range(&mut rng, 0.5..1.5)).collect();
    let mut generic = DMatrix::zeros(m, m);
    for (w, s) in weights.iter().zip(&sym) {
        generic += s * *w;
    }
    let (vals, vecs) = numeric::sym_eigen(&generic);
    let scale = vals.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let flat_gram = numeric::to_dmatrix(&gram_of(flat.basis(), model.p_gram()).to_f64());
    let flat_gram_inv = flat_gram.clone().try_inverse().expect("flat gram is definite");
    let mut normals = Vec::new();
    let mut multiplicities = Vec::new();
    for range in numeric::cluster(&vals, flats::CLUSTER_TOL * scale) {
        let u = vecs.columns(range.start, range.len()).into_owned();
        // ⟨η, ξ_j⟩ = eigenvalue of A_{ξ_j} on this common eigenspace.
        let lambda = DVector::from_iterator(sym.len(), sym.iter().map(|s| (u.transpose() * s * &u).trace() / range.len() as f64));
        let coords = &flat_gram_inv * lambda;
        let mut eta = vec![0.0; model.dim_p()];
        for (c, b) in coords.iter().zip(flat.basis()) {
            for (e, x) in eta.iter_mut().zip(b) {
                *e += c * x.to_f64();
            }
        }
        normals.push(eta);
        multiplicities.push(range.len());
    }
    let g = normals.len();
    let spans = DMatrix::from_fn(model.dim_p(), g, |i, j| normals[j][i]);
    let spans_flat = numeric::numerical_rank(&spans, 1e-8) == flat.dim();
    let exact_confirmed = confirm_exact(model, v, &flat, &multiplicities);
    Ok(CurvatureData {
        normals,
        multiplicities,
        g,
        m,
        spans_flat,
        exact_confirmed,
        inequality_holds: 2 * model.rank() + 1 <= model.dim_p(),
    })
}

/// Compares the float multiplicities with the square-free factorization of
/// the characteristic polynomial of `A_ξ` for integer `ξ` in the flat.
fn confirm_exact(model: &SymmetricSpaceModel, v: &[Q], flat: &Subspace<Q>, mult: &[usize]) -> bool {
    let mut want = mult.to_vec();
    want.sort_unstable_by(|a, b| b.cmp(a));
    let mut rng = par::rng(0xFACE);
    for _ in 0..10 {
        let xi = flat.random_element(&mut rng, 20);
        let Ok(shape) = shape_operator(model, v, &xi) else { continue };
        let prof = poly::multiplicity_profile(&poly::char_poly(&shape.matrix));
        if prof == want {
            return true;
        }
    }
    false
}

/// `(dim [k′, v], dim [k, v], strict)` with `k′ = [W, W]`.
pub fn suborbit_dimension_check(model: &SymmetricSpaceModel, w: &Subspace<Q>, v: &[Q]) -> Result<(usize, usize, bool)> {
    model.check_p(v)?;
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    if !triple::is_lts(model, w)? {
        return Err(Error::NotLts);
    }
    if !w.contains(v) {
        return Err(Error::NotInSubspace);
    }
    let kk = model.bracket_span(w);
    let images: Vec<Vec<Q>> = kk.basis().iter().map(|x| model.bracket_kp(x, v)).collect();
    let d_sub = Subspace::span(model.dim_p(), &images)?.dim();
    let d = tangent_space(model, v).dim();
    Ok((d_sub, d, d_sub < d))
}

#[derive(Clone, Debug)]
pub struct FocalWitness {
    pub xi: Vec<f64>,
    pub dim_before: usize,
    pub dim_after: usize,
    /// The rationalized `ξ` reproduces the jump in exact arithmetic.
    pub exact: bool,
}

/// For `v` whose normal abelian part `V` (the abelian part of `C(v)`) has
/// dimension at least 2, finds `ξ ∈ V` with `C(v) ⊊ C(v + ξ)`: `v + ξ` is
/// moved onto the kernel of a root that does not vanish at `v`.
pub fn focal_extension(model: &SymmetricSpaceModel, v: &[Q], seed: u64) -> Result<Option<FocalWitness>> {
    model.check_p(v)?;
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let c = triple::centralizer(model, v)?;
    let ab = triple::commuting_part(model, &c);
    if ab.dim() < 2 {
        return Ok(None);
    }
    let mut rng = par::rng(seed);
    let flat: Flat = flats::flat_through(model, v, &mut rng)?;
    let roots = flats::restricted_roots(model, &flat)?;
    let vf = to_f64_vec(&flat.subspace.coords(v));
    let fg = numeric::to_dmatrix(&roots.flat_gram);
    let fg_inv = fg.clone().try_inverse().expect("flat gram is definite");
    // Orthonormal basis of V in flat coordinates (under the flat gram).
    let ab_coords: Vec<DVector<f64>> =
        ab.basis().iter().map(|b| DVector::from_vec(to_f64_vec(&flat.subspace.coords(b)))).collect();
    let lchol = nalgebra::Cholesky::new(fg.clone()).expect("definite").l();
    let to_orth = lchol.transpose();
    let from_orth = to_orth.clone().try_inverse().expect("invertible");
    let orth: Vec<DVector<f64>> = numeric::orthonormal_span(&ab_coords.iter().map(|c| &to_orth * c).collect::<Vec<_>>(), 1e-9);
    let vnorm = vf.iter().map(|x| x.abs()).fold(0.0, f64::max);
    for root in &roots.roots {
        let beta = DVector::from_column_slice(&root.values);
        let bv: f64 = beta.dot(&DVector::from_column_slice(&vf));
        if bv.abs() <= 1e-8 * vnorm * beta.amax() {
            continue;
        }
        // β^♯ in orthonormal coordinates, projected onto V.
        let sharp = &to_orth * (&fg_inv * &beta);
        let mut h = DVector::zeros(sharp.len());
        for o in &orth {
            h += o * o.dot(&sharp);
        }
        let h_flat = &from_orth * h;
        let bh = beta.dot(&h_flat);
        if bh.abs() < 1e-12 {
            continue;
        }
        let xi_flat = h_flat * (-bv / bh);
        let mut xi = vec![0.0; model.dim_p()];
        for (cf, b) in xi_flat.iter().zip(flat.subspace.basis()) {
            for (x, bb) in xi.iter_mut().zip(b) {
                *x += cf * bb.to_f64();
            }
        }
        let vx: Vec<f64> = to_f64_vec(v).iter().zip(&xi).map(|(a, b)| a + b).collect();
        let after = flats::centralizer_f64(model, &vx).ncols();
        if after > c.dim() {
            let exact = xi
                .iter()
                .map(|x| rationalize(*x, 10_000, 1e-9))
                .collect::<Option<Vec<Q>>>()
                .is_some_and(|xq| {
                    let sum: Vec<Q> = v.iter().zip(&xq).map(|(a, b)| a + b).collect();
                    ab.contains(&xq)
                        && triple::centralizer(model, &sum).is_ok_and(|c2| c2.dim() > c.dim() && c.is_subspace_of(&c2))
                });
            return Ok(Some(FocalWitness { xi, dim_before: c.dim(), dim_after: after, exact }));
        }
    }
    Ok(None)
}
