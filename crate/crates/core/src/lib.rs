//! Exact computations on Riemannian symmetric spaces of noncompact type.
//!
//! A space is modelled by a real semisimple Lie algebra `g` with a Cartan
//! involution, `g = k ⊕ p`. Totally geodesic submanifolds through the base
//! point correspond to Lie triple systems in `p`; the modules here check
//! that condition exactly, compute ranks and flats, study isotropy orbits,
//! search numerically for triple systems of small codimension, and read and
//! write certificates for the results.

pub mod algebra;
pub mod cartan;
pub mod catalog;
pub mod cert;
pub mod error;
pub mod flats;
pub mod linalg;
pub mod model;
pub mod numeric;
pub mod orbits;
pub mod par;
pub mod poly;
pub mod scalar;
pub mod search;
pub mod triple;

pub use algebra::{BilinearForm, LieAlgebra};
pub use cartan::{cartan_decompose, CartanDecomposition};
pub use catalog::{build_space, catalog_invariants, Family};
pub use error::{Error, Result};
pub use linalg::{Mat, Subspace};
pub use model::SymmetricSpaceModel;
pub use scalar::{Scalar, Q};
