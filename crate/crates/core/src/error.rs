use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("vectors are linearly dependent")]
    DependentBasis,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),

    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),
    #[error("theta is not an involution")]
    NotAnInvolution,
    #[error("theta is not an automorphism: fails on basis pair ({0}, {1})")]
    NotAnAutomorphism(usize, usize),
    #[error("-B(X, theta Y) is not positive definite; theta is not a Cartan involution")]
    FormNotPositiveDefinite,
    #[error("bracket inclusion violated: {0}")]
    InclusionFailure(&'static str),

    #[error("unknown space specifier {0:?}")]
    UnknownSpace(String),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("model invariant violated: {0}")]
    Invariant(String),

    #[error("subspace is not contained in p")]
    NotInP,
    #[error("subspace is not a Lie triple system")]
    NotLts,
    #[error("degenerate subspace: {0}")]
    Degenerate(&'static str),
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("vector is not regular")]
    NotRegular,
    #[error("vector is not normal to the orbit")]
    NotNormal,
    #[error("vector is not in the subspace")]
    NotInSubspace,
    #[error("trial budget of {budget} exhausted (largest intersection dimension seen: {max_intersection})")]
    BudgetExhausted { budget: usize, max_intersection: usize },
    #[error("joint action of the flat is not semisimple; the flat is invalid")]
    NonSemisimpleAction,

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("search accepted codimension {codim} below the rank {rank}")]
    RankFloorViolated { codim: usize, rank: usize },

    #[error("unknown certificate pair id {0:?}")]
    UnknownPair(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
