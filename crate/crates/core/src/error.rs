use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero in ℚ(q)")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("quotient not finite-dimensional")]
    InfiniteQuotient,
    #[error("idempotent count undefined: algebra is not semisimple")]
    NotSemisimple,
    #[error("no augmentation: relation {0} has a nonzero constant term")]
    NoAugmentation(String),
    #[error("variable lists differ: {0}")]
    VariableMismatch(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("not semi-positive in the implemented family: m*n1 = {mn1} > n2+1 = {bound}")]
    NotSemiPositive { mn1: u32, bound: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("degenerate cone: facet normals span a lower-dimensional cone")]
    DegenerateCone,
    #[error("unbounded polytope")]
    UnboundedPolytope,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("critical family invalid: {0}")]
    CriticalFamilyInvalid(String),
    #[error("{path}: {source}")]
    Leaf { path: String, source: Box<GeometryError> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
