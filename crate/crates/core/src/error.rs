use thiserror::Error;

/// Errors shared across the representation builders, solvers and kernels.
#[derive(Debug, Clone, Error)]
pub enum QhError {
    #[error("invalid dimension {dim}: {msg}")]
    InvalidDimension { dim: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires representation kind {expected}, got {found}")]
    WrongRepKind { expected: String, found: String },

    #[error("tensor product dimension {dim} exceeds cap {cap}")]
    DimensionOverflow { dim: usize, cap: usize },

    #[error("matrix exponential rejected: norm {norm:.3e} exceeds cap {cap:.3e}")]
    ExponentialOverflow { norm: f64, cap: f64 },

    #[error("eta is numerically singular (condition estimate {cond:.3e})")]
    SingularEta { cond: f64 },

    #[error("arctanh argument {arg:.6} outside (-1, 1); no solution in this family")]
    ArctanhDomain { arg: f64 },

    #[error("no solution in family: {0}")]
    NoSolutionInFamily(String),

    #[error("degenerate family denominator: {0}")]
    DegenerateFamily(String),

    #[error("counterpart coefficients are complex: {0}")]
    ComplexCounterpart(String),

    #[error("family inapplicable: {0}")]
    FamilyInapplicable(String),

    #[error("the yz = -1 Bogoliubov branch is excluded")]
    YzMinusOne,

    #[error("eigensolver failed to converge after {iters} iterations")]
    EigNonConvergence { iters: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, QhError>;
