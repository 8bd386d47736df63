use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("member {index} is singular")]
    Singular { index: usize },

    #[error("zero eigenvalue in spectrum {spectrum}")]
    ZeroEigenvalue { spectrum: usize },

    #[error("common eigenvalue {values:?} shared by every spectrum")]
    CommonEigenvalue { values: Vec<String> },

    #[error("members {i} and {j}: A_i A_j^-1 is not a pseudo-reflection")]
    NotPseudoReflection { i: usize, j: usize },

    #[error("matrix is not a pseudo-reflection (rank(h - I) = {rank})")]
    NotAPseudoReflection { rank: usize },

    #[error("{value} is not an eigenvalue of member {index}")]
    NotCommonEigenvalue { value: String, index: usize },

    #[error("subspace is not invariant under member {index}")]
    NotInvariant { index: usize },

    #[error("subspace of dimension {dim} in dimension {ambient} is not a proper nonzero subspace")]
    TrivialSubspace { dim: usize, ambient: usize },

    #[error("no root of {poly} lies in the working cyclotomic field Q(zeta_{conductor})")]
    RootOutsideField { poly: String, conductor: u64 },

    #[error("Krylov chain degenerate: intersection has dimension {dim}, expected 1 (members would share an eigenvalue)")]
    KrylovDegenerate { dim: usize },

    #[error("members do not share their first n-1 columns: member {member} differs at ({row}, {col})")]
    SharedColumns { member: usize, row: usize, col: usize },

    #[error("shared frame verification failed: {0}")]
    FrameVerification(String),

    #[error("product of the members is not the identity")]
    ProductNotIdentity,

    #[error("exponent difference a_{i} - b_{j} is an integer")]
    IntegerExponentDifference { i: usize, j: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for errors caused by malformed or mis-shaped input rather than by
    /// a mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::Shape(_) | Error::NotSquare { .. } | Error::InvalidSize(_)
        )
    }
}
