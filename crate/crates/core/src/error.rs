use thiserror::Error;

/// Coarse classification used by front-ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller supplied malformed data.
    Input,
    /// Well-formed data that violates a hypothesis of the requested computation.
    Precondition,
    /// An internal consistency check failed.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("morphism is not simple: {0}")]
    NotSimple(String),

    #[error("chart morphism must be diagonal with positive entries")]
    NotDiagonal,

    #[error("{value} has no {order}-th root in {field}")]
    NoRoot { value: String, order: u64, field: String },

    #[error("root order {order} is not invertible in {field}")]
    OrderNotInvertible { order: u64, field: String },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown component `{0}`")]
    UnknownComponent(String),

    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("enumeration bound {0} is too small to contain an invariant generator")]
    BoundTooSmall(u64),

    #[error("divisor is not ample: total degree {0} is not positive")]
    NotAmple(String),

    #[error("fractional part of E is supported on {0}, which is outside the boundary")]
    FractionalSupportOutsideBoundary(String),

    #[error("root order {order} divides coefficient {coefficient} on component {component}")]
    RootOrderDividesCoefficient { component: usize, order: u64, coefficient: i64 },

    #[error("unequal root orders are not supported by the global quotient model")]
    UnequalRootOrders,

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("cocycle condition fails for charts ({0}, {1}, {2})")]
    CocycleFailure(usize, usize, usize),

    #[error("transition entry is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("restriction leaves the regular sections: {0}")]
    IrregularRestriction(String),

    #[error("d∘d ≠ 0 at weight {0:?}")]
    NonZeroSquare(Vec<i64>),

    #[error("Euler characteristic of the weight complex at {0:?} disagrees with its cohomology")]
    EulerMismatch(Vec<i64>),

    #[error("weight {weight:?} on the boundary shell of bound {bound} has nonzero cohomology")]
    WeightBound { weight: Vec<i64>, bound: i64 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            DimensionMismatch { .. }
            | InvalidField(_)
            | InvalidInput(_)
            | UnknownComponent(_)
            | IndexOutOfRange { .. } => ErrorKind::Input,
            NotSimple(_)
            | NotDiagonal
            | NoRoot { .. }
            | OrderNotInvertible { .. }
            | BoundTooSmall(_)
            | NotAmple(_)
            | FractionalSupportOutsideBoundary(_)
            | RootOrderDividesCoefficient { .. }
            | UnequalRootOrders
            | Unsupported(_) => ErrorKind::Precondition,
            CocycleFailure(..)
            | Inhomogeneous(_)
            | IrregularRestriction(_)
            | NonZeroSquare(_)
            | EulerMismatch(_)
            | WeightBound { .. } => ErrorKind::Internal,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
