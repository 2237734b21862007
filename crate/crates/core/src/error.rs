use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("division by the zero series")]
    DivisionByZero,

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("indicial roots {0} and {1} differ by an integer; logarithmic solutions are not supported")]
    CongruentRoots(String, String),

    #[error("unsupported operator order {0}: unique Eisenstein operators exist only up to order 5")]
    UnsupportedOrder(usize),

    #[error("e(r1 - r2) is a primitive sixth root of unity; the representation is reducible")]
    ReducibilityBoundary,

    #[error("the -I relation admits no integer parity solution")]
    ParityUnsolvable,

    #[error("classification needs the T-determined assumption in dimension {0}")]
    NotTDetermined(usize),

    #[error("components are linearly dependent: {0}")]
    LinearlyDependent(String),

    #[error("Wronskian quotient has vanishing constant term")]
    CuspidalWronskianQuotient,

    #[error("vector is not divisible by Delta: {0}")]
    NotDeltaDivisible(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnsupportedOrder(_) | Error::NotTDetermined(_) => 3,
            Error::Internal(_) => 1,
            _ => 2,
        }
    }
}
