use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants fall into three families that front ends map to distinct
/// exit statuses: malformed input, mathematically degenerate input, and
/// violated internal invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate modulus: norm of {0} vanishes")]
    DegenerateModulus(String),
    #[error("pole: denominator vanishes at the given point")]
    Pole,
    #[error("undeclared generator '{0}'")]
    UndeclaredGenerator(char),
    #[error("{0}")]
    Input(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("inconsistent seed: {0}")]
    InconsistentSeed(String),
    #[error("degenerate character: {0}")]
    DegenerateCharacter(String),
    #[error("degenerate boundary: {0}")]
    DegenerateBoundary(String),
    #[error("parabolic boundary: {0}")]
    ParabolicBoundary(String),
    #[error("non-regular point: {0}")]
    NonRegularPoint(String),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("rank error: {0}")]
    Rank(String),
    #[error("convention error: {0}")]
    Convention(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

/// Coarse classification used by front ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Degenerate,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            UnknownVariable(_) | UndeclaredGenerator(_) | Input(_) | InconsistentInput(_)
            | InconsistentSeed(_) | Pole | RingMismatch(_) | Structural(_) => ErrorKind::Input,
            DivisionByZero | DegenerateModulus(_) | DegenerateCharacter(_)
            | DegenerateBoundary(_) | ParabolicBoundary(_) | NonRegularPoint(_) => {
                ErrorKind::Degenerate
            }
            InvalidBasis(_) | Rank(_) | Convention(_) | InvariantViolation(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
