use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// are reported through [`crate::report::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular lattice basis")]
    SingularBasis,
    #[error("the zero function has no eigenvalues")]
    ZeroFunction,
    #[error("an eigenfamily needs at least one member")]
    EmptyFamily,
    #[error("functions live on different lattices")]
    LatticeMismatch,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("x_1^2 - 1 is reducible; the sphere needs ambient dimension >= 2, got {0}")]
    ReducibleQuadric(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
