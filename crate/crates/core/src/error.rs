use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension {0} is not supported (expected 2 or 4)")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NonHermitian(f64),
    #[error("trace {0} differs from 1")]
    InvalidTrace(f64),
    #[error("matrix is not positive semi-definite (eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("function undefined on eigenvalue {0}")]
    DomainError(f64),
    #[error("Renyi order must be positive and different from 1, got {0}")]
    InvalidAlpha(f64),
    #[error("|nu| = {0} lies outside the unit disc")]
    InvalidNu(f64),
    #[error("monopole axis must be a unit vector (norm {0})")]
    InvalidAxis(f64),
    #[error("Kraus operators are not complete (deviation {0:.3e})")]
    IncompleteKraus(f64),
    #[error("smeared two-point value must be non-negative, got {0}")]
    NegativeW(f64),
    #[error("invalid probability {0}: expected a value in (1/2, 1]")]
    InvalidProbability(f64),
    #[error("inverse temperature must be positive, got {0}")]
    InvalidBeta(f64),
    #[error("invalid smearing profile: {0}")]
    InvalidProfile(String),
    #[error("quadrature did not converge: estimate {estimate}, error {error:.3e} after {subdivisions} subdivisions")]
    QuadratureNoConvergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },
    #[error("squeezing data give a negative two-point value {0}")]
    InconsistentSqueezing(f64),
    #[error("input state is not supported on the support of the reference state")]
    SupportViolation,
    #[error("Fock truncation too small: tail population {tail:.3e} at N = {dim}")]
    TruncationTooSmall { dim: usize, tail: f64 },
    #[error("polarization {0} outside [-1, 1]")]
    InvalidPolarization(f64),
}
