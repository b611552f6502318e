use thiserror::Error;

/// Precondition and usage failures. Verification outcomes (a geometry
/// failing an axiom, a parameter set failing a divisibility test) are not
/// errors; they are returned as data with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("field with {0} elements exceeds the supported size (max 256)")]
    FieldTooLarge(u64),
    #[error("division by zero in GF({0})")]
    ZeroInverse(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("vector is zero; projective points need a nonzero representative")]
    ZeroVector,
    #[error("{0}")]
    BadParameter(String),
    #[error("map does not preserve the form: {0}")]
    FormNotPreserved(String),
    #[error("unknown group preset '{0}'")]
    UnknownPreset(String),
    #[error("geometry is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("invalid geometry file: {0}")]
    BadGeometryFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
