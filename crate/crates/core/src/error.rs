use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one of the CLI exit
/// classes through [`Error::exit_class`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial has no nonzero coefficient")]
    EmptyPolynomial,
    #[error("series has zero constant term and cannot be inverted")]
    NonUnitConstantTerm,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("weight {k} is not admissible for level {level}")]
    ParityError { level: String, k: u32 },
    #[error("generators for level {level} weight {k} are linearly dependent (rank {rank} < {expected})")]
    DependentGenerators {
        level: String,
        k: u32,
        rank: usize,
        expected: usize,
    },
    #[error("operator does not preserve the space: nonzero residual at column {column}, q-coefficient {coefficient}")]
    ResidualNonzero { column: usize, coefficient: usize },
    #[error("no unique eigenvalue of slope {0}")]
    NoUniqueSlope(String),
    #[error("eigenvalue of slope {0} is not rational")]
    IrrationalEigenvalue(String),
    #[error("Hecke polynomial has a repeated root")]
    RepeatedRoot,
    #[error("weight character k=2, m=0 is the centre of weight space (w = 0)")]
    CenterOfWeightSpace,
    #[error("weight character {0} is not in the boundary annulus")]
    NotInBoundary(String),
    #[error("slope {slope} is not an integral multiple of v(w) = {wval}")]
    NonIntegralIndex { slope: String, wval: String },
    #[error("point is not potentially crystalline")]
    NotPotentiallyCrystalline,
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("fixture {0} does not match its oracle")]
    FixtureMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitClass {
    Precondition,
    Verification,
    Internal,
}

impl Error {
    pub fn exit_class(&self) -> ExitClass {
        use Error::*;
        match self {
            DependentGenerators { .. } | ResidualNonzero { .. } => ExitClass::Internal,
            FixtureMismatch(_) => ExitClass::Verification,
            Io(_) => ExitClass::Internal,
            _ => ExitClass::Precondition,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
