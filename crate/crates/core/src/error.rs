use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// The CLI maps these onto exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over the prime field")]
    ReducibleModulus,
    #[error("degenerate modulus: {0}")]
    DegenerateModulus(String),
    #[error("extension degree {requested} exceeds cap {cap}")]
    ExtensionDegreeCapExceeded { requested: usize, cap: usize },
    #[error("scalar is not p-integral")]
    NotPIntegral,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("coefficient `{0}` is not in the field")]
    CoefficientNotInField(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("exact division by coordinate power failed")]
    DivisionMismatch,
    #[error("center does not lie over the origin: {0}")]
    CenterNotOverOrigin(String),
    #[error("center has already been blown up")]
    CenterAlreadyBlownUp,
    #[error("unknown tree node {0}")]
    UnknownNode(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("blow-up cap of {0} exceeded")]
    IterationCapExceeded(usize),
    #[error("incidence of lifted node {0} differs from the source tree")]
    IncidenceBroken(usize),
    #[error("no p-integral lift found up to degree {cap}")]
    DegreeCapExceeded { cap: usize },
    #[error("second center is not a rational point of the first exceptional divisor")]
    NonRationalSecondCenter,
    #[error("every ideal is the unit ideal at the origin")]
    AllUnits,
    #[error("lifted model could not be certified as a resolution: {0}")]
    Uncertified(String),
    #[error("input is already in characteristic zero")]
    CharacteristicZeroInput,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Process exit code used by the command line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ExtensionDegreeCapExceeded { .. }
            | Error::IterationCapExceeded(_)
            | Error::DegreeCapExceeded { .. } => 2,
            Error::IncidenceBroken(_) | Error::Verification(_) | Error::Uncertified(_) => 3,
            _ => 1,
        }
    }

    /// Short machine-readable tag for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ReducibleModulus => "ReducibleModulus",
            Error::DegenerateModulus(_) => "DegenerateModulus",
            Error::ExtensionDegreeCapExceeded { .. } => "ExtensionDegreeCapExceeded",
            Error::NotPIntegral => "NotPIntegral",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::CoefficientNotInField(_) => "CoefficientNotInField",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DivisionMismatch => "DivisionMismatch",
            Error::CenterNotOverOrigin(_) => "CenterNotOverOrigin",
            Error::CenterAlreadyBlownUp => "CenterAlreadyBlownUp",
            Error::UnknownNode(_) => "UnknownNode",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::IterationCapExceeded(_) => "IterationCapExceeded",
            Error::IncidenceBroken(_) => "IncidenceBroken",
            Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
            Error::NonRationalSecondCenter => "NonRationalSecondCenter",
            Error::AllUnits => "AllUnitsError",
            Error::Uncertified(_) => "Uncertified",
            Error::CharacteristicZeroInput => "CharacteristicZeroInput",
            Error::InvalidInput(_) => "InputError",
            Error::Verification(_) => "VerificationFailure",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
