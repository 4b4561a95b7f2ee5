use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range [2, 2^62)")]
    ModulusOutOfRange(u64),
    #[error("{t} does not divide p-1 = {order}")]
    NotADivisor { t: u64, order: u64 },
    #[error("coset representative must be nonzero")]
    ZeroRepresentative,
    #[error("polynomials live over different fields (p = {0} vs p = {1})")]
    ModulusMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("multiplicity at a point is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse polynomial text {text:?}: {reason}")]
    PolyParse { text: String, reason: String },
    #[error("invalid polynomial system: {0}")]
    InvalidSystem(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("linear system has only the trivial solution")]
    TrivialKernel,
    #[error("deg Psi bound {bound} is not below p = {p}")]
    DegreeOverflow { bound: u64, p: u64 },
    #[error("certificate polynomial is identically zero")]
    ZeroPsi,
    #[error("family of {0} polynomials exceeds the Wronskian size limit")]
    FamilyTooLarge(usize),
    #[error("empty polynomial family")]
    EmptyFamily,
    #[error("p = {0} is too large for exhaustive enumeration")]
    FieldTooLarge(u64),
    #[error("shift values must be distinct and nonzero")]
    InvalidShifts,
    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("{0}")]
    Precondition(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
