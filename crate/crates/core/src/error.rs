use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    BadModulus(String),
    #[error("field of order {0} is too large")]
    FieldTooLarge(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("extension degree {0} is not supported (1..=4)")]
    UnsupportedExtension(usize),
    #[error("degenerate Moebius map (ad - bc = 0)")]
    DegenerateMoebius,
    #[error("cross ratio needs four distinct points")]
    RepeatedPoints,
    #[error("rational function is constant")]
    ConstantFunction,
    #[error("expected degree 3, got {0}")]
    WrongDegree(usize),
    #[error("rational function is inseparable")]
    Inseparable,
    #[error("(s, t) is outside the parameter set t(1+s+t) != 0")]
    OutsideOmega,
    #[error("wrong class: {0}")]
    WrongClass(String),
    #[error("excluded argument: {0}")]
    Excluded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
