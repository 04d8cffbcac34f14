use crate::arith::Rational;
use thiserror::Error;

/// Domain errors. The variant name is what the command line reports.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid local model: {0}")]
    InvalidModel(String),
    #[error("invalid pair model: {0}")]
    InvalidPairModel(String),
    #[error("coordinate index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("({b}, {phase}) is not a twisted sector of this model")]
    NotASector { b: u32, phase: Rational },
    #[error("{0} is not a value of the ranking function")]
    NotInImage(Rational),
    #[error("H-power {d} out of range 0..={max}")]
    PowerOutOfRange { d: u32, max: u32 },
    #[error("a factor of the closed form vanished at coordinate {0}")]
    VanishingFactor(usize),
    #[error("repeated weight {0} in localization sum")]
    RepeatedWeight(Rational),
    #[error("improper insertion pair: descendant power {c} forces H-power {expected}, got {got}")]
    ImproperPair { c: u64, expected: u32, got: u32 },
    #[error("basis indices must be positive, got i={i}, j={j}")]
    BadBasisIndex { i: usize, j: usize },
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("insertion not in the declared basis: {0}")]
    NotInBasis(String),
    #[error("data not declared admissible")]
    NotAdmissible,
    #[error("contact order {contact} at `{sector}` has the wrong phase")]
    PhaseMismatch { sector: String, contact: Rational },
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("class pairing mismatch: class meets Z in {pairing}, contact orders sum to {contact}")]
    ContactMismatch { pairing: Rational, contact: Rational },
    #[error("class has dimension {got}, expected {expected}")]
    ClassDimension { expected: usize, got: usize },
    #[error("absolute datum outside the image of the correspondence: {0}")]
    OutOfImage(String),
    #[error("no exceptional sector over `{sector}` carries contact order {contact}")]
    NoSector { sector: String, contact: Rational },
    #[error("several exceptional sectors over `{sector}` carry contact order {contact}")]
    AmbiguousSector { sector: String, contact: Rational },
    #[error("ordering search needs {needed} components, limit is {limit}")]
    SearchLimit { limit: usize, needed: usize },
    #[error("cycle in the order among {0} data")]
    Cycle(usize),
    #[error("off-diagonal entry ({row}, {col}) is not strictly below the order")]
    OffdiagNotBelow { row: usize, col: usize },
    #[error("zero diagonal entry at {0}")]
    ZeroDiagonal(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short name used on the diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidModel(_) => "InvalidModel",
            Error::InvalidPairModel(_) => "InvalidPairModel",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotASector { .. } => "NotASector",
            Error::NotInImage(_) => "NotInImage",
            Error::PowerOutOfRange { .. } => "PowerOutOfRange",
            Error::VanishingFactor(_) => "VanishingFactor",
            Error::RepeatedWeight(_) => "RepeatedWeight",
            Error::ImproperPair { .. } => "ImproperPair",
            Error::BadBasisIndex { .. } => "BadBasisIndex",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::NotInBasis(_) => "NotInBasis",
            Error::NotAdmissible => "NotAdmissible",
            Error::PhaseMismatch { .. } => "PhaseMismatch",
            Error::InvalidData(_) => "InvalidData",
            Error::ContactMismatch { .. } => "ContactMismatch",
            Error::ClassDimension { .. } => "ClassDimension",
            Error::OutOfImage(_) => "OutOfImage",
            Error::NoSector { .. } => "NoSector",
            Error::AmbiguousSector { .. } => "AmbiguousSector",
            Error::SearchLimit { .. } => "SearchLimit",
            Error::Cycle(_) => "Cycle",
            Error::OffdiagNotBelow { .. } => "OffdiagNotBelow",
            Error::ZeroDiagonal(_) => "ZeroDiagonal",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
