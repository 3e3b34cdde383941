use thiserror::Error;

use crate::report::VerificationReport;

/// Which carrier of a tuple an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Carrier {
    X,
    A,
    B,
}

impl std::fmt::Display for Carrier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Carrier::X => "X",
            Carrier::A => "A",
            Carrier::B => "B",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table is empty")]
    Empty,
    #[error("entry {value} at ({i},{j}) is out of range for a table of size {size}")]
    IndexOutOfRange { i: usize, j: usize, value: usize, size: usize },
    #[error("index 0 is not a two-sided identity: witness element {witness}")]
    NotIdentity { witness: usize },
    #[error("operation is not associative: ({i}+{j})+{k} != {i}+({j}+{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("map has {got} values but its domain has {expected} elements")]
    MapLength { expected: usize, got: usize },
    #[error("map value {value} at position {index} is out of range for a codomain of size {size}")]
    MapValueOutOfRange { index: usize, value: usize, size: usize },
    #[error("map does not send the identity to the identity")]
    NotPointed,
    #[error("map is not a homomorphism: f({i}+{j}) != f({i})+f({j})")]
    NotHomomorphism { i: usize, j: usize },
    #[error("domain mismatch between composed or added maps")]
    DomainMismatch,
    #[error("codomain mismatch")]
    CodomainMismatch,
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("size {size} exceeds the enumeration limit of {limit}")]
    SizeTooLarge { size: usize, limit: usize },
    #[error("carrier {0} is not a group")]
    NotAGroup(Carrier),
    #[error("section does not split: p(s({witness})) != {witness}")]
    SectionNotSplitting { witness: usize },
    #[error("image of k differs from the kernel of p (witness {witness})")]
    KernelMismatch { witness: usize },
    #[error("no preimage under k for a - s(p(a)) with a = {witness}")]
    PreimageNotFound { witness: usize },
    #[error("middle monoid of the second tuple differs from the base of the first")]
    MiddleMismatch,
    #[error("invalid action system: {0}")]
    InvalidActionSystem(VerificationReport),
    #[error("invalid semibiproduct: {0}")]
    InvalidSemibiproduct(VerificationReport),
    #[error("unknown monoid name `{0}`")]
    UnknownMonoid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable kind, used in JSON failure output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::Empty => "Empty",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotIdentity { .. } => "NotIdentity",
            Error::NotAssociative { .. } => "NotAssociative",
            Error::LabelCount { .. } => "LabelCount",
            Error::MapLength { .. } => "MapLength",
            Error::MapValueOutOfRange { .. } => "MapValueOutOfRange",
            Error::NotPointed => "NotPointed",
            Error::NotHomomorphism { .. } => "NotHomomorphism",
            Error::DomainMismatch => "DomainMismatch",
            Error::CodomainMismatch => "CodomainMismatch",
            Error::CarrierMismatch(_) => "CarrierMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SizeTooLarge { .. } => "SizeTooLarge",
            Error::NotAGroup(_) => "NotAGroup",
            Error::SectionNotSplitting { .. } => "SectionNotSplitting",
            Error::KernelMismatch { .. } => "KernelMismatch",
            Error::PreimageNotFound { .. } => "PreimageNotFound",
            Error::MiddleMismatch => "MiddleMismatch",
            Error::InvalidActionSystem(_) => "InvalidActionSystem",
            Error::InvalidSemibiproduct(_) => "InvalidSemibiproduct",
            Error::UnknownMonoid(_) => "UnknownMonoid",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
