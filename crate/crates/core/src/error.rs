use alloc::string::String;
use core::fmt;

/// Errors raised by the core algebra.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The ambient group lies outside the family a computation supports.
    UnsupportedGroup(String),
    /// A torsion coefficient below 2 was supplied.
    InvalidTorsion(u64),
    /// A vector or matrix did not have the width of the ambient group.
    DimensionMismatch { expected: usize, found: usize },
    /// Two operands live over different ambient groups.
    GroupMismatch,
    /// A direction vector that is zero, not primitive or not lexicographically positive.
    InvalidDirection(i64, i64),
    /// A topology tag that does not belong to the ambient group's tag set.
    InvalidTag(String),
    /// A set of tags that is not hereditary and directed as a principal set.
    NotPrincipal(String),
    /// A tabulated map that violates the affine law.
    NotAffine(String),
    /// Pieces of a piecewise map that overlap or leave their cosets.
    InvalidPieces(String),
    /// A residue family that is not consistent.
    InconsistentResidues(String),
    /// A character evaluation needs residues modulo `needed` but the point only carries `available`.
    InsufficientPrecision { needed: u64, available: u64 },
    /// A point outside the domain of a piecewise map.
    OutsideDomain,
    /// A norm enclosure could not be certified to the requested width.
    PrecisionFailure { lo: f64, hi: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedGroup(g) => write!(f, "unsupported group: {g}"),
            Error::InvalidTorsion(d) => write!(f, "torsion coefficient {d} must be at least 2"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            Error::OutsideDomain => write!(f, "point lies outside the domain of the map"),
            Error::GroupMismatch => write!(f, "operands live over different groups"),
            Error::InvalidDirection(a, b) => write!(
                f,
                "({a},{b}) is not a primitive lexicographically positive direction"
            ),
            Error::InvalidTag(t) => write!(f, "invalid topology tag: {t}"),
            Error::NotPrincipal(msg) => write!(f, "not a hereditary directed set: {msg}"),
            Error::NotAffine(msg) => write!(f, "map is not affine: {msg}"),
            Error::InvalidPieces(msg) => write!(f, "invalid pieces: {msg}"),
            Error::InconsistentResidues(msg) => write!(f, "inconsistent residues: {msg}"),
            Error::InsufficientPrecision { needed, available } => write!(
                f,
                "precision {available} does not determine residues modulo {needed}"
            ),
            Error::PrecisionFailure { lo, hi } => write!(
                f,
                "could not certify norm to width 1e-9; achieved [{lo:e}, {hi:e}]"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
