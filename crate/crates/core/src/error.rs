//! Crate-wide error type.

use std::fmt;

/// Errors raised by input validation and by identity checks.
///
/// The `Identity` variant is reserved for checks that are mathematically
/// guaranteed to hold; seeing it at runtime means an arithmetic bug, and it
/// carries the exact witness values for diagnosis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A q-parameter was 1 or -1, where the defining ratio degenerates.
    InvalidQ(String),
    /// A lambda of 0 was supplied where the diagonal conjugation needs an inverse.
    LambdaZero,
    /// Two matrices (or series) of different sizes were combined.
    SizeMismatch { left: usize, right: usize },
    /// Inner product of elements living in spaces with different deformation parameters.
    DeformationMismatch { left: String, right: String },
    /// Requested series degree is not covered by the available prefix.
    DegreeExceedsPrefix { degree: usize, len: usize },
    /// A prefix must contain at least one value.
    EmptyPrefix,
    /// A prefix shorter than the operation's minimum window.
    PrefixTooShort { len: usize, min: usize },
    /// An operation that requires finite support received a sequence not declared as such.
    FiniteSupportRequired,
    /// The Hardy coefficient map is only defined on the undeformed space.
    DeformationNotOne(String),
    /// Matrix entries do not fit any triangular orientation.
    NotTriangular,
    /// Truncation budget too small for the requested evaluation window.
    InsufficientTerms { terms: usize, min: usize },
    /// A rational literal failed to parse.
    ParseRational(String),
    /// A registry lookup (kernel, matrix, suite) found no such name or the
    /// wrong parameters for it.
    UnknownSelection(String),
    /// An exact identity failed; carries the first differing values.
    Identity {
        context: String,
        lhs: String,
        rhs: String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidQ(q) => write!(f, "q-parameter must differ from 1 and -1, got {q}"),
            Error::LambdaZero => write!(f, "lambda must be nonzero for diagonal conjugation"),
            Error::SizeMismatch { left, right } => {
                write!(f, "size mismatch: {left} vs {right}")
            }
            Error::DeformationMismatch { left, right } => {
                write!(f, "deformation mismatch: {left} vs {right}")
            }
            Error::DegreeExceedsPrefix { degree, len } => {
                write!(f, "degree {degree} needs a prefix longer than {len}")
            }
            Error::EmptyPrefix => write!(f, "prefix must contain at least one value"),
            Error::PrefixTooShort { len, min } => {
                write!(f, "prefix of length {len} is shorter than the minimum {min}")
            }
            Error::FiniteSupportRequired => {
                write!(f, "operation requires a sequence declared finitely supported")
            }
            Error::DeformationNotOne(l) => {
                write!(f, "operation requires deformation 1, got {l}")
            }
            Error::NotTriangular => write!(f, "matrix entries fit no triangular orientation"),
            Error::InsufficientTerms { terms, min } => {
                write!(f, "truncation at {terms} terms is below the minimum {min}")
            }
            Error::ParseRational(s) => write!(f, "invalid rational literal: {s:?}"),
            Error::UnknownSelection(s) => write!(f, "{s}"),
            Error::Identity { context, lhs, rhs } => {
                write!(f, "identity violated in {context}: {lhs} != {rhs}")
            }
        }
    }
}

impl std::error::Error for Error {}
