//! Crate-wide error type.

use std::fmt;

/// Errors raised by tree, lattice, grove, partition and operad operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands must have equal degree / size.
    DegreeMismatch(usize, usize),
    /// Operation requires degree >= 1.
    ZeroDegree(&'static str),
    /// Vector fails the coordinate bounds 1 <= v_i <= i.
    InvalidCandidate(String),
    /// Vector is bounds-valid but does not name a tree.
    NotAName(String),
    /// Möbius / path count asked for an incomparable pair.
    NotComparable,
    /// Operation is undefined on the empty grove.
    EmptyGrove(&'static str),
    /// Groves must be degree-homogeneous, non-empty sets.
    MalformedGrove(String),
    /// `(0) -| (0)` and `(0) |- (0)` are undefined.
    UndefinedOnUnits(&'static str),
    /// Block list is not a valid noncrossing partition of 1..n.
    InvalidPartition(String),
    /// Module word length does not match the partition / arity.
    WordLength { expected: usize, got: usize },
    /// Composition slot index out of range.
    SlotOutOfRange { slot: usize, arity: usize },
    /// Word exceeds the bound a moment table is total on.
    BeyondBound { len: usize, bound: usize },
    /// Malformed textual input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeMismatch(a, b) => write!(f, "degree mismatch: {a} vs {b}"),
            Error::ZeroDegree(op) => write!(f, "{op}: degree must be >= 1"),
            Error::InvalidCandidate(s) => write!(f, "invalid candidate vector: {s}"),
            Error::NotAName(s) => write!(f, "not the name of a tree: {s}"),
            Error::NotComparable => write!(f, "elements are not comparable"),
            Error::EmptyGrove(op) => write!(f, "{op}: undefined on the empty grove"),
            Error::MalformedGrove(s) => write!(f, "malformed grove: {s}"),
            Error::UndefinedOnUnits(op) => write!(f, "{op}: undefined on a pair of degree-0 units"),
            Error::InvalidPartition(s) => write!(f, "invalid noncrossing partition: {s}"),
            Error::WordLength { expected, got } => {
                write!(f, "module word length {got}, expected {expected}")
            }
            Error::SlotOutOfRange { slot, arity } => {
                write!(f, "composition slot {slot} out of range for arity {arity}")
            }
            Error::BeyondBound { len, bound } => {
                write!(f, "word of length {len} exceeds table bound {bound}")
            }
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
