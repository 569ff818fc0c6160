use alloc::string::String;
use core::fmt;

/// An `i64` coefficient overflowed during exact arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

impl fmt::Display for Overflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("integer coefficient overflow")
    }
}

impl core::error::Error for Overflow {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Overflow,
    /// A level was requested that the finite graph does not contain.
    LevelOutOfRange {
        level: usize,
        levels: usize,
    },
    /// The down operator was applied to a level-0 combination.
    DownFromLevelZero,
    LevelMismatch {
        expected: usize,
        found: usize,
    },
    VertexOutOfRange {
        level: usize,
        index: usize,
        size: usize,
    },
    /// Level 0 must be the singleton source for path enumeration.
    NoUniqueMinimum {
        size: usize,
    },
    /// Edge weight that is zero or has a negative coefficient.
    InvalidWeight {
        level: usize,
        source: usize,
        target: usize,
    },
    DuplicateEdge {
        level: usize,
        source: usize,
        target: usize,
    },
    DuplicateVertex {
        level: usize,
        key: String,
    },
    /// The two graphs of a pair disagree on their vertex levels.
    MismatchedLevels,
    /// Input to q-reflection does not satisfy the relation below its top level.
    NotPartialQDGG {
        failures: usize,
    },
    ArgumentOutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },
    Empty(&'static str),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow => f.write_str("integer coefficient overflow"),
            Error::LevelOutOfRange { level, levels } => {
                write!(f, "level {level} out of range (graph has {levels} levels)")
            }
            Error::DownFromLevelZero => f.write_str("down operator applied at level 0"),
            Error::LevelMismatch { expected, found } => {
                write!(f, "level mismatch: expected {expected}, found {found}")
            }
            Error::VertexOutOfRange { level, index, size } => {
                write!(
                    f,
                    "vertex {index} out of range at level {level} (size {size})"
                )
            }
            Error::NoUniqueMinimum { size } => {
                write!(
                    f,
                    "level 0 has {size} vertices; a unique minimum is required"
                )
            }
            Error::InvalidWeight {
                level,
                source,
                target,
            } => write!(
                f,
                "edge ({level}:{source} -> {}:{target}) has a weight outside N[q] \\ {{0}}",
                level + 1
            ),
            Error::DuplicateEdge {
                level,
                source,
                target,
            } => write!(
                f,
                "duplicate edge ({level}:{source} -> {}:{target})",
                level + 1
            ),
            Error::DuplicateVertex { level, key } => {
                write!(f, "duplicate vertex key {key:?} at level {level}")
            }
            Error::MismatchedLevels => {
                f.write_str("graphs of the pair have different vertex levels")
            }
            Error::NotPartialQDGG { failures } => write!(
                f,
                "input is not a partial qDGG ({failures} vertices violate DU - qUD = rI)"
            ),
            Error::ArgumentOutOfRange { what, value, max } => {
                write!(f, "{what} = {value} out of range (max {max})")
            }
            Error::Empty(what) => write!(f, "operation requires a nonempty {what}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<Overflow> for Error {
    fn from(_: Overflow) -> Self {
        Error::Overflow
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
