use std::fmt;

use thiserror::Error;

use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty sequence has no decomposition")]
    EmptySequence,

    #[error("not a score sequence: {0}")]
    NotAScoreSequence(LandauViolation),

    #[error("point {point} out of range for a sequence of length {len}")]
    PointOutOfRange { point: usize, len: usize },

    #[error(
        "point {point} is not in the last strong summand [{window_start}, {len}) (not in L_n)"
    )]
    NotInLastSummand {
        point: usize,
        window_start: usize,
        len: usize,
    },

    #[error("not an EGZ multiset: {0}")]
    NotEgz(String),

    #[error("subset has {found} elements, expected {expected}")]
    SubsetSize { expected: usize, found: usize },

    #[error("subset element {value} outside [1, {max}]")]
    SubsetRange { value: usize, max: usize },

    #[error("subset element {value} repeated")]
    SubsetDuplicate { value: usize },

    #[error("subset sum {sum} not divisible by {n}")]
    SubsetSum { sum: usize, n: usize },

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    AboveCap { n: usize, cap: usize },

    #[error("count table covers n <= {max_n}, needed {needed}")]
    TableTooShort { max_n: usize, needed: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    /// An invariant that the mathematics guarantees did not hold. Always a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// The first Landau condition a candidate sequence violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LandauViolation {
    /// `values[index]` is negative or above `n - 1`.
    OutOfRange { index: usize, value: i64, max: i64 },
    /// `values[index] < values[index - 1]`.
    Decreasing { index: usize },
    /// The prefix of length `k` sums to less than `k choose 2`.
    PrefixTooSmall { k: usize, sum: i64, required: i64 },
    /// The total is not `n choose 2`.
    WrongTotal { sum: i64, required: i64 },
}

impl fmt::Display for LandauViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LandauViolation::OutOfRange { index, value, max } => write!(
                f,
                "range condition: value {value} at position {index} is outside [0, {max}]"
            ),
            LandauViolation::Decreasing { index } => write!(
                f,
                "order condition: value at position {index} is smaller than its predecessor"
            ),
            LandauViolation::PrefixTooSmall { k, sum, required } => {
                write!(f, "prefix condition at k={k}: sum {sum} < {required}")
            }
            LandauViolation::WrongTotal { sum, required } => {
                write!(f, "total condition: sum {sum} \u{2260} {required}")
            }
        }
    }
}
