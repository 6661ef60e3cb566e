use alloc::string::String;
use core::fmt;

use crate::words::{Family, Generator};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Presentations need at least two strands.
    RankTooSmall(usize),
    /// A generator of the wrong family was supplied (e.g. `h1` to an origami operation).
    KindMismatch(Generator),
    /// A generator index outside `1..rank`.
    IndexOutOfRange { index: usize, rank: usize },
    /// Two diagrams or words of different rank were combined.
    RankMismatch { left: usize, right: usize },
    /// A token that is not `a<i>`, `b<i>`, `h<i>` or `1`.
    Parse(String),
    /// `normalize` hit its step cap.
    StepBudgetExceeded(usize),
    /// An operation needing a confluent system was given an incomplete one.
    NotComplete,
    /// Congruence enumeration exceeded its node cap.
    MemoryBudgetExceeded(usize),
    /// Regular-form extraction found no candidate for an element.
    NoCandidate(u32),
    /// An operation for one monoid family was handed a table of the other.
    WrongFamily { expected: Family, found: Family },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankTooSmall(n) => write!(f, "rank {n} is too small (need n >= 2)"),
            Error::KindMismatch(g) => write!(f, "generator {g} is not valid here"),
            Error::IndexOutOfRange { index, rank } => {
                write!(f, "generator index {index} out of range for rank {rank}")
            }
            Error::RankMismatch { left, right } => write!(f, "rank mismatch: {left} vs {right}"),
            Error::Parse(tok) => write!(f, "cannot parse token `{tok}`"),
            Error::StepBudgetExceeded(steps) => {
                write!(f, "rewriting did not terminate within {steps} steps")
            }
            Error::NotComplete => f.write_str("rewriting system is not complete"),
            Error::MemoryBudgetExceeded(cap) => {
                write!(f, "enumeration exceeded the cap of {cap} live classes")
            }
            Error::NoCandidate(e) => write!(f, "no regular-form candidate for element {e}"),
            Error::WrongFamily { expected, found } => {
                write!(f, "expected a {expected} monoid, got {found}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
