use thiserror::Error;

use crate::rational::{NonNegRational, RationalError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the constructions in this crate.
///
/// Points inside variants are rendered labels, so one error type serves
/// every carrier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d({0}, {0}) is not zero")]
    Violation(String),
    #[error("ball radius must be positive")]
    ZeroRadius,
    #[error("radius {0} outside (0, 1]")]
    RadiusOutOfRange(NonNegRational),
    #[error("space has {n} points; this operation supports at most {max}")]
    TooManyPoints { n: usize, max: usize },
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("not an ultrametric: witness triple {0}")]
    NotUltrametric(String),
    #[error("the tail rule does not determine the limit")]
    UndecidableTail,
    #[error("invalid neighborhood system: {0}")]
    InvalidNeighborhoods(String),
    #[error("edge parameter {0} outside [0, 1]")]
    OutOfRange(NonNegRational),
    #[error("point {0} is not in normal form")]
    NotNormalized(String),
    #[error("edge endpoints must be distinct (got {0})")]
    SamePoint(String),
    #[error("{0} is not a member of the cobweb")]
    NotMember(String),
    #[error("map is not injective: {0} and {1} have the same image")]
    NotInjective(String, String),
    #[error("map is not non-expanding on the pair ({0}, {1})")]
    NotNonExpanding(String, String),
    #[error("image {0} left the target cobweb")]
    MembershipViolation(String),
    #[error("stem is empty")]
    EmptyStem,
    #[error("stem coordinate {0} does not compress onto the previous coordinate")]
    IncoherentAt(usize),
    #[error("stem coordinate {0} is not a member of its level")]
    NotMemberAt(usize),
    #[error("point has depth {found}, expected level {expected}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("distance {0} is not attained by any level term")]
    MaxNotAttained(String),
    #[error("unknown sequence {0:?}")]
    UnknownSequence(String),
    #[error("sequence {0:?} duplicates an existing registration")]
    DuplicateSequence(String),
    #[error("invalid sequence {id:?}: {reason}")]
    InvalidSequence { id: String, reason: String },
    #[error("set is not sequentially open: sequence {0:?} violates it")]
    NotSeqOpen(String),
    #[error("point {0} is not in the given set")]
    NotInV(String),
    #[error("{0}")]
    OutOfBounds(String),
    #[error("sequence tail is infinite and injective; a finite space cannot host it")]
    InfiniteTailOnFiniteSpace,
    #[error("parse error at {field}: {message}")]
    Parse { field: String, message: String },
    #[error(transparent)]
    Rational(#[from] RationalError),
}

impl Error {
    pub fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { field: field.into(), message: message.into() }
    }
}
