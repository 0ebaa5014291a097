use thiserror::Error;

/// Coarse classification used for CLI exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Syntax,
    Validation,
    Resource,
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("letter `{0}` is not in the declared alphabet")]
    UnknownLetter(String),
    #[error("invalid letter name `{0}`")]
    BadLetterName(String),
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,

    #[error("height mismatch: left {left}, middle {mid}, right {right}")]
    HeightMismatch { left: u32, mid: u32, right: u32 },
    #[error("no side of the {0} entry matches the middle entry and its anchor")]
    NoAnchorMatch(&'static str),
    #[error("equal left and right entries with an anchor arrangement that is not of the equal-entry shape")]
    EqualEntriesBadAnchors,
    #[error("both sides of the {0} entry match the middle entry")]
    AmbiguousSide(&'static str),
    #[error("generator of height {height} is too small for this operation")]
    HeightTooSmall { height: u32 },

    #[error("token {0} breaks the letter/anchor alternation")]
    NotAlternating(usize),
    #[error("triplet {0} is not anchored")]
    TripletNotAnchored(usize),
    #[error("empty word")]
    EmptyWord,
    #[error("junction mismatch: `{left}` does not match `{right}`")]
    JunctionMismatch { left: String, right: String },
    #[error("landscape has no unique peak")]
    KappaNotUnique,
    #[error("letter {0} is not a river")]
    NotARiver(usize),
    #[error("not a mountain range")]
    NotAMountainRange,
    #[error("not a mountain")]
    NotAMountain,
    #[error("not a canyon")]
    NotACanyon,
    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("table is not square or has entries out of range: {0}")]
    BadShape(String),
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("declared identity {0} is not a two-sided identity")]
    BadIdentity(usize),
    #[error("semigroup is not regular: element {0} has no inverse")]
    NotRegular(usize),
    #[error("empty sandwich set for ({0}, {1})")]
    EmptySandwich(usize, usize),
    #[error("transformation monoid on {0} points is too large")]
    TooLarge(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("height cap exceeded: height {height} > cap {cap}")]
    CapExceeded { height: u32, cap: u32 },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Syntax { .. } | UnknownLetter(_) | BadLetterName(_) | EmptyAlphabet | EmptyWord => {
                ErrorClass::Syntax
            }
            CapExceeded { .. } | TooLarge(_) => ErrorClass::Resource,
            InternalInvariantViolation(_) => ErrorClass::Internal,
            _ => ErrorClass::Validation,
        }
    }

    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
