use thiserror::Error;

use crate::words::{Letter, Word};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(Letter),
    #[error("invalid letter token `{0}`")]
    InvalidToken(String),
    #[error("letter `{0}` is declared twice")]
    DuplicateLetter(Letter),
    #[error("the empty word cannot belong to a code")]
    EmptyWordInSet,
    #[error("set is not a code, comma-freeness is undefined")]
    NotACode,
    #[error("C-word index {0} is below 2")]
    IndexTooSmall(usize),
    #[error("step {0} does not match the current word")]
    StepMismatch(usize),
    #[error("instance already uses reserved letter `{0}`")]
    ReservedLetterClash(Letter),
    #[error("system has an insertion or deletion rule")]
    NotEpsilonFree,
    #[error("instance is not in C_k: {0}")]
    NotInCk(String),
    #[error("letter `{0}` has empty images under both morphisms")]
    NotEpsEpsFree(Letter),
    #[error("affixes s and s' disagree before either ends")]
    MismatchedStart,
    #[error("invalid derivation trace: {0}")]
    InvalidTrace(String),
    #[error("delimiter anomaly: {0}")]
    DelimiterAnomaly(String),
    #[error("translated step {0} failed verification")]
    StepVerificationFailed(usize),
    #[error("malformed solution: {0}")]
    MalformedSolution(String),
    #[error("extracted block still contains marker `{0}`")]
    InnerMarker(Letter),
    #[error("word {0} is not a solution of the instance")]
    NotASolution(Word),
    #[error("manifest mismatch: {0}")]
    Manifest(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
