use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("word `{word}` has length {found}, expected {expected}")]
    WrongLength {
        word: String,
        expected: usize,
        found: usize,
    },

    #[error("the presented shift is empty")]
    EmptyShift,

    #[error("presentation is not irreducible")]
    NotIrreducible,

    #[error("presentation is not mixing")]
    NotMixing,

    #[error("presentation is not non-wandering")]
    NotNonWandering,

    #[error("no rule for allowed window `{0}`")]
    MissingRule(String),

    #[error("not an endomorphism: source word `{source_word}` maps to `{image}`, which leaves the shift")]
    NotEndomorphism { source_word: String, image: String },

    #[error("codes act on different shifts")]
    AmbientMismatch,

    #[error("power must be at least 1")]
    InvalidPower,

    #[error("configuration is not allowed in the shift: {0}")]
    NotAllowed(String),

    #[error("pseudo-orbit bound too large: delta = {delta} only allows epsilon = {achievable}")]
    DeltaTooLarge { delta: String, achievable: String },

    #[error("pseudo-orbit point {0} leaves the shift or jumps further than delta")]
    InvalidPseudoOrbit(usize),

    #[error("shadowing needs a 1-step presentation, found step {0}")]
    NotOneStep(usize),

    #[error("{candidates} candidate rule tables exceed the cap of {cap}")]
    CapExceeded { candidates: u128, cap: u128 },

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
