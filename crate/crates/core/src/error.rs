use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("invalid diagram: {0}")]
    Validation(String),

    #[error("unknown component {0}")]
    UnknownComponent(usize),

    #[error("component {0} cannot be deleted: it is the last one")]
    LastComponent(usize),

    #[error("operation requires distinct components, got {0} twice")]
    SameComponent(usize),

    #[error("arc {0} is not on a knot-role component")]
    ArcNotOnKnot(u32),

    #[error("diagram has {0} components; select the knot component first")]
    NeedsComponentSelection(usize),

    #[error("word has nonzero exponent sum {0}; not in the commutator subgroup")]
    NonzeroExponentSum(i64),

    #[error("finite group {0} has order {1}, exceeding the bound {2}")]
    GroupOrderBound(String, usize, usize),

    #[error("unknown finite group descriptor {0:?}")]
    UnknownGroup(String),

    #[error("peripheral map is undefined on generator {0}")]
    MapUndefined(String),

    #[error("meridian image {0} is not the target meridian: exponent p must be 0")]
    BadMeridianImage(String),

    #[error("surgery vector has length {got}, expected one entry per crossing ({want})")]
    SurgeryArity { got: usize, want: usize },

    #[error("staple placement is stale: {0}")]
    StalePlacement(String),

    #[error("amplifier knot has nontrivial Alexander polynomial {0}")]
    NontrivialAmplifier(String),

    #[error(
        "Alexander polynomial evaluated at 1 is {0}, expected ±1; the presentation is corrupt"
    )]
    AlexanderAtOne(String),

    #[error("DT export does not support this link: {0}")]
    DtUnsupported(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
