use thiserror::Error;

/// Errors raised by the library.
///
/// The crystal zero is never an error: operators return `None` for it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("malformed shape: {0}")]
    MalformedShape(String),
    #[error("letter {letter} outside 1..={n}")]
    LetterOutOfRange { letter: u32, n: usize },
    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: String, n: usize },
    #[error("letter {letter} is neither {i} nor {}", i + 1)]
    ForeignLetter { letter: u32, i: usize },
    #[error("not a semistandard decomposition tableau: {0}")]
    InvalidTableau(String),
    #[error("too many rows: {rows} rows for rank {n}")]
    TooManyRows { rows: usize, n: usize },
    #[error("candidate cap exceeded: more than {cap} partial fillings visited")]
    CandidateCap { cap: u64 },
    #[error("node guard exceeded: more than {cap} nodes (max-nodes)")]
    NodeGuard { cap: usize },
    #[error("no trivial column of height {0}")]
    NoTrivialColumn(usize),
    #[error("not in a marginally large class: {0}")]
    NotMarginallyLargeClass(String),
    #[error("not dual marginally large")]
    NotMarginallyLarge,
    #[error("shape {target:?} is not reachable from {from:?} by pushing in trivial columns")]
    Unreachable { from: Vec<usize>, target: Vec<usize> },
    #[error("not a lowest weight element")]
    NotLowestWeight,
    #[error("weight {0:?} is not in the antidominant cone")]
    NotAntidominant(Vec<i64>),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal defect: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;
