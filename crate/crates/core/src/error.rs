use thiserror::Error;

/// Why a block list fails to be a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("empty pattern: at least one block is required")]
    Empty,
    #[error("block {index} has arity {found}, expected {expected}")]
    ArityMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("blocks {0} and {1} overlap")]
    Overlap(usize, usize),
    /// Total measure of the blocks, as a reduced fraction, when it is not 1.
    #[error("blocks do not cover the cube: total measure {0}")]
    CoverageDeficit(String),
    #[error("partition has no recursive split decomposition")]
    NonHierarchical,
}

/// A line-oriented parse failure. `line` is 1-based; 0 means "no line".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    pub fn new(line: usize, reason: impl Into<String>) -> Self {
        ParseError {
            line,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid pattern: {0}")]
    Validation(#[from] ValidationError),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("block label {label} out of range (pattern has {blocks} blocks)")]
    BadLabel { label: usize, blocks: usize },
    #[error("axis {axis} out of range for arity {arity}")]
    BadAxis { axis: usize, arity: usize },
    #[error("domain has {domain} blocks but range has {range}")]
    SizeMismatch { domain: usize, range: usize },
    #[error("label map is not a bijection")]
    NotBijective,
    #[error("invalid coordinate permutation: {0}")]
    BadPermutation(String),
    #[error("budget exceeded after reaching {0} elements")]
    BudgetExceeded(usize),
    #[error("input {0} has no torsion certificate within the power limit")]
    MissingCertificate(usize),
    #[error("candidate space too large: about {0} elements")]
    EnumerationTooLarge(u128),
    #[error("rendering needs arity 2, got {0}")]
    UnsupportedArity(usize),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("index {index} out of range 2..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
