use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator '{0}' is not declared by the factor signature")]
    UnknownGenerator(char),

    #[error("invalid factor signature: {0}")]
    InvalidSignature(String),

    #[error("word is conjugate into a single factor")]
    NotAlternating,

    #[error("word has an odd number of syllables")]
    OddSyllables,

    #[error("word must use exactly two factors, found {0}")]
    WrongFactorCount(usize),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("disk enumeration truncated at length {k_max}: {detail}")]
    BoundTooSmall { k_max: usize, detail: String },

    #[error("word is not in the commutator subgroup (exponent sums {residues:?} per factor)")]
    NotInCommutatorSubgroup { residues: Vec<i64> },

    #[error("word is conjugate into factor {0}")]
    ConjugateIntoFactor(usize),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("fatgraph is not admissible: {0}")]
    NotAdmissible(String),

    #[error("turn graph has a self-loop at position {0}")]
    SelfLoopDetected(usize),

    #[error("malformed fatgraph at line {line}: {message}")]
    FatgraphFormat { line: usize, message: String },

    #[error("degenerate query: {0}")]
    DegenerateCase(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
