use thiserror::Error;

/// Errors produced by the code workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n={expected_n}, D={expected_d}; got n={got_n}, D={got_d}")]
    DimensionMismatch { expected_n: usize, expected_d: u32, got_n: usize, got_d: u32 },

    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u32),

    #[error("residue {value} out of range for modulus {modulus}")]
    InvalidResidue { value: u32, modulus: u32 },

    #[error("invalid scalar {value} for modulus {modulus}")]
    InvalidScalar { value: u32, modulus: u32 },

    #[error("capacity exceeded: {what} needs {needed} elements, cap is {cap}")]
    Capacity { what: &'static str, needed: u128, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported graph family {family} with n={n}: {reason}")]
    UnsupportedFamily { family: String, n: usize, reason: String },

    #[error("graph parse error on line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("degenerate regime: delta={delta} exceeds diagonal distance {diagonal}")]
    DegenerateRegime { delta: u32, diagonal: String },

    #[error("distance table cap {cap} too small for delta={delta}")]
    InsufficientCap { cap: u32, delta: u32 },

    #[error("construction precondition failed: {0}")]
    Precondition(String),

    #[error("code is not additive and has no stabilizer")]
    NotAStabilizerCode,
}

/// Distinct failure kinds for the text graph format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header (expected `D n`)")]
    MalformedHeader,
    #[error("malformed row: {0}")]
    MalformedRow(String),
    #[error("matrix not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("nonzero diagonal entry at vertex {0}")]
    NonzeroDiagonal(usize),
    #[error("entry {value} at ({row}, {col}) is not below D={modulus}")]
    EntryOutOfRange { row: usize, col: usize, value: u32, modulus: u32 },
    #[error("wrong number of rows: expected {expected}, found {found}")]
    RowCount { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
