use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree {0} outside supported range 2..=16")]
    UnsupportedDegree(u32),
    #[error("polynomial {poly:#x} does not have degree {m}")]
    WrongDegree { m: u32, poly: u32 },
    #[error("polynomial {poly:#x} is not primitive (x has order {order}, expected {expected})")]
    NonPrimitivePolynomial { poly: u32, order: u32, expected: u32 },
    #[error("division by zero in GF(2^m)")]
    DivisionByZero,
    #[error("GF(2^{sub}) is not a subfield of GF(2^{m})")]
    InvalidSubfield { m: u32, sub: u32 },
    #[error("generator polynomial does not divide x^{n} - 1")]
    NotADivisor { n: usize },
    #[error("exponent set is not closed under doubling mod {n} (member {member})")]
    NotConjugacyClosed { n: usize, member: usize },
    #[error("evaluation at position {position} is not binary")]
    NonBinaryResult { position: usize },
    #[error("dimension {k} exceeds exhaustive limit {max}")]
    DimensionTooLarge { k: usize, max: usize },
    #[error("dual dimension {dim} exceeds exhaustive limit {max}")]
    DualTooLarge { dim: usize, max: usize },
    #[error("direction must be a nonzero field element")]
    ZeroDirection,
    #[error("invalid direction set: {0}")]
    InvalidDirections(String),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("no parity-check rows of weight <= {max_weight}")]
    EmptyParityMatrix { max_weight: usize },
    #[error("parity-check row {row} is not orthogonal to the code")]
    NotOrthogonal { row: usize },
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("alist line {line}: {msg}")]
    Alist { line: usize, msg: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
