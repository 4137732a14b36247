use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad extension degree {0}")]
    BadDegree(usize),
    #[error("operands live in different carriers: {0}")]
    SpecMismatch(String),
    #[error("{d} does not divide the field degree {n}")]
    BadSubfield { d: usize, n: usize },
    #[error("characteristic mismatch: {src} vs {dst}")]
    CharMismatch { src: u64, dst: u64 },
    #[error("characteristic {0} missing from the signature prime set")]
    MissingPrime(u64),
    #[error("algebra is not an explicit product of fields")]
    NotProduct,
    #[error("carrier of size {size} exceeds the cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("bad table: {0}")]
    BadTable(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("carrier is infinite")]
    InfiniteCarrier,
    #[error("algebra is not a field")]
    NotAField,
    #[error("algebra is not an implicitly closed field")]
    NotIcf,
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("not closed under the full signature: {0}")]
    NotIcfSubalgebra(String),
    #[error("no Frobenius twist makes the square commute")]
    NoCompatibleTwist,
    #[error("map is not an embedding: {0}")]
    NotEmbedding(String),
    #[error("operation `{0}` is not interpreted in this algebra")]
    MissingOperation(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable machine-readable name, used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::BadDegree(_) => "BadDegree",
            Error::SpecMismatch(_) => "SpecMismatch",
            Error::BadSubfield { .. } => "BadSubfield",
            Error::CharMismatch { .. } => "CharMismatch",
            Error::MissingPrime(_) => "MissingPrime",
            Error::NotProduct => "NotProduct",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::BadTable(_) => "BadTable",
            Error::UnboundVariable(_) => "UnboundVariable",
            Error::Syntax { .. } => "SyntaxError",
            Error::InfiniteCarrier => "InfiniteCarrier",
            Error::NotAField => "NotAField",
            Error::NotIcf => "NotICF",
            Error::NotSubalgebra(_) => "NotSubalgebra",
            Error::NotIcfSubalgebra(_) => "NotICFSubalgebra",
            Error::NoCompatibleTwist => "NoCompatibleTwist",
            Error::NotEmbedding(_) => "NotEmbedding",
            Error::MissingOperation(_) => "MissingOperation",
            Error::Malformed(_) => "Malformed",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
