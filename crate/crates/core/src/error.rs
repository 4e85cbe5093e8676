use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator {index} does not preserve the lattice metric")]
    NonOrthogonalGenerator { index: usize },
    #[error("holonomy closure exceeded the bound of {bound} elements")]
    ClosureBoundExceeded { bound: usize },
    #[error("inconsistent translations for point part {point}")]
    CocycleInconsistent { point: String },
    #[error("Krawtchouk arguments out of range: n={n}, p={p}, x={x}")]
    KrawtchoukDomain { n: usize, p: usize, x: usize },
    #[error("character sum is not rational (modulus {modulus})")]
    IrrationalCharacterSum { modulus: i64 },
    #[error("multiplicity at mu={mu} is not a non-negative integer: {value}")]
    NonIntegralMultiplicity { mu: String, value: String },
    #[error("group is not of diagonal type")]
    NotDiagonalType,
    #[error("element has zero length")]
    ZeroLength,
    #[error("brute-force box too small: class counts changed when the margin grew")]
    BoxTooSmall,
    #[error("tail bound {tail:e} exceeds the allowed {allowed:e} at s={s}")]
    TailNotControlled { s: f64, tail: f64, allowed: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error{}: {message}", location_suffix(.line, .field))]
    Parse {
        line: Option<usize>,
        field: Option<String>,
        message: String,
    },
    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),
    #[error("io error: {0}")]
    Io(String),
}

fn location_suffix(line: &Option<usize>, field: &Option<String>) -> String {
    match (line, field) {
        (Some(l), Some(f)) => format!(" at line {l} (field `{f}`)"),
        (Some(l), None) => format!(" at line {l}"),
        (None, Some(f)) => format!(" (field `{f}`)"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            field: None,
            message: message.into(),
        }
    }

    pub fn field(field: &str, message: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            field: Some(field.to_string()),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
