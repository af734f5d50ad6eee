use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("carrier mismatch: {left} elements vs {right} elements")]
    CarrierMismatch { left: usize, right: usize },
    #[error("element {index} out of range for a carrier of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("carrier of {n} elements exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("hard part is not contained in soft part: ({0}, {1}) is missing from the soft part")]
    HardNotInSoft(usize, usize),
    #[error("strict soft part is not contained in strict hard part: ({0}, {1})")]
    StrictSoftNotInStrictHard(usize, usize),
    #[error("topology axiom violated: {0}")]
    TopologyAxiom(String),
    #[error("invalid witness family: {0}")]
    WitnessFamily(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameter {0} lies outside [0,1]")]
    ParameterOutOfRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("grid too coarse: {0} is not a grid point")]
    GridTooCoarse(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
