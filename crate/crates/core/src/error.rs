use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {n} exceeds the limit of {limit}")]
    CapExceeded { n: usize, limit: usize },
    #[error("invalid edge ({0}, {1})")]
    BadEdge(usize, usize),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("diameter {0} is below 2")]
    DiameterTooSmall(u32),
    #[error("invalid spindle: {0}")]
    InvalidSpindle(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("iteration cap of {0} exceeded")]
    IterationCapExceeded(usize),
    #[error("graph6: byte {byte} at offset {offset} is out of range")]
    BadChar { offset: usize, byte: u8 },
    #[error("graph6: expected {expected} bytes, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("graph6: nonzero padding bits")]
    BadPadding,
    #[error("graph6 stream line {line}: {source}")]
    Stream {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid report: {0}")]
    InvalidReport(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
