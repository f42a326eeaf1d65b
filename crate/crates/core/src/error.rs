use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(Vertex, Vertex),
    #[error("vertex {0} out of range (n = {1})")]
    UnknownVertex(Vertex, usize),
    #[error("empty vertex set")]
    EmptySet,
    #[error("graph has no wedges")]
    NoWedges,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("insufficient regression support: {points} point(s) with N0 >= {floor}")]
    InsufficientSupport { points: usize, floor: u64 },
    #[error("no additions observed in the learning window")]
    NoAdditions,
    #[error("no open wedges at window start")]
    NoOpenWedges,
    #[error("graph has no edges")]
    NoEdges,
    #[error("instance too large for brute force: n = {n}, limit = {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("delta {delta} outside the growth-bound window (max {window:.3})")]
    OutsideWindow { delta: u64, window: f64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("empty input")]
    EmptyInput,
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
