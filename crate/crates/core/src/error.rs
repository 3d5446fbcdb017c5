use thiserror::Error;

/// Errors raised by graph construction and the resistance/tau computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("edge {edge} has non-positive or non-finite length {length}")]
    NonPositiveLength { edge: usize, length: f64 },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("edge id {0} does not exist")]
    BadEdgeId(usize),
    #[error("subdivision fraction {0} is not in (0, 1)")]
    TOutOfRange(f64),
    #[error("vertex index {index} out of range for {vertex_count} vertices")]
    IndexOutOfRange { index: usize, vertex_count: usize },
    #[error("graph has zero total length")]
    ZeroLength,
    #[error("matrix is singular beyond the constant nullspace")]
    SingularBeyondNullspace,
    #[error("pseudo-inverse has dimension {pinv} but the graph has {graph} vertices")]
    DimensionMismatch { graph: usize, pinv: usize },
    #[error("graph has self-loops or multiple edges; call make_adequate first")]
    NotAdequate,
    #[error("edge {edge} is not a bridge but r = {resistance} is within 1e-9 of its length {length}")]
    NumericalInconsistency { edge: usize, resistance: f64, length: f64 },
    #[error("special conditions not met: {0}")]
    SpecialConditionsNotMet(String),
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
    #[error("graph with {vertices} vertices exceeds the limit of {limit} for {what}")]
    TooLarge {
        vertices: usize,
        limit: usize,
        what: &'static str,
    },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("b = {b} and c = {c} must have different parity")]
    ParityViolation { b: usize, c: usize },
    #[error("chord rule produced a degenerate graph: {0}")]
    DegenerateChord(String),
    #[error("edge list parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
