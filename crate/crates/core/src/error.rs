use thiserror::Error;

/// Text input that failed to parse; `position` is a character offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn shifted(mut self, by: usize) -> Self {
        self.position += by;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("not a finite-index cover: vertex {vertex} has no edge for letter {letter}")]
    NotFiniteIndex { vertex: usize, letter: i32 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("every generator of the second subgroup is trivial")]
    TrivialH2,
    #[error("invalid labeled graph: {0}")]
    InvalidGraph(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("hypothesis violated: neighbor {neighbor} of vertex {vertex} has prescribed degree 1")]
    HypothesisViolated { vertex: usize, neighbor: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("non-orientable surfaces are not supported")]
    NonOrientableUnsupported,
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("divisibility violated: {0}")]
    DivisibilityViolated(String),
    #[error("M = {m} is not a multiple of M0 = {m0}")]
    NotMultipleOfM0 { m: u64, m0: u64 },
    #[error("invalid branching data: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssemblyError {
    #[error("not a cover of the underlying graph: {0}")]
    NotACover(String),
    #[error("piece cover is not regular: {0}")]
    RegularityViolated(String),
    #[error("piece {piece} caps off to a sphere or projective plane")]
    SphereOrProjectivePlane { piece: usize },
    #[error("slot mismatch on {piece}: {detail}")]
    SlotMismatch { piece: String, detail: String },
    #[error("no closing pattern: {0}")]
    NoClosingPattern(String),
    #[error("invalid assembly input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Umbrella error for the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
