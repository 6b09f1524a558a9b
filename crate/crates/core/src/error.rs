use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
///
/// Variants fall into three families: input validation (graph construction,
/// parsing, malformed path systems), domain preconditions (root inside a
/// queried set, missing witnesses), and internal invariant breaches that
/// indicate a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{0}` is a loop")]
    LoopEdge(String),
    #[error("edge `{0}` points into the root")]
    EdgeIntoRoot(String),
    #[error("edge `{id}`: endpoint `{vertex}` is not declared")]
    UndeclaredEndpoint { id: String, vertex: String },
    #[error("root `{0}` is not among the declared vertices")]
    UndeclaredRoot(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("index out of range for this graph")]
    ForeignIndex,

    #[error("contraction representative must belong to the contracted set")]
    ContractionTargetOutside,
    #[error("contracting the root away requires keeping it as the representative")]
    ContractionSwallowsRoot,

    #[error("path is empty")]
    EmptyPath,
    #[error("path edges are not consecutive")]
    DisconnectedPath,
    #[error("path repeats a vertex")]
    NonSimplePath,
    #[error("malformed path system: {0}")]
    MalformedSystem(String),
    #[error("target vertex is the root")]
    TargetIsRoot,

    #[error("the root may not belong to the queried vertex set")]
    RootInSet,
    #[error("vertex `{0}` lies outside the required set")]
    VertexOutsideSet(String),
    #[error("edge set is not a subset of the in-edges of the vertex")]
    NotInEdges,
    #[error("no full witness exists for vertex `{0}`")]
    NotWitnessable(String),
    #[error("set is not fillable")]
    NotFillable,
    #[error("digraph is not a flame")]
    NotAFlame,

    #[error("edge `{0}` already belongs to the subset")]
    EdgeAlreadyPresent(String),
    #[error("edge `{0}` does not enter the tight set of its head")]
    DoesNotEnterTight(String),
    #[error("witness family is inconsistent with the host graph: {0}")]
    BadWitnessFamily(String),
    #[error("precedence is not a permutation of the edge set")]
    BadPrecedence,
    #[error("chain layers are not ascending")]
    ChainNotAscending,

    #[error("helper-insertion measure did not decrease")]
    MeasureNotDecreased,
    #[error("internal invariant breach: {0}")]
    Internal(String),

    #[error("instance exceeds the oracle budget")]
    BudgetExceeded,
}

impl Error {
    /// True for errors that signal a broken internal invariant (a bug in this
    /// crate or a falsified proof obligation) rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::MeasureNotDecreased | Error::Internal(_))
    }
}
