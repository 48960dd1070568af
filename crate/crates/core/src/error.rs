use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graphs on more than {max} vertices are not supported (got {n})")]
    TooManyVertices { n: usize, max: usize },
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("subgraphs are defined on different vertex universes")]
    IncompatibleUniverse,
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list, line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("improper coloring: {0}")]
    ImproperColoring(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("graph is not planar")]
    NotPlanar,
    #[error("cycle enumeration truncated at {0} cycles")]
    TruncatedCycles(usize),
    #[error("invalid shard: {0}")]
    Shard(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("result cache: {0}")]
    Cache(String),
}
