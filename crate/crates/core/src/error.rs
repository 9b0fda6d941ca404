use crate::combinatorics::Edge;

/// Error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("degenerate edge: endpoints coincide at {0}")]
    DegenerateEdge(usize),

    #[error("odd ground set")]
    OddGroundSet,

    #[error("edge {0} is not a pair of the matching")]
    EdgeNotInMatching(Edge),

    #[error("swap requires two distinct pairs of the matching")]
    SwapPairsNotDisjoint,

    #[error("n = {n} is too small for k = {k}; need n >= {min}")]
    RegimeTooSmall { n: usize, k: usize, min: usize },

    #[error("n = 2k+2 is the single-generator regime; the simplicial description does not apply, use the cycle inequalities")]
    NonSimplicialRegime,

    #[error("edges {0} and {1} cross")]
    EdgesCross(Edge, Edge),

    #[error("edge {0} is not in the given graph")]
    EdgeNotInGraph(Edge),

    #[error("the given edge set is not a {k}-triangulation of [{n}]")]
    NotATriangulation { n: usize, k: usize },

    #[error("internal: no accordion found between {0} and {1}")]
    AccordionNotFound(Edge, Edge),

    #[error("weight vector is outside the cone; violated facet labels: {0:?}")]
    OutsideCone(Vec<Edge>),

    #[error("weight vector is outside the nonnegative tropical span: {0}")]
    OutsidePositivePart(String),

    #[error("not generic: {0}")]
    NotGeneric(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("antisymmetric matrix has odd size {0}; the matching sum is undefined (its determinant is zero)")]
    OddPfaffian(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-generic band data: the leading principal matching sum vanishes")]
    NonGenericBand,

    #[error("band pattern mismatch: {0}")]
    BandPatternMismatch(String),

    #[error("entry is bottom (-inf) where a finite value is required: {0}")]
    UnexpectedBottom(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invalid rational literal: {0}")]
    InvalidRational(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
