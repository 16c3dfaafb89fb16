//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("facet list is empty")]
    EmptyInput,
    #[error("facets of mixed size: {0} and {1} vertices")]
    MixedDimension(usize, usize),
    #[error("facet contains duplicate vertex `{0}`")]
    DuplicateVertexInFacet(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a pseudomanifold: ridge {{{0}}} lies in {1} facets")]
    NotPseudomanifold(String, usize),
    #[error("vertex map is not an involution: A(A({0})) = {1}")]
    NotOrderTwo(String, String),
    #[error("map is not simplicial: image of {{{0}}} is not a simplex of the target")]
    NotSimplicial(String),
    #[error("involution is not free ({0})")]
    InvolutionNotFree(String),
    #[error("boundary involution is not free ({0})")]
    BoundaryInvolutionNotFree(String),
    #[error("complex is not a pseudomanifold with nonempty boundary")]
    NotManifoldWithBoundary,
    #[error("complex is not a closed pseudomanifold")]
    NotClosed,
    #[error("simplex {{{0}}} carries an antipodal vertex pair")]
    AntipodalPairInSimplex(String),
    #[error("labelling is not antipodal: L(A({0})) != -L({0})")]
    LabellingNotAntipodal(String),
    #[error("labelling has a complementary edge {{{0}}}")]
    ComplementaryEdgePresent(String),
    #[error("label {1} of vertex `{0}` lies outside {{±1,…,±{2}}}")]
    LabelOutOfRange(String, i32, u32),
    #[error("signature has {0} labels but facets have {1} vertices")]
    SignatureDimensionMismatch(usize, usize),
    #[error("map is not antipodal: f(A({0})) != A(f({0}))")]
    MapNotAntipodal(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("target complex is not strongly connected")]
    TargetNotStronglyConnected,
    #[error("vertex `{0}` is not covered by any set")]
    VertexUncovered(String),
    #[error("set `{0}` contains the antipodal pair ({1}, {2})")]
    InputNotAntipodeFree(String, String, String),
    #[error("paired sets `{0}` and `{1}` intersect at `{2}`")]
    PairNotDisjoint(String, String, String),
    #[error("family does not cover: facet {{{0}}} lies in no member")]
    InputNotCovering(String),
    #[error("no witness at this resolution; refine the triangulation and retry")]
    NoWitnessAtThisResolution,
    #[error("rendering supports dimension <= 2, got {0}")]
    DimensionTooHigh(usize),
    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// Violated operation contract that has no dedicated variant.
    #[error("{0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn parse(file: &str, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            file: file.to_string(),
            line,
            msg: msg.into(),
        }
    }
}
