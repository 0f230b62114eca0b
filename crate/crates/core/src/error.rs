use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {0} does not exist")]
    EdgeOutOfRange(EdgeId),
    #[error("a link needs two distinct endpoints, got {0} twice")]
    DegenerateLink(VertexId),
    #[error("edge {edge}: {reason}")]
    InvalidEdge { edge: EdgeId, reason: String },
    #[error("malformed walk: {0}")]
    MalformedWalk(String),
    #[error("edge {0} already belongs to the basis")]
    EdgeInBasis(EdgeId),
    #[error("edge set is not a pseudoforest: {0}")]
    NotPseudoforest(String),
    #[error("edge set is not hyperbalanced")]
    NotHyperbalanced,
    #[error("not a sign circuit")]
    NotSignCircuit,
    #[error("the extra point has no gain")]
    ExtraPoint,
    #[error("gains of group {0} do not embed in the requested field")]
    NotEmbeddable(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("cannot switch the contracted set to neutral gains: {0}")]
    ContractionObstruction(String),
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: usize,
        limit: usize,
    },
    #[error("edge {0} has a degenerate hyperplane (the whole space)")]
    DegenerateArrangement(EdgeId),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("circuit taxonomy mismatch: {0}")]
    Taxonomy(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
