use thiserror::Error;

use crate::digraph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(Vertex, Vertex),

    #[error("walks are not congruent")]
    NotCongruent,

    #[error("expected two distinct vertices, got ({0}, {0})")]
    EqualVertices(Vertex),

    #[error("distinguisher level must be at least 1, got {0}")]
    InvalidLevel(usize),

    #[error("an HM-chain needs at least one operation")]
    EmptyChain,

    #[error("operation tables disagree on the domain size")]
    MixedDomains,

    #[error("operation table is not conservative at ({0}, {1}, {2})")]
    NotConservative(Vertex, Vertex, Vertex),

    #[error("lists are not {k}-good")]
    NotKGood { k: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid circular N witness: {0}")]
    InvalidWitness(String),

    #[error("template contains a circular N; use the oracle or force the transducer chain")]
    CircularNPresent,

    #[error("templates with more than 64 vertices are not supported (got {0})")]
    TemplateTooLarge(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
