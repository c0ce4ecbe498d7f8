use crate::digraph::Vertex;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("loop arc at vertex {0}")]
    LoopArc(Vertex),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("instance has {n} vertices, enumeration cap is {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("composition expects {expected} parts, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("digraph is not semicomplete: {0} and {1} are non-adjacent")]
    NotSemicomplete(Vertex, Vertex),
    #[error("input is not {k}-quasi-transitive ({reason})")]
    NotQuasiTransitiveInput { k: usize, reason: &'static str },
}

pub type Result<T> = core::result::Result<T, Error>;
