use thiserror::Error;

use crate::hypergraph::{EdgeId, Side, VertexId, Violation};
use crate::metric::HyperDistance;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational {0:?}: expected an integer or p/q")]
pub struct RationalParseError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("edit of {edge} would leave its {side} empty")]
    EmptySide { edge: EdgeId, side: Side },
    #[error("vertex {vertex} is not in the {side} of {edge}")]
    NotMember {
        edge: EdgeId,
        vertex: VertexId,
        side: Side,
    },
    #[error("vertex {vertex} is already in the {side} of {edge}")]
    AlreadyMember {
        edge: EdgeId,
        vertex: VertexId,
        side: Side,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("{which} measure has total mass {total}, expected 1")]
    Unnormalized { which: &'static str, total: Rational },
    #[error("{which} measure has negative mass at {vertex}")]
    NegativeMass { which: &'static str, vertex: VertexId },
    #[error("mass at {0} cannot reach any hole at finite distance")]
    Infeasible(VertexId),
    #[error("plan moves mass from {from} to {to} at distance {distance}, outside 0..=3")]
    CostOutOfRange {
        from: VertexId,
        to: VertexId,
        distance: HyperDistance,
    },
    #[error("potential is not 1-Lipschitz on ({from}, {to}): f({from}) - f({to}) > d = {distance}")]
    LipschitzViolation {
        from: VertexId,
        to: VertexId,
        distance: HyperDistance,
    },
    #[error("potential is undefined at support vertex {0}")]
    MissingPotential(VertexId),
    #[error("plan is not optimal: residual graph has a negative cycle")]
    NotOptimal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error("edge {edge}: support pair ({from}, {to}) is at distance {distance} > 3")]
    DistanceBound {
        edge: EdgeId,
        from: VertexId,
        to: VertexId,
        distance: HyperDistance,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family {family} takes {expected} partition sizes, got {got}")]
    Arity {
        family: &'static str,
        expected: &'static str,
        got: usize,
    },
    #[error("partition sizes must be positive")]
    ZeroSize,
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad granularity {0:?}: expected `unit` or `<tail>x<head>`")]
    BadGranularity(String),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported document version {0}")]
    Version(u32),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("invalid hypergraph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}
