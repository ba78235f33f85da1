//! Exact Ollivier-Ricci curvature for directed hypergraphs.
//!
//! A directed hyperedge `A -> B` gets curvature `1 - W(μ_A, μ_B)`, where the
//! two measures spread mass over the in-neighbourhood of the tail and the
//! out-neighbourhood of the head, and `W` is the earth mover's distance under
//! the directed hyperdistance. All arithmetic is exact.
//!
//! ```
//! use hyperricci::{curvature, DirectedHypergraph, Hyperedge};
//! use hyperricci::rational::int;
//!
//! let h = DirectedHypergraph::from_parts(["a"], vec![Hyperedge::new("e", ["a"], ["a"])]).unwrap();
//! assert_eq!(curvature(&h, &"e".into()).unwrap().kappa, int(1));
//! ```

pub mod cli;
pub mod curvature;
pub mod document;
pub mod error;
pub mod families;
pub mod hypergraph;
pub mod measure;
pub mod metric;
pub mod rational;
pub mod report;
pub mod transport;

pub use curvature::{curvature, curvature_all, curvature_with_dual, CurvatureReport};
pub use error::{CurvatureError, DocumentError, FamilyError, HypergraphError, TransportError};
pub use hypergraph::{DirectedHypergraph, EdgeEdit, EdgeId, Hyperedge, Side, Vertex, VertexId};
pub use measure::DiscreteMeasure;
pub use metric::HyperDistance;
pub use rational::Rational;
