//! JSON document format for hypergraphs.
//!
//! ```json
//! {
//!   "version": 1,
//!   "vertices": [{"id": "a"}, {"id": "b", "label": "B", "weight": "1/3"}],
//!   "edges": [{"id": "e1", "tail": ["a"], "head": ["b"], "weight": "2"}]
//! }
//! ```
//!
//! Weights are exact rational strings; JSON numbers are rejected. Edges
//! without an `id` are named `e1`, `e2`, ... by position in the document.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::DocumentError;
use crate::hypergraph::{DirectedHypergraph, EdgeId, Hyperedge, Vertex, VertexId};
use crate::rational::{serde_text, Rational};

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphDocument {
    pub version: u32,
    pub vertices: Vec<VertexRecord>,
    #[serde(default)]
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_text::option")]
    pub weight: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<EdgeId>,
    pub tail: Vec<VertexId>,
    pub head: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_text::option")]
    pub weight: Option<Rational>,
}

fn non_unit(w: &Rational) -> Option<Rational> {
    (!w.is_one()).then(|| w.clone())
}

impl HypergraphDocument {
    pub fn from_hypergraph(h: &DirectedHypergraph) -> Self {
        HypergraphDocument {
            version: VERSION,
            vertices: h
                .vertices()
                .map(|v| VertexRecord {
                    id: v.id.clone(),
                    label: v.label.clone(),
                    weight: non_unit(&v.weight),
                })
                .collect(),
            edges: h
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: Some(e.id.clone()),
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    weight: non_unit(&e.weight),
                })
                .collect(),
        }
    }

    /// Builds the hypergraph and runs validation.
    pub fn into_hypergraph(self) -> Result<DirectedHypergraph, DocumentError> {
        if self.version != VERSION {
            return Err(DocumentError::Version(self.version));
        }
        let mut h = DirectedHypergraph::new();
        for v in self.vertices {
            let mut vertex = Vertex::new(v.id);
            vertex.label = v.label;
            if let Some(w) = v.weight {
                vertex.weight = w;
            }
            h.add_vertex(vertex)?;
        }
        for (k, e) in self.edges.into_iter().enumerate() {
            let id = e.id.unwrap_or_else(|| EdgeId::new(format!("e{}", k + 1)));
            let mut edge = Hyperedge::new(id, e.tail, e.head);
            if let Some(w) = e.weight {
                edge.weight = w;
            }
            h.add_edge(edge)?;
        }
        let violations = h.validate();
        if violations.is_empty() {
            Ok(h)
        } else {
            Err(DocumentError::Invalid(violations))
        }
    }
}

pub fn parse(text: &str) -> Result<DirectedHypergraph, DocumentError> {
    let doc: HypergraphDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.into_hypergraph()
}

/// Pretty-printed JSON with a trailing newline.
pub fn serialize(h: &DirectedHypergraph) -> String {
    let mut text = serde_json::to_string_pretty(&HypergraphDocument::from_hypergraph(h))
        .expect("document serialization is infallible");
    text.push('\n');
    text
}
