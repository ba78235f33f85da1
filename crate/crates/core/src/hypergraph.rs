//! Directed hypergraphs: vertices, hyperedges (tail set to head set), degree
//! queries, the corresponding directed graph, and persistent edge edits.

use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::HypergraphError;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(String);

impl EdgeId {
    pub fn new(id: impl Into<String>) -> Self {
        EdgeId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_string())
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Tail,
    Head,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Tail => "tail",
            Side::Head => "head",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub label: Option<String>,
    pub weight: Rational,
}

impl Vertex {
    pub fn new(id: impl Into<VertexId>) -> Self {
        Vertex {
            id: id.into(),
            label: None,
            weight: Rational::one(),
        }
    }

    pub fn with_weight(mut self, weight: Rational) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

/// A directed hyperedge `tail -> head`.
///
/// Tail and head are sets; they are stored in insertion order and checked for
/// duplicates by [`DirectedHypergraph::validate`]. They may intersect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperedge {
    pub id: EdgeId,
    pub tail: Vec<VertexId>,
    pub head: Vec<VertexId>,
    pub weight: Rational,
}

impl Hyperedge {
    pub fn new<T, H>(id: impl Into<EdgeId>, tail: T, head: H) -> Self
    where
        T: IntoIterator,
        T::Item: Into<VertexId>,
        H: IntoIterator,
        H::Item: Into<VertexId>,
    {
        Hyperedge {
            id: id.into(),
            tail: tail.into_iter().map(Into::into).collect(),
            head: head.into_iter().map(Into::into).collect(),
            weight: Rational::one(),
        }
    }

    pub fn with_weight(mut self, weight: Rational) -> Self {
        self.weight = weight;
        self
    }

    pub fn side(&self, side: Side) -> &[VertexId] {
        match side {
            Side::Tail => &self.tail,
            Side::Head => &self.head,
        }
    }

    pub fn in_tail(&self, v: &VertexId) -> bool {
        self.tail.contains(v)
    }

    pub fn in_head(&self, v: &VertexId) -> bool {
        self.head.contains(v)
    }

    /// Tail and head share at least one vertex.
    pub fn is_hyperloop(&self) -> bool {
        self.tail.iter().any(|v| self.head.contains(v))
    }

    pub fn is_unit(&self) -> bool {
        self.tail.len() == 1 && self.head.len() == 1
    }
}

impl From<String> for EdgeId {
    fn from(s: String) -> Self {
        EdgeId(s)
    }
}

/// One broken invariant, as reported by [`DirectedHypergraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownVertex { edge: EdgeId, vertex: VertexId },
    EmptySide { edge: EdgeId, side: Side },
    RepeatedVertex { edge: EdgeId, vertex: VertexId, side: Side },
    NonPositiveVertexWeight { vertex: VertexId },
    NonPositiveEdgeWeight { edge: EdgeId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownVertex { edge, vertex } => {
                write!(f, "edge {edge} references unknown vertex {vertex}")
            }
            Violation::EmptySide { edge, side } => write!(f, "edge {edge} has an empty {side}"),
            Violation::RepeatedVertex { edge, vertex, side } => {
                write!(f, "edge {edge} lists vertex {vertex} twice in its {side}")
            }
            Violation::NonPositiveVertexWeight { vertex } => {
                write!(f, "vertex {vertex} has a non-positive weight")
            }
            Violation::NonPositiveEdgeWeight { edge } => {
                write!(f, "edge {edge} has a non-positive weight")
            }
        }
    }
}

/// Vertex set plus a multiset of hyperedges with unique ids.
#[derive(Clone, Debug, Default)]
pub struct DirectedHypergraph {
    vertices: IndexMap<VertexId, Vertex>,
    edges: Vec<Hyperedge>,
    edge_index: HashMap<EdgeId, usize>,
    incoming: HashMap<VertexId, Vec<usize>>,
    outgoing: HashMap<VertexId, Vec<usize>>,
}

impl PartialEq for DirectedHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DirectedHypergraph {}

impl DirectedHypergraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a hypergraph from unit-weight vertex ids and edges.
    pub fn from_parts<V>(vertices: V, edges: Vec<Hyperedge>) -> Result<Self, HypergraphError>
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
    {
        let mut h = Self::new();
        for v in vertices {
            h.add_vertex(Vertex::new(v))?;
        }
        for e in edges {
            h.add_edge(e)?;
        }
        Ok(h)
    }

    pub fn add_vertex(&mut self, vertex: Vertex) -> Result<(), HypergraphError> {
        if self.vertices.contains_key(&vertex.id) {
            return Err(HypergraphError::DuplicateVertex(vertex.id));
        }
        self.vertices.insert(vertex.id.clone(), vertex);
        Ok(())
    }

    /// Appends an edge. Only id uniqueness is enforced here; the remaining
    /// invariants are reported by [`validate`](Self::validate).
    pub fn add_edge(&mut self, edge: Hyperedge) -> Result<(), HypergraphError> {
        if self.edge_index.contains_key(&edge.id) {
            return Err(HypergraphError::DuplicateEdge(edge.id));
        }
        let idx = self.edges.len();
        for v in &edge.tail {
            self.outgoing.entry(v.clone()).or_default().push(idx);
        }
        for v in &edge.head {
            self.incoming.entry(v.clone()).or_default().push(idx);
        }
        self.edge_index.insert(edge.id.clone(), idx);
        self.edges.push(edge);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.keys()
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&Vertex> {
        self.vertices.get(id)
    }

    pub fn contains_vertex(&self, id: &VertexId) -> bool {
        self.vertices.contains_key(id)
    }

    /// Weight of `id`; unknown vertices count as weight one.
    pub fn vertex_weight(&self, id: &VertexId) -> Rational {
        self.vertices
            .get(id)
            .map(|v| v.weight.clone())
            .unwrap_or_else(Rational::one)
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Hyperedge> {
        self.edge_index.get(id).map(|&i| &self.edges[i])
    }

    pub fn require_edge(&self, id: &EdgeId) -> Result<&Hyperedge, HypergraphError> {
        self.edge(id)
            .ok_or_else(|| HypergraphError::UnknownEdge(id.clone()))
    }

    fn require_vertex(&self, v: &VertexId) -> Result<(), HypergraphError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(HypergraphError::UnknownVertex(v.clone()))
        }
    }

    /// Hyperedges having `v` in their head, with multiplicity.
    pub fn incoming(&self, v: &VertexId) -> impl Iterator<Item = &Hyperedge> {
        self.incoming
            .get(v)
            .into_iter()
            .flatten()
            .map(move |&i| &self.edges[i])
    }

    /// Hyperedges having `v` in their tail, with multiplicity.
    pub fn outgoing(&self, v: &VertexId) -> impl Iterator<Item = &Hyperedge> {
        self.outgoing
            .get(v)
            .into_iter()
            .flatten()
            .map(move |&i| &self.edges[i])
    }

    pub fn in_degree(&self, v: &VertexId) -> Result<usize, HypergraphError> {
        self.require_vertex(v)?;
        Ok(self.incoming.get(v).map_or(0, Vec::len))
    }

    pub fn out_degree(&self, v: &VertexId) -> Result<usize, HypergraphError> {
        self.require_vertex(v)?;
        Ok(self.outgoing.get(v).map_or(0, Vec::len))
    }

    pub fn is_unweighted(&self) -> bool {
        self.vertices.values().all(|v| v.weight.is_one())
            && self.edges.iter().all(|e| e.weight.is_one())
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for v in self.vertices.values() {
            if !v.weight.is_positive() {
                out.push(Violation::NonPositiveVertexWeight {
                    vertex: v.id.clone(),
                });
            }
        }
        for e in &self.edges {
            for side in [Side::Tail, Side::Head] {
                let members = e.side(side);
                if members.is_empty() {
                    out.push(Violation::EmptySide {
                        edge: e.id.clone(),
                        side,
                    });
                }
                let mut seen = HashSet::new();
                for v in members {
                    if !seen.insert(v) {
                        out.push(Violation::RepeatedVertex {
                            edge: e.id.clone(),
                            vertex: v.clone(),
                            side,
                        });
                    }
                }
            }
            let mut reported = HashSet::new();
            for v in e.tail.iter().chain(&e.head) {
                if !self.contains_vertex(v) && reported.insert(v) {
                    out.push(Violation::UnknownVertex {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    });
                }
            }
            if e.weight.is_zero() || e.weight.is_negative() {
                out.push(Violation::NonPositiveEdgeWeight { edge: e.id.clone() });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Replaces every hyperedge `A -> B` by the `|A|·|B|` unit edges `x -> y`.
    /// Unit edges are named by [`unit_edge_id`] and inherit the hyperedge
    /// weight. Vertices are unchanged.
    pub fn corresponding_digraph(&self) -> DirectedHypergraph {
        let mut g = DirectedHypergraph {
            vertices: self.vertices.clone(),
            ..Default::default()
        };
        for e in &self.edges {
            if e.is_unit() {
                g.add_edge(e.clone())
                    .expect("unit edge ids are unique in the source");
                continue;
            }
            for x in &e.tail {
                for y in &e.head {
                    let unit = Hyperedge {
                        id: unit_edge_id(&e.id, x, y),
                        tail: vec![x.clone()],
                        head: vec![y.clone()],
                        weight: e.weight.clone(),
                    };
                    g.add_edge(unit)
                        .expect("unit edge ids are unique per hyperedge");
                }
            }
        }
        g
    }

    /// Returns a copy of this hypergraph with `edge` edited; `self` is untouched.
    pub fn edit_edge(&self, edge: &EdgeId, edit: &EdgeEdit) -> Result<Self, HypergraphError> {
        let idx = *self
            .edge_index
            .get(edge)
            .ok_or_else(|| HypergraphError::UnknownEdge(edge.clone()))?;
        let old = &self.edges[idx];
        let tail = edit_side(old, Side::Tail, &edit.remove_tail, &edit.add_tail, self)?;
        let head = edit_side(old, Side::Head, &edit.remove_head, &edit.add_head, self)?;

        let mut out = DirectedHypergraph {
            vertices: self.vertices.clone(),
            ..Default::default()
        };
        for (i, e) in self.edges.iter().enumerate() {
            let e = if i == idx {
                Hyperedge {
                    id: e.id.clone(),
                    tail: tail.clone(),
                    head: head.clone(),
                    weight: e.weight.clone(),
                }
            } else {
                e.clone()
            };
            out.add_edge(e)?;
        }
        Ok(out)
    }
}

/// Id of the unit edge `x -> y` produced from hyperedge `edge` by
/// [`DirectedHypergraph::corresponding_digraph`]. Unit hyperedges keep their id.
pub fn unit_edge_id(edge: &EdgeId, x: &VertexId, y: &VertexId) -> EdgeId {
    EdgeId(format!("{edge}[{x}>{y}]"))
}

/// Vertex removals and additions applied to one side or both sides of a
/// hyperedge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeEdit {
    pub remove_tail: Vec<VertexId>,
    pub remove_head: Vec<VertexId>,
    pub add_tail: Vec<VertexId>,
    pub add_head: Vec<VertexId>,
}

impl EdgeEdit {
    pub fn is_identity(&self) -> bool {
        self.remove_tail.is_empty()
            && self.remove_head.is_empty()
            && self.add_tail.is_empty()
            && self.add_head.is_empty()
    }

    /// The edit that undoes this one.
    pub fn inverse(&self) -> EdgeEdit {
        EdgeEdit {
            remove_tail: self.add_tail.clone(),
            remove_head: self.add_head.clone(),
            add_tail: self.remove_tail.clone(),
            add_head: self.remove_head.clone(),
        }
    }
}

fn edit_side(
    edge: &Hyperedge,
    side: Side,
    remove: &[VertexId],
    add: &[VertexId],
    h: &DirectedHypergraph,
) -> Result<Vec<VertexId>, HypergraphError> {
    let current = edge.side(side);
    for v in remove {
        if !current.contains(v) {
            return Err(HypergraphError::NotMember {
                edge: edge.id.clone(),
                vertex: v.clone(),
                side,
            });
        }
    }
    let mut next: Vec<VertexId> = current
        .iter()
        .filter(|v| !remove.contains(v))
        .cloned()
        .collect();
    for v in add {
        h.require_vertex(v)?;
        if next.contains(v) {
            return Err(HypergraphError::AlreadyMember {
                edge: edge.id.clone(),
                vertex: v.clone(),
                side,
            });
        }
        next.push(v.clone());
    }
    if next.is_empty() {
        return Err(HypergraphError::EmptySide {
            edge: edge.id.clone(),
            side,
        });
    }
    Ok(next)
}
