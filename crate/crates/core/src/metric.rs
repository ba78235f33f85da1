//! Directed hyperdistance: the least number of hyperedges traversed from one
//! vertex to another.
//!
//! A traversal enters hyperedge `e` from any vertex of its tail and may leave
//! from any vertex of its head, so one BFS level expands the frontier by the
//! heads of every hyperedge whose tail meets it.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::HypergraphError;
use crate::hypergraph::{DirectedHypergraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HyperDistance {
    Finite(u32),
    Infinite,
}

impl HyperDistance {
    pub fn finite(self) -> Option<u32> {
        match self {
            HyperDistance::Finite(d) => Some(d),
            HyperDistance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, HyperDistance::Finite(_))
    }
}

impl fmt::Display for HyperDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperDistance::Finite(d) => write!(f, "{d}"),
            HyperDistance::Infinite => f.write_str("inf"),
        }
    }
}

/// Distances from `source` to every reachable vertex (BFS over hyperedges).
pub fn distances_from(
    h: &DirectedHypergraph,
    source: &VertexId,
) -> Result<HashMap<VertexId, u32>, HypergraphError> {
    if !h.contains_vertex(source) {
        return Err(HypergraphError::UnknownVertex(source.clone()));
    }
    let mut dist = HashMap::new();
    dist.insert(source.clone(), 0);
    let mut used_edges = HashSet::new();
    let mut frontier = vec![source.clone()];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for w in &frontier {
            for e in h.outgoing(w) {
                if !used_edges.insert(&e.id) {
                    continue;
                }
                for y in &e.head {
                    if !dist.contains_key(y) {
                        dist.insert(y.clone(), depth);
                        next.push(y.clone());
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(dist)
}

pub fn distance(
    h: &DirectedHypergraph,
    u: &VertexId,
    v: &VertexId,
) -> Result<HyperDistance, HypergraphError> {
    if !h.contains_vertex(v) {
        return Err(HypergraphError::UnknownVertex(v.clone()));
    }
    let dist = distances_from(h, u)?;
    Ok(dist
        .get(v)
        .map_or(HyperDistance::Infinite, |&d| HyperDistance::Finite(d)))
}

/// Dense `sources × targets` table of hyperdistances, one BFS per source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    sources: Vec<VertexId>,
    targets: Vec<VertexId>,
    source_index: HashMap<VertexId, usize>,
    target_index: HashMap<VertexId, usize>,
    entries: Vec<HyperDistance>,
}

impl DistanceMatrix {
    pub fn sources(&self) -> &[VertexId] {
        &self.sources
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn at(&self, i: usize, j: usize) -> HyperDistance {
        self.entries[i * self.targets.len() + j]
    }

    /// Lookup by vertex; pairs outside the table are `Infinite`.
    pub fn get(&self, u: &VertexId, v: &VertexId) -> HyperDistance {
        match (self.source_index.get(u), self.target_index.get(v)) {
            (Some(&i), Some(&j)) => self.at(i, j),
            _ => HyperDistance::Infinite,
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[HyperDistance]> {
        self.entries.chunks(self.targets.len().max(1))
    }
}

pub fn distance_matrix(
    h: &DirectedHypergraph,
    sources: &[VertexId],
    targets: &[VertexId],
) -> Result<DistanceMatrix, HypergraphError> {
    for t in targets {
        if !h.contains_vertex(t) {
            return Err(HypergraphError::UnknownVertex(t.clone()));
        }
    }
    let mut entries = Vec::with_capacity(sources.len() * targets.len());
    for s in sources {
        let dist = distances_from(h, s)?;
        entries.extend(targets.iter().map(|t| {
            dist.get(t)
                .map_or(HyperDistance::Infinite, |&d| HyperDistance::Finite(d))
        }));
    }
    let index = |vs: &[VertexId]| {
        vs.iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect::<HashMap<_, _>>()
    };
    Ok(DistanceMatrix {
        source_index: index(sources),
        target_index: index(targets),
        sources: sources.to_vec(),
        targets: targets.to_vec(),
        entries,
    })
}
