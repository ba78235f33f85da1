//! In/out neighbourhood measures of a hyperedge `A -> B`.
//!
//! The tail measure splits unit mass over `A` (by vertex weight), then each
//! share over the hyperedges entering that vertex (by edge weight), then over
//! the tails of those hyperedges (by vertex weight). A tail vertex with no
//! incoming hyperedge keeps its share. The head measure mirrors this with
//! outgoing hyperedges and their heads. With all weights equal to one this is
//! the counting form `1 / (n · d_in(x) · |tail(e')|)`.
//!
//! A vertex lying in the tail of one of its own incoming hyperedges receives
//! the corresponding share at itself, so both measures always total one.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::HypergraphError;
use crate::hypergraph::{DirectedHypergraph, EdgeId, Hyperedge, Side, VertexId};
use crate::rational::Rational;

/// Finite measure on vertices with exact rational masses. Zero masses are
/// never stored, so the key set is the support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DiscreteMeasure {
    #[serde(serialize_with = "serialize_masses")]
    masses: BTreeMap<VertexId, Rational>,
}

fn serialize_masses<S: serde::Serializer>(
    masses: &BTreeMap<VertexId, Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(masses.len()))?;
    for (v, m) in masses {
        map.serialize_entry(v.as_str(), &crate::rational::format(m))?;
    }
    map.end()
}

impl DiscreteMeasure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn point(v: impl Into<VertexId>) -> Self {
        let mut m = Self::new();
        m.add(v.into(), Rational::one());
        m
    }

    pub fn from_masses<I, V>(masses: I) -> Self
    where
        I: IntoIterator<Item = (V, Rational)>,
        V: Into<VertexId>,
    {
        let mut m = Self::new();
        for (v, mass) in masses {
            m.add(v.into(), mass);
        }
        m
    }

    /// Adds `mass` at `v`, dropping the entry if it cancels to zero.
    pub fn add(&mut self, v: VertexId, mass: Rational) {
        if mass.is_zero() {
            return;
        }
        let slot = self.masses.entry(v).or_insert_with(Rational::zero);
        *slot += mass;
        if slot.is_zero() {
            self.masses.retain(|_, m| !m.is_zero());
        }
    }

    pub fn get(&self, v: &VertexId) -> Rational {
        self.masses.get(v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &VertexId> {
        self.masses.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &Rational)> {
        self.masses.iter()
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.masses.values().sum()
    }

    pub fn is_probability(&self) -> bool {
        self.total().is_one() && self.masses.values().all(|m| !m.is_negative())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Weighting {
    Counting,
    Weighted,
}

/// `μ_{A^in}` using vertex and edge weights (unit weights give the counting
/// form exactly).
pub fn tail_measure(h: &DirectedHypergraph, e: &EdgeId) -> Result<DiscreteMeasure, HypergraphError> {
    build(h, h.require_edge(e)?, Side::Tail, Weighting::Weighted)
}

/// `μ_{B^out}` using vertex and edge weights.
pub fn head_measure(h: &DirectedHypergraph, e: &EdgeId) -> Result<DiscreteMeasure, HypergraphError> {
    build(h, h.require_edge(e)?, Side::Head, Weighting::Weighted)
}

/// `μ_{A^in}` by counting degrees and tail sizes; weights are ignored.
pub fn tail_measure_unweighted(
    h: &DirectedHypergraph,
    e: &EdgeId,
) -> Result<DiscreteMeasure, HypergraphError> {
    build(h, h.require_edge(e)?, Side::Tail, Weighting::Counting)
}

/// `μ_{B^out}` by counting degrees and head sizes; weights are ignored.
pub fn head_measure_unweighted(
    h: &DirectedHypergraph,
    e: &EdgeId,
) -> Result<DiscreteMeasure, HypergraphError> {
    build(h, h.require_edge(e)?, Side::Head, Weighting::Counting)
}

fn build(
    h: &DirectedHypergraph,
    edge: &Hyperedge,
    side: Side,
    weighting: Weighting,
) -> Result<DiscreteMeasure, HypergraphError> {
    let members = edge.side(side);
    let weight_of = |v: &VertexId| match weighting {
        Weighting::Counting => Rational::one(),
        Weighting::Weighted => h.vertex_weight(v),
    };
    let edge_weight = |e: &Hyperedge| match weighting {
        Weighting::Counting => Rational::one(),
        Weighting::Weighted => e.weight.clone(),
    };
    let side_total: Rational = members.iter().map(weight_of).sum();

    let mut measure = DiscreteMeasure::new();
    for x in members {
        if !h.contains_vertex(x) {
            return Err(HypergraphError::UnknownVertex(x.clone()));
        }
        let share = weight_of(x) / &side_total;
        // Incoming hyperedges for a tail vertex, outgoing for a head vertex;
        // mass spreads over the opposite side of each neighbouring hyperedge.
        let neighbours: Vec<&Hyperedge> = match side {
            Side::Tail => h.incoming(x).collect(),
            Side::Head => h.outgoing(x).collect(),
        };
        if neighbours.is_empty() {
            measure.add(x.clone(), share);
            continue;
        }
        let neighbour_total: Rational = neighbours.iter().map(|e| edge_weight(e)).sum();
        for n in neighbours {
            let far = match side {
                Side::Tail => &n.tail,
                Side::Head => &n.head,
            };
            let far_total: Rational = far.iter().map(weight_of).sum();
            let edge_share = &share * edge_weight(n) / &neighbour_total;
            for z in far {
                measure.add(z.clone(), &edge_share * weight_of(z) / &far_total);
            }
        }
    }
    Ok(measure)
}
