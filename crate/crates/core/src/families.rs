//! Generators for hypergraphs of known curvature: complete cyclic/layered
//! partition families, hyperloops, and random hypertrees.
//!
//! Partition families never contain edges inside a part. With `Grouped`
//! granularity each part is cut once into consecutive chunks (parts at even
//! positions by the tail size, odd positions by the head size) and every pair
//! of chunks along an arrow of the family becomes one hyperedge, so the
//! corresponding directed graph is still complete along each arrow.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::curvature_all;
use crate::error::FamilyError;
use crate::hypergraph::{DirectedHypergraph, EdgeId, Hyperedge, Vertex, VertexId};
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Parts `A -> B -> C -> A`, complete along each arrow.
    Ricci1Tripartite,
    /// Sources `A -> ` sinks `B`, complete.
    FlatBipartite,
    /// Source `A`, saddle `B`, sink `C`: `A -> B`, `B -> C`, `A -> C`.
    FlatTripartite,
    /// Parts `A -> B -> C -> D -> A`, complete along each arrow.
    RicciNeg2Quadripartite,
    /// Random hypertree; sizes are `[edges]` or `[edges, max side size]`.
    Hypertree,
    /// A single hyperedge `A -> A`; sizes are `[|A|]`.
    Hyperloop,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Ricci1Tripartite,
        Family::FlatBipartite,
        Family::FlatTripartite,
        Family::RicciNeg2Quadripartite,
        Family::Hypertree,
        Family::Hyperloop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ricci1Tripartite => "ricci1-tripartite",
            Family::FlatBipartite => "flat-bipartite",
            Family::FlatTripartite => "flat-tripartite",
            Family::RicciNeg2Quadripartite => "ricci-neg2-quadripartite",
            Family::Hypertree => "hypertree",
            Family::Hyperloop => "hyperloop",
        }
    }

    /// Curvature shared by every hyperedge, for the constant-curvature
    /// families.
    pub fn nominal_curvature(self) -> Option<Rational> {
        match self {
            Family::Ricci1Tripartite | Family::Hyperloop => Some(int(1)),
            Family::FlatBipartite | Family::FlatTripartite => Some(int(0)),
            Family::RicciNeg2Quadripartite => Some(int(-2)),
            Family::Hypertree => None,
        }
    }

    fn arrows(self) -> &'static [(usize, usize)] {
        match self {
            Family::Ricci1Tripartite => &[(0, 1), (1, 2), (2, 0)],
            Family::FlatBipartite => &[(0, 1)],
            Family::FlatTripartite => &[(0, 1), (1, 2), (0, 2)],
            Family::RicciNeg2Quadripartite => &[(0, 1), (1, 2), (2, 3), (3, 0)],
            Family::Hypertree | Family::Hyperloop => &[],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Granularity {
    #[default]
    Unit,
    Grouped {
        tail: usize,
        head: usize,
    },
}

impl FromStr for Granularity {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "unit" {
            return Ok(Granularity::Unit);
        }
        let bad = || FamilyError::BadGranularity(s.to_string());
        let (t, h) = s.split_once('x').ok_or_else(bad)?;
        let tail: usize = t.parse().map_err(|_| bad())?;
        let head: usize = h.parse().map_err(|_| bad())?;
        if tail == 0 || head == 0 {
            return Err(bad());
        }
        Ok(Granularity::Grouped { tail, head })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub granularity: Granularity,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(family: Family, sizes: Vec<usize>) -> Self {
        FamilySpec {
            family,
            sizes,
            granularity: Granularity::Unit,
            seed: 0,
        }
    }

    pub fn with_granularity(mut self, granularity: Granularity) -> Self {
        self.granularity = granularity;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub fn generate(spec: &FamilySpec) -> Result<DirectedHypergraph, FamilyError> {
    let family = spec.family;
    let arity = |expected: &'static str, ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(FamilyError::Arity {
                family: family.name(),
                expected,
                got: spec.sizes.len(),
            })
        }
    };
    match family {
        Family::Hypertree => arity("1 or 2", matches!(spec.sizes.len(), 1 | 2))?,
        Family::Hyperloop => arity("1", spec.sizes.len() == 1)?,
        _ => {
            let parts = family.arrows().iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) + 1;
            let expected = match parts {
                2 => "2",
                3 => "3",
                _ => "4",
            };
            arity(expected, spec.sizes.len() == parts)?
        }
    }
    if spec.sizes.contains(&0) {
        return Err(FamilyError::ZeroSize);
    }
    Ok(match family {
        Family::Hypertree => {
            let max_side = spec.sizes.get(1).copied().unwrap_or(4);
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            random_hypertree(&mut rng, spec.sizes[0], max_side)
        }
        Family::Hyperloop => hyperloop(spec.sizes[0]),
        _ => partition_family(family, &spec.sizes, spec.granularity),
    })
}

const PART_NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn partition_family(family: Family, sizes: &[usize], granularity: Granularity) -> DirectedHypergraph {
    let parts: Vec<Vec<VertexId>> = sizes
        .iter()
        .enumerate()
        .map(|(p, &n)| {
            (1..=n)
                .map(|i| VertexId::new(format!("{}{i}", PART_NAMES[p])))
                .collect()
        })
        .collect();
    let chunks: Vec<Vec<Vec<VertexId>>> = parts
        .iter()
        .enumerate()
        .map(|(p, members)| {
            let size = match granularity {
                Granularity::Unit => 1,
                Granularity::Grouped { tail, head } => {
                    if p % 2 == 0 {
                        tail
                    } else {
                        head
                    }
                }
            };
            members.chunks(size).map(<[_]>::to_vec).collect()
        })
        .collect();

    let mut h = DirectedHypergraph::new();
    for v in parts.iter().flatten() {
        h.add_vertex(Vertex::new(v.clone()))
            .expect("part names are distinct");
    }
    let mut next = 1;
    for &(from, to) in family.arrows() {
        for tail in &chunks[from] {
            for head in &chunks[to] {
                h.add_edge(Hyperedge::new(format!("e{next}"), tail.clone(), head.clone()))
                    .expect("edge ids are sequential");
                next += 1;
            }
        }
    }
    h
}

/// The single hyperedge `{a1..an} -> {a1..an}`.
pub fn hyperloop(n: usize) -> DirectedHypergraph {
    let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    DirectedHypergraph::from_parts(names.clone(), vec![Hyperedge::new("e1", names.clone(), names)])
        .expect("fresh names")
}

/// Grows a hypertree one hyperedge at a time. Each new hyperedge touches
/// exactly one existing vertex (on its tail or head side) and is otherwise
/// made of fresh vertices, so the result has no directed cycle and at most
/// one directed path between any two vertices.
pub fn random_hypertree<R: Rng>(rng: &mut R, edges: usize, max_side: usize) -> DirectedHypergraph {
    let max_side = max_side.max(1);
    let mut h = DirectedHypergraph::new();
    let mut fresh = 0usize;
    let mut new_vertex = |h: &mut DirectedHypergraph| {
        fresh += 1;
        let id = VertexId::new(format!("v{fresh}"));
        h.add_vertex(Vertex::new(id.clone())).expect("fresh vertex");
        id
    };
    for k in 1..=edges {
        let tail_size = rng.gen_range(1..=max_side);
        let head_size = rng.gen_range(1..=max_side);
        let anchor: Option<(VertexId, bool)> = if k == 1 {
            None
        } else {
            let existing: Vec<VertexId> = h.vertex_ids().cloned().collect();
            let v = existing.choose(rng).expect("nonempty after first edge").clone();
            Some((v, rng.gen_bool(0.5)))
        };
        let mut tail = Vec::new();
        let mut head = Vec::new();
        if let Some((v, in_tail)) = &anchor {
            if *in_tail {
                tail.push(v.clone());
            } else {
                head.push(v.clone());
            }
        }
        while tail.len() < tail_size {
            tail.push(new_vertex(&mut h));
        }
        while head.len() < head_size {
            head.push(new_vertex(&mut h));
        }
        tail.shuffle(rng);
        head.shuffle(rng);
        h.add_edge(Hyperedge::new(format!("e{k}"), tail, head))
            .expect("edge ids are sequential");
    }
    h
}

/// Copy of `h` with every vertex and hyperedge weight drawn uniformly from
/// `{p/q : 1 <= p, q <= 9}`.
pub fn with_random_weights<R: Rng>(h: &DirectedHypergraph, rng: &mut R) -> DirectedHypergraph {
    let mut draw = || Rational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=9).into());
    let mut out = DirectedHypergraph::new();
    for v in h.vertices() {
        let mut v = v.clone();
        v.weight = draw();
        out.add_vertex(v).expect("ids unique in source");
    }
    for e in h.edges() {
        out.add_edge(e.clone().with_weight(draw()))
            .expect("ids unique in source");
    }
    out
}

/// `−2 + Σ_{sources in A} w/ΣA + Σ_{sinks in B} w/ΣB`, the curvature of a
/// hyperedge in a (weighted) hypertree. Sources are tail vertices without
/// incoming hyperedges, sinks are head vertices without outgoing ones.
pub fn hypertree_curvature(h: &DirectedHypergraph, e: &EdgeId) -> Option<Rational> {
    let edge = h.edge(e)?;
    let fraction = |side: &[VertexId], free: &dyn Fn(&VertexId) -> bool| {
        let total: Rational = side.iter().map(|v| h.vertex_weight(v)).sum();
        let hit: Rational = side
            .iter()
            .filter(|v| free(v))
            .map(|v| h.vertex_weight(v))
            .sum();
        hit / total
    };
    let sources = fraction(&edge.tail, &|v| h.incoming(v).next().is_none());
    let sinks = fraction(&edge.head, &|v| h.outgoing(v).next().is_none());
    Some(int(-2) + sources + sinks)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCheck {
    pub edge: EdgeId,
    pub expected: Rational,
    pub actual: Rational,
}

impl EdgeCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyVerification {
    pub checks: Vec<EdgeCheck>,
}

impl FamilyVerification {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(EdgeCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EdgeCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Compares every hyperedge's curvature with `expected`, exactly.
pub fn verify_family(
    h: &DirectedHypergraph,
    expected: &Rational,
) -> Result<FamilyVerification, FamilyError> {
    verify_with(h, |_| expected.clone())
}

/// Like [`verify_family`] with a per-edge expectation.
pub fn verify_with<F>(h: &DirectedHypergraph, expected: F) -> Result<FamilyVerification, FamilyError>
where
    F: Fn(&EdgeId) -> Rational,
{
    let checks = curvature_all(h)?
        .into_iter()
        .map(|r| EdgeCheck {
            expected: expected(&r.edge),
            actual: r.kappa,
            edge: r.edge,
        })
        .collect();
    Ok(FamilyVerification { checks })
}
