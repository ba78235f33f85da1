//! Brute-force reference implementations and random instance generators.
//!
//! Nothing here calls the crate's solvers, BFS or measure builders; the
//! oracles work from the raw vertex and edge lists.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hyperricci::hypergraph::{DirectedHypergraph, Hyperedge, Vertex, VertexId};
use hyperricci::rational::Rational;
use hyperricci::{EdgeId, HyperDistance};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooLarge(&'static str),
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: Rational,
    /// Final basic cells `(row, col)` with their flow.
    pub witness: Vec<(usize, usize, Rational)>,
}

/// Exact minimum of `Σ c_ij x_ij` over couplings of `supply` and `demand`,
/// where `None` costs forbid a cell. Dense two-phase tableau simplex with
/// Bland's rule, so it terminates on degenerate instances.
pub fn oracle_wasserstein(
    supply: &[Rational],
    demand: &[Rational],
    cost: &[Vec<Option<u32>>],
) -> Result<OracleResult, OracleError> {
    if supply.len() > 8 || demand.len() > 8 {
        return Err(OracleError::TooLarge("support above 8"));
    }
    let (r, c) = (supply.len(), demand.len());
    let cells: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .filter(|&(i, j)| cost[i][j].is_some())
        .collect();
    let nx = cells.len();
    let rows = r + c;
    // Columns: cell variables, then one artificial per constraint, then rhs.
    let width = nx + rows + 1;
    let mut t: Vec<Vec<Rational>> = vec![vec![Rational::zero(); width]; rows];
    for (k, &(i, j)) in cells.iter().enumerate() {
        t[i][k] = Rational::one();
        t[r + j][k] = Rational::one();
    }
    for (row, rhs) in supply.iter().chain(demand).enumerate() {
        t[row][nx + row] = Rational::one();
        t[row][width - 1] = rhs.clone();
    }
    let mut basis: Vec<usize> = (nx..nx + rows).collect();

    // Phase one: minimise the sum of artificials.
    let phase_one: Vec<Rational> = (0..width - 1)
        .map(|k| if k >= nx { Rational::one() } else { Rational::zero() })
        .collect();
    simplex(&mut t, &mut basis, &phase_one, nx + rows);
    let infeasibility: Rational = basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= nx)
        .map(|(row, _)| t[row][width - 1].clone())
        .sum();
    if infeasibility.is_positive() {
        return Err(OracleError::Infeasible);
    }
    // Drive zero-level artificials out of the basis, or drop redundant rows.
    let mut row = 0;
    while row < t.len() {
        if basis[row] >= nx {
            match (0..nx).find(|&k| !t[row][k].is_zero()) {
                Some(k) => pivot(&mut t, &mut basis, row, k),
                None => {
                    t.remove(row);
                    basis.remove(row);
                    continue;
                }
            }
        }
        row += 1;
    }
    // Phase two on the cell variables only.
    let phase_two: Vec<Rational> = (0..width - 1)
        .map(|k| {
            if k < nx {
                let (i, j) = cells[k];
                Rational::from_integer(cost[i][j].unwrap().into())
            } else {
                Rational::zero()
            }
        })
        .collect();
    simplex(&mut t, &mut basis, &phase_two, nx);

    let mut value = Rational::zero();
    let mut witness = Vec::new();
    for (row, &b) in basis.iter().enumerate() {
        let x = t[row][width - 1].clone();
        value += &phase_two[b] * &x;
        let (i, j) = cells[b];
        witness.push((i, j, x));
    }
    witness.sort();
    Ok(OracleResult { value, witness })
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[row].clone();
    for (r, line) in t.iter_mut().enumerate() {
        if r != row && !line[col].is_zero() {
            let f = line[col].clone();
            for (x, y) in line.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    basis[row] = col;
}

/// Minimises `objective · x` from the current basic feasible tableau,
/// entering only columns below `allowed`.
fn simplex(t: &mut [Vec<Rational>], basis: &mut [usize], objective: &[Rational], allowed: usize) {
    let rhs = t[0].len() - 1;
    loop {
        let reduced = |k: usize, t: &[Vec<Rational>], basis: &[usize]| {
            let mut z = objective[k].clone();
            for (row, &b) in basis.iter().enumerate() {
                z -= &objective[b] * &t[row][k];
            }
            z
        };
        let Some(enter) = (0..allowed).find(|&k| !basis.contains(&k) && reduced(k, t, basis).is_negative())
        else {
            return;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for row in 0..t.len() {
            if t[row][enter].is_positive() {
                let ratio = &t[row][rhs] / &t[row][enter];
                let better = match &leave {
                    None => true,
                    Some((best_row, best)) => {
                        ratio < *best || (ratio == *best && basis[row] < basis[*best_row])
                    }
                };
                if better {
                    leave = Some((row, ratio));
                }
            }
        }
        let (row, _) = leave.expect("transportation LPs are bounded");
        pivot(t, basis, row, enter);
    }
}

/// Oracle over measures keyed by vertex, with a production-style cost.
pub fn oracle_measure_wasserstein<F>(
    mu: &BTreeMap<VertexId, Rational>,
    nu: &BTreeMap<VertexId, Rational>,
    cost: F,
) -> Result<Rational, OracleError>
where
    F: Fn(&VertexId, &VertexId) -> HyperDistance,
{
    let supply: Vec<Rational> = mu.values().cloned().collect();
    let demand: Vec<Rational> = nu.values().cloned().collect();
    let matrix: Vec<Vec<Option<u32>>> = mu
        .keys()
        .map(|u| nu.keys().map(|v| cost(u, v).finite()).collect())
        .collect();
    oracle_wasserstein(&supply, &demand, &matrix).map(|r| r.value)
}

/// Shortest hyperpath length by enumerating edge sequences without repeated
/// edges, memoised on (last edge, used-edge set).
pub fn oracle_distance(
    h: &DirectedHypergraph,
    u: &VertexId,
    v: &VertexId,
) -> Result<HyperDistance, OracleError> {
    let edges = h.edges();
    if edges.len() > 10 {
        return Err(OracleError::TooLarge("more than 10 edges"));
    }
    if u == v {
        return Ok(HyperDistance::Finite(0));
    }
    let mut best: Option<u32> = None;
    let mut seen = std::collections::HashSet::new();
    let mut stack: Vec<(usize, u32, u32)> = edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.tail.contains(u))
        .map(|(k, _)| (k, 1u32 << k, 1))
        .collect();
    while let Some((last, used, len)) = stack.pop() {
        if !seen.insert((last, used)) {
            continue;
        }
        if edges[last].head.contains(v) {
            best = Some(best.map_or(len, |b| b.min(len)));
        }
        for (k, e) in edges.iter().enumerate() {
            if used & (1 << k) == 0 && edges[last].head.iter().any(|x| e.tail.contains(x)) {
                stack.push((k, used | (1 << k), len + 1));
            }
        }
    }
    Ok(best.map_or(HyperDistance::Infinite, HyperDistance::Finite))
}

fn weight_of(h: &DirectedHypergraph, v: &VertexId, weighted: bool) -> Rational {
    if weighted {
        h.vertices().find(|x| &x.id == v).unwrap().weight.clone()
    } else {
        Rational::one()
    }
}

fn edge_weight(e: &Hyperedge, weighted: bool) -> Rational {
    if weighted {
        e.weight.clone()
    } else {
        Rational::one()
    }
}

/// The tail (`tail_side = true`) or head measure of `e`, evaluated one target
/// vertex at a time directly from the defining sum.
pub fn oracle_measure(
    h: &DirectedHypergraph,
    e: &EdgeId,
    tail_side: bool,
    weighted: bool,
) -> BTreeMap<VertexId, Rational> {
    let edge = h.edges().iter().find(|x| &x.id == e).unwrap();
    let side = if tail_side { &edge.tail } else { &edge.head };
    let total: Rational = side.iter().map(|x| weight_of(h, x, weighted)).sum();
    let mut out = BTreeMap::new();
    for target in h.vertices().map(|v| &v.id) {
        let mut mass = Rational::zero();
        for x in side {
            // hyperedges entering x (tail side) or leaving x (head side)
            let around: Vec<&Hyperedge> = h
                .edges()
                .iter()
                .filter(|f| if tail_side { f.head.contains(x) } else { f.tail.contains(x) })
                .collect();
            let share = weight_of(h, x, weighted) / &total;
            if around.is_empty() {
                if target == x {
                    mass += share;
                }
                continue;
            }
            let around_total: Rational = around.iter().map(|f| edge_weight(f, weighted)).sum();
            for f in &around {
                let far = if tail_side { &f.tail } else { &f.head };
                if !far.contains(target) {
                    continue;
                }
                let far_total: Rational = far.iter().map(|z| weight_of(h, z, weighted)).sum();
                mass += &share * edge_weight(f, weighted) / &around_total * weight_of(h, target, weighted)
                    / far_total;
            }
        }
        if !mass.is_zero() {
            out.insert(target.clone(), mass);
        }
    }
    out
}

/// Number of directed paths `v0 e1 v1 ... ek vk` with distinct vertices from
/// `u` to `v` (`u != v`), each step taking `v(i-1)` in the tail and `v(i)` in
/// the head of `e(i)`.
fn count_paths(h: &DirectedHypergraph, u: &VertexId, v: &VertexId, limit: usize) -> usize {
    fn go(
        h: &DirectedHypergraph,
        at: &VertexId,
        v: &VertexId,
        on_path: &mut Vec<VertexId>,
        count: &mut usize,
        limit: usize,
    ) {
        for e in h.edges().iter().filter(|e| e.tail.contains(at)) {
            for y in &e.head {
                if *count > limit {
                    return;
                }
                if y == v {
                    *count += 1;
                } else if !on_path.contains(y) {
                    on_path.push(y.clone());
                    go(h, y, v, on_path, count, limit);
                    on_path.pop();
                }
            }
        }
    }
    let mut count = 0;
    go(h, u, v, &mut vec![u.clone()], &mut count, limit);
    count
}

/// Both hypertree conditions: no directed cycle (a hyperloop counts), and
/// at most one directed path between any ordered pair of vertices.
pub fn is_hypertree(h: &DirectedHypergraph) -> bool {
    let ids: Vec<VertexId> = h.vertices().map(|v| v.id.clone()).collect();
    for u in &ids {
        if count_paths(h, u, u, 0) > 0 {
            return false;
        }
        for v in &ids {
            if u != v && count_paths(h, u, v, 1) > 1 {
                return false;
            }
        }
    }
    true
}

/// Random hypergraph with 1..=12 vertices, 0..=8 edges and sides of size
/// 1..=3 (sides are sets; tails and heads may overlap).
pub fn random_hypergraph<R: Rng>(rng: &mut R) -> DirectedHypergraph {
    let n = rng.gen_range(1..=12);
    let m = rng.gen_range(0..=8);
    let side = |rng: &mut R| -> Vec<String> {
        let k = rng.gen_range(1..=3.min(n));
        sample(rng, n, k).into_iter().map(|i| format!("v{i}")).collect()
    };
    let edges = (1..=m)
        .map(|k| {
            let tail = side(rng);
            let head = side(rng);
            Hyperedge::new(format!("e{k}"), tail, head)
        })
        .collect();
    DirectedHypergraph::from_parts((0..n).map(|i| format!("v{i}")), edges).unwrap()
}

pub fn random_weight<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=9).into())
}

/// Random probability vector of length `len` with small rational entries.
pub fn random_probability<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..len).map(|_| rng.gen_range(1..=12)).collect();
    let total: i64 = raw.iter().sum();
    raw.iter()
        .map(|&x| Rational::new(x.into(), total.into()))
        .collect()
}

/// Proptest strategy for the same corpus as [`random_hypergraph`].
pub fn arb_hypergraph() -> impl Strategy<Value = DirectedHypergraph> {
    (1usize..=12)
        .prop_flat_map(|n| {
            let side = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=3.min(n));
            (Just(n), proptest::collection::vec((side.clone(), side), 0..=8))
        })
        .prop_map(|(n, sides)| {
            let edges = sides
                .into_iter()
                .enumerate()
                .map(|(k, (t, h))| {
                    Hyperedge::new(
                        format!("e{}", k + 1),
                        t.into_iter().map(|i| format!("v{i}")),
                        h.into_iter().map(|i| format!("v{i}")),
                    )
                })
                .collect();
            DirectedHypergraph::from_parts((0..n).map(|i| format!("v{i}")), edges).unwrap()
        })
}

/// Corpus graph with random positive rational weights on every vertex and
/// edge.
pub fn arb_weighted_hypergraph() -> impl Strategy<Value = DirectedHypergraph> {
    (arb_hypergraph(), any::<u64>()).prop_map(|(h, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        reweight(&h, &mut rng)
    })
}

pub fn reweight<R: Rng>(h: &DirectedHypergraph, rng: &mut R) -> DirectedHypergraph {
    let mut out = DirectedHypergraph::new();
    for v in h.vertices() {
        out.add_vertex(Vertex::new(v.id.clone()).with_weight(random_weight(rng)))
            .unwrap();
    }
    for e in h.edges() {
        out.add_edge(e.clone().with_weight(random_weight(rng))).unwrap();
    }
    out
}
