//! Exact optimal transport between two discrete measures under an integer
//! (possibly infinite) cost.
//!
//! The primal is solved with the transportation simplex: north-west corner
//! start, MODI potentials, and Bland's rule (smallest cell index first, with
//! rows and columns ordered by vertex id) for both the entering and the
//! leaving cell. Flows are exact rationals; costs and potentials are small
//! integers. Unreachable pairs carry a symbolic penalty that dominates every
//! finite cost, so an optimum that still uses one proves infeasibility.

use std::collections::{BTreeMap, VecDeque};
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::TransportError;
use crate::hypergraph::VertexId;
use crate::measure::DiscreteMeasure;
use crate::metric::HyperDistance;
use crate::rational::{int, Rational};

/// Sparse coupling `(u, v) -> mass`; zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransportPlan {
    entries: BTreeMap<(VertexId, VertexId), Rational>,
}

impl TransportPlan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, from: VertexId, to: VertexId, mass: Rational) {
        if mass.is_zero() {
            self.entries.remove(&(from, to));
        } else {
            self.entries.insert((from, to), mass);
        }
    }

    pub fn get(&self, from: &VertexId, to: &VertexId) -> Rational {
        self.entries
            .get(&(from.clone(), to.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &VertexId, &Rational)> {
        self.entries.iter().map(|((u, v), m)| (u, v, m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Mass leaving each source vertex.
    pub fn source_marginal(&self) -> DiscreteMeasure {
        DiscreteMeasure::from_masses(self.iter().map(|(u, _, m)| (u.clone(), m.clone())))
    }

    /// Mass arriving at each target vertex.
    pub fn target_marginal(&self) -> DiscreteMeasure {
        DiscreteMeasure::from_masses(self.iter().map(|(_, v, m)| (v.clone(), m.clone())))
    }

    /// `Σ d(u,v)·ℰ(u,v)`, or `None` if the plan uses an unreachable pair.
    pub fn cost<F>(&self, cost: F) -> Option<Rational>
    where
        F: Fn(&VertexId, &VertexId) -> HyperDistance,
    {
        let mut total = Rational::zero();
        for (u, v, m) in self.iter() {
            total += int(i64::from(cost(u, v).finite()?)) * m;
        }
        Some(total)
    }
}

/// Mass moved at distance 0, 1, 2 and 3 by a plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassDecomposition {
    pub mu0: Rational,
    pub mu1: Rational,
    pub mu2: Rational,
    pub mu3: Rational,
}

impl MassDecomposition {
    pub fn new(mu0: Rational, mu1: Rational, mu2: Rational, mu3: Rational) -> Self {
        MassDecomposition { mu0, mu1, mu2, mu3 }
    }

    pub fn total(&self) -> Rational {
        &self.mu0 + &self.mu1 + &self.mu2 + &self.mu3
    }

    /// `μ1 + 2μ2 + 3μ3`.
    pub fn wasserstein(&self) -> Rational {
        &self.mu1 + int(2) * &self.mu2 + int(3) * &self.mu3
    }

    /// `μ0 − μ2 − 2μ3`; equals `1 − W` whenever the masses total one.
    pub fn kappa(&self) -> Rational {
        &self.mu0 - &self.mu2 - int(2) * &self.mu3
    }

    pub fn as_array(&self) -> [&Rational; 4] {
        [&self.mu0, &self.mu1, &self.mu2, &self.mu3]
    }
}

/// A potential `f` that is 1-Lipschitz on the support pairs, and the lower
/// bound `Σ f·μ − Σ f·ν` it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    pub potential: BTreeMap<VertexId, Rational>,
    pub bound: Rational,
}

fn check_measure(m: &DiscreteMeasure, which: &'static str) -> Result<(), TransportError> {
    if let Some((v, _)) = m.iter().find(|(_, mass)| mass.is_negative()) {
        return Err(TransportError::NegativeMass {
            which,
            vertex: v.clone(),
        });
    }
    let total = m.total();
    if total != int(1) {
        return Err(TransportError::Unnormalized { which, total });
    }
    Ok(())
}

/// Lexicographic cost: `penalty` counts unreachable pairs and dominates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
struct Cost {
    penalty: i64,
    finite: i64,
}

impl Cost {
    fn of(d: HyperDistance) -> Self {
        match d {
            HyperDistance::Finite(d) => Cost {
                penalty: 0,
                finite: i64::from(d),
            },
            HyperDistance::Infinite => Cost {
                penalty: 1,
                finite: 0,
            },
        }
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, o: Cost) -> Cost {
        Cost {
            penalty: self.penalty + o.penalty,
            finite: self.finite + o.finite,
        }
    }
}

impl Sub for Cost {
    type Output = Cost;
    fn sub(self, o: Cost) -> Cost {
        self + (-o)
    }
}

impl Neg for Cost {
    type Output = Cost;
    fn neg(self) -> Cost {
        Cost {
            penalty: -self.penalty,
            finite: -self.finite,
        }
    }
}

struct Simplex {
    rows: usize,
    cols: usize,
    cost: Vec<Cost>,
    flow: Vec<Rational>,
    basic: Vec<bool>,
}

impl Simplex {
    fn cell(&self, i: usize, j: usize) -> usize {
        i * self.cols + j
    }

    fn north_west(supply: &[Rational], demand: &[Rational], cost: Vec<Cost>) -> Self {
        let rows = supply.len();
        let cols = demand.len();
        let mut s = Simplex {
            rows,
            cols,
            cost,
            flow: vec![Rational::zero(); rows * cols],
            basic: vec![false; rows * cols],
        };
        let mut left = supply.to_vec();
        let mut need = demand.to_vec();
        let (mut i, mut j) = (0, 0);
        loop {
            let amount = if left[i] < need[j] {
                left[i].clone()
            } else {
                need[j].clone()
            };
            left[i] -= &amount;
            need[j] -= &amount;
            let c = s.cell(i, j);
            s.flow[c] = amount;
            s.basic[c] = true;
            if i + 1 == rows && j + 1 == cols {
                break;
            }
            // Exactly one index advances per step, giving rows + cols - 1
            // basic cells; ties (both exhausted) leave a zero basic cell.
            if (left[i].is_zero() && i + 1 < rows) || j + 1 == cols {
                i += 1;
            } else {
                j += 1;
            }
        }
        s
    }

    /// Row potentials `u` and column potentials `v` with `u_i + v_j = c_ij`
    /// on basic cells, anchored at `u_0 = 0`.
    fn potentials(&self) -> (Vec<Cost>, Vec<Cost>) {
        let mut u: Vec<Option<Cost>> = vec![None; self.rows];
        let mut v: Vec<Option<Cost>> = vec![None; self.cols];
        u[0] = Some(Cost::default());
        let mut queue = VecDeque::from([(true, 0usize)]);
        while let Some((is_row, k)) = queue.pop_front() {
            if is_row {
                let ui = u[k].expect("queued rows have potentials");
                for j in 0..self.cols {
                    let c = self.cell(k, j);
                    if self.basic[c] && v[j].is_none() {
                        v[j] = Some(self.cost[c] - ui);
                        queue.push_back((false, j));
                    }
                }
            } else {
                let vj = v[k].expect("queued columns have potentials");
                for i in 0..self.rows {
                    let c = self.cell(i, k);
                    if self.basic[c] && u[i].is_none() {
                        u[i] = Some(self.cost[c] - vj);
                        queue.push_back((true, i));
                    }
                }
            }
        }
        (
            u.into_iter().map(|x| x.expect("basis spans all rows")).collect(),
            v.into_iter().map(|x| x.expect("basis spans all columns")).collect(),
        )
    }

    /// Basic cells on the tree path from column `j` back to row `i`.
    fn tree_path(&self, i: usize, j: usize) -> Vec<usize> {
        // Nodes: rows 0..rows, columns rows..rows+cols.
        let n = self.rows + self.cols;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let start = self.rows + j;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            if node == i {
                break;
            }
            if node >= self.rows {
                let col = node - self.rows;
                for r in 0..self.rows {
                    let c = self.cell(r, col);
                    if self.basic[c] && !seen[r] {
                        seen[r] = true;
                        parent[r] = Some((node, c));
                        queue.push_back(r);
                    }
                }
            } else {
                for col in 0..self.cols {
                    let c = self.cell(node, col);
                    let other = self.rows + col;
                    if self.basic[c] && !seen[other] {
                        seen[other] = true;
                        parent[other] = Some((node, c));
                        queue.push_back(other);
                    }
                }
            }
        }
        let mut path = Vec::new();
        let mut node = i;
        while let Some((prev, c)) = parent[node] {
            path.push(c);
            node = prev;
        }
        path.reverse();
        path
    }

    fn solve(&mut self) {
        loop {
            let (u, v) = self.potentials();
            let entering = (0..self.rows * self.cols).find(|&c| {
                let (i, j) = (c / self.cols, c % self.cols);
                !self.basic[c] && self.cost[c] - u[i] - v[j] < Cost::default()
            });
            let Some(entering) = entering else {
                return;
            };
            let (i, j) = (entering / self.cols, entering % self.cols);
            // Cycle: entering (+), then alternating -, +, ... along the path
            // from column j to row i.
            let path = self.tree_path(i, j);
            let minus: Vec<usize> = path.iter().step_by(2).copied().collect();
            let plus: Vec<usize> = path.iter().skip(1).step_by(2).copied().collect();
            let leaving = *minus
                .iter()
                .min_by(|&&a, &&b| self.flow[a].cmp(&self.flow[b]).then(a.cmp(&b)))
                .expect("a cycle has at least one decreasing cell");
            let theta = self.flow[leaving].clone();
            for &c in &minus {
                self.flow[c] -= &theta;
            }
            for &c in &plus {
                self.flow[c] += &theta;
            }
            self.flow[entering] = theta;
            self.basic[entering] = true;
            self.basic[leaving] = false;
        }
    }
}

/// Minimum-cost coupling of `mu` and `nu`.
///
/// Returns the exact Wasserstein value and one optimal basic plan (at most
/// `|supp mu| + |supp nu| - 1` nonzero entries). Ties between optimal plans
/// are broken deterministically by vertex order.
pub fn wasserstein<F>(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    cost: F,
) -> Result<(Rational, TransportPlan), TransportError>
where
    F: Fn(&VertexId, &VertexId) -> HyperDistance,
{
    check_measure(mu, "source")?;
    check_measure(nu, "target")?;
    let rows: Vec<&VertexId> = mu.support().collect();
    let cols: Vec<&VertexId> = nu.support().collect();
    let distances: Vec<HyperDistance> = rows
        .iter()
        .flat_map(|u| cols.iter().map(|v| cost(u, v)))
        .collect();

    for (i, u) in rows.iter().enumerate() {
        if !distances[i * cols.len()..(i + 1) * cols.len()]
            .iter()
            .any(|d| d.is_finite())
        {
            return Err(TransportError::Infeasible((*u).clone()));
        }
    }

    let supply: Vec<Rational> = rows.iter().map(|u| mu.get(u)).collect();
    let demand: Vec<Rational> = cols.iter().map(|v| nu.get(v)).collect();
    let mut simplex =
        Simplex::north_west(&supply, &demand, distances.iter().map(|&d| Cost::of(d)).collect());
    simplex.solve();

    let mut plan = TransportPlan::new();
    let mut total = Rational::zero();
    for (c, flow) in simplex.flow.iter().enumerate() {
        if !simplex.basic[c] || flow.is_zero() {
            continue;
        }
        let (i, j) = (c / cols.len(), c % cols.len());
        match distances[c] {
            HyperDistance::Finite(d) => total += int(i64::from(d)) * flow,
            HyperDistance::Infinite => return Err(TransportError::Infeasible(rows[i].clone())),
        }
        plan.insert(rows[i].clone(), cols[j].clone(), flow.clone());
    }
    Ok((total, plan))
}

/// Splits a plan's mass by the distance it travels.
pub fn decompose<F>(plan: &TransportPlan, cost: F) -> Result<MassDecomposition, TransportError>
where
    F: Fn(&VertexId, &VertexId) -> HyperDistance,
{
    let mut mu = [
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    ];
    for (u, v, m) in plan.iter() {
        let distance = cost(u, v);
        match distance {
            HyperDistance::Finite(d @ 0..=3) => mu[d as usize] += m,
            _ => {
                return Err(TransportError::CostOutOfRange {
                    from: u.clone(),
                    to: v.clone(),
                    distance,
                })
            }
        }
    }
    let [mu0, mu1, mu2, mu3] = mu;
    Ok(MassDecomposition::new(mu0, mu1, mu2, mu3))
}

/// `Σ f·mu − Σ f·nu` for a potential that is 1-Lipschitz on every
/// (source-support, target-support) pair at finite distance.
pub fn dual_bound<F>(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    potential: &BTreeMap<VertexId, Rational>,
    cost: F,
) -> Result<Rational, TransportError>
where
    F: Fn(&VertexId, &VertexId) -> HyperDistance,
{
    let f = |v: &VertexId| {
        potential
            .get(v)
            .ok_or_else(|| TransportError::MissingPotential(v.clone()))
    };
    for u in mu.support() {
        let fu = f(u)?;
        for v in nu.support() {
            let fv = f(v)?;
            if let HyperDistance::Finite(d) = cost(u, v) {
                if fu - fv > int(i64::from(d)) {
                    return Err(TransportError::LipschitzViolation {
                        from: u.clone(),
                        to: v.clone(),
                        distance: HyperDistance::Finite(d),
                    });
                }
            }
        }
    }
    let mut bound = Rational::zero();
    for (u, m) in mu.iter() {
        bound += f(u)? * m;
    }
    for (v, m) in nu.iter() {
        bound -= f(v)? * m;
    }
    Ok(bound)
}

/// Maximizes the dual objective over potentials on `supp mu ∪ supp nu`.
pub fn solve_dual<F>(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    cost: F,
) -> Result<DualCertificate, TransportError>
where
    F: Fn(&VertexId, &VertexId) -> HyperDistance,
{
    let (_, plan) = wasserstein(mu, nu, &cost)?;
    dual_from_plan(mu, nu, &plan, cost)
}

/// Dual potential read off an optimal plan.
///
/// Vertices are nodes of a residual network with arcs `u -> v` at cost
/// `d(u,v)` for every support pair and reverse arcs `v -> u` at cost
/// `-d(u,v)` wherever the plan moves mass. Shortest distances `π` from a
/// virtual root (Bellman-Ford) give `f = -π`, which is Lipschitz on every
/// support pair and tight on every used pair.
pub fn dual_from_plan<F>(
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    plan: &TransportPlan,
    cost: F,
) -> Result<DualCertificate, TransportError>
where
    F: Fn(&VertexId, &VertexId) -> HyperDistance,
{
    let mut nodes: Vec<&VertexId> = mu.support().chain(nu.support()).collect();
    nodes.sort();
    nodes.dedup();
    let index = |v: &VertexId| nodes.binary_search(&v).expect("support vertex");

    let mut arcs: Vec<(usize, usize, i64)> = Vec::new();
    for u in mu.support() {
        for v in nu.support() {
            if u == v {
                continue;
            }
            if let HyperDistance::Finite(d) = cost(u, v) {
                let d = i64::from(d);
                arcs.push((index(u), index(v), d));
                if !plan.get(u, v).is_zero() {
                    arcs.push((index(v), index(u), -d));
                }
            }
        }
    }

    let mut pi = vec![0i64; nodes.len()];
    let mut settled = false;
    for _ in 0..=nodes.len() {
        let mut changed = false;
        for &(a, b, w) in &arcs {
            if pi[a] + w < pi[b] {
                pi[b] = pi[a] + w;
                changed = true;
            }
        }
        if !changed {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(TransportError::NotOptimal);
    }
    let potential: BTreeMap<VertexId, Rational> = nodes
        .iter()
        .zip(&pi)
        .map(|(v, p)| ((*v).clone(), int(-p)))
        .collect();
    let bound = dual_bound(mu, nu, &potential, cost)?;
    Ok(DualCertificate { potential, bound })
}
