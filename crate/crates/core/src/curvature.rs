//! Ollivier-Ricci curvature `κ(e) = 1 − W(μ_{A^in}, μ_{B^out})` of directed
//! hyperedges, together with the bounds it is checked against.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::CurvatureError;
use crate::hypergraph::{unit_edge_id, DirectedHypergraph, EdgeEdit, EdgeId, VertexId};
use crate::measure::{head_measure, tail_measure, DiscreteMeasure};
use crate::metric::{distance_matrix, DistanceMatrix, HyperDistance};
use crate::rational::{int, Rational};
use crate::transport::{
    decompose, dual_from_plan, wasserstein, DualCertificate, MassDecomposition, TransportPlan,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureReport {
    pub edge: EdgeId,
    pub kappa: Rational,
    pub wasserstein: Rational,
    pub decomposition: MassDecomposition,
    pub plan: TransportPlan,
    pub tail_measure: DiscreteMeasure,
    pub head_measure: DiscreteMeasure,
    pub dual: Option<DualCertificate>,
}

impl CurvatureReport {
    /// `W − dual bound`, when a certificate is attached.
    pub fn duality_gap(&self) -> Option<Rational> {
        self.dual.as_ref().map(|d| &self.wasserstein - &d.bound)
    }
}

/// Measures of `e` and the distances between their supports.
pub struct EdgeTransport {
    pub edge: EdgeId,
    pub tail: DiscreteMeasure,
    pub head: DiscreteMeasure,
    pub distances: DistanceMatrix,
}

impl EdgeTransport {
    /// Builds both measures and checks that every mass-hole pair is at
    /// distance at most 3.
    pub fn new(h: &DirectedHypergraph, e: &EdgeId) -> Result<Self, CurvatureError> {
        let tail = tail_measure(h, e)?;
        let head = head_measure(h, e)?;
        let sources: Vec<VertexId> = tail.support().cloned().collect();
        let targets: Vec<VertexId> = head.support().cloned().collect();
        let distances = distance_matrix(h, &sources, &targets)?;
        for (i, row) in distances.rows().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                if d > HyperDistance::Finite(3) {
                    return Err(CurvatureError::DistanceBound {
                        edge: e.clone(),
                        from: sources[i].clone(),
                        to: targets[j].clone(),
                        distance: d,
                    });
                }
            }
        }
        Ok(EdgeTransport {
            edge: e.clone(),
            tail,
            head,
            distances,
        })
    }

    pub fn cost(&self) -> impl Fn(&VertexId, &VertexId) -> HyperDistance + '_ {
        move |u, v| self.distances.get(u, v)
    }

    pub fn solve(self, with_dual: bool) -> Result<CurvatureReport, CurvatureError> {
        let EdgeTransport {
            edge,
            tail,
            head,
            distances,
        } = self;
        let cost = |u: &VertexId, v: &VertexId| distances.get(u, v);
        let (w, plan) = wasserstein(&tail, &head, cost)?;
        let decomposition = decompose(&plan, cost)?;
        let dual = if with_dual {
            Some(dual_from_plan(&tail, &head, &plan, cost)?)
        } else {
            None
        };
        debug_assert_eq!(decomposition.wasserstein(), w);
        Ok(CurvatureReport {
            edge,
            kappa: Rational::one() - &w,
            wasserstein: w,
            decomposition,
            plan,
            tail_measure: tail,
            head_measure: head,
            dual,
        })
    }
}

pub fn curvature(h: &DirectedHypergraph, e: &EdgeId) -> Result<CurvatureReport, CurvatureError> {
    EdgeTransport::new(h, e)?.solve(false)
}

/// Like [`curvature`], with a Kantorovich dual certificate attached.
pub fn curvature_with_dual(
    h: &DirectedHypergraph,
    e: &EdgeId,
) -> Result<CurvatureReport, CurvatureError> {
    EdgeTransport::new(h, e)?.solve(true)
}

/// One report per hyperedge, in insertion order.
pub fn curvature_all(h: &DirectedHypergraph) -> Result<Vec<CurvatureReport>, CurvatureError> {
    h.edges()
        .par_iter()
        .map(|e| curvature(h, &e.id))
        .collect()
}

/// Minimum curvature over the unit edges `x -> y` (x in the tail, y in the
/// head of `e`), each computed in the corresponding directed graph.
pub fn digraph_lower_bound(h: &DirectedHypergraph, e: &EdgeId) -> Result<Rational, CurvatureError> {
    let edge = h.require_edge(e)?;
    let g = h.corresponding_digraph();
    digraph_lower_bound_in(&g, edge.id.clone(), &edge.tail, &edge.head, edge.is_unit())
}

fn digraph_lower_bound_in(
    g: &DirectedHypergraph,
    edge: EdgeId,
    tail: &[VertexId],
    head: &[VertexId],
    is_unit: bool,
) -> Result<Rational, CurvatureError> {
    let mut best: Option<Rational> = None;
    for x in tail {
        for y in head {
            let unit = if is_unit {
                edge.clone()
            } else {
                unit_edge_id(&edge, x, y)
            };
            let k = curvature(g, &unit)?.kappa;
            if best.as_ref().is_none_or(|b| k < *b) {
                best = Some(k);
            }
        }
    }
    Ok(best.expect("validated edges have nonempty sides"))
}

/// `Σ_u min(μ_{A^in}(u), μ_{B^out}(u))`, an upper bound on `κ(e)`.
pub fn overlap_upper_bound(h: &DirectedHypergraph, e: &EdgeId) -> Result<Rational, CurvatureError> {
    let tail = tail_measure(h, e)?;
    let head = head_measure(h, e)?;
    Ok(overlap(&tail, &head))
}

pub fn overlap(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> Rational {
    mu.iter()
        .map(|(v, m)| {
            let other = nu.get(v);
            if *m < other {
                m.clone()
            } else {
                other
            }
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Curvature of `e` before and after `edit`.
pub fn perturbation_delta(
    h: &DirectedHypergraph,
    e: &EdgeId,
    edit: &EdgeEdit,
) -> Result<(Rational, Rational), CurvatureError> {
    let edited = h.edit_edge(e, edit)?;
    let before = curvature(h, e)?.kappa;
    let after = curvature(&edited, e)?.kappa;
    Ok((before, after))
}

fn capped(x: Rational) -> Rational {
    let three = int(3);
    if x > three {
        three
    } else {
        x
    }
}

/// `3(l/n + l'/m) ∧ 3` for removing `l` of `n` tail and `l'` of `m` head
/// vertices.
pub fn removal_bound(l: usize, n: usize, l_head: usize, m: usize) -> Rational {
    let r = |a: usize, b: usize| Rational::new(a.into(), b.into());
    capped(int(3) * (r(l, n) + r(l_head, m)))
}

/// `3(l/(l+n) + l'/(l'+m)) ∧ 3` for adding `l` tail and `l'` head vertices
/// to a hyperedge with `n` tail and `m` head vertices.
pub fn addition_bound(l: usize, n: usize, l_head: usize, m: usize) -> Rational {
    let r = |a: usize, b: usize| Rational::new(a.into(), b.into());
    capped(int(3) * (r(l, l + n) + r(l_head, l_head + m)))
}

/// The bound that applies to `edit` on a hyperedge of size `n -> m`: the
/// removal bound for pure removals, the addition bound for pure additions.
/// Mixed edits get `None`.
pub fn perturbation_bound(edit: &EdgeEdit, n: usize, m: usize) -> Option<Rational> {
    let removes = !edit.remove_tail.is_empty() || !edit.remove_head.is_empty();
    let adds = !edit.add_tail.is_empty() || !edit.add_head.is_empty();
    match (removes, adds) {
        (false, false) => Some(Rational::zero()),
        (true, false) => Some(removal_bound(
            edit.remove_tail.len(),
            n,
            edit.remove_head.len(),
            m,
        )),
        (false, true) => Some(addition_bound(edit.add_tail.len(), n, edit.add_head.len(), m)),
        (true, true) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hyperedge;
    use crate::rational::ratio;

    fn graph(vertices: &[&str], edges: Vec<Hyperedge>) -> DirectedHypergraph {
        DirectedHypergraph::from_parts(vertices.iter().copied(), edges).unwrap()
    }

    fn kappa(h: &DirectedHypergraph, e: &str) -> Rational {
        curvature(h, &e.into()).unwrap().kappa
    }

    #[test]
    fn hyperloop_is_one() {
        for n in 1..=3 {
            let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
            let h = DirectedHypergraph::from_parts(
                names.clone(),
                vec![Hyperedge::new("e", names.clone(), names.clone())],
            )
            .unwrap();
            let r = curvature(&h, &"e".into()).unwrap();
            assert_eq!(r.kappa, int(1));
            assert_eq!(r.decomposition.mu0, int(1));
        }
    }

    #[test]
    fn isolated_edge_is_flat() {
        let h = graph(&["x", "y"], vec![Hyperedge::new("e", ["x"], ["y"])]);
        assert_eq!(kappa(&h, "e"), int(0));
    }

    #[test]
    fn small_hypertree_edge() {
        // n = 2, k = 1 (x1 is a source); m = 3, k' = 2 (y3 has an out-edge)
        let h = graph(
            &["x1", "x2", "z", "y1", "y2", "y3", "w"],
            vec![
                Hyperedge::new("e", ["x1", "x2"], ["y1", "y2", "y3"]),
                Hyperedge::new("in", ["z"], ["x2"]),
                Hyperedge::new("out", ["y3"], ["w"]),
            ],
        );
        let r = curvature(&h, &"e".into()).unwrap();
        assert_eq!(r.kappa, ratio(-5, 6));
        assert_eq!(r.decomposition.kappa(), r.kappa);
    }

    #[test]
    fn three_cycle_is_ricci_one() {
        let h = graph(
            &["a", "b", "c"],
            vec![
                Hyperedge::new("e1", ["a"], ["b"]),
                Hyperedge::new("e2", ["b"], ["c"]),
                Hyperedge::new("e3", ["c"], ["a"]),
            ],
        );
        let all = curvature_all(&h).unwrap();
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|r| r.kappa == int(1)));
        assert_eq!(all[1].edge, EdgeId::from("e2"));
    }

    #[test]
    fn four_cycle_is_minus_two() {
        let h = graph(
            &["a", "b", "c", "d"],
            vec![
                Hyperedge::new("e1", ["a"], ["b"]),
                Hyperedge::new("e2", ["b"], ["c"]),
                Hyperedge::new("e3", ["c"], ["d"]),
                Hyperedge::new("e4", ["d"], ["a"]),
            ],
        );
        for r in curvature_all(&h).unwrap() {
            assert_eq!(r.kappa, int(-2));
            assert_eq!(r.decomposition.mu3, int(1));
        }
    }

    #[test]
    fn empty_edge_set() {
        let h = graph(&["a"], vec![]);
        assert!(curvature_all(&h).unwrap().is_empty());
    }

    #[test]
    fn bijection_at_distance_one_is_flat() {
        // Tail in-neighbours p, q; head out-neighbours r, s; p->r and q->s.
        let h = graph(
            &["x", "y", "p", "q", "r", "s"],
            vec![
                Hyperedge::new("e", ["x"], ["y"]),
                Hyperedge::new("ip", ["p"], ["x"]),
                Hyperedge::new("iq", ["q"], ["x"]),
                Hyperedge::new("or", ["y"], ["r"]),
                Hyperedge::new("os", ["y"], ["s"]),
                Hyperedge::new("pr", ["p"], ["r"]),
                Hyperedge::new("qs", ["q"], ["s"]),
            ],
        );
        assert_eq!(kappa(&h, "e"), int(0));
    }

    #[test]
    fn bijection_at_distance_two_is_minus_one() {
        let h = graph(
            &["x", "y", "p", "q", "r", "s", "m1", "m2"],
            vec![
                Hyperedge::new("e", ["x"], ["y"]),
                Hyperedge::new("ip", ["p"], ["x"]),
                Hyperedge::new("iq", ["q"], ["x"]),
                Hyperedge::new("or", ["y"], ["r"]),
                Hyperedge::new("os", ["y"], ["s"]),
                Hyperedge::new("pm", ["p"], ["m1"]),
                Hyperedge::new("mr", ["m1"], ["r"]),
                Hyperedge::new("qm", ["q"], ["m2"]),
                Hyperedge::new("ms", ["m2"], ["s"]),
            ],
        );
        assert_eq!(kappa(&h, "e"), int(-1));
    }

    #[test]
    fn bounds_on_a_unit_edge() {
        let h = graph(
            &["a", "b", "c"],
            vec![
                Hyperedge::new("e1", ["a"], ["b"]),
                Hyperedge::new("e2", ["b"], ["c"]),
            ],
        );
        let k = kappa(&h, "e1");
        assert_eq!(digraph_lower_bound(&h, &"e1".into()).unwrap(), k);
        // disjoint supports
        assert_eq!(overlap_upper_bound(&h, &"e1".into()).unwrap(), int(0));
    }

    #[test]
    fn overlap_of_identical_measures_is_one() {
        let h = graph(&["a", "b"], vec![Hyperedge::new("e", ["a", "b"], ["a", "b"])]);
        assert_eq!(overlap_upper_bound(&h, &"e".into()).unwrap(), int(1));
    }

    #[test]
    fn identity_edit_changes_nothing() {
        let h = graph(&["x", "y"], vec![Hyperedge::new("e", ["x"], ["y"])]);
        let (before, after) = perturbation_delta(&h, &"e".into(), &EdgeEdit::default()).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(removal_bound(1, 2, 0, 1), ratio(3, 2));
        assert_eq!(removal_bound(1, 2, 1, 2), int(3));
        assert_eq!(addition_bound(0, 1, 1, 1), ratio(3, 2));
        assert_eq!(addition_bound(2, 1, 2, 1), int(3));
        let edit = EdgeEdit {
            add_head: vec!["q".into()],
            ..Default::default()
        };
        assert_eq!(perturbation_bound(&edit, 1, 1), Some(ratio(3, 2)));
    }

    #[test]
    fn dual_certificate_is_attached_on_request() {
        let h = graph(
            &["x1", "x2", "z", "y1", "y2", "y3", "w"],
            vec![
                Hyperedge::new("e", ["x1", "x2"], ["y1", "y2", "y3"]),
                Hyperedge::new("in", ["z"], ["x2"]),
                Hyperedge::new("out", ["y3"], ["w"]),
            ],
        );
        let r = curvature_with_dual(&h, &"e".into()).unwrap();
        let gap = r.duality_gap().unwrap();
        assert!(gap >= int(0));
        assert!(curvature(&h, &"e".into()).unwrap().dual.is_none());
    }
}
