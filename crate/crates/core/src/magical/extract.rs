//! Bi-cliques in dense double-magical graphs from forcing configurations.
//!
//! For a pivot pair `(b, b')` (possibly `b = b'`) and a forcing order type
//! `τ`, let `A` be the vertices `a < min(b, b')` adjacent to both pivots
//! and `C` the vertices `c > max(b, b')` adjacent to both, each filtered by
//! the signs of `τ` they determine. Every `(a, b, b', c)` with `a ∈ A`,
//! `c ∈ C` then has type `τ`; in a double-magical graph `ac` is an edge.
//! Only `a` and `c` that already have a partner on the other side (the
//! clique condition) are kept.

use serde::{Deserialize, Serialize};

use super::orders::{OrderType, Sign, TripleOrderedGraph};
use crate::biclique::{is_biclique, Biclique};
use crate::graph::VertexSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractStatus {
    Found,
    NoForcingConfigurations,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractOutcome {
    pub status: ExtractStatus,
    /// Bi-clique in the base graph; the size-0 sentinel when nothing was found.
    pub biclique: Biclique,
    pub order_type: Option<OrderType>,
    pub pivots: Option<(usize, usize)>,
    /// Forcing `(a, b, b', c)` whose four (or three) vertices span a clique.
    pub forcing_configurations: u64,
    /// Buckets whose `A × C` failed the edge check (zero on double-magical input).
    pub unverified_buckets: u64,
}

fn sign(below: bool) -> Sign {
    if below {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn extract_biclique_dense(tg: &TripleOrderedGraph) -> ExtractOutcome {
    let g = tg.graph();
    let (p2, p3) = (tg.perm2(), tg.perm3());
    let n = g.n();
    let mut best: Option<(Biclique, OrderType, (usize, usize))> = None;
    let mut configurations = 0u64;
    let mut unverified = 0u64;
    let cls = |s: Sign, t: Sign| usize::from(s == Sign::Minus) * 2 + usize::from(t == Sign::Minus);

    for b in 0..n {
        for b2 in 0..n {
            if b != b2 && !g.has_edge(b, b2) {
                continue;
            }
            let lo = b.min(b2);
            let hi = b.max(b2);
            let mut common = g.row(b).clone();
            if b != b2 {
                common.intersect_with(g.row(b2));
            }
            // classes by (s1, s3) and (s2, s4)
            let mut a_cls = vec![VertexSet::empty(n); 4];
            let mut c_cls = vec![VertexSet::empty(n); 4];
            for v in common.iter() {
                if v < lo {
                    a_cls[cls(sign(p2[v] < p2[b]), sign(p3[v] < p3[b2]))].insert(v);
                } else if v > hi {
                    c_cls[cls(sign(p2[b] < p2[v]), sign(p3[b2] < p3[v]))].insert(v);
                }
            }
            for (ai, a_set) in a_cls.iter().enumerate() {
                if a_set.is_empty() {
                    continue;
                }
                for (ci, c_set) in c_cls.iter().enumerate() {
                    if c_set.is_empty() {
                        continue;
                    }
                    let bit = |x: usize| sign(x == 0);
                    let tau = OrderType([bit(ai >> 1), bit(ci >> 1), bit(ai & 1), bit(ci & 1)]);
                    if !tau.is_forcing() {
                        continue;
                    }
                    let mut a_side = vec![];
                    let mut c_side = VertexSet::empty(n);
                    for a in a_set.iter() {
                        let hits = g.row(a).intersection_count(c_set);
                        if hits > 0 {
                            configurations += hits as u64;
                            a_side.push(a);
                            let mut partners = g.row(a).clone();
                            partners.intersect_with(c_set);
                            c_side.union_with(&partners);
                        }
                    }
                    let size = a_side.len().min(c_side.count());
                    if size == 0 || best.as_ref().is_some_and(|(bc, _, _)| bc.size() >= size) {
                        continue;
                    }
                    let cand = Biclique::balanced(a_side, c_side.to_vec(), false);
                    if is_biclique(g, &cand) {
                        best = Some((cand, tau, (b, b2)));
                    } else {
                        unverified += 1;
                    }
                }
            }
        }
    }
    match best {
        Some((biclique, tau, pivots)) => ExtractOutcome {
            status: ExtractStatus::Found,
            biclique,
            order_type: Some(tau),
            pivots: Some(pivots),
            forcing_configurations: configurations,
            unverified_buckets: unverified,
        },
        None => ExtractOutcome {
            status: ExtractStatus::NoForcingConfigurations,
            biclique: Biclique::empty(false),
            order_type: None,
            pivots: None,
            forcing_configurations: configurations,
            unverified_buckets: unverified,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OrderedGraph;

    #[test]
    fn complete_graph_gives_half() {
        let n = 10;
        let id: Vec<usize> = (0..n).collect();
        let tg = TripleOrderedGraph::new(OrderedGraph::complete(n), id.clone(), id, None).unwrap();
        let out = extract_biclique_dense(&tg);
        assert_eq!(out.status, ExtractStatus::Found);
        assert!(out.biclique.size() >= (n - 1) / 2);
        assert!(is_biclique(tg.graph(), &out.biclique));
    }

    #[test]
    fn edgeless_graph_gives_sentinel() {
        let id: Vec<usize> = (0..6).collect();
        let tg = TripleOrderedGraph::new(OrderedGraph::empty(6), id.clone(), id, None).unwrap();
        let out = extract_biclique_dense(&tg);
        assert_eq!(out.status, ExtractStatus::NoForcingConfigurations);
        assert_eq!(out.biclique.size(), 0);
    }
}
