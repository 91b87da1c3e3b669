mod common;

use common::{biclique_holds, graph_strategy};
use num_rational::BigRational;
use ordered_ramsey::generators::gen_crossing_curves;
use ordered_ramsey::geometry::grounded::DegreeSubset;
use ordered_ramsey::geometry::{
    curves_from_json, graph_in_order, sparse_or_dense_subgraph, split_at_line, union_biclique, GroundedOracle, Point,
    PolylineCurve,
};
use proptest::prelude::*;

type P = (i64, i64);

fn cross(o: P, a: P, b: P) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn within(a: P, b: P, p: P) -> bool {
    a.0.min(b.0) <= p.0 && p.0 <= a.0.max(b.0) && a.1.min(b.1) <= p.1 && p.1 <= a.1.max(b.1)
}

/// Closed-segment intersection on integer points.
fn seg_meet(p1: P, p2: P, q1: P, q2: P) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return true;
    }
    (d1 == 0 && within(q1, q2, p1))
        || (d2 == 0 && within(q1, q2, p2))
        || (d3 == 0 && within(p1, p2, q1))
        || (d4 == 0 && within(p1, p2, q2))
}

fn curves_meet(a: &[P], b: &[P]) -> bool {
    a.windows(2).any(|s| b.windows(2).any(|t| seg_meet(s[0], s[1], t[0], t[1])))
}

fn polyline() -> impl Strategy<Value = Vec<P>> {
    (proptest::collection::btree_set(0i64..8, 2..5), proptest::collection::vec(-3i64..4, 5))
        .prop_map(|(xs, ys)| xs.into_iter().zip(ys).collect())
}

fn to_curve(pts: &[P]) -> PolylineCurve {
    PolylineCurve::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
}

fn zero() -> BigRational {
    BigRational::from_integer(0.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn intersection_graph_matches_segment_pairs(raw in proptest::collection::vec(polyline(), 1..7)) {
        let curves: Vec<PolylineCurve> = raw.iter().map(|p| to_curve(p)).collect();
        let g = graph_in_order(&curves);
        for i in 0..raw.len() {
            for j in i + 1..raw.len() {
                prop_assert_eq!(g.has_edge(i, j), curves_meet(&raw[i], &raw[j]), "pair ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn split_union_identity(seed in any::<u64>(), n in 2usize..12, segs in 1usize..6, amp in 0i64..4) {
        let fam = gen_crossing_curves(n, segs, 0, amp, seed).unwrap();
        let split = split_at_line(fam.curves(), &zero()).unwrap();
        let ordered: Vec<&PolylineCurve> = split.order.iter().map(|&i| &fam.curves()[i]).collect();
        let g = graph_in_order(&ordered);
        let union = split.left_graph().union(&split.right_graph()).unwrap();
        prop_assert_eq!(g, union);
        prop_assert!(split.left.curves().iter().all(|c| c.is_grounded()));
        prop_assert!(split.right.curves().iter().all(|c| c.is_grounded()));
    }

    #[test]
    fn json_round_trip(raw in proptest::collection::vec(polyline(), 1..5)) {
        let curves: Vec<PolylineCurve> = raw.iter().map(|p| to_curve(p)).collect();
        let json: Vec<_> = curves.iter().map(|c| c.to_json().unwrap()).collect();
        prop_assert_eq!(curves_from_json(&json).unwrap(), curves);
    }

    #[test]
    fn degree_subsets_verify(g in graph_strategy(14), delta in 0.05f64..0.5) {
        let sub: DegreeSubset = sparse_or_dense_subgraph(&g, delta).unwrap();
        prop_assert!(sub.verify(&g));
    }
}

#[test]
fn union_certificates_on_half_graphs() {
    for seed in 0..50u64 {
        let fam = gen_crossing_curves(64, 4, 0, 1 + (seed % 3) as i64, seed).unwrap();
        let split = split_at_line(fam.curves(), &zero()).unwrap();
        let (g1, g2) = (split.left_graph(), split.right_graph());
        let u = union_biclique(&g1, &g2, 0.25, &mut GroundedOracle::new(seed)).unwrap();
        let union = g1.union(&g2).unwrap();
        assert!(biclique_holds(&union, &u.biclique), "seed {seed}");
        assert!(u.biclique.size() >= u.guaranteed);
        assert_eq!(u.k, 3);
    }
}
