mod common;

use common::{biclique_holds, graph_strategy, reach_by_paths};
use ordered_ramsey::generators::gen_random_ordered;
use ordered_ramsey::path::{monotone_reach, reach_or_cobiclique, PathOutcome};
use ordered_ramsey::OrderedGraph;
use proptest::prelude::*;

fn pick(n: usize, mask: &[bool]) -> Vec<usize> {
    (0..n).filter(|&v| mask[v]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reach_equals_path_enumeration(
        g in graph_strategy(10),
        sm in proptest::collection::vec(any::<bool>(), 10),
        tm in proptest::collection::vec(any::<bool>(), 10),
    ) {
        let (s, t) = (pick(g.n(), &sm), pick(g.n(), &tm));
        let r = monotone_reach(&g, &s, &t).unwrap();
        prop_assert_eq!(r.reached, reach_by_paths(&g, &s, &t));
    }

    #[test]
    fn reach_is_monotone(
        g in graph_strategy(10),
        sm in proptest::collection::vec(any::<bool>(), 10),
        tm in proptest::collection::vec(any::<bool>(), 10),
        extra in (0usize..10, 0usize..10),
    ) {
        let n = g.n();
        let (s, t) = (pick(n, &sm), pick(n, &tm));
        let base = monotone_reach(&g, &s, &t).unwrap().reached;
        let mut s2 = s.clone();
        s2.push(extra.0 % n);
        let bigger_s = monotone_reach(&g, &s2, &t).unwrap().reached;
        prop_assert!(base.iter().all(|v| bigger_s.contains(v)));
        let (i, j) = (extra.0 % n, extra.1 % n);
        let mut h: OrderedGraph = g.clone();
        if i != j && !h.has_edge(i.min(j), i.max(j)) {
            h.add_edge(i.min(j), i.max(j)).unwrap();
        }
        let bigger_e = monotone_reach(&h, &s, &t).unwrap().reached;
        prop_assert!(base.iter().all(|v| bigger_e.contains(v)));
    }
}

/// Far vertices reach at least ⌈n/12⌉ targets; co-bi-cliques have size
/// m > n/(12 log2 n) and lie in the complement.
#[test]
fn lemma_postconditions() {
    let mut seen = [0usize; 3];
    for seed in 0..300u64 {
        let n_param = 128 + (seed as usize % 4) * 64;
        let p = [0.0005, 0.002, 0.01][seed as usize % 3];
        let g = gen_random_ordered(2 * n_param, p, seed).unwrap();
        let s: Vec<usize> = (0..n_param).collect();
        let t: Vec<usize> = (n_param..2 * n_param).collect();
        match reach_or_cobiclique(&g, &s, &t, n_param).unwrap() {
            PathOutcome::FarVertex { vertex, reach } => {
                seen[0] += 1;
                assert!(reach.reached.len() >= n_param.div_ceil(12));
                assert_eq!(reach.reached, reach_by_paths(&g, &[vertex], &t));
            }
            PathOutcome::CoBiclique { biclique, .. } => {
                seen[1] += 1;
                let bound = n_param as f64 / (12.0 * (n_param as f64).log2());
                assert!(biclique.size() as f64 > bound);
                assert!(biclique.in_complement && biclique_holds(&g, &biclique));
            }
            PathOutcome::PreconditionViolation(_) => seen[2] += 1,
            PathOutcome::InducedPath { .. } => panic!("lemma returned a path"),
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}
