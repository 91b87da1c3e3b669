mod common;

use common::{biclique_holds, induced_copy};
use ordered_ramsey::generators::{gen_four_clique, gen_random_ordered, gen_two_clique, planted_matching};
use ordered_ramsey::matching::{
    disjoint_edges_or_cobiclique, find_matching_or_cobiclique, CrossEdges, MatchingConfig, MatchingOutcome,
};
use ordered_ramsey::path::{find_path_or_cobiclique, PathOutcome};
use ordered_ramsey::{Error, OrderedGraph, Pattern, SplitMix64};
use proptest::prelude::*;

/// Maximum bipartite matching between `a` and `b` by augmenting paths.
fn maximum_matching(g: &OrderedGraph, a: &[usize], b: &[usize]) -> usize {
    fn augment(g: &OrderedGraph, u: usize, b: &[usize], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for (j, &v) in b.iter().enumerate() {
            if g.has_edge(u.min(v), u.max(v)) && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|w| augment(g, w, b, seen, owner)) {
                    owner[j] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; b.len()];
    a.iter()
        .filter(|&&u| augment(g, u, b, &mut vec![false; b.len()], &mut owner))
        .count()
}

#[test]
fn cross_edges_agree_with_maximum_matching() {
    for seed in 0..200u64 {
        let mut rng = SplitMix64::new(seed);
        let p = [0.05, 0.1, 0.2, 0.5][seed as usize % 4];
        let mut g = OrderedGraph::empty(24);
        for u in 0..12 {
            for v in 12..24 {
                if rng.bernoulli(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let (a, b): (Vec<usize>, Vec<usize>) = ((0..12).collect(), (12..24).collect());
        let best = maximum_matching(&g, &a, &b);
        match disjoint_edges_or_cobiclique(&g, &a, &b, 6).unwrap() {
            CrossEdges::Disjoint(edges) => {
                assert_eq!(edges.len(), 6);
                assert!(best >= 6);
                let mut ends: Vec<usize> = edges.iter().flat_map(|&(x, y)| [x, y]).collect();
                ends.sort_unstable();
                ends.dedup();
                assert_eq!(ends.len(), 12);
                assert!(edges.iter().all(|&(x, y)| x < 12 && y >= 12 && g.has_edge(x, y)));
            }
            CrossEdges::CoBiclique(bc) => {
                // greedy is maximal, so a maximum matching is at most twice its size
                assert!(best < 12, "seed {seed}: maximum {best} but greedy fell short");
                assert_eq!(bc.size(), 6);
                assert!(bc.in_complement && biclique_holds(&g, &bc));
            }
        }
    }
}

fn instance(kind: u8, n: usize, seed: u64) -> OrderedGraph {
    match kind % 4 {
        0 => gen_random_ordered(n, 0.01, seed),
        1 => gen_two_clique(n, 0.02, seed),
        2 => gen_four_clique(n, 0.05, seed),
        _ => planted_matching(n, &[(0, 2), (1, 3)], 0.01, seed),
    }
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn path_certificates_verify(kind in 0u8..4, n in 30usize..400, seed in any::<u64>(), k in 2usize..5) {
        let g = instance(kind, n, seed);
        let out = find_path_or_cobiclique(&g, k).unwrap();
        prop_assert!(out.verify(&g, k));
        match out {
            PathOutcome::InducedPath { embedding } => {
                prop_assert!(induced_copy(&g, Pattern::monotone_path(k).unwrap().graph(), &embedding.map))
            }
            PathOutcome::CoBiclique { biclique, .. } => prop_assert!(biclique.in_complement && biclique_holds(&g, &biclique)),
            PathOutcome::PreconditionViolation(r) => prop_assert_eq!(r.max_degree, g.max_degree()),
            PathOutcome::FarVertex { .. } => prop_assert!(false, "far vertex at top level"),
        }
    }

    #[test]
    fn matching_certificates_verify(kind in 0u8..4, n in 16usize..400, seed in any::<u64>()) {
        let g = instance(kind, n, seed);
        let m1 = Pattern::m1();
        match find_matching_or_cobiclique(&g, &m1, &MatchingConfig::new(seed, 2)) {
            Ok(out) => {
                prop_assert!(out.verify(&g, &m1));
                match out {
                    MatchingOutcome::InducedMatching { embedding, .. } => prop_assert!(induced_copy(&g, m1.graph(), &embedding.map)),
                    MatchingOutcome::CoBiclique { biclique, .. } => {
                        prop_assert!(biclique.in_complement && biclique_holds(&g, &biclique));
                        prop_assert!(biclique.size() >= n / 8);
                    }
                    MatchingOutcome::PreconditionViolation { report, .. } => {
                        prop_assert!(report.max_degree as f64 >= n as f64 / 64.0)
                    }
                }
            }
            Err(Error::RetryExhausted { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn matching_is_deterministic(n in 40usize..200, seed in any::<u64>()) {
        let g = instance(3, n, seed);
        let m1 = Pattern::m1();
        let a = find_matching_or_cobiclique(&g, &m1, &MatchingConfig::new(seed, 2)).ok();
        let b = find_matching_or_cobiclique(&g, &m1, &MatchingConfig::new(seed, 2)).ok();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn planted_placement_embeds_first_draw() {
    let pattern = Pattern::matching(&[(0, 3), (1, 2)]).unwrap();
    let g = planted_matching(80, &[(0, 3), (1, 2)], 0.0, 0).unwrap();
    match find_matching_or_cobiclique(&g, &pattern, &MatchingConfig::new(5, 2)).unwrap() {
        MatchingOutcome::InducedMatching { embedding, stats, .. } => {
            assert_eq!(stats.trials, 1);
            assert!(induced_copy(&g, pattern.graph(), &embedding.map));
        }
        other => panic!("{}", other.variant()),
    }
}
