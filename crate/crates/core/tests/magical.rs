mod common;

use common::biclique_holds;
use num_rational::BigRational;
use ordered_ramsey::generators::gen_crossing_curves;
use ordered_ramsey::geometry::graph_in_order;
use ordered_ramsey::magical::claim::tuples;
use ordered_ramsey::magical::orders::is_forcing_by_holes;
use ordered_ramsey::magical::{
    double_magical_witness, extract_biclique_dense, is_forcing, is_magical, order_type, threshold_pipeline,
    ExtractStatus, TripleOrderedGraph,
};
use ordered_ramsey::{max_biclique_oracle, Error, OrderedGraph, SplitMix64};
use proptest::prelude::*;

/// Forcing `(a, b, b', c)` spanning a clique, by scanning every tuple.
fn forcing_cliques(g: &OrderedGraph, p2: &[usize], p3: &[usize]) -> u64 {
    tuples(g.n())
        .into_iter()
        .filter(|&[a, b, b2, c]| {
            let vs = [a, b, b2, c];
            let clique = (0..4).all(|i| (i + 1..4).all(|j| vs[i] == vs[j] || g.has_edge(vs[i].min(vs[j]), vs[i].max(vs[j]))));
            clique && !(p2[a] > p2[b] && p2[b] < p2[c]) && !(p3[a] > p3[b2] && p3[b2] < p3[c])
        })
        .count() as u64
}

fn ranks(rng: &mut SplitMix64, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut p);
    p
}

fn zero() -> BigRational {
    BigRational::from_integer(0.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extractor_counts_and_certifies(seed in any::<u64>(), n in 4usize..11, amp in 0i64..3) {
        let fam = gen_crossing_curves(n, 4, 0, amp, seed).unwrap();
        let w = double_magical_witness(fam.curves(), &zero()).unwrap();
        let g = w.tg.graph();
        let ex = extract_biclique_dense(&w.tg);
        prop_assert_eq!(ex.forcing_configurations, forcing_cliques(g, w.tg.perm2(), w.tg.perm3()));
        prop_assert_eq!(ex.unverified_buckets, 0);
        let best = max_biclique_oracle(g, false, 16).unwrap().size();
        match ex.status {
            ExtractStatus::Found => {
                prop_assert!(biclique_holds(g, &ex.biclique));
                prop_assert!(ex.biclique.size() <= best);
            }
            ExtractStatus::NoForcingConfigurations => prop_assert_eq!(ex.biclique.size(), 0),
        }
    }

    #[test]
    fn witness_halves_are_magical(seed in any::<u64>(), n in 2usize..14, amp in 0i64..4) {
        let fam = gen_crossing_curves(n, 4, 0, amp, seed).unwrap();
        let w = double_magical_witness(fam.curves(), &zero()).unwrap();
        let (g1, g2) = w.tg.witness().expect("witness attached").clone();
        prop_assert!(is_magical(&g1, w.tg.perm2()).is_none());
        prop_assert!(is_magical(&g2, w.tg.perm3()).is_none());
        let ordered: Vec<_> = w.order.iter().map(|&i| &fam.curves()[i]).collect();
        prop_assert_eq!(w.tg.graph(), &graph_in_order(&ordered).complement());
    }

    #[test]
    fn forcing_routes_agree(seed in any::<u64>(), n in 3usize..9) {
        let mut rng = SplitMix64::new(seed);
        let (p2, p3) = (ranks(&mut rng, n), ranks(&mut rng, n));
        for [a, b, b2, c] in tuples(n) {
            let by_holes = is_forcing_by_holes(a, b, b2, c, &p2, &p3).unwrap();
            prop_assert_eq!(by_holes, order_type(a, b, b2, c, &p2, &p3).is_forcing());
            prop_assert_eq!(by_holes, is_forcing(a, b, b2, c, &p2, &p3).unwrap());
        }
    }

    #[test]
    fn threshold_certificates_verify(seed in any::<u64>(), n in 30usize..70, amp in 1i64..4) {
        let fam = gen_crossing_curves(n, 4, 0, amp, seed).unwrap();
        let out = match threshold_pipeline(fam.curves(), 0.1) {
            Ok(out) => out,
            Err(e) => {
                prop_assert!(matches!(e.root(), Error::Precondition(_)), "{}", e);
                return Ok(());
            }
        };
        let ordered: Vec<_> = out.order.iter().map(|&i| &fam.curves()[i]).collect();
        let g = graph_in_order(&ordered);
        prop_assert_eq!(out.edges, g.edge_count());
        if out.biclique.size() > 0 {
            prop_assert!(out.biclique.in_complement && biclique_holds(&g, &out.biclique));
        }
    }
}

#[test]
fn random_triple_orders_without_witness() {
    let mut rng = SplitMix64::new(7);
    for _ in 0..100 {
        let n = 8;
        let mut g = OrderedGraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.bernoulli(0.7) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        let (p2, p3) = (ranks(&mut rng, n), ranks(&mut rng, n));
        let tg = TripleOrderedGraph::new(g.clone(), p2.clone(), p3.clone(), None).unwrap();
        let ex = extract_biclique_dense(&tg);
        assert_eq!(ex.forcing_configurations, forcing_cliques(&g, &p2, &p3));
        if ex.status == ExtractStatus::Found {
            assert!(biclique_holds(&g, &ex.biclique));
        }
    }
}
