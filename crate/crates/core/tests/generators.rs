mod common;

use common::biclique_holds;
use ordered_ramsey::generators::{generate, gen_four_clique, gen_grounded_curves, gen_two_clique, GenKind, GenSpec, Instance};
use ordered_ramsey::geometry::CurveOrder;
use ordered_ramsey::graph::choose2;
use ordered_ramsey::max_biclique_oracle;

#[test]
fn four_clique_edge_count_within_three_sigma() {
    let (n, eps, runs) = (24usize, 0.2, 100);
    let inside = 4 * choose2(6);
    let cross = choose2(n) - inside;
    let mut total = 0usize;
    let mut sizes = std::collections::BTreeMap::<usize, usize>::new();
    for seed in 0..runs {
        let g = gen_four_clique(n, eps, seed).unwrap();
        total += g.edge_count();
        let b = max_biclique_oracle(&g, true, 24).unwrap();
        if b.size() > 0 {
            assert!(biclique_holds(&g, &b));
        }
        *sizes.entry(b.size()).or_default() += 1;
    }
    let mean = total as f64 / runs as f64;
    let expected = inside as f64 + eps * cross as f64;
    // standard error of the mean of a binomial(cross, eps) count
    let se = (cross as f64 * eps * (1.0 - eps) / runs as f64).sqrt();
    assert!((mean - expected).abs() <= 3.0 * se, "mean {mean} vs {expected} (se {se})");
    assert!(sizes.keys().all(|&s| s >= 1), "co-bi-clique size distribution {sizes:?}");
}

#[test]
fn zero_noise_counts() {
    for n in [8, 13, 24, 31] {
        let h = n / 2;
        assert_eq!(gen_two_clique(n, 0.0, 1).unwrap().edge_count(), choose2(h) + choose2(n - h));
        let q = n / 4;
        assert_eq!(gen_four_clique(n, 0.0, 1).unwrap().edge_count(), 3 * choose2(q) + choose2(n - 3 * q));
    }
}

#[test]
fn grounded_families_satisfy_invariants() {
    for seed in 0..1000u64 {
        let fam = gen_grounded_curves(10, 4, 1 + (seed % 4) as i64, seed).unwrap();
        assert_eq!(fam.order(), CurveOrder::GroundedYOrder);
        assert!(fam.curves().iter().all(|c| c.is_grounded() && c.points().windows(2).all(|w| w[0].x < w[1].x)));
        let order = fam.vertex_order().unwrap();
        let ys: Vec<_> = order.iter().map(|&i| fam.curves()[i].start_y().clone()).collect();
        assert!(ys.windows(2).all(|w| w[0] < w[1]), "seed {seed}");
    }
}

#[test]
fn specs_are_deterministic() {
    for kind in [GenKind::TwoClique, GenKind::FourClique, GenKind::RandomOrdered, GenKind::GroundedCurves, GenKind::CrossingCurves] {
        let spec = GenSpec { kind, n: 17, p: 0.3, epsilon: 0.2, segs: 3, amp: 2, x0: -1, seed: 42 };
        let render = |i: Instance| match i {
            Instance::Graph(g) => serde_json::to_string(&g.to_json()).unwrap(),
            Instance::Curves(f) => serde_json::to_string(&f.to_json().unwrap()).unwrap(),
        };
        assert_eq!(render(generate(&spec).unwrap()), render(generate(&spec).unwrap()));
    }
}
