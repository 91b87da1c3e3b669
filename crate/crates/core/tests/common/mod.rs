//! Independent oracles shared by the integration suites.

#![allow(dead_code)]

use ordered_ramsey::{Biclique, OrderedGraph};
use proptest::prelude::*;

/// Random ordered graph on `0..n` from an explicit edge mask.
pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = OrderedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let mut edges = vec![];
            let mut it = mask.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    if it.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            OrderedGraph::from_edges(n, &edges).unwrap()
        })
    })
}

pub fn induced_copy(g: &OrderedGraph, pattern: &OrderedGraph, map: &[usize]) -> bool {
    map.len() == pattern.n()
        && map.windows(2).all(|w| w[0] < w[1])
        && map.iter().all(|&v| v < g.n())
        && (0..map.len()).all(|i| (i + 1..map.len()).all(|j| pattern.has_edge(i, j) == g.has_edge(map[i], map[j])))
}

/// Every increasing `k`-subset, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}

pub fn biclique_holds(g: &OrderedGraph, b: &Biclique) -> bool {
    let mut all: Vec<usize> = b.a.iter().chain(&b.b).copied().collect();
    all.sort_unstable();
    all.dedup();
    !b.a.is_empty()
        && b.a.len() == b.b.len()
        && all.len() == 2 * b.a.len()
        && all.iter().all(|&v| v < g.n())
        && b.a.iter().all(|&x| b.b.iter().all(|&y| g.has_edge(x, y) != b.in_complement))
}

/// Largest balanced (co-)bi-clique by enumerating every side `A` and taking
/// the common (non-)neighbourhood outside `A` as the other side.
pub fn max_biclique_brute(g: &OrderedGraph, in_complement: bool) -> usize {
    let n = g.n();
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let a: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let common = (0..n)
            .filter(|&v| mask >> v & 1 == 0)
            .filter(|&v| a.iter().all(|&u| g.has_edge(u, v) != in_complement))
            .count();
        best = best.max(a.len().min(common));
    }
    best
}

/// Targets reachable from a source by an increasing path inside `t`.
pub fn reach_by_paths(g: &OrderedGraph, s: &[usize], t: &[usize]) -> Vec<usize> {
    fn walk(g: &OrderedGraph, v: usize, t: &[usize], out: &mut Vec<usize>) {
        for &w in t {
            if w > v && g.has_edge(v, w) {
                out.push(w);
                walk(g, w, t, out);
            }
        }
    }
    let mut out = vec![];
    for &v in s {
        walk(g, v, t, &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}
