//! Bi-clique certificates and the exhaustive maximum bi-clique oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

/// Default vertex cap for [`max_biclique_oracle`].
pub const ORACLE_CAP: usize = 16;

/// Balanced bi-clique `(A, B)`; when `in_complement` is set it lives in the
/// complement, i.e. no pair in `A × B` is an edge (a "co-bi-clique").
///
/// An instance with empty sides is the size-0 sentinel and never verifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Biclique {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub in_complement: bool,
}

impl Biclique {
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>, in_complement: bool) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        Biclique {
            a,
            b,
            in_complement,
        }
    }

    pub fn empty(in_complement: bool) -> Self {
        Biclique::new(vec![], vec![], in_complement)
    }

    /// Builds a balanced certificate by keeping the first `min(|a|, |b|)`
    /// vertices (in index order) of each side.
    pub fn balanced(mut a: Vec<usize>, mut b: Vec<usize>, in_complement: bool) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        let s = a.len().min(b.len());
        a.truncate(s);
        b.truncate(s);
        Biclique {
            a,
            b,
            in_complement,
        }
    }

    pub fn size(&self) -> usize {
        self.a.len().min(self.b.len())
    }

    pub fn truncated(&self, size: usize) -> Biclique {
        Biclique {
            a: self.a.iter().copied().take(size).collect(),
            b: self.b.iter().copied().take(size).collect(),
            in_complement: self.in_complement,
        }
    }

    /// Relabels both sides through `map` (sub-instance index -> host index).
    pub fn mapped(&self, map: &[usize]) -> Biclique {
        Biclique::new(
            self.a.iter().map(|&v| map[v]).collect(),
            self.b.iter().map(|&v| map[v]).collect(),
            self.in_complement,
        )
    }

    pub fn flipped(&self) -> Biclique {
        Biclique {
            in_complement: !self.in_complement,
            ..self.clone()
        }
    }
}

/// Certificate check: disjoint, equal non-zero size, and every cross pair is
/// an edge (or a non-edge in the complement case).
pub fn is_biclique(g: &OrderedGraph, b: &Biclique) -> bool {
    if b.a.is_empty() || b.a.len() != b.b.len() {
        return false;
    }
    let n = g.n();
    if b.a.iter().chain(&b.b).any(|&v| v >= n) {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in b.a.iter().chain(&b.b) {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    b.a.iter()
        .all(|&x| b.b.iter().all(|&y| g.has_edge(x, y) != b.in_complement))
}

/// Exhaustive maximum balanced bi-clique. Returns the size-0 sentinel when
/// the graph (or complement) has no edge at all.
pub fn max_biclique_oracle(g: &OrderedGraph, in_complement: bool, n_cap: usize) -> Result<Biclique> {
    let adj = masks(g, in_complement, n_cap)?;
    let mut search = Search::new(&adj, 0);
    search.run();
    let (a, b) = (search.best_a, search.best_b);
    if search.best == 0 {
        return Ok(Biclique::empty(in_complement));
    }
    let a: Vec<usize> = bits(a);
    let b: Vec<usize> = bits(b);
    Ok(Biclique::balanced(a, b, in_complement))
}

/// True iff a balanced bi-clique of size at least `size` exists.
pub fn has_biclique_of_size(
    g: &OrderedGraph,
    in_complement: bool,
    size: usize,
    n_cap: usize,
) -> Result<bool> {
    if size == 0 {
        return Ok(true);
    }
    let adj = masks(g, in_complement, n_cap)?;
    let mut search = Search::new(&adj, size - 1);
    search.run();
    Ok(search.best >= size)
}

fn masks(g: &OrderedGraph, in_complement: bool, n_cap: usize) -> Result<Vec<u64>> {
    let n = g.n();
    let cap = n_cap.min(64);
    if n > cap {
        return Err(Error::InstanceTooLarge { n, cap });
    }
    Ok((0..n)
        .map(|v| {
            let mut m = 0u64;
            for u in 0..n {
                if u != v && g.has_edge(u, v) != in_complement {
                    m |= 1 << u;
                }
            }
            m
        })
        .collect())
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = vec![];
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Branches on the side `A` (vertices added in increasing order); the other
/// side is the common neighbourhood of `A`. Both quantities bound the
/// achievable size, which drives the pruning.
struct Search<'a> {
    adj: &'a [u64],
    best: usize,
    best_a: u64,
    best_b: u64,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [u64], floor: usize) -> Self {
        Search {
            adj,
            best: floor,
            best_a: 0,
            best_b: 0,
        }
    }

    fn run(&mut self) {
        let n = self.adj.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.grow(0, all, 0, all);
    }

    fn grow(&mut self, a: u64, common: u64, next_from: usize, cand: u64) {
        let size_a = a.count_ones() as usize;
        let size_c = common.count_ones() as usize;
        let s = size_a.min(size_c);
        if s > self.best {
            self.best = s;
            self.best_a = a;
            self.best_b = common;
        }
        let low = if next_from >= 64 { u64::MAX } else { (1u64 << next_from) - 1 };
        let mut rest = cand & !low;
        if size_a + (rest.count_ones() as usize) <= self.best || size_c <= self.best {
            return;
        }
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if size_a + 1 + rest.count_ones() as usize <= self.best {
                return;
            }
            let nc = common & self.adj[v] & !(1u64 << v);
            if (nc.count_ones() as usize) <= self.best {
                continue;
            }
            // later A-vertices must keep a large common side; they need not
            // be adjacent to v themselves
            self.grow(a | 1 << v, nc, v + 1, cand);
        }
    }
}
