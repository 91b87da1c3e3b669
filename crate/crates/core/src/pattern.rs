//! Ordered patterns and order-preserving induced embeddings.
//!
//! A monotone path `P_k` here always has `k` vertices (and `k - 1` edges),
//! even though it is sometimes called a path "of length k".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{OrderedGraph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternKind {
    MonotonePath,
    /// Matching edges `(a_i, b_i)` with `a_i < b_i`, sorted by `a_i`.
    Matching(Vec<(usize, usize)>),
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    graph: OrderedGraph,
    kind: PatternKind,
}

impl Pattern {
    /// `P_k`: vertices `0..k`, edges exactly `{i, i+1}`.
    pub fn monotone_path(k: usize) -> Result<Pattern> {
        if k == 0 {
            return Err(Error::InvalidPattern("P_0 has no vertices".into()));
        }
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Ok(Pattern {
            graph: OrderedGraph::from_edges(k, &edges)?,
            kind: PatternKind::MonotonePath,
        })
    }

    /// Ordered matching on `2k` vertices; every vertex must be covered once.
    pub fn matching(pairs: &[(usize, usize)]) -> Result<Pattern> {
        let k = pairs.len();
        if k == 0 {
            return Err(Error::InvalidPattern("matching needs at least one edge".into()));
        }
        let mut seen = vec![false; 2 * k];
        let mut canon = Vec::with_capacity(k);
        for &(x, y) in pairs {
            let (a, b) = (x.min(y), x.max(y));
            if a == b || b >= 2 * k {
                return Err(Error::InvalidPattern(format!(
                    "pair ({x},{y}) is not an edge on {} vertices",
                    2 * k
                )));
            }
            for v in [a, b] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPattern(format!("vertex {v} covered twice")));
                }
            }
            canon.push((a, b));
        }
        canon.sort_unstable();
        Ok(Pattern {
            graph: OrderedGraph::from_edges(2 * k, &canon)?,
            kind: PatternKind::Matching(canon),
        })
    }

    /// M1: the two intertwined edges `{0,2}` and `{1,3}`.
    pub fn m1() -> Pattern {
        Pattern::matching(&[(0, 2), (1, 3)]).expect("M1 is a matching")
    }

    /// Wraps an arbitrary ordered graph, recognising paths and matchings.
    pub fn from_graph(graph: OrderedGraph) -> Pattern {
        let n = graph.n();
        let edges = graph.edges();
        let is_path = n >= 1 && edges.len() == n - 1 && edges.iter().all(|&(i, j)| j == i + 1);
        let kind = if is_path {
            PatternKind::MonotonePath
        } else if n > 0 && n.is_multiple_of(2) && (0..n).all(|v| graph.degree(v) == 1) {
            PatternKind::Matching(edges)
        } else {
            PatternKind::Other
        };
        Pattern { graph, kind }
    }

    pub fn graph(&self) -> &OrderedGraph {
        &self.graph
    }

    pub fn kind(&self) -> &PatternKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn matching_pairs(&self) -> Option<&[(usize, usize)]> {
        match &self.kind {
            PatternKind::Matching(p) => Some(p),
            _ => None,
        }
    }
}

/// Pattern vertex `i` maps to host vertex `map[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Independent check: strictly increasing and induced.
    pub fn verify(&self, host: &OrderedGraph, pattern: &OrderedGraph) -> bool {
        let m = &self.map;
        if m.len() != pattern.n() || m.iter().any(|&v| v >= host.n()) {
            return false;
        }
        if m.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if pattern.has_edge(i, j) != host.has_edge(m[i], m[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Order-preserving induced copy of `pattern` in `host`, if one exists.
///
/// Backtracking assigns pattern vertices left to right. The candidate set
/// for the next pattern vertex is the intersection of the host rows (or
/// their complements) of the vertices already placed, restricted to indices
/// after the previous image. Vertices whose degree or co-degree is too small
/// for the pattern vertex are filtered up front.
pub fn find_induced_embedding(host: &OrderedGraph, pattern: &Pattern) -> Option<Embedding> {
    let h = pattern.graph();
    let k = h.n();
    let n = host.n();
    if k > n {
        return None;
    }
    if k == 0 {
        return Some(Embedding { map: vec![] });
    }

    let host_deg: Vec<usize> = (0..n).map(|v| host.degree(v)).collect();
    let base: Vec<VertexSet> = (0..k)
        .map(|i| {
            let d = h.degree(i);
            let co = k - 1 - d;
            VertexSet::from_iter(
                n,
                (i..=n - (k - i)).filter(|&v| host_deg[v] >= d && n - 1 - host_deg[v] >= co),
            )
        })
        .collect();
    let co_rows: Vec<VertexSet> = (0..n)
        .map(|v| {
            let mut s = VertexSet::full(n);
            s.difference_with(host.row(v));
            s.remove(v);
            s
        })
        .collect();

    let mut map = Vec::with_capacity(k);
    if extend(host, h, &base, &co_rows, &mut map) {
        let e = Embedding { map };
        debug_assert!(e.verify(host, h));
        Some(e)
    } else {
        None
    }
}

fn extend(
    host: &OrderedGraph,
    h: &OrderedGraph,
    base: &[VertexSet],
    co_rows: &[VertexSet],
    map: &mut Vec<usize>,
) -> bool {
    let d = map.len();
    if d == h.n() {
        return true;
    }
    let mut cand = base[d].clone();
    for (j, &img) in map.iter().enumerate() {
        if h.has_edge(j, d) {
            cand.intersect_with(host.row(img));
        } else {
            cand.intersect_with(&co_rows[img]);
        }
    }
    let floor = map.last().map_or(0, |&v| v + 1);
    for v in cand.iter().filter(|&v| v >= floor) {
        map.push(v);
        if extend(host, h, base, co_rows, map) {
            return true;
        }
        map.pop();
    }
    false
}

pub fn contains_induced(host: &OrderedGraph, pattern: &Pattern) -> bool {
    find_induced_embedding(host, pattern).is_some()
}
