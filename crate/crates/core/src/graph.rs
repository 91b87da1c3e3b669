//! Ordered graphs.
//!
//! Vertices are `0..n` and the vertex order is the integer order on indices,
//! so every "order-preserving" statement reduces to comparing indices.
//! Adjacency is kept as one bitset row per vertex; membership is a single
//! word lookup and neighbourhood operations are word-parallel.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Fixed-size bitset over `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn empty(len: usize) -> Self {
        VertexSet {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = VertexSet::empty(len);
        for v in 0..len {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = VertexSet::empty(len);
        for v in items {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.len && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.len);
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.len);
        self.words[v / WORD] &= !(1 << (v % WORD));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// True iff some element of `self ∩ other` is strictly below `bound`.
    pub fn intersects_below(&self, other: &VertexSet, bound: usize) -> bool {
        let full = bound / WORD;
        for i in 0..full.min(self.words.len()) {
            if self.words[i] & other.words[i] != 0 {
                return true;
            }
        }
        let rem = bound % WORD;
        if rem > 0 && full < self.words.len() {
            let mask = (1u64 << rem) - 1;
            return self.words[full] & other.words[full] & mask != 0;
        }
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// A simple graph on `0..n` whose vertex order is the index order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedGraph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl OrderedGraph {
    pub fn empty(n: usize) -> Self {
        OrderedGraph {
            n,
            rows: (0..n).map(|_| VertexSet::empty(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = OrderedGraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.insert_edge(i, j);
            }
        }
        g
    }

    /// Strict constructor used for ingestion: pairs must be canonical and unique.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = OrderedGraph::empty(n);
        for &(i, j) in edges {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            if i > j {
                return Err(Error::NonCanonicalEdge(i, j));
            }
            if g.has_edge(i, j) {
                return Err(Error::DuplicateEdge(i, j));
            }
            g.insert_edge(i, j);
        }
        Ok(g)
    }

    /// Adds `{i, j}` in either orientation; repeated insertion is a no-op.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        for v in [i, j] {
            if v >= self.n {
                return Err(Error::IndexOutOfRange { index: v, n: self.n });
            }
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        self.insert_edge(i, j);
        Ok(())
    }

    pub(crate) fn insert_edge(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
        self.rows[j].insert(i);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && self.rows[i].contains(j)
    }

    pub fn row(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Canonical edge list, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in self.rows[i].iter() {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    pub fn complement(&self) -> OrderedGraph {
        let mut g = OrderedGraph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    g.insert_edge(i, j);
                }
            }
        }
        g
    }

    /// Edge-union of two graphs on the same vertex set.
    pub fn union(&self, other: &OrderedGraph) -> Result<OrderedGraph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        let mut g = self.clone();
        for (row, o) in g.rows.iter_mut().zip(&other.rows) {
            row.union_with(o);
        }
        Ok(g)
    }

    pub fn check_vertices(&self, vs: &[usize]) -> Result<()> {
        match vs.iter().find(|&&v| v >= self.n) {
            Some(&v) => Err(Error::IndexOutOfRange { index: v, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn vertex_set(&self, vs: &[usize]) -> Result<VertexSet> {
        self.check_vertices(vs)?;
        Ok(VertexSet::from_iter(self.n, vs.iter().copied()))
    }

    /// N(U): vertices outside `u` adjacent to some vertex of `u`, ascending.
    pub fn neighborhood(&self, u: &[usize]) -> Result<Vec<usize>> {
        let inside = self.vertex_set(u)?;
        let mut acc = VertexSet::empty(self.n);
        for &v in u {
            acc.union_with(&self.rows[v]);
        }
        acc.difference_with(&inside);
        Ok(acc.to_vec())
    }

    /// G[U] relabelled to `0..|U|` in increasing order, plus the map back.
    pub fn induced_subgraph(&self, u: &[usize]) -> Result<(OrderedGraph, Vec<usize>)> {
        self.check_vertices(u)?;
        let mut map: Vec<usize> = u.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut g = OrderedGraph::empty(map.len());
        for (a, &x) in map.iter().enumerate() {
            for (b, &y) in map.iter().enumerate().skip(a + 1) {
                if self.has_edge(x, y) {
                    g.insert_edge(a, b);
                }
            }
        }
        Ok((g, map))
    }

    /// Maximum degree of G[U] (or of its complement when `complement` is set).
    pub fn max_degree_within(&self, u: &VertexSet, complement: bool) -> usize {
        let size = u.count();
        u.iter()
            .map(|v| {
                let d = self.rows[v].intersection_count(u);
                if complement {
                    size - 1 - d
                } else {
                    d
                }
            })
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

/// On-disk form: `{"n": int, "edges": [[i, j], ...]}` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<OrderedGraph> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        OrderedGraph::from_edges(self.n, &pairs)
    }
}

impl TryFrom<GraphJson> for OrderedGraph {
    type Error = Error;

    fn try_from(value: GraphJson) -> Result<Self> {
        value.into_graph()
    }
}

/// `C(n, 2)`.
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> OrderedGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        OrderedGraph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn complement_of_empty_is_triangle() {
        let g = OrderedGraph::empty(3).complement();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn complement_of_p3() {
        assert_eq!(path(3).complement().edges(), vec![(0, 2)]);
    }

    #[test]
    fn ingestion_rejects_bad_pairs() {
        assert_eq!(
            OrderedGraph::from_edges(3, &[(2, 2)]),
            Err(Error::SelfLoop(2))
        );
        assert_eq!(
            OrderedGraph::from_edges(3, &[(2, 1)]),
            Err(Error::NonCanonicalEdge(2, 1))
        );
        assert_eq!(
            OrderedGraph::from_edges(3, &[(0, 3)]),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );
        assert_eq!(
            OrderedGraph::from_edges(3, &[(0, 1), (0, 1)]),
            Err(Error::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn star_neighborhood() {
        let g = OrderedGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(g.neighborhood(&[0]).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(g.neighborhood(&[0, 1, 2, 3, 4]).unwrap(), Vec::<usize>::new());
        assert_eq!(g.max_degree(), 4);
        assert!(matches!(
            g.neighborhood(&[7]),
            Err(Error::IndexOutOfRange { index: 7, .. })
        ));
    }

    #[test]
    fn induced_subgraph_of_path_on_even_vertices() {
        let (h, map) = path(5).induced_subgraph(&[4, 0, 2]).unwrap();
        assert_eq!(map, vec![0, 2, 4]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn bitset_iteration_spans_words() {
        let s = VertexSet::from_iter(200, [0, 63, 64, 130, 199]);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 130, 199]);
        assert_eq!(s.count(), 5);
        let t = VertexSet::from_iter(200, [130]);
        assert!(s.intersects_below(&t, 131));
        assert!(!s.intersects_below(&t, 130));
    }
}
