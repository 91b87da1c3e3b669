//! Monotone reachability and the induced-path / co-bi-clique dichotomy.
//!
//! `t ∈ T` is reached from `v` by a monotone `T`-path when there is an
//! increasing walk `v < t_1 < … < t_r = t` along edges with every `t_i ∈ T`
//! (`v` itself need not lie in `T`). [`monotone_reach`] computes the set of
//! such targets for a source set in one increasing sweep.
//!
//! Integer conventions used throughout this module:
//! - `m` is the largest power of two `≤ ⌊n/(6 log2 n)⌋`, rejected unless
//!   `m > n/(12 log2 n)`;
//! - interval partitions use `⌊size/parts⌋` with the last interval absorbing
//!   the remainder;
//! - every size promise is stated with floors.

use serde::{Deserialize, Serialize};

use crate::biclique::{is_biclique, Biclique};
use crate::error::{Error, Result};
use crate::graph::{OrderedGraph, VertexSet};
use crate::pattern::{Embedding, Pattern};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachSet {
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
    pub reached: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreconditionReport {
    /// The first inequality that failed, in words.
    pub inequality: String,
    pub lhs: f64,
    pub rhs: f64,
    pub max_degree: usize,
    /// The degree bound of the calling theorem; absent for a bare lemma call.
    pub degree_bound: Option<f64>,
    /// Vertices fixed before the failure (the partial induced path).
    pub partial: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum PathOutcome {
    FarVertex {
        vertex: usize,
        reach: ReachSet,
    },
    CoBiclique {
        biclique: Biclique,
        /// Where the two sides were taken from.
        sides: String,
    },
    InducedPath {
        embedding: Embedding,
    },
    PreconditionViolation(PreconditionReport),
}

impl PathOutcome {
    pub fn variant(&self) -> &'static str {
        match self {
            PathOutcome::FarVertex { .. } => "far_vertex",
            PathOutcome::CoBiclique { .. } => "co_biclique",
            PathOutcome::InducedPath { .. } => "induced_path",
            PathOutcome::PreconditionViolation(_) => "precondition_violation",
        }
    }

    /// Re-checks the certificate against `g` without trusting the producer.
    /// `path_len` is the number of vertices of the requested path.
    pub fn verify(&self, g: &OrderedGraph, path_len: usize) -> bool {
        match self {
            PathOutcome::FarVertex { vertex, reach } => {
                reach.sources == [*vertex]
                    && monotone_reach(g, &reach.sources, &reach.targets)
                        .is_ok_and(|r| r.reached == reach.reached)
            }
            PathOutcome::CoBiclique { biclique, .. } => {
                biclique.in_complement && is_biclique(g, biclique)
            }
            PathOutcome::InducedPath { embedding } => Pattern::monotone_path(path_len)
                .is_ok_and(|p| embedding.verify(g, p.graph())),
            PathOutcome::PreconditionViolation(r) => r.max_degree == g.max_degree(),
        }
    }
}

/// P(S, T): targets reachable from some source by a monotone T-path.
pub fn monotone_reach(g: &OrderedGraph, sources: &[usize], targets: &[usize]) -> Result<ReachSet> {
    let s = g.vertex_set(sources)?;
    g.check_vertices(targets)?;
    let mut t = targets.to_vec();
    t.sort_unstable();
    t.dedup();
    let reached = reach_from(g, &s, &t);
    let mut sources = sources.to_vec();
    sources.sort_unstable();
    sources.dedup();
    Ok(ReachSet {
        sources,
        targets: t,
        reached: reached.to_vec(),
    })
}

/// Sweep over `targets` (ascending): `t` is reached iff it has a neighbour
/// below it among the sources or the already reached targets.
pub(crate) fn reach_from(g: &OrderedGraph, sources: &VertexSet, targets: &[usize]) -> VertexSet {
    let mut frontier = sources.clone();
    let mut reached = VertexSet::empty(g.n());
    for &t in targets {
        if g.row(t).intersects_below(&frontier, t) {
            reached.insert(t);
            frontier.insert(t);
        }
    }
    reached
}

fn reach_single(g: &OrderedGraph, v: usize, targets: &[usize]) -> VertexSet {
    reach_from(g, &VertexSet::from_iter(g.n(), [v]), targets)
}

/// Fewest-vertex increasing path `from = u_0 < u_1 < … < u_r = to` with
/// `u_1..u_r ∈ allowed`, by BFS over the increasing-edge DAG.
pub fn min_vertex_path(
    g: &OrderedGraph,
    from: usize,
    allowed: &VertexSet,
    to: usize,
) -> Option<Vec<usize>> {
    if from >= to || !allowed.contains(to) {
        return None;
    }
    let mut parent = vec![usize::MAX; to + 1];
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for v in g.row(u).iter() {
            if v > to {
                break;
            }
            if v <= u || !allowed.contains(v) || parent[v] != usize::MAX {
                continue;
            }
            parent[v] = u;
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(v);
        }
    }
    None
}

/// `m` and `log2 m` for the reach lemma with parameter `n`.
pub fn lemma_block_size(n_param: usize) -> Result<(usize, u32)> {
    let err = Error::NoValidM { n_param };
    if n_param < 2 {
        return Err(err);
    }
    let n = n_param as f64;
    let log = n.log2();
    let upper = (n / (6.0 * log)).floor() as usize;
    if upper == 0 {
        return Err(err);
    }
    let m = 1usize << (usize::BITS - 1 - upper.leading_zeros());
    if (m as f64) <= n / (12.0 * log) {
        return Err(err);
    }
    Ok((m, m.trailing_zeros()))
}

/// Splits sorted `items` into `parts` consecutive blocks of `len` elements,
/// the last block taking everything that remains.
fn blocks(items: &[usize], len: usize, parts: usize) -> Vec<&[usize]> {
    (0..parts)
        .map(|j| {
            let lo = j * len;
            let hi = if j + 1 == parts { items.len() } else { lo + len };
            &items[lo..hi]
        })
        .collect()
}

fn violation(inequality: impl Into<String>, lhs: f64, rhs: f64, g: &OrderedGraph) -> PathOutcome {
    PathOutcome::PreconditionViolation(PreconditionReport {
        inequality: inequality.into(),
        lhs,
        rhs,
        max_degree: g.max_degree(),
        degree_bound: None,
        partial: vec![],
    })
}

/// Either a vertex `v ∈ S` with `|P(v, T)| ≥ ⌈n/12⌉`, or a co-bi-clique of
/// size `m > n/(12 log2 n)`.
///
/// A direct scan for a far vertex runs first. When it fails, the halving
/// procedure runs: `T` is cut into `s = ⌊n/(3m)⌋` blocks of `3m` vertices,
/// `S_0` is the first `m` vertices of `S`, and each round either halves the
/// current source set (lower half preferred) while keeping `m` reached
/// vertices in the next block, or exhibits `m` reached vertices `X` and `m`
/// vertices of the next block outside `N(X)`. The surviving source `v` is then
/// checked block by block; a block with fewer than `m` vertices reached from
/// `v` yields a co-bi-clique against the `m` vertices reached in block `k`.
pub fn reach_or_cobiclique(
    g: &OrderedGraph,
    sources: &[usize],
    targets: &[usize],
    n_param: usize,
) -> Result<PathOutcome> {
    g.check_vertices(sources)?;
    g.check_vertices(targets)?;
    let mut s = sources.to_vec();
    s.sort_unstable();
    s.dedup();
    let mut t = targets.to_vec();
    t.sort_unstable();
    t.dedup();

    if let (Some(&smax), Some(&tmin)) = (s.last(), t.first()) {
        if smax >= tmin {
            return Ok(violation("S < T", smax as f64, tmin as f64, g));
        }
    }

    let far = n_param.div_ceil(12);
    for &v in &s {
        let r = reach_single(g, v, &t);
        if r.count() >= far.max(1) {
            return Ok(PathOutcome::FarVertex {
                vertex: v,
                reach: ReachSet {
                    sources: vec![v],
                    targets: t,
                    reached: r.to_vec(),
                },
            });
        }
    }

    let (m, k) = lemma_block_size(n_param)?;
    let log = (n_param as f64).log2();
    let s_floor = (n_param as f64 / (6.0 * log)).floor();
    if (s.len() as f64) < s_floor {
        return Ok(violation("|S| >= n/(6 log2 n)", s.len() as f64, s_floor, g));
    }
    if t.len() < n_param {
        return Ok(violation("|T| >= n", t.len() as f64, n_param as f64, g));
    }
    let parts = n_param / (3 * m);
    if parts < (k as usize).max(1) {
        return Ok(violation(
            "interval count n/(3m) >= log2 m",
            parts as f64,
            k as f64,
            g,
        ));
    }
    let intervals = blocks(&t, 3 * m, parts);
    let n = g.n();

    let mut current: Vec<usize> = s[..m].to_vec();
    let mut x: Vec<usize> = current.clone();
    for (i, next) in intervals.iter().enumerate().take(k as usize) {
        let x_set = VertexSet::from_iter(n, x.iter().copied());
        let outside: Vec<usize> = next
            .iter()
            .copied()
            .filter(|&u| !g.row(u).intersects_below(&x_set, u))
            .collect();
        if next.len() - outside.len() < 2 * m {
            let sides = if i == 0 {
                "A from S_0, B from interval 1 of T".to_string()
            } else {
                format!("A from interval {i} of T, B from interval {} of T", i + 1)
            };
            return Ok(PathOutcome::CoBiclique {
                biclique: Biclique::new(x[..m].to_vec(), outside[..m].to_vec(), true),
                sides,
            });
        }
        let half = current.len() / 2;
        let (lower, upper) = current.split_at(half);
        let lower_hits = hits(g, lower, &t, next);
        let (chosen, hit) = if lower_hits.len() >= m {
            (lower.to_vec(), lower_hits)
        } else {
            let upper_hits = hits(g, upper, &t, next);
            assert!(
                upper_hits.len() >= m,
                "halving step lost the reach invariant"
            );
            (upper.to_vec(), upper_hits)
        };
        current = chosen;
        x = hit;
    }

    debug_assert_eq!(current.len(), 1);
    let v = current[0];
    let reach_v = reach_single(g, v, &t);
    for (j, block) in intervals.iter().enumerate().skip((k as usize).max(1) - 1) {
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            block.iter().partition(|&&u| reach_v.contains(u));
        if inside.len() < m {
            let from = if k == 0 {
                "A = {v}".to_string()
            } else {
                format!("A from interval {k} of T")
            };
            return Ok(PathOutcome::CoBiclique {
                biclique: Biclique::new(x[..m].to_vec(), outside[..m].to_vec(), true),
                sides: format!("{from}, B from interval {} of T", j + 1),
            });
        }
    }
    let reached = reach_v.to_vec();
    assert!(reached.len() >= far, "far vertex below n/12");
    Ok(PathOutcome::FarVertex {
        vertex: v,
        reach: ReachSet {
            sources: vec![v],
            targets: t,
            reached,
        },
    })
}

fn hits(g: &OrderedGraph, sources: &[usize], targets: &[usize], block: &[usize]) -> Vec<usize> {
    let r = reach_from(g, &VertexSet::from_iter(g.n(), sources.iter().copied()), targets);
    block.iter().copied().filter(|&u| r.contains(u)).collect()
}

/// The path constant `1/(24 k²)`.
pub fn path_constant(k: usize) -> f64 {
    1.0 / (24.0 * (k * k) as f64)
}

/// Guaranteed co-bi-clique size `⌊c n / log2 n⌋` for the path theorem.
pub fn path_cobiclique_bound(n: usize, k: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (path_constant(k) * n as f64 / (n as f64).log2()).floor() as usize
}

/// Induced monotone `P_k` or a co-bi-clique.
///
/// `V` is cut into `k` intervals `A_1..A_k`. The first vertex comes from the
/// reach lemma on `(A_1, A_2)` with parameter `⌊n/k⌋`. Afterwards, with
/// `U_{l+1} = V ∖ (N(x_1) ∪ … ∪ N(x_{l-1}))`, each round applies the lemma to
/// `S = P(x_{l-1}, U_l) ∩ A_l` and `T = U_{l+1} ∩ A_{l+1}` with parameter
/// `⌊n/(2k)⌋`; a far vertex `w` is joined to `x_{l-1}` by a fewest-vertex
/// monotone `U_l`-path and its second vertex becomes `x_l`.
///
/// The procedure runs whatever the maximum degree is; when a size bound
/// that relies on `Δ < n/(24k²)` fails, the outcome is a
/// [`PathOutcome::PreconditionViolation`] carrying the partial path.
pub fn find_path_or_cobiclique(g: &OrderedGraph, k: usize) -> Result<PathOutcome> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("path length k = {k} < 2")));
    }
    let n = g.n();
    let delta = g.max_degree();
    let degree_bound = path_constant(k) * n as f64;
    let report = |outcome: PathOutcome, partial: &[usize]| match outcome {
        PathOutcome::PreconditionViolation(mut r) => {
            r.degree_bound = Some(degree_bound);
            r.max_degree = delta;
            r.partial = partial.to_vec();
            PathOutcome::PreconditionViolation(r)
        }
        other => other,
    };
    let lemma = |s: &[usize], t: &[usize], n_param: usize, partial: &[usize]| {
        match reach_or_cobiclique(g, s, t, n_param) {
            Ok(o) => Ok(report(o, partial)),
            Err(Error::NoValidM { n_param }) => Ok(report(
                violation(
                    "m > n/(12 log2 n) for some power of two m <= n/(6 log2 n)",
                    n_param as f64,
                    n_param as f64 / (12.0 * (n_param.max(2) as f64).log2()),
                    g,
                ),
                partial,
            )),
            Err(e) => Err(e),
        }
    };

    let width = n / k;
    if width == 0 {
        return Ok(report(violation("n >= k", n as f64, k as f64, g), &[]));
    }
    let all: Vec<usize> = (0..n).collect();
    let intervals = blocks(&all, width, k);

    let first = lemma(intervals[0], intervals[1], width, &[])?;
    let mut xs = match first {
        PathOutcome::FarVertex { vertex, .. } => vec![vertex],
        other => return Ok(other),
    };

    let mut allowed = VertexSet::full(n); // U_l
    for l in 2..=k {
        let prev = xs[l - 2];
        let reach_u = reach_from(g, &VertexSet::from_iter(n, [prev]), &allowed.to_vec());
        let s: Vec<usize> = intervals[l - 1]
            .iter()
            .copied()
            .filter(|&u| reach_u.contains(u))
            .collect();
        let w = if l == k {
            match s.first() {
                Some(&w) => w,
                None => {
                    return Ok(report(
                        violation("P(x_{k-1}, U_k) meets A_k", 0.0, 1.0, g),
                        &xs,
                    ))
                }
            }
        } else {
            let mut next_allowed = allowed.clone();
            next_allowed.difference_with(g.row(prev));
            let t: Vec<usize> = intervals[l]
                .iter()
                .copied()
                .filter(|&u| next_allowed.contains(u))
                .collect();
            match lemma(&s, &t, n / (2 * k), &xs)? {
                PathOutcome::FarVertex { vertex, .. } => vertex,
                other => return Ok(other),
            }
        };
        let path = min_vertex_path(g, prev, &allowed, w)
            .expect("w is reachable from x_{l-1} inside U_l");
        xs.push(path[1]);
        allowed.difference_with(g.row(prev));
    }

    let embedding = Embedding { map: xs };
    let pk = Pattern::monotone_path(k)?;
    assert!(
        embedding.verify(g, pk.graph()),
        "extracted vertices are not an induced monotone path"
    );
    Ok(PathOutcome::InducedPath { embedding })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> OrderedGraph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        OrderedGraph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn edgeless_reaches_nothing() {
        let g = OrderedGraph::empty(6);
        let r = monotone_reach(&g, &[0], &[1, 2, 3, 4, 5]).unwrap();
        assert!(r.reached.is_empty());
    }

    #[test]
    fn path_reaches_everything() {
        let g = path_graph(5);
        let r = monotone_reach(&g, &[0], &[1, 2, 3, 4]).unwrap();
        assert_eq!(r.reached, vec![1, 2, 3, 4]);
        // intermediate vertices must lie in T
        let r = monotone_reach(&g, &[0], &[1, 3, 4]).unwrap();
        assert_eq!(r.reached, vec![1]);
    }

    #[test]
    fn out_of_range() {
        let g = path_graph(3);
        assert!(matches!(
            monotone_reach(&g, &[5], &[1]),
            Err(Error::IndexOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn min_path_is_shortest() {
        // 0-1-2-3 plus chord 0-2
        let g = OrderedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let all = VertexSet::full(4);
        assert_eq!(min_vertex_path(&g, 0, &all, 3), Some(vec![0, 2, 3]));
        let no2 = VertexSet::from_iter(4, [1, 3]);
        assert_eq!(min_vertex_path(&g, 0, &no2, 3), None);
    }

    #[test]
    fn block_size_window() {
        // n = 4096: n/(6*12) = 56.9 -> m = 32 > 4096/144 = 28.4
        assert_eq!(lemma_block_size(4096).unwrap(), (32, 5));
        assert!(matches!(lemma_block_size(8), Err(Error::NoValidM { .. })));
    }

    #[test]
    fn empty_bipartite_gives_cobiclique_at_first_interval() {
        let n_param = 256;
        let s: Vec<usize> = (0..60).collect();
        let t: Vec<usize> = (60..60 + n_param).collect();
        let g = OrderedGraph::empty(60 + n_param);
        let out = reach_or_cobiclique(&g, &s, &t, n_param).unwrap();
        let (m, _) = lemma_block_size(n_param).unwrap();
        match &out {
            PathOutcome::CoBiclique { biclique, sides } => {
                assert_eq!(biclique.size(), m);
                assert!(sides.contains("S_0"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(out.verify(&g, 2));
    }

    #[test]
    fn s_must_precede_t() {
        let g = OrderedGraph::empty(10);
        let out = reach_or_cobiclique(&g, &[5], &[1, 2], 2).unwrap();
        assert!(matches!(out, PathOutcome::PreconditionViolation(ref r) if r.inequality == "S < T"));
    }

    #[test]
    fn complete_graph_is_degree_gated() {
        let g = OrderedGraph::complete(300);
        let out = find_path_or_cobiclique(&g, 3).unwrap();
        match out {
            PathOutcome::PreconditionViolation(r) => {
                assert_eq!(r.max_degree, 299);
                assert!(r.max_degree as f64 >= r.degree_bound.unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn path_graph_yields_induced_p4() {
        let g = path_graph(400);
        let out = find_path_or_cobiclique(&g, 4).unwrap();
        assert!(matches!(out, PathOutcome::InducedPath { .. }), "{out:?}");
        assert!(out.verify(&g, 4));
    }

    #[test]
    fn k_below_two_rejected() {
        assert!(find_path_or_cobiclique(&path_graph(10), 1).is_err());
    }
}
