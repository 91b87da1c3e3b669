//! Induced ordered matchings versus linear co-bi-cliques.
//!
//! For a matching pattern with `k` edges `(a_i, b_i)` the host is cut into
//! `2k` intervals; each pattern edge gets a system of vertex-disjoint edges
//! between its two intervals (or the cut yields a co-bi-clique). One edge is
//! then drawn uniformly from each system and the `2k` endpoints are tested
//! for inducing the pattern.

use serde::{Deserialize, Serialize};

use crate::biclique::{is_biclique, Biclique};
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;
use crate::path::PreconditionReport;
use crate::pattern::{Embedding, Pattern};
use crate::rng::SplitMix64;

/// Disjoint cross edges for one pattern edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSystem {
    /// Pattern positions `(a_i, b_i)`, which are also interval indices.
    pub intervals: (usize, usize),
    /// Edges `(u, v)` with `u` in interval `a_i` and `v` in interval `b_i`.
    pub edges: Vec<(usize, usize)>,
}

impl EdgeSystem {
    pub fn left_endpoints(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.0).collect()
    }

    pub fn right_endpoints(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.1).collect()
    }

    pub fn check(&self, g: &OrderedGraph, parts: &[Vec<usize>], m: usize) -> bool {
        let (a, b) = self.intervals;
        let mut seen = std::collections::HashSet::new();
        self.edges.len() == m
            && self.edges.iter().all(|&(u, v)| {
                g.has_edge(u, v)
                    && parts[a].binary_search(&u).is_ok()
                    && parts[b].binary_search(&v).is_ok()
                    && seen.insert(u)
                    && seen.insert(v)
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossEdges {
    Disjoint(Vec<(usize, usize)>),
    CoBiclique(Biclique),
}

/// `m` disjoint edges between `a` and `b`, or a co-bi-clique of size `m`
/// with one side in each set.
///
/// Greedy maximal matching: each vertex of `a` in increasing order takes
/// its first free neighbour in `b`. If fewer than `m` edges result, the
/// unmatched vertices on the two sides span no cross edge, and each side
/// has at least `|side| - (m - 1)` of them.
pub fn disjoint_edges_or_cobiclique(
    g: &OrderedGraph,
    a: &[usize],
    b: &[usize],
    m: usize,
) -> Result<CrossEdges> {
    g.check_vertices(a)?;
    g.check_vertices(b)?;
    if m == 0 {
        return Err(Error::SizeInfeasible {
            m,
            reason: "m must be positive".into(),
        });
    }
    if m > a.len().min(b.len()) {
        return Err(Error::SizeInfeasible {
            m,
            reason: format!("sides have {} and {} vertices", a.len(), b.len()),
        });
    }
    let mut taken = vec![false; b.len()];
    let mut matched_a = vec![false; a.len()];
    let mut edges = Vec::new();
    for (ia, &u) in a.iter().enumerate() {
        if let Some(ib) = (0..b.len()).find(|&ib| !taken[ib] && g.has_edge(u, b[ib])) {
            taken[ib] = true;
            matched_a[ia] = true;
            edges.push((u, b[ib]));
            if edges.len() == m {
                return Ok(CrossEdges::Disjoint(edges));
            }
        }
    }
    let free_a: Vec<usize> = a
        .iter()
        .zip(&matched_a)
        .filter(|(_, &t)| !t)
        .map(|(&u, _)| u)
        .collect();
    let free_b: Vec<usize> = b
        .iter()
        .zip(&taken)
        .filter(|(_, &t)| !t)
        .map(|(&v, _)| v)
        .collect();
    if free_a.len() < m || free_b.len() < m {
        return Err(Error::SizeInfeasible {
            m,
            reason: format!(
                "greedy matching has {} edges and leaves {} / {} free vertices; need |A|, |B| >= 2m - 1",
                edges.len(),
                free_a.len(),
                free_b.len()
            ),
        });
    }
    Ok(CrossEdges::CoBiclique(Biclique::new(
        free_a[..m].to_vec(),
        free_b[..m].to_vec(),
        true,
    )))
}

/// The matching constant `1/(8 k³)`.
pub fn matching_constant(k: usize) -> f64 {
    1.0 / (8.0 * (k * k * k) as f64)
}

/// Default sampling budget `64 k ⌈ln(1/δ)⌉` with `δ = 10⁻⁶`.
pub fn default_retry_cap(k: usize) -> u64 {
    let log = (1.0f64 / 1e-6).ln().ceil() as u64;
    64 * k as u64 * log
}

/// Density of edges between `x` and `y` (pairs counted as `|x|·|y|`).
pub fn cross_density(g: &OrderedGraph, x: &[usize], y: &[usize]) -> f64 {
    if x.is_empty() || y.is_empty() {
        return 0.0;
    }
    let hits: usize = x
        .iter()
        .map(|&u| y.iter().filter(|&&v| g.has_edge(u, v)).count())
        .sum();
    hits as f64 / (x.len() * y.len()) as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingStats {
    pub trials: u64,
    /// Per non-pattern pair `(i, j)` of positions, the edge density between
    /// the endpoint sets of positions `i` and `j`.
    pub densities: Vec<(usize, usize, f64)>,
    /// `1 - Σ densities`: lower bound on the per-trial success probability.
    pub success_lower_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum MatchingOutcome {
    InducedMatching {
        embedding: Embedding,
        stats: SamplingStats,
        /// Whether the embedding came from the exhaustive product search.
        exhaustive: bool,
    },
    CoBiclique {
        biclique: Biclique,
        /// Pattern edge index whose intervals produced the co-bi-clique.
        pattern_edge: usize,
    },
    PreconditionViolation {
        report: PreconditionReport,
        stats: SamplingStats,
    },
}

impl MatchingOutcome {
    pub fn variant(&self) -> &'static str {
        match self {
            MatchingOutcome::InducedMatching { .. } => "induced_matching",
            MatchingOutcome::CoBiclique { .. } => "co_biclique",
            MatchingOutcome::PreconditionViolation { .. } => "precondition_violation",
        }
    }

    pub fn verify(&self, g: &OrderedGraph, pattern: &Pattern) -> bool {
        match self {
            MatchingOutcome::InducedMatching { embedding, .. } => {
                embedding.verify(g, pattern.graph())
            }
            MatchingOutcome::CoBiclique { biclique, .. } => {
                biclique.in_complement && is_biclique(g, biclique)
            }
            MatchingOutcome::PreconditionViolation { report, .. } => {
                report.max_degree == g.max_degree()
                    && report.degree_bound.is_some_and(|b| report.max_degree as f64 >= b)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatchingConfig {
    pub seed: u64,
    pub retry_cap: u64,
    /// Run the exhaustive product search over the edge systems (k ≤ 4)
    /// when sampling fails.
    pub exhaustive_fallback: bool,
}

impl MatchingConfig {
    pub fn new(seed: u64, k: usize) -> Self {
        MatchingConfig {
            seed,
            retry_cap: default_retry_cap(k),
            exhaustive_fallback: false,
        }
    }
}

/// Interval partition `A_0..A_{parts-1}`: `⌊n/parts⌋` each, remainder last.
pub fn interval_partition(n: usize, parts: usize) -> Vec<Vec<usize>> {
    let w = n / parts;
    (0..parts)
        .map(|j| {
            let hi = if j + 1 == parts { n } else { (j + 1) * w };
            (j * w..hi).collect()
        })
        .collect()
}

/// Edge systems for every pattern edge, or the first co-bi-clique met.
pub fn build_edge_systems(
    g: &OrderedGraph,
    pattern: &Pattern,
) -> Result<std::result::Result<Vec<EdgeSystem>, (usize, Biclique)>> {
    let pairs = pattern
        .matching_pairs()
        .ok_or_else(|| Error::InvalidPattern("pattern is not an ordered matching".into()))?;
    let k = pairs.len();
    let parts = interval_partition(g.n(), 2 * k);
    let m = system_size(g.n(), k)?;
    let mut systems = Vec::with_capacity(k);
    for (i, &(a, b)) in pairs.iter().enumerate() {
        match disjoint_edges_or_cobiclique(g, &parts[a], &parts[b], m)? {
            CrossEdges::Disjoint(edges) => systems.push(EdgeSystem {
                intervals: (a, b),
                edges,
            }),
            CrossEdges::CoBiclique(bc) => return Ok(Err((i, bc))),
        }
    }
    Ok(Ok(systems))
}

/// `⌈⌊n/(2k)⌋ / 2⌉`, which is at least `⌊n/(4k)⌋` and small enough for the
/// greedy fallback to always leave `m` free vertices per side.
pub fn system_size(n: usize, k: usize) -> Result<usize> {
    let w = n / (2 * k);
    if w == 0 {
        return Err(Error::Precondition(format!(
            "n = {n} too small for {} intervals",
            2 * k
        )));
    }
    Ok(w.div_ceil(2))
}

/// Endpoint `u_j` chosen for every pattern position `j`.
fn assemble(systems: &[EdgeSystem], choice: &[usize], positions: usize) -> Vec<usize> {
    let mut u = vec![0; positions];
    for (sys, &c) in systems.iter().zip(choice) {
        let (x, y) = sys.edges[c];
        u[sys.intervals.0] = x;
        u[sys.intervals.1] = y;
    }
    u
}

fn induces(g: &OrderedGraph, pattern: &OrderedGraph, u: &[usize]) -> bool {
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| pattern.has_edge(i, j) == g.has_edge(u[i], u[j])))
}

/// One sampling trial: returns the endpoint vector when it induces the pattern.
pub fn sample_trial(
    g: &OrderedGraph,
    pattern: &Pattern,
    systems: &[EdgeSystem],
    rng: &mut SplitMix64,
) -> Option<Vec<usize>> {
    let choice: Vec<usize> = systems
        .iter()
        .map(|s| rng.below(s.edges.len() as u64) as usize)
        .collect();
    let u = assemble(systems, &choice, pattern.n());
    induces(g, pattern.graph(), &u).then_some(u)
}

pub fn sampling_stats(g: &OrderedGraph, pattern: &Pattern, systems: &[EdgeSystem], trials: u64) -> SamplingStats {
    let positions = pattern.n();
    let mut endpoints = vec![Vec::new(); positions];
    for s in systems {
        endpoints[s.intervals.0] = s.left_endpoints();
        endpoints[s.intervals.1] = s.right_endpoints();
    }
    let mut densities = Vec::new();
    for i in 0..positions {
        for j in i + 1..positions {
            if !pattern.graph().has_edge(i, j) {
                densities.push((i, j, cross_density(g, &endpoints[i], &endpoints[j])));
            }
        }
    }
    let total: f64 = densities.iter().map(|d| d.2).sum();
    SamplingStats {
        trials,
        densities,
        success_lower_bound: 1.0 - total,
    }
}

/// Depth-first search over `E_1 × … × E_k`, pruning as soon as a chosen
/// endpoint is adjacent to an earlier endpoint outside the pattern.
pub fn exhaustive_search(g: &OrderedGraph, pattern: &Pattern, systems: &[EdgeSystem]) -> Option<Vec<usize>> {
    let mut placed: Vec<(usize, usize)> = Vec::new(); // (position, vertex)
    fn go(
        g: &OrderedGraph,
        h: &OrderedGraph,
        systems: &[EdgeSystem],
        placed: &mut Vec<(usize, usize)>,
    ) -> bool {
        let depth = placed.len() / 2;
        if depth == systems.len() {
            return true;
        }
        let sys = &systems[depth];
        let (pa, pb) = sys.intervals;
        for &(x, y) in &sys.edges {
            let ok = placed.iter().all(|&(p, v)| {
                h.has_edge(p, pa) == g.has_edge(v, x) && h.has_edge(p, pb) == g.has_edge(v, y)
            });
            if ok {
                placed.push((pa, x));
                placed.push((pb, y));
                if go(g, h, systems, placed) {
                    return true;
                }
                placed.truncate(placed.len() - 2);
            }
        }
        false
    }
    if go(g, pattern.graph(), systems, &mut placed) {
        let mut u = vec![0; pattern.n()];
        for (p, v) in placed {
            u[p] = v;
        }
        Some(u)
    } else {
        None
    }
}

/// Induced copy of the matching `pattern`, or a co-bi-clique of size at
/// least `⌊n/(4k)⌋`.
///
/// Trials draw from per-trial streams `SplitMix64::derive(seed, t)` in
/// order `t = 0, 1, …`, so the first success is independent of scheduling.
/// When every trial fails, a maximum degree `Δ ≥ n/(8k³)` is reported as a
/// precondition violation and otherwise as [`Error::RetryExhausted`].
pub fn find_matching_or_cobiclique(
    g: &OrderedGraph,
    pattern: &Pattern,
    config: &MatchingConfig,
) -> Result<MatchingOutcome> {
    let pairs = pattern
        .matching_pairs()
        .ok_or_else(|| Error::InvalidPattern("pattern is not an ordered matching".into()))?;
    let k = pairs.len();
    let n = g.n();
    let systems = match build_edge_systems(g, pattern)? {
        Ok(s) => s,
        Err((pattern_edge, biclique)) => {
            return Ok(MatchingOutcome::CoBiclique {
                biclique,
                pattern_edge,
            })
        }
    };

    let mut found = None;
    let mut trials = 0;
    while trials < config.retry_cap {
        let mut rng = SplitMix64::derive(config.seed, trials);
        trials += 1;
        if let Some(u) = sample_trial(g, pattern, &systems, &mut rng) {
            found = Some((u, false));
            break;
        }
    }
    if found.is_none() && config.exhaustive_fallback && k <= 4 {
        found = exhaustive_search(g, pattern, &systems).map(|u| (u, true));
    }
    let stats = sampling_stats(g, pattern, &systems, trials);
    if let Some((map, exhaustive)) = found {
        let embedding = Embedding { map };
        assert!(embedding.verify(g, pattern.graph()));
        return Ok(MatchingOutcome::InducedMatching {
            embedding,
            stats,
            exhaustive,
        });
    }

    let delta = g.max_degree();
    let bound = matching_constant(k) * n as f64;
    if delta as f64 >= bound {
        return Ok(MatchingOutcome::PreconditionViolation {
            report: PreconditionReport {
                inequality: "max degree < n/(8k^3)".into(),
                lhs: delta as f64,
                rhs: bound,
                max_degree: delta,
                degree_bound: Some(bound),
                partial: vec![],
            },
            stats,
        });
    }
    let diag: Vec<String> = stats
        .densities
        .iter()
        .map(|(i, j, d)| format!("({i},{j})={d:.4}"))
        .collect();
    Err(Error::RetryExhausted {
        seed: config.seed,
        trials,
        diagnostics: format!(
            "endpoint densities {}; success lower bound {:.4}",
            diag.join(" "),
            stats.success_lower_bound
        ),
    })
}
