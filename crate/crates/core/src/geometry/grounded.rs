//! Grounded families: the forbidden-pattern checks, degree-bounded
//! subsets, and the certified co-bi-clique oracle built from the path and
//! matching engines.

use serde::{Deserialize, Serialize};

use super::curve::{intersection_graph, CurveFamily, CurveOrder};
use crate::biclique::{is_biclique, max_biclique_oracle, Biclique, ORACLE_CAP};
use crate::error::{Error, Result};
use crate::graph::{choose2, OrderedGraph, VertexSet};
use crate::matching::{find_matching_or_cobiclique, matching_constant, MatchingConfig, MatchingOutcome};
use crate::path::{find_path_or_cobiclique, path_constant, PathOutcome};
use crate::pattern::{find_induced_embedding, Pattern};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundedReport {
    pub n: usize,
    /// Curve indices of an induced M1 in the y-ordered intersection graph.
    pub m1_witness: Option<Vec<usize>>,
    /// Curve indices of an induced P4 in its complement.
    pub p4_complement_witness: Option<Vec<usize>>,
}

impl GroundedReport {
    pub fn passed(&self) -> bool {
        self.m1_witness.is_none() && self.p4_complement_witness.is_none()
    }
}

pub fn grounded_ordering_properties(fam: &CurveFamily) -> Result<GroundedReport> {
    if fam.order() != CurveOrder::GroundedYOrder {
        return Err(Error::Precondition("family is not in grounded y-order".into()));
    }
    let cg = intersection_graph(fam)?;
    let to_curves = |map: Vec<usize>| map.into_iter().map(|v| cg.order[v]).collect();
    let m1 = find_induced_embedding(&cg.graph, &Pattern::m1()).map(|e| to_curves(e.map));
    let p4 = Pattern::monotone_path(4)?;
    let co = find_induced_embedding(&cg.graph.complement(), &p4).map(|e| to_curves(e.map));
    Ok(GroundedReport {
        n: fam.len(),
        m1_witness: m1,
        p4_complement_witness: co,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Graph,
    Complement,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeSubset {
    pub vertices: Vec<usize>,
    pub side: Side,
    /// Maximum degree of `G[U]` on the declared side.
    pub max_degree: usize,
    pub bound: f64,
    pub method: String,
}

impl DegreeSubset {
    pub fn verify(&self, g: &OrderedGraph) -> bool {
        let u = VertexSet::from_iter(g.n(), self.vertices.iter().copied());
        !self.vertices.is_empty()
            && g.max_degree_within(&u, self.side == Side::Complement) as f64
                <= self.bound
    }
}

fn side_degree(g: &OrderedGraph, u: &VertexSet, v: usize, side: Side) -> usize {
    let d = g.row(v).intersection_count(u);
    match side {
        Side::Graph => d,
        Side::Complement => u.count() - 1 - d,
    }
}

/// Deletes a maximum-degree vertex (lowest index on ties) until
/// `Δ ≤ δ|U|` holds on `side`.
pub fn greedy_peel(g: &OrderedGraph, delta: f64, side: Side) -> Vec<usize> {
    let n = g.n();
    let mut u = VertexSet::full(n);
    let mut deg: Vec<usize> = (0..n).map(|v| side_degree(g, &u, v, side)).collect();
    let mut size = n;
    while size > 0 {
        let mut pick: Option<(usize, usize)> = None;
        for v in u.iter() {
            if pick.is_none_or(|(_, d)| deg[v] > d) {
                pick = Some((v, deg[v]));
            }
        }
        let (v, d) = pick.expect("non-empty");
        if d as f64 <= delta * size as f64 {
            break;
        }
        u.remove(v);
        size -= 1;
        for w in u.iter() {
            let adjacent = g.has_edge(v, w);
            if adjacent == (side == Side::Graph) {
                deg[w] -= 1;
            }
        }
    }
    u.to_vec()
}

/// Drops from `u0` every vertex of degree `> 2ε|U0|` in `G[U0]` on `side`,
/// where `ε = δ/4`, provided `G[U0]` has at most `ε·C(|U0|, 2)` edges on
/// that side. Fewer than half the vertices are dropped and the survivors
/// satisfy `Δ ≤ δ|U|`.
pub fn degree_cleaning(g: &OrderedGraph, u0: &[usize], delta: f64, side: Side) -> Option<Vec<usize>> {
    let eps = delta / 4.0;
    let set = VertexSet::from_iter(g.n(), u0.iter().copied());
    let size = set.count();
    if size < 2 {
        return None;
    }
    let degs: Vec<(usize, usize)> = set.iter().map(|v| (v, side_degree(g, &set, v, side))).collect();
    let edges: usize = degs.iter().map(|d| d.1).sum::<usize>() / 2;
    let pairs = choose2(size) as f64;
    if edges as f64 > eps * pairs {
        return None;
    }
    let cap = 2.0 * eps * size as f64;
    Some(degs.into_iter().filter(|&(_, d)| d as f64 <= cap).map(|(v, _)| v).collect())
}

/// A vertex set on which one side of `g` has maximum degree at most
/// `δ|U|`. The set is always verified; its size is best effort.
///
/// Candidates: degree cleaning of the whole vertex set on either side
/// (applicable when the edge count is already small enough) and greedy
/// peeling on either side. The largest verified candidate wins; ties prefer
/// the graph side.
pub fn sparse_or_dense_subgraph(g: &OrderedGraph, delta: f64) -> Result<DegreeSubset> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} not in (0, 1)")));
    }
    let all: Vec<usize> = (0..g.n()).collect();
    let mut best: Option<DegreeSubset> = None;
    for side in [Side::Graph, Side::Complement] {
        let mut cands = vec![("peel", greedy_peel(g, delta, side))];
        if let Some(u) = degree_cleaning(g, &all, delta, side) {
            cands.push(("degree-cleaning", u));
        }
        for (method, vertices) in cands {
            let set = VertexSet::from_iter(g.n(), vertices.iter().copied());
            let cand = DegreeSubset {
                max_degree: g.max_degree_within(&set, side == Side::Complement),
                bound: delta * vertices.len() as f64,
                vertices,
                side,
                method: method.to_string(),
            };
            if cand.verify(g) && best.as_ref().is_none_or(|b| cand.vertices.len() > b.vertices.len()) {
                best = Some(cand);
            }
        }
    }
    best.ok_or_else(|| Error::Precondition("graph has no vertices".into()))
}

/// Supplies balanced certificates on induced subgraphs. A co-bi-clique
/// (`in_complement`) is the expected answer; a bi-clique is forwarded by
/// callers as the other branch of the dichotomy.
pub trait CoBicliqueOracle {
    fn find(&mut self, g: &OrderedGraph) -> Result<Biclique>;
}

/// Splits at several cut points and deletes the vertex with the most cross
/// edges until none remain; returns the best balanced co-bi-clique.
pub fn cut_peel_cobiclique(g: &OrderedGraph) -> Biclique {
    let n = g.n();
    let mut best = Biclique::empty(true);
    for t in (1..8).map(|i| i * n / 8).filter(|&t| t > 0 && t < n) {
        let mut a = VertexSet::from_iter(n, 0..t);
        let mut b = VertexSet::from_iter(n, t..n);
        loop {
            let worst = a
                .iter()
                .map(|v| (g.row(v).intersection_count(&b), v))
                .chain(b.iter().map(|v| (g.row(v).intersection_count(&a), v)))
                .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
            match worst {
                Some((d, v)) if d > 0 => {
                    a.remove(v);
                    b.remove(v);
                }
                _ => break,
            }
        }
        let cand = Biclique::balanced(a.to_vec(), b.to_vec(), true);
        if cand.size() > best.size() {
            best = cand;
        }
    }
    best
}

/// What the grounded oracle did on one call.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCall {
    pub n: usize,
    pub side: Option<Side>,
    pub subset: usize,
    pub route: String,
    pub size: usize,
    pub in_complement: bool,
}

/// Degree-bounded subset, then the matching engine (M1) on the sparse side
/// or the path engine (`P4`, on the complement) on the dense side. The cut
/// peel and, at `n ≤ exact_cap`, the exhaustive search are also consulted;
/// the largest certified co-bi-clique wins.
#[derive(Clone, Debug)]
pub struct GroundedOracle {
    pub delta: f64,
    pub seed: u64,
    pub exact_cap: usize,
    pub calls: Vec<OracleCall>,
}

impl GroundedOracle {
    /// `δ = min(1/(8·2³), 1/(24·4²))`, the two engine constants.
    pub fn default_delta() -> f64 {
        matching_constant(2).min(path_constant(4))
    }

    pub fn new(seed: u64) -> Self {
        GroundedOracle {
            delta: Self::default_delta(),
            seed,
            exact_cap: ORACLE_CAP,
            calls: vec![],
        }
    }
}

impl CoBicliqueOracle for GroundedOracle {
    fn find(&mut self, g: &OrderedGraph) -> Result<Biclique> {
        let n = g.n();
        if n < 2 {
            return Err(Error::Precondition(format!("oracle called on {n} vertices")));
        }
        let mut co: Vec<(String, Biclique)> = vec![];
        let mut bi: Vec<(String, Biclique)> = vec![];
        let mut side = None;
        let mut subset = 0;

        if n <= self.exact_cap {
            let b = max_biclique_oracle(g, true, self.exact_cap)?;
            if b.size() > 0 {
                co.push(("exhaustive".into(), b));
            }
        } else {
            let sub = sparse_or_dense_subgraph(g, self.delta)?;
            side = Some(sub.side);
            subset = sub.vertices.len();
            let (h, map) = g.induced_subgraph(&sub.vertices)?;
            match sub.side {
                Side::Graph if h.n() >= 4 => {
                    let cfg = MatchingConfig::new(self.seed, 2);
                    if let Ok(MatchingOutcome::CoBiclique { biclique, .. }) =
                        find_matching_or_cobiclique(&h, &Pattern::m1(), &cfg)
                    {
                        co.push(("matching-engine".into(), biclique.mapped(&map)));
                    }
                }
                Side::Complement if h.n() >= 4 => {
                    if let Ok(PathOutcome::CoBiclique { biclique, .. }) =
                        find_path_or_cobiclique(&h.complement(), 4)
                    {
                        bi.push(("path-engine".into(), biclique.flipped().mapped(&map)));
                    }
                }
                _ => {}
            }
            let b = cut_peel_cobiclique(g);
            if b.size() > 0 {
                co.push(("cut-peel".into(), b));
            }
        }
        if let Some((i, j)) = g.edges().first().copied() {
            bi.push(("edge".into(), Biclique::new(vec![i], vec![j], false)));
        }
        let pick = |v: Vec<(String, Biclique)>| v.into_iter().max_by_key(|c| c.1.size());
        let (route, out) = pick(co)
            .or_else(|| pick(bi))
            .ok_or_else(|| Error::Precondition("no certificate on a graph with 2+ vertices".into()))?;
        debug_assert!(is_biclique(g, &out));
        self.calls.push(OracleCall {
            n,
            side,
            subset,
            route,
            size: out.size(),
            in_complement: out.in_complement,
        });
        Ok(out)
    }
}
