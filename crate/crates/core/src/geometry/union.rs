//! Bi-cliques in the union of two graphs on one vertex set.
//!
//! With `k = 1 + ⌈log2(1/c)⌉`, the vertex set is split `k` times by
//! co-bi-cliques of `G1`, giving `2^k` parts with no `G1` edge between any
//! two of them. One co-bi-clique `(A, B)` of `G2` on the union of the parts
//! then has a part `j` holding many `A` vertices and a different part `j'`
//! holding many `B` vertices; `(A ∩ U_j, B ∩ U_j')` has no edge in either
//! graph.

use serde::{Deserialize, Serialize};

use super::grounded::CoBicliqueOracle;
use crate::biclique::{is_biclique, Biclique};
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnionOutcome {
    /// In `G1 ∪ G2`, or in its complement when `in_complement` is set.
    pub biclique: Biclique,
    pub c: f64,
    pub k: u32,
    pub c_prime: f64,
    /// `⌊c'·n⌋`.
    pub guaranteed: usize,
    /// `g1:level <i>` or `g2` for a forwarded bi-clique, `pigeonhole` otherwise.
    pub source: String,
    pub part_sizes: Vec<usize>,
}

/// `k = 1 + ⌈log2(1/c)⌉`.
pub fn union_levels(c: f64) -> u32 {
    1 + (1.0 / c).log2().ceil() as u32
}

/// `c' = c^(k+1) / 2`.
pub fn union_constant(c: f64) -> f64 {
    c.powi(union_levels(c) as i32 + 1) / 2.0
}

/// Runs `oracle` on `g[u]` and checks its contract: a valid certificate,
/// and a co-bi-clique of size at least `⌈c|U|⌉` (returned truncated to
/// exactly that size) unless it is a bi-clique.
fn consult(
    oracle: &mut dyn CoBicliqueOracle,
    g: &OrderedGraph,
    u: &[usize],
    c: f64,
) -> Result<Biclique> {
    let (h, map) = g.induced_subgraph(u)?;
    let b = oracle.find(&h)?;
    if !is_biclique(&h, &b) {
        return Err(Error::OracleContractViolation(format!(
            "certificate on {} vertices does not verify",
            h.n()
        )));
    }
    if !b.in_complement {
        return Ok(b.mapped(&map));
    }
    let need = (c * u.len() as f64).ceil() as usize;
    if b.size() < need {
        return Err(Error::OracleContractViolation(format!(
            "co-bi-clique of size {} on {} vertices, below ⌈c|U|⌉ = {need}",
            b.size(),
            u.len()
        )));
    }
    Ok(b.truncated(need).mapped(&map))
}

pub fn union_biclique(
    g1: &OrderedGraph,
    g2: &OrderedGraph,
    c: f64,
    oracle: &mut dyn CoBicliqueOracle,
) -> Result<UnionOutcome> {
    let n = g1.n();
    if g2.n() != n {
        return Err(Error::VertexCountMismatch(n, g2.n()));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameter(format!("c = {c} not in (0, 1)")));
    }
    let union = g1.union(g2)?;
    let k = union_levels(c);
    let c_prime = union_constant(c);
    let outcome = |biclique: Biclique, source: String, parts: &[Vec<usize>]| UnionOutcome {
        biclique,
        c,
        k,
        c_prime,
        guaranteed: (c_prime * n as f64).floor() as usize,
        source,
        part_sizes: parts.iter().map(Vec::len).collect(),
    };

    let mut parts: Vec<Vec<usize>> = vec![(0..n).collect()];
    for level in 0..k {
        let mut next = Vec::with_capacity(parts.len() * 2);
        for u in &parts {
            if u.len() < 2 {
                return Err(Error::Precondition(format!(
                    "part of size {} at level {level} of {k}",
                    u.len()
                )));
            }
            let b = consult(oracle, g1, u, c)?;
            if !b.in_complement {
                let out = outcome(b, format!("g1:level {level}"), &parts);
                debug_assert!(is_biclique(&union, &out.biclique));
                return Ok(out);
            }
            next.push(b.a);
            next.push(b.b);
        }
        parts = next;
    }

    let mut all: Vec<usize> = parts.concat();
    all.sort_unstable();
    let b = consult(oracle, g2, &all, c)?;
    if !b.in_complement {
        return Ok(outcome(b, "g2".into(), &parts));
    }
    let hits = |side: &[usize], part: &[usize]| side.iter().filter(|v| part.contains(v)).count();
    let j = (0..parts.len())
        .max_by_key(|&j| (hits(&b.a, &parts[j]), std::cmp::Reverse(j)))
        .expect("2^k parts");
    let j2 = (0..parts.len())
        .filter(|&x| x != j)
        .max_by_key(|&x| (hits(&b.b, &parts[x]), std::cmp::Reverse(x)))
        .expect("at least two parts");
    let a: Vec<usize> = b.a.iter().copied().filter(|v| parts[j].contains(v)).collect();
    let bb: Vec<usize> = b.b.iter().copied().filter(|v| parts[j2].contains(v)).collect();
    let out = Biclique::balanced(a, bb, true);
    if !is_biclique(&union, &out) {
        return Err(Error::OracleContractViolation(format!(
            "pigeonhole pair ({j}, {j2}) does not give a co-bi-clique of the union"
        )));
    }
    Ok(outcome(out, "pigeonhole".into(), &parts))
}
