//! Triple-ordered graphs, holes, forcing 4-tuples and order types.
//!
//! `<1` is the index order. `<2` and `<3` are given as rank vectors:
//! `u <2 v` iff `perm2[u] < perm2[v]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

/// Checks that `perm` is a bijection on `0..n`.
pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} for {n} vertices",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &r in perm {
        if r >= n || std::mem::replace(&mut seen[r], true) {
            return Err(Error::InvalidPermutation(format!("rank {r} repeated or out of range")));
        }
    }
    Ok(())
}

/// The lexicographically first `a < b < c` with `ab, bc ∈ E`, `ac ∉ E`
/// and `b` not below both `a` and `c` in `perm`.
pub fn is_magical(g: &OrderedGraph, perm: &[usize]) -> Option<(usize, usize, usize)> {
    for a in 0..g.n() {
        for b in g.row(a).iter().filter(|&b| b > a) {
            for c in g.row(b).iter().filter(|&c| c > b) {
                if !g.has_edge(a, c) && !(perm[b] < perm[a] && perm[b] < perm[c]) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// `(a, b, c)` with `a < b < c` is a hole for `perm` when `b` is below
/// both ends.
pub fn is_ihole(a: usize, b: usize, c: usize, perm: &[usize]) -> bool {
    a < b && b < c && perm[b] < perm[a] && perm[b] < perm[c]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    fn of(below: bool) -> Sign {
        if below {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// `(s1, s2, s3, s4)` for `(a, b, b', c)`: `s1 = +` iff `a <2 b`,
/// `s2 = +` iff `b <2 c`, `s3 = +` iff `a <3 b'`, `s4 = +` iff `b' <3 c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderType(pub [Sign; 4]);

impl OrderType {
    pub fn all() -> Vec<OrderType> {
        (0..16u8)
            .map(|bits| {
                OrderType(std::array::from_fn(|i| Sign::of(bits >> (3 - i) & 1 == 0)))
            })
            .collect()
    }

    /// Non-forcing exactly when `(s1, s2) = (-, +)` or `(s3, s4) = (-, +)`.
    pub fn is_forcing(&self) -> bool {
        let [s1, s2, s3, s4] = self.0;
        let hole = |x, y| x == Sign::Minus && y == Sign::Plus;
        !hole(s1, s2) && !hole(s3, s4)
    }

    /// Index in `0..16`, `+` as 0, most significant sign first.
    pub fn index(&self) -> usize {
        self.0
            .iter()
            .fold(0, |acc, &s| acc * 2 + usize::from(s == Sign::Minus))
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.0 {
            f.write_str(if s == Sign::Plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

pub fn order_type(a: usize, b: usize, b2: usize, c: usize, perm2: &[usize], perm3: &[usize]) -> OrderType {
    OrderType([
        Sign::of(perm2[a] < perm2[b]),
        Sign::of(perm2[b] < perm2[c]),
        Sign::of(perm3[a] < perm3[b2]),
        Sign::of(perm3[b2] < perm3[c]),
    ])
}

fn check_tuple(a: usize, b: usize, b2: usize, c: usize) -> Result<()> {
    if a < b && b < c && a < b2 && b2 < c {
        Ok(())
    } else {
        Err(Error::OrderViolation(format!(
            "({a},{b},{b2},{c}) needs a < b < c and a < b' < c"
        )))
    }
}

/// Definition route: `(a, b, c)` is not a 2-hole and `(a, b', c)` is not a
/// 3-hole.
pub fn is_forcing_by_holes(
    a: usize,
    b: usize,
    b2: usize,
    c: usize,
    perm2: &[usize],
    perm3: &[usize],
) -> Result<bool> {
    check_tuple(a, b, b2, c)?;
    Ok(!is_ihole(a, b, c, perm2) && !is_ihole(a, b2, c, perm3))
}

/// Both routes, asserted equal.
pub fn is_forcing(a: usize, b: usize, b2: usize, c: usize, perm2: &[usize], perm3: &[usize]) -> Result<bool> {
    let by_holes = is_forcing_by_holes(a, b, b2, c, perm2, perm3)?;
    let by_type = order_type(a, b, b2, c, perm2, perm3).is_forcing();
    assert_eq!(
        by_holes, by_type,
        "forcing routes disagree on ({a},{b},{b2},{c})"
    );
    Ok(by_holes)
}

/// A graph with orders `<1` (index), `<2`, `<3`, optionally with magical
/// witnesses `G1` under `(<1, <2)` and `G2` under `(<1, <3)` such that
/// `E(G) = E(G1) ∩ E(G2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleOrderedGraph {
    base: OrderedGraph,
    perm2: Vec<usize>,
    perm3: Vec<usize>,
    witness: Option<(OrderedGraph, OrderedGraph)>,
}

impl TripleOrderedGraph {
    pub fn new(
        base: OrderedGraph,
        perm2: Vec<usize>,
        perm3: Vec<usize>,
        witness: Option<(OrderedGraph, OrderedGraph)>,
    ) -> Result<Self> {
        let n = base.n();
        check_permutation(&perm2, n)?;
        check_permutation(&perm3, n)?;
        if let Some((g1, g2)) = &witness {
            if g1.n() != n || g2.n() != n {
                return Err(Error::WitnessInvalid("witness vertex count".into()));
            }
            if let Some(t) = is_magical(g1, &perm2) {
                return Err(Error::WitnessInvalid(format!("G1 not magical at {t:?}")));
            }
            if let Some(t) = is_magical(g2, &perm3) {
                return Err(Error::WitnessInvalid(format!("G2 not magical at {t:?}")));
            }
            for i in 0..n {
                let mut both = g1.row(i).clone();
                both.intersect_with(g2.row(i));
                if &both != base.row(i) {
                    return Err(Error::WitnessInvalid(format!(
                        "E(G) != E(G1) ∩ E(G2) at vertex {i}"
                    )));
                }
            }
        }
        Ok(TripleOrderedGraph {
            base,
            perm2,
            perm3,
            witness,
        })
    }

    pub fn graph(&self) -> &OrderedGraph {
        &self.base
    }

    pub fn perm2(&self) -> &[usize] {
        &self.perm2
    }

    pub fn perm3(&self) -> &[usize] {
        &self.perm3
    }

    pub fn witness(&self) -> Option<&(OrderedGraph, OrderedGraph)> {
        self.witness.as_ref()
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }
}
