//! Seeded instance generators.
//!
//! Every generator draws from one [`SplitMix64`] stream seeded with the
//! given seed, in the order documented on each function, so the same
//! parameters always give the same instance.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::curve::{CurveFamily, CurveOrder, PolylineCurve};
use crate::geometry::predicates::Point;
use crate::graph::OrderedGraph;
use crate::matching::interval_partition;
use crate::rng::SplitMix64;

fn check_prob(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {p} not in [0, 1]")))
    }
}

/// Adds each pair `i < j` with `same(i, j)` false independently with
/// probability `p`, visiting pairs in lexicographic order; pairs with
/// `same(i, j)` true are always added and draw nothing.
fn blocks_plus_noise(n: usize, p: f64, seed: u64, block: impl Fn(usize) -> usize) -> OrderedGraph {
    let mut rng = SplitMix64::new(seed);
    let mut g = OrderedGraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if block(i) == block(j) || rng.bernoulli(p) {
                g.insert_edge(i, j);
            }
        }
    }
    g
}

/// Cliques on `0..⌊n/2⌋` and `⌊n/2⌋..n`, cross pairs with probability `p`.
pub fn gen_two_clique(n: usize, p: f64, seed: u64) -> Result<OrderedGraph> {
    check_prob("p", p)?;
    let half = n / 2;
    Ok(blocks_plus_noise(n, p, seed, |v| usize::from(v >= half)))
}

/// Four interval cliques of `⌊n/4⌋` (the last takes the remainder), cross
/// pairs with probability `epsilon`.
pub fn gen_four_clique(n: usize, epsilon: f64, seed: u64) -> Result<OrderedGraph> {
    check_prob("epsilon", epsilon)?;
    let q = n / 4;
    Ok(blocks_plus_noise(n, epsilon, seed, |v| v.checked_div(q).map_or(3, |b| b.min(3))))
}

/// `G(n, p)` on the ordered vertex set.
pub fn gen_random_ordered(n: usize, p: f64, seed: u64) -> Result<OrderedGraph> {
    check_prob("p", p)?;
    Ok(blocks_plus_noise(n, p, seed, |v| v))
}

/// Perfect matchings between the interval pairs of an ordered matching
/// pattern on `2k` intervals (as in [`interval_partition`]), plus every
/// other cross-interval pair with probability `q`. Intervals are
/// independent sets. Pairs are visited in lexicographic order.
pub fn planted_matching(n: usize, pairs: &[(usize, usize)], q: f64, seed: u64) -> Result<OrderedGraph> {
    check_prob("q", q)?;
    let parts = interval_partition(n, 2 * pairs.len());
    let mut part_of = vec![0; n];
    for (j, p) in parts.iter().enumerate() {
        for &v in p {
            part_of[v] = j;
        }
    }
    let mut g = OrderedGraph::empty(n);
    for &(a, b) in pairs {
        for (&u, &v) in parts[a].iter().zip(&parts[b]) {
            g.insert_edge(u, v);
        }
    }
    let mut rng = SplitMix64::new(seed);
    for i in 0..n {
        for j in i + 1..n {
            if part_of[i] != part_of[j] && !g.has_edge(i, j) && rng.bernoulli(q) {
                g.insert_edge(i, j);
            }
        }
    }
    Ok(g)
}

fn half(v: i64) -> BigRational {
    BigRational::new(v.into(), 2.into())
}

/// Uniformly random permutation of `0..n` (Fisher-Yates on the identity).
fn permutation(rng: &mut SplitMix64, n: usize) -> Vec<i64> {
    let mut p: Vec<i64> = (0..n as i64).collect();
    rng.shuffle(&mut p);
    p
}

/// Grounded x-monotone polylines with `segs` segments each.
///
/// Draw order: a permutation `π` of `0..n`; then per curve `i`, per segment,
/// an x-step `s ∈ [1, 4]` and a y-step `t ∈ [-2amp, 2amp]`. Curve `i` starts
/// at `(0, 2π(i))` and each vertex moves by `(s/2, t/2)`.
pub fn gen_grounded_curves(n: usize, segs: usize, amp: i64, seed: u64) -> Result<CurveFamily> {
    if n == 0 || segs == 0 || amp < 0 {
        return Err(Error::InvalidParameter("need n >= 1, segs >= 1, amp >= 0".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let start = permutation(&mut rng, n);
    let mut curves = Vec::with_capacity(n);
    for &y0 in &start {
        let (mut x, mut y) = (0i64, 4 * y0);
        let mut pts = vec![Point::new(half(x), half(y))];
        for _ in 0..segs {
            x += rng.range_inclusive(1, 4);
            y += rng.range_inclusive(-2 * amp, 2 * amp);
            pts.push(Point::new(half(x), half(y)));
        }
        curves.push(PolylineCurve::new(pts)?);
    }
    CurveFamily::new(curves, CurveOrder::GroundedYOrder)
}

/// x-monotone polylines through a common vertical line `x = x0`.
///
/// Draw order: permutations `π_h`, `π_l`, `π_r` of `0..n`; then per curve
/// the y-offsets of its non-line vertices, left to right, each uniform in
/// `[-2amp, 2amp]` halves. Curve `i` passes through `(x0, π_h(i))`, reaches
/// `π_l(i) + 1` to the left and `π_r(i) + 1` to the right, with
/// `⌊segs/2⌋` (at least one) segments on the left and the rest (at least
/// one) on the right, vertices evenly spaced in x.
pub fn gen_crossing_curves(n: usize, segs: usize, x0: i64, amp: i64, seed: u64) -> Result<CurveFamily> {
    if n == 0 || segs == 0 || amp < 0 {
        return Err(Error::InvalidParameter("need n >= 1, segs >= 1, amp >= 0".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let heights = permutation(&mut rng, n);
    let lefts = permutation(&mut rng, n);
    let rights = permutation(&mut rng, n);
    let kl = (segs / 2).max(1) as i64;
    let kr = (segs as i64 - kl).max(1);
    let x0r = BigRational::from_integer(x0.into());
    let mut curves = Vec::with_capacity(n);
    for i in 0..n {
        let h = BigRational::from_integer(heights[i].into());
        let (l, r) = (lefts[i] + 1, rights[i] + 1);
        let mut pts = vec![];
        for t in (1..=kl).rev() {
            let x = &x0r - BigRational::new((l * t).into(), kl.into());
            pts.push(Point::new(x, &h + half(rng.range_inclusive(-2 * amp, 2 * amp))));
        }
        pts.push(Point::new(x0r.clone(), h.clone()));
        for t in 1..=kr {
            let x = &x0r + BigRational::new((r * t).into(), kr.into());
            pts.push(Point::new(x, &h + half(rng.range_inclusive(-2 * amp, 2 * amp))));
        }
        curves.push(PolylineCurve::new(pts)?);
    }
    CurveFamily::new(curves, CurveOrder::RightEndpointOrder)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    TwoClique,
    FourClique,
    RandomOrdered,
    GroundedCurves,
    CrossingCurves,
}

fn default_segs() -> usize {
    4
}

fn default_amp() -> i64 {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    #[serde(default)]
    pub p: f64,
    #[serde(default)]
    pub epsilon: f64,
    #[serde(default = "default_segs")]
    pub segs: usize,
    #[serde(default = "default_amp")]
    pub amp: i64,
    #[serde(default)]
    pub x0: i64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Graph(OrderedGraph),
    Curves(CurveFamily),
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    Ok(match spec.kind {
        GenKind::TwoClique => Instance::Graph(gen_two_clique(spec.n, spec.p, spec.seed)?),
        GenKind::FourClique => Instance::Graph(gen_four_clique(spec.n, spec.epsilon, spec.seed)?),
        GenKind::RandomOrdered => Instance::Graph(gen_random_ordered(spec.n, spec.p, spec.seed)?),
        GenKind::GroundedCurves => {
            Instance::Curves(gen_grounded_curves(spec.n, spec.segs, spec.amp, spec.seed)?)
        }
        GenKind::CrossingCurves => Instance::Curves(gen_crossing_curves(
            spec.n, spec.segs, spec.x0, spec.amp, spec.seed,
        )?),
    })
}
