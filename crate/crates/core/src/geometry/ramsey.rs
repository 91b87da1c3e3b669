//! The bi-clique / co-bi-clique dichotomy for x-monotone families.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::curve::{graph_in_order, sorted_by_key, PolylineCurve};
use super::grounded::{CoBicliqueOracle, GroundedOracle};
use super::split::split_at_line;
use super::union::union_biclique;
use crate::biclique::{is_biclique, Biclique};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RamseyCase {
    /// At least `m` curves meet the line.
    LineFamily,
    /// The line separates the first `m` curves from a set of at least `m`.
    Separated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamseyOutcome {
    pub case: RamseyCase,
    /// Vertices are positions in the `r(α)` order; see `order`.
    pub biclique: Biclique,
    /// `order[i]` is the input index of the curve at vertex `i`.
    pub order: Vec<usize>,
    pub m: usize,
    pub line_x: String,
    pub crossing: usize,
    /// `union(c=…)`, `direct` or `separated`.
    pub route: String,
    /// Attempts that failed before `route` succeeded, with their errors.
    pub attempts: Vec<String>,
}

/// Values of `c` tried, in order, for the union step before falling back
/// to running the oracle on the line family directly.
pub const UNION_SCHEDULE: [f64; 4] = [0.25, 0.125, 0.0625, 0.03125];

/// Curves sorted by `r(α)`, line `x = r` halfway between `r(α_m)` and
/// `r(α_{m+1})` with `m = ⌊n/3⌋`.
pub fn curves_ramsey(curves: &[PolylineCurve], seed: u64) -> Result<RamseyOutcome> {
    let n = curves.len();
    if n < 3 {
        return Err(Error::Precondition(format!("need at least 3 curves, got {n}")));
    }
    let order = sorted_by_key(curves, |c| c.right_x())?;
    let sorted: Vec<&PolylineCurve> = order.iter().map(|&i| &curves[i]).collect();
    let g = graph_in_order(&sorted);
    let m = n / 3;
    let r: BigRational = (sorted[m - 1].right_x() + sorted[m].right_x()) / BigRational::from_integer(2.into());
    let crossing: Vec<usize> = (0..n).filter(|&v| sorted[v].meets_line(&r)).collect();
    let mut out = RamseyOutcome {
        case: RamseyCase::Separated,
        biclique: Biclique::empty(true),
        order: order.clone(),
        m,
        line_x: r.to_string(),
        crossing: crossing.len(),
        route: "separated".into(),
        attempts: vec![],
    };

    if crossing.len() < m {
        let b: Vec<usize> = (m..n).filter(|v| crossing.binary_search(v).is_err()).take(m).collect();
        out.biclique = Biclique::new((0..m).collect(), b, true);
    } else {
        out.case = RamseyCase::LineFamily;
        let line: Vec<PolylineCurve> = crossing.iter().map(|&v| sorted[v].clone()).collect();
        let split = split_at_line(&line, &r).map_err(Error::at("split"))?;
        let to_host: Vec<usize> = split.order.iter().map(|&i| crossing[i]).collect();
        let (g1, g2) = (split.left_graph(), split.right_graph());
        let mut found = None;
        for c in UNION_SCHEDULE {
            let mut oracle = GroundedOracle::new(seed);
            match union_biclique(&g1, &g2, c, &mut oracle) {
                Ok(u) => {
                    found = Some((u.biclique, format!("union(c={c})")));
                    break;
                }
                Err(e) => out.attempts.push(format!("union(c={c}): {e}")),
            }
        }
        let (b, route) = match found {
            Some(f) => f,
            None => {
                let mut oracle = GroundedOracle::new(seed);
                let u = g1.union(&g2)?;
                let b = oracle.find(&u).map_err(Error::at("direct oracle"))?;
                (b, "direct".to_string())
            }
        };
        out.biclique = b.mapped(&to_host);
        out.route = route;
    }
    if !is_biclique(&g, &out.biclique) {
        return Err(Error::Stage {
            stage: "certificate",
            source: Box::new(Error::OracleContractViolation(
                "result does not verify against the family's graph".into(),
            )),
        });
    }
    Ok(out)
}
