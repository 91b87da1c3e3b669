//! Linear co-bi-cliques in sparse intersection graphs of x-monotone curves.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::extract::{extract_biclique_dense, ExtractOutcome};
use super::witness::double_magical_witness;
use crate::biclique::{is_biclique, Biclique};
use crate::error::{Error, Result};
use crate::geometry::curve::{graph_in_order, sorted_by_key, PolylineCurve};
use crate::graph::choose2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdCase {
    /// At least `(1 - ε)n` curves meet the line.
    LineFamily,
    /// The first `m` curves end before the line.
    Separated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdOutcome {
    pub case: ThresholdCase,
    /// Co-bi-clique of the intersection graph; vertices in `r(α)` order.
    pub biclique: Biclique,
    pub order: Vec<usize>,
    pub m: usize,
    pub line_x: String,
    pub crossing: usize,
    pub edges: usize,
    pub density: f64,
    /// `(1/4 - ε)·C(n, 2)`.
    pub edge_budget: f64,
    pub within_budget: bool,
    pub extract: Option<ExtractOutcome>,
}

/// Candidate lines strictly between `lo` and `hi`: the midpoint first, then
/// `lo + (hi - lo)·j/64`.
fn candidate_lines(lo: &BigRational, hi: &BigRational) -> Vec<BigRational> {
    let two = BigRational::from_integer(2.into());
    let mut out = vec![(lo + hi) / two];
    let steps = BigRational::from_integer(64.into());
    for j in 1..64 {
        let t = BigRational::from_integer(j.into()) / &steps;
        out.push(lo + (hi - lo) * t);
    }
    out
}

pub fn threshold_pipeline(curves: &[PolylineCurve], epsilon: f64) -> Result<ThresholdOutcome> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} not in (0, 1/2)")));
    }
    let n = curves.len();
    let m = (epsilon * n as f64 / 2.0).floor() as usize;
    if m == 0 {
        return Err(Error::Precondition(format!("⌊εn/2⌋ = 0 for n = {n}, ε = {epsilon}")));
    }
    let order = sorted_by_key(curves, |c| c.right_x()).map_err(Error::at("order"))?;
    let sorted: Vec<&PolylineCurve> = order.iter().map(|&i| &curves[i]).collect();
    let g = graph_in_order(&sorted);
    let pairs = choose2(n) as f64;
    let edges = g.edge_count();
    let budget = (0.25 - epsilon) * pairs;

    let (lo, hi) = (sorted[m - 1].right_x(), sorted[m].right_x());
    let lines = candidate_lines(lo, hi);
    let crossing_at = |x: &BigRational| -> Vec<usize> { (0..n).filter(|&v| sorted[v].meets_line(x)).collect() };
    let mut out = ThresholdOutcome {
        case: ThresholdCase::Separated,
        biclique: Biclique::empty(true),
        order: order.clone(),
        m,
        line_x: lines[0].to_string(),
        crossing: 0,
        edges,
        density: edges as f64 / pairs,
        edge_budget: budget,
        within_budget: edges as f64 <= budget,
        extract: None,
    };

    let need = ((1.0 - epsilon) * n as f64).ceil() as usize;
    let first = crossing_at(&lines[0]);
    out.crossing = first.len();
    if first.len() < need {
        let b: Vec<usize> = (m..n).filter(|v| first.binary_search(v).is_err()).collect();
        out.biclique = Biclique::balanced((0..m).collect(), b, true);
    } else {
        out.case = ThresholdCase::LineFamily;
        let mut built = None;
        for x in &lines {
            let crossing = crossing_at(x);
            if crossing.len() < need {
                continue;
            }
            let line: Vec<PolylineCurve> = crossing.iter().map(|&v| sorted[v].clone()).collect();
            match double_magical_witness(&line, x) {
                Ok(w) => {
                    built = Some((x.clone(), crossing, w));
                    break;
                }
                Err(Error::Precondition(_)) => continue,
                Err(e) => return Err(Error::at("witness")(e)),
            }
        }
        let (x, crossing, w) = built.ok_or_else(|| {
            Error::at("line")(Error::Precondition(
                "every candidate line has two curves crossing at one height".into(),
            ))
        })?;
        out.line_x = x.to_string();
        out.crossing = crossing.len();
        let ex = extract_biclique_dense(&w.tg);
        let to_host: Vec<usize> = w.order.iter().map(|&i| crossing[i]).collect();
        out.biclique = if ex.biclique.size() > 0 {
            ex.biclique.flipped().mapped(&to_host)
        } else {
            Biclique::empty(true)
        };
        out.extract = Some(ex);
    }
    if out.biclique.size() > 0 && !is_biclique(&g, &out.biclique) {
        return Err(Error::at("certificate")(Error::OracleContractViolation(
            "co-bi-clique does not verify against the intersection graph".into(),
        )));
    }
    Ok(out)
}
