//! Cutting a family along a vertical line into two grounded families.
//!
//! Both halves are moved into the canonical frame `{x ≥ 0}` with the cut
//! point on the y-axis: right parts by translation, left parts by the
//! reflection `x ↦ x0 - x`. Reflection is an isometry applied to every
//! half at once, so which halves meet is unchanged.

use num_rational::BigRational;

use super::curve::{graph_in_order, CurveFamily, CurveOrder, PolylineCurve};
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

#[derive(Clone, Debug)]
pub struct SplitFamily {
    pub x0: BigRational,
    /// `order[i]` is the input index of the curve at vertex `i`; vertices are
    /// sorted by height on the line, ties by input index.
    pub order: Vec<usize>,
    pub heights: Vec<BigRational>,
    pub left: CurveFamily,
    pub right: CurveFamily,
}

impl SplitFamily {
    pub fn left_graph(&self) -> OrderedGraph {
        graph_in_order(self.left.curves())
    }

    pub fn right_graph(&self) -> OrderedGraph {
        graph_in_order(self.right.curves())
    }

    /// Heights on the line are pairwise distinct.
    pub fn heights_distinct(&self) -> bool {
        self.heights.windows(2).all(|w| w[0] < w[1])
    }
}

pub fn split_at_line(curves: &[PolylineCurve], x0: &BigRational) -> Result<SplitFamily> {
    let mut cut = Vec::with_capacity(curves.len());
    for (i, c) in curves.iter().enumerate() {
        let (l, r) = c.cut_at(x0).ok_or(Error::CurveMissesLine(i))?;
        let y = r.start_y().clone();
        cut.push((y, i, l, r));
    }
    cut.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut order = Vec::with_capacity(cut.len());
    let mut heights = Vec::with_capacity(cut.len());
    let mut left = Vec::with_capacity(cut.len());
    let mut right = Vec::with_capacity(cut.len());
    for (y, i, l, r) in cut {
        order.push(i);
        heights.push(y);
        left.push(l.reflected(x0));
        right.push(r.translated(x0));
    }
    Ok(SplitFamily {
        x0: x0.clone(),
        order,
        heights,
        left: CurveFamily::new(left, CurveOrder::None)?,
        right: CurveFamily::new(right, CurveOrder::None)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::predicates::Point;

    fn curve(pts: &[(i64, i64)]) -> PolylineCurve {
        PolylineCurve::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn halves_are_grounded_and_ordered() {
        let fam = vec![curve(&[(0, 5), (4, 5)]), curve(&[(1, 0), (3, 2)])];
        let s = split_at_line(&fam, &rat(2)).unwrap();
        assert_eq!(s.order, vec![1, 0]);
        assert_eq!(s.heights, vec![rat(1), rat(5)]);
        for c in s.left.curves().iter().chain(s.right.curves()) {
            assert!(c.is_grounded());
        }
        assert_eq!(s.left.curves()[0], curve(&[(0, 1), (1, 0)]));
    }

    #[test]
    fn union_identity_on_crossing_pair() {
        let fam = vec![curve(&[(0, 0), (1, 3), (4, 0)]), curve(&[(0, 1), (4, 1)])];
        let s = split_at_line(&fam, &rat(1)).unwrap();
        assert!(s.left_graph().has_edge(0, 1));
        assert!(s.right_graph().has_edge(0, 1));
    }

    #[test]
    fn missing_curve_is_reported() {
        let fam = vec![curve(&[(0, 0), (4, 0)]), curve(&[(5, 1), (6, 1)])];
        assert!(matches!(split_at_line(&fam, &rat(2)), Err(Error::CurveMissesLine(1))));
    }
}
