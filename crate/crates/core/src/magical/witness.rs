//! Double-magical orders for families crossing a common vertical line.
//!
//! `<1` is the height on the line; `<2` and `<3` order the curves by how
//! far they reach to the left and to the right of it. If `a <1 b <1 c`
//! and the left parts of `a` and `c` meet while `b` avoids both, `b`
//! is trapped between them and must stop before their meeting point, so
//! `b` reaches less far left than either. The left-half disjointness graph
//! is therefore magical under `(<1, <2)`, and likewise on the right.

use num_rational::BigRational;

use super::orders::TripleOrderedGraph;
use crate::error::{Error, Result};
use crate::geometry::curve::{graph_in_order, PolylineCurve};
use crate::geometry::split::split_at_line;

#[derive(Clone, Debug)]
pub struct DoubleMagicalWitness {
    /// Base graph: the complement of the intersection graph.
    pub tg: TripleOrderedGraph,
    /// `order[i]` is the input index of the curve at vertex `i`.
    pub order: Vec<usize>,
}

/// Ranks of `keys` (ascending, ties by position).
fn ranks(keys: &[BigRational]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&i, &j| keys[i].cmp(&keys[j]).then(i.cmp(&j)));
    let mut rank = vec![0; keys.len()];
    for (r, &i) in idx.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

pub fn double_magical_witness(curves: &[PolylineCurve], x0: &BigRational) -> Result<DoubleMagicalWitness> {
    let split = split_at_line(curves, x0)?;
    if !split.heights_distinct() {
        return Err(Error::Precondition(format!("two curves cross x = {x0} at the same height")));
    }
    // halves live in the canonical frame, so the extent is the right endpoint
    let left_extent: Vec<BigRational> = split.left.curves().iter().map(|c| c.right_x().clone()).collect();
    let right_extent: Vec<BigRational> = split.right.curves().iter().map(|c| c.right_x().clone()).collect();
    let g1 = split.left_graph().complement();
    let g2 = split.right_graph().complement();
    let in_order: Vec<&PolylineCurve> = split.order.iter().map(|&i| &curves[i]).collect();
    let base = graph_in_order(&in_order).complement();
    let tg = TripleOrderedGraph::new(base, ranks(&left_extent), ranks(&right_extent), Some((g1, g2)))?;
    Ok(DoubleMagicalWitness {
        tg,
        order: split.order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::predicates::Point;
    use crate::graph::OrderedGraph;

    fn curve(pts: &[(i64, i64)]) -> PolylineCurve {
        PolylineCurve::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
    }

    #[test]
    fn disjoint_family_is_complete() {
        let fam: Vec<_> = (0..5).map(|i| curve(&[(-1 - i, i), (0, i), (2 + i, i)])).collect();
        let w = double_magical_witness(&fam, &BigRational::from_integer(0.into())).unwrap();
        assert_eq!(w.tg.graph(), &OrderedGraph::complete(5));
    }

    #[test]
    fn concurrent_family_is_edgeless() {
        // all through (1, 0)
        let fam: Vec<_> = (0..5).map(|i| curve(&[(-1 - i, i), (0, i), (1, 0), (2 + i, -i)])).collect();
        let w = double_magical_witness(&fam, &BigRational::from_integer(0.into())).unwrap();
        assert_eq!(w.tg.graph().edge_count(), 0);
    }

    #[test]
    fn tied_heights_rejected() {
        let fam = vec![curve(&[(-1, 0), (1, 0)]), curve(&[(-2, 1), (2, -1)])];
        assert!(double_magical_witness(&fam, &BigRational::from_integer(0.into())).is_err());
    }
}
