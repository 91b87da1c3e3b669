//! x-monotone polylines, curve families and their intersection graphs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::predicates::{interpolate, segments_intersect, Point};
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

/// Polyline with strictly increasing x. A curve built by [`PolylineCurve::new`]
/// has at least two points; halves cut at one of their endpoints may consist
/// of a single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolylineCurve {
    points: Vec<Point>,
}

impl PolylineCurve {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidCurve(format!(
                "a curve needs at least 2 points, got {}",
                points.len()
            )));
        }
        Self::from_monotone(points)
    }

    pub(crate) fn from_monotone(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidCurve("no points".into()));
        }
        if let Some(i) = (1..points.len()).find(|&i| points[i].x <= points[i - 1].x) {
            return Err(Error::InvalidCurve(format!(
                "x is not strictly increasing at point {i}"
            )));
        }
        Ok(PolylineCurve { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn left_x(&self) -> &BigRational {
        &self.points[0].x
    }

    /// `r(α)`: the x-coordinate of the right endpoint.
    pub fn right_x(&self) -> &BigRational {
        &self.points[self.points.len() - 1].x
    }

    pub fn is_grounded(&self) -> bool {
        self.left_x().is_zero()
    }

    /// y-intercept of a grounded curve.
    pub fn start_y(&self) -> &BigRational {
        &self.points[0].y
    }

    pub fn meets_line(&self, x: &BigRational) -> bool {
        self.left_x() <= x && x <= self.right_x()
    }

    pub fn y_at(&self, x: &BigRational) -> Option<BigRational> {
        if !self.meets_line(x) {
            return None;
        }
        let i = self.points.partition_point(|p| p.x < *x);
        let p = &self.points[i];
        if p.x == *x {
            return Some(p.y.clone());
        }
        Some(interpolate(&self.points[i - 1], p, x))
    }

    /// Closed segments; a single-point curve yields one degenerate segment.
    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let single = (self.points.len() == 1).then(|| (&self.points[0], &self.points[0]));
        self.points.windows(2).map(|w| (&w[0], &w[1])).chain(single)
    }

    fn y_bounds(&self) -> (&BigRational, &BigRational) {
        let lo = self.points.iter().map(|p| &p.y).min().expect("non-empty");
        let hi = self.points.iter().map(|p| &p.y).max().expect("non-empty");
        (lo, hi)
    }

    /// Parts left and right of `x = x0`, both containing the point on the
    /// line. A vertex on the line is reused rather than interpolated.
    pub fn cut_at(&self, x0: &BigRational) -> Option<(PolylineCurve, PolylineCurve)> {
        let y0 = self.y_at(x0)?;
        let on = Point::new(x0.clone(), y0);
        let mut left: Vec<Point> = self.points.iter().filter(|p| p.x < *x0).cloned().collect();
        left.push(on.clone());
        let mut right = vec![on];
        right.extend(self.points.iter().filter(|p| p.x > *x0).cloned());
        Some((PolylineCurve { points: left }, PolylineCurve { points: right }))
    }

    /// Image under `(x, y) ↦ (x0 - x, y)`, re-sorted by x.
    pub fn reflected(&self, x0: &BigRational) -> PolylineCurve {
        let points = self
            .points
            .iter()
            .rev()
            .map(|p| Point::new(x0 - &p.x, p.y.clone()))
            .collect();
        PolylineCurve { points }
    }

    /// Image under `(x, y) ↦ (x - x0, y)`.
    pub fn translated(&self, x0: &BigRational) -> PolylineCurve {
        let points = self
            .points
            .iter()
            .map(|p| Point::new(&p.x - x0, p.y.clone()))
            .collect();
        PolylineCurve { points }
    }

    /// Length of the x-range.
    pub fn extent(&self) -> BigRational {
        self.right_x() - self.left_x()
    }

    pub fn to_json(&self) -> Result<CurveJson> {
        let int = |v: &BigInt| {
            v.to_i64()
                .ok_or_else(|| Error::Format(format!("coordinate {v} does not fit in 64 bits")))
        };
        let points = self
            .points
            .iter()
            .map(|p| {
                Ok([
                    int(p.x.numer())?,
                    int(p.x.denom())?,
                    int(p.y.numer())?,
                    int(p.y.denom())?,
                ])
            })
            .collect::<Result<_>>()?;
        Ok(CurveJson { points })
    }
}

/// Intersection test with x-window and bounding-box pruning.
pub fn curves_intersect(c1: &PolylineCurve, c2: &PolylineCurve) -> bool {
    let lo = c1.left_x().max(c2.left_x());
    let hi = c1.right_x().min(c2.right_x());
    if lo > hi {
        return false;
    }
    let (a_lo, a_hi) = c1.y_bounds();
    let (b_lo, b_hi) = c2.y_bounds();
    if a_hi < b_lo || b_hi < a_lo {
        return false;
    }
    for (p1, p2) in c1.segments() {
        if p2.x < *lo || p1.x > *hi {
            continue;
        }
        for (q1, q2) in c2.segments() {
            if q2.x < p1.x || q1.x > p2.x {
                continue;
            }
            if segments_intersect(p1, p2, q1, q2) {
                return true;
            }
        }
    }
    false
}

/// How a family's curves map to vertex positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveOrder {
    /// Grounded curves sorted by y-intercept.
    GroundedYOrder,
    /// Sorted by right endpoint `r(α)`.
    RightEndpointOrder,
    /// List order is the vertex order.
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFamily {
    curves: Vec<PolylineCurve>,
    order: CurveOrder,
}

impl CurveFamily {
    /// Validates the ordering claim: a grounded-y family must consist of
    /// grounded curves.
    pub fn new(curves: Vec<PolylineCurve>, order: CurveOrder) -> Result<Self> {
        if order == CurveOrder::GroundedYOrder {
            if let Some(i) = curves.iter().position(|c| !c.is_grounded()) {
                return Err(Error::InvalidCurve(format!("curve {i} is not grounded")));
            }
        }
        Ok(CurveFamily { curves, order })
    }

    pub fn curves(&self) -> &[PolylineCurve] {
        &self.curves
    }

    pub fn order(&self) -> CurveOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// `order[i]` is the list index of the curve at vertex `i`.
    pub fn vertex_order(&self) -> Result<Vec<usize>> {
        match self.order {
            CurveOrder::GroundedYOrder => sorted_by_key(&self.curves, |c| c.start_y()),
            CurveOrder::RightEndpointOrder => sorted_by_key(&self.curves, |c| c.right_x()),
            CurveOrder::None => Ok((0..self.curves.len()).collect()),
        }
    }

    pub fn to_json(&self) -> Result<Vec<CurveJson>> {
        self.curves.iter().map(PolylineCurve::to_json).collect()
    }
}

/// Indices sorted by a key that must be distinct.
pub(crate) fn sorted_by_key<'a, K: Ord + 'a>(
    curves: &'a [PolylineCurve],
    key: impl Fn(&'a PolylineCurve) -> &'a K,
) -> Result<Vec<usize>> {
    let mut idx: Vec<usize> = (0..curves.len()).collect();
    idx.sort_by(|&i, &j| key(&curves[i]).cmp(key(&curves[j])).then(i.cmp(&j)));
    for w in idx.windows(2) {
        if key(&curves[w[0]]) == key(&curves[w[1]]) {
            return Err(Error::DuplicateKey(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    Ok(idx)
}

/// Intersection graph together with the vertex-to-curve map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGraph {
    pub graph: OrderedGraph,
    pub order: Vec<usize>,
}

pub fn intersection_graph(fam: &CurveFamily) -> Result<CurveGraph> {
    let order = fam.vertex_order()?;
    let curves: Vec<&PolylineCurve> = order.iter().map(|&i| &fam.curves[i]).collect();
    Ok(CurveGraph {
        graph: graph_in_order(&curves),
        order,
    })
}

/// Intersection graph with vertex `i` = `curves[i]`.
pub fn graph_in_order<C: std::borrow::Borrow<PolylineCurve>>(curves: &[C]) -> OrderedGraph {
    let n = curves.len();
    let mut g = OrderedGraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if curves_intersect(curves[i].borrow(), curves[j].borrow()) {
                g.insert_edge(i, j);
            }
        }
    }
    g
}

/// One curve as exact rationals `[xnum, xden, ynum, yden]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub points: Vec<[i64; 4]>,
}

impl CurveJson {
    pub fn to_curve(&self) -> Result<PolylineCurve> {
        let mut pts = Vec::with_capacity(self.points.len());
        for (i, &[xn, xd, yn, yd]) in self.points.iter().enumerate() {
            if xd == 0 || yd == 0 {
                return Err(Error::InvalidCurve(format!("point {i} has a zero denominator")));
            }
            pts.push(Point::new(
                BigRational::new(xn.into(), xd.into()),
                BigRational::new(yn.into(), yd.into()),
            ));
        }
        PolylineCurve::new(pts)
    }
}

/// Parses a family, naming the offending curve in errors.
pub fn curves_from_json(items: &[CurveJson]) -> Result<Vec<PolylineCurve>> {
    items
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.to_curve()
                .map_err(|e| Error::InvalidCurve(format!("curve {i}: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(pts: &[(i64, i64)]) -> PolylineCurve {
        PolylineCurve::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
    }

    #[test]
    fn trivial_intersections() {
        assert!(!curves_intersect(&curve(&[(0, 0), (4, 0)]), &curve(&[(1, 1), (5, 1)])));
        assert!(curves_intersect(&curve(&[(0, 0), (2, 2)]), &curve(&[(0, 2), (2, 0)])));
        assert!(curves_intersect(&curve(&[(0, 0), (1, 1)]), &curve(&[(1, 1), (2, 0)])));
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(PolylineCurve::new(vec![Point::from_ints(0, 0), Point::from_ints(0, 1)]).is_err());
        assert!(PolylineCurve::new(vec![Point::from_ints(0, 0)]).is_err());
        let bad = CurveJson { points: vec![[0, 1, 0, 0], [1, 1, 0, 1]] };
        assert!(bad.to_curve().is_err());
    }

    #[test]
    fn nested_and_concurrent_grounded_families() {
        // disjoint horizontal arcs
        let nested: Vec<_> = (0..5).map(|i| curve(&[(0, i), (10 - i, i)])).collect();
        let g = intersection_graph(&CurveFamily::new(nested, CurveOrder::GroundedYOrder).unwrap())
            .unwrap();
        assert_eq!(g.graph.edge_count(), 0);
        // all through (5, 0)
        let star: Vec<_> = (0..5).map(|i| curve(&[(0, i - 2), (5, 0), (6, i)])).collect();
        let g = intersection_graph(&CurveFamily::new(star, CurveOrder::GroundedYOrder).unwrap())
            .unwrap();
        assert_eq!(g.graph, OrderedGraph::complete(5));
    }

    #[test]
    fn ordering_keys() {
        let fam = vec![curve(&[(0, 3), (2, 3)]), curve(&[(0, 1), (5, 1)])];
        let f = CurveFamily::new(fam.clone(), CurveOrder::GroundedYOrder).unwrap();
        assert_eq!(f.vertex_order().unwrap(), vec![1, 0]);
        let f = CurveFamily::new(fam, CurveOrder::RightEndpointOrder).unwrap();
        assert_eq!(f.vertex_order().unwrap(), vec![0, 1]);
        let tie = vec![curve(&[(0, 0), (2, 0)]), curve(&[(1, 1), (2, 1)])];
        let f = CurveFamily::new(tie, CurveOrder::RightEndpointOrder).unwrap();
        assert_eq!(f.vertex_order(), Err(Error::DuplicateKey(0, 1)));
    }

    #[test]
    fn cut_interpolates_or_reuses_vertex() {
        let c = curve(&[(0, 0), (2, 2)]);
        let (l, r) = c.cut_at(&BigRational::from_integer(1.into())).unwrap();
        assert_eq!(l, curve(&[(0, 0), (1, 1)]));
        assert_eq!(r, curve(&[(1, 1), (2, 2)]));
        let c = curve(&[(0, 0), (1, 5), (2, 2)]);
        let (l, r) = c.cut_at(&BigRational::from_integer(1.into())).unwrap();
        assert_eq!(l.points().len(), 2);
        assert_eq!(r.points()[0], Point::from_ints(1, 5));
        let (l, _) = c.cut_at(&BigRational::from_integer(0.into())).unwrap();
        assert_eq!(l.points().len(), 1);
        assert!(c.cut_at(&BigRational::from_integer(3.into())).is_none());
    }

    #[test]
    fn json_round_trip() {
        let c = curve(&[(0, 0), (3, -2)]);
        assert_eq!(c.to_json().unwrap().to_curve().unwrap(), c);
    }
}
