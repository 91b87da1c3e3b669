//! Exact orientation and closed-segment intersection tests.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }
}

/// Sign of the cross product `(q - p) × (r - p)`.
pub fn orient(p: &Point, q: &Point, r: &Point) -> Ordering {
    let lhs = (&q.x - &p.x) * (&r.y - &p.y);
    let rhs = (&q.y - &p.y) * (&r.x - &p.x);
    lhs.cmp(&rhs)
}

/// `r` lies in the bounding box of `pq`; with collinearity this is
/// membership in the closed segment.
fn in_box(p: &Point, q: &Point, r: &Point) -> bool {
    let (xl, xh) = if p.x <= q.x { (&p.x, &q.x) } else { (&q.x, &p.x) };
    let (yl, yh) = if p.y <= q.y { (&p.y, &q.y) } else { (&q.y, &p.y) };
    *xl <= r.x && r.x <= *xh && *yl <= r.y && r.y <= *yh
}

/// Closed segments `p1p2` and `q1q2` share a point. Degenerate segments
/// (`p1 == p2`) are single points.
pub fn segments_intersect(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    let opposite = |a: Ordering, b: Ordering| {
        (a == Ordering::Less && b == Ordering::Greater) || (a == Ordering::Greater && b == Ordering::Less)
    };
    if opposite(d1, d2) && opposite(d3, d4) {
        return true;
    }
    (d1 == Ordering::Equal && in_box(q1, q2, p1))
        || (d2 == Ordering::Equal && in_box(q1, q2, p2))
        || (d3 == Ordering::Equal && in_box(p1, p2, q1))
        || (d4 == Ordering::Equal && in_box(p1, p2, q2))
}

/// `y` on the segment `pq` at abscissa `x`, which must lie in `[p.x, q.x]`
/// with `p.x < q.x`.
pub fn interpolate(p: &Point, q: &Point, x: &BigRational) -> BigRational {
    let dx = &q.x - &p.x;
    debug_assert!(dx.is_positive());
    if (x - &p.x).is_zero() {
        return p.y.clone();
    }
    &p.y + (&q.y - &p.y) * (x - &p.x) / dx
}
