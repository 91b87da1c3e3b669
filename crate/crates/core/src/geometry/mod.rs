//! Exact x-monotone polyline geometry and the curve-family pipelines.

pub mod curve;
pub mod grounded;
pub mod predicates;
pub mod ramsey;
pub mod split;
pub mod union;

pub use curve::{
    curves_from_json, curves_intersect, graph_in_order, intersection_graph, CurveFamily,
    CurveGraph, CurveJson, CurveOrder, PolylineCurve,
};
pub use grounded::{
    grounded_ordering_properties, sparse_or_dense_subgraph, CoBicliqueOracle, GroundedOracle, Side,
};
pub use predicates::Point;
pub use ramsey::{curves_ramsey, RamseyCase, RamseyOutcome};
pub use split::{split_at_line, SplitFamily};
pub use union::{union_biclique, UnionOutcome};
