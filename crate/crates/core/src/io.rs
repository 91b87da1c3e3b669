//! File formats with path-qualified diagnostics.
//!
//! Graph: `{"n": int, "edges": [[i, j], ...]}` with `i < j < n`, no
//! repeats. Curves: `[{"points": [[xnum, xden, ynum, yden], ...]}, ...]`
//! with non-zero denominators, at least two points and strictly
//! increasing x.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::geometry::curve::PolylineCurve;
use crate::geometry::predicates::Point;
use crate::graph::OrderedGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    /// JSON path such as `edges[3][1]`, or `line 4, column 7` for syntax errors.
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn diag(path: impl Into<String>, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        path: path.into(),
        message: message.into(),
    }
}

pub fn parse_json(text: &str) -> Result<Value, Vec<Diagnostic>> {
    serde_json::from_str(text).map_err(|e| {
        vec![diag(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )]
    })
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, Diagnostic> {
    let bad = || diag("$", format!("`{s}` is not a rational (expected p, p/q or a decimal)"));
    let t = s.trim();
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = num_bigint::BigInt::from(10).pow(frac.len() as u32);
        let whole: num_bigint::BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        return Ok(BigRational::new(whole, scale));
    }
    let r: BigRational = t.parse().map_err(|_| bad())?;
    if r.denom() == &0.into() {
        return Err(bad());
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Graph(OrderedGraph),
    Curves(Vec<PolylineCurve>),
}

/// Object documents are graphs, array documents are curve families.
pub fn validate_document(text: &str) -> Result<Document, Vec<Diagnostic>> {
    let v = parse_json(text)?;
    match &v {
        Value::Object(_) => graph_from_value(&v).map(Document::Graph),
        Value::Array(_) => curves_from_value(&v).map(Document::Curves),
        _ => Err(vec![diag("$", "expected a graph object or a curve array")]),
    }
}

pub fn validate_graph(text: &str) -> Result<OrderedGraph, Vec<Diagnostic>> {
    graph_from_value(&parse_json(text)?)
}

pub fn validate_curves(text: &str) -> Result<Vec<PolylineCurve>, Vec<Diagnostic>> {
    curves_from_value(&parse_json(text)?)
}

fn as_index(v: &Value) -> Option<usize> {
    v.as_u64().and_then(|x| usize::try_from(x).ok())
}

pub fn graph_from_value(v: &Value) -> Result<OrderedGraph, Vec<Diagnostic>> {
    let Some(obj) = v.as_object() else {
        return Err(vec![diag("$", "expected an object")]);
    };
    let mut errs = vec![];
    for key in obj.keys().filter(|k| *k != "n" && *k != "edges") {
        errs.push(diag(key.clone(), "unknown field"));
    }
    let n = match obj.get("n").map(as_index) {
        Some(Some(n)) => n,
        Some(None) => {
            errs.push(diag("n", "expected a non-negative integer"));
            return Err(errs);
        }
        None => {
            errs.push(diag("n", "missing"));
            return Err(errs);
        }
    };
    let Some(edges) = obj.get("edges").and_then(Value::as_array) else {
        errs.push(diag("edges", "missing or not an array"));
        return Err(errs);
    };
    let mut g = OrderedGraph::empty(n);
    for (k, e) in edges.iter().enumerate() {
        let path = format!("edges[{k}]");
        let pair = e
            .as_array()
            .filter(|a| a.len() == 2)
            .and_then(|a| Some((as_index(&a[0])?, as_index(&a[1])?)));
        let Some((i, j)) = pair else {
            errs.push(diag(path, "expected a pair of non-negative integers"));
            continue;
        };
        let problem = if i >= n || j >= n {
            Some(format!("vertex out of range for n = {n}"))
        } else if i == j {
            Some("self-loop".to_string())
        } else if i > j {
            Some("not canonical (need i < j)".to_string())
        } else if g.has_edge(i, j) {
            Some("duplicate edge".to_string())
        } else {
            None
        };
        match problem {
            Some(m) => errs.push(diag(path, format!("[{i},{j}] {m}"))),
            None => g.insert_edge(i, j),
        }
    }
    if errs.is_empty() {
        Ok(g)
    } else {
        Err(errs)
    }
}

pub fn curves_from_value(v: &Value) -> Result<Vec<PolylineCurve>, Vec<Diagnostic>> {
    let Some(items) = v.as_array() else {
        return Err(vec![diag("$", "expected an array of curves")]);
    };
    let mut errs = vec![];
    let mut out = vec![];
    for (ci, c) in items.iter().enumerate() {
        let base = format!("[{ci}]");
        let Some(obj) = c.as_object() else {
            errs.push(diag(base, "expected an object"));
            continue;
        };
        for key in obj.keys().filter(|k| *k != "points") {
            errs.push(diag(format!("{base}.{key}"), "unknown field"));
        }
        let Some(points) = obj.get("points").and_then(Value::as_array) else {
            errs.push(diag(format!("{base}.points"), "missing or not an array"));
            continue;
        };
        if points.len() < 2 {
            errs.push(diag(format!("{base}.points"), "a curve needs at least 2 points"));
        }
        let mut pts: Vec<Point> = vec![];
        let mut ok = true;
        for (pi, p) in points.iter().enumerate() {
            let path = format!("{base}.points[{pi}]");
            let nums: Option<Vec<i64>> = p
                .as_array()
                .filter(|a| a.len() == 4)
                .and_then(|a| a.iter().map(Value::as_i64).collect());
            let Some(q) = nums else {
                errs.push(diag(path, "expected [xnum, xden, ynum, yden] as 64-bit integers"));
                ok = false;
                continue;
            };
            if q[1] == 0 || q[3] == 0 {
                errs.push(diag(path, "zero denominator"));
                ok = false;
                continue;
            }
            let pt = Point::new(
                BigRational::new(q[0].into(), q[1].into()),
                BigRational::new(q[2].into(), q[3].into()),
            );
            if let Some(prev) = pts.last() {
                if pt.x <= prev.x {
                    errs.push(diag(path, "x is not strictly increasing"));
                    ok = false;
                }
            }
            pts.push(pt);
        }
        if ok && pts.len() >= 2 {
            match PolylineCurve::new(pts) {
                Ok(c) => out.push(c),
                Err(e) => errs.push(diag(base, e.to_string())),
            }
        }
    }
    if errs.is_empty() {
        Ok(out)
    } else {
        Err(errs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_diagnostics() {
        let e = validate_graph(r#"{"n": 3, "edges": [[2, 2], [1, 0], [0, 1], [0, 1], [0, 5]]}"#).unwrap_err();
        let paths: Vec<_> = e.iter().map(|d| d.path.as_str()).collect();
        assert_eq!(paths, vec!["edges[0]", "edges[1]", "edges[3]", "edges[4]"]);
        assert!(e[0].message.contains("self-loop"));
        assert!(validate_graph(r#"{"n": 3, "edges": [], "extra": 1}"#).is_err());
        assert!(validate_graph("{\"n\": 3,\n \"edges\": [").unwrap_err()[0].path.starts_with("line 2"));
        assert_eq!(validate_graph(r#"{"n": 2, "edges": [[0, 1]]}"#).unwrap().edge_count(), 1);
    }

    #[test]
    fn curve_diagnostics() {
        let e = validate_curves(r#"[{"points": [[0,1,0,1],[0,1,1,1]]}, {"points": [[0,0,0,1],[1,1,0,1]]}]"#)
            .unwrap_err();
        assert_eq!(e[0].path, "[0].points[1]");
        assert_eq!(e[1].message, "zero denominator");
        let ok = validate_curves(r#"[{"points": [[0,1,0,1],[1,2,3,4]]}]"#).unwrap();
        assert_eq!(ok.len(), 1);
        assert!(matches!(validate_document("[]"), Ok(Document::Curves(_))));
        assert!(validate_document("3").is_err());
    }

    #[test]
    fn rationals() {
        let r = |s: &str| parse_rational(s).unwrap().to_string();
        assert_eq!(r("3"), "3");
        assert_eq!(r("6/4"), "3/2");
        assert_eq!(r("-1.25"), "-5/4");
        assert_eq!(r("0.5"), "1/2");
        for bad in ["", "1/0", "x", "1.", "1.2.3", "1.-2"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
