//! Re-verification of emitted certificates from the record alone plus the
//! original input document.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use ordered_ramsey::generators::{generate, GenSpec};
use ordered_ramsey::geometry::{graph_in_order, grounded_ordering_properties, CurveFamily, CurveOrder};
use ordered_ramsey::geometry::{PolylineCurve, RamseyOutcome};
use ordered_ramsey::graph::GraphJson;
use ordered_ramsey::io::{parse_rational, Document};
use ordered_ramsey::magical::claim::tuples;
use ordered_ramsey::magical::{
    double_magical_witness, is_forcing, is_magical, verify_forcing_claim, ClaimReport, ExtractOutcome,
    ExtractStatus, ThresholdOutcome, TripleOrderedGraph,
};
use ordered_ramsey::matching::MatchingOutcome;
use ordered_ramsey::path::PathOutcome;
use ordered_ramsey::{find_induced_embedding, is_biclique, max_biclique_oracle, Biclique, Embedding};
use ordered_ramsey::{OrderedGraph, Pattern};

use crate::record::{digest, OutcomeRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Gen,
    PatternsFind,
    RamseyPath,
    RamseyMatching,
    CurvesGraph,
    CurvesRamsey,
    CurvesCheckGrounded,
    MagicalVerifyClaim,
    MagicalCheck,
    MagicalExtract,
    ThresholdRun,
    Oracle,
    VerifyClaim,
}

impl Verb {
    pub const ALL: [Verb; 13] = [
        Verb::Gen,
        Verb::PatternsFind,
        Verb::RamseyPath,
        Verb::RamseyMatching,
        Verb::CurvesGraph,
        Verb::CurvesRamsey,
        Verb::CurvesCheckGrounded,
        Verb::MagicalVerifyClaim,
        Verb::MagicalCheck,
        Verb::MagicalExtract,
        Verb::ThresholdRun,
        Verb::Oracle,
        Verb::VerifyClaim,
    ];

    pub fn words(self) -> &'static [&'static str] {
        match self {
            Verb::Gen => &["gen"],
            Verb::PatternsFind => &["patterns", "find"],
            Verb::RamseyPath => &["ramsey", "path"],
            Verb::RamseyMatching => &["ramsey", "matching"],
            Verb::CurvesGraph => &["curves", "graph"],
            Verb::CurvesRamsey => &["curves", "ramsey"],
            Verb::CurvesCheckGrounded => &["curves", "check-grounded"],
            Verb::MagicalVerifyClaim => &["magical", "verify-claim"],
            Verb::MagicalCheck => &["magical", "check"],
            Verb::MagicalExtract => &["magical", "extract"],
            Verb::ThresholdRun => &["threshold", "run"],
            Verb::Oracle => &["oracle"],
            Verb::VerifyClaim => &["verify-claim"],
        }
    }

    /// The verb named by the leading words of a command echo.
    pub fn from_command(cmd: &[String]) -> Option<Verb> {
        Verb::ALL
            .into_iter()
            .find(|v| v.words().iter().zip(cmd).all(|(w, c)| w == c) && cmd.len() >= v.words().len())
    }

    pub fn needs_input(self) -> bool {
        !matches!(self, Verb::Gen | Verb::MagicalVerifyClaim | Verb::VerifyClaim)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenCert {
    pub spec: GenSpec,
    pub output_digest: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternsCert {
    pub pattern: GraphJson,
    pub embedding: Option<Embedding>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathCert {
    pub k: usize,
    pub outcome: PathOutcome,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingCert {
    pub pattern: GraphJson,
    pub outcome: MatchingOutcome,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveGraphCert {
    pub order: Vec<usize>,
    pub graph: GraphJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub perm2: Vec<usize>,
    pub perm3: Vec<usize>,
    pub witness: Option<(GraphJson, GraphJson)>,
    /// First `(a, b, c)` breaking magicality of the base graph under `<2`.
    pub violation2: Option<(usize, usize, usize)>,
    pub violation3: Option<(usize, usize, usize)>,
    /// Error from validating the supplied witness pair, if any.
    pub witness_error: Option<String>,
    /// Forcing `(a, b, b', c)` whose vertices span a clique.
    pub forcing_cliques: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractCert {
    pub line: String,
    pub order: Vec<usize>,
    pub outcome: ExtractOutcome,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleCert {
    pub complement: bool,
    pub cap: usize,
    pub biclique: Biclique,
}

/// Canonical single-line rendering of an instance document.
pub fn render_graph(g: &OrderedGraph) -> String {
    serde_json::to_string(&g.to_json()).expect("graphs serialize") + "\n"
}

pub fn render_curves(fam: &CurveFamily) -> Result<String, String> {
    let items = fam.to_json().map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&items).expect("curves serialize") + "\n")
}

pub fn check_report(
    g: &OrderedGraph,
    perm2: Vec<usize>,
    perm3: Vec<usize>,
    witness: Option<(OrderedGraph, OrderedGraph)>,
) -> Result<CheckReport, String> {
    let witness_json = witness.as_ref().map(|(a, b)| (a.to_json(), b.to_json()));
    let witness_error = match witness {
        Some(w) => TripleOrderedGraph::new(g.clone(), perm2.clone(), perm3.clone(), Some(w))
            .err()
            .map(|e| e.to_string()),
        None => {
            TripleOrderedGraph::new(g.clone(), perm2.clone(), perm3.clone(), None).map_err(|e| e.to_string())?;
            None
        }
    };
    let mut forcing_cliques = 0;
    for [a, b, b2, c] in tuples(g.n()) {
        let clique = [(a, b), (a, b2), (a, c), (b, b2), (b, c), (b2, c)]
            .iter()
            .all(|&(x, y)| x == y || g.has_edge(x, y));
        if clique && is_forcing(a, b, b2, c, &perm2, &perm3).map_err(|e| e.to_string())? {
            forcing_cliques += 1;
        }
    }
    Ok(CheckReport {
        violation2: is_magical(g, &perm2),
        violation3: is_magical(g, &perm3),
        perm2,
        perm3,
        witness: witness_json,
        witness_error,
        forcing_cliques,
    })
}

impl CheckReport {
    pub fn variant(&self) -> &'static str {
        if self.witness_error.is_some() {
            "witness_invalid"
        } else if self.witness.is_some() || self.violation2.is_none() || self.violation3.is_none() {
            "double_magical"
        } else {
            "unwitnessed"
        }
    }
}

pub fn cobiclique_variant(b: &Biclique) -> &'static str {
    match (b.size(), b.in_complement) {
        (0, _) => "none",
        (_, true) => "co_biclique",
        (_, false) => "biclique",
    }
}

fn parse<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T, String> {
    serde_json::from_value(v.clone()).map_err(|e| format!("certificate does not parse: {e}"))
}

fn graph(doc: Option<&Document>) -> Result<&OrderedGraph, String> {
    match doc {
        Some(Document::Graph(g)) => Ok(g),
        _ => Err("this record needs a graph input".into()),
    }
}

fn curves(doc: Option<&Document>) -> Result<&[PolylineCurve], String> {
    match doc {
        Some(Document::Curves(c)) => Ok(c),
        _ => Err("this record needs a curve-family input".into()),
    }
}

fn permuted<'a>(curves: &'a [PolylineCurve], order: &[usize]) -> Result<Vec<&'a PolylineCurve>, String> {
    let mut seen = vec![false; curves.len()];
    if order.len() != curves.len() || order.iter().any(|&i| i >= curves.len() || std::mem::replace(&mut seen[i], true)) {
        return Err("order is not a permutation of the curves".into());
    }
    Ok(order.iter().map(|&i| &curves[i]).collect())
}

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn graph_json(j: &GraphJson) -> Result<OrderedGraph, String> {
    j.clone().into_graph().map_err(|e| e.to_string())
}

/// Checks a record's certificate against the input it was computed from.
/// Precondition records carrying only an error message have nothing to check.
pub fn verify_record(rec: &OutcomeRecord, doc: Option<&Document>) -> Result<(), String> {
    let verb = Verb::from_command(&rec.command).ok_or("unrecognised command echo")?;
    let cert = &rec.certificate;
    if rec.variant == "precondition_violation" && cert.get("error").is_some() {
        return Ok(());
    }
    match verb {
        Verb::Gen => {
            let c: GenCert = parse(cert)?;
            let text = match generate(&c.spec).map_err(|e| e.to_string())? {
                ordered_ramsey::generators::Instance::Graph(g) => render_graph(&g),
                ordered_ramsey::generators::Instance::Curves(f) => render_curves(&f)?,
            };
            ensure(digest(text.as_bytes()) == c.output_digest, "regenerated instance differs")
        }
        Verb::PatternsFind => {
            let g = graph(doc)?;
            let c: PatternsCert = parse(cert)?;
            let pattern = Pattern::from_graph(graph_json(&c.pattern)?);
            match c.embedding {
                Some(e) => ensure(rec.variant == "embedding" && e.verify(g, pattern.graph()), "embedding fails"),
                None => ensure(
                    rec.variant == "absent" && find_induced_embedding(g, &pattern).is_none(),
                    "pattern reported absent but an embedding exists",
                ),
            }
        }
        Verb::RamseyPath => {
            let g = graph(doc)?;
            let c: PathCert = parse(cert)?;
            ensure(c.outcome.variant() == rec.variant, "variant mismatch")?;
            ensure(c.outcome.verify(g, c.k), "path certificate fails")
        }
        Verb::RamseyMatching => {
            let g = graph(doc)?;
            let c: MatchingCert = parse(cert)?;
            let pattern = Pattern::from_graph(graph_json(&c.pattern)?);
            ensure(c.outcome.variant() == rec.variant, "variant mismatch")?;
            ensure(c.outcome.verify(g, &pattern), "matching certificate fails")
        }
        Verb::CurvesGraph => {
            let c: CurveGraphCert = parse(cert)?;
            let sorted = permuted(curves(doc)?, &c.order)?;
            ensure(graph_in_order(&sorted) == graph_json(&c.graph)?, "intersection graph differs")
        }
        Verb::CurvesRamsey => {
            let c: RamseyOutcome = parse(cert)?;
            let sorted = permuted(curves(doc)?, &c.order)?;
            ensure(rec.variant == cobiclique_variant(&c.biclique), "variant mismatch")?;
            ensure(
                c.biclique.size() == 0 || is_biclique(&graph_in_order(&sorted), &c.biclique),
                "bi-clique fails",
            )
        }
        Verb::CurvesCheckGrounded => {
            let fam = CurveFamily::new(curves(doc)?.to_vec(), CurveOrder::GroundedYOrder).map_err(|e| e.to_string())?;
            let report = grounded_ordering_properties(&fam).map_err(|e| e.to_string())?;
            ensure(&serde_json::to_value(&report).expect("serializes") == cert, "grounded report differs")
        }
        Verb::MagicalVerifyClaim | Verb::VerifyClaim => {
            let c: ClaimReport = parse(cert)?;
            ensure(c == verify_forcing_claim(), "claim report differs from recomputation")
        }
        Verb::MagicalCheck => {
            let g = graph(doc)?;
            let c: CheckReport = parse(cert)?;
            let witness = match &c.witness {
                Some((a, b)) => Some((graph_json(a)?, graph_json(b)?)),
                None => None,
            };
            let again = check_report(g, c.perm2.clone(), c.perm3.clone(), witness)?;
            ensure(again == c && again.variant() == rec.variant, "check report differs from recomputation")
        }
        Verb::MagicalExtract => {
            let c: ExtractCert = parse(cert)?;
            let x0 = parse_rational(&c.line).map_err(|d| d.message)?;
            let w = double_magical_witness(curves(doc)?, &x0).map_err(|e| e.to_string())?;
            ensure(w.order == c.order, "witness order differs")?;
            let b = &c.outcome.biclique;
            match c.outcome.status {
                ExtractStatus::Found => ensure(
                    rec.variant == "found" && !b.in_complement && is_biclique(w.tg.graph(), b),
                    "extracted bi-clique fails",
                ),
                ExtractStatus::NoForcingConfigurations => ensure(b.size() == 0, "sentinel expected"),
            }
        }
        Verb::ThresholdRun => {
            let c: ThresholdOutcome = parse(cert)?;
            let sorted = permuted(curves(doc)?, &c.order)?;
            let g = graph_in_order(&sorted);
            ensure(rec.variant == cobiclique_variant(&c.biclique), "variant mismatch")?;
            ensure(c.edges == g.edge_count(), "edge count differs")?;
            ensure(
                c.biclique.size() == 0 || (c.biclique.in_complement && is_biclique(&g, &c.biclique)),
                "co-bi-clique fails",
            )
        }
        Verb::Oracle => {
            let g = graph(doc)?;
            let c: OracleCert = parse(cert)?;
            let best = max_biclique_oracle(g, c.complement, c.cap).map_err(|e| e.to_string())?;
            ensure(best.size() == c.biclique.size(), "size is not the maximum")?;
            ensure(
                c.biclique.size() == 0 || (c.biclique.in_complement == c.complement && is_biclique(g, &c.biclique)),
                "bi-clique fails",
            )
        }
    }
}

/// Builds the record, reloads it from its serialized form and re-verifies
/// the certificate against `doc`.
pub fn seal(
    outcome: crate::record::Outcome,
    command: Vec<String>,
    input_digest: String,
    seed: Option<u64>,
    elapsed_ms: Option<u64>,
    doc: Option<&Document>,
) -> Result<OutcomeRecord, String> {
    let rec = outcome.into_record(command, input_digest, seed, elapsed_ms);
    let reloaded: OutcomeRecord = serde_json::from_str(&rec.to_line()).map_err(|e| format!("record does not reload: {e}"))?;
    verify_record(&reloaded, doc).map_err(|e| format!("certificate failed re-verification: {e}"))?;
    Ok(rec)
}
