//! One function per verb. Each returns the outcome plus the input digest;
//! record assembly and re-verification happen in the caller.

use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use ordered_ramsey::generators::{generate, GenSpec, Instance};
use ordered_ramsey::geometry::{
    curves_ramsey, grounded_ordering_properties, intersection_graph, CurveFamily, CurveOrder, PolylineCurve,
};
use ordered_ramsey::io::{parse_rational, validate_document, validate_graph, Diagnostic, Document};
use ordered_ramsey::magical::{double_magical_witness, extract_biclique_dense, threshold_pipeline, verify_forcing_claim};
use ordered_ramsey::matching::{default_retry_cap, find_matching_or_cobiclique, MatchingConfig, MatchingOutcome};
use ordered_ramsey::path::{find_path_or_cobiclique, path_cobiclique_bound, PathOutcome};
use ordered_ramsey::{find_induced_embedding, max_biclique_oracle, Error, OrderedGraph, Pattern};

use crate::record::{digest, Outcome};
use crate::verify::{
    check_report, cobiclique_variant, render_curves, render_graph, CurveGraphCert, ExtractCert, GenCert,
    MatchingCert, OracleCert, PathCert, PatternsCert,
};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Malformed files, flags or parameters.
    Input(String),
    /// A hypothesis of the requested procedure does not hold.
    Precondition(String),
    /// The procedure ran but produced no certificate.
    Failure(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
            CliError::Failure(m) => write!(f, "failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e.root() {
            Error::Precondition(_) | Error::NoValidM { .. } => CliError::Precondition(msg),
            Error::RetryExhausted { .. }
            | Error::OracleContractViolation(_)
            | Error::WitnessInvalid(_)
            | Error::SizeInfeasible { .. } => CliError::Failure(msg),
            _ => CliError::Input(msg),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub struct Run {
    pub outcome: Outcome,
    pub input_digest: String,
}

/// An input document together with the digest of its exact bytes.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub doc: Document,
    pub digest: String,
}

fn diagnostics(path: &Path, diags: &[Diagnostic]) -> CliError {
    let lines: Vec<String> = diags.iter().map(|d| format!("{}: {d}", path.display())).collect();
    CliError::Input(lines.join("\n"))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path) -> CliResult<Loaded> {
    let text = read(path)?;
    let doc = validate_document(&text).map_err(|d| diagnostics(path, &d))?;
    Ok(Loaded {
        doc,
        digest: digest(text.as_bytes()),
    })
}

impl Loaded {
    pub fn graph(&self) -> CliResult<&OrderedGraph> {
        match &self.doc {
            Document::Graph(g) => Ok(g),
            Document::Curves(_) => Err(CliError::Input("expected a graph, got a curve family".into())),
        }
    }

    pub fn curves(&self) -> CliResult<&[PolylineCurve]> {
        match &self.doc {
            Document::Curves(c) => Ok(c),
            Document::Graph(_) => Err(CliError::Input("expected a curve family, got a graph".into())),
        }
    }
}

/// `P<k>`, `M1`, `matching:a-b,c-d,...`, or a path to a graph file.
pub fn parse_pattern(s: &str) -> CliResult<Pattern> {
    if s == "M1" {
        return Ok(Pattern::m1());
    }
    if let Some(k) = s.strip_prefix('P').and_then(|k| k.parse::<usize>().ok()) {
        return Ok(Pattern::monotone_path(k)?);
    }
    if let Some(rest) = s.strip_prefix("matching:") {
        let pairs: Option<Vec<(usize, usize)>> = rest
            .split(',')
            .map(|p| {
                let (a, b) = p.split_once('-')?;
                Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
            })
            .collect();
        let pairs = pairs.ok_or_else(|| CliError::Input(format!("cannot parse pattern `{s}`")))?;
        return Ok(Pattern::matching(&pairs)?);
    }
    let path = Path::new(s);
    let g = validate_graph(&read(path)?).map_err(|d| diagnostics(path, &d))?;
    Ok(Pattern::from_graph(g))
}

/// Comma-separated rank vector: entry `v` is the rank of vertex `v`.
pub fn parse_perm(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("cannot parse ordering `{s}`")))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("certificates serialize")
}

pub fn render_instance(inst: &Instance) -> CliResult<String> {
    match inst {
        Instance::Graph(g) => Ok(render_graph(g)),
        Instance::Curves(f) => render_curves(f).map_err(CliError::Input),
    }
}

pub fn spec_digest(spec: &GenSpec) -> String {
    digest(serde_json::to_string(spec).expect("specs serialize").as_bytes())
}

pub fn gen(spec: &GenSpec, out: &Path) -> CliResult<Run> {
    let inst = generate(spec)?;
    let text = render_instance(&inst)?;
    fs::write(out, &text).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
    let (variant, edges) = match &inst {
        Instance::Graph(g) => ("graph", g.edge_count()),
        Instance::Curves(f) => ("curves", intersection_graph(f)?.graph.edge_count()),
    };
    let cert = GenCert {
        spec: spec.clone(),
        output_digest: digest(text.as_bytes()),
    };
    Ok(Run {
        outcome: Outcome::new(variant, to_value(&cert)).size("n", spec.n).size("edges", edges),
        input_digest: spec_digest(spec),
    })
}

pub fn patterns_find(pattern: &Pattern, input: &Loaded) -> CliResult<Run> {
    let g = input.graph()?;
    let embedding = find_induced_embedding(g, pattern);
    let variant = if embedding.is_some() { "embedding" } else { "absent" };
    let size = embedding.as_ref().map_or(0, |e| e.map.len());
    let cert = PatternsCert {
        pattern: pattern.graph().to_json(),
        embedding,
    };
    Ok(Run {
        outcome: Outcome::new(variant, to_value(&cert)).size("n", g.n()).size("certificate", size),
        input_digest: input.digest.clone(),
    })
}

fn path_size(o: &PathOutcome) -> usize {
    match o {
        PathOutcome::FarVertex { reach, .. } => reach.reached.len(),
        PathOutcome::CoBiclique { biclique, .. } => biclique.size(),
        PathOutcome::InducedPath { embedding } => embedding.map.len(),
        PathOutcome::PreconditionViolation(r) => r.partial.len(),
    }
}

pub fn ramsey_path(k: usize, input: &Loaded) -> CliResult<Run> {
    let g = input.graph()?;
    let outcome = find_path_or_cobiclique(g, k)?;
    let exit = match outcome {
        PathOutcome::PreconditionViolation(_) => EXIT_PRECONDITION,
        _ => 0,
    };
    let out = Outcome::new(outcome.variant(), json!(null))
        .size("n", g.n())
        .size("k", k)
        .size("max_degree", g.max_degree())
        .size("certificate", path_size(&outcome))
        .size("bound", path_cobiclique_bound(g.n(), k))
        .exit(exit);
    Ok(Run {
        outcome: Outcome {
            certificate: to_value(&PathCert { k, outcome }),
            ..out
        },
        input_digest: input.digest.clone(),
    })
}

pub struct MatchingArgs {
    pub seed: u64,
    pub retries: Option<u64>,
    pub exhaustive: bool,
}

pub fn ramsey_matching(pattern: &Pattern, args: &MatchingArgs, input: &Loaded) -> CliResult<Run> {
    let g = input.graph()?;
    let k = pattern
        .matching_pairs()
        .ok_or_else(|| CliError::Input("pattern is not an ordered matching".into()))?
        .len();
    let config = MatchingConfig {
        seed: args.seed,
        retry_cap: args.retries.unwrap_or_else(|| default_retry_cap(k)),
        exhaustive_fallback: args.exhaustive,
    };
    let outcome = find_matching_or_cobiclique(g, pattern, &config)?;
    let (size, trials, exit) = match &outcome {
        MatchingOutcome::InducedMatching { embedding, stats, .. } => (embedding.map.len(), stats.trials, 0),
        MatchingOutcome::CoBiclique { biclique, .. } => (biclique.size(), 0, 0),
        MatchingOutcome::PreconditionViolation { stats, .. } => (0, stats.trials, EXIT_PRECONDITION),
    };
    let cert = MatchingCert {
        pattern: pattern.graph().to_json(),
        outcome,
    };
    let variant = cert.outcome.variant();
    Ok(Run {
        outcome: Outcome::new(variant, to_value(&cert))
            .size("n", g.n())
            .size("k", k)
            .size("max_degree", g.max_degree())
            .size("certificate", size)
            .size("trials", trials as usize)
            .exit(exit),
        input_digest: input.digest.clone(),
    })
}

pub fn curves_graph(order: CurveOrder, input: &Loaded) -> CliResult<Run> {
    let fam = CurveFamily::new(input.curves()?.to_vec(), order)?;
    let cg = intersection_graph(&fam)?;
    let cert = CurveGraphCert {
        order: cg.order.clone(),
        graph: cg.graph.to_json(),
    };
    Ok(Run {
        outcome: Outcome::new("graph", to_value(&cert))
            .size("n", cg.graph.n())
            .size("edges", cg.graph.edge_count()),
        input_digest: input.digest.clone(),
    })
}

pub fn curves_ramsey_run(seed: u64, input: &Loaded) -> CliResult<Run> {
    let curves = input.curves()?;
    let out = curves_ramsey(curves, seed)?;
    Ok(Run {
        outcome: Outcome::new(cobiclique_variant(&out.biclique), to_value(&out))
            .size("n", curves.len())
            .size("m", out.m)
            .size("crossing", out.crossing)
            .size("certificate", out.biclique.size()),
        input_digest: input.digest.clone(),
    })
}

pub fn check_grounded(input: &Loaded) -> CliResult<Run> {
    let fam = CurveFamily::new(input.curves()?.to_vec(), CurveOrder::GroundedYOrder)?;
    let report = grounded_ordering_properties(&fam)?;
    let variant = if report.passed() { "passed" } else { "witness_found" };
    Ok(Run {
        outcome: Outcome::new(variant, to_value(&report)).size("n", report.n),
        input_digest: input.digest.clone(),
    })
}

pub fn verify_claim() -> CliResult<Run> {
    let report = verify_forcing_claim();
    let (variant, exit) = if report.all_contain_forcing && report.route_disagreements == 0 {
        ("forcing_in_every_ordering", 0)
    } else {
        ("counterexample", EXIT_INPUT)
    };
    Ok(Run {
        outcome: Outcome::new(variant, to_value(&report))
            .size("orderings", report.orderings_checked as usize)
            .size("tuples", report.tuples_examined as usize)
            .exit(exit),
        input_digest: digest(b""),
    })
}

pub fn magical_check(
    input: &Loaded,
    perm2: Vec<usize>,
    perm3: Vec<usize>,
    witness: Option<(OrderedGraph, OrderedGraph)>,
) -> CliResult<Run> {
    let g = input.graph()?;
    let report = check_report(g, perm2, perm3, witness).map_err(CliError::Input)?;
    Ok(Run {
        outcome: Outcome::new(report.variant(), to_value(&report))
            .size("n", g.n())
            .size("forcing_cliques", report.forcing_cliques as usize),
        input_digest: input.digest.clone(),
    })
}

pub fn magical_extract(line: &str, input: &Loaded) -> CliResult<Run> {
    let x0 = parse_rational(line).map_err(|d| CliError::Input(d.message))?;
    let w = double_magical_witness(input.curves()?, &x0)?;
    let outcome = extract_biclique_dense(&w.tg);
    let variant = to_value(&outcome.status).as_str().unwrap_or_default().to_string();
    let size = outcome.biclique.size();
    let g = w.tg.graph();
    let cert = ExtractCert {
        line: x0.to_string(),
        order: w.order.clone(),
        outcome,
    };
    Ok(Run {
        outcome: Outcome::new(variant, to_value(&cert))
            .size("n", g.n())
            .size("edges", g.edge_count())
            .size("certificate", size),
        input_digest: input.digest.clone(),
    })
}

pub fn threshold(epsilon: f64, input: &Loaded) -> CliResult<Run> {
    let curves = input.curves()?;
    let out = threshold_pipeline(curves, epsilon)?;
    Ok(Run {
        outcome: Outcome::new(cobiclique_variant(&out.biclique), to_value(&out))
            .size("n", curves.len())
            .size("m", out.m)
            .size("edges", out.edges)
            .size("crossing", out.crossing)
            .size("certificate", out.biclique.size()),
        input_digest: input.digest.clone(),
    })
}

pub fn oracle(complement: bool, cap: usize, input: &Loaded) -> CliResult<Run> {
    let g = input.graph()?;
    let biclique = max_biclique_oracle(g, complement, cap)?;
    let size = biclique.size();
    let variant = if size > 0 { "maximum" } else { "none" };
    let cert = OracleCert {
        complement,
        cap,
        biclique,
    };
    Ok(Run {
        outcome: Outcome::new(variant, to_value(&cert)).size("n", g.n()).size("certificate", size),
        input_digest: input.digest.clone(),
    })
}
