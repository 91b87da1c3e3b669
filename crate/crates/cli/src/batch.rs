//! Seeded experiment suites run on a worker pool.
//!
//! Spec file:
//!
//! ```json
//! {"jobs": [{"name": "paths", "verb": "ramsey-path",
//!            "instance": {"kind": "random-ordered", "n": 60, "p": 0.02},
//!            "params": {"k": 3}, "seeds": {"start": 0, "count": 100}}]}
//! ```
//!
//! Run `s` of a job generates its instance with seed `s` and passes `s` to
//! randomized verbs. Records come out in (job, seed) order regardless of
//! scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use ordered_ramsey::generators::{generate, GenSpec, Instance};
use ordered_ramsey::geometry::CurveOrder;
use ordered_ramsey::io::Document;

use crate::commands::{self, CliError, CliResult, Loaded, MatchingArgs};
use crate::record::{digest, Outcome, OutcomeRecord};
use crate::verify::seal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatchVerb {
    PatternsFind,
    RamseyPath,
    RamseyMatching,
    CurvesGraph,
    CurvesRamsey,
    CheckGrounded,
    MagicalExtract,
    Threshold,
    Oracle,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub k: Option<usize>,
    pub pattern: Option<String>,
    pub retries: Option<u64>,
    #[serde(default)]
    pub exhaustive: bool,
    pub epsilon: Option<f64>,
    pub line: Option<String>,
    #[serde(default)]
    pub complement: bool,
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Seeds {
    pub start: u64,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub name: String,
    pub verb: BatchVerb,
    /// A generator spec without its seed.
    pub instance: Value,
    #[serde(default)]
    pub params: Params,
    pub seeds: Seeds,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub jobs: Vec<Job>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobStats {
    pub job: String,
    pub runs: u64,
    pub variants: BTreeMap<String, u64>,
    /// Over `sizes.certificate` of runs that report one.
    pub certificate_mean: Option<f64>,
    pub certificate_sd: Option<f64>,
    pub certificate_min: Option<usize>,
    pub certificate_max: Option<usize>,
}

impl Job {
    fn spec(&self, seed: u64) -> CliResult<GenSpec> {
        let mut v = self.instance.clone();
        let obj = v
            .as_object_mut()
            .ok_or_else(|| CliError::Input(format!("job {}: instance must be an object", self.name)))?;
        if obj.contains_key("seed") {
            return Err(CliError::Input(format!("job {}: instance seeds come from `seeds`", self.name)));
        }
        obj.insert("seed".into(), seed.into());
        serde_json::from_value(v).map_err(|e| CliError::Input(format!("job {}: instance: {e}", self.name)))
    }

    fn need<T: Clone>(&self, v: &Option<T>, what: &str) -> CliResult<T> {
        v.clone()
            .ok_or_else(|| CliError::Input(format!("job {}: params.{what} is required", self.name)))
    }

    /// Checks everything that does not depend on the seed.
    pub fn check(&self) -> CliResult<()> {
        self.spec(self.seeds.start)?;
        let p = &self.params;
        match self.verb {
            BatchVerb::PatternsFind => {
                commands::parse_pattern(&self.need(&p.pattern, "pattern")?)?;
            }
            BatchVerb::RamseyPath => {
                self.need(&p.k, "k")?;
            }
            BatchVerb::RamseyMatching => {
                commands::parse_pattern(&self.need(&p.pattern, "pattern")?)?;
            }
            BatchVerb::Threshold => {
                self.need(&p.epsilon, "epsilon")?;
            }
            BatchVerb::MagicalExtract => {
                self.need(&p.line, "line")?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Command echo, also the CLI invocation that reproduces the run on the
    /// generated instance.
    fn command(&self, seed: u64) -> Vec<String> {
        let p = &self.params;
        let mut c: Vec<String> = match self.verb {
            BatchVerb::PatternsFind => vec!["patterns".into(), "find".into()],
            BatchVerb::RamseyPath => vec!["ramsey".into(), "path".into()],
            BatchVerb::RamseyMatching => vec!["ramsey".into(), "matching".into()],
            BatchVerb::CurvesGraph => vec!["curves".into(), "graph".into()],
            BatchVerb::CurvesRamsey => vec!["curves".into(), "ramsey".into()],
            BatchVerb::CheckGrounded => vec!["curves".into(), "check-grounded".into()],
            BatchVerb::MagicalExtract => vec!["magical".into(), "extract".into()],
            BatchVerb::Threshold => vec!["threshold".into(), "run".into()],
            BatchVerb::Oracle => vec!["oracle".into()],
        };
        let mut flag = |name: &str, v: Option<String>| {
            if let Some(v) = v {
                c.push(format!("--{name}"));
                c.push(v);
            }
        };
        flag("pattern", p.pattern.clone());
        flag("k", p.k.map(|k| k.to_string()));
        flag("retries", p.retries.map(|r| r.to_string()));
        flag("epsilon", p.epsilon.map(|e| e.to_string()));
        flag("line", p.line.clone());
        flag("cap", p.cap.map(|x| x.to_string()));
        if p.exhaustive {
            c.push("--exhaustive".into());
        }
        if p.complement {
            c.push("--complement".into());
        }
        if self.randomized() {
            c.push("--seed".into());
            c.push(seed.to_string());
        }
        c.push("--job".into());
        c.push(self.name.clone());
        c
    }

    fn randomized(&self) -> bool {
        matches!(
            self.verb,
            BatchVerb::RamseyPath | BatchVerb::RamseyMatching | BatchVerb::CurvesRamsey
        )
    }

    fn execute(&self, seed: u64) -> CliResult<(Outcome, Loaded)> {
        let spec = self.spec(seed)?;
        let inst = generate(&spec)?;
        let text = commands::render_instance(&inst)?;
        let doc = match inst {
            Instance::Graph(g) => Document::Graph(g),
            Instance::Curves(f) => Document::Curves(f.curves().to_vec()),
        };
        let input = Loaded {
            doc,
            digest: digest(text.as_bytes()),
        };
        let p = &self.params;
        let run = match self.verb {
            BatchVerb::PatternsFind => {
                commands::patterns_find(&commands::parse_pattern(&self.need(&p.pattern, "pattern")?)?, &input)?
            }
            BatchVerb::RamseyPath => commands::ramsey_path(self.need(&p.k, "k")?, &input)?,
            BatchVerb::RamseyMatching => {
                let pattern = commands::parse_pattern(&self.need(&p.pattern, "pattern")?)?;
                let args = MatchingArgs {
                    seed,
                    retries: p.retries,
                    exhaustive: p.exhaustive,
                };
                commands::ramsey_matching(&pattern, &args, &input)?
            }
            BatchVerb::CurvesGraph => commands::curves_graph(CurveOrder::None, &input)?,
            BatchVerb::CurvesRamsey => commands::curves_ramsey_run(seed, &input)?,
            BatchVerb::CheckGrounded => commands::check_grounded(&input)?,
            BatchVerb::MagicalExtract => commands::magical_extract(&self.need(&p.line, "line")?, &input)?,
            BatchVerb::Threshold => commands::threshold(self.need(&p.epsilon, "epsilon")?, &input)?,
            BatchVerb::Oracle => commands::oracle(p.complement, p.cap.unwrap_or(16), &input)?,
        };
        Ok((run.outcome, input))
    }

    /// One sealed record; failures become `error` records rather than
    /// aborting the suite.
    fn record(&self, seed: u64, timing: bool) -> OutcomeRecord {
        let start = Instant::now();
        let result = self.execute(seed);
        let elapsed = timing.then(|| start.elapsed().as_millis() as u64);
        let command = self.command(seed);
        let seed_field = self.randomized().then_some(seed);
        let failed = |variant: &str, msg: String, d: String| {
            Outcome::new(variant, serde_json::json!({ "error": msg })).into_record(
                command.clone(),
                d,
                seed_field,
                elapsed,
            )
        };
        match result {
            Ok((outcome, input)) => {
                match seal(outcome, command.clone(), input.digest.clone(), seed_field, elapsed, Some(&input.doc)) {
                    Ok(r) => r,
                    Err(e) => failed("error", e, input.digest),
                }
            }
            Err(CliError::Precondition(m)) => failed("precondition_violation", m, String::new()),
            Err(e) => failed("error", e.to_string(), String::new()),
        }
    }
}

pub fn run_suite(suite: &Suite, timing: bool) -> Vec<OutcomeRecord> {
    let tasks: Vec<(&Job, u64)> = suite
        .jobs
        .iter()
        .flat_map(|j| (0..j.seeds.count).map(move |i| (j, j.seeds.start + i)))
        .collect();
    tasks.par_iter().map(|(job, seed)| job.record(*seed, timing)).collect()
}

/// Aggregates per job name, in the order jobs first appear.
pub fn stats(records: &[OutcomeRecord]) -> Vec<JobStats> {
    let mut order: Vec<String> = vec![];
    let mut groups: BTreeMap<String, Vec<&OutcomeRecord>> = BTreeMap::new();
    for r in records {
        let job = r
            .command
            .iter()
            .position(|c| c == "--job")
            .and_then(|i| r.command.get(i + 1))
            .cloned()
            .unwrap_or_default();
        if !groups.contains_key(&job) {
            order.push(job.clone());
        }
        groups.entry(job).or_default().push(r);
    }
    order
        .into_iter()
        .map(|job| {
            let rs = &groups[&job];
            let mut variants = BTreeMap::new();
            for r in rs {
                *variants.entry(r.variant.clone()).or_insert(0) += 1;
            }
            let sizes: Vec<usize> = rs.iter().filter_map(|r| r.sizes.get("certificate").copied()).collect();
            let (mean, sd) = if sizes.is_empty() {
                (None, None)
            } else {
                let n = sizes.len() as f64;
                let mean = sizes.iter().sum::<usize>() as f64 / n;
                let var = sizes.iter().map(|&s| (s as f64 - mean).powi(2)).sum::<f64>() / n;
                (Some(mean), Some(var.sqrt()))
            };
            JobStats {
                job,
                runs: rs.len() as u64,
                variants,
                certificate_mean: mean,
                certificate_sd: sd,
                certificate_min: sizes.iter().min().copied(),
                certificate_max: sizes.iter().max().copied(),
            }
        })
        .collect()
}

pub fn stats_tsv(stats: &[JobStats]) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let mut out = String::from("job\truns\tvariants\tcert_mean\tcert_sd\tcert_min\tcert_max\n");
    for s in stats {
        let variants: Vec<String> = s.variants.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            s.job,
            s.runs,
            variants.join(","),
            opt(s.certificate_mean.map(|x| format!("{x:.4}"))),
            opt(s.certificate_sd.map(|x| format!("{x:.4}"))),
            opt(s.certificate_min.map(|x| x.to_string())),
            opt(s.certificate_max.map(|x| x.to_string())),
        ));
    }
    out
}
