use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_ordered-ramsey");

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn triangle_has_no_induced_p3() {
    let dir = scratch("triangle");
    fs::write(dir.join("t.json"), r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#).unwrap();
    let out = run(&dir, &["patterns", "find", "--pattern", "P3", "--input", "t.json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let recs = lines(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["variant"], "absent");
    assert_eq!(recs[0]["command"][0], "patterns");
    assert_eq!(recs[0]["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn malformed_input_reports_diagnostics() {
    let dir = scratch("malformed");
    fs::write(dir.join("bad.json"), r#"{"n":3,"edges":[[2,2],[1,0]]}"#).unwrap();
    let out = run(&dir, &["patterns", "find", "--pattern", "P3", "--input", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = stderr(&out);
    assert!(err.contains("edges"), "{err}");
    fs::write(dir.join("junk.json"), "{not json").unwrap();
    assert_eq!(run(&dir, &["oracle", "--input", "junk.json"]).status.code(), Some(1));
    assert_eq!(run(&dir, &["oracle", "--input", "missing.json"]).status.code(), Some(1));
}

#[test]
fn unmet_precondition_exits_two() {
    let dir = scratch("precondition");
    fs::write(dir.join("g.json"), r#"{"n":4,"edges":[[0,1],[2,3]]}"#).unwrap();
    let out = run(&dir, &["ramsey", "path", "--k", "3", "--input", "g.json", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn missing_seed_is_rejected() {
    let dir = scratch("seedless");
    fs::write(dir.join("g.json"), r#"{"n":4,"edges":[]}"#).unwrap();
    let out = run(&dir, &["ramsey", "matching", "--pattern", "M1", "--input", "g.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--seed"));
    assert_eq!(run(&dir, &["--help"]).status.code(), Some(0));
}

#[test]
fn records_validate_against_their_input() {
    let dir = scratch("validate");
    let gen = run(
        &dir,
        &["gen", "--kind", "two-clique", "--n", "32", "--p", "0.1", "--seed", "5", "--out", "g.json"],
    );
    assert_eq!(gen.status.code(), Some(0), "{}", stderr(&gen));
    let out = run(&dir, &["ramsey", "matching", "--pattern", "M1", "--input", "g.json", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    fs::write(dir.join("r.jsonl"), &out.stdout).unwrap();
    let ok = run(&dir, &["validate", "--records", "r.jsonl", "--against", "g.json"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));

    // A mismatched input must not validate.
    run(&dir, &["gen", "--kind", "two-clique", "--n", "32", "--p", "0.1", "--seed", "6", "--out", "h.json"]);
    let bad = run(&dir, &["validate", "--records", "r.jsonl", "--against", "h.json"]);
    assert_eq!(bad.status.code(), Some(1));

    let mut rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    rec["extra"] = Value::Bool(true);
    fs::write(dir.join("x.jsonl"), format!("{rec}\n")).unwrap();
    assert_eq!(run(&dir, &["validate", "--records", "x.jsonl", "--against", "g.json"]).status.code(), Some(1));
}

#[test]
fn batch_stats_match_records() {
    let dir = scratch("batch");
    let suite = r#"{"jobs":[
        {"name":"cob","verb":"oracle","instance":{"kind":"two-clique","n":20,"p":0.2},
         "params":{"complement":true,"cap":24},"seeds":{"start":0,"count":100}},
        {"name":"match","verb":"ramsey-matching","instance":{"kind":"random-ordered","n":24,"p":0.5},
         "params":{"pattern":"M1"},"seeds":{"start":0,"count":100}}]}"#;
    fs::write(dir.join("suite.json"), suite).unwrap();
    let out = run(&dir, &["batch", "--spec", "suite.json", "--threads", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let mut recs = lines(&out);
    let stats = recs.pop().unwrap()["stats"].clone();
    assert_eq!(recs.len(), 200);

    let mut by_job: BTreeMap<String, Vec<&Value>> = BTreeMap::new();
    for r in &recs {
        let cmd: Vec<&str> = r["command"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        let job = cmd[cmd.iter().position(|&c| c == "--job").unwrap() + 1];
        by_job.entry(job.to_string()).or_default().push(r);
    }
    for s in stats.as_array().unwrap() {
        let rs = &by_job[s["job"].as_str().unwrap()];
        assert_eq!(s["runs"].as_u64().unwrap() as usize, rs.len());
        let mut variants: BTreeMap<&str, u64> = BTreeMap::new();
        for r in rs.iter() {
            *variants.entry(r["variant"].as_str().unwrap()).or_default() += 1;
        }
        let reported: BTreeMap<&str, u64> =
            s["variants"].as_object().unwrap().iter().map(|(k, v)| (k.as_str(), v.as_u64().unwrap())).collect();
        assert_eq!(reported, variants);
        let sizes: Vec<f64> = rs.iter().filter_map(|r| r["sizes"]["certificate"].as_f64()).collect();
        if sizes.is_empty() {
            assert!(s["certificate_mean"].is_null());
            continue;
        }
        let mean = sizes.iter().sum::<f64>() / sizes.len() as f64;
        let sd = (sizes.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / sizes.len() as f64).sqrt();
        assert!((s["certificate_mean"].as_f64().unwrap() - mean).abs() < 1e-9);
        assert!((s["certificate_sd"].as_f64().unwrap() - sd).abs() < 1e-9);
        assert_eq!(s["certificate_min"].as_f64().unwrap(), sizes.iter().cloned().fold(f64::MAX, f64::min));
        assert_eq!(s["certificate_max"].as_f64().unwrap(), sizes.iter().cloned().fold(f64::MIN, f64::max));
    }

    let again = run(&dir, &["batch", "--spec", "suite.json", "--threads", "1"]);
    assert_eq!(again.stdout, out.stdout);
}
