use std::path::Path;
use std::process::{Command, Output};

use qkl::canon::cache::KlCache;
use serde_json::Value;

fn qkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkl"))
        .args(args)
        .env_remove("QKL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn typical_canonical_basis_is_a_single_monomial() {
    let o = qkl(&["canon", "--f", "2,0|1,3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "K_{2,0|1,3}\t1\n");
}

#[test]
fn gl11_chain_in_json() {
    for c in -3..=3 {
        let f = format!("{c}|{c}");
        let o = qkl(&["canon", "--f", &f, "--format", "json"]);
        assert!(o.status.success());
        let doc = json(&o);
        let below = format!("{}|{}", c - 1, c - 1);
        assert_eq!(doc["canonical"], serde_json::json!([[f, "1"], [below, "q"]]));
        let dual = doc["dual_at_one"].as_array().unwrap();
        for (j, entry) in dual.iter().enumerate().take(5) {
            let sign = if j % 2 == 0 { "1" } else { "-1" };
            assert_eq!(entry[0], format!("{}|{}", c - j as i64, c - j as i64));
            assert_eq!(entry[1], sign);
        }
    }
}

#[test]
fn lambda_and_f_labels_agree() {
    let by_f = qkl(&["canon", "--f", "0|0"]);
    let by_lambda = qkl(&["canon", "--lambda", "k=1;zeta;0,0"]);
    assert!(by_f.status.success());
    assert_eq!(by_f.stdout, by_lambda.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["canon", "--f", "1|x"],
        vec!["canon", "--f", "1|1", "--shape", "2,1"],
        vec!["char", "--lambda", "k=9;zeta;1"],
        vec!["verify", "--suite", "nonesuch"],
        vec!["cache", "list"],
    ] {
        let o = qkl(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn non_dominant_weight_exits_3() {
    let o = qkl(&["canon", "--f", "0,1|0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = qkl(&["char", "--lambda", "k=1;zeta;0,0", "--depth", "5", "--window", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn characters_in_every_format() {
    let base = ["char", "--lambda", "k=1;zeta;0,0", "--kind", "irr", "--depth", "3"];
    let text = qkl(&base);
    assert_eq!(stdout(&text), "0\t2\t0|0\n1\t2\t-1|1\n2\t2\t-2|2\n3\t2\t-3|3\n");
    let csv = qkl(&[&base[..], &["--format", "csv"]].concat());
    assert!(stdout(&csv).starts_with("height,e1,e2,coefficient\n0,0,0,2\n"));
    let latex = qkl(&[&base[..], &["--format", "latex"]].concat());
    assert!(stdout(&latex).contains("\\zeta"));
    let doc = json(&qkl(&[&base[..], &["--format", "json"]].concat()));
    assert_eq!(doc["terms"].as_array().unwrap().len(), 4);
    assert_eq!(doc["offset"]["zeta"], serde_json::json!([1, -1]));
}

#[test]
fn kw_character_reports_prefactor_and_certificate() {
    let o = qkl(&[
        "char", "--lambda", "k=2;zeta;2,1,-1,-2", "--kind", "kw", "--depth", "2", "--format", "json",
    ]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["prefactor"], "2");
    assert_eq!(doc["certificate"]["borel"], "d1e1d2e2");
    assert_eq!(doc["terms"][0], serde_json::json!([[2, 1, -1, -2], "4"]));
}

#[test]
fn kinds_agree_on_typical_weights() {
    let lam = "k=1;zeta;3,-1";
    let run = |kind: &str| stdout(&qkl(&["char", "--lambda", lam, "--kind", kind, "--depth", "3"]));
    assert_eq!(run("verma"), run("irr"));
    assert_eq!(run("verma"), run("tilt"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["char", "--lambda", "k=2;zeta;1,0,0,-1", "--kind", "tilt", "--depth", "3", "--format", "json"];
    let one = qkl(&[&["--jobs", "1"][..], &args[..]].concat());
    let many = qkl(&[&["--jobs", "4"][..], &args[..]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let v1 = qkl(&["--jobs", "1", "verify", "--suite", "translation"]);
    let v4 = qkl(&["--jobs", "4", "verify", "--suite", "translation"]);
    assert_eq!(v1.stdout, v4.stdout);
}

#[test]
fn verify_reports_json() {
    let o = qkl(&["verify", "--suite", "closed-form"]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["suites"][0]["suite"], "closed-form");
    let o = qkl(&["verify", "--suite", "hecke", "--shape", "2,1"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["suites"][0]["cases"], 100);
    let o = qkl(&["verify", "--suite", "hecke", "--shape", "1,1"]);
    assert!(json(&o)["suites"][0]["notes"]["skipped"].is_string());
}

fn cache_args<'a>(dir: &'a Path, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["--cache-dir", dir.to_str().unwrap()];
    v.extend_from_slice(rest);
    v
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let list = qkl(&cache_args(dir.path(), &["cache", "list", "--format", "json"]));
    assert!(list.status.success());
    assert_eq!(json(&list), serde_json::json!([]));

    let first = qkl(&cache_args(dir.path(), &["canon", "--f", "1|1"]));
    assert!(String::from_utf8_lossy(&first.stderr).contains("miss"));
    let env = Command::new(env!("CARGO_BIN_EXE_qkl"))
        .args(["canon", "--f", "1|1"])
        .env("QKL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&env.stderr).contains("hit"));
    assert_eq!(first.stdout, env.stdout);

    let entries = json(&qkl(&cache_args(dir.path(), &["cache", "list", "--format", "json"])));
    assert_eq!(entries.as_array().unwrap().len(), 1);
    assert_eq!(entries[0]["current"], true);

    let stats = json(&qkl(&cache_args(dir.path(), &["cache", "stats"])));
    assert_eq!(stats["hits"], 1);
    assert_eq!(stats["misses"], 1);

    let cleared = json(&qkl(&cache_args(dir.path(), &["cache", "clear"])));
    assert_eq!(cleared["removed"], 1);
}

#[test]
fn stale_entries_are_listed_but_not_used() {
    let dir = tempfile::tempdir().unwrap();
    qkl(&cache_args(dir.path(), &["canon", "--f", "0|0"]));
    let name = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .find(|p| p.file_name().unwrap().to_string_lossy().starts_with("kl_"))
        .unwrap();
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&name).unwrap()).unwrap();
    doc["version"] = serde_json::json!(0);
    std::fs::write(&name, doc.to_string()).unwrap();

    let entries = json(&qkl(&cache_args(dir.path(), &["cache", "list", "--format", "json"])));
    assert_eq!(entries[0]["current"], false);
    let again = qkl(&cache_args(dir.path(), &["canon", "--f", "0|0"]));
    assert!(again.status.success());
    assert!(String::from_utf8_lossy(&again.stderr).contains("stale"));
}

#[test]
fn locked_cache_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let cache = KlCache::open(dir.path()).unwrap();
    let guard = cache.hold_exclusive().unwrap();
    let o = qkl(&cache_args(dir.path(), &["canon", "--f", "1|1"]));
    assert_eq!(o.status.code(), Some(4));
    assert!(o.stdout.is_empty());
    drop(guard);
    let o = qkl(&cache_args(dir.path(), &["canon", "--f", "1|1"]));
    assert!(o.status.success());
}
