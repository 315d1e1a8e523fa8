use std::process::{Command, Output};

use serde_json::Value;

fn verba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verba")).args(args).env_remove("VERBA_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = verba(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn analyze_reports_decomposition() {
    let v = json(&["analyze", "--group", "Z2*Z2*Z2", "b a c b a c"]);
    let r = &v["results"];
    assert_eq!(r["length"], 6);
    assert_eq!(r["central_length"], 6);
    assert_eq!(r["radical_length"], 3);
    assert_eq!(r["A"], "b a c");
    assert_eq!(r["k"], 2);
}

#[test]
fn analyze_merges_syllables() {
    let o = verba(&["analyze", "--group", "Z5*Z2", "b a^4 a^3 b"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("reduced: b a^2 b"));
}

#[test]
fn analyze_identity() {
    let v = json(&["analyze", "1"]);
    assert_eq!(v["results"]["reduced"], "1");
    assert_eq!(v["results"]["length"], 0);
    assert!(v["results"].get("radical_length").is_none());
}

#[test]
fn json_keys_are_stable() {
    let v = json(&["tree", "translen", "a b a b^2"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "failures", "group", "inputs", "results", "seed"]);
}

#[test]
fn printed_words_reparse() {
    let v = json(&["analyze", "--group", "Z4*Z3*Z2", "c a^3 a^2 b^2 c b c"]);
    let reduced = v["results"]["reduced"].as_str().unwrap().to_string();
    let again = json(&["analyze", "--group", "Z4*Z3*Z2", &reduced]);
    assert_eq!(again["results"]["reduced"], reduced.as_str());
    let axis = json(&["tree", "axis", "a b", "--window", "1"]);
    for vtx in axis["results"]["vertices"].as_array().unwrap() {
        let vtx = vtx.as_str().unwrap();
        let d = json(&["tree", "dist", vtx, vtx]);
        assert_eq!(d["results"]["distance"], 0, "{vtx}");
    }
}

#[test]
fn verify_tree_passes() {
    let o = verba(&["verify", "tree", "--group", "Z2*Z3", "--samples", "200", "--seed", "7"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn verify_all_aggregates() {
    let v = json(&["verify", "all", "--samples", "50"]);
    assert_eq!(v["results"]["suite"], "all");
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert_eq!(v["seed"], 0);
    let names: Vec<&str> =
        v["results"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for s in ["words/", "finewilf/", "boundary/", "mcl/", "tree/", "l2/", "ticadd2/", "recover/", "solve-demo/"] {
        assert!(names.iter().any(|n| n.starts_with(s)), "{s}");
    }
}

#[test]
fn unknown_suite_exits_2() {
    let o = verba(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_literal_exits_2() {
    let o = verba(&["analyze", "a q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 2"));
    assert_eq!(verba(&["analyze", "--group", "Q8", "a"]).status.code(), Some(2));
}

#[test]
fn elliptic_axis_is_a_computation_error() {
    let o = verba(&["tree", "axis", "a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn build_l2_dump_and_sums() {
    let o = verba(&["build", "l2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("exponent_sums=0 0"));
    let dump_lines = out.lines().filter(|l| l.contains(" := ")).count();
    assert!((10..=30).contains(&dump_lines), "{dump_lines}");
}

#[test]
fn build_twords_manifest() {
    let o = verba(&["build", "twords", "--group", "Z2*Z3", "--tuple", "a b^1,a b^2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("m_2,0=")), "{out}");
    assert!(out.contains("m_2,0.status=certified"));
}

#[test]
fn build_mwords_reports_stats_only() {
    let v = json(&["build", "mwords", "--tuple", "a b,a b^2", "--budget", "50000"]);
    let slp = v["results"]["slp"].as_object().unwrap();
    for name in ["M", "M'", "M''"] {
        let sums = slp[name]["exponent_sums"].as_array().unwrap();
        assert!(sums.iter().all(|s| s == "0"), "{name}");
        assert!(slp[name].get("dump").is_none());
    }
}

#[test]
fn slp_stats_reads_a_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l2.slp");
    let dump: String =
        stdout(&verba(&["build", "l2"])).lines().filter(|l| l.contains(" := ")).map(|l| format!("{l}\n")).collect();
    std::fs::write(&path, dump).unwrap();
    let v = json(&["slp", "stats", path.to_str().unwrap()]);
    assert_eq!(v["results"]["nodes"], 19);
    assert_eq!(v["results"]["exponent_sums"], serde_json::json!(["0", "0"]));
}

#[test]
fn group_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.txt");
    // S3 as permutations of three points, then Z2.
    let s3 =
        "order 6\n0 1 2 3 4 5\n1 0 3 2 5 4\n2 4 0 5 1 3\n3 5 1 4 0 2\n4 2 5 0 3 1\n5 3 4 1 2 0\norder 2\n0 1\n1 0\n";
    std::fs::write(&path, s3).unwrap();
    let o = verba(&["analyze", "--group-file", path.to_str().unwrap(), "a^2 b a^2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("length: 3"));
}
