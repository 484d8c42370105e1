use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use liewa_core::catalog::Catalog;
use liewa_core::constructions::build_named;
use liewa_core::report::analyze;
use serde_json::Value;

fn liewa(args: &[&str]) -> Output {
    liewa_env(args, None)
}

fn liewa_env(args: &[&str], catalog: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_liewa"));
    cmd.args(args).env_remove("LIEWA_CATALOG");
    if let Some(p) = catalog {
        cmd.env("LIEWA_CATALOG", p);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn built(dir: &Path, spec: &str) -> PathBuf {
    let path = dir.join(format!("{}.json", spec.replace(' ', "_")));
    let mut args = vec!["build"];
    args.extend(spec.split_whitespace());
    args.extend(["-o", path.to_str().unwrap()]);
    let o = liewa(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    path
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn build_emits_parseable_files() {
    let o = liewa(&["build", "sl2"]);
    assert!(o.status.success());
    assert_eq!(liewa_core::format::parse(&stdout(&o)).unwrap(), liewa_core::constructions::sl2());
    for (spec, dim) in [("heisenberg 3", 3), ("h_sl2 1", 6), ("direct_sum sl2 so3", 6), ("complexify sp4R", 20)] {
        let mut args = vec!["build"];
        args.extend(spec.split_whitespace());
        let v: Value = serde_json::from_str(&stdout(&liewa(&args))).unwrap();
        assert_eq!(v["dim"], dim, "{spec}");
    }
}

#[test]
fn build_rejects_bad_requests() {
    assert_eq!(liewa(&["build", "nonsense"]).status.code(), Some(2));
    assert_eq!(liewa(&["build", "heisenberg", "4"]).status.code(), Some(2));
    assert_eq!(liewa(&["build", "sl2", "extra"]).status.code(), Some(2));
}

#[test]
fn analyze_reports_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = liewa(&["--json", "analyze", built(dir.path(), "v_sl2 2").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["verdict"], "not weakly amenable");
    assert_eq!(v["constant"], "inf");
    assert_eq!(v["dichotomy"], "case-B");

    let o = liewa(&["--json", "analyze", built(dir.path(), "so3").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["constant"], "1");

    let o = liewa(&["analyze", built(dir.path(), "direct_sum sl2 heisenberg 3").to_str().unwrap()]);
    assert!(stdout(&o).contains("verdict:    weakly amenable"));
}

#[test]
fn unknown_real_form_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = built(dir.path(), "complexify sp4R");
    let o = liewa(&["--json", "analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert_eq!(json(&o)["error"]["kind"], "unrecognized_real_form");
    assert!(stderr(&o).contains("unrecognized_real_form(20"));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("malformed.json", "{ not json".to_string()),
        ("diagonal.json", r#"{"dim": 2, "basis": ["a","b"], "brackets": [{"i": 1, "j": 1, "terms": []}]}"#.to_string()),
        ("range.json", r#"{"dim": 2, "brackets": [{"i": 0, "j": 1, "terms": [[7, "1"]]}]}"#.to_string()),
        ("jacobi.json", stdout(&liewa(&["build", "sl2"])).replacen("\"-2\"", "\"2\"", 1)),
    ];
    for (name, text) in &cases {
        let o = liewa(&["analyze", write(dir.path(), name, text).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{name}: {}", stderr(&o));
    }
    let o = liewa(&["analyze", dir.path().join("jacobi.json").to_str().unwrap()]);
    assert!(stderr(&o).contains("jacobi_violation(0,1,2)"), "{}", stderr(&o));
    assert_eq!(liewa(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn file_round_trip_matches_in_memory_reports() {
    let dir = tempfile::tempdir().unwrap();
    let catalog = Catalog::builtin();
    for spec in ["sl2", "so3", "heisenberg 3", "so3_r3", "v_sl2 3", "h_sl2 1", "sl3R", "direct_sum sl2 heisenberg 3"] {
        let path = built(dir.path(), spec);
        let run = || stdout(&liewa(&["--json", "analyze", path.to_str().unwrap(), "--name", spec]));
        let first = run();
        let memory = analyze(spec, &build_named(spec).unwrap(), &catalog).unwrap().to_json();
        assert_eq!(first, memory, "{spec}");
        assert_eq!(first, run(), "{spec}");
    }
}

#[test]
fn catalog_override() {
    let dir = tempfile::tempdir().unwrap();
    let colliding = write(
        dir.path(),
        "colliding.json",
        r#"[{"name":"a","dim":3,"signature":[2,1,0],"cartan_dim":1,"real_rank":1,"lambda_wa":"1"},
            {"name":"b","dim":3,"signature":[2,1,0],"cartan_dim":1,"real_rank":1,"lambda_wa":"inf"}]"#,
    );
    let o = liewa_env(&["selftest", "--trials", "1"], Some(&colliding));
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("collision"), "{}", stderr(&o));

    let only_sl3 = write(
        dir.path(),
        "sl3.json",
        r#"[{"name":"sl(3,R)","dim":8,"signature":[5,3,0],"cartan_dim":2,"real_rank":2,"lambda_wa":"inf"}]"#,
    );
    let sl2 = built(dir.path(), "sl2");
    assert_eq!(liewa_env(&["analyze", sl2.to_str().unwrap()], Some(&only_sl3)).status.code(), Some(3));
    let sl3 = built(dir.path(), "sl3R");
    assert_eq!(liewa_env(&["analyze", sl3.to_str().unwrap()], Some(&only_sl3)).status.code(), Some(0));
    let missing = dir.path().join("missing.json");
    assert_eq!(liewa_env(&["analyze", sl3.to_str().unwrap()], Some(&missing)).status.code(), Some(1));
}

#[test]
fn rep_checks() {
    for check in ["hom", "sympl", "lattice", "assoc"] {
        let o = liewa(&["--json", "rep", "--m", "4", "--check", check, "--trials", "20"]);
        assert_eq!(o.status.code(), Some(0), "{check}: {}", stdout(&o));
        assert_eq!(json(&o)["result"]["passed"], 20);
    }
    assert_eq!(liewa(&["rep", "--m", "3", "--check", "sympl"]).status.code(), Some(1));
    assert_eq!(liewa(&["rep", "--m", "3", "--check", "bogus"]).status.code(), Some(2));
}

#[test]
fn orbit_lab_commands() {
    let o = liewa(&["--json", "orbit", "--m", "2", "--vector", "1,0", "--radius", "1"]);
    assert_eq!(json(&o)["orbit"], serde_json::json!(["0,-1", "0,1", "1,0"]));

    let o = liewa(&["--json", "stabilizer", "--m", "2", "--vector", "1,0", "--radius", "4"]);
    let v = json(&o);
    assert_eq!(v["commutes"], true);
    assert!(v["elements"].as_array().unwrap().iter().all(|e| e["matrix"][0] == "1" && e["matrix"][2] == "0"));

    let o = liewa(&["--json", "partition", "--n", "1", "--box", "1", "--radius", "2"]);
    let v = json(&o);
    assert_eq!(v["n0_size"], 3);
    assert_eq!(v["n0_fixed"], true);

    let o = liewa(&["--json", "witness", "--m", "2", "--box", "2", "--radius", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["stabilizers_commute"], true);

    assert_eq!(liewa(&["orbit", "--m", "2", "--vector", "1,0", "--radius", "9"]).status.code(), Some(2));
    assert_eq!(liewa(&["orbit", "--m", "2", "--vector", "1,0,0"]).status.code(), Some(2));
    assert_eq!(liewa(&["orbit", "--m", "2", "--n", "1", "--vector", "1,0"]).status.code(), Some(2));
}

#[test]
fn selftest_runs() {
    let o = liewa(&["--seed", "3", "selftest", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = liewa(&["selftest", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    let a = stdout(&liewa(&["--json", "--seed", "9", "selftest", "--trials", "1"]));
    assert_eq!(a, stdout(&liewa(&["--json", "--seed", "9", "selftest", "--trials", "1"])));
}
