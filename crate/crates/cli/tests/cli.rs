//! End-to-end tests of the `ckt` binary: exit codes, report content,
//! determinism, exports, and the search command.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    if dir.exists() {
        std::fs::remove_dir_all(&dir).unwrap();
    }
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn ktheory_presentation_reports_the_c1_values() {
    let out = run(&["ktheory", "--presentation", &fixture("c1.tri")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("tiles=42"));
    assert!(text.contains("K0=(Z/2)^4 (+) Z/3"));
    assert!(text.contains("K1=(Z/2)^4 (+) Z/3"));
    assert!(text.contains("invariant_factors_K0=2,2,2,6"));
    assert!(text.contains("order_of_identity=1"));
    assert!(text.contains("condition=H3 verdict=pass"));
}

#[test]
fn ktheory_graph_reports_z2_z2() {
    let out = run(&["ktheory", "--graph", &fixture("f2bouquet.g")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("K0=Z^2"));
    assert!(text.contains("K1=Z^2"));
    assert!(text.contains("verdict=simple"));
}

#[test]
fn ktheory_tensor_reports_z8_and_kunneth() {
    let out = run(&["ktheory", "--tensor", &fixture("f2.m"), &fixture("f2.m")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("letters=16"));
    assert!(text.contains("K0=Z^8"));
    assert!(text.contains("K1=Z^8"));
    assert!(text.contains("diagnostic kunneth=pass"));
}

#[test]
fn validate_exit_codes() {
    assert_eq!(
        run(&["validate", "--presentation", &fixture("c1.tri")]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["validate", "--graph", &fixture("f2bouquet.g")]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["validate", "--incidence", &fixture("fano.inc")]).status.code(),
        Some(0)
    );
    // parse error: relator of length 2
    assert_eq!(
        run(&["validate", "--presentation", &fixture("broken/short_relator.tri")])
            .status
            .code(),
        Some(2)
    );
    // validation failure: tampered relator
    let out = run(&["validate", "--presentation", &fixture("broken/tampered.tri")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("valid=fail"));
    // validation failure: deleted incidence, witness names the line
    let out = run(&["validate", "--incidence", &fixture("broken/fano_missing.inc")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("axiom=points-per-line"));
    assert!(text.contains("witness=line 3 has 2 points (expected 3)"));
    // missing file
    assert_eq!(
        run(&["validate", "--presentation", "no_such_file.tri"]).status.code(),
        Some(2)
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = run(&["ktheory", "--presentation", &fixture("c1.tri")]);
    let b = run(&["ktheory", "--presentation", &fixture("c1.tri")]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["ktheory", "--tensor", &fixture("f2.m"), &fixture("f2.m")]);
    let b = run(&["ktheory", "--tensor", &fixture("f2.m"), &fixture("f2.m")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_file_matches_stdout_and_json_parses() {
    let dir = tmpdir("report_file");
    let report_path = dir.join("run.txt");
    let out = run(&[
        "ktheory",
        "--presentation",
        &fixture("c1.tri"),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let on_disk = std::fs::read(&report_path).unwrap();
    assert_eq!(on_disk, out.stdout);

    let out = run(&[
        "ktheory",
        "--presentation",
        &fixture("c1.tri"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(value["tool"], "ckt");
    assert_eq!(value["command"], "ktheory");
    let sections = value["sections"].as_array().unwrap();
    assert!(sections.iter().any(|s| s["name"] == "ktheory"));
}

#[test]
fn matrix_export_roundtrips() {
    let dir = tmpdir("matrix_out");
    let out = run(&[
        "ktheory",
        "--presentation",
        &fixture("c1.tri"),
        "--matrix-out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let m1_text = std::fs::read_to_string(dir.join("M1.m")).unwrap();
    let (name, m1) = ckt_core::system::parse_matrix(&m1_text).unwrap();
    assert_eq!(name, "M1");
    assert_eq!(m1.n(), 42);
    assert_eq!(m1.nnz(), 42 * 4);
    let tiles = std::fs::read_to_string(dir.join("tiles.txt")).unwrap();
    assert_eq!(tiles.lines().count(), 43);
    assert!(tiles.contains("tile 0 "));
}

#[test]
fn search_rediscovers_c1_and_respects_guards() {
    let dir = tmpdir("search_out");
    let out = run(&[
        "search",
        "--plane",
        "2",
        "--lambda",
        &fixture("c1.lam"),
        "--limit",
        "10",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("found=1"));
    assert!(text.contains("complete=true"));
    let found = std::fs::read_to_string(dir.join("presentation_000.tri")).unwrap();
    let expected = std::fs::read_to_string(fixture("c1.tri")).unwrap();
    assert_eq!(found, expected, "search output is the canonical C.1 file");

    // scope guard: q > 3 refused
    let out = run(&[
        "search",
        "--plane",
        "5",
        "--lambda",
        &fixture("c1.lam"),
        "--limit",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // limit 0 finds nothing
    let dir = tmpdir("search_empty");
    let out = run(&[
        "search",
        "--plane",
        "2",
        "--lambda",
        &fixture("c1.lam"),
        "--limit",
        "0",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tensor_of_identities_fails_the_h_gate_naming_the_condition() {
    let out = run(&[
        "ktheory",
        "--tensor",
        &fixture("identity2.m"),
        &fixture("identity2.m"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("H2"), "failing condition named: {err}");
    // the report still carries the H lines
    assert!(stdout(&out).contains("condition=H2 verdict=fail"));
}

#[test]
fn oneloop_graph_is_not_simple_but_computes() {
    let out = run(&["ktheory", "--graph", &fixture("oneloop.g")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict=not simple"));
    assert!(text.contains("K0=Z^2"));
}
