use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hyperirreg::{parse_hgr, parse_trace};
use tempfile::TempDir;

const PATH: &str = "hgr 3 5 2\n1 2 3\n1 4 5\npartition 1 2 3 2 3\n";
const STAR: &str = "# three edges through vertex 1\nhgr 3 7 3\n1 2 3\n1 4 5\n1 6 7\n";

fn hyperirreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperirreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_json_reports_measures_and_bounds() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "path.hgr", PATH);
    let out = hyperirreg(&["analyze", &file, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["n"], 5);
    assert_eq!(json["m"], 2);
    let rho = json["rho"].as_f64().unwrap();
    assert!((rho - 2f64.cbrt()).abs() < 1e-8);
    assert_eq!(json["s"].as_f64().unwrap(), 1.6);
    let bounds = json["bounds"].as_array().unwrap();
    assert!(bounds.iter().all(|b| b["holds"] == true));
    assert!(bounds.iter().any(|b| b["name"] == "theorem1"));
}

#[test]
fn analyze_text_without_partition_skips_partite_checks() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "star.hgr", STAR);
    let out = hyperirreg(&["analyze", &file]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("cooper_dutle"));
    assert!(text.contains("theorem1             skipped: no partition"));
}

#[test]
fn external_partition_file_overrides() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "star.hgr", STAR);
    let part = write(&dir, "star.part", "partition 1 2 3 2 3 2 3\n");
    let out = hyperirreg(&["analyze", &file, "--partition", &part, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(json["s_r"].as_f64().is_some());
}

#[test]
fn invalid_partition_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "star.hgr", STAR);
    let part = write(&dir, "bad.part", "partition 1 1 3 2 3 2 3\n");
    let out = hyperirreg(&["analyze", &file, "--partition", &part]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_two_with_line_number() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.hgr", "hgr 3 5 2\n1 2\n");
    let out = hyperirreg(&["analyze", &file]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = dir.path().join("missing.hgr");
    let out = hyperirreg(&["analyze", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nonconvergence_exits_three() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "star.hgr", STAR);
    let out = hyperirreg(&["analyze", &file, "--max-iterations", "1", "--solver-tol", "1e-15"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn regularize_star_writes_output_and_trace() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "star.hgr", STAR);
    let target = dir.path().join("out.hgr");
    let out = hyperirreg(&["regularize", &file, "-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("swaps      1"));
    assert!(text.contains("spread     2 -> 1"));

    let input = parse_hgr(STAR).unwrap().hypergraph;
    let output = parse_hgr(&fs::read_to_string(&target).unwrap()).unwrap().hypergraph;
    let trace_path = Path::new(target.to_str().unwrap()).with_extension("hgr.trace");
    let (r, trace) = parse_trace(&fs::read_to_string(trace_path).unwrap()).unwrap();
    assert_eq!(r, 3);
    assert_eq!(trace.replay(&input).unwrap(), output);
    assert!(output.max_degree() - output.min_degree() <= 1);
}

#[test]
fn partitewise_regularize_keeps_partition_line() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "p.hgr", "hgr 3 6 2\n1 3 5\n1 4 6\npartition 1 1 2 2 3 3\n");
    let target = dir.path().join("out.hgr");
    let out = hyperirreg(&["regularize", &file, "--partitewise", "-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse_hgr(&fs::read_to_string(&target).unwrap()).unwrap();
    let p = doc.partition.expect("partition written");
    assert!(doc.hypergraph.validate_partition(&p));

    let plain = write(&dir, "plain.hgr", STAR);
    let out = hyperirreg(&["regularize", &plain, "--partitewise", "-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn transforms_produce_expected_sizes() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "path.hgr", PATH);
    let edge = write(&dir, "edge.hgr", "hgr 3 3 1\n1 2 3\n");

    let product = parse_hgr(&stdout(&hyperirreg(&["transform", "product", &path, &edge])))
        .unwrap()
        .hypergraph;
    assert_eq!((product.vertex_count(), product.edge_count()), (15, 12));

    let blown = parse_hgr(&stdout(&hyperirreg(&["transform", "blowup", &path, "--k", "2"])))
        .unwrap()
        .hypergraph;
    assert_eq!((blown.vertex_count(), blown.edge_count()), (10, 16));

    let target = dir.path().join("u.hgr");
    let out = hyperirreg(&["transform", "union", &path, &edge, "-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let union = parse_hgr(&fs::read_to_string(&target).unwrap()).unwrap().hypergraph;
    assert_eq!((union.vertex_count(), union.edge_count()), (5, 2));

    let out = hyperirreg(&["transform", "blowup", &path, "--ks", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_is_seeded() {
    let a = hyperirreg(&["generate", "--r", "3", "--n", "8", "--m", "10", "--seed", "4"]);
    let b = hyperirreg(&["generate", "--r", "3", "--n", "8", "--m", "10", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let h = parse_hgr(&stdout(&a)).unwrap().hypergraph;
    assert_eq!(h.edge_count(), 10);

    let too_many = hyperirreg(&["generate", "--r", "3", "--n", "4", "--m", "5"]);
    assert_eq!(too_many.status.code(), Some(2));
}

#[test]
fn verify_passes_and_rejects_infeasible_parameters() {
    let out = hyperirreg(&["verify", "--count", "40", "--partite", "2,2,2", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("result PASS\n"));

    let out = hyperirreg(&["verify", "--r", "3", "--n", "4", "--m", "9"]);
    assert_eq!(out.status.code(), Some(2));
}
