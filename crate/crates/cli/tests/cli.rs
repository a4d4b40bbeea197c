use std::path::{Path, PathBuf};
use std::process::Command;

use isomat_cli::run_command;
use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["isomat"];
    argv.extend_from_slice(args);
    let out = run_command(argv);
    let value = if out.stdout.is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
    };
    (out.code, value)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Fixtures {
    _dir: TempDir,
    k1: PathBuf,
    k1_looped: PathBuf,
    p3: PathBuf,
    p4: PathBuf,
    c4: PathBuf,
    bad: PathBuf,
}

fn fixtures() -> Fixtures {
    let dir = TempDir::new().unwrap();
    Fixtures {
        k1: write(&dir, "k1.json", r#"{"n":1,"edges":[],"loops":[]}"#),
        k1_looped: write(&dir, "k1l.json", r#"{"n":1,"edges":[],"loops":[0]}"#),
        p3: write(&dir, "p3.json", r#"{"n":3,"edges":[[0,1],[1,2]],"loops":[],"name":"P3"}"#),
        p4: write(&dir, "p4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3]],"loops":[]}"#),
        c4: write(&dir, "c4.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]],"loops":[]}"#),
        bad: write(&dir, "bad.json", r#"{"n":3,"edges":[],"loops":[5]}"#),
        _dir: dir,
    }
}

#[test]
fn interlace_on_k1() {
    let f = fixtures();
    let (code, v) = run(&["interlace", s(&f.k1)]);
    assert_eq!(code, 0);
    assert_eq!(v["q"], "y");
    assert_eq!(v["vertex_nullity"], "y");
    let (_, v) = run(&["interlace", s(&f.k1_looped)]);
    assert_eq!(v["q"], "x");
}

#[test]
fn equivalence_of_p4_and_c4() {
    let f = fixtures();
    let (code, v) = run(&["equiv", "--moves=pivots", s(&f.p4), s(&f.c4)]);
    assert_eq!(code, 0);
    assert_eq!(v["equivalent"], true);
    let (_, v) = run(&["equiv", "--moves=pivots", s(&f.k1), s(&f.k1_looped)]);
    assert_eq!(v["equivalent"], false);
}

#[test]
fn orbit_sizes() {
    let f = fixtures();
    let (code, v) = run(&["orbit", "--moves", "loops", s(&f.k1)]);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 2);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_triangle_suite() {
    let (code, v) = run(&["verify", "--suite=triangle", "--max-n=3"]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    assert!(v["cases"].as_u64().unwrap() > 0);
    let (code, _) = run(&["verify", "--suite=compatible", "--max-n=9"]);
    assert_eq!(code, 1);
    let (code, v) = run(&["verify", "--suite=all", "--max-n=2"]);
    assert_eq!(code, 0);
    assert_eq!(v["suites"].as_array().unwrap().len(), 13);
}

#[test]
fn info_section_delta_cycles_triangulations() {
    let f = fixtures();
    let (code, v) = run(&["info", s(&f.k1)]);
    assert_eq!(code, 0);
    assert_eq!(v["n"], 1);
    assert_eq!(v["matroid_loops"], serde_json::json!(["0_chi"]));
    assert_eq!(v["parallel_pairs"], serde_json::json!([["0_phi", "0_psi"]]));
    assert_eq!(v["components"].as_array().unwrap().len(), 2);

    let (_, v) = run(&["section", s(&f.k1)]);
    assert_eq!(v["section"], "u + 2");
    let (code, _) = run(&["section", "--preset", "bogus", s(&f.k1)]);
    assert_eq!(code, 1);

    let (_, v) = run(&["delta", s(&f.p3)]);
    assert_eq!(v["feasible"], serde_json::json!([[], [0, 1], [1, 2]]));

    let (_, v) = run(&["cycles", s(&f.p3)]);
    assert_eq!(v["count"], 8);
    assert_eq!(v["zeta"][1], serde_json::json!(["0_phi", "2_phi", "1_chi"]));

    let (_, v) = run(&["triangulations", s(&f.k1)]);
    assert_eq!(v["count"], 1);
}

#[test]
fn errors_and_exit_codes() {
    let f = fixtures();
    let (code, _) = run(&["interlace", s(&f.bad)]);
    assert_eq!(code, 1);
    let (code, _) = run(&["interlace", "/nonexistent/graph.json"]);
    assert_eq!(code, 1);
    let (code, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["orbit", "--moves=sideways", s(&f.k1)]);
    assert_eq!(code, 2);
    let (code, _) = run(&["--limit-n", "2", "interlace", s(&f.p3)]);
    assert_eq!(code, 1);
    let out = run_command(["isomat", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("interlace"));
}

#[test]
fn other_input_formats() {
    let dir = TempDir::new().unwrap();
    let g6 = write(&dir, "p3.g6", "Bg\n");
    let (_, v) = run(&["--format", "graph6", "interlace", s(&g6)]);
    let (_, expected) = run(&["interlace", s(&fixtures().p3)]);
    assert_eq!(v, expected);
    let looped = write(&dir, "k1.g6l", "@;L=1");
    let (_, v) = run(&["--format=g6loops", "interlace", s(&looped)]);
    assert_eq!(v["q"], "x");
}

#[test]
fn output_is_deterministic_and_pretty_prints() {
    let f = fixtures();
    let a = run_command(["isomat", "orbit", "--moves=full-local", s(&f.p4)]);
    let b = run_command(["isomat", "orbit", "--moves=full-local", s(&f.p4)]);
    assert_eq!(a, b);
    let pretty = run_command(["isomat", "--pretty", "interlace", s(&f.k1)]);
    assert!(pretty.stdout.contains("\n  \"q\": \"y\""));
}

#[test]
fn binary_matches_library() {
    let f = fixtures();
    let out = Command::new(env!("CARGO_BIN_EXE_isomat"))
        .args(["interlace", s(&f.k1)])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"q\":\"y\",\"vertex_nullity\":\"y\"}\n");
    let out = Command::new(env!("CARGO_BIN_EXE_isomat")).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
