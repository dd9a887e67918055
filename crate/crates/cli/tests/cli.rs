//! End-to-end tests of the `rdst` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const TRIANGLE: &str = "rct 3 3 3\ne 0 1 0\ne 1 2 1\ne 0 2 2\nc 0 1 1\nc 1 0 1\nc 1 1 0\n";

fn rdst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdst")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// The final stdout line, parsed as JSON.
fn summary(o: &Output) -> Value {
    let out = String::from_utf8_lossy(&o.stdout);
    serde_json::from_str(out.lines().last().expect("no output")).unwrap()
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn triangle_is_solved_by_the_cactus_family() {
    let d = TempDir::new().unwrap();
    let tri = file(&d, "tri.rct", TRIANGLE);
    let o = rdst(&["solve", &tri]);
    assert_eq!(code(&o), 0);
    let s = summary(&o);
    assert_eq!(s["opt"], 1);
    assert_eq!(s["algo"], "cactus");
    assert_eq!(s["witness_diameter"], 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("optimum: 1"));
}

#[test]
fn every_algorithm_agrees_on_triangle() {
    let d = TempDir::new().unwrap();
    let tri = file(&d, "tri.rct", TRIANGLE);
    for algo in ["auto", "brute", "cactus", "twdp"] {
        let o = rdst(&["solve", "--json", "--algo", algo, &tri]);
        assert_eq!(code(&o), 0, "{algo}");
        assert_eq!(summary(&o)["opt"], 1, "{algo}");
    }
}

#[test]
fn decision_mode_exit_codes() {
    let sat = corpus().join("sat1.rct");
    let o = rdst(&["solve", "--decision", "9", sat.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(summary(&o)["answer"], "yes");

    let unsat = corpus().join("unsat1.rct");
    let o = rdst(&["solve", "--algo", "brute", "--decision", "9", unsat.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert_eq!(summary(&o)["answer"], "no");
    assert_eq!(summary(&o)["witness"], Value::Null);
}

#[test]
fn enumeration_budget_exits_70() {
    let g = corpus().join("graph-2.rct");
    let o = rdst(&["solve", "--algo", "brute", "--max-trees", "10", g.to_str().unwrap()]);
    assert_eq!(code(&o), 70);
}

#[test]
fn table_cap_exits_70() {
    let g = corpus().join("part-yes.rct");
    let o = rdst(&["solve", "--algo", "twdp", "--table-cap", "5", g.to_str().unwrap()]);
    assert_eq!(code(&o), 70);
}

#[test]
fn cactus_on_non_cactus_exits_65() {
    let g = corpus().join("graph-1.rct");
    let o = rdst(&["solve", "--algo", "cactus", g.to_str().unwrap()]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a cactus"));
}

#[test]
fn parse_errors_exit_64() {
    let d = TempDir::new().unwrap();
    let bad = file(&d, "bad.rct", "rct 2 1 1\ne 0 7 0\nc 0\n");
    let o = rdst(&["solve", "--json", &bad]);
    assert_eq!(code(&o), 64);
    assert_eq!(summary(&o)["exit"], 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn disconnected_graph_exits_65() {
    let d = TempDir::new().unwrap();
    let g = file(&d, "g.rct", "rct 3 1 1\ne 0 1 0\nc 0\n");
    assert_eq!(code(&rdst(&["solve", &g])), 65);
}

#[test]
fn given_decomposition_is_used_and_checked() {
    let d = TempDir::new().unwrap();
    let tri = file(&d, "tri.rct", TRIANGLE);
    let good = file(&d, "good.td", "s td 1 3 3\nb 1 1 2 3\n");
    let o = rdst(&["solve", "--algo", "twdp", "--td", &good, &tri]);
    assert_eq!(code(&o), 0);
    assert_eq!(summary(&o)["method"], "given-decomposition");
    let bad = file(&d, "bad.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    assert_eq!(code(&rdst(&["solve", "--algo", "twdp", "--td", &bad, &tri])), 65);
}

#[test]
fn output_is_deterministic() {
    let g = corpus().join("cactus-3.rct");
    let a = rdst(&["solve", g.to_str().unwrap()]);
    let b = rdst(&["solve", g.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_partition_round_trips() {
    let d = TempDir::new().unwrap();
    let src = file(&d, "p.txt", "p part 2\n1 1\n");
    let out = d.path().join("out.rct");
    let o = rdst(&["gen", "partition", &src, out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let inst = reload_core::parse_instance(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(inst.budget, Some(2));
    assert_eq!(summary(&o)["budget"], 2);
}

#[test]
fn gen_random_cactus_is_deterministic() {
    let a = rdst(&["gen", "random-cactus", "--n", "12", "--seed", "7"]);
    let b = rdst(&["gen", "random-cactus", "--n", "12", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let inst = reload_core::parse_instance(&String::from_utf8_lossy(&a.stdout)).unwrap();
    assert_eq!(inst.graph.n(), 12);
    assert!(reload_core::cactus::is_cactus(&inst.graph));
    let c = rdst(&["gen", "random-cactus", "--n", "12", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gen_deg3_names_overused_variable() {
    let d = TempDir::new().unwrap();
    let src = file(&d, "f.cnf", "p cnf 2 2\n1 1 -1 0\n1 2 -2 0\n");
    let o = rdst(&["gen", "3sat-deg3", &src]);
    assert_eq!(code(&o), 65);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("x1"), "{err}");
    assert!(err.contains("f.cnf:3"), "{err}");
}

#[test]
fn gen_deg3_normalizes_on_request() {
    let d = TempDir::new().unwrap();
    let src = file(&d, "f.cnf", "p cnf 2 2\n1 2 0\n-1 -2 0\n");
    let out = d.path().join("o.rct");
    let o = rdst(&["gen", "3sat-deg3", "--normalize", &src, out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(summary(&o)["budget"], 0);
}

#[test]
fn validate_reports() {
    let d = TempDir::new().unwrap();
    let tri = file(&d, "tri.rct", TRIANGLE);
    let td = file(&d, "t.td", "s td 1 3 3\nb 1 1 2 3\n");
    let o = rdst(&["validate", "--td", &td, &tri]);
    assert_eq!(code(&o), 0);
    assert_eq!(summary(&o)["ok"], true);

    let asym = file(&d, "asym.rct", "rct 2 1 2\ne 0 1 0\nc 0 1\nc 2 0\n");
    let o = rdst(&["validate", &asym]);
    assert_eq!(code(&o), 1);
    assert_eq!(summary(&o)["failed"], serde_json::json!(["symmetry"]));

    let bad_td = file(&d, "bad.td", "s td 1 2 3\nb 1 1 2\n");
    let o = rdst(&["validate", "--td", &bad_td, &tri]);
    assert_eq!(code(&o), 1);
    assert_eq!(summary(&o)["failed"], serde_json::json!(["decomposition"]));
}

#[test]
fn validate_reports_triangle_violation_as_info() {
    let o = rdst(&["validate", corpus().join("deg3.rct").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("INFO triangle: triangle inequality violated"));
}

fn expected() -> Vec<Vec<String>> {
    std::fs::read_to_string(corpus().join("expected.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn bench_agrees_with_golden_optima() {
    let o = rdst(&["bench", corpus().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(summary(&o)["agree"], true);
    let out = String::from_utf8_lossy(&o.stdout);
    let mut checked = 0;
    for row in expected() {
        if row[1].is_empty() {
            continue;
        }
        for algo in ["auto", "brute"] {
            let line = format!("{},{algo},{},", row[0], row[1]);
            assert!(out.contains(&line), "missing {line}");
        }
        checked += 1;
    }
    assert!(checked >= 9);
}

#[test]
fn golden_budget_answers() {
    for row in expected() {
        if row[2].is_empty() {
            continue;
        }
        let path = corpus().join(&row[0]);
        let o = rdst(&["solve", "--json", "--algo", "brute", "--decision", &row[2], path.to_str().unwrap()]);
        assert_eq!(summary(&o)["answer"], row[3].as_str(), "{}", row[0]);
        assert_eq!(code(&o), if row[3] == "yes" { 0 } else { 2 });
    }
}
