mod common;

use std::path::Path;
use std::process::{Command, Output};

use design_analyzer::synth::star_corpus;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_design-analyzer"))
        .args(args)
        .env("DESIGN_ANALYZER_NO_COLOR", "1")
        .output()
        .unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn empty_directory_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["analyze", arg(dir.path())]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("no .java files"));
}

#[test]
fn analyze_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (dot, csv, json) = (
        dir.path().join("g.dot"),
        dir.path().join("m.csv"),
        dir.path().join("r.json"),
    );
    let corpus = common::fixture("corpus");
    let o = run(&[
        "analyze",
        arg(&corpus),
        "--dot",
        arg(&dot),
        "--csv",
        arg(&csv),
        "--json",
        arg(&json),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("13 classes"));

    let g = common::parse_dot(&std::fs::read_to_string(&dot).unwrap()).unwrap();
    assert_eq!(g.nodes.len(), 13);

    let csv = std::fs::read_to_string(&csv).unwrap();
    assert!(csv.starts_with("class,nucd,tnucd,nucc,tnucc,class_coupling,visible_members\n"));
    assert_eq!(csv.lines().count(), 14);
    assert!(!csv.contains('\r'));

    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "schema",
            "summary",
            "interactions",
            "metrics",
            "pca",
            "selection",
            "diagnostics",
            "tool"
        ]
    );
    assert_eq!(v["schema"], 1);
    assert!(v["pca"].is_null());
    assert!(v["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .all(|d| d["location"].is_string()));
}

#[test]
fn three_file_toy_corpus_dot() {
    let dir = tempfile::tempdir().unwrap();
    common::write_corpus(
        dir.path(),
        &[
            ("A.java".into(), "class A {}\n".into()),
            ("B.java".into(), "class B extends A { C c; }\n".into()),
            (
                "C.java".into(),
                "class C { A make(A x) { return x; } }\n".into(),
            ),
        ],
    );
    let dot = dir.path().join("g.dot");
    let o = run(&["analyze", arg(dir.path()), "--dot", arg(&dot)]);
    assert_eq!(o.status.code(), Some(0));
    let g = common::parse_dot(&std::fs::read_to_string(&dot).unwrap()).unwrap();
    assert_eq!(g.nodes.len(), 3);
    let mut edges: Vec<(String, String, String, String)> = g
        .edges
        .into_iter()
        .map(|(a, b, attrs)| (a, b, attrs[0].1.clone(), attrs[1].1.clone()))
        .collect();
    edges.sort();
    let expected = [
        ("B", "A", "Inheritance", "solid"),
        ("B", "C", "ObjectDeclaration", "solid"),
        ("C", "A", "Parameter", "dashed"),
        ("C", "A", "ReturnType", "dashed"),
    ];
    let expected: Vec<(String, String, String, String)> = expected
        .iter()
        .map(|(a, b, c, d)| (a.to_string(), b.to_string(), c.to_string(), d.to_string()))
        .collect();
    assert_eq!(edges, expected);
}

#[test]
fn one_corrupt_file_gives_one_warning() {
    let dir = tempfile::tempdir().unwrap();
    common::write_corpus(
        dir.path(),
        &[
            ("A.java".into(), "class A { B b; }\n".into()),
            ("B.java".into(), "class B {}\n".into()),
            ("Broken.java".into(), "class Broken { void m() {\n".into()),
        ],
    );
    let json = dir.path().join("r.json");
    let o = run(&["analyze", arg(dir.path()), "--json", arg(&json)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let warnings: Vec<_> = v["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["severity"] == "warning")
        .collect();
    assert_eq!(warnings.len(), 1);
    assert!(warnings[0]["location"]
        .as_str()
        .unwrap()
        .contains("Broken.java"));
    assert_eq!(v["summary"]["classes"], 2);

    let strict = run(&["analyze", arg(dir.path()), "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn single_class_pca_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    common::write_corpus(
        dir.path(),
        &[("A.java".into(), "class A { int x; }\n".into())],
    );
    for mode in ["measures", "classes"] {
        let o = run(&["pca", arg(dir.path()), "--mode", mode]);
        assert_eq!(o.status.code(), Some(3), "{mode}: {}", stderr(&o));
    }
}

#[test]
fn identical_classes_have_no_variance() {
    let dir = tempfile::tempdir().unwrap();
    common::write_corpus(
        dir.path(),
        &[
            ("A.java".into(), "class A { }\n".into()),
            ("B.java".into(), "class B { }\n".into()),
        ],
    );
    let o = run(&["pca", arg(dir.path()), "--mode", "measures"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("variance"));
}

#[test]
fn pca_measures_report() {
    let corpus = common::fixture("corpus");
    let o = run(&["pca", arg(&corpus), "--mode", "measures"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("Most significant measure:"));
    assert!(out.contains("% variance retained"));
}

#[test]
fn star_corpus_recommends_a_leaf() {
    let dir = tempfile::tempdir().unwrap();
    common::write_corpus(dir.path(), &star_corpus(8));
    let json = dir.path().join("r.json");
    let o = run(&[
        "pca",
        arg(dir.path()),
        "--mode",
        "classes",
        "--json",
        arg(&json),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("Recommended attachment point: Leaf"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_ne!(v["selection"]["chosen"], "Hub");
    assert_eq!(v["pca"]["covariance_divisor"], "1/n");

    let rec = run(&["recommend", arg(dir.path())]);
    assert_eq!(rec.status.code(), Some(0));
    assert!(stdout(&rec).starts_with("Attach new code to Leaf"));
}

#[test]
fn whatif_validation_exits_4() {
    let corpus = common::fixture("corpus");
    let collision = run(&[
        "whatif",
        arg(&corpus),
        "--new",
        "Order",
        "--connect",
        "Item",
    ]);
    assert_eq!(collision.status.code(), Some(4));
    let unknown = run(&[
        "whatif",
        arg(&corpus),
        "--new",
        "Toolbar",
        "--connect",
        "Nope",
    ]);
    assert_eq!(unknown.status.code(), Some(4));
}

#[test]
fn whatif_reports_local_diff() {
    let dir = tempfile::tempdir().unwrap();
    let (before, after, json) = (
        dir.path().join("b.dot"),
        dir.path().join("a.dot"),
        dir.path().join("w.json"),
    );
    let corpus = common::fixture("corpus");
    let o = run(&[
        "whatif",
        arg(&corpus),
        "--new",
        "Toolbar",
        "--connect",
        "Ledger,Screen",
        "--dot-before",
        arg(&before),
        "--dot-after",
        arg(&after),
        "--json",
        arg(&json),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let b = common::parse_dot(&std::fs::read_to_string(&before).unwrap()).unwrap();
    let a = common::parse_dot(&std::fs::read_to_string(&after).unwrap()).unwrap();
    assert_eq!(a.nodes.len(), b.nodes.len() + 1);
    assert_eq!(a.edges.len(), b.edges.len() + 2);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let diff = v["diff"].as_array().unwrap();
    let existing: Vec<&str> = diff
        .iter()
        .filter(|d| d["added"] == false)
        .map(|d| d["class"].as_str().unwrap())
        .collect();
    assert_eq!(existing, ["app.billing.Ledger", "app.ui.Screen"]);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = common::fixture("corpus");
    let mut runs = Vec::new();
    for i in 0..2 {
        let json = dir.path().join(format!("r{i}.json"));
        let dot = dir.path().join(format!("g{i}.dot"));
        let o = run(&[
            "pca",
            arg(&corpus),
            "--mode",
            "classes",
            "--json",
            arg(&json),
        ]);
        assert_eq!(o.status.code(), Some(0));
        run(&["analyze", arg(&corpus), "--dot", arg(&dot)]);
        runs.push((
            stdout(&o),
            std::fs::read(&json).unwrap(),
            std::fs::read(&dot).unwrap(),
        ));
    }
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn sequential_flag_gives_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = common::fixture("corpus");
    let (p, s) = (dir.path().join("p.json"), dir.path().join("s.json"));
    run(&["analyze", arg(&corpus), "--json", arg(&p)]);
    run(&["--sequential", "analyze", arg(&corpus), "--json", arg(&s)]);
    assert_eq!(std::fs::read(p).unwrap(), std::fs::read(s).unwrap());
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    let corpus = common::fixture("corpus");
    let o = run(&[
        "pca",
        arg(&corpus),
        "--mode",
        "classes",
        "--variance-target",
        "1.5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
