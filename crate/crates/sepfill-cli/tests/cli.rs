use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sepfill"))
}

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn sepfill")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn bound_reports_worked_values_for_large_separator() {
    let out = run(&["bound", "--input", &data("fig1.gr"), "--separator", "3,4,5,8"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("clique_bound: 5"), "{text}");
    assert!(text.contains("components_bound: 2"), "{text}");
    assert!(text.contains("corollary_bound: 4"), "{text}");
    assert!(text.contains("tw_hs: 2"), "{text}");
    assert!(text.contains("fill_edges: 0"), "{text}");
}

#[test]
fn bound_reports_worked_values_for_small_separator() {
    let out = run(&["bound", "--input", &data("fig1.gr"), "--separator", "3,5,8"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("clique_bound: 4"), "{text}");
    assert!(text.contains("components_bound: 3"), "{text}");
    assert!(text.contains("fill_edges: 1"), "{text}");
}

#[test]
fn bound_search_finds_score_two() {
    let out = run(&["bound", "--input", &data("fig1.gr"), "--search"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("components_bound: 2"));
}

#[test]
fn bound_json_is_byte_stable() {
    let args = [
        "bound",
        "--input",
        &data("fig1.gr"),
        "--search",
        "--json",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid json");
    assert_eq!(doc["components_bound"], 2);
}

#[test]
fn decompose_then_validate_round_trips() {
    let dir = tempfile::tempdir().expect("tempdir");
    let td = dir.path().join("fig1.td");
    let td = td.to_str().expect("utf8 path");
    let out = run(&["decompose", "--input", &data("fig1.gr"), "--output", td]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("width: 2"));

    let check = run(&["validate", "--graph", &data("fig1.gr"), "--td", td]);
    assert!(check.status.success());
    assert!(stdout_of(&check).starts_with("valid"));
}

#[test]
fn validate_flags_bad_decomposition() {
    let dir = tempfile::tempdir().expect("tempdir");
    let td_path = dir.path().join("bad.td");
    // One bag, missing most vertices and edges.
    std::fs::write(&td_path, "s td 1 2 10\nb 1 1 2\n").expect("write td");
    let out = run(&[
        "validate",
        "--graph",
        &data("fig1.gr"),
        "--td",
        td_path.to_str().expect("utf8 path"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("violation"));
}

#[test]
fn validate_rejects_unknown_vertex_as_format_error() {
    let dir = tempfile::tempdir().expect("tempdir");
    let td_path = dir.path().join("big.td");
    std::fs::write(&td_path, "s td 1 11 11\nb 1 1 2 3 4 5 6 7 8 9 10 11\n").expect("write td");
    let out = run(&[
        "validate",
        "--graph",
        &data("fig1.gr"),
        "--td",
        td_path.to_str().expect("utf8 path"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_treewidth_of_fixtures() {
    let out = run(&["exact", "--input", &data("fig1.gr")]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("treewidth: 2"));

    let out = run(&["exact", "--input", &data("path10.gr")]);
    assert!(stdout_of(&out).contains("treewidth: 1"));

    let out = run(&["exact", "--input", &data("k5.gr")]);
    assert!(stdout_of(&out).contains("treewidth: 4"));

    let out = run(&["exact", "--input", &data("empty.gr")]);
    assert!(stdout_of(&out).contains("treewidth: -1"));
}

#[test]
fn csp_alldiff_unsat_then_sat() {
    let unsat = run(&[
        "csp",
        "solve",
        "--graph",
        &data("fig1.gr"),
        "--constraints",
        &data("alldiff_d2.cst"),
        "--separator",
        "3,4,5,8",
    ]);
    assert!(unsat.status.success());
    assert!(stdout_of(&unsat).contains("satisfiable: false"));

    let sat = run(&[
        "csp",
        "solve",
        "--graph",
        &data("fig1.gr"),
        "--constraints",
        &data("alldiff_d3.cst"),
        "--separator",
        "3,4,5,8",
        "--recurse",
        "--stats",
    ]);
    assert!(sat.status.success());
    let text = stdout_of(&sat);
    assert!(text.contains("satisfiable: true"), "{text}");
    assert!(text.contains("witness:"), "{text}");
    assert!(text.contains("cache_entries:"), "{text}");
}

#[test]
fn csp_plain_backtracking_agrees() {
    let out = run(&[
        "csp",
        "solve",
        "--graph",
        &data("fig1.gr"),
        "--constraints",
        &data("alldiff_d3.cst"),
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("satisfiable: true"));
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    // Malformed input file.
    let dir = tempfile::tempdir().expect("tempdir");
    let bad = dir.path().join("bad.gr");
    std::fs::write(&bad, "p tw 3 1\n1 4\n").expect("write gr");
    let out = run(&["exact", "--input", bad.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(2));

    // Separator vertex outside the graph.
    let out = run(&["bound", "--input", &data("fig1.gr"), "--separator", "99"]);
    assert_eq!(out.status.code(), Some(3));

    // Clique has no separator to search for.
    let out = run(&["bound", "--input", &data("k5.gr"), "--search"]);
    assert_eq!(out.status.code(), Some(3));

    // Exact solver refuses graphs over the limit.
    let out = run(&["exact", "--input", &data("fig1.gr"), "--limit", "4"]);
    assert_eq!(out.status.code(), Some(3));
}
