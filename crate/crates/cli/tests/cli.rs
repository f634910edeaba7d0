use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unicayley"))
        .args(args)
        .env_remove("UNICAYLEY_BUDGET_NODES")
        .env_remove("UNICAYLEY_BUDGET_SECONDS")
        .env_remove("UNICAYLEY_MAX_ORDER")
        .env_remove("UNICAYLEY_MAX_VERTICES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> (serde_json::Value, String) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = run(&full);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1, "one JSON object per run: {text}");
    (serde_json::from_str(&text).expect("valid JSON"), text)
}

#[test]
fn alpha_of_m2_f2() {
    let o = run(&["alpha", "--ring", "M(2,GF(2))"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn classify_triangular_over_f2() {
    let o = run(&["classify", "--ring", "T(3,GF(2))", "--question", "wellcovered"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("answer: yes"), "{out}");
    assert!(out.contains("clause: Z_2^k"), "{out}");
    let (v, _) = json(&["classify", "--ring", "T(3,GF(2))"]);
    assert_eq!(v["answer"], true);
    assert_eq!(v["clause"], "Z_2^k");
}

#[test]
fn wellcovered_hexagon() {
    let o = run(&["wellcovered", "--ring", "Z(6)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("well-covered: no"), "{out}");
    assert!(out.contains("witness: {0, 3}"), "{out}");
    let (v, _) = json(&["wellcovered", "--ring", "Z(6)"]);
    assert_eq!(v["answer"], "no");
    assert_eq!(v["witness_small"], serde_json::json!([0, 3]));
}

#[test]
fn streaming_prints_one_set_per_line() {
    let o = run(&["wellcovered", "--ring", "Z(6)", "--stream"]);
    let out = stdout(&o);
    let sets: Vec<&str> = out.lines().take_while(|l| !l.starts_with("ring:")).collect();
    let mut sorted = sets.clone();
    sorted.sort();
    assert_eq!(sorted, vec!["0 2 4", "0 3", "1 3 5", "1 4", "2 5"]);
    assert_eq!(run(&["wellcovered", "--ring", "Z(6)", "--stream", "--format", "json"]).status.code(), Some(1));
}

#[test]
fn exhausted_budget_exits_with_two() {
    let o = run(&["wellcovered", "--ring", "M(2,GF(3))", "--budget-nodes", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("inconclusive"));
    let o = run(&["alpha", "--ring", "M(2,GF(3))", "--budget-nodes", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_unicayley"))
        .args(["wellcovered", "--ring", "M(2,GF(3))"])
        .env("UNICAYLEY_BUDGET_NODES", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_and_semantic_errors_exit_with_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["alpha"]).status.code(), Some(1));
    assert_eq!(run(&["alpha", "--ring", "M(2 GF(2))"]).status.code(), Some(1));
    assert_eq!(run(&["alpha", "--ring", "T(2,Z(6))"]).status.code(), Some(1));
    assert_eq!(run(&["alpha", "--ring", "Z(6)", "--budget-nodes", "0"]).status.code(), Some(1));
    assert_eq!(run(&["alpha", "--ring", "Z(6)", "--format", "dot"]).status.code(), Some(1));
    assert_eq!(run(&["graph", "--ring", "M(2,GF(3))", "--max-vertices", "80"]).status.code(), Some(1));
    let o = run(&["alpha", "--ring", "M(2 GF(2))"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected ','"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: &[&[&str]] = &[
        &["ring", "--ring", "M(2,Z(4))"],
        &["graph", "--ring", "Z(6)"],
        &["alpha", "--ring", "M(2,GF(3))"],
        &["wellcovered", "--ring", "prod(Z(2),M(2,GF(2)))"],
        &["classify", "--ring", "M(2,Z(4))", "--question", "cm"],
        &["radical", "--ring", "T(2,GF(3))"],
        &["complex", "--ring", "Z(4)", "--shelling"],
        &["export", "--ring", "Z(4)"],
        &["construct", "refute", "--ring", "M(3,GF(2))"],
        &["verify-paper"],
    ];
    for args in cases {
        let (v, text) = json(args);
        let again = serde_json::to_string(&v).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn identical_configuration_gives_identical_output() {
    for args in [
        &["verify-paper", "--seed", "5"][..],
        &["wellcovered", "--ring", "M(2,GF(3))", "--threads", "4", "--format", "json"][..],
        &["complex", "--ring", "T(2,GF(2))"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn threads_do_not_change_the_report() {
    let (one, _) = json(&["wellcovered", "--ring", "M(2,GF(3))", "--no-seeds"]);
    let (four, _) = json(&["wellcovered", "--ring", "M(2,GF(3))", "--no-seeds", "--threads", "4"]);
    assert_eq!(one, four);
    assert_eq!(one["counts"], serde_json::json!([[9, 72]]));
}

#[test]
fn ring_queries() {
    assert_eq!(stdout(&run(&["ring", "--ring", "Z(6)", "--op", "sub", "-a", "1", "-b", "5"])), "2\n");
    assert_eq!(stdout(&run(&["ring", "--ring", "Z(6)", "--is-unit", "5"])), "yes\n");
    assert_eq!(stdout(&run(&["ring", "--ring", "M(2,Z(4))", "--det", "1,2;3,1"])), "3\n");
    assert_eq!(stdout(&run(&["ring", "--ring", "M(2,GF(2))", "--describe", "9"])), "1,0;0,1\n");
    let (v, _) = json(&["ring", "--ring", "M(2,GF(2))"]);
    assert_eq!((v["order"].as_u64(), v["unit_count"].as_u64()), (Some(16), Some(6)));
    assert_eq!(run(&["ring", "--ring", "Z(6)", "--is-unit", "6"]).status.code(), Some(1));
}

#[test]
fn graph_formats() {
    let dot = stdout(&run(&["graph", "--ring", "Z(4)", "--format", "dot"]));
    assert!(dot.starts_with("graph G {\n"));
    assert_eq!(dot.matches(" -- ").count(), 4);
    let (v, _) = json(&["graph", "--ring", "Z(4)"]);
    assert_eq!(v, serde_json::json!({"N": 4, "edges": [[0, 1], [0, 3], [1, 2], [2, 3]]}));
}

#[test]
fn complex_obstructions() {
    let out = stdout(&run(&["complex", "--ring", "M(2,GF(2))", "--top-skeleton", "--shelling"]));
    assert!(out.contains("connected in codimension 1: no (24 components)"), "{out}");
    assert!(out.contains("shelling: none exists"), "{out}");
    let (v, _) = json(&["complex", "--ring", "GF(5)", "--shelling"]);
    assert_eq!(v["shelling"]["status"], "found");
    let (v, _) = json(&["complex", "--ring", "Z(6)", "--skeleton", "2"]);
    assert_eq!(v["facets"], serde_json::json!([[0, 2, 4], [1, 3, 5]]));
}

#[test]
fn exports() {
    let out = stdout(&run(&["export", "--ring", "Z(4)"]));
    assert_eq!(out, "-- variables: 4 (x_0..x_3)\nx_0*x_1\nx_0*x_3\nx_1*x_2\nx_2*x_3\n");
    let sr = stdout(&run(&["export", "--ring", "Z(4)", "--kind", "stanley-reisner"]));
    assert_eq!(sr, out);
}

#[test]
fn constructions() {
    let d = stdout(&run(&["construct", "diagonal", "--field", "GF(5)", "--n", "3", "--k", "1", "--l", "2", "--coeffs", "3,4"]));
    assert_eq!(d, "0,4,0;0,0,0;3,0,0\n");
    let (v, _) = json(&["construct", "family", "--field", "GF(2)", "--n", "3"]);
    assert_eq!(v["size"], 10);
    let b = stdout(&run(&["construct", "avoid", "--field", "GF(2)", "--matrix", "1,0;0,0"]));
    assert!(b.starts_with("0,0;0,1\n"), "{b}");
    let (v, _) = json(&["construct", "product", "--ring", "Z(2)", "--n", "2", "--field", "GF(2)"]);
    assert_eq!((v["small_size"].as_u64(), v["large_size"].as_u64()), (Some(11), Some(16)));
    let (v, _) = json(&["construct", "refute", "--ring", "M(3,GF(2))"]);
    assert!(v["size"].as_u64().unwrap() < 64);
    assert_eq!(v["zero_pattern"], true);
}

#[test]
fn verify_paper_reports_named_checks() {
    let o = run(&["verify-paper", "--scale", "small"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("PASS thm-mnf-refute-3-2:")));
    assert!(out.lines().any(|l| l.starts_with("PASS prop-rj-z4:")));
    assert!(out.trim_end().ends_with("0 failed"));
}
