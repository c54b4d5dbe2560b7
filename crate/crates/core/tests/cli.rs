use std::path::PathBuf;

use serde_json::Value;

use palc::cli::{run, EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE, EXIT_VACUOUS};

fn path(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel).display().to_string()
}

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn palc(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["palc"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("palc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.display().to_string()
}

fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(path("schema/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn json(o: &Output) -> Value {
    let v: Value = serde_json::from_str(&o.out).unwrap_or_else(|e| panic!("{e}: {}", o.out));
    let errors: Vec<String> = validator().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{}", o.out);
    v
}

fn rational(v: &Value) -> (i64, i64) {
    (v["num"].as_i64().unwrap(), v["den"].as_i64().unwrap())
}

#[test]
fn check_birds_with_both_methods() {
    let o = palc(&["check", &path("examples/birds.palc"), "--method", "both"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    assert!(o.out.contains("consistent (local)"));
    assert!(o.out.contains("consistent (exact)"));
}

#[test]
fn check_bad_interval_is_a_parse_error() {
    let o = palc(&["check", &path("tests/fixtures/bad_interval.palc")]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.err.contains("3:26: error: interval out of bounds"), "{}", o.err);
    assert!(o.out.is_empty());
}

#[test]
fn check_contradictory_prints_trace() {
    let o = palc(&["check", &path("tests/fixtures/contradictory.palc"), "--method", "local"]);
    assert_eq!(o.code, EXIT_INCONSISTENT);
    assert!(o.out.trim_end().ends_with("=> empty"), "{}", o.out);
}

#[test]
fn check_inconsistent_fixtures_exactly() {
    for name in ["contradictory", "axiom_conflict", "positivity"] {
        let o = palc(&["check", &path(&format!("tests/fixtures/{name}.palc")), "--method", "exact", "--json"]);
        assert_eq!(o.code, EXIT_INCONSISTENT, "{name}");
        let v = json(&o);
        assert_eq!(v["consistent"], Value::Bool(false));
        assert_eq!(v["local"], Value::Null);
    }
    let contradictory = palc(&["check", &path("tests/fixtures/contradictory.palc"), "--method", "exact"]);
    assert!(contradictory.out.contains("needs `A` to be non-empty"), "{}", contradictory.out);
    let everywhere = temp_file("everywhere.palc", "concept A. pcond top -> A : [0.2, 0.3]. pcond top -> A : [0.5, 0.6].");
    let o = palc(&["check", &everywhere, "--method", "exact"]);
    assert_eq!(o.code, EXIT_INCONSISTENT);
    assert!(o.out.contains("certificate"), "{}", o.out);
    assert!(o.out.contains("bound of conditioning #1"), "{}", o.out);
}

#[test]
fn classify_examples() {
    let o = palc(&["classify", &path("examples/birds.palc")]);
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<&str> = o.out.lines().collect();
    assert!(lines.contains(&"penguin < antarctic_bird"));
    assert!(lines.contains(&"antarctic_bird < bird"));

    let v1 = palc(&["classify", &path("examples/birds_v1.palc")]);
    assert!(v1.out.lines().any(|l| l == "bird < animal"));
    assert!(!v1.out.contains("flying_object"));

    let empty = palc(&["classify", &temp_file("empty.palc", "# nothing\n")]);
    assert_eq!(empty.out, "bottom < top\n");

    let j = palc(&["classify", &path("examples/birds.palc"), "--json"]);
    let v = json(&j);
    assert!(v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["child"] == "penguin" && e["parent"] == "antarctic_bird"));
}

#[test]
fn classify_reports_parse_failures() {
    let o = palc(&["classify", &temp_file("broken.palc", "concept a\n")]);
    assert_eq!(o.code, EXIT_USAGE);
}

#[test]
fn query_example_five() {
    let o = palc(&[
        "query",
        &path("examples/birds.palc"),
        "--from",
        "antarctic_bird",
        "--to",
        "flying_object",
        "--method",
        "both",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    assert!(o.out.contains("local: [3/4, 1] (0.7500, 1.0000)"), "{}", o.out);
    assert!(o.out.contains("exact: [3/4, 1]"));
    assert!(o.out.contains("agreement: equal"));

    let o = palc(&["query", &path("examples/birds.palc"), "--from", "bird", "--to", "penguin"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.out.contains("[0, 1/20]"));
    assert!(o.err.contains("hint:"));
}

#[test]
fn query_json_report() {
    let o = palc(&[
        "query",
        &path("examples/birds.palc"),
        "--from",
        "bird",
        "--to",
        "penguin",
        "--method",
        "both",
        "--json",
        "--trace",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(rational(&v["local"]["hi"]), (1, 20));
    assert_eq!(rational(&v["exact"]["lo"]), (0, 1));
    assert_eq!(v["agreement"], "equal");
    assert!(!v["trace"].as_array().unwrap().is_empty());
    assert!(o.err.is_empty());
}

#[test]
fn query_vacuous_antecedent() {
    for method in ["local", "exact", "both"] {
        let o = palc(&[
            "query",
            &path("examples/birds.palc"),
            "--from",
            "(and bird (not bird))",
            "--to",
            "penguin",
            "--method",
            method,
        ]);
        assert_eq!(o.code, EXIT_VACUOUS, "{method}");
    }
}

#[test]
fn query_errors() {
    let birds = path("examples/birds.palc");
    let undeclared = palc(&["query", &birds, "--from", "dragon", "--to", "bird"]);
    assert_eq!(undeclared.code, EXIT_USAGE);
    let malformed = palc(&["query", &birds, "--from", "(and bird", "--to", "bird"]);
    assert_eq!(malformed.code, EXIT_USAGE);
    let inconsistent = palc(&["query", &path("tests/fixtures/positivity.palc"), "--from", "A", "--to", "B"]);
    assert_eq!(inconsistent.code, EXIT_INCONSISTENT);
    let usage = palc(&["query", &birds]);
    assert_eq!(usage.code, EXIT_USAGE);
}

#[test]
fn query_rewrites_role_restrictions_to_definitions() {
    let o = palc(&[
        "query",
        &path("examples/birds.palc"),
        "--from",
        "bird",
        "--to",
        "(all moves_by flying)",
        "--method",
        "both",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    assert!(o.out.contains("exact: [19/20, 1]"), "{}", o.out);
}

#[test]
fn ranges_tables() {
    let o = palc(&["ranges", &path("examples/birds.palc"), "--method", "exact"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.out.lines().any(|l| l.starts_with("bird -> antarctic_bird : [1/5, 1/5]")), "{}", o.out);

    let single = palc(&["ranges", &temp_file("single.palc", "concept a.\n")]);
    assert_eq!(single.out.lines().collect::<Vec<_>>(), ["a -> a : [1, 1] (1.0000, 1.0000)"]);
}

#[test]
fn ranges_compare_flags_every_row() {
    let o = palc(&["ranges", &path("examples/birds.palc"), "--compare", "--json"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.err);
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 49);
    for row in rows {
        let a = row["agreement"].as_str().unwrap();
        assert!(["equal", "local_contains_exact"].contains(&a), "{row}");
    }
    assert!(v["max_slack"].is_object());
}

#[test]
fn outputs_are_deterministic() {
    let args = ["ranges", &path("examples/birds.palc"), "--compare"].map(String::from);
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let first = palc(&argv);
    let second = palc(&argv);
    assert_eq!(first.out, second.out);
    assert!(first.out.contains("max slack"));
}

#[test]
fn timings_are_opt_in() {
    let birds = path("examples/birds.palc");
    let plain = palc(&["check", &birds, "--method", "both", "--json"]);
    assert!(json(&plain).get("timings").is_none());
    let timed = palc(&["check", &birds, "--method", "both", "--json", "--timings"]);
    let v = json(&timed);
    assert!(v["timings"]["local_ms"].is_number());
    assert!(v["timings"]["exact_ms"].is_number());
}

#[test]
fn atom_cap_limits_the_exact_method() {
    let o = palc(&["check", &path("examples/birds.palc"), "--method", "exact", "--atom-cap", "3"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.err.contains("at most 3"), "{}", o.err);
}

#[test]
fn sweep_cap_is_reported() {
    let o = palc(&["check", &path("examples/birds.palc"), "--max-sweeps", "1"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.err.contains("without reaching a fixpoint"));
}

#[test]
fn help_goes_to_stdout() {
    let o = palc(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    for cmd in ["check", "classify", "query", "ranges"] {
        assert!(o.out.contains(cmd));
    }
}
