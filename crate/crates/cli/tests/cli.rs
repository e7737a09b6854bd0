mod common;

use common::{invoke, invoke_with_stdin, malformed_corpus};
use defkit_cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn json(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("stdout is one JSON document")
}

#[test]
fn analyze_reports_a2() {
    let out = invoke(&["singularity", "analyze", "--vars", "x,y,z", "--poly", "x*y - z^3"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v = json(&out.stdout);
    assert_eq!(v["command"], "singularity analyze");
    assert_eq!(v["result"]["mu"], 2);
    assert_eq!(v["result"]["tau"], 2);
    assert_eq!(v["result"]["ade"], "A2");
    assert_eq!(v["errors"], Value::Array(vec![]));
}

#[test]
fn nodal_bounds_table_contains_barth() {
    let v = json(&invoke(&["surface", "nodal-bounds", "--d", "6"]).stdout);
    let row = &v["result"]["rows"][0];
    assert_eq!(row["record"]["mu_known"], 65);
    assert_eq!(row["severi"], 68);
    assert_eq!(v["result"]["first_segre_above_severi"], 16);
}

#[test]
fn flop_reports_the_indeterminacy_ideal() {
    let v = json(&invoke(&["resolve", "flop"]).stdout);
    assert_eq!(v["result"]["dimension"], 1);
    assert_eq!(v["result"]["in_central_fiber"], true);
    assert_eq!(v["result"]["after_inverting_tau"], serde_json::json!(["1"]));
}

#[test]
fn poly_from_stdin() {
    let out = invoke_with_stdin(&["singularity", "analyze", "--vars", "u,v,w", "--poly", "-"], "w^2 - u*v\n");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(json(&out.stdout)["result"]["ade"], "A1");
}

#[test]
fn only_one_stdin_poly() {
    let out = invoke_with_stdin(&["deform", "semiuniversal", "--vars", "x,y,z", "--poly", "-", "--poly", "-"], "x");
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn same_arguments_same_bytes() {
    let args = ["surface", "segre", "--d", "2", "--seed", "11"];
    let a = invoke(&args);
    let b = invoke(&args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let other = invoke(&["surface", "segre", "--d", "2", "--seed", "12"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn text_format_is_plain() {
    let out = invoke(&["--format", "text", "surface", "invariants", "--chi", "1", "--k2", "1"]);
    assert!(out.stdout.contains("P(1) = 11"), "{}", out.stdout);
    assert!(serde_json::from_str::<Value>(&out.stdout).is_err());
}

#[test]
fn flags_are_recorded_in_config() {
    let v = json(&invoke(&["--jet-cap", "12", "surface", "nodal-bounds", "--d", "4"]).stdout);
    assert_eq!(v["config"]["budget"]["jet_degree_cap"], 12);
    assert_eq!(v["config"]["overrides"][0], serde_json::json!(["jet_degree_cap", "flag"]));
}

#[test]
fn help_is_not_an_error() {
    let out = invoke(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("singularity"));
}

#[test]
fn malformed_inputs_fail_with_structured_errors() {
    let corpus = malformed_corpus();
    assert_eq!(corpus.len(), 50);
    for case in corpus {
        let out = run(std::iter::once("defkit".to_string()).chain(case.iter().cloned()), &mut std::io::empty());
        assert!(out.code == EXIT_DOMAIN || out.code == EXIT_USAGE, "{case:?} exited {}", out.code);
        let v = json(&out.stdout);
        let errors = v["errors"].as_array().expect("errors array");
        assert_eq!(errors.len(), 1, "{case:?}");
        let kind = errors[0]["kind"].as_str().unwrap();
        assert!(["usage", "parse", "domain"].contains(&kind), "{case:?}: {kind}");
        assert_eq!(v["result"], Value::Null);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn parse_errors_carry_columns() {
    let v = json(&invoke(&["singularity", "analyze", "--vars", "x,y", "--poly", "x + 1/0"]).stdout);
    assert_eq!(v["errors"][0]["kind"], "parse");
    assert!(v["errors"][0]["column"].as_u64().unwrap() >= 5);
}

mod fuzz {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        // small digits and tight caps keep every draw cheap
        fn arbitrary_poly_text_never_crashes(src in "[xyz0-2+*^/() -]{0,20}") {
            let out = invoke(&[
                "--max-basis", "500", "--jet-cap", "16", "singularity", "analyze", "--vars", "x,y,z", "--poly", &src,
            ]);
            let v = json(&out.stdout);
            match out.code {
                EXIT_OK => prop_assert!(v["errors"].as_array().unwrap().is_empty()),
                EXIT_DOMAIN | EXIT_USAGE => {
                    let kind = v["errors"][0]["kind"].as_str().unwrap().to_string();
                    prop_assert!(kind == "parse" || kind == "domain" || kind == "usage", "{}", kind);
                }
                other => prop_assert!(false, "exit {}", other),
            }
        }
    }
}
