use std::process::Command;

use enriched_cli::{parse_document, CliError, Workspace};
use serde_json::Value;

const WS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/workspace.json");

fn bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_enriched")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out) = bin(&a);
    (code, serde_json::from_str(&out).unwrap())
}

fn workspace(text: &str) -> Result<Workspace, CliError> {
    Workspace::from_documents(vec![parse_document("inline", text)?])
}

#[test]
fn fixture_validates() {
    let ws = enriched_cli::parse_workspace(&[WS.to_string()]).unwrap();
    assert_eq!(ws.quantales.len(), 5);
    assert_eq!(ws.categories.len(), 8);
    assert_eq!(ws.functors.len(), 8);
    assert_eq!(ws.squares.len(), 2);
    assert_eq!(ws.specs.len(), 2);
    let (code, _) = bin(&["validate", WS]);
    assert_eq!(code, 0);
}

#[test]
fn small_document_validates() {
    let ws = workspace(
        r#"{"quantales": [{"name": "V", "builtin": "goedel_chain", "size": 2}],
            "categories": [{"name": "X", "quantale": "V", "objects": ["a", "b"],
                            "matrix": [["1", "1/2"], ["0", "1"]]}]}"#,
    )
    .unwrap();
    assert_eq!(ws.category("X").unwrap().hom(0, 1), ws.quantale("V").unwrap().elem("1/2"));
}

#[test]
fn hom_key_is_rejected() {
    let r = workspace(
        r#"{"quantales": [{"name": "Q", "carrier": ["0", "1"], "leq": [["0", "1"]],
            "tensor": [["0", "0"], ["0", "1"]], "unit": "1", "hom": [["1", "1"], ["0", "1"]]}]}"#,
    );
    assert!(matches!(r, Err(CliError::Validation { .. })), "{:?}", r.err());
    let null = workspace(r#"{"quantales": [{"name": "Q", "builtin": "boolean2", "hom": null}]}"#);
    assert!(matches!(null, Err(CliError::Validation { .. })));
}

#[test]
fn dangling_names_are_unresolved() {
    let r = workspace(
        r#"{"quantales": [{"name": "B", "builtin": "boolean2"}],
            "categories": [{"name": "E", "quantale": "B", "objects": ["*"], "matrix": [["1"]]}],
            "functors": [{"name": "f", "dom": "E", "cod": "Nowhere", "map": ["*"]}]}"#,
    );
    assert!(matches!(r, Err(CliError::UnresolvedReference { ref name, .. }) if name == "Nowhere"));
    let q = workspace(r#"{"categories": [{"name": "E", "quantale": "W", "objects": ["*"], "matrix": [["1"]]}]}"#);
    assert!(matches!(q, Err(CliError::UnresolvedReference { kind: "quantale", .. })));
}

#[test]
fn parse_errors_carry_lines() {
    let r = parse_document("bad.json", "{\n  \"quantales\": [\n    {\"name\": }\n  ]\n}");
    assert!(matches!(r, Err(CliError::Parse { line: 3, .. })), "{:?}", r.err());
}

#[test]
fn invalid_records_are_rejected() {
    let not_transitive = workspace(
        r#"{"quantales": [{"name": "B", "builtin": "boolean2"}],
            "categories": [{"name": "X", "quantale": "B", "objects": ["a", "b", "c"],
                            "matrix": [["1", "1", "0"], ["0", "1", "1"], ["0", "0", "1"]]}]}"#,
    );
    assert!(matches!(not_transitive, Err(CliError::Validation { .. })));
    let foreign = workspace(
        r#"{"quantales": [{"name": "B", "builtin": "boolean2"}],
            "categories": [{"name": "X", "quantale": "B", "objects": ["a"], "matrix": [["1/2"]]}]}"#,
    );
    assert!(matches!(foreign, Err(CliError::Validation { .. })));
    let duplicate = workspace(r#"{"quantales": [{"name": "B", "builtin": "boolean2"}, {"name": "B", "builtin": "boolean2"}]}"#);
    assert!(matches!(duplicate, Err(CliError::Validation { .. })));
    let bad_table = workspace(
        r#"{"quantales": [{"name": "Q", "carrier": ["0", "1"], "leq": [["0", "1"]],
            "tensor": [["0", "1"], ["1", "1"]], "unit": "1"}]}"#,
    );
    assert!(matches!(bad_table, Err(CliError::Validation { .. })));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["check", "separated", WS, "--category", "X"]).0, 0);
    assert_eq!(bin(&["check", "bc-square", WS, "--square", "sq_collapse"]).0, 1);
    assert_eq!(bin(&["check", "bc-square", WS, "--square", "sq_incl"]).0, 0);
    assert_eq!(bin(&["check", "bc-square", WS]).0, 2);
    assert_eq!(bin(&["check", "bc-square", WS, "--square", "missing"]).0, 2);
    assert_eq!(bin(&["check", "no-such-property", WS]).0, 2);
    assert_eq!(bin(&["validate", "/nonexistent.json"]).0, 2);
    assert_eq!(bin(&["compute", "presheaf", WS, "--category", "V", "--budget", "10"]).0, 3);
    assert_eq!(bin(&["selftest", "--criterion", "13"]).0, 2);
}

#[test]
fn checks_report_expected_verdicts() {
    let verdicts = |args: &[&str]| -> Vec<String> {
        let (_, v) = json(args);
        v["checks"].as_array().unwrap().iter().map(|c| c["verdict"].as_str().unwrap().to_string()).collect()
    };
    assert_eq!(verdicts(&["check", "fully-faithful", WS, "--functor", "incl"]), ["pass"]);
    assert_eq!(verdicts(&["check", "fully-faithful", WS, "--functor", "collapse"]), ["fail"]);
    assert_eq!(verdicts(&["check", "fully-dense", WS, "--functor", "idC3"]), ["pass"]);
    assert_eq!(verdicts(&["check", "adjunction", WS, "--functor", "floor", "--right", "incl"]), ["pass"]);
    assert_eq!(verdicts(&["check", "adjunction", WS, "--functor", "collapse", "--right", "incl"]), ["fail"]);
    assert_eq!(verdicts(&["check", "distributor", WS, "--relation", "down"]), ["pass"]);
    assert_eq!(verdicts(&["check", "distributor", WS, "--relation", "up"]), ["fail"]);
    assert_eq!(verdicts(&["check", "tensored", WS, "--category", "V"]), ["pass"]);
    assert_eq!(verdicts(&["check", "tensored", WS, "--category", "D2"]), ["fail"]);
    assert_eq!(verdicts(&["check", "ball-algebra", WS, "--category", "D2"]), ["fail"]);
    assert!(verdicts(&["check", "ball-algebra", WS, "--category", "V"]).iter().all(|v| v == "pass"));
    assert!(verdicts(&["check", "algebra", WS, "--category", "C3", "--spec", "all"]).iter().all(|v| v == "pass"));
    assert_eq!(verdicts(&["check", "algebra", WS, "--category", "D2", "--spec", "all"])[0], "fail");
    assert_eq!(verdicts(&["check", "homomorphism", WS, "--functor", "floor", "--spec", "all"]), ["pass", "pass"]);
    assert_eq!(verdicts(&["check", "homomorphism", WS, "--functor", "collapse", "--spec", "all"]), ["pass", "fail"]);
    assert_eq!(verdicts(&["check", "l-complete", WS, "--category", "X"]), ["pass"]);
    assert_eq!(verdicts(&["check", "cancellative", WS, "--quantale", "G"])[0], "fail");
    assert!(verdicts(&["check", "cancellative", WS, "--quantale", "L"]).iter().all(|v| v == "pass"));
    assert!(verdicts(&["check", "admissible", WS, "--spec", "RA", "--quantale", "B"]).iter().all(|v| v == "pass"));
    assert!(verdicts(&["check", "lax-idempotent", WS, "--category", "X"]).iter().all(|v| v == "pass"));
    assert!(verdicts(&["check", "lax-idempotent", WS, "--category", "C2", "--monad", "submonad", "--spec", "RA"])
        .iter()
        .all(|v| v == "pass"));
    assert_eq!(verdicts(&["check", "t-embedding", WS, "--functor", "incl", "--spec", "all"]), ["pass", "pass"]);
    assert_eq!(verdicts(&["check", "b-embedding", WS, "--functor", "half"])[0], "fail");
}

#[test]
fn constructions() {
    let (code, v) = json(&["compute", "colimit", WS, "--relation", "down", "--functor", "idC3"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["colimit"]["*"], "1");
    let (code, v) = json(&["compute", "cauchy-pair", WS, "--sequence", "s"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["representative"], "b");
    let (_, v) = json(&["compute", "algebra", WS, "--category", "C2", "--spec", "all"]);
    assert_eq!(v["output"]["alpha"]["[1,0]"], "0");
    let (code, v) = json(&["compute", "ball", WS, "--category", "C2", "--extended"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["categories"][1]["objects"].as_array().unwrap().len(), 4);
    let (code, v) = json(&["compute", "submonad", WS, "--category", "X", "--spec", "RA"]);
    assert_eq!(code, 0);
    assert_eq!(v["output"]["categories"][1]["objects"].as_array().unwrap().len(), 2);
    let (a, b) = (bin(&["complete", "lawvere", WS, "--category", "X"]), bin(&["compute", "lawvere-completion", WS, "--category", "X"]));
    assert_eq!(a.0, 0);
    assert_eq!(a.1.lines().skip(1).collect::<Vec<_>>(), b.1.lines().skip(1).collect::<Vec<_>>());
}

/// Emits `PX`, parses it back and compares with a direct computation.
fn round_trip(category: &str) {
    let (code, v) = json(&["compute", "presheaf", WS, "--category", category]);
    assert_eq!(code, 0);
    let text = serde_json::to_string(&v["output"]).unwrap();
    let ws = Workspace::from_documents(vec![parse_document("emitted", &text).unwrap()]).unwrap();
    let original = enriched_cli::parse_workspace(&[WS.to_string()]).unwrap();
    let x = original.category(category).unwrap();
    let px = enriched::PresheafCategory::build(x, 1_000_000).unwrap();
    let back = ws.category(px.cat().name()).unwrap();
    assert_eq!(back.objects(), px.cat().objects());
    assert_eq!(back.matrix(), px.cat().matrix());
    let y = ws.functor(&format!("y_{category}")).unwrap();
    assert_eq!(y.map(), px.yoneda().unwrap().map());
    assert_eq!(ws.category(category).unwrap().matrix(), x.matrix());
}

#[test]
fn presheaf_round_trips() {
    for c in ["C2", "C3", "X", "V", "S"] {
        round_trip(c);
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["check", "admissible", WS, "--spec", "all", "--quantale", "L", "--format", "json"],
        vec!["compute", "presheaf", WS, "--category", "V", "--format", "json"],
        vec!["check", "cancellative", WS, "--quantale", "L"],
    ] {
        assert_eq!(bin(&args), bin(&args));
    }
}
