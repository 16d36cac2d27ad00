//! One pass/fail line per acceptance criterion. Criteria 1 to 12 come from
//! the `selftest` report; criterion 13 checks the command line itself.

use std::process::{Command, ExitCode};

use enriched_cli::{parse_document, Workspace};
use serde_json::Value;

const WS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/workspace.json");

fn bin(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_enriched"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), out.stdout)
}

fn round_trip(category: &str) -> Result<(), String> {
    let (code, out) = bin(&["compute", "presheaf", WS, "--category", category, "--format", "json"]);
    if code != Some(0) {
        return Err(format!("compute presheaf {category} exited {code:?}"));
    }
    let report: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let text = serde_json::to_string(&report["output"]).map_err(|e| e.to_string())?;
    let doc = parse_document("emitted", &text).map_err(|e| e.to_string())?;
    let back = Workspace::from_documents(vec![doc]).map_err(|e| e.to_string())?;
    let ws = enriched_cli::parse_workspace(&[WS.to_string()]).map_err(|e| e.to_string())?;
    let x = ws.category(category).map_err(|e| e.to_string())?;
    let px = enriched::PresheafCategory::build(x, 1_000_000).map_err(|e| e.to_string())?;
    let parsed = back.category(px.cat().name()).map_err(|e| e.to_string())?;
    if parsed.objects() != px.cat().objects() || parsed.matrix() != px.cat().matrix() {
        return Err(format!("P{category} changed in the round trip"));
    }
    let y = back.functor(&format!("y_{category}")).map_err(|e| e.to_string())?;
    if y.map() != px.yoneda().map_err(|e| e.to_string())?.map() {
        return Err(format!("Yoneda map of {category} changed in the round trip"));
    }
    Ok(())
}

fn criterion_13() -> Result<String, String> {
    let (code, first) = bin(&["selftest", "--format", "json"]);
    if code != Some(0) {
        return Err(format!("selftest exited {code:?}"));
    }
    let (_, second) = bin(&["selftest", "--format", "json"]);
    if first != second {
        return Err("selftest reports differ between runs".into());
    }
    let (_, t1) = bin(&["selftest"]);
    let (_, t2) = bin(&["selftest"]);
    if t1 != t2 {
        return Err("text reports differ between runs".into());
    }
    for c in ["C3", "X", "V", "S"] {
        round_trip(c)?;
    }
    Ok("selftest exit 0, byte-identical reruns, PX round trip on 4 categories".into())
}

fn main() -> ExitCode {
    let (code, out) = bin(&["selftest", "--format", "json"]);
    let report: Value = match serde_json::from_slice(&out) {
        Ok(v) => v,
        Err(e) => {
            println!("selftest produced no report (exit {code:?}): {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut all = true;
    let checks = report["checks"].as_array().cloned().unwrap_or_default();
    for (i, c) in checks.iter().enumerate() {
        let pass = c["verdict"] == "pass";
        all &= pass;
        let name = c["name"].as_str().unwrap_or("?");
        let title = name.split_once(": ").map(|(_, t)| t).unwrap_or(name);
        let detail = report["output"][format!("{:02}", i + 1)]["details"]
            .as_array()
            .map(|d| d.iter().filter_map(|s| s.as_str()).collect::<Vec<_>>().join("; "))
            .unwrap_or_default();
        let status = if pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}  {title}  [{detail}]", i + 1);
        if let Some(w) = c["witness"].as_str() {
            println!("             witness: {w}");
        }
    }
    if checks.len() != 12 {
        all = false;
        println!("selftest reported {} criteria, expected 12", checks.len());
    }
    match criterion_13() {
        Ok(d) => println!("criterion 13 PASS  command line  [{d}]"),
        Err(e) => {
            all = false;
            println!("criterion 13 FAIL  command line  [{e}]");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
