use std::io::Write;
use std::process::{Command, Output, Stdio};

use moment_models_cli::commands::{convert, report};
use moment_models_cli::{Document, Kind};
use serde_json::{json, Value};

const KINDS: [Kind; 7] = [
    Kind::Moments,
    Kind::Measure,
    Kind::Jacobi,
    Kind::StieltjesString,
    Kind::KlString,
    Kind::Hamiltonian,
    Kind::Ratfun,
];

fn doc(value: Value) -> Document {
    Document::from_json(value).unwrap()
}

fn moments(s: &[&str]) -> Document {
    doc(json!({"kind": "moments", "payload": {"s": s}}))
}

fn catalan(count: usize) -> Document {
    let c = ["1", "1", "2", "5", "14", "42", "132", "429", "1430"];
    let s: Vec<&str> = (0..count)
        .map(|k| if k % 2 == 0 { c[k / 2] } else { "0" })
        .collect();
    moments(&s)
}

fn measure() -> Document {
    doc(json!({"kind": "measure", "payload": {"atoms": [["1", "1/2"], ["2", "1/2"]]}}))
}

fn run(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_moment-models"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn run_json(args: &[&str], input: &Document) -> Value {
    let out = run(args, &input.to_text());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn every_kind_survives_serialization() {
    let source = measure();
    for kind in KINDS {
        let d = convert(&source, kind, None).unwrap();
        assert_eq!(d.kind(), kind);
        assert_eq!(Document::parse(&d.to_text()).unwrap(), d, "{kind:?}");
    }
}

#[test]
fn bijective_paths_return_home() {
    let sources = [
        measure(),
        doc(json!({"kind": "kl_string", "payload": {"cells": [
            {"l": "1", "omega": "-2", "upsilon": "3"},
            {"l": "1/2", "omega": "0", "upsilon": "1"}], "tail": "7/3"}})),
        doc(
            json!({"kind": "ratfun", "payload": {"numerator": ["0", "1"], "denominator": ["1", "0", "-1"]}}),
        ),
        doc(
            json!({"kind": "jacobi", "payload": {"a": ["1", "-1/2", "3"], "b2": ["2", "1/4"], "mass": "3"}}),
        ),
    ];
    for source in &sources {
        for kind in KINDS {
            let there = match convert(source, kind, None) {
                Ok(d) => d,
                Err(e) => {
                    assert!(
                        matches!(kind, Kind::StieltjesString | Kind::Measure),
                        "{kind:?}: {e}"
                    );
                    continue;
                }
            };
            let back = convert(&there, source.kind(), None).unwrap();
            assert_eq!(&back, source, "via {kind:?}");
        }
    }
}

#[test]
fn named_conversions() {
    let out = run_json(&["convert", "--to", "kl_string"], &catalan(9));
    let cell = json!({"l": "1", "omega": "0", "upsilon": "1"});
    assert_eq!(out["payload"]["cells"], json!([cell, cell]));

    let out = run_json(&["convert", "--to", "stieltjes_string"], &measure());
    assert_eq!(
        out["payload"],
        json!({"l": ["1", "9"], "omega": ["2/3", "1/12"], "tail": "inf"})
    );

    let f = doc(
        json!({"kind": "ratfun", "payload": {"numerator": ["0", "1"], "denominator": ["1", "0", "-1"]}}),
    );
    let out = run_json(&["convert", "--to", "kl_string"], &f);
    assert_eq!(out["payload"], json!({"cells": [cell], "tail": "inf"}));
}

#[test]
fn catalan_report() {
    let r = report(
        &catalan(16),
        Some(4),
        &[moment_models::ComplexValue::new(0.0, 1.0)],
    )
    .unwrap();
    assert_eq!(r["trajectory"], json!(["2", "4", "6", "8"]));
    assert_eq!(r["trend"], "divergence detected");
    assert!(r["pade_residuals"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x == "0"));
    for t in r["trace_residuals"].as_array().unwrap() {
        assert_eq!(
            (&t["position"], &t["mass"], &t["quadratic"]),
            (&json!("0"), &json!("0"), &json!("0"))
        );
    }
    let deviation = r["weyl"][0]["max_deviation"].as_f64().unwrap();
    assert!(deviation <= 1e-10, "{deviation}");
    assert_eq!(r["weyl"][0]["routes"].as_object().unwrap().len(), 7);
}

#[test]
fn two_point_verdict_and_value() {
    let two_point = moments(&["1", "0", "1", "0", "1"]);
    let out = run_json(&["report"], &two_point);
    assert_eq!(out["verdict"], "finite rank 2, determinate");
    let out = run_json(&["mfun", "--z", "i"], &two_point);
    let m = &out["samples"][0]["m"];
    assert!(m[0].as_f64().unwrap().abs() < 1e-15);
    assert!((m[1].as_f64().unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn exit_codes() {
    let out = run(&["report"], &moments(&["1", "0", "-1"]).to_text());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Δ_{0,1} = -1"));

    let out = run(&["classify"], "{\"kind\": \"moments\"");
    assert_eq!(out.status.code(), Some(1));

    let out = run(
        &["convert", "--to", "stieltjes_string"],
        &catalan(9).to_text(),
    );
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["mfun", "--z", "2"], &catalan(9).to_text());
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["convert", "--to", "nowhere"], &catalan(9).to_text());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("moment-models-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (input, output) = (dir.join("in.json"), dir.join("out.json"));
    std::fs::write(&input, measure().to_text()).unwrap();
    let out = run(
        &[
            "moments",
            "--depth",
            "3",
            "-i",
            input.to_str().unwrap(),
            "-o",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success());
    let written = Document::parse(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(
        written,
        moments(&["1", "3/2", "5/2", "9/2", "17/2", "33/2", "65/2"])
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn expansion_and_classification() {
    let out = run_json(&["expand", "--depth", "2"], &measure());
    assert_eq!(
        out["coefficients"],
        json!(["-1", "-3/2", "-5/2", "-9/2", "-17/2"])
    );
    let out = run_json(&["classify"], &measure());
    assert_eq!(out["classification"]["finite_rank"], json!(2));
    assert_eq!(out["classification"]["double_positive"], json!(true));
}
