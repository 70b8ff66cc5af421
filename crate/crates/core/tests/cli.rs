use std::process::Command;

use serde_json::Value;

fn cftkit(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cftkit"))
        .args(args)
        .env_remove("CFTKIT_PRECISION")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, String) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, _) = cftkit(&full);
    (code, out)
}

#[test]
fn predict_examples() {
    let (code, out) = json(&["predict", "schmidt", "--m", "155", "--p", "31"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["predicted_type"], serde_json::json!([3, 30]));
    assert_eq!(v["verdict"], "not-checked");

    let (_, out) = json(&["predict", "c1", "--n", "31", "--p", "5", "--f", "1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["predicted_type"], serde_json::json!([2, 4, 4, 4, 4]));

    let (code, out, _) = cftkit(&["predict", "p14", "--p", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("3 does not divide h^-(K)"));
}

#[test]
fn exit_code_contract() {
    assert_eq!(cftkit(&["predict", "bogus"]).0, 64);
    assert_eq!(cftkit(&["predict", "c1", "--n", "6", "--p", "5"]).0, 2);
    assert_eq!(cftkit(&["hminus", "5:2"]).0, 65);
    assert_eq!(cftkit(&["hminus", "155:31"]).0, 64);
    assert_eq!(
        cftkit(&["verify", "schmidt", "--m", "155", "--p", "31"]).0,
        0
    );
    assert_eq!(cftkit(&["verify", "c1", "--n", "31", "--p", "5"]).0, 3);
    assert_eq!(cftkit(&["verify", "p14", "--p", "5"]).0, 0);
    assert_eq!(cftkit(&["verify", "p14", "--p", "7"]).0, 0);
    assert_eq!(
        cftkit(&["verify", "scholz", "--n", "4", "--w", "10", "--p", "31"]).0,
        2
    );
    assert_eq!(
        cftkit(&["rayclass", "--base", "gaussian", "--p", "7"]).0,
        64
    );
    assert_eq!(cftkit(&["--help"]).0, 0);
}

#[test]
fn hminus_examples() {
    let (code, out) = json(&["hminus", "23:"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h_minus"], "3");
    assert_eq!(v["alternate"], Value::Null);

    let (_, out, _) = cftkit(&["hminus", "4:"]);
    assert!(out.contains("h^-: 1\n"));

    let (_, out, _) = cftkit(&["hminus", "155:36"]);
    assert!(out.contains("h^-: 19200"));
    assert!(out.contains("h^- with Q = 2: 38400"));
}

#[test]
fn q_override_is_recorded() {
    let (_, out) = json(&["--q-policy", "2", "hminus", "155:36"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["q"], 2);
    assert_eq!(v["q_source"], "override");
    assert_eq!(v["h_minus"], "38400");
    // Structural rules take precedence over the override.
    let (_, out) = json(&["--q-policy", "1", "hminus", "155:"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (v["q"].as_u64(), v["q_source"].as_str()),
        (Some(2), Some("full-cyclotomic"))
    );
}

#[test]
fn module_commands() {
    let (code, out) = json(&["rayclass", "--base", "gaussian", "--p", "13"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["norm_kernel_type"], serde_json::json!([3]));
    assert_eq!(v["match"], "equal");
    assert_eq!(
        v["counts"],
        serde_json::json!({"phi2": 144, "w": 4, "order": 36})
    );

    let (code, out, _) = cftkit(&["rd", "5:"]);
    assert_eq!(code, 0);
    assert!(out.contains("5^(3/4) = 3.3437"));

    let (code, out, _) = cftkit(&["lemma3", "--m", "5", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("result: pass"));
}

#[test]
fn precision_option_and_env() {
    let (_, out) = json(&["--precision", "12", "rd", "5:"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["decimal"], "3.34370152488");

    let out = Command::new(env!("CARGO_BIN_EXE_cftkit"))
        .args(["--format", "json", "rd", "5:"])
        .env("CFTKIT_PRECISION", "15")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["decimal"], "3.34370152488211");

    assert_eq!(cftkit(&["--precision", "9", "rd", "5:"]).0, 64);
}

#[test]
fn json_round_trip_is_byte_identical() {
    let commands: [&[&str]; 7] = [
        &["verify", "schmidt", "--m", "155", "--p", "31"],
        &["verify", "c1", "--n", "31", "--p", "5"],
        &["hminus", "155:36"],
        &["rayclass", "--p", "29", "--f", "2"],
        &["rd", "155:"],
        &["lemma3", "--m", "8", "--n", "2"],
        &[
            "verify",
            "metsankyla",
            "--l1",
            "5:",
            "--l2",
            "9:",
            "--predicted",
            "2",
        ],
    ];
    for args in commands {
        let (_, out) = json(args);
        let line = out.trim_end();
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), line, "{args:?}");
    }
}

#[test]
fn text_and_json_verdicts_agree() {
    for args in [
        &["verify", "c1", "--n", "31", "--p", "5"][..],
        &["verify", "p14", "--p", "13"][..],
        &["verify", "metsankyla", "--l1", "4:", "--l2", "3:"][..],
    ] {
        let (code_text, text, _) = cftkit(args);
        let (code_json, out) = json(args);
        let v: Value = serde_json::from_str(&out).unwrap();
        let verdict = v["verdict"].as_str().unwrap();
        assert_eq!(code_text, code_json);
        assert!(text.contains(&format!("verdict: {verdict}")), "{args:?}");
    }
}
