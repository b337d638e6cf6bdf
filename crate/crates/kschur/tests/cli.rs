//! Golden tests for the command-line interface: exact stdout and exit codes.

use std::process::{Command, Output};

fn kschur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kschur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = kschur(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn core_conversions() {
    assert_eq!(
        stdout_of(&["core", "to-core", "--k", "6", "--partition", "6,2,2,1"]),
        "[8,2,2,1]\n"
    );
    assert_eq!(
        stdout_of(&["core", "to-bounded", "--k", "6", "--partition", "8,2,2,1"]),
        "[6,2,2,1]\n"
    );
    assert_eq!(
        stdout_of(&["core", "to-core", "--k", "9", "--partition", "2,1"]),
        "[2,1]\n"
    );
    // the empty partition is spelled "0" or ""
    assert_eq!(
        stdout_of(&["core", "to-core", "--k", "3", "--partition", "0"]),
        "[]\n"
    );
}

#[test]
fn strip_chains() {
    assert_eq!(
        stdout_of(&["strip", "--k", "5", "--inner", "4,2", "--base", "3"]),
        "[[4,2],[7,2],[8,3]]\n"
    );
    assert_eq!(
        stdout_of(&["strip", "--k", "3", "--inner", "3", "--base", "2,1"]),
        "not a strip\n"
    );
    assert_eq!(
        stdout_of(&["strip", "--k", "3", "--inner", "4,1,1,1", "--base", "3,1,1"]),
        "[[4,1,1,1],[6,3,1,1]]\n"
    );
}

#[test]
fn kostka_json_is_exact() {
    let out = stdout_of(&["kostka", "--k", "2", "--degree", "2", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        value,
        serde_json::json!({
            "k": 2,
            "degree": 2,
            "index": [[2], [1, 1]],
            "matrix": [[[1], [0, 1]], [[0], [1]]],
        })
    );
    // the matrix renders as latex too
    let latex = stdout_of(&["kostka", "--k", "2", "--degree", "2", "--format", "latex"]);
    assert!(latex.contains("\\begin{array}"));
    assert!(latex.contains("(1,1)"));
}

#[test]
fn charge_words() {
    assert_eq!(stdout_of(&["charge", "word", "3,5,1,4,2"]), "6\n");
    assert_eq!(
        stdout_of(&["charge", "word", "5,2,3,4,4,1,1,1,2,2,3"]),
        "8\n"
    );
    assert_eq!(
        stdout_of(&["charge", "subwords", "5,2,3,4,4,1,1,1,2,2,3"]),
        "[[5,2,4,1,3],[3,4,1,2],[1,2]]\n"
    );
}

#[test]
fn expand_kschur() {
    assert_eq!(
        stdout_of(&["expand", "kschur-t", "--k", "2", "--lambda", "1,1", "--basis", "hl"]),
        "H[1,1] - t*H[2]\n"
    );
    // stable range: collapses to a Schur function
    assert_eq!(
        stdout_of(&["expand", "kschur-t", "--k", "3", "--lambda", "2,1", "--basis", "schur"]),
        "s[2,1]\n"
    );
    assert_eq!(
        stdout_of(&["expand", "hl", "--mu", "1,1,1", "--basis", "schur"]),
        "s[1,1,1] + (t + t^2)*s[2,1] + t^3*s[3]\n"
    );
    assert_eq!(
        stdout_of(&["expand", "dual-kschur", "--k", "2", "--lambda", "2"]),
        "m[1,1] + m[2]\n"
    );
    // latex rendering, including a single negative term and a multi-term
    // negative coefficient
    assert_eq!(
        stdout_of(&[
            "expand", "kschur-t", "--k", "2", "--lambda", "1,1", "--basis", "hl", "--format",
            "latex"
        ]),
        "H_{(1,1)} - t\\,H_{(2)}\n"
    );
    assert_eq!(
        stdout_of(&[
            "expand", "kschur-t", "--k", "3", "--lambda", "1,1,1", "--basis", "hl", "--format",
            "latex"
        ]),
        "H_{(1,1,1)} + (-t - t^2)\\,H_{(2,1)} + t^2\\,H_{(3)}\n"
    );
}

#[test]
fn abc_stats_round_trip() {
    let out = stdout_of(&[
        "abc",
        "--k",
        "3",
        "--weight",
        "1,1,1,1,1",
        "--stats",
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let items = value.as_array().unwrap();
    assert!(!items.is_empty());
    for item in items {
        assert!(item["abc"]["rows"].is_array());
        assert!(item["stats"]["k_charge"].is_u64());
    }
    // pipe one tableau back through `charge abc`
    let one = items[0]["abc"].to_string();
    let tmp = std::env::temp_dir().join("kschur-cli-abc.json");
    std::fs::write(&tmp, &one).unwrap();
    let stats = stdout_of(&["charge", "abc", "--file", tmp.to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&stats).unwrap();
    assert_eq!(parsed["k_charge"], items[0]["stats"]["k_charge"]);
}

#[test]
fn verify_suite_runs() {
    let out = stdout_of(&["verify", "--suite", "handtrace"]);
    assert!(out.contains("suite handtrace: 2 passed, 0 failed"));
}

#[test]
fn exit_codes() {
    // bad input: exit 1
    let out = kschur(&["core", "to-core", "--k", "3", "--partition", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kschur(&["charge", "word", "2,2,1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = kschur(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(1));
    // unparsable flags: exit 1; help: exit 0
    let out = kschur(&[
        "strip",
        "--k",
        "not-a-number",
        "--inner",
        "1",
        "--base",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = kschur(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_outputs_are_deterministic() {
    let a = stdout_of(&["abc", "--k", "3", "--weight", "2,2,1", "--format", "json"]);
    let b = stdout_of(&["abc", "--k", "3", "--weight", "2,2,1", "--format", "json"]);
    assert_eq!(a, b);
    let a = stdout_of(&["kostka", "--k", "3", "--degree", "4", "--format", "json"]);
    let b = stdout_of(&["kostka", "--k", "3", "--degree", "4", "--format", "json"]);
    assert_eq!(a, b);
}
