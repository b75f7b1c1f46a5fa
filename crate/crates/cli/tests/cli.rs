use std::process::{Command, Output};

use charpoly_core::algebra::{MultiPoly, PolyJson};

fn charpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charpoly")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = charpoly(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["kerov", "--k", "4", "--basis", "R"]), "R5 + 5 R3");
    assert_eq!(stdout(&["kerov", "--k", "6", "--basis", "C"]), "R7 + 35/4 C5 + 42 C3");
    assert_eq!(
        stdout(&["stanley", "--k", "2", "--m", "2", "--negate-q"]),
        "a^2 b + a b^2 + 2 a p q + p^2 q + p q^2"
    );
    assert_eq!(stdout(&["stanley", "--k", "1", "--m", "1"]), "p1 q1");
    assert_eq!(stdout(&["psharp", "--mu", "2,1", "--lambda", "3,1"]), "8");
    assert_eq!(stdout(&["character", "--shape", "3,1", "--normalized", "--k", "2"]), "4");
    assert_eq!(stdout(&["character", "--shape", "2,1", "--class", "3"]), "-1");
    // s*_(1)(x) = x_1 + x_2
    assert_eq!(stdout(&["shiftschur", "--lambda", "1", "--x", "2,1/2"]), "5/2");
}

#[test]
fn exit_codes() {
    assert_eq!(charpoly(&["nonsense"]).status.code(), Some(2));
    assert_eq!(charpoly(&["kerov", "--k", "12"]).status.code(), Some(2));
    assert_eq!(charpoly(&["character", "--shape", "2,3", "--class", "5"]).status.code(), Some(2));
    assert_eq!(charpoly(&["psharp", "--mu", "3", "--lambda", "2"]).status.code(), Some(2));
    assert_eq!(charpoly(&["stanley", "--k", "2", "--m", "4"]).status.code(), Some(2));
}

#[test]
fn budget_override_warns() {
    let out = charpoly(&["--max-m", "4", "stanley", "--k", "1", "--m", "4"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn json_round_trip_and_determinism() {
    let args = ["stanley", "--k", "3", "--m", "2", "--format", "json"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let value: serde_json::Value = serde_json::from_str(&first).unwrap();
    let poly: PolyJson = serde_json::from_value(value["polynomial"].clone()).unwrap();
    let back = MultiPoly::from_json(&poly).unwrap().to_json();
    assert_eq!(back, poly);
    assert_eq!(serde_json::to_string_pretty(&value).unwrap(), first);
}

#[test]
fn positivity_and_verify() {
    let out = stdout(&["positivity", "--kmax", "5", "--m", "2", "--degrees", "k-1"]);
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.ends_with(": positive")));
    let out = charpoly(&["verify", "--suite", "paper"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("[FAIL]"));
    assert_eq!(text.lines().count(), charpoly_core::verify::REFERENCE_SUITE.len());
}
