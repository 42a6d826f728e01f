//! End-to-end checks of the command-line surface: outputs, exit codes, and
//! byte-for-byte determinism.

use std::process::{Command, Output};

use polychain::ChainRecordJson;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polychain"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn roots_match_published_decimals_and_are_deterministic() {
    let a = run(&["roots"]);
    assert!(a.status.success());
    let text = stdout(&a);
    assert!(text.contains("x0 = -3.099974"), "{text}");
    assert!(text.contains("x1 = -5.463428"), "{text}");
    assert!(text.contains("residual"));
    let b = run(&["roots"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn eval_linear_tromino_at_one() {
    let out = run(&["eval", "--n", "3", "--turns", "S", "--alpha", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("chi (direct)  = 52.0000000000"), "{text}");
    assert!(text.contains("length vector = (3)"));
    assert!(text.contains("in omega      = true"));
}

#[test]
fn eval_closed_form_agrees_and_warns_outside_omega() {
    let out = run(&["eval", "--n", "4", "--turns", "LR", "--alpha", "-2", "--closed-form"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("chi (closed)"));
    assert!(out.stderr.is_empty());

    // Same-side kinks around an internal length-3 segment: closed form not
    // guaranteed, so the tool warns while still printing both values.
    let out = run(&["eval", "--n", "5", "--turns", "LSL", "--alpha", "-2", "--closed-form"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("chi (closed)"));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("warning"), "{err}");

    let out = run(&["eval", "--n", "2", "--alpha", "1", "--closed-form"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("n/a"));
}

#[test]
fn eval_accepts_symbolic_alpha_tokens() {
    let out = run(&["eval", "--n", "6", "--turns", "SLSR", "--alpha", "x0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("alpha         = -3.09997439973"));
}

#[test]
fn domain_errors_exit_one_usage_errors_exit_two() {
    let invalid_chain = run(&["eval", "--n", "4", "--turns", "LL", "--alpha", "1"]);
    assert_eq!(invalid_chain.status.code(), Some(1));
    let zero_alpha = run(&["eval", "--n", "3", "--turns", "S", "--alpha", "0"]);
    assert_eq!(zero_alpha.status.code(), Some(1));
    let too_big = run(&["enumerate", "--n", "40"]);
    assert_eq!(too_big.status.code(), Some(1));
    let bad_flag = run(&["eval", "--n", "3", "--frobnicate"]);
    assert_eq!(bad_flag.status.code(), Some(2));
    let bad_alpha = run(&["eval", "--n", "3", "--turns", "S", "--alpha", "xq"]);
    assert_eq!(bad_alpha.status.code(), Some(2));
}

#[test]
fn enumerate_jsonl_round_trips() {
    let out = run(&["enumerate", "--n", "4", "--format", "jsonl"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for line in &lines {
        let parsed: ChainRecordJson = serde_json::from_str(line).expect("valid record json");
        assert_eq!(parsed.n, 4);
        assert_eq!(parsed.cells.len(), 4);
        let reserialized = serde_json::to_string(&parsed).unwrap();
        assert_eq!(&reserialized, line);
    }

    let again = run(&["enumerate", "--n", "4", "--format", "jsonl"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn enumerate_csv_has_header_and_rows() {
    let out = run(&["enumerate", "--n", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "n,turns,length_vector,in_omega,canonical_key");
    assert!(lines[1].starts_with("4,SS,4,true,"));
}

#[test]
fn enumerate_flags_shrink_or_grow_the_stream() {
    let deduped = stdout(&run(&["enumerate", "--n", "5"])).lines().count();
    let raw = stdout(&run(&["enumerate", "--n", "5", "--no-dedupe"])).lines().count();
    let omega = stdout(&run(&["enumerate", "--n", "5", "--omega-only"])).lines().count();
    assert_eq!(deduped, 7);
    assert_eq!(raw, 17);
    assert_eq!(omega, 6);
}

#[test]
fn extremal_text_report_passes_at_one() {
    let out = run(&["extremal", "--n", "6", "--alpha", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: PASS"), "{text}");
    assert!(text.contains("lv=(2,2,2,2,2)"));
    assert!(text.contains("lv=(6)"));
}

#[test]
fn extremal_json_is_parseable() {
    let out = run(&["extremal", "--n", "6", "--alpha", "-0.5", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 6);
    assert_eq!(v["regime"], "BetweenX0AndZero");
    assert_eq!(v["verdict"]["pass"], true);
    assert!(v["max"]["records"].as_array().unwrap().len() == 1);
}

#[test]
fn extremal_all_chains_reports_unpredicted() {
    let out = run(&["extremal", "--n", "6", "--alpha", "1", "--all-chains"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("observed, unpredicted"));
}

#[test]
fn table_slice_passes() {
    let out = run(&["table", "--n-min", "4", "--n-max", "5", "--alpha-list", "1,-2,x0,x1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("overall: PASS"), "{text}");
    assert!(text.contains("alpha = x0"));
}
