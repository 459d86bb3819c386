//! Black-box tests of the `cpf` binary: output contracts and exit codes.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn cpf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpf")).args(args).output().expect("binary runs")
}

fn cpf_stdin(args: &[&str], envs: &[(&str, &str)], input: &str) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cpf"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    // A child that rejects its flags exits without reading stdin; the
    // resulting broken pipe is expected, not a test failure.
    let _ = child.stdin.take().unwrap().write_all(input.as_bytes());
    child.wait_with_output().expect("binary exits")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hopf_link_prints_one() {
    let out = cpf(&["compute", "--strands", "2", "--word", "1 1", "--colors", "a b"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn words_may_start_with_a_negative_letter() {
    let out = cpf(&["compute", "--strands", "2", "--word", "-1 -1", "--colors", "a b"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-1\n");
}

#[test]
fn extra_views_append_labeled_lines() {
    let out = cpf(&[
        "compute", "--strands", "2", "--word", "1 1 1", "--colors", "a a", "--alexander",
        "--uncolored",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "(a^2 - 1 + a^-2)/(a - a^-1)\nalexander: a - 1 + a^-1\nuncolored: (t^2 - 1 + t^-2)/(t - t^-1)\n"
    );
}

#[test]
fn unclosable_coloring_exits_2() {
    let out = cpf(&["compute", "--strands", "2", "--word", "1 1 1", "--colors", "a b"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
}

#[test]
fn malformed_input_exits_3() {
    for args in [
        vec!["compute", "--strands", "2", "--word", "1 x", "--colors", "a b"],
        vec!["compute", "--strands", "2", "--word", "1 1"],
        vec!["compute", "--strands", "0", "--word", "", "--colors", ""],
        vec!["compute", "--no-such-flag"],
        vec!["frobnicate"],
    ] {
        let out = cpf(&args);
        assert_eq!(out.status.code(), Some(3), "args {args:?}");
    }
}

#[test]
fn json_output_round_trips_to_the_text_form() {
    let out = cpf(&[
        "compute", "--strands", "3", "--word", "1 -2 1 -2", "--colors", "a a a", "--format",
        "json", "--alexander",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<String> =
        v["colors"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect();
    let back = cpf::jsonio::fraction_from_json(&v["nabla"], &names).unwrap();
    assert_eq!(back.render(&names), v["text"].as_str().unwrap());
    assert_eq!(v["text"], "(-a^2 + 3 - a^-2)/(a - a^-1)");
    assert_eq!(v["alexander"]["exp_den"], 2);

    // The text route prints exactly the embedded text form.
    let text = cpf(&["compute", "--strands", "3", "--word", "1 -2 1 -2", "--colors", "a a a"]);
    assert_eq!(stdout(&text).trim_end(), v["text"].as_str().unwrap());
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args =
        ["compute", "--strands", "3", "--word", "1 1 2 2", "--colors", "x y z", "--format", "json"];
    assert_eq!(stdout(&cpf(&args)), stdout(&cpf(&args)));
}

#[test]
fn verify_reports_checks_and_exits_0() {
    let out = cpf(&["verify", "--suite", "identities"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("5/5 checks passed"), "got: {text}");

    let out = cpf(&["verify", "--suite", "table1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("164/164 checks passed"));
}

#[test]
fn verify_is_seed_deterministic() {
    let args = ["verify", "--suite", "oracle", "--trials", "3", "--seed", "9"];
    assert_eq!(stdout(&cpf(&args)), stdout(&cpf(&args)));
}

#[test]
fn unknown_suite_exits_3() {
    let out = cpf(&["verify", "--suite", "everything"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn batch_preserves_input_order_and_thread_count_does_not_matter() {
    let job = r#"{"items":[
        {"strands":2,"word":"1 1","colors":["a","b"]},
        {"strands":1,"word":"","colors":["c"],"alexander":true},
        {"strands":2,"word":"1 1 1","colors":["a","a"],"uncolored":true}
    ]}"#;
    let one = cpf_stdin(&["compute", "--batch", "-"], &[("CPF_THREADS", "1")], job);
    let two = cpf_stdin(&["compute", "--batch", "-"], &[("CPF_THREADS", "2")], job);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&two));

    let v: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(results[0]["text"], "1");
    assert_eq!(results[1]["text"], "(1)/(c - c^-1)");
    assert_eq!(results[1]["alexander"]["text"], "1");
    assert_eq!(results[2]["text"], "(a^2 - 1 + a^-2)/(a - a^-1)");
    assert_eq!(results[2]["uncolored"]["text"], "(t^2 - 1 + t^-2)/(t - t^-1)");
}

#[test]
fn batch_validates_every_item_before_running_any() {
    let job = r#"{"items":[
        {"strands":2,"word":"1 1","colors":["a","b"]},
        {"strands":2,"word":"1 q","colors":["a","b"]}
    ]}"#;
    let out = cpf_stdin(&["compute", "--batch", "-"], &[], job);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).is_empty(), "nothing may execute when validation fails");

    let job = r#"{"items":[{"strands":2,"word":"1","colors":["a","b"]}]}"#;
    let out = cpf_stdin(&["compute", "--batch", "-"], &[], job);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn batch_enforces_job_limits() {
    let job = r#"{"items":[{"strands":5,"word":"1","colors":["a","a","a","a","a"]}],
                  "limits":{"max_strands":4}}"#;
    let out = cpf_stdin(&["compute", "--batch", "-"], &[], job);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn batch_timeout_marks_the_item_and_exits_5() {
    // The first and last items are instant; the middle braid needs seconds
    // of reduction, far beyond the 150 ms allowance.
    let job = r#"{"items":[
        {"strands":2,"word":"1 1","colors":["a","b"]},
        {"strands":4,"word":"1 -2 3 -2 1 -2 3 -2 1 -2 3 -2 1 -2 3 -2 1 -2 3 -2 1 1","colors":["a","a","a","a"]},
        {"strands":1,"word":"","colors":["c"]}
    ],"limits":{"timeout_ms":150}}"#;
    let out = cpf_stdin(&["compute", "--batch", "-"], &[("CPF_THREADS", "1")], job);
    assert_eq!(out.status.code(), Some(5));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(results[0]["status"], "ok");
    assert_eq!(results[1]["status"], "timeout");
    assert_eq!(results[2]["status"], "ok");
}

#[test]
fn batch_rejects_conflicting_flags() {
    let out = cpf_stdin(&["compute", "--batch", "-", "--strands", "2"], &[], "{}");
    assert_eq!(out.status.code(), Some(3));
    let out = cpf_stdin(&["compute", "--batch", "stdin"], &[], "{}");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_batch_json_exits_3() {
    let out = cpf_stdin(&["compute", "--batch", "-"], &[], "still not json");
    assert_eq!(out.status.code(), Some(3));
}
