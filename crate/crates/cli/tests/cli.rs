use std::fs;
use std::process::{Command, Output};

use iwasawa_cli::report::{Payload, Report};
use iwasawa_core::MetricTwoStep;

fn iwasawa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwasawa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("stdout is a report")
}

fn strip_timings(mut r: Report) -> Report {
    r.timings.total_ms = 0.0;
    if let Payload::Batch(b) = &mut r.payload {
        for e in &mut b.entries {
            e.ms = 0.0;
        }
    }
    r
}

#[test]
fn verify_sl3_is_equal() {
    let out = iwasawa(&["der", "verify", "sl3R"]);
    assert_eq!(out.status.code(), Some(0));
    let Payload::DerVerify(v) = report(&out).payload else {
        panic!("wrong payload")
    };
    assert!(v.equal);
    assert_eq!((v.dim_der, v.dim_ad), (2, 2));
    assert!(v.witness.is_none());
}

#[test]
fn verify_so13_is_exceptional_but_exits_zero() {
    let out = iwasawa(&["der", "verify", "so(1,3)"]);
    assert_eq!(out.status.code(), Some(0));
    let Payload::DerVerify(v) = report(&out).payload else {
        panic!("wrong payload")
    };
    assert!(!v.equal);
    assert!(v.exceptional_expected);
    assert_eq!(v.matches_expectation, Some(true));
    assert!(v.witness.is_some());
}

#[test]
fn parse_error_exits_one() {
    let out = iwasawa(&["der", "verify", "bogus(9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_mode_is_rejected() {
    let out = iwasawa(&["der", "solve", "sl3R", "--mode", "sideways"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn solve_modes_nest() {
    let dims: Vec<usize> = ["rootspace", "grading", "all"]
        .iter()
        .map(|m| {
            let out = iwasawa(&["der", "solve", "su(1,2)", "--mode", m]);
            assert_eq!(out.status.code(), Some(0));
            let Payload::DerSolve(d) = report(&out).payload else {
                panic!("wrong payload")
            };
            assert_eq!(d.mode, *m);
            d.dim_der
        })
        .collect();
    assert!(dims[0] <= dims[1] && dims[1] <= dims[2], "{dims:?}");
}

#[test]
fn empty_batch_gives_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("empty.txt");
    fs::write(&list, "").unwrap();
    let out = iwasawa(&["der", "batch", list.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let Payload::Batch(b) = report(&out).payload else {
        panic!("wrong payload")
    };
    assert!(b.entries.is_empty());
}

#[test]
fn batch_with_bad_line_keeps_going() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("list.txt");
    fs::write(&list, "so(1,4)\n# skipped\nnot-an-algebra\nsl3R\nsu(1,3)\n").unwrap();
    let out = iwasawa(&["der", "batch", list.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let Payload::Batch(b) = report(&out).payload else {
        panic!("wrong payload")
    };
    let specs: Vec<&str> = b.entries.iter().map(|e| e.spec.as_str()).collect();
    assert_eq!(specs, ["so(1,4)", "not-an-algebra", "sl3R", "su(1,3)"]);
    assert_eq!(b.entries[1].line, 3);
    assert!(b.entries[1].error.is_some());
    assert_eq!(b.errors, 1);
    assert_eq!(b.mismatches, 0);
}

#[test]
fn batch_markdown_lists_every_line() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("list.txt");
    fs::write(&list, "sl3R\nso(2,3)\n").unwrap();
    let out = iwasawa(&[
        "der",
        "batch",
        list.to_str().unwrap(),
        "--output",
        "markdown",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| sl3R | rootspace | 3 | 2 | 2 |"));
    assert!(text.contains("| so(2,3) |"));
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let a = iwasawa(&["der", "verify", "su(1,2)", "--checks", "--seed", "7"]);
    let b = iwasawa(&["der", "verify", "su(1,2)", "--checks", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    let (ra, rb) = (strip_timings(report(&a)), strip_timings(report(&b)));
    assert_eq!(ra, rb);
    assert_eq!(ra.seed, 7);
    let again: Report = serde_json::from_str(&ra.to_json()).unwrap();
    assert_eq!(again, ra);
}

#[test]
fn build_output_loads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("so13.json");
    let out = iwasawa(&["build", "so(1,3)"]);
    assert_eq!(out.status.code(), Some(0));
    let Payload::Build(j) = report(&out).payload else {
        panic!("wrong payload")
    };
    fs::write(&path, j.to_string_pretty().unwrap()).unwrap();
    let from_file = iwasawa(&["roots", path.to_str().unwrap()]);
    let from_name = iwasawa(&["roots", "so(1,3)"]);
    assert_eq!(from_file.status.code(), Some(0));
    let (Payload::Roots(a), Payload::Roots(b)) =
        (report(&from_file).payload, report(&from_name).payload)
    else {
        panic!("wrong payload")
    };
    assert_eq!(a, b);
}

#[test]
fn htype_check_reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("h2.json");
    fs::write(
        &good,
        MetricTwoStep::heisenberg(2)
            .to_json()
            .unwrap()
            .to_string_pretty()
            .unwrap(),
    )
    .unwrap();
    let out = iwasawa(&["htype", "check", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let Payload::HtypeCheck(h) = report(&out).payload else {
        panic!("wrong payload")
    };
    assert!(h.kaplan.is_htype);

    let free = dir.path().join("free3.json");
    fs::write(
        &free,
        MetricTwoStep::free_two_step(3)
            .to_json()
            .unwrap()
            .to_string_pretty()
            .unwrap(),
    )
    .unwrap();
    let Payload::HtypeCheck(h) =
        report(&iwasawa(&["htype", "check", free.to_str().unwrap()])).payload
    else {
        panic!("wrong payload")
    };
    assert!(!h.kaplan.is_htype);
    assert!(h.kaplan.witness.is_some());

    let missing = dir.path().join("nope.json");
    assert_eq!(
        iwasawa(&["htype", "check", missing.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.md");
    let out = iwasawa(&[
        "roots",
        "split-G2",
        "--output",
        "markdown",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(path).unwrap();
    assert!(text.contains("max height = 5"));
}

#[test]
fn unnamed_exceptional_file_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("anon.json");
    let Payload::Build(mut j) = report(&iwasawa(&["build", "so(1,4)"])).payload else {
        panic!("wrong payload")
    };
    j.name = None;
    fs::write(&path, j.to_string_pretty().unwrap()).unwrap();
    let out = iwasawa(&["der", "verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let Payload::DerVerify(v) = report(&out).payload else {
        panic!("wrong payload")
    };
    assert_eq!(v.matches_expectation, Some(false));
}

#[test]
fn acceptance_list_matches_expectations() {
    let list = concat!(env!("CARGO_MANIFEST_DIR"), "/data/acceptance.txt");
    let out = iwasawa(&["der", "batch", list]);
    assert_eq!(out.status.code(), Some(0));
    let Payload::Batch(b) = report(&out).payload else {
        panic!("wrong payload")
    };
    assert_eq!(b.entries.len(), 16);
    assert_eq!((b.errors, b.mismatches), (0, 0));
    let exceptional: Vec<&str> = b
        .entries
        .iter()
        .filter(|e| !e.verdict.as_ref().unwrap().equal)
        .map(|e| e.spec.as_str())
        .collect();
    assert_eq!(
        exceptional,
        ["so(1,3)", "so(1,4)", "so(1,5)", "su(1,2)", "su(1,3)"]
    );
}
