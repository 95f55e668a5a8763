//! End-to-end runs of the `cxg` binary: exit codes, both output formats,
//! and file pipelines between subcommands.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cxg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cxg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn scratch(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("cxg-cli-{tag}-{}", std::process::id()))
}

#[test]
fn interpret_accepts_with_exit_zero() {
    let out = cxg(&[
        "interpret", "--lexicon", "meetings", "--format", "kv", "we", "meet", "at", "12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("meaning.1=[[action,meet_0],[agent,we_0],[event_time,12_0]]"), "{text}");
    assert!(text.contains("accepted=true"), "{text}");
}

#[test]
fn interpret_rejects_with_exit_two() {
    let out = cxg(&[
        "interpret", "--lexicon", "meetings", "we", "meet", "at", "12", "pm", "with", "bob",
        "from", "5", "to", "6", "pm",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("REJECT"));
}

#[test]
fn interpret_rejects_in_lexicalized_mode_too() {
    let out = cxg(&[
        "interpret", "--lexicon", "meetings", "--lexicalized", "we", "meet", "at", "12", "pm",
        "with", "bob", "from", "5", "to", "6", "pm",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quoted_sentences_split_like_separate_arguments() {
    let quoted = cxg(&["interpret", "--base", "10", "1 7 3 4 1"]);
    let split = cxg(&["interpret", "--base", "10", "1", "7", "3", "4", "1"]);
    assert_eq!(quoted.status.code(), Some(0));
    assert_eq!(stdout(&quoted), stdout(&split));
    assert!(stdout(&quoted).contains("meaning 1: 17341"));
}

#[test]
fn unknown_token_is_an_error_not_a_reject() {
    let out = cxg(&["interpret", "--lexicon", "meetings", "we", "frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("frobnicate"));
}

#[test]
fn parse_counts_digit_derivations() {
    let out = cxg(&["parse", "--format", "kv", "1", "7", "3", "4", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("derivations=1"), "{text}");
    assert!(text.contains("bracketing.1=(DS (DS (DS (DS (D 1) (D 7)) (D 3)) (D 4)) (D 1))"), "{text}");
}

#[test]
fn build_lexicalize_compare_pipeline_reproduces_the_delta() {
    let a_path = scratch("a.cxg");
    let b_path = scratch("b.cxg");
    let corpus_path = scratch("corpus.txt");

    assert!(cxg(&["build", "--base", "10", "--out", a_path.to_str().unwrap()])
        .status
        .success());
    assert!(cxg(&[
        "lexicalize", "--grammar", a_path.to_str().unwrap(), "--out", b_path.to_str().unwrap(),
    ])
    .status
    .success());

    let corpus: Vec<String> = (0..100)
        .map(|n: i64| {
            n.to_string()
                .chars()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    std::fs::write(&corpus_path, corpus.join("\n")).unwrap();

    let out = cxg(&[
        "compare",
        a_path.to_str().unwrap(),
        b_path.to_str().unwrap(),
        "--corpus",
        corpus_path.to_str().unwrap(),
        "--format",
        "kv",
    ]);
    for p in [&a_path, &b_path, &corpus_path] {
        std::fs::remove_file(p).ok();
    }
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("delta_lexicon_symbols=99"), "{text}");
    assert!(text.contains("verdict=a"), "{text}");
    let data_a = text.lines().find(|l| l.starts_with("data_a=")).unwrap();
    let data_b = text.lines().find(|l| l.starts_with("data_b=")).unwrap();
    assert_eq!(data_a.trim_start_matches("data_a="), data_b.trim_start_matches("data_b="));
}

#[test]
fn enumerate_lists_the_bounded_language() {
    let out = cxg(&["enumerate", "--base", "3", "--max-tokens", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0], "0 => 0");
    assert!(lines.contains(&"2 1 => 7"));
}

#[test]
fn mdl_reports_grammar_and_corpus_bits() {
    let corpus_path = scratch("mdl-corpus.txt");
    std::fs::write(&corpus_path, "1 7 3 4 1\n0\n").unwrap();
    let out = cxg(&[
        "mdl", "--base", "10", "--corpus", corpus_path.to_str().unwrap(), "--format", "kv",
    ]);
    std::fs::remove_file(&corpus_path).ok();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("corpus_sentences=2"), "{text}");
    assert!(text.contains("bits_per_symbol=5"), "{text}");
    // Five tokens at log2(10) bits each round up to 17; one token to 4.
    assert!(text.contains("data_bits=21"), "{text}");
}

#[test]
fn repro_prints_the_claim_table() {
    let out = cxg(&["repro"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("8/8 checks passed"), "{text}");
    assert!(text.contains("99 symbols"), "{text}");
}
