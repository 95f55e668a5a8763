//! Gate suite: one line per verification check, then hard assertions on the
//! frozen headline numbers so a regression cannot hide behind a summary flag.

use cxg_core::checks::{run_all, NONSENSE_SENTENCE, SENSIBLE_SENTENCE};
use cxg_core::mdl::Verdict;
use cxg_core::{
    canon, clause_grammar, compare, fixture_meetings, grammar_dl, lexicalize, number_grammar,
    parse_str,
};

#[test]
fn verification_suite_passes() {
    let results = run_all();
    assert_eq!(results.len(), 8);
    for (i, c) in results.iter().enumerate() {
        println!(
            "criterion {}/8 {}: {} — {}",
            i + 1,
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.details
        );
    }
    let failed: Vec<&str> = results.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    assert!(failed.is_empty(), "failing checks: {failed:?}");
}

// The numbers below restate the core claims with their tolerances pinned,
// independently of the suite's own pass flags.

#[test]
fn lexicon_delta_is_exactly_99() {
    let a = number_grammar(10, false).unwrap();
    let b = lexicalize(&a).unwrap();
    let da = grammar_dl(&a);
    let db = grammar_dl(&b);
    assert_eq!(db.lexicon_symbols - da.lexicon_symbols, 99);

    // Character-count oracle on the rendered entries themselves: each
    // non-zero digit d swaps `d` (1 symbol) for `d*10**pos(d)` (12 symbols).
    for d in 1..10i64 {
        let name = format!("d{d}");
        let short = canon::serialize_construction(&a, a.construction(&name).unwrap());
        let long = canon::serialize_construction(&b, b.construction(&name).unwrap());
        assert_eq!(
            long.chars().count() as i64 - short.chars().count() as i64,
            11,
            "entry {name}: `{short}` vs `{long}`"
        );
    }
    let zc = canon::serialize_construction(&a, a.construction("d0").unwrap());
    let zl = canon::serialize_construction(&b, b.construction("d0").unwrap());
    assert_eq!(zc, zl);
}

#[test]
fn payload_ratio_is_at_least_ten() {
    for base in [10, 36, 100] {
        let a = number_grammar(base, false).unwrap();
        let b = lexicalize(&a).unwrap();
        let ratio = grammar_dl(&b).payload_symbols as f64 / grammar_dl(&a).payload_symbols as f64;
        assert!(ratio >= 10.0, "base {base}: ratio {ratio}");
    }
}

#[test]
fn worked_sentences_classify() {
    let gc = clause_grammar(&fixture_meetings()).unwrap();
    let gl = lexicalize(&gc).unwrap();
    for g in [&gc, &gl] {
        assert!(parse_str(g, SENSIBLE_SENTENCE).unwrap().accepted().unwrap());
        assert!(!parse_str(g, NONSENSE_SENTENCE).unwrap().accepted().unwrap());
    }
}

#[test]
fn description_length_prefers_the_constructional_grammar() {
    let a = number_grammar(10, false).unwrap();
    let b = lexicalize(&a).unwrap();
    let corpus: Vec<Vec<String>> = (0..100)
        .map(|n| {
            canon::render_int(n, 10)
                .chars()
                .map(|c| c.to_string())
                .collect()
        })
        .collect();
    let cmp = compare(&a, &b, &corpus).unwrap();
    assert_eq!(cmp.verdict, Verdict::AWins);
    assert!(cmp.total_a < cmp.total_b);
    assert_eq!(cmp.data_a, cmp.data_b);
}
