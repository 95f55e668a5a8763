//! Property tests tying the two grammar modes together: same numbers as
//! integer radix conversion, same acceptance, order-insensitive adjuncts,
//! and a chart that stays quadratic.

use proptest::prelude::*;

use cxg_core::canon::digit_char;
use cxg_core::{
    clause_grammar, fixture_small, grammar_dl, lexicalize, number_grammar, parse, parse_str,
    SemValue,
};

fn digit_tokens(digits: &[i64]) -> Vec<String> {
    digits.iter().map(|d| digit_char(*d).to_string()).collect()
}

fn sole_number(g: &cxg_core::Grammar, tokens: &[String]) -> Option<i64> {
    let p = parse(g, tokens).unwrap();
    match p.meanings().unwrap().as_slice() {
        [SemValue::Number(n)] => Some(*n),
        _ => None,
    }
}

proptest! {
    #[test]
    fn digit_strings_match_radix_conversion(
        base in prop::sample::select(vec![2i64, 10, 16, 36]),
        raw in prop::collection::vec(0i64..36, 1..=10),
    ) {
        let digits: Vec<i64> = raw.into_iter().map(|d| d % base).collect();
        let tokens = digit_tokens(&digits);
        let oracle = i64::from_str_radix(&tokens.concat(), base as u32).unwrap();

        let gc = number_grammar(base, false).unwrap();
        let gl = lexicalize(&gc).unwrap();
        prop_assert_eq!(sole_number(&gc, &tokens), Some(oracle));
        prop_assert_eq!(sole_number(&gl, &tokens), Some(oracle));
    }

    #[test]
    fn ascending_membership_matches_brute_force(
        raw in prop::collection::vec(0i64..10, 1..=6),
    ) {
        let tokens = digit_tokens(&raw);
        let strictly_ascending = raw.windows(2).all(|w| w[1] > w[0]);
        let oracle = i64::from_str_radix(&tokens.concat(), 10).unwrap();

        let gc = number_grammar(10, true).unwrap();
        let gl = lexicalize(&gc).unwrap();
        for g in [&gc, &gl] {
            let value = sole_number(g, &tokens);
            if strictly_ascending {
                prop_assert_eq!(value, Some(oracle));
            } else {
                prop_assert_eq!(value, None);
            }
        }
    }

    /// The digit-string chart is left-linear: n lexical edges plus one
    /// string edge per span of length >= 2, never more.
    #[test]
    fn number_chart_stays_quadratic(
        raw in prop::collection::vec(0i64..10, 1..=24),
        ascending: bool,
    ) {
        let g = number_grammar(10, ascending).unwrap();
        let tokens = digit_tokens(&raw);
        let p = parse(&g, &tokens).unwrap();
        let n = tokens.len();
        prop_assert_eq!(p.edges.len(), n + n * (n - 1) / 2);
    }

    /// Shuffling compatible PP adjuncts never changes acceptance or the
    /// meaning set, in either mode.
    #[test]
    fn adjunct_order_is_immaterial(
        pick in prop::collection::vec(0usize..7, 0..=4),
        seed in 0u64..1000,
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;

        let units: [(&str, &str); 7] = [
            ("at 12", "event_time"),
            ("at 5", "event_time"),
            ("at library", "location"),
            ("from 12", "beginning_time"),
            ("from 5", "beginning_time"),
            ("with we", "participant"),
            ("with bob", "participant"),
        ];
        let chosen: Vec<usize> = pick;
        let gc = clause_grammar(&fixture_small()).unwrap();
        let gl = lexicalize(&gc).unwrap();

        let sentence = |order: &[usize]| {
            let mut s = "we meet".to_string();
            for &i in order {
                s.push(' ');
                s.push_str(units[i].0);
            }
            s
        };
        let meanings = |g: &cxg_core::Grammar, s: &str| {
            let mut ms = parse_str(g, s).unwrap().meanings().unwrap();
            ms.sort();
            ms
        };

        let mut shuffled = chosen.clone();
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        shuffled.shuffle(&mut rng);

        let (s1, s2) = (sentence(&chosen), sentence(&shuffled));
        prop_assert_eq!(meanings(&gc, &s1), meanings(&gc, &s2));
        prop_assert_eq!(meanings(&gl, &s1), meanings(&gl, &s2));
        prop_assert_eq!(meanings(&gc, &s1), meanings(&gl, &s1));
    }
}

/// The per-entry cost of lexicalization is 11 symbols at every base, so the
/// lexicon delta climbs as 11*(B-1).
#[test]
fn lexicon_delta_scales_linearly_with_base() {
    for base in 2i64..=40 {
        let a = number_grammar(base, false).unwrap();
        let b = lexicalize(&a).unwrap();
        let delta = grammar_dl(&b).lexicon_symbols - grammar_dl(&a).lexicon_symbols;
        assert_eq!(delta as i64, 11 * (base - 1), "base {base}");
    }
}
