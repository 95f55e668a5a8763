//! Description-length accounting. A grammar costs the symbols of its
//! canonical serialization times the bits needed per symbol; a corpus costs
//! the choice bits of its cheapest derivations. Comparing two grammars that
//! encode the same language splits their cost into grammar and data terms
//! and reports which pair is shorter.

use std::collections::BTreeMap;

use crate::canon;
use crate::chart;
use crate::error::{CxgError, Result};
use crate::grammar::{is_universal_fold, Grammar, MeaningExpr};

fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Size of one grammar, by section and in total. Bits use one fixed-width
/// code over the grammar's own symbol inventory, so section bits add up to
/// the total exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrammarDl {
    pub lexicon_symbols: usize,
    pub rules_symbols: usize,
    pub ontology_symbols: usize,
    pub total_symbols: usize,
    pub alphabet_size: usize,
    pub bits_per_symbol: u32,
    pub lexicon_bits: usize,
    pub rules_bits: usize,
    pub ontology_bits: usize,
    pub total_bits: usize,
    /// Symbols of all meaning material: lexical meaning sections plus
    /// structural meaning expressions.
    pub meaning_symbols: usize,
    /// Meaning symbols that carry semantics beyond naming: non-stub lexical
    /// meaning sections plus structural expressions other than the
    /// universal folds.
    pub payload_symbols: usize,
}

/// A lexical meaning that only names its value: a bare constant or a bare
/// sense set.
fn is_stub(m: &MeaningExpr) -> bool {
    matches!(m, MeaningExpr::Num(_) | MeaningExpr::Senses(_))
}

pub fn payload_symbols(g: &Grammar) -> usize {
    let mut total = 0;
    for c in &g.constructions {
        if c.is_lexical() {
            if !is_stub(&c.meaning) {
                total += canon::symbol_count(&canon::render_meaning_section(g, c));
            }
        } else if !is_universal_fold(c) {
            total += canon::symbol_count(&canon::render_meaning_expr(g, c));
        }
    }
    total
}

fn meaning_symbols(g: &Grammar) -> usize {
    g.constructions
        .iter()
        .map(|c| {
            if c.is_lexical() {
                canon::symbol_count(&canon::render_meaning_section(g, c))
            } else {
                canon::symbol_count(&canon::render_meaning_expr(g, c))
            }
        })
        .sum()
}

pub fn grammar_dl(g: &Grammar) -> GrammarDl {
    let lexicon_symbols: usize = g
        .lexical_constructions()
        .map(|c| canon::symbol_count(&canon::serialize_construction(g, c)))
        .sum();
    let rules_symbols: usize = g
        .structural_constructions()
        .map(|c| canon::symbol_count(&canon::serialize_construction(g, c)))
        .sum();
    let ontology_symbols: usize = canon::ontology_strings(g)
        .iter()
        .map(|s| canon::symbol_count(s))
        .sum();
    let total_symbols = lexicon_symbols + rules_symbols + ontology_symbols;
    let alphabet_size = canon::grammar_alphabet(g).len();
    let bits_per_symbol = ceil_log2(alphabet_size);
    let bits = |sym: usize| sym * bits_per_symbol as usize;
    GrammarDl {
        lexicon_symbols,
        rules_symbols,
        ontology_symbols,
        total_symbols,
        alphabet_size,
        bits_per_symbol,
        lexicon_bits: bits(lexicon_symbols),
        rules_bits: bits(rules_symbols),
        ontology_bits: bits(ontology_symbols),
        total_bits: bits(total_symbols),
        meaning_symbols: meaning_symbols(g),
        payload_symbols: payload_symbols(g),
    }
}

/// Corpus cost under a grammar: per sentence, the cheapest derivation's
/// choice bits (a rule choice among same-category rules per internal node,
/// a token choice per word), rounded up per sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataDl {
    pub sentence_bits: Vec<usize>,
    pub total_bits: usize,
}

pub fn data_dl(g: &Grammar, label: &str, corpus: &[Vec<String>]) -> Result<DataDl> {
    let mut rules_by_lhs: BTreeMap<&str, usize> = BTreeMap::new();
    for c in g.structural_constructions() {
        if let crate::grammar::FormPattern::Rule { lhs, .. } = &c.form {
            *rules_by_lhs.entry(lhs.as_str()).or_insert(0) += 1;
        }
    }
    let token_count = g.known_tokens().len();
    let token_bits = (token_count as f64).log2();

    let mut sentence_bits = Vec::with_capacity(corpus.len());
    for (index, sentence) in corpus.iter().enumerate() {
        let p = chart::parse(g, sentence)?;
        let mut best: Option<f64> = None;
        for i in 0..p.derivation_count() {
            if p.evaluate(i)?.is_bottom() {
                continue;
            }
            let cost = derivation_cost(&p, i, &rules_by_lhs, token_bits)?;
            best = Some(match best {
                None => cost,
                Some(b) => b.min(cost),
            });
        }
        let Some(cost) = best else {
            return Err(CxgError::CorpusReject {
                index,
                grammar: label.to_string(),
            });
        };
        sentence_bits.push(cost.ceil() as usize);
    }
    let total_bits = sentence_bits.iter().sum();
    Ok(DataDl {
        sentence_bits,
        total_bits,
    })
}

fn derivation_cost(
    p: &chart::Parse,
    root_index: usize,
    rules_by_lhs: &BTreeMap<&str, usize>,
    token_bits: f64,
) -> Result<f64> {
    fn walk(
        p: &chart::Parse,
        id: chart::EdgeId,
        rules_by_lhs: &BTreeMap<&str, usize>,
        token_bits: f64,
    ) -> f64 {
        let e = &p.edges[id];
        if e.is_leaf() {
            return token_bits;
        }
        let choices = rules_by_lhs.get(e.cat.as_str()).copied().unwrap_or(1);
        let mut cost = (choices as f64).log2();
        for ch in &e.children {
            match ch {
                chart::Child::Edge(c) => cost += walk(p, *c, rules_by_lhs, token_bits),
                chart::Child::Token(_) => cost += token_bits,
            }
        }
        cost
    }
    let root = p
        .roots
        .get(root_index)
        .copied()
        .ok_or_else(|| CxgError::Eval(format!("no derivation {root_index}")))?;
    Ok(walk(p, root, rules_by_lhs, token_bits))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AWins,
    BWins,
    Tie,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::AWins => "a",
            Verdict::BWins => "b",
            Verdict::Tie => "tie",
        }
    }
}

/// Two-part comparison of grammars A and B over one shared corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub grammar_a: GrammarDl,
    pub grammar_b: GrammarDl,
    pub data_a: usize,
    pub data_b: usize,
    pub total_a: usize,
    pub total_b: usize,
    /// Lexicon growth from A to B, in symbols.
    pub delta_lexicon_symbols: i64,
    pub delta_total_symbols: i64,
    /// How many times more semantic payload B spells out than A.
    pub ratio_semantic_payload: f64,
    /// Same ratio over all meaning material, stubs included.
    pub ratio_meaning_symbols: f64,
    pub verdict: Verdict,
}

fn ratio(b: usize, a: usize) -> f64 {
    if a == 0 {
        if b == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        b as f64 / a as f64
    }
}

pub fn compare(ga: &Grammar, gb: &Grammar, corpus: &[Vec<String>]) -> Result<Comparison> {
    let grammar_a = grammar_dl(ga);
    let grammar_b = grammar_dl(gb);
    let data_a = data_dl(ga, "a", corpus)?.total_bits;
    let data_b = data_dl(gb, "b", corpus)?.total_bits;
    let total_a = grammar_a.total_bits + data_a;
    let total_b = grammar_b.total_bits + data_b;
    let verdict = match total_a.cmp(&total_b) {
        std::cmp::Ordering::Less => Verdict::AWins,
        std::cmp::Ordering::Greater => Verdict::BWins,
        std::cmp::Ordering::Equal => Verdict::Tie,
    };
    Ok(Comparison {
        delta_lexicon_symbols: grammar_b.lexicon_symbols as i64 - grammar_a.lexicon_symbols as i64,
        delta_total_symbols: grammar_b.total_symbols as i64 - grammar_a.total_symbols as i64,
        ratio_semantic_payload: ratio(grammar_b.payload_symbols, grammar_a.payload_symbols),
        ratio_meaning_symbols: ratio(grammar_b.meaning_symbols, grammar_a.meaning_symbols),
        grammar_a,
        grammar_b,
        data_a,
        data_b,
        total_a,
        total_b,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{lexicalize, number_grammar};

    #[test]
    fn ceil_log2_rounds_up() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(10), 4);
        assert_eq!(ceil_log2(16), 4);
        assert_eq!(ceil_log2(17), 5);
        assert_eq!(ceil_log2(24), 5);
    }

    #[test]
    fn sections_add_up() {
        let g = number_grammar(10, false).unwrap();
        let dl = grammar_dl(&g);
        assert_eq!(
            dl.lexicon_symbols + dl.rules_symbols + dl.ontology_symbols,
            dl.total_symbols
        );
        assert_eq!(
            dl.lexicon_bits + dl.rules_bits + dl.ontology_bits,
            dl.total_bits
        );
        assert_eq!(dl.ontology_symbols, 0);
    }

    #[test]
    fn digit_lexicon_grows_by_eleven_per_nonzero_entry() {
        let ga = number_grammar(10, false).unwrap();
        let gb = lexicalize(&ga).unwrap();
        let corpus: Vec<Vec<String>> = vec![vec!["7".to_string()]];
        let cmp = compare(&ga, &gb, &corpus).unwrap();
        assert_eq!(cmp.delta_lexicon_symbols, 99);
        assert_eq!(cmp.verdict, Verdict::AWins);
        assert_eq!(cmp.data_a, cmp.data_b);
    }

    #[test]
    fn payload_counts_only_spelled_out_semantics() {
        let ga = number_grammar(10, false).unwrap();
        let gb = lexicalize(&ga).unwrap();
        let a = grammar_dl(&ga);
        let b = grammar_dl(&gb);
        // Constructional: digit entries are stubs; the fold expression
        // `10*μ(DS1)+μ(D)` is the whole payload.
        assert_eq!(a.payload_symbols, 14);
        // Lexicalized: nine positional formulas `μ(d)=d*10**pos(d)`; the Σ
        // fold is universal and free.
        assert_eq!(b.payload_symbols, 9 * 17);
        let cmp = compare(&ga, &gb, &[vec!["7".to_string()]]).unwrap();
        assert!(cmp.ratio_semantic_payload >= 10.0);
    }

    #[test]
    fn identical_grammars_compare_even() {
        let g = number_grammar(10, false).unwrap();
        let corpus: Vec<Vec<String>> = vec![vec!["4".to_string(), "2".to_string()]];
        let cmp = compare(&g, &g, &corpus).unwrap();
        assert_eq!(cmp.verdict, Verdict::Tie);
        assert_eq!(cmp.ratio_semantic_payload, 1.0);
        assert_eq!(cmp.delta_total_symbols, 0);
    }

    #[test]
    fn rejected_corpus_sentence_is_an_error() {
        let g = number_grammar(10, true).unwrap();
        let corpus = vec![vec!["7".to_string(), "3".to_string()]];
        match data_dl(&g, "asc", &corpus) {
            Err(CxgError::CorpusReject { index: 0, grammar }) => assert_eq!(grammar, "asc"),
            other => panic!("expected corpus rejection, got {other:?}"),
        }
    }

    #[test]
    fn single_zero_costs_four_bits() {
        let g = number_grammar(10, false).unwrap();
        let dl = data_dl(&g, "b10", &[vec!["0".to_string()]]).unwrap();
        assert_eq!(dl.sentence_bits, vec![4]);
    }
}
