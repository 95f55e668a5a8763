//! Python bindings: `Grammar` wraps a grammar of either mode and exposes
//! building, transforming, parsing, enumeration, and description-length
//! measurement; `compare` and `verify` mirror the CLI's report surface.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cxg_core::{
    checks, clause_grammar, fixture_meetings, fixture_small, hour_lexicon, lexicalize,
    load_grammar, number_grammar, parse_grammar_text, parse_str, render_grammar_text,
    save_grammar, tokenize, CxgError,
};

fn err(e: CxgError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn lexicon_by_name(name: &str) -> PyResult<cxg_core::Lexicon> {
    if let Some(n) = name.strip_prefix("hours:") {
        let n: usize = n
            .parse()
            .map_err(|_| PyValueError::new_err(format!("bad hour-noun count in `{name}`")))?;
        return Ok(hour_lexicon(n));
    }
    match name {
        "meetings" => Ok(fixture_meetings()),
        "small" => Ok(fixture_small()),
        other => Err(PyValueError::new_err(format!(
            "unknown lexicon `{other}` (expected meetings, small, or hours:N)"
        ))),
    }
}

#[pyclass(name = "Grammar", module = "cxg_py")]
#[derive(Clone)]
struct PyGrammar {
    inner: cxg_core::Grammar,
}

#[pymethods]
impl PyGrammar {
    /// Positional-numeral grammar over digit tokens of the given base.
    #[staticmethod]
    #[pyo3(signature = (base, ascending = false))]
    fn numbers(base: i64, ascending: bool) -> PyResult<Self> {
        Ok(PyGrammar {
            inner: number_grammar(base, ascending).map_err(err)?,
        })
    }

    /// Clause-and-PP grammar over a built-in lexicon: "meetings", "small",
    /// or "hours:N".
    #[staticmethod]
    fn clauses(lexicon: &str) -> PyResult<Self> {
        Ok(PyGrammar {
            inner: clause_grammar(&lexicon_by_name(lexicon)?).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGrammar {
            inner: parse_grammar_text(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        Ok(PyGrammar {
            inner: load_grammar(&path).map_err(err)?,
        })
    }

    #[getter]
    fn mode(&self) -> &'static str {
        self.inner.mode.as_str()
    }

    fn to_text(&self) -> String {
        render_grammar_text(&self.inner)
    }

    fn save(&self, path: std::path::PathBuf) -> PyResult<()> {
        save_grammar(&self.inner, &path).map_err(err)
    }

    /// Rewrite into the equivalent lexicalized grammar.
    fn lexicalize(&self) -> PyResult<Self> {
        Ok(PyGrammar {
            inner: lexicalize(&self.inner).map_err(err)?,
        })
    }

    fn derivations(&self, sentence: &str) -> PyResult<usize> {
        Ok(parse_str(&self.inner, sentence)
            .map_err(err)?
            .derivation_count())
    }

    /// Distinct sentence meanings, rendered; empty means rejected.
    fn interpret(&self, sentence: &str) -> PyResult<Vec<String>> {
        let p = parse_str(&self.inner, sentence).map_err(err)?;
        Ok(p.meanings()
            .map_err(err)?
            .iter()
            .map(|m| m.to_string())
            .collect())
    }

    fn accepts(&self, sentence: &str) -> PyResult<bool> {
        parse_str(&self.inner, sentence)
            .map_err(err)?
            .accepted()
            .map_err(err)
    }

    /// Accepted sentences up to `max_tokens` words, with their meanings.
    #[pyo3(signature = (max_tokens, limit = None))]
    fn enumerate(
        &self,
        max_tokens: usize,
        limit: Option<usize>,
    ) -> PyResult<Vec<(String, Vec<String>)>> {
        let sentences =
            cxg_core::enumerate_sentences(&self.inner, max_tokens, limit).map_err(err)?;
        Ok(sentences
            .into_iter()
            .map(|s| {
                (
                    s.tokens.join(" "),
                    s.meanings.iter().map(|m| m.to_string()).collect(),
                )
            })
            .collect())
    }

    /// Grammar description length, by section, in symbols and bits.
    fn dl<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let dl = cxg_core::grammar_dl(&self.inner);
        let d = PyDict::new_bound(py);
        d.set_item("lexicon_symbols", dl.lexicon_symbols)?;
        d.set_item("rules_symbols", dl.rules_symbols)?;
        d.set_item("ontology_symbols", dl.ontology_symbols)?;
        d.set_item("total_symbols", dl.total_symbols)?;
        d.set_item("alphabet_size", dl.alphabet_size)?;
        d.set_item("bits_per_symbol", dl.bits_per_symbol)?;
        d.set_item("lexicon_bits", dl.lexicon_bits)?;
        d.set_item("rules_bits", dl.rules_bits)?;
        d.set_item("ontology_bits", dl.ontology_bits)?;
        d.set_item("total_bits", dl.total_bits)?;
        d.set_item("meaning_symbols", dl.meaning_symbols)?;
        d.set_item("payload_symbols", dl.payload_symbols)?;
        Ok(d)
    }

    /// Bits to encode the corpus given this grammar (one sentence per item).
    fn data_dl(&self, corpus: Vec<String>) -> PyResult<usize> {
        let corpus: Vec<Vec<String>> = corpus.iter().map(|s| tokenize(s)).collect();
        Ok(cxg_core::data_dl(&self.inner, "grammar", &corpus)
            .map_err(err)?
            .total_bits)
    }

    fn __repr__(&self) -> String {
        format!(
            "Grammar(mode={}, constructions={})",
            self.inner.mode.as_str(),
            self.inner.constructions.len()
        )
    }
}

/// Two-part description-length comparison of two grammars on a corpus.
#[pyfunction]
fn compare<'py>(
    py: Python<'py>,
    a: &PyGrammar,
    b: &PyGrammar,
    corpus: Vec<String>,
) -> PyResult<Bound<'py, PyDict>> {
    let corpus: Vec<Vec<String>> = corpus.iter().map(|s| tokenize(s)).collect();
    let cmp = cxg_core::compare(&a.inner, &b.inner, &corpus).map_err(err)?;
    let d = PyDict::new_bound(py);
    d.set_item("data_a", cmp.data_a)?;
    d.set_item("data_b", cmp.data_b)?;
    d.set_item("total_a", cmp.total_a)?;
    d.set_item("total_b", cmp.total_b)?;
    d.set_item("delta_lexicon_symbols", cmp.delta_lexicon_symbols)?;
    d.set_item("delta_total_symbols", cmp.delta_total_symbols)?;
    d.set_item("ratio_payload", cmp.ratio_semantic_payload)?;
    d.set_item("ratio_meaning", cmp.ratio_meaning_symbols)?;
    d.set_item("verdict", cmp.verdict.as_str())?;
    Ok(d)
}

/// Run the full verification suite; returns (name, passed, details) per check.
#[pyfunction]
fn verify() -> Vec<(String, bool, String)> {
    checks::run_all()
        .into_iter()
        .map(|c| (c.name.to_string(), c.pass, c.details))
        .collect()
}

#[pymodule]
fn cxg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrammar>()?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn py_ready() {
        pyo3::prepare_freethreaded_python();
    }

    #[test]
    fn grammar_pair_reports_the_delta() {
        py_ready();
        Python::with_gil(|py| {
            let a = PyGrammar::numbers(10, false).unwrap();
            let b = a.lexicalize().unwrap();
            assert_eq!(a.mode(), "constructional");
            assert_eq!(b.mode(), "lexicalized");
            let da = a.dl(py).unwrap();
            let db = b.dl(py).unwrap();
            let lex = |d: &Bound<'_, PyDict>| -> i64 {
                d.get_item("lexicon_symbols")
                    .unwrap()
                    .unwrap()
                    .extract()
                    .unwrap()
            };
            assert_eq!(lex(&db) - lex(&da), 99);
        });
    }

    #[test]
    fn interpret_and_compare_round_trip() {
        py_ready();
        Python::with_gil(|py| {
            let a = PyGrammar::numbers(10, false).unwrap();
            let b = a.lexicalize().unwrap();
            assert_eq!(a.interpret("1 7 3 4 1").unwrap(), vec!["17341"]);
            assert_eq!(b.interpret("1 7 3 4 1").unwrap(), vec!["17341"]);

            let corpus: Vec<String> = (0..100)
                .map(|n: i64| {
                    n.to_string()
                        .chars()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            let cmp = compare(py, &a, &b, corpus).unwrap();
            let verdict: String = cmp.get_item("verdict").unwrap().unwrap().extract().unwrap();
            assert_eq!(verdict, "a");

            let back = PyGrammar::from_text(&a.to_text()).unwrap();
            assert_eq!(back.to_text(), a.to_text());
        });
    }

    #[test]
    fn clause_fixture_classifies_sentences() {
        py_ready();
        Python::with_gil(|_| {
            let g = PyGrammar::clauses("meetings").unwrap();
            let l = g.lexicalize().unwrap();
            let s1 = "we meet at 12 with bob at 6_avenue_and_44_street";
            let s2 = "we meet at 12 pm with bob from 5 to 6 pm";
            for gr in [&g, &l] {
                assert!(gr.accepts(s1).unwrap());
                assert!(!gr.accepts(s2).unwrap());
            }
            assert_eq!(g.interpret(s1).unwrap(), l.interpret(s1).unwrap());
            assert!(PyGrammar::clauses("nope").is_err());
            assert!(PyGrammar::clauses("hours:3").is_ok());
        });
    }
}
