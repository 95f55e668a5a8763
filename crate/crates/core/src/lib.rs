//! Construction-grammar engine with description-length accounting.
//!
//! A grammar is a set of ⟨context; form; meaning⟩ constructions plus parser
//! metadata and an ontology. The crate parses token sequences against such
//! grammars, evaluates meanings, rewrites constructional grammars into
//! lexicalized ones, and measures both grammars and corpora in bits.

pub mod builders;
pub mod canon;
pub mod chart;
pub mod checks;
pub mod error;
pub mod grammar;
pub mod mdl;
pub mod semantics;
pub mod text;

pub use builders::{
    clause_grammar, fixture_meetings, fixture_small, hour_lexicon, lexicalize, number_grammar,
    Lexicon,
};
pub use chart::{enumerate_sentences, parse, parse_str, tokenize, Enumerated, Parse};
pub use checks::{run_all, Check};
pub use error::{CxgError, Result};
pub use grammar::{
    Construction, Context, CtxValue, FeatureArg, FormPattern, FrameKind, Grammar, LeftPat,
    MeaningExpr, Mode, Ontology, RhsElem, SenseRecord, ValidationReport,
};
pub use mdl::{compare, data_dl, grammar_dl, Comparison, DataDl, GrammarDl, Verdict};
pub use semantics::{ClauseAccum, Contribution, SemValue, TypedFact};
pub use text::{load_grammar, parse_grammar_text, render_grammar_text, save_grammar};
