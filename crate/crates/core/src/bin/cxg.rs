//! Command-line surface: build and transform grammars, parse and interpret
//! sentences, measure description lengths, and reproduce the headline
//! measurements.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cxg_core::{
    checks, clause_grammar, compare, data_dl, enumerate_sentences, fixture_meetings,
    fixture_small, grammar_dl, hour_lexicon, lexicalize, load_grammar, number_grammar, parse,
    render_grammar_text, save_grammar, CxgError, Grammar, GrammarDl, Result,
};

#[derive(Parser)]
#[command(
    name = "cxg",
    version,
    about = "Construction-grammar engine with description-length accounting"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LexiconName {
    /// Meeting-scheduling vocabulary with dual-sense hour words and `pm`.
    Meetings,
    /// Eleven single-sense words; the whole language is enumerable.
    Small,
}

/// Grammar selection shared by most subcommands: either a grammar file or
/// one of the built-in families.
#[derive(Args)]
struct Source {
    /// Grammar file to load
    #[arg(long, conflicts_with_all = ["base", "ascending", "lexicon", "hour_nouns"])]
    grammar: Option<PathBuf>,

    /// Base of the built-in numeral grammar
    #[arg(long, default_value_t = 10)]
    base: i64,

    /// Restrict the numeral grammar to strictly ascending digit strings
    #[arg(long)]
    ascending: bool,

    /// Use a built-in clause grammar instead of a numeral grammar
    #[arg(long, value_enum)]
    lexicon: Option<LexiconName>,

    /// Clause grammar over N uniform hour nouns (size-scaling family)
    #[arg(long, value_name = "N", conflicts_with = "lexicon")]
    hour_nouns: Option<usize>,

    /// Apply the lexicalization transform to the selected grammar
    #[arg(long)]
    lexicalized: bool,
}

impl Source {
    fn resolve(&self) -> Result<Grammar> {
        let g = if let Some(path) = &self.grammar {
            load_grammar(path)?
        } else if let Some(name) = self.lexicon {
            let lex = match name {
                LexiconName::Meetings => fixture_meetings(),
                LexiconName::Small => fixture_small(),
            };
            clause_grammar(&lex)?
        } else if let Some(n) = self.hour_nouns {
            clause_grammar(&hour_lexicon(n))?
        } else {
            number_grammar(self.base, self.ascending)?
        };
        if self.lexicalized {
            return lexicalize(&g);
        }
        Ok(g)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a sentence and print its derivations
    Parse {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Sentence tokens, whitespace-separated
        #[arg(required = true, value_name = "TOKEN")]
        tokens: Vec<String>,
    },
    /// Evaluate a sentence to its meanings, or REJECT (exit code 2)
    Interpret {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(required = true, value_name = "TOKEN")]
        tokens: Vec<String>,
    },
    /// Emit a grammar in the text format
    Build {
        #[command(flatten)]
        source: Source,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a constructional grammar into its lexicalized form and emit it
    Lexicalize {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure a grammar (and optionally a corpus) in symbols and bits
    Mdl {
        #[command(flatten)]
        source: Source,
        /// Corpus file, one sentence per line
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare two grammar files on a shared corpus by total description length
    Compare {
        #[arg(value_name = "GRAMMAR_A")]
        grammar_a: PathBuf,
        #[arg(value_name = "GRAMMAR_B")]
        grammar_b: PathBuf,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List accepted sentences up to a length bound, with their meanings
    Enumerate {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        max_tokens: usize,
        /// Stop after this many sentences
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run the verification suite and print the claim summary
    Repro,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Parse {
            source,
            format,
            tokens,
        } => cmd_parse(&source.resolve()?, format, &split_tokens(&tokens)),
        Cmd::Interpret {
            source,
            format,
            tokens,
        } => cmd_interpret(&source.resolve()?, format, &split_tokens(&tokens)),
        Cmd::Build { source, out } => emit_grammar(&source.resolve()?, out.as_deref()),
        Cmd::Lexicalize { source, out } => {
            let g = source.resolve()?;
            let g = if g.mode == cxg_core::Mode::Lexicalized {
                g
            } else {
                lexicalize(&g)?
            };
            emit_grammar(&g, out.as_deref())
        }
        Cmd::Mdl {
            source,
            corpus,
            format,
        } => cmd_mdl(&source.resolve()?, corpus.as_deref(), format),
        Cmd::Compare {
            grammar_a,
            grammar_b,
            corpus,
            format,
        } => cmd_compare(&grammar_a, &grammar_b, &corpus, format),
        Cmd::Enumerate {
            source,
            max_tokens,
            limit,
        } => cmd_enumerate(&source.resolve()?, max_tokens, limit),
        Cmd::Repro => cmd_repro(),
    }
}

/// Shell quoting may deliver a whole sentence as one argument.
fn split_tokens(args: &[String]) -> Vec<String> {
    args.iter()
        .flat_map(|a| a.split_whitespace())
        .map(str::to_owned)
        .collect()
}

fn emit_grammar(g: &Grammar, out: Option<&std::path::Path>) -> Result<ExitCode> {
    match out {
        Some(path) => save_grammar(g, path)?,
        None => print!("{}", render_grammar_text(g)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_parse(g: &Grammar, format: Format, tokens: &[String]) -> Result<ExitCode> {
    let p = parse(g, tokens)?;
    let n = p.derivation_count();
    match format {
        Format::Text => {
            println!("tokens: {}", tokens.len());
            println!("derivations: {n}");
            for i in 0..n {
                println!("  {}", p.bracketing(i)?);
            }
        }
        Format::Kv => {
            println!("tokens={}", tokens.len());
            println!("derivations={n}");
            for i in 0..n {
                println!("bracketing.{}={}", i + 1, p.bracketing(i)?);
            }
        }
    }
    Ok(if n == 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_interpret(g: &Grammar, format: Format, tokens: &[String]) -> Result<ExitCode> {
    let p = parse(g, tokens)?;
    let meanings = p.meanings()?;
    match format {
        Format::Text => {
            println!("derivations: {}", p.derivation_count());
            for (i, m) in meanings.iter().enumerate() {
                println!("meaning {}: {m}", i + 1);
            }
            println!("{}", if meanings.is_empty() { "REJECT" } else { "ACCEPT" });
        }
        Format::Kv => {
            println!("derivations={}", p.derivation_count());
            println!("meanings={}", meanings.len());
            for (i, m) in meanings.iter().enumerate() {
                println!("meaning.{}={m}", i + 1);
            }
            println!("accepted={}", !meanings.is_empty());
        }
    }
    Ok(if meanings.is_empty() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn read_corpus(path: &std::path::Path) -> Result<Vec<Vec<String>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CxgError::Io(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(cxg_core::tokenize)
        .filter(|s| !s.is_empty())
        .collect())
}

fn print_grammar_dl(prefix: &str, g: &Grammar, dl: &GrammarDl, format: Format) {
    match format {
        Format::Text => {
            println!("{prefix}mode: {}", g.mode.as_str());
            println!("{prefix}constructions: {}", g.constructions.len());
            println!(
                "{prefix}alphabet: {} symbols, {} bits each",
                dl.alphabet_size, dl.bits_per_symbol
            );
            println!(
                "{prefix}lexicon: {} symbols / {} bits",
                dl.lexicon_symbols, dl.lexicon_bits
            );
            println!(
                "{prefix}rules: {} symbols / {} bits",
                dl.rules_symbols, dl.rules_bits
            );
            println!(
                "{prefix}ontology: {} symbols / {} bits",
                dl.ontology_symbols, dl.ontology_bits
            );
            println!(
                "{prefix}grammar total: {} symbols / {} bits",
                dl.total_symbols, dl.total_bits
            );
            println!(
                "{prefix}meaning material: {} symbols ({} payload)",
                dl.meaning_symbols, dl.payload_symbols
            );
        }
        Format::Kv => {
            println!("{prefix}mode={}", g.mode.as_str());
            println!("{prefix}constructions={}", g.constructions.len());
            println!("{prefix}alphabet_size={}", dl.alphabet_size);
            println!("{prefix}bits_per_symbol={}", dl.bits_per_symbol);
            println!("{prefix}lexicon_symbols={}", dl.lexicon_symbols);
            println!("{prefix}rules_symbols={}", dl.rules_symbols);
            println!("{prefix}ontology_symbols={}", dl.ontology_symbols);
            println!("{prefix}total_symbols={}", dl.total_symbols);
            println!("{prefix}lexicon_bits={}", dl.lexicon_bits);
            println!("{prefix}rules_bits={}", dl.rules_bits);
            println!("{prefix}ontology_bits={}", dl.ontology_bits);
            println!("{prefix}total_bits={}", dl.total_bits);
            println!("{prefix}meaning_symbols={}", dl.meaning_symbols);
            println!("{prefix}payload_symbols={}", dl.payload_symbols);
        }
    }
}

fn cmd_mdl(g: &Grammar, corpus: Option<&std::path::Path>, format: Format) -> Result<ExitCode> {
    let dl = grammar_dl(g);
    print_grammar_dl("", g, &dl, format);
    if let Some(path) = corpus {
        let corpus = read_corpus(path)?;
        let data = data_dl(g, "grammar", &corpus)?;
        match format {
            Format::Text => {
                println!("corpus: {} sentences, {} bits", corpus.len(), data.total_bits);
                println!("grammar+data: {} bits", dl.total_bits + data.total_bits);
            }
            Format::Kv => {
                println!("corpus_sentences={}", corpus.len());
                println!("data_bits={}", data.total_bits);
                println!("combined_bits={}", dl.total_bits + data.total_bits);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(
    a_path: &std::path::Path,
    b_path: &std::path::Path,
    corpus_path: &std::path::Path,
    format: Format,
) -> Result<ExitCode> {
    let ga = load_grammar(a_path)?;
    let gb = load_grammar(b_path)?;
    let corpus = read_corpus(corpus_path)?;
    let cmp = compare(&ga, &gb, &corpus)?;
    match format {
        Format::Text => {
            print_grammar_dl("a.", &ga, &cmp.grammar_a, format);
            print_grammar_dl("b.", &gb, &cmp.grammar_b, format);
            println!("data: {} vs {} bits", cmp.data_a, cmp.data_b);
            println!("combined: {} vs {} bits", cmp.total_a, cmp.total_b);
            println!(
                "lexicon delta: {} symbols; total delta: {} symbols",
                cmp.delta_lexicon_symbols, cmp.delta_total_symbols
            );
            println!(
                "payload ratio: {:.2}; meaning ratio: {:.2}",
                cmp.ratio_semantic_payload, cmp.ratio_meaning_symbols
            );
            println!("verdict: {}", cmp.verdict.as_str());
        }
        Format::Kv => {
            print_grammar_dl("a.", &ga, &cmp.grammar_a, format);
            print_grammar_dl("b.", &gb, &cmp.grammar_b, format);
            println!("data_a={}", cmp.data_a);
            println!("data_b={}", cmp.data_b);
            println!("total_a={}", cmp.total_a);
            println!("total_b={}", cmp.total_b);
            println!("delta_lexicon_symbols={}", cmp.delta_lexicon_symbols);
            println!("delta_total_symbols={}", cmp.delta_total_symbols);
            println!("ratio_payload={:.4}", cmp.ratio_semantic_payload);
            println!("ratio_meaning={:.4}", cmp.ratio_meaning_symbols);
            println!("verdict={}", cmp.verdict.as_str());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(g: &Grammar, max_tokens: usize, limit: Option<usize>) -> Result<ExitCode> {
    let sentences = enumerate_sentences(g, max_tokens, limit)?;
    for s in &sentences {
        let ms: Vec<String> = s.meanings.iter().map(|m| m.to_string()).collect();
        println!("{} => {}", s.tokens.join(" "), ms.join(" | "));
    }
    eprintln!("{} sentences", sentences.len());
    Ok(ExitCode::SUCCESS)
}

fn cmd_repro() -> Result<ExitCode> {
    let results = checks::run_all();
    let width = results.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for (i, c) in results.iter().enumerate() {
        println!(
            "check {}/{} {:<width$}  {}  {}",
            i + 1,
            results.len(),
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.details,
        );
    }

    // Headline numbers behind the checks, spelled out once more as a table.
    let plain = number_grammar(10, false)?;
    let plain_lex = lexicalize(&plain)?;
    let da = grammar_dl(&plain);
    let db = grammar_dl(&plain_lex);
    println!();
    println!("claim                                     expected          measured");
    println!(
        "lexicon growth under lexicalization       99 symbols        {}",
        db.lexicon_symbols as i64 - da.lexicon_symbols as i64
    );
    println!(
        "growth per non-zero digit entry           11 symbols        {}",
        (db.lexicon_symbols as i64 - da.lexicon_symbols as i64) / 9
    );
    println!(
        "semantic payload ratio (base 10)          >= 10             {:.1}",
        db.payload_symbols as f64 / da.payload_symbols as f64
    );
    let passed = results.iter().filter(|c| c.pass).count();
    println!();
    println!("{passed}/{} checks passed", results.len());
    Ok(if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
