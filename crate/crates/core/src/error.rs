use thiserror::Error;

/// Errors shared by the grammar loader, parser, builders and report code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CxgError {
    #[error("syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("grammar contains no constructions")]
    NoConstructions,

    #[error("duplicate construction name `{0}`")]
    DuplicateName(String),

    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),

    #[error("unknown token `{token}` at index {index}")]
    UnknownToken { token: String, index: usize },

    #[error("base must be at least 2, got {0}")]
    InvalidBase(i64),

    #[error("lexicon is empty")]
    EmptyLexicon,

    #[error("lexicon error: {0}")]
    BadLexicon(String),

    #[error("grammar is already lexicalized")]
    AlreadyLexicalized,

    #[error("unsupported grammar shape: {0}")]
    UnsupportedShape(String),

    #[error("meaning evaluation error: {0}")]
    Eval(String),

    #[error("corpus sentence {index} not accepted by grammar `{grammar}`")]
    CorpusReject { index: usize, grammar: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, CxgError>;
