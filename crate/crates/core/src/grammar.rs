//! Grammar data model: constructions are ⟨context; form; meaning⟩ triples,
//! grouped into a grammar together with parser metadata (start categories,
//! category subsumption) and an ontology (PP typing table, fact conflicts,
//! verb frames, postmodifier markers).

use std::collections::{BTreeMap, BTreeSet};

use crate::canon;
use crate::error::{CxgError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Constructional,
    Lexicalized,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Constructional => "constructional",
            Mode::Lexicalized => "lexicalized",
        }
    }
}

/// Static context parameter value. Number grammars carry `Base = B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CtxValue {
    Int(i64),
    Tag(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Context {
    pub params: Vec<(String, CtxValue)>,
}

impl Context {
    pub fn empty() -> Self {
        Context { params: Vec::new() }
    }

    pub fn with_base(base: i64) -> Self {
        Context {
            params: vec![("Base".to_string(), CtxValue::Int(base))],
        }
    }

    pub fn int_param(&self, name: &str) -> Option<i64> {
        self.params.iter().find_map(|(n, v)| match v {
            CtxValue::Int(i) if n == name => Some(*i),
            _ => None,
        })
    }
}

/// One lexical sense: category, semantic type, sense id.
/// Preposition senses use the category `prep` and carry the token as id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SenseRecord {
    pub cat: String,
    pub sem_type: String,
    pub id: String,
}

impl SenseRecord {
    pub fn new(cat: &str, sem_type: &str, id: &str) -> Self {
        SenseRecord {
            cat: cat.to_string(),
            sem_type: sem_type.to_string(),
            id: id.to_string(),
        }
    }

    pub fn prep(token: &str) -> Self {
        SenseRecord::new("prep", "prep", token)
    }

    pub fn marker(token: &str) -> Self {
        SenseRecord::new("marker", "marker", token)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FrameKind {
    Sv,
    Svo,
    Svoo,
}

impl FrameKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FrameKind::Sv => "SV",
            FrameKind::Svo => "SVO",
            FrameKind::Svoo => "SVOO",
        }
    }

    pub fn from_str(s: &str) -> Option<FrameKind> {
        match s {
            "SV" => Some(FrameKind::Sv),
            "SVO" => Some(FrameKind::Svo),
            "SVOO" => Some(FrameKind::Svoo),
            _ => None,
        }
    }
}

/// Pattern over the token immediately to the left, used by lexicalized
/// per-word meaning tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeftPat {
    NoLeft,
    Tok(String),
    NounWord,
    VerbWord,
    MarkerWord,
}

/// Meaning expressions. Constructional grammars may only use the local
/// fragment (constants, constituent references, context parameters,
/// operators, frames, facts). The position/left-context fragment is legal
/// only in lexicalized grammars.
#[derive(Debug, Clone, PartialEq)]
pub enum MeaningExpr {
    Num(i64),
    Sym(String),
    /// Context parameter reference by name.
    Ctx(String),
    /// μ(i): meaning of the i-th right-hand-side constituent, 1-based.
    Arg(usize),
    /// pos(i): distance of constituent i's token from the right sentence end.
    Pos(usize),
    /// Digit value of the left-neighbor token; -1 when there is none.
    LeftDigit,
    Add(Box<MeaningExpr>, Box<MeaningExpr>),
    Mul(Box<MeaningExpr>, Box<MeaningExpr>),
    Pow(Box<MeaningExpr>, Box<MeaningExpr>),
    Modulo(Box<MeaningExpr>, Box<MeaningExpr>),
    /// body if lhs > rhs, ⊥ otherwise.
    IfGt {
        lhs: Box<MeaningExpr>,
        rhs: Box<MeaningExpr>,
        body: Box<MeaningExpr>,
    },
    Bottom,
    /// Sense-set literal of a lexical entry.
    Senses(Vec<SenseRecord>),
    /// Lexicalized lexical entry: one meaning body per sense.
    SenseCases(Vec<(SenseRecord, MeaningExpr)>),
    /// The sense pinned by the current sense case.
    SelfSense,
    /// Role frame constructor: ordered [role, value] pairs.
    Frame(Vec<(String, MeaningExpr)>),
    /// body if the verb constituent's sense licenses the frame kind, ⊥ otherwise.
    License {
        frame: FrameKind,
        verb: usize,
        body: Box<MeaningExpr>,
    },
    /// Typed fact from the PP table: type = table[prep token, noun type],
    /// payload = noun sense, optionally postmodified by `tag`.
    /// ⊥ when the (preposition, type) pair is untyped.
    PpFact {
        prep: usize,
        noun: usize,
        tag: Option<String>,
    },
    /// Guarded union: clause plus adjunct fact, ⊥ on a conflicting fact type.
    Adjoin(Box<MeaningExpr>, Box<MeaningExpr>),
    /// Universal sequence-fold-with-append combinator.
    Append(Box<MeaningExpr>, Box<MeaningExpr>),
    /// Dispatch on the left-neighbor word; unmatched input is ⊥.
    CondLeft(Vec<(LeftPat, MeaningExpr)>),
    /// Contribute a typed fact unless its type conflicts with one already
    /// accumulated to the left, in which case ⊥.
    NewFact {
        fact_type: String,
        payload: Box<MeaningExpr>,
    },
    /// Contribution ops for lexicalized clause building.
    AgentStart(Box<MeaningExpr>),
    ActionAdd {
        verb: Box<MeaningExpr>,
        frames: Vec<FrameKind>,
    },
    ObjectAdd(Box<MeaningExpr>),
    SecondObjectAdd(Box<MeaningExpr>),
    /// Pending-preposition marker contributed by a preposition word.
    PrepMark,
    /// Postmodify the most recently added fact whose payload sense has the
    /// required type and no tag yet.
    RetagLast { required_type: String },
}

impl MeaningExpr {
    pub fn add(a: MeaningExpr, b: MeaningExpr) -> MeaningExpr {
        MeaningExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: MeaningExpr, b: MeaningExpr) -> MeaningExpr {
        MeaningExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(a: MeaningExpr, b: MeaningExpr) -> MeaningExpr {
        MeaningExpr::Pow(Box::new(a), Box::new(b))
    }

    pub fn modulo(a: MeaningExpr, b: MeaningExpr) -> MeaningExpr {
        MeaningExpr::Modulo(Box::new(a), Box::new(b))
    }

    pub fn if_gt(lhs: MeaningExpr, rhs: MeaningExpr, body: MeaningExpr) -> MeaningExpr {
        MeaningExpr::IfGt {
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
            body: Box::new(body),
        }
    }

    pub fn walk(&self, f: &mut impl FnMut(&MeaningExpr)) {
        f(self);
        match self {
            MeaningExpr::Add(a, b)
            | MeaningExpr::Mul(a, b)
            | MeaningExpr::Pow(a, b)
            | MeaningExpr::Modulo(a, b)
            | MeaningExpr::Adjoin(a, b)
            | MeaningExpr::Append(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            MeaningExpr::IfGt { lhs, rhs, body } => {
                lhs.walk(f);
                rhs.walk(f);
                body.walk(f);
            }
            MeaningExpr::SenseCases(cases) => {
                for (_, e) in cases {
                    e.walk(f);
                }
            }
            MeaningExpr::Frame(pairs) => {
                for (_, e) in pairs {
                    e.walk(f);
                }
            }
            MeaningExpr::License { body, .. } => body.walk(f),
            MeaningExpr::CondLeft(arms) => {
                for (_, e) in arms {
                    e.walk(f);
                }
            }
            MeaningExpr::NewFact { payload, .. } => payload.walk(f),
            MeaningExpr::AgentStart(e)
            | MeaningExpr::ObjectAdd(e)
            | MeaningExpr::SecondObjectAdd(e) => e.walk(f),
            MeaningExpr::ActionAdd { verb, .. } => verb.walk(f),
            _ => {}
        }
    }

    /// Maximum constituent index referenced anywhere in the expression.
    pub fn max_arg(&self) -> usize {
        let mut max = 0;
        self.walk(&mut |e| match e {
            MeaningExpr::Arg(i) | MeaningExpr::Pos(i) => max = max.max(*i),
            MeaningExpr::License { verb, .. } => max = max.max(*verb),
            MeaningExpr::PpFact { prep, noun, .. } => max = max.max(*prep).max(*noun),
            _ => {}
        });
        max
    }

    /// True for the position/left-context fragment that only lexicalized
    /// grammars may use.
    fn needs_left_context(&self) -> bool {
        matches!(
            self,
            MeaningExpr::Pos(_)
                | MeaningExpr::LeftDigit
                | MeaningExpr::SenseCases(_)
                | MeaningExpr::CondLeft(_)
                | MeaningExpr::NewFact { .. }
                | MeaningExpr::AgentStart(_)
                | MeaningExpr::ActionAdd { .. }
                | MeaningExpr::ObjectAdd(_)
                | MeaningExpr::SecondObjectAdd(_)
                | MeaningExpr::PrepMark
                | MeaningExpr::RetagLast { .. }
        )
    }
}

/// Feature argument on a right-hand-side category slot, e.g. the `hour` in
/// `noun(hour,X)` or the captured variable `p` in `prep(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeatureArg {
    Var(String),
    Const(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhsElem {
    Terminal(String),
    Cat { cat: String, args: Vec<FeatureArg> },
}

impl RhsElem {
    pub fn cat(name: &str) -> RhsElem {
        RhsElem::Cat {
            cat: name.to_string(),
            args: Vec::new(),
        }
    }

    pub fn cat_name(&self) -> Option<&str> {
        match self {
            RhsElem::Cat { cat, .. } => Some(cat),
            RhsElem::Terminal(_) => None,
        }
    }

    /// Semantic-type constraint, when the first feature argument is constant.
    pub fn type_constraint(&self) -> Option<&str> {
        match self {
            RhsElem::Cat { args, .. } => args.first().and_then(|a| match a {
                FeatureArg::Const(t) => Some(t.as_str()),
                FeatureArg::Var(_) => None,
            }),
            RhsElem::Terminal(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FormPattern {
    /// One terminal token, no category rewrite; the entry's categories come
    /// from its sense records or from the grammar's default lexical category.
    Lexical { token: String },
    Rule { lhs: String, rhs: Vec<RhsElem> },
}

impl FormPattern {
    pub fn arity(&self) -> usize {
        match self {
            FormPattern::Lexical { .. } => 1,
            FormPattern::Rule { rhs, .. } => rhs.len(),
        }
    }

    pub fn is_lexical(&self) -> bool {
        matches!(self, FormPattern::Lexical { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub name: String,
    pub context: Context,
    pub form: FormPattern,
    pub meaning: MeaningExpr,
}

impl Construction {
    pub fn is_lexical(&self) -> bool {
        self.form.is_lexical()
    }

    /// Sense records attached to a lexical entry, if any.
    pub fn senses(&self) -> Option<Vec<&SenseRecord>> {
        match &self.meaning {
            MeaningExpr::Senses(rs) => Some(rs.iter().collect()),
            MeaningExpr::SenseCases(cases) => Some(cases.iter().map(|(r, _)| r).collect()),
            _ => None,
        }
    }
}

/// PP typing table plus the other declared semantic tables.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ontology {
    /// (preposition token, noun semantic type) → fact type, in declared order.
    pub pp_table: Vec<((String, String), String)>,
    /// Symmetric conflict pairs between fact types; equality always conflicts.
    pub conflicts: Vec<(String, String)>,
    /// Verb sense id → clause frames it licenses.
    pub verb_frames: Vec<(String, Vec<FrameKind>)>,
    /// Postmodifier tokens with the semantic type they apply to, e.g. (pm, hour).
    pub markers: Vec<(String, String)>,
}

impl Ontology {
    pub fn is_empty(&self) -> bool {
        self.pp_table.is_empty()
            && self.conflicts.is_empty()
            && self.verb_frames.is_empty()
            && self.markers.is_empty()
    }

    pub fn pp_type_lookup(&self, prep: &str, noun_type: &str) -> Option<&str> {
        self.pp_table
            .iter()
            .find(|((p, t), _)| p == prep && t == noun_type)
            .map(|(_, ty)| ty.as_str())
    }

    pub fn conflicts_with(&self, a: &str, b: &str) -> bool {
        a == b
            || self
                .conflicts
                .iter()
                .any(|(x, y)| (x == a && y == b) || (x == b && y == a))
    }

    pub fn frames_of(&self, verb_sense: &str) -> Option<&[FrameKind]> {
        self.verb_frames
            .iter()
            .find(|(id, _)| id == verb_sense)
            .map(|(_, fs)| fs.as_slice())
    }

    pub fn preps_for_type(&self, noun_type: &str) -> Vec<(&str, &str)> {
        self.pp_table
            .iter()
            .filter(|((_, t), _)| t == noun_type)
            .map(|((p, _), ty)| (p.as_str(), ty.as_str()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grammar {
    pub mode: Mode,
    pub constructions: Vec<Construction>,
    /// Categories accepted as a full sentence.
    pub start: Vec<String>,
    /// Declared subsumption pairs (sub, super), not transitive.
    pub subtypes: Vec<(String, String)>,
    /// Default category for lexical entries whose meaning carries no senses.
    pub lexical_category: Option<String>,
    pub ontology: Ontology,
    /// Symbol inventory of the canonical serialization, computed on finalize.
    pub alphabet: BTreeSet<char>,
}

impl Grammar {
    pub fn new(mode: Mode) -> Self {
        Grammar {
            mode,
            constructions: Vec::new(),
            start: Vec::new(),
            subtypes: Vec::new(),
            lexical_category: None,
            ontology: Ontology::default(),
            alphabet: BTreeSet::new(),
        }
    }

    /// Recompute the alphabet from the canonical serialization.
    pub fn finalize(&mut self) {
        self.alphabet = canon::grammar_alphabet(self);
    }

    pub fn lexical_constructions(&self) -> impl Iterator<Item = &Construction> {
        self.constructions.iter().filter(|c| c.is_lexical())
    }

    pub fn structural_constructions(&self) -> impl Iterator<Item = &Construction> {
        self.constructions.iter().filter(|c| !c.is_lexical())
    }

    /// Distinct terminal tokens of the lexicon.
    pub fn lexicon_tokens(&self) -> BTreeSet<&str> {
        self.lexical_constructions()
            .filter_map(|c| match &c.form {
                FormPattern::Lexical { token } => Some(token.as_str()),
                _ => None,
            })
            .collect()
    }

    /// Tokens the parser recognizes: lexicon tokens plus rule terminals.
    pub fn known_tokens(&self) -> BTreeSet<&str> {
        let mut known = self.lexicon_tokens();
        for c in self.structural_constructions() {
            if let FormPattern::Rule { rhs, .. } = &c.form {
                for e in rhs {
                    if let RhsElem::Terminal(t) = e {
                        known.insert(t.as_str());
                    }
                }
            }
        }
        known
    }

    pub fn is_subtype(&self, sub: &str, sup: &str) -> bool {
        sub == sup || self.subtypes.iter().any(|(a, b)| a == sub && b == sup)
    }

    /// Notation base for rendering integers, from the construction context.
    pub fn notation_base(&self, ctx: &Context) -> i64 {
        ctx.int_param("Base").filter(|b| *b >= 2).unwrap_or(10)
    }

    pub fn construction(&self, name: &str) -> Option<&Construction> {
        self.constructions.iter().find(|c| c.name == name)
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Shorthand that turns validation errors into a hard error.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.errors.first() {
            None => Ok(()),
            Some((name, msg)) => Err(CxgError::InvalidGrammar(format!("{name}: {msg}"))),
        }
    }
}

/// Per-construction diagnostics; an empty error list means the grammar is
/// usable by the parser.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<(String, String)>,
    pub warnings: Vec<(String, String)>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

fn validate(g: &Grammar) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut err = |name: &str, msg: String| report.errors.push((name.to_string(), msg));

    if g.constructions.is_empty() {
        err("<grammar>", "no constructions".to_string());
        return report;
    }
    if g.start.is_empty() {
        err("<grammar>", "no start category declared".to_string());
    }

    let mut seen = BTreeSet::new();
    for c in &g.constructions {
        if !seen.insert(c.name.as_str()) {
            err(&c.name, "duplicate construction name".to_string());
        }
    }

    for c in &g.constructions {
        for (pname, v) in &c.context.params {
            if pname == "Base" {
                match v {
                    CtxValue::Int(b) if *b >= 2 => {}
                    CtxValue::Int(b) => err(&c.name, format!("Base must be >= 2, got {b}")),
                    CtxValue::Tag(_) => err(&c.name, "Base must be an integer".to_string()),
                }
            }
        }

        match &c.form {
            FormPattern::Lexical { token } => {
                if token.is_empty() || token.chars().any(char::is_whitespace) {
                    err(&c.name, "lexical token must be one whitespace-free token".to_string());
                }
                match &c.meaning {
                    MeaningExpr::Senses(rs) if rs.is_empty() => {
                        err(&c.name, "empty sense set".to_string())
                    }
                    MeaningExpr::SenseCases(cs) if cs.is_empty() => {
                        err(&c.name, "empty sense cases".to_string())
                    }
                    MeaningExpr::Senses(_) | MeaningExpr::SenseCases(_) => {}
                    _ if g.lexical_category.is_none() => err(
                        &c.name,
                        "entry has no sense records and the grammar declares no lexcat".to_string(),
                    ),
                    _ => {}
                }
                if let Some(senses) = c.senses() {
                    // Lexicalized entries carry their verb frames inline, so
                    // the ontology check applies to bare sense sets only.
                    let bare = matches!(c.meaning, MeaningExpr::Senses(_));
                    for r in senses {
                        if r.id.contains('@') {
                            err(&c.name, format!("sense id `{}` uses reserved `@`", r.id));
                        }
                        if bare && r.cat == "verb" && g.ontology.frames_of(&r.id).is_none() {
                            err(&c.name, format!("verb sense `{}` has no frame declaration", r.id));
                        }
                    }
                }
            }
            FormPattern::Rule { lhs, rhs } => {
                if lhs.is_empty() {
                    err(&c.name, "rule without left-hand category".to_string());
                }
                if rhs.is_empty() {
                    err(&c.name, "rule with empty right-hand side".to_string());
                }
                if !rhs.iter().any(|e| matches!(e, RhsElem::Cat { .. })) {
                    err(&c.name, "rule right-hand side has no category".to_string());
                }
            }
        }

        let arity = c.form.arity();
        if c.meaning.max_arg() > arity {
            err(
                &c.name,
                format!("meaning references constituent {} beyond arity {arity}", c.meaning.max_arg()),
            );
        }

        match g.mode {
            Mode::Constructional => {
                let mut bad = None;
                c.meaning.walk(&mut |e| {
                    if bad.is_none() && e.needs_left_context() {
                        bad = Some(format!("{e:?}"));
                    }
                });
                if let Some(node) = bad {
                    err(
                        &c.name,
                        format!("constructional meanings must be local; found {node}"),
                    );
                }
            }
            Mode::Lexicalized => {
                if !c.is_lexical() && !is_universal_fold(c) {
                    err(
                        &c.name,
                        "non-universal structural rule in lexicalized mode".to_string(),
                    );
                }
            }
        }
    }

    // Every PP-table noun type must be realized by some noun sense.
    let mut noun_types = BTreeSet::new();
    for c in g.lexical_constructions() {
        if let Some(senses) = c.senses() {
            for r in senses {
                if r.cat == "noun" {
                    noun_types.insert(r.sem_type.clone());
                }
            }
        }
    }
    for ((p, t), _) in &g.ontology.pp_table {
        if !noun_types.is_empty() && !noun_types.contains(t) {
            report.warnings.push((
                "<ontology>".to_string(),
                format!("pp table key ({p},{t}) matches no noun sense"),
            ));
        }
    }

    let computed = canon::grammar_alphabet(g);
    if !g.alphabet.is_empty() && g.alphabet != computed {
        err(
            "<grammar>",
            "declared alphabet does not cover the serialized constructions".to_string(),
        );
    }

    report
}

/// The two permitted lexicalized combinators: a binary category rule whose
/// meaning folds the pair with `+` or with append.
pub fn is_universal_fold(c: &Construction) -> bool {
    let FormPattern::Rule { rhs, .. } = &c.form else {
        return false;
    };
    if rhs.len() != 2 || !rhs.iter().all(|e| matches!(e, RhsElem::Cat { .. })) {
        return false;
    }
    matches!(
        &c.meaning,
        MeaningExpr::Add(a, b) | MeaningExpr::Append(a, b)
            if matches!(**a, MeaningExpr::Arg(1)) && matches!(**b, MeaningExpr::Arg(2))
    )
}

/// Kind of fold a lexicalized grammar uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldKind {
    Sum,
    AppendFold,
}

pub fn fold_kind(g: &Grammar) -> Option<FoldKind> {
    g.structural_constructions().find_map(|c| match &c.meaning {
        MeaningExpr::Add(..) => Some(FoldKind::Sum),
        MeaningExpr::Append(..) => Some(FoldKind::AppendFold),
        _ => None,
    })
}

/// Map from word token to the sense records of its lexical entry.
pub fn sense_index(g: &Grammar) -> BTreeMap<&str, Vec<&SenseRecord>> {
    let mut map = BTreeMap::new();
    for c in g.lexical_constructions() {
        if let (FormPattern::Lexical { token }, Some(senses)) = (&c.form, c.senses()) {
            map.insert(token.as_str(), senses);
        }
    }
    map
}
