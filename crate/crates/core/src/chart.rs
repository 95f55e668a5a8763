//! Bottom-up chart parser over token sequences. Edges are packed by
//! (span, category, construction, constituents, sense), every derivation is
//! recoverable, and evaluation walks one derivation at a time so that a
//! word's meaning can see the sense its left neighbor was given in that
//! same derivation.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{CxgError, Result};
use crate::grammar::{FormPattern, Grammar, RhsElem, SenseRecord};
use crate::semantics::{self, LeafCtx, SemValue};

pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Child {
    Edge(EdgeId),
    /// Rule terminal consumed directly from the sentence.
    Token(usize),
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub span: (usize, usize),
    pub cat: String,
    /// Index into the grammar's construction list.
    pub cons: usize,
    /// Sense index pinned by this edge, for lexical entries with senses.
    pub sense: Option<usize>,
    pub children: Vec<Child>,
}

impl Edge {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

pub struct Parse<'g> {
    pub grammar: &'g Grammar,
    pub tokens: Vec<String>,
    pub edges: Vec<Edge>,
    /// Complete derivations: edges covering the sentence with a category
    /// subsumed by a start category, in discovery order.
    pub roots: Vec<EdgeId>,
}

pub fn tokenize(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

fn sense_of<'g>(g: &'g Grammar, e: &Edge) -> Option<&'g SenseRecord> {
    let k = e.sense?;
    match &g.constructions[e.cons].meaning {
        crate::grammar::MeaningExpr::Senses(rs) => rs.get(k),
        crate::grammar::MeaningExpr::SenseCases(cs) => cs.get(k).map(|(r, _)| r),
        _ => None,
    }
}

pub fn parse<'g>(g: &'g Grammar, tokens: &[String]) -> Result<Parse<'g>> {
    let known = g.known_tokens();
    for (index, t) in tokens.iter().enumerate() {
        if !known.contains(t.as_str()) {
            return Err(CxgError::UnknownToken {
                token: t.clone(),
                index,
            });
        }
    }

    let n = tokens.len();
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen: BTreeSet<(usize, usize, String, usize, Option<usize>, Vec<Child>)> =
        BTreeSet::new();
    let mut by_start: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();

    let add = |edges: &mut Vec<Edge>,
                   by_start: &mut BTreeMap<usize, Vec<EdgeId>>,
                   seen: &mut BTreeSet<(usize, usize, String, usize, Option<usize>, Vec<Child>)>,
                   e: Edge|
     -> bool {
        let key = (
            e.span.0,
            e.span.1,
            e.cat.clone(),
            e.cons,
            e.sense,
            e.children.clone(),
        );
        if !seen.insert(key) {
            return false;
        }
        by_start.entry(e.span.0).or_default().push(edges.len());
        edges.push(e);
        true
    };

    for (i, tok) in tokens.iter().enumerate() {
        for (ci, c) in g.constructions.iter().enumerate() {
            let FormPattern::Lexical { token } = &c.form else {
                continue;
            };
            if token != tok {
                continue;
            }
            match c.senses() {
                Some(senses) => {
                    for (k, s) in senses.iter().enumerate() {
                        add(
                            &mut edges,
                            &mut by_start,
                            &mut seen,
                            Edge {
                                span: (i, i + 1),
                                cat: s.cat.clone(),
                                cons: ci,
                                sense: Some(k),
                                children: Vec::new(),
                            },
                        );
                    }
                }
                None => {
                    let Some(cat) = &g.lexical_category else {
                        continue;
                    };
                    add(
                        &mut edges,
                        &mut by_start,
                        &mut seen,
                        Edge {
                            span: (i, i + 1),
                            cat: cat.clone(),
                            cons: ci,
                            sense: None,
                            children: Vec::new(),
                        },
                    );
                }
            }
        }
    }

    // Spans by increasing length; within a span, iterate rules to a fixed
    // point so unary chains still close (packing bounds the edge set).
    for len in 1..=n {
        for s in 0..=(n - len) {
            let t = s + len;
            loop {
                let mut grew = false;
                for (ci, c) in g.constructions.iter().enumerate() {
                    let FormPattern::Rule { lhs, rhs } = &c.form else {
                        continue;
                    };
                    for combo in match_seq(g, tokens, &edges, &by_start, rhs, s, t) {
                        grew |= add(
                            &mut edges,
                            &mut by_start,
                            &mut seen,
                            Edge {
                                span: (s, t),
                                cat: lhs.clone(),
                                cons: ci,
                                sense: None,
                                children: combo,
                            },
                        );
                    }
                }
                if !grew {
                    break;
                }
            }
        }
    }

    let roots = edges
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            e.span == (0, n) && n > 0 && g.start.iter().any(|st| g.is_subtype(&e.cat, st))
        })
        .map(|(i, _)| i)
        .collect();

    Ok(Parse {
        grammar: g,
        tokens: tokens.to_vec(),
        edges,
        roots,
    })
}

/// All ways to realize `elems` exactly over the span [s, t).
fn match_seq(
    g: &Grammar,
    tokens: &[String],
    edges: &[Edge],
    by_start: &BTreeMap<usize, Vec<EdgeId>>,
    elems: &[RhsElem],
    s: usize,
    t: usize,
) -> Vec<Vec<Child>> {
    let Some((first, rest)) = elems.split_first() else {
        return if s == t { vec![Vec::new()] } else { Vec::new() };
    };
    let mut out = Vec::new();
    match first {
        RhsElem::Terminal(tok) => {
            if s < t && tokens[s] == *tok {
                for tail in match_seq(g, tokens, edges, by_start, rest, s + 1, t) {
                    let mut combo = vec![Child::Token(s)];
                    combo.extend(tail);
                    out.push(combo);
                }
            }
        }
        RhsElem::Cat { cat, .. } => {
            let want_type = first.type_constraint();
            let ids = by_start.get(&s).cloned().unwrap_or_default();
            for id in ids {
                let e = &edges[id];
                if e.span.1 > t || !g.is_subtype(&e.cat, cat) {
                    continue;
                }
                if let Some(ty) = want_type {
                    match sense_of(g, e) {
                        Some(sr) if sr.sem_type == ty => {}
                        _ => continue,
                    }
                }
                for tail in match_seq(g, tokens, edges, by_start, rest, e.span.1, t) {
                    let mut combo = vec![Child::Edge(id)];
                    combo.extend(tail);
                    out.push(combo);
                }
            }
        }
    }
    out
}

impl<'g> Parse<'g> {
    pub fn derivation_count(&self) -> usize {
        self.roots.len()
    }

    /// Lexical edges of one derivation, left to right.
    fn leaves(&self, root: EdgeId) -> Vec<EdgeId> {
        fn walk(edges: &[Edge], id: EdgeId, out: &mut Vec<EdgeId>) {
            let e = &edges[id];
            if e.is_leaf() {
                out.push(id);
                return;
            }
            for ch in &e.children {
                if let Child::Edge(c) = ch {
                    walk(edges, *c, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.edges, root, &mut out);
        out
    }

    /// Evaluate one complete derivation and close it off at sentence level.
    pub fn evaluate(&self, root_index: usize) -> Result<SemValue> {
        let root = *self
            .roots
            .get(root_index)
            .ok_or_else(|| CxgError::Eval(format!("no derivation {root_index}")))?;
        let leaves = self.leaves(root);
        let mut leaf_pos: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for (k, id) in leaves.iter().enumerate() {
            leaf_pos.insert(*id, k);
        }
        let v = self.eval_edge(root, &leaves, &leaf_pos)?;
        semantics::finalize(&self.grammar.ontology, v)
    }

    fn eval_edge(
        &self,
        id: EdgeId,
        leaves: &[EdgeId],
        leaf_pos: &BTreeMap<EdgeId, usize>,
    ) -> Result<SemValue> {
        let g = self.grammar;
        let e = &self.edges[id];
        let c = &g.constructions[e.cons];
        if e.is_leaf() {
            let k = leaf_pos[&id];
            let i = e.span.0;
            let left_sense = if k > 0 {
                let prev = &self.edges[leaves[k - 1]];
                if prev.span.1 == i {
                    sense_of(g, prev)
                } else {
                    None
                }
            } else {
                None
            };
            let ctx = LeafCtx {
                token: &self.tokens[i],
                index: i,
                n_tokens: self.tokens.len(),
                left_token: if i > 0 { Some(self.tokens[i - 1].as_str()) } else { None },
                left_sense,
                sense: sense_of(g, e),
            };
            return semantics::eval_leaf(g, c, ctx);
        }
        let mut values = Vec::with_capacity(e.children.len());
        let mut senses = Vec::with_capacity(e.children.len());
        for ch in &e.children {
            match ch {
                Child::Edge(cid) => {
                    values.push(self.eval_edge(*cid, leaves, leaf_pos)?);
                    senses.push(sense_of(g, &self.edges[*cid]).cloned());
                }
                Child::Token(_) => {
                    values.push(SemValue::Void);
                    senses.push(None);
                }
            }
        }
        semantics::eval_rule(g, c, &values, &senses)
    }

    /// Sentence-level value of every derivation, in derivation order.
    pub fn interpretations(&self) -> Result<Vec<SemValue>> {
        (0..self.roots.len()).map(|i| self.evaluate(i)).collect()
    }

    /// Distinct non-⊥ sentence meanings, first-derivation order.
    pub fn meanings(&self) -> Result<Vec<SemValue>> {
        let mut out = Vec::new();
        for v in self.interpretations()? {
            if !v.is_bottom() && !out.contains(&v) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// A sentence is accepted when some derivation means something other
    /// than ⊥. No derivation at all also rejects.
    pub fn accepted(&self) -> Result<bool> {
        for i in 0..self.roots.len() {
            if !self.evaluate(i)?.is_bottom() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Labelled bracketing of one derivation, for display.
    pub fn bracketing(&self, root_index: usize) -> Result<String> {
        let root = *self
            .roots
            .get(root_index)
            .ok_or_else(|| CxgError::Eval(format!("no derivation {root_index}")))?;
        Ok(self.bracket_edge(root))
    }

    fn bracket_edge(&self, id: EdgeId) -> String {
        let e = &self.edges[id];
        if e.is_leaf() {
            return format!("({} {})", e.cat, self.tokens[e.span.0]);
        }
        let mut out = format!("({}", e.cat);
        for ch in &e.children {
            out.push(' ');
            match ch {
                Child::Edge(cid) => out.push_str(&self.bracket_edge(*cid)),
                Child::Token(i) => out.push_str(&self.tokens[*i]),
            }
        }
        out.push(')');
        out
    }
}

/// Parse a whitespace-joined sentence.
pub fn parse_str<'g>(g: &'g Grammar, sentence: &str) -> Result<Parse<'g>> {
    parse(g, &tokenize(sentence))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerated {
    pub tokens: Vec<String>,
    pub meanings: Vec<SemValue>,
}

/// All accepted sentences of at most `max_tokens` words, lexicographic by
/// token sequence, capped at `limit` sentences when given.
///
/// Constructional grammars are enumerated by a category/length table that
/// composes meanings as it goes and drops ⊥ constituents immediately, so
/// only semantically live material is ever extended. Lexicalized grammars
/// have flat forms, so candidate sequences are tried directly.
pub fn enumerate_sentences(
    g: &Grammar,
    max_tokens: usize,
    limit: Option<usize>,
) -> Result<Vec<Enumerated>> {
    match g.mode {
        crate::grammar::Mode::Constructional => enumerate_constructional(g, max_tokens, limit),
        crate::grammar::Mode::Lexicalized => enumerate_lexicalized(g, max_tokens, limit),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct GenEntry {
    tokens: Vec<String>,
    value: SemValue,
    head_sense: Option<SenseRecord>,
}

fn enumerate_constructional(
    g: &Grammar,
    max_tokens: usize,
    limit: Option<usize>,
) -> Result<Vec<Enumerated>> {
    let mut table: BTreeMap<(String, usize), BTreeSet<GenEntry>> = BTreeMap::new();

    for c in g.lexical_constructions() {
        let FormPattern::Lexical { token } = &c.form else {
            continue;
        };
        let ctx = LeafCtx {
            token,
            index: 0,
            n_tokens: 1,
            left_token: None,
            left_sense: None,
            sense: None,
        };
        match c.senses() {
            Some(senses) => {
                for s in senses {
                    let ctx = LeafCtx {
                        sense: Some(s),
                        ..ctx
                    };
                    let v = semantics::eval_leaf(g, c, ctx)?;
                    if v.is_bottom() {
                        continue;
                    }
                    table
                        .entry((s.cat.clone(), 1))
                        .or_default()
                        .insert(GenEntry {
                            tokens: vec![token.clone()],
                            value: v,
                            head_sense: Some(s.clone()),
                        });
                }
            }
            None => {
                let Some(cat) = &g.lexical_category else {
                    continue;
                };
                let v = semantics::eval_leaf(g, c, ctx)?;
                if v.is_bottom() {
                    continue;
                }
                table.entry((cat.clone(), 1)).or_default().insert(GenEntry {
                    tokens: vec![token.clone()],
                    value: v,
                    head_sense: None,
                });
            }
        }
    }

    let rules: Vec<(usize, &crate::grammar::Construction)> = g
        .constructions
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_lexical())
        .collect();

    for len in 1..=max_tokens {
        loop {
            let mut grew = false;
            for (_, c) in &rules {
                let FormPattern::Rule { lhs, rhs } = &c.form else {
                    continue;
                };
                for combo in compose(g, &table, rhs, len) {
                    let values: Vec<SemValue> = combo.iter().map(|p| p.value.clone()).collect();
                    let senses: Vec<Option<SenseRecord>> =
                        combo.iter().map(|p| p.head_sense.clone()).collect();
                    let v = semantics::eval_rule(g, c, &values, &senses)?;
                    if v.is_bottom() {
                        continue;
                    }
                    let tokens: Vec<String> =
                        combo.iter().flat_map(|p| p.tokens.clone()).collect();
                    grew |= table
                        .entry((lhs.clone(), len))
                        .or_default()
                        .insert(GenEntry {
                            tokens,
                            value: v,
                            head_sense: None,
                        });
                }
            }
            if !grew {
                break;
            }
        }
    }

    let mut by_sentence: BTreeMap<Vec<String>, BTreeSet<SemValue>> = BTreeMap::new();
    for ((cat, _len), entries) in &table {
        if !g.start.iter().any(|st| g.is_subtype(cat, st)) {
            continue;
        }
        for entry in entries {
            let v = semantics::finalize(&g.ontology, entry.value.clone())?;
            if v.is_bottom() {
                continue;
            }
            by_sentence.entry(entry.tokens.clone()).or_default().insert(v);
        }
    }

    let mut out: Vec<Enumerated> = by_sentence
        .into_iter()
        .map(|(tokens, meanings)| Enumerated {
            tokens,
            meanings: meanings.into_iter().collect(),
        })
        .collect();
    if let Some(cap) = limit {
        out.truncate(cap);
    }
    Ok(out)
}

/// All ways to fill `elems` with table entries using exactly `len` tokens.
fn compose(
    g: &Grammar,
    table: &BTreeMap<(String, usize), BTreeSet<GenEntry>>,
    elems: &[RhsElem],
    len: usize,
) -> Vec<Vec<GenEntry>> {
    let Some((first, rest)) = elems.split_first() else {
        return if len == 0 { vec![Vec::new()] } else { Vec::new() };
    };
    let mut out = Vec::new();
    match first {
        RhsElem::Terminal(tok) => {
            if len >= 1 {
                for tail in compose(g, table, rest, len - 1) {
                    let mut combo = vec![GenEntry {
                        tokens: vec![tok.clone()],
                        value: SemValue::Void,
                        head_sense: None,
                    }];
                    combo.extend(tail);
                    out.push(combo);
                }
            }
        }
        RhsElem::Cat { cat, .. } => {
            let want_type = first.type_constraint();
            for l in 1..len.saturating_sub(rest.len()).max(0) + 1 {
                if rest.is_empty() && l != len {
                    continue;
                }
                for ((c, cl), entries) in table.iter() {
                    if *cl != l || !g.is_subtype(c, cat) {
                        continue;
                    }
                    for entry in entries {
                        if let Some(ty) = want_type {
                            match &entry.head_sense {
                                Some(sr) if sr.sem_type == ty => {}
                                _ => continue,
                            }
                        }
                        for tail in compose(g, table, rest, len - l) {
                            let mut combo = vec![entry.clone()];
                            combo.extend(tail);
                            out.push(combo);
                        }
                    }
                }
            }
        }
    }
    out
}

fn enumerate_lexicalized(
    g: &Grammar,
    max_tokens: usize,
    limit: Option<usize>,
) -> Result<Vec<Enumerated>> {
    let vocab: Vec<String> = g
        .known_tokens()
        .into_iter()
        .map(str::to_string)
        .collect();
    let mut out = Vec::new();
    let mut seq: Vec<String> = Vec::new();

    fn go(
        g: &Grammar,
        vocab: &[String],
        seq: &mut Vec<String>,
        max: usize,
        limit: Option<usize>,
        out: &mut Vec<Enumerated>,
    ) -> Result<()> {
        if let Some(cap) = limit {
            if out.len() >= cap {
                return Ok(());
            }
        }
        if !seq.is_empty() {
            let p = parse(g, seq)?;
            let meanings = p.meanings()?;
            if !meanings.is_empty() {
                out.push(Enumerated {
                    tokens: seq.clone(),
                    meanings,
                });
            }
        }
        if seq.len() == max {
            return Ok(());
        }
        for w in vocab {
            seq.push(w.clone());
            go(g, vocab, seq, max, limit, out)?;
            seq.pop();
        }
        Ok(())
    }

    go(g, &vocab, &mut seq, max_tokens, limit, &mut out)?;
    out.sort_by(|a, b| a.tokens.cmp(&b.tokens));
    Ok(out)
}
