//! Meaning evaluation. Constructional meanings compose child values
//! locally; lexicalized meanings contribute to a clause accumulator that a
//! single fold rule threads left to right. ⊥ absorbs through every
//! combinator.

use std::fmt;

use crate::canon;
use crate::error::{CxgError, Result};
use crate::grammar::{Construction, FrameKind, Grammar, LeftPat, MeaningExpr, SenseRecord};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypedFact {
    pub fact_type: String,
    pub payload: SenseRecord,
}

/// Clause state while folding a lexicalized sentence left to right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ClauseAccum {
    /// Role slots in clause order; the action is kept first.
    pub roles: Vec<(String, SenseRecord)>,
    pub facts: Vec<TypedFact>,
    /// Frames licensed by the verb once the action role is filled.
    pub licensed: Vec<FrameKind>,
    /// Preposition waiting for its noun.
    pub pending_prep: Option<String>,
}

impl ClauseAccum {
    fn is_unit(&self) -> bool {
        self.roles.is_empty()
            && self.facts.is_empty()
            && self.licensed.is_empty()
            && self.pending_prep.is_none()
    }

    fn role(&self, name: &str) -> Option<&SenseRecord> {
        self.roles.iter().find(|(r, _)| r == name).map(|(_, s)| s)
    }

    fn role_shape(&self) -> Option<FrameKind> {
        let labels: Vec<&str> = self.roles.iter().map(|(r, _)| r.as_str()).collect();
        match labels.as_slice() {
            ["action", "agent"] => Some(FrameKind::Sv),
            ["action", "agent", "object"] => Some(FrameKind::Svo),
            ["action", "agent", "recipient", "object"] => Some(FrameKind::Svoo),
            _ => None,
        }
    }
}

/// One word's pending effect on the clause accumulator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Contribution {
    Agent(SenseRecord),
    Action {
        sense: SenseRecord,
        frames: Vec<FrameKind>,
    },
    Object(SenseRecord),
    SecondObject(SenseRecord),
    Prep(String),
    NewFact {
        fact_type: String,
        payload: SenseRecord,
    },
    Retag {
        tag: String,
        required_type: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SemValue {
    Number(i64),
    Sense(SenseRecord),
    Frame {
        roles: Vec<(String, SenseRecord)>,
        facts: Vec<TypedFact>,
    },
    Fact(TypedFact),
    Accum(ClauseAccum),
    Contrib(Contribution),
    /// Placeholder for constituents that carry no meaning (rule terminals).
    Void,
    Bottom,
}

impl SemValue {
    pub fn is_bottom(&self) -> bool {
        matches!(self, SemValue::Bottom)
    }
}

impl fmt::Display for SemValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemValue::Number(n) => write!(f, "{n}"),
            SemValue::Sense(r) => write!(f, "{}", canon::render_sense(r)),
            SemValue::Frame { roles, facts } => {
                write!(f, "[")?;
                let mut first = true;
                for (role, s) in roles {
                    if !first {
                        write!(f, ",")?;
                    }
                    first = false;
                    write!(f, "[{role},{}]", s.id)?;
                }
                for fact in facts {
                    if !first {
                        write!(f, ",")?;
                    }
                    first = false;
                    write!(f, "[{},{}]", fact.fact_type, fact.payload.id)?;
                }
                write!(f, "]")
            }
            SemValue::Fact(t) => write!(f, "[{},{}]", t.fact_type, t.payload.id),
            SemValue::Accum(a) => write!(f, "<accum:{} roles>", a.roles.len()),
            SemValue::Contrib(_) => write!(f, "<contribution>"),
            SemValue::Void => write!(f, "∅"),
            SemValue::Bottom => write!(f, "⊥"),
        }
    }
}

fn as_number(v: &SemValue) -> Result<i64> {
    match v {
        SemValue::Number(n) => Ok(*n),
        other => Err(CxgError::Eval(format!("expected number, got {other}"))),
    }
}

fn as_sense(v: &SemValue) -> Result<&SenseRecord> {
    match v {
        SemValue::Sense(r) => Ok(r),
        other => Err(CxgError::Eval(format!("expected sense, got {other}"))),
    }
}

fn checked(op: &str, r: Option<i64>) -> Result<i64> {
    r.ok_or_else(|| CxgError::Eval(format!("integer overflow in {op}")))
}

/// Context available when evaluating one leaf of a derivation.
#[derive(Debug, Clone, Copy)]
pub struct LeafCtx<'a> {
    pub token: &'a str,
    pub index: usize,
    pub n_tokens: usize,
    pub left_token: Option<&'a str>,
    pub left_sense: Option<&'a SenseRecord>,
    /// Sense pinned for this leaf by the derivation.
    pub sense: Option<&'a SenseRecord>,
}

enum Scope<'a> {
    Leaf(LeafCtx<'a>),
    Rule {
        children: &'a [SemValue],
        child_senses: &'a [Option<SenseRecord>],
    },
}

struct EvalCtx<'a> {
    g: &'a Grammar,
    base: Option<i64>,
    scope: Scope<'a>,
}

impl<'a> EvalCtx<'a> {
    fn child(&self, i: usize) -> Result<&SemValue> {
        match &self.scope {
            Scope::Rule { children, .. } => children
                .get(i - 1)
                .ok_or_else(|| CxgError::Eval(format!("no constituent {i}"))),
            Scope::Leaf(_) => Err(CxgError::Eval("constituent reference in a word".into())),
        }
    }

    fn child_sense(&self, i: usize) -> Result<&SenseRecord> {
        match &self.scope {
            Scope::Rule { child_senses, .. } => as_sense(self.child(i)?).or_else(|_| {
                child_senses
                    .get(i - 1)
                    .and_then(|s| s.as_ref())
                    .ok_or_else(|| CxgError::Eval(format!("constituent {i} has no sense")))
            }),
            Scope::Leaf(_) => Err(CxgError::Eval("constituent reference in a word".into())),
        }
    }
}

fn eval_expr(e: &MeaningExpr, cx: &EvalCtx) -> Result<SemValue> {
    use MeaningExpr as M;
    use SemValue as V;
    Ok(match e {
        M::Num(n) => V::Number(*n),
        M::Sym(s) => return Err(CxgError::Eval(format!("symbol `{s}` has no value"))),
        M::Ctx(name) => match cx.base {
            Some(b) if name == "Base" => V::Number(b),
            _ => return Err(CxgError::Eval(format!("unbound context parameter `{name}`"))),
        },
        M::Arg(i) => match &cx.scope {
            Scope::Rule { .. } => cx.child(*i)?.clone(),
            // A word's sole constituent is its own token.
            Scope::Leaf(l) => match l.sense {
                Some(s) => V::Sense(s.clone()),
                None => {
                    let b = cx.base.unwrap_or(10);
                    match canon::digit_val(l.token.chars().next().unwrap_or(' ')) {
                        Some(d) if l.token.chars().count() == 1 && d < b => V::Number(d),
                        _ => {
                            return Err(CxgError::Eval(format!(
                                "token `{}` is not a digit",
                                l.token
                            )))
                        }
                    }
                }
            },
        },
        M::Pos(_) => match &cx.scope {
            Scope::Leaf(l) => V::Number((l.n_tokens - 1 - l.index) as i64),
            Scope::Rule { .. } => {
                return Err(CxgError::Eval("pos() outside a word".into()))
            }
        },
        M::LeftDigit => match &cx.scope {
            Scope::Leaf(l) => match l.left_token {
                None => V::Number(-1),
                Some(t) => {
                    let c = t.chars().next().unwrap_or(' ');
                    match canon::digit_val(c) {
                        Some(d) if t.chars().count() == 1 => V::Number(d),
                        _ => return Err(CxgError::Eval(format!("left token `{t}` is not a digit"))),
                    }
                }
            },
            Scope::Rule { .. } => return Err(CxgError::Eval("left outside a word".into())),
        },
        M::Add(a, b) => {
            let (a, b) = (eval_expr(a, cx)?, eval_expr(b, cx)?);
            if a.is_bottom() || b.is_bottom() {
                return Ok(V::Bottom);
            }
            V::Number(checked("+", as_number(&a)?.checked_add(as_number(&b)?))?)
        }
        M::Mul(a, b) => {
            let (a, b) = (eval_expr(a, cx)?, eval_expr(b, cx)?);
            if a.is_bottom() || b.is_bottom() {
                return Ok(V::Bottom);
            }
            V::Number(checked("*", as_number(&a)?.checked_mul(as_number(&b)?))?)
        }
        M::Pow(a, b) => {
            let (a, b) = (eval_expr(a, cx)?, eval_expr(b, cx)?);
            if a.is_bottom() || b.is_bottom() {
                return Ok(V::Bottom);
            }
            let base = as_number(&a)?;
            let exp = as_number(&b)?;
            if exp < 0 || exp > u32::MAX as i64 {
                return Err(CxgError::Eval(format!("bad exponent {exp}")));
            }
            V::Number(checked("**", base.checked_pow(exp as u32))?)
        }
        M::Modulo(a, b) => {
            let (a, b) = (eval_expr(a, cx)?, eval_expr(b, cx)?);
            if a.is_bottom() || b.is_bottom() {
                return Ok(V::Bottom);
            }
            let m = as_number(&b)?;
            if m == 0 {
                return Err(CxgError::Eval("mod by zero".into()));
            }
            V::Number(as_number(&a)?.rem_euclid(m))
        }
        M::IfGt { lhs, rhs, body } => {
            let (l, r) = (eval_expr(lhs, cx)?, eval_expr(rhs, cx)?);
            if l.is_bottom() || r.is_bottom() {
                return Ok(V::Bottom);
            }
            if as_number(&l)? > as_number(&r)? {
                eval_expr(body, cx)?
            } else {
                V::Bottom
            }
        }
        M::Bottom => V::Bottom,
        M::Senses(_) | M::SenseCases(_) => match &cx.scope {
            Scope::Leaf(l) => match (l.sense, e) {
                (Some(s), M::Senses(_)) => V::Sense(s.clone()),
                (Some(s), M::SenseCases(cases)) => {
                    let body = cases
                        .iter()
                        .find(|(r, _)| r == s)
                        .map(|(_, b)| b)
                        .ok_or_else(|| {
                            CxgError::Eval(format!("no case for sense `{}`", s.id))
                        })?;
                    eval_expr(body, cx)?
                }
                (None, _) => return Err(CxgError::Eval("no sense pinned for word".into())),
                _ => unreachable!(),
            },
            Scope::Rule { .. } => {
                return Err(CxgError::Eval("sense set outside a word".into()))
            }
        },
        M::SelfSense => match &cx.scope {
            Scope::Leaf(l) => match l.sense {
                Some(s) => V::Sense(s.clone()),
                None => return Err(CxgError::Eval("self outside a sense case".into())),
            },
            Scope::Rule { .. } => return Err(CxgError::Eval("self outside a word".into())),
        },
        M::Frame(pairs) => {
            let mut roles = Vec::new();
            for (role, pe) in pairs {
                let v = eval_expr(pe, cx)?;
                if v.is_bottom() {
                    return Ok(V::Bottom);
                }
                roles.push((role.clone(), as_sense(&v)?.clone()));
            }
            V::Frame {
                roles,
                facts: Vec::new(),
            }
        }
        M::License { frame, verb, body } => {
            let sense = cx.child_sense(*verb)?.clone();
            let frames = cx
                .g
                .ontology
                .frames_of(&sense.id)
                .ok_or_else(|| CxgError::Eval(format!("verb `{}` has no frames", sense.id)))?;
            if frames.contains(frame) {
                eval_expr(body, cx)?
            } else {
                V::Bottom
            }
        }
        M::PpFact { prep, noun, tag } => {
            let prep_sense = cx.child_sense(*prep)?.clone();
            let noun_sense = cx.child_sense(*noun)?.clone();
            match cx.g.ontology.pp_type_lookup(&prep_sense.id, &noun_sense.sem_type) {
                None => V::Bottom,
                Some(ty) => {
                    let payload = match tag {
                        None => noun_sense,
                        Some(t) => {
                            let required = cx
                                .g
                                .ontology
                                .markers
                                .iter()
                                .find(|(tok, _)| tok == t)
                                .map(|(_, ty)| ty.as_str())
                                .ok_or_else(|| {
                                    CxgError::Eval(format!("undeclared marker `{t}`"))
                                })?;
                            if noun_sense.sem_type != required {
                                return Ok(V::Bottom);
                            }
                            tag_sense(&noun_sense, t)
                        }
                    };
                    V::Fact(TypedFact {
                        fact_type: ty.to_string(),
                        payload,
                    })
                }
            }
        }
        M::Adjoin(a, b) => {
            let (clause, fact) = (eval_expr(a, cx)?, eval_expr(b, cx)?);
            if clause.is_bottom() || fact.is_bottom() {
                return Ok(V::Bottom);
            }
            let SemValue::Frame { roles, mut facts } = clause else {
                return Err(CxgError::Eval(format!("cannot adjoin onto {clause}")));
            };
            let SemValue::Fact(new) = fact else {
                return Err(CxgError::Eval(format!("adjunct is not a fact: {fact}")));
            };
            if facts
                .iter()
                .any(|f| cx.g.ontology.conflicts_with(&f.fact_type, &new.fact_type))
            {
                return Ok(V::Bottom);
            }
            facts.push(new);
            V::Frame { roles, facts }
        }
        M::Append(a, b) => {
            let (acc, word) = (eval_expr(a, cx)?, eval_expr(b, cx)?);
            append_values(&cx.g.ontology, acc, word)?
        }
        M::CondLeft(arms) => match &cx.scope {
            Scope::Leaf(l) => {
                for (pat, body) in arms {
                    let hit = match pat {
                        LeftPat::NoLeft => l.left_token.is_none(),
                        LeftPat::Tok(t) => l.left_token == Some(t.as_str()),
                        LeftPat::NounWord => {
                            l.left_sense.map(|s| s.cat == "noun").unwrap_or(false)
                        }
                        LeftPat::VerbWord => {
                            l.left_sense.map(|s| s.cat == "verb").unwrap_or(false)
                        }
                        LeftPat::MarkerWord => {
                            l.left_sense.map(|s| s.cat == "marker").unwrap_or(false)
                        }
                    };
                    if hit {
                        return eval_expr(body, cx);
                    }
                }
                V::Bottom
            }
            Scope::Rule { .. } => return Err(CxgError::Eval("cond outside a word".into())),
        },
        M::NewFact { fact_type, payload } => {
            let p = eval_expr(payload, cx)?;
            if p.is_bottom() {
                return Ok(V::Bottom);
            }
            V::Contrib(Contribution::NewFact {
                fact_type: fact_type.clone(),
                payload: as_sense(&p)?.clone(),
            })
        }
        M::AgentStart(p) => contrib_of(eval_expr(p, cx)?, Contribution::Agent)?,
        M::ActionAdd { verb, frames } => {
            let v = eval_expr(verb, cx)?;
            if v.is_bottom() {
                return Ok(V::Bottom);
            }
            V::Contrib(Contribution::Action {
                sense: as_sense(&v)?.clone(),
                frames: frames.clone(),
            })
        }
        M::ObjectAdd(p) => contrib_of(eval_expr(p, cx)?, Contribution::Object)?,
        M::SecondObjectAdd(p) => contrib_of(eval_expr(p, cx)?, Contribution::SecondObject)?,
        M::PrepMark => match &cx.scope {
            Scope::Leaf(l) => V::Contrib(Contribution::Prep(l.token.to_string())),
            Scope::Rule { .. } => return Err(CxgError::Eval("mark outside a word".into())),
        },
        M::RetagLast { required_type } => match &cx.scope {
            Scope::Leaf(l) => V::Contrib(Contribution::Retag {
                tag: l.token.to_string(),
                required_type: required_type.clone(),
            }),
            Scope::Rule { .. } => return Err(CxgError::Eval("tag outside a word".into())),
        },
    })
}

fn contrib_of(
    v: SemValue,
    wrap: impl FnOnce(SenseRecord) -> Contribution,
) -> Result<SemValue> {
    if v.is_bottom() {
        return Ok(SemValue::Bottom);
    }
    Ok(SemValue::Contrib(wrap(as_sense(&v)?.clone())))
}

fn tag_sense(s: &SenseRecord, tag: &str) -> SenseRecord {
    SenseRecord {
        id: format!("{}@{}", s.id, tag),
        ..s.clone()
    }
}

/// Fold step: merge the next word's contribution into the running clause
/// state. Numbers fold by the caller's `+`; this handles clause building.
pub fn append_values(
    ont: &crate::grammar::Ontology,
    acc: SemValue,
    word: SemValue,
) -> Result<SemValue> {
    if acc.is_bottom() || word.is_bottom() {
        return Ok(SemValue::Bottom);
    }
    let accum = promote(ont, acc)?;
    let SemValue::Accum(state) = accum else {
        return Ok(SemValue::Bottom);
    };
    let SemValue::Contrib(c) = word else {
        return Err(CxgError::Eval(format!("cannot append {word}")));
    };
    Ok(apply_contribution(ont, state, c))
}

/// Lift a lone contribution into clause state.
pub fn promote(ont: &crate::grammar::Ontology, v: SemValue) -> Result<SemValue> {
    match v {
        SemValue::Contrib(c) => Ok(apply_contribution(ont, ClauseAccum::default(), c)),
        other => Ok(other),
    }
}

fn apply_contribution(
    ont: &crate::grammar::Ontology,
    mut a: ClauseAccum,
    c: Contribution,
) -> SemValue {
    use Contribution as C;
    match c {
        C::Agent(s) => {
            if !a.is_unit() {
                return SemValue::Bottom;
            }
            a.roles.push(("agent".to_string(), s));
        }
        C::Action { sense, frames } => {
            let agent_only =
                a.roles.len() == 1 && a.roles[0].0 == "agent" && a.facts.is_empty();
            if !agent_only || a.pending_prep.is_some() || a.role("action").is_some() {
                return SemValue::Bottom;
            }
            a.roles.insert(0, ("action".to_string(), sense));
            a.licensed = frames;
        }
        C::Object(s) => {
            let shape_ok = a.role_shape() == Some(FrameKind::Sv);
            let licensed = a.licensed.contains(&FrameKind::Svo)
                || a.licensed.contains(&FrameKind::Svoo);
            if !shape_ok || !licensed || !a.facts.is_empty() || a.pending_prep.is_some() {
                return SemValue::Bottom;
            }
            a.roles.push(("object".to_string(), s));
        }
        C::SecondObject(s) => {
            let shape_ok = a.role_shape() == Some(FrameKind::Svo);
            if !shape_ok
                || !a.licensed.contains(&FrameKind::Svoo)
                || !a.facts.is_empty()
                || a.pending_prep.is_some()
            {
                return SemValue::Bottom;
            }
            for (r, _) in &mut a.roles {
                if r == "object" {
                    *r = "recipient".to_string();
                }
            }
            a.roles.push(("object".to_string(), s));
        }
        C::Prep(tok) => {
            if a.role("action").is_none() || a.pending_prep.is_some() {
                return SemValue::Bottom;
            }
            a.pending_prep = Some(tok);
        }
        C::NewFact { fact_type, payload } => {
            if a.pending_prep.take().is_none() {
                return SemValue::Bottom;
            }
            if a
                .facts
                .iter()
                .any(|f| ont.conflicts_with(&f.fact_type, &fact_type))
            {
                return SemValue::Bottom;
            }
            a.facts.push(TypedFact { fact_type, payload });
        }
        C::Retag { tag, required_type } => {
            let Some(last) = a.facts.last_mut() else {
                return SemValue::Bottom;
            };
            if last.payload.sem_type != required_type || last.payload.id.contains('@') {
                return SemValue::Bottom;
            }
            last.payload = tag_sense(&last.payload, &tag);
        }
    }
    SemValue::Accum(a)
}

/// Close off a sentence-level value. Clause state must hold a licensed,
/// complete clause with no dangling preposition. Facts are a set, so the
/// final frame lists them in type order regardless of surface order.
pub fn finalize(ont: &crate::grammar::Ontology, v: SemValue) -> Result<SemValue> {
    let v = promote(ont, v)?;
    match v {
        SemValue::Accum(a) => {
            if a.pending_prep.is_some() || a.role("action").is_none() {
                return Ok(SemValue::Bottom);
            }
            let Some(shape) = a.role_shape() else {
                return Ok(SemValue::Bottom);
            };
            if !a.licensed.contains(&shape) {
                return Ok(SemValue::Bottom);
            }
            let mut facts = a.facts;
            facts.sort();
            Ok(SemValue::Frame {
                roles: a.roles,
                facts,
            })
        }
        SemValue::Frame { roles, mut facts } => {
            facts.sort();
            Ok(SemValue::Frame { roles, facts })
        }
        other => Ok(other),
    }
}

/// Evaluate a word occurrence.
pub fn eval_leaf(g: &Grammar, c: &Construction, leaf: LeafCtx) -> Result<SemValue> {
    debug_assert!(c.is_lexical());
    let cx = EvalCtx {
        g,
        base: c.context.int_param("Base"),
        scope: Scope::Leaf(leaf),
    };
    eval_expr(&c.meaning, &cx)
}

/// Evaluate a rule application over already-evaluated children.
pub fn eval_rule(
    g: &Grammar,
    c: &Construction,
    children: &[SemValue],
    child_senses: &[Option<SenseRecord>],
) -> Result<SemValue> {
    debug_assert!(!c.is_lexical());
    if children.iter().any(SemValue::is_bottom) {
        return Ok(SemValue::Bottom);
    }
    let cx = EvalCtx {
        g,
        base: c.context.int_param("Base"),
        scope: Scope::Rule {
            children,
            child_senses,
        },
    };
    eval_expr(&c.meaning, &cx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::Ontology;

    fn ont() -> Ontology {
        Ontology {
            pp_table: vec![
                (("at".into(), "hour".into()), "event_time".into()),
                (("from".into(), "hour".into()), "beginning_time".into()),
            ],
            conflicts: vec![("event_time".into(), "beginning_time".into())],
            verb_frames: vec![("meet_0".into(), vec![FrameKind::Sv, FrameKind::Svo])],
            markers: vec![("pm".into(), "hour".into())],
        }
    }

    fn noun(id: &str, ty: &str) -> SenseRecord {
        SenseRecord::new("noun", ty, id)
    }

    fn fold(ont: &Ontology, parts: Vec<Contribution>) -> SemValue {
        let mut acc: Option<SemValue> = None;
        for c in parts {
            let w = SemValue::Contrib(c);
            acc = Some(match acc {
                None => w,
                Some(a) => append_values(ont, a, w).unwrap(),
            });
        }
        finalize(ont, acc.unwrap()).unwrap()
    }

    #[test]
    fn clause_builds_in_order() {
        let o = ont();
        let v = fold(
            &o,
            vec![
                Contribution::Agent(noun("we_0", "person")),
                Contribution::Action {
                    sense: SenseRecord::new("verb", "assemble", "meet_0"),
                    frames: vec![FrameKind::Sv, FrameKind::Svo],
                },
                Contribution::Prep("at".into()),
                Contribution::NewFact {
                    fact_type: "event_time".into(),
                    payload: noun("12_0", "hour"),
                },
            ],
        );
        let SemValue::Frame { roles, facts } = v else {
            panic!("expected frame, got {v}");
        };
        assert_eq!(roles[0].0, "action");
        assert_eq!(roles[1].0, "agent");
        assert_eq!(facts.len(), 1);
        assert_eq!(facts[0].fact_type, "event_time");
    }

    #[test]
    fn conflicting_fact_types_bottom_out() {
        let o = ont();
        let v = fold(
            &o,
            vec![
                Contribution::Agent(noun("we_0", "person")),
                Contribution::Action {
                    sense: SenseRecord::new("verb", "assemble", "meet_0"),
                    frames: vec![FrameKind::Sv],
                },
                Contribution::Prep("at".into()),
                Contribution::NewFact {
                    fact_type: "event_time".into(),
                    payload: noun("12_0", "hour"),
                },
                Contribution::Prep("from".into()),
                Contribution::NewFact {
                    fact_type: "beginning_time".into(),
                    payload: noun("5_0", "hour"),
                },
            ],
        );
        assert_eq!(v, SemValue::Bottom);
    }

    #[test]
    fn dangling_preposition_is_bottom() {
        let o = ont();
        let v = fold(
            &o,
            vec![
                Contribution::Agent(noun("we_0", "person")),
                Contribution::Action {
                    sense: SenseRecord::new("verb", "assemble", "meet_0"),
                    frames: vec![FrameKind::Sv],
                },
                Contribution::Prep("at".into()),
            ],
        );
        assert_eq!(v, SemValue::Bottom);
    }

    #[test]
    fn missing_action_is_bottom() {
        let o = ont();
        let v = fold(&o, vec![Contribution::Agent(noun("we_0", "person"))]);
        assert_eq!(v, SemValue::Bottom);
    }

    #[test]
    fn unlicensed_shape_is_bottom() {
        let o = ont();
        // meet licenses SV and SVO, never SVOO.
        let v = fold(
            &o,
            vec![
                Contribution::Agent(noun("we_0", "person")),
                Contribution::Action {
                    sense: SenseRecord::new("verb", "assemble", "meet_0"),
                    frames: vec![FrameKind::Sv, FrameKind::Svo],
                },
                Contribution::Object(noun("bob_0", "person")),
                Contribution::SecondObject(noun("report_0", "document")),
            ],
        );
        assert_eq!(v, SemValue::Bottom);
    }

    #[test]
    fn second_object_relabels_recipient() {
        let mut o = ont();
        o.verb_frames
            .push(("fax_0".into(), vec![FrameKind::Svo, FrameKind::Svoo]));
        let v = fold(
            &o,
            vec![
                Contribution::Agent(noun("we_0", "person")),
                Contribution::Action {
                    sense: SenseRecord::new("verb", "send", "fax_0"),
                    frames: vec![FrameKind::Svo, FrameKind::Svoo],
                },
                Contribution::Object(noun("bob_0", "person")),
                Contribution::SecondObject(noun("report_0", "document")),
            ],
        );
        let SemValue::Frame { roles, .. } = v else {
            panic!("expected frame, got {v}");
        };
        let labels: Vec<&str> = roles.iter().map(|(r, _)| r.as_str()).collect();
        assert_eq!(labels, ["action", "agent", "recipient", "object"]);
        assert_eq!(roles[2].1.id, "bob_0");
        assert_eq!(roles[3].1.id, "report_0");
    }

    #[test]
    fn retag_marks_last_untagged_hour() {
        let o = ont();
        let v = fold(
            &o,
            vec![
                Contribution::Agent(noun("we_0", "person")),
                Contribution::Action {
                    sense: SenseRecord::new("verb", "assemble", "meet_0"),
                    frames: vec![FrameKind::Sv],
                },
                Contribution::Prep("at".into()),
                Contribution::NewFact {
                    fact_type: "event_time".into(),
                    payload: noun("12_0", "hour"),
                },
                Contribution::Retag {
                    tag: "pm".into(),
                    required_type: "hour".into(),
                },
            ],
        );
        let SemValue::Frame { facts, .. } = v else {
            panic!("expected frame, got {v}");
        };
        assert_eq!(facts[0].payload.id, "12_0@pm");

        // A second retag on the same fact bottoms out.
        let again = append_values(
            &o,
            SemValue::Accum(ClauseAccum {
                roles: vec![],
                facts: vec![TypedFact {
                    fact_type: "event_time".into(),
                    payload: noun("12_0@pm", "hour"),
                }],
                licensed: vec![],
                pending_prep: None,
            }),
            SemValue::Contrib(Contribution::Retag {
                tag: "pm".into(),
                required_type: "hour".into(),
            }),
        )
        .unwrap();
        assert_eq!(again, SemValue::Bottom);
    }

    #[test]
    fn bottom_absorbs_through_append() {
        let o = ont();
        let v = append_values(
            &o,
            SemValue::Bottom,
            SemValue::Contrib(Contribution::Prep("at".into())),
        )
        .unwrap();
        assert_eq!(v, SemValue::Bottom);
    }
}
