//! Canonical serialization. Every construction renders to one
//! whitespace-free `<context;form;meaning>` string; description length
//! counts its symbols. Integers render in the grammar's own notation base,
//! so the base parameter itself always reads `10` and digit entries stay
//! the same size at every base.

use std::collections::BTreeSet;

use crate::grammar::{
    Construction, Context, CtxValue, FeatureArg, FormPattern, Grammar, LeftPat, MeaningExpr,
    RhsElem, SenseRecord,
};

/// Single display character for digit value `v`. Values 0..62 use
/// `0-9a-zA-Z`; larger values continue into Unicode from U+0100 so a digit
/// is one symbol at any base.
pub fn digit_char(v: i64) -> char {
    debug_assert!(v >= 0);
    match v {
        0..=9 => (b'0' + v as u8) as char,
        10..=35 => (b'a' + (v - 10) as u8) as char,
        36..=61 => (b'A' + (v - 36) as u8) as char,
        _ => char::from_u32(0x0100 + (v as u32 - 62)).expect("digit plane exhausted"),
    }
}

/// Inverse of [`digit_char`].
pub fn digit_val(c: char) -> Option<i64> {
    match c {
        '0'..='9' => Some(c as i64 - '0' as i64),
        'a'..='z' => Some(c as i64 - 'a' as i64 + 10),
        'A'..='Z' => Some(c as i64 - 'A' as i64 + 36),
        _ if (c as u32) >= 0x0100 => Some(c as i64 - 0x0100 + 62),
        _ => None,
    }
}

/// Render `v` positionally in `base`, one symbol per digit.
pub fn render_int(v: i64, base: i64) -> String {
    assert!(base >= 2, "notation base must be >= 2");
    if v == 0 {
        return "0".to_string();
    }
    let neg = v < 0;
    let mut n = v.unsigned_abs();
    let b = base as u64;
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(digit_char((n % b) as i64));
        n /= b;
    }
    if neg {
        digits.push('-');
    }
    digits.iter().rev().collect()
}

pub fn symbol_count(s: &str) -> usize {
    s.chars().count()
}

pub fn render_sense(r: &SenseRecord) -> String {
    match r.cat.as_str() {
        "prep" | "marker" => format!("{}({})", r.cat, r.id),
        _ => format!("{}({},{})", r.cat, r.sem_type, r.id),
    }
}

fn render_frames(frames: &[crate::grammar::FrameKind]) -> String {
    frames
        .iter()
        .map(|f| f.as_str())
        .collect::<Vec<_>>()
        .join("|")
}

fn render_left_pat(p: &LeftPat) -> String {
    match p {
        LeftPat::NoLeft => "ε".to_string(),
        LeftPat::Tok(t) => t.clone(),
        LeftPat::NounWord => "N".to_string(),
        LeftPat::VerbWord => "V".to_string(),
        LeftPat::MarkerWord => "M".to_string(),
    }
}

/// Display names for rule constituents. A right-hand occurrence is numbered
/// when its category equals the left-hand category or repeats on the right,
/// e.g. `DS→DS1D` and `CL→SVO1O2`.
pub fn rhs_display_names(lhs: &str, rhs: &[RhsElem]) -> Vec<String> {
    let mut counts = std::collections::BTreeMap::new();
    for e in rhs {
        if let Some(c) = e.cat_name() {
            *counts.entry(c.to_string()).or_insert(0usize) += 1;
        }
    }
    let mut seen = std::collections::BTreeMap::new();
    rhs.iter()
        .map(|e| match e {
            RhsElem::Terminal(t) => t.clone(),
            RhsElem::Cat { cat, .. } => {
                let n = seen.entry(cat.clone()).or_insert(0usize);
                *n += 1;
                if cat == lhs || counts[cat] > 1 {
                    format!("{cat}{n}")
                } else {
                    cat.clone()
                }
            }
        })
        .collect()
}

fn render_form(form: &FormPattern) -> String {
    match form {
        FormPattern::Lexical { token } => token.clone(),
        FormPattern::Rule { lhs, rhs } => {
            let names = rhs_display_names(lhs, rhs);
            let mut out = format!("{lhs}→");
            for (e, name) in rhs.iter().zip(&names) {
                out.push_str(name);
                if let RhsElem::Cat { args, .. } = e {
                    if !args.is_empty() {
                        out.push('(');
                        for (i, a) in args.iter().enumerate() {
                            if i > 0 {
                                out.push(',');
                            }
                            match a {
                                FeatureArg::Var(v) | FeatureArg::Const(v) => out.push_str(v),
                            }
                        }
                        out.push(')');
                    }
                }
            }
            out
        }
    }
}

struct RenderEnv<'a> {
    base: i64,
    ctx: &'a Context,
    /// Reference string per constituent index (the token for lexical
    /// entries, the suffixed category name for rules).
    refs: Vec<String>,
}

impl RenderEnv<'_> {
    fn arg(&self, i: usize) -> &str {
        self.refs
            .get(i - 1)
            .map(String::as_str)
            .unwrap_or("?")
    }
}

fn render_expr(e: &MeaningExpr, env: &RenderEnv, lexical: bool) -> String {
    match e {
        MeaningExpr::Num(v) => render_int(*v, env.base),
        MeaningExpr::Sym(s) => s.clone(),
        MeaningExpr::Ctx(name) => match env.ctx.int_param(name) {
            Some(v) => render_int(v, env.base),
            None => name.clone(),
        },
        // In a lexical entry the sole constituent is the token itself, so
        // its reference renders bare; rules reference constituent meanings.
        MeaningExpr::Arg(i) if lexical => env.arg(*i).to_string(),
        MeaningExpr::Arg(i) => format!("μ({})", env.arg(*i)),
        MeaningExpr::Pos(i) => format!("pos({})", env.arg(*i)),
        MeaningExpr::LeftDigit => "left".to_string(),
        MeaningExpr::Add(a, b) => format!(
            "{}+{}",
            render_expr(a, env, lexical),
            render_expr(b, env, lexical)
        ),
        MeaningExpr::Mul(a, b) => format!(
            "{}*{}",
            render_expr(a, env, lexical),
            render_expr(b, env, lexical)
        ),
        MeaningExpr::Pow(a, b) => format!(
            "{}**{}",
            render_expr(a, env, lexical),
            render_expr(b, env, lexical)
        ),
        MeaningExpr::Modulo(a, b) => format!(
            "mod({},{})",
            render_expr(a, env, lexical),
            render_expr(b, env, lexical)
        ),
        MeaningExpr::IfGt { lhs, rhs, body } => format!(
            "{}if{}>{}else⊥",
            render_expr(body, env, lexical),
            render_expr(lhs, env, lexical),
            render_expr(rhs, env, lexical)
        ),
        MeaningExpr::Bottom => "⊥".to_string(),
        MeaningExpr::Senses(rs) => {
            let inner: Vec<_> = rs.iter().map(render_sense).collect();
            format!("{{{}}}", inner.join(","))
        }
        MeaningExpr::SenseCases(cases) => {
            let inner: Vec<_> = cases
                .iter()
                .map(|(r, body)| format!("{}:{}", render_sense(r), render_expr(body, env, lexical)))
                .collect();
            format!("{{{}}}", inner.join(","))
        }
        MeaningExpr::SelfSense => "self".to_string(),
        MeaningExpr::Frame(pairs) => {
            let inner: Vec<_> = pairs
                .iter()
                .map(|(role, e)| format!("[{role},{}]", render_expr(e, env, lexical)))
                .collect();
            format!("[{}]", inner.join(","))
        }
        MeaningExpr::License { frame, verb, body } => format!(
            "{}if{}∈μ({})else⊥",
            render_expr(body, env, lexical),
            frame.as_str(),
            env.arg(*verb)
        ),
        MeaningExpr::PpFact { prep, noun, tag } => {
            let core = format!("ppt(μ({}),μ({}))", env.arg(*prep), env.arg(*noun));
            match tag {
                Some(t) => format!("{core}@{t}"),
                None => core,
            }
        }
        MeaningExpr::Adjoin(a, b) => format!(
            "{}⊎{}",
            render_expr(a, env, lexical),
            render_expr(b, env, lexical)
        ),
        MeaningExpr::Append(a, b) => format!(
            "{}⊕{}",
            render_expr(a, env, lexical),
            render_expr(b, env, lexical)
        ),
        MeaningExpr::CondLeft(arms) => {
            let inner: Vec<_> = arms
                .iter()
                .map(|(p, body)| {
                    format!("{}→{}", render_left_pat(p), render_expr(body, env, lexical))
                })
                .collect();
            format!("[{}]", inner.join(","))
        }
        MeaningExpr::NewFact { fact_type, payload } => {
            format!("fact({fact_type},{})", render_expr(payload, env, lexical))
        }
        MeaningExpr::AgentStart(p) => format!("agent({})", render_expr(p, env, lexical)),
        MeaningExpr::ActionAdd { verb, frames } => format!(
            "act({},{})",
            render_expr(verb, env, lexical),
            render_frames(frames)
        ),
        MeaningExpr::ObjectAdd(p) => format!("obj({})", render_expr(p, env, lexical)),
        MeaningExpr::SecondObjectAdd(p) => format!("obj2({})", render_expr(p, env, lexical)),
        MeaningExpr::PrepMark => "mark".to_string(),
        MeaningExpr::RetagLast { required_type } => format!("tag({required_type})"),
    }
}

fn render_context(ctx: &Context, base: i64) -> String {
    let inner: Vec<_> = ctx
        .params
        .iter()
        .map(|(_, v)| match v {
            CtxValue::Int(i) => render_int(*i, base),
            CtxValue::Tag(t) => t.clone(),
        })
        .collect();
    format!("[{}]", inner.join(","))
}

/// Meaning section including the `μ(lhs)=` head.
pub fn render_meaning_section(g: &Grammar, c: &Construction) -> String {
    let base = g.notation_base(&c.context);
    let (head, refs, lexical) = match &c.form {
        FormPattern::Lexical { token } => (token.clone(), vec![token.clone()], true),
        FormPattern::Rule { lhs, rhs } => {
            (lhs.clone(), rhs_display_names(lhs, rhs), false)
        }
    };
    let env = RenderEnv {
        base,
        ctx: &c.context,
        refs,
    };
    format!("μ({head})={}", render_expr(&c.meaning, &env, lexical))
}

/// Meaning expression alone, without the `μ(lhs)=` head.
pub fn render_meaning_expr(g: &Grammar, c: &Construction) -> String {
    let section = render_meaning_section(g, c);
    let head = match &c.form {
        FormPattern::Lexical { token } => token.clone(),
        FormPattern::Rule { lhs, .. } => lhs.clone(),
    };
    section
        .strip_prefix(&format!("μ({head})="))
        .unwrap_or(&section)
        .to_string()
}

pub fn serialize_construction(g: &Grammar, c: &Construction) -> String {
    let base = g.notation_base(&c.context);
    format!(
        "<{};{};{}>",
        render_context(&c.context, base),
        render_form(&c.form),
        render_meaning_section(g, c)
    )
}

/// Ontology lines counted alongside the constructions: PP typing entries,
/// conflict pairs, verb frames, and postmodifier markers.
pub fn ontology_strings(g: &Grammar) -> Vec<String> {
    let o = &g.ontology;
    let mut out = Vec::new();
    for ((p, t), ty) in &o.pp_table {
        out.push(format!("({p},{t})→{ty}"));
    }
    for (a, b) in &o.conflicts {
        out.push(format!("{a}⊗{b}"));
    }
    for (id, frames) in &o.verb_frames {
        out.push(format!("{id}:{}", render_frames(frames)));
    }
    for (tok, ty) in &o.markers {
        out.push(format!("{tok}:{ty}"));
    }
    out
}

/// Every line of the grammar's serialization, constructions first.
pub fn serialize_grammar(g: &Grammar) -> Vec<String> {
    let mut lines: Vec<String> = g
        .constructions
        .iter()
        .map(|c| serialize_construction(g, c))
        .collect();
    lines.extend(ontology_strings(g));
    lines
}

/// Distinct symbols across the whole serialization.
pub fn grammar_alphabet(g: &Grammar) -> BTreeSet<char> {
    serialize_grammar(g).iter().flat_map(|s| s.chars()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{FrameKind, Mode};

    #[test]
    fn digit_chars_cover_all_planes() {
        assert_eq!(digit_char(0), '0');
        assert_eq!(digit_char(9), '9');
        assert_eq!(digit_char(10), 'a');
        assert_eq!(digit_char(35), 'z');
        assert_eq!(digit_char(36), 'A');
        assert_eq!(digit_char(61), 'Z');
        assert_eq!(digit_char(62), '\u{0100}');
        assert_eq!(digit_char(99), char::from_u32(0x0100 + 37).unwrap());
        for v in 0..500 {
            assert_eq!(digit_val(digit_char(v)), Some(v));
        }
    }

    #[test]
    fn ints_render_in_own_radix() {
        assert_eq!(render_int(0, 10), "0");
        assert_eq!(render_int(255, 16), "ff");
        assert_eq!(render_int(-7, 10), "-7");
        assert_eq!(render_int(35, 36), "z");
        // The base itself is always the two symbols `10`.
        for b in [2, 10, 16, 36, 100, 1000] {
            assert_eq!(render_int(b, b), "10");
        }
    }

    #[test]
    fn every_digit_is_one_symbol() {
        for v in 0..200 {
            assert_eq!(symbol_count(&digit_char(v).to_string()), 1);
        }
        assert_eq!(symbol_count("μ(7)=7*10**pos(7)"), 17);
        assert_eq!(symbol_count("10*μ(DS1)+μ(D)"), 14);
    }

    #[test]
    fn rule_constituents_get_collision_suffixes() {
        let rhs = vec![RhsElem::cat("DS"), RhsElem::cat("D")];
        assert_eq!(rhs_display_names("DS", &rhs), vec!["DS1", "D"]);

        let rhs = vec![
            RhsElem::cat("S"),
            RhsElem::cat("V"),
            RhsElem::cat("O"),
            RhsElem::cat("O"),
        ];
        assert_eq!(rhs_display_names("CL", &rhs), vec!["S", "V", "O1", "O2"]);

        let rhs = vec![RhsElem::cat("prep"), RhsElem::cat("noun")];
        assert_eq!(rhs_display_names("pp", &rhs), vec!["prep", "noun"]);
    }

    #[test]
    fn serializes_frozen_forms() {
        let mut g = Grammar::new(Mode::Constructional);
        g.lexical_category = Some("D".to_string());
        g.start.push("DS".to_string());

        let zero = Construction {
            name: "lex_0".to_string(),
            context: Context::with_base(10),
            form: FormPattern::Lexical {
                token: "0".to_string(),
            },
            meaning: MeaningExpr::Num(0),
        };
        let seven = Construction {
            name: "lex_7".to_string(),
            context: Context::with_base(10),
            form: FormPattern::Lexical {
                token: "7".to_string(),
            },
            meaning: MeaningExpr::Num(7),
        };
        let seven_lexicalized = Construction {
            name: "lex_7x".to_string(),
            context: Context::with_base(10),
            form: FormPattern::Lexical {
                token: "7".to_string(),
            },
            meaning: MeaningExpr::mul(
                MeaningExpr::Num(7),
                MeaningExpr::pow(MeaningExpr::Ctx("Base".to_string()), MeaningExpr::Pos(1)),
            ),
        };
        let rule = Construction {
            name: "ds".to_string(),
            context: Context::with_base(10),
            form: FormPattern::Rule {
                lhs: "DS".to_string(),
                rhs: vec![RhsElem::cat("DS"), RhsElem::cat("D")],
            },
            meaning: MeaningExpr::add(
                MeaningExpr::mul(MeaningExpr::Ctx("Base".to_string()), MeaningExpr::Arg(1)),
                MeaningExpr::Arg(2),
            ),
        };
        g.constructions = vec![zero, seven, seven_lexicalized, rule];

        let lines = serialize_grammar(&g);
        assert_eq!(lines[0], "<[10];0;μ(0)=0>");
        assert_eq!(lines[1], "<[10];7;μ(7)=7>");
        assert_eq!(lines[2], "<[10];7;μ(7)=7*10**pos(7)>");
        assert_eq!(lines[3], "<[10];DS→DS1D;μ(DS)=10*μ(DS1)+μ(D)>");
    }

    #[test]
    fn base_parameter_reads_the_same_at_any_base() {
        for b in [2, 10, 16, 36, 100] {
            let c = Construction {
                name: "r".to_string(),
                context: Context::with_base(b),
                form: FormPattern::Rule {
                    lhs: "DS".to_string(),
                    rhs: vec![RhsElem::cat("DS"), RhsElem::cat("D")],
                },
                meaning: MeaningExpr::add(
                    MeaningExpr::mul(MeaningExpr::Ctx("Base".to_string()), MeaningExpr::Arg(1)),
                    MeaningExpr::Arg(2),
                ),
            };
            let g = Grammar {
                constructions: vec![c],
                ..Grammar::new(Mode::Constructional)
            };
            assert_eq!(
                serialize_grammar(&g)[0],
                "<[10];DS→DS1D;μ(DS)=10*μ(DS1)+μ(D)>"
            );
        }
    }

    #[test]
    fn ontology_lines_render() {
        let mut g = Grammar::new(Mode::Constructional);
        g.constructions.push(Construction {
            name: "w".to_string(),
            context: Context::empty(),
            form: FormPattern::Lexical {
                token: "we".to_string(),
            },
            meaning: MeaningExpr::Senses(vec![SenseRecord::new("noun", "person", "we_0")]),
        });
        g.ontology.pp_table.push(
            (("at".to_string(), "hour".to_string()), "event_time".to_string()),
        );
        g.ontology
            .conflicts
            .push(("event_time".to_string(), "beginning_time".to_string()));
        g.ontology
            .verb_frames
            .push(("meet_0".to_string(), vec![FrameKind::Sv, FrameKind::Svo]));
        g.ontology.markers.push(("pm".to_string(), "hour".to_string()));

        let lines = ontology_strings(&g);
        assert_eq!(lines[0], "(at,hour)→event_time");
        assert_eq!(lines[1], "event_time⊗beginning_time");
        assert_eq!(lines[2], "meet_0:SV|SVO");
        assert_eq!(lines[3], "pm:hour");
        assert_eq!(
            serialize_grammar(&g)[0],
            "<[];we;μ(we)={noun(person,we_0)}>"
        );
    }
}
