//! Plain-text grammar files. Directives declare parser metadata and the
//! ontology; each remaining line is one construction:
//!
//! ```text
//! mode: constructional
//! start: DS
//! lexcat: D
//! sub: D DS
//!
//! d7: < [Base=10] ; "7" ; 7 >
//! ds: < [Base=10] ; DS -> DS D ; Base*mu(1) + mu(2) >
//! ```
//!
//! Meanings are written per constituent index (`mu(1)` is the first
//! right-hand constituent); integers are decimal here regardless of the
//! grammar's own notation base.

use std::fmt::Write as _;

use crate::error::{CxgError, Result};
use crate::grammar::{
    Construction, Context, CtxValue, FeatureArg, FormPattern, FrameKind, Grammar, LeftPat,
    MeaningExpr, Mode, RhsElem, SenseRecord,
};

pub fn load_grammar(path: &std::path::Path) -> Result<Grammar> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CxgError::Io(format!("{}: {e}", path.display())))?;
    parse_grammar_text(&src)
}

pub fn save_grammar(g: &Grammar, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, render_grammar_text(g))
        .map_err(|e| CxgError::Io(format!("{}: {e}", path.display())))
}

pub fn parse_grammar_text(src: &str) -> Result<Grammar> {
    let mut g = Grammar::new(Mode::Constructional);
    let mut saw_construction = false;

    for (lineno, raw) in src.lines().enumerate() {
        let line = lineno + 1;
        let text = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if text.is_empty() {
            continue;
        }

        let (head, rest) = text.split_once(':').ok_or_else(|| CxgError::Syntax {
            line,
            msg: "expected `directive: ...` or `name: <...>`".to_string(),
        })?;
        let head = head.trim();
        let rest = rest.trim();

        match head {
            "mode" => {
                g.mode = match rest {
                    "constructional" => Mode::Constructional,
                    "lexicalized" => Mode::Lexicalized,
                    other => {
                        return Err(CxgError::Syntax {
                            line,
                            msg: format!("unknown mode `{other}`"),
                        })
                    }
                };
            }
            "start" => g.start = rest.split_whitespace().map(str::to_string).collect(),
            "lexcat" => g.lexical_category = Some(rest.to_string()),
            "sub" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [sub, sup] = parts.as_slice() else {
                    return Err(CxgError::Syntax {
                        line,
                        msg: "expected `sub: <subcat> <supercat>`".to_string(),
                    });
                };
                g.subtypes.push((sub.to_string(), sup.to_string()));
            }
            "ppt" => {
                // ppt: <prep> <noun type> -> <fact type>
                let (lhs, ty) = rest.split_once("->").ok_or_else(|| CxgError::Syntax {
                    line,
                    msg: "expected `ppt: prep type -> fact_type`".to_string(),
                })?;
                let parts: Vec<&str> = lhs.split_whitespace().collect();
                let [p, t] = parts.as_slice() else {
                    return Err(CxgError::Syntax {
                        line,
                        msg: "expected `ppt: prep type -> fact_type`".to_string(),
                    });
                };
                g.ontology
                    .pp_table
                    .push(((p.to_string(), t.to_string()), ty.trim().to_string()));
            }
            "conflict" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [a, b] = parts.as_slice() else {
                    return Err(CxgError::Syntax {
                        line,
                        msg: "expected `conflict: <type> <type>`".to_string(),
                    });
                };
                g.ontology.conflicts.push((a.to_string(), b.to_string()));
            }
            "vframes" => {
                let mut parts = rest.split_whitespace();
                let Some(id) = parts.next() else {
                    return Err(CxgError::Syntax {
                        line,
                        msg: "expected `vframes: <sense id> <frame>...`".to_string(),
                    });
                };
                let mut frames = Vec::new();
                for f in parts {
                    frames.push(FrameKind::from_str(f).ok_or_else(|| CxgError::Syntax {
                        line,
                        msg: format!("unknown frame `{f}`"),
                    })?);
                }
                g.ontology.verb_frames.push((id.to_string(), frames));
            }
            "marker" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [tok, ty] = parts.as_slice() else {
                    return Err(CxgError::Syntax {
                        line,
                        msg: "expected `marker: <token> <type>`".to_string(),
                    });
                };
                g.ontology.markers.push((tok.to_string(), ty.to_string()));
            }
            name => {
                let c = parse_construction(name, rest, line)?;
                if g.constructions.iter().any(|x| x.name == c.name) {
                    return Err(CxgError::DuplicateName(c.name));
                }
                g.constructions.push(c);
                saw_construction = true;
            }
        }
    }

    if !saw_construction {
        return Err(CxgError::NoConstructions);
    }
    g.finalize();
    g.ensure_valid()?;
    Ok(g)
}

fn parse_construction(name: &str, body: &str, line: usize) -> Result<Construction> {
    let syn = |msg: String| CxgError::Syntax { line, msg };
    let inner = body
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or_else(|| syn("construction body must be `< ctx ; form ; meaning >`".to_string()))?;
    let parts: Vec<&str> = inner.splitn(3, ';').collect();
    let [ctx, form, meaning] = parts.as_slice() else {
        return Err(syn("expected three `;`-separated sections".to_string()));
    };

    let context = parse_context(ctx.trim(), line)?;
    let form = parse_form(form.trim(), line)?;
    let arity = form.arity();
    let param_names: Vec<String> = context.params.iter().map(|(n, _)| n.clone()).collect();
    let mut p = MeaningParser::new(meaning.trim(), line, &param_names)?;
    let meaning = p.parse_expr()?;
    p.expect_end()?;
    if meaning.max_arg() > arity {
        return Err(syn(format!(
            "meaning references constituent {} but the form has {arity}",
            meaning.max_arg()
        )));
    }

    Ok(Construction {
        name: name.to_string(),
        context,
        form,
        meaning,
    })
}

fn parse_context(s: &str, line: usize) -> Result<Context> {
    let syn = |msg: String| CxgError::Syntax { line, msg };
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| syn("context must be `[...]`".to_string()))?
        .trim();
    let mut params = Vec::new();
    if !inner.is_empty() {
        for item in inner.split(',') {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| syn(format!("context item `{item}` must be `name=value`")))?;
            let name = name.trim().to_string();
            let value = value.trim();
            let v = match value.parse::<i64>() {
                Ok(i) => CtxValue::Int(i),
                Err(_) => CtxValue::Tag(value.to_string()),
            };
            params.push((name, v));
        }
    }
    Ok(Context { params })
}

fn parse_form(s: &str, line: usize) -> Result<FormPattern> {
    let syn = |msg: String| CxgError::Syntax { line, msg };
    if let Some((lhs, rhs)) = s.split_once("->") {
        let lhs = lhs.trim().to_string();
        let mut elems = Vec::new();
        for part in rhs.split_whitespace() {
            if let Some(tok) = part.strip_prefix('"').and_then(|p| p.strip_suffix('"')) {
                elems.push(RhsElem::Terminal(tok.to_string()));
            } else if let Some((cat, args)) = part.split_once('(') {
                let args = args
                    .strip_suffix(')')
                    .ok_or_else(|| syn(format!("unclosed feature list in `{part}`")))?;
                let mut parsed = Vec::new();
                for a in args.split(',') {
                    let a = a.trim();
                    match a.strip_prefix('$') {
                        Some(v) => parsed.push(FeatureArg::Var(v.to_string())),
                        None => parsed.push(FeatureArg::Const(a.to_string())),
                    }
                }
                elems.push(RhsElem::Cat {
                    cat: cat.to_string(),
                    args: parsed,
                });
            } else {
                elems.push(RhsElem::cat(part));
            }
        }
        Ok(FormPattern::Rule { lhs, rhs: elems })
    } else {
        let tok = s
            .strip_prefix('"')
            .and_then(|p| p.strip_suffix('"'))
            .unwrap_or(s);
        Ok(FormPattern::Lexical {
            token: tok.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Eq,
    Plus,
    Star,
    DStar,
}

struct MeaningParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
    params: &'a [String],
}

impl<'a> MeaningParser<'a> {
    fn new(src: &str, line: usize, params: &'a [String]) -> Result<Self> {
        let mut toks = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                c if c.is_whitespace() => i += 1,
                '(' => {
                    toks.push(Tok::LParen);
                    i += 1;
                }
                ')' => {
                    toks.push(Tok::RParen);
                    i += 1;
                }
                ',' => {
                    toks.push(Tok::Comma);
                    i += 1;
                }
                ':' => {
                    toks.push(Tok::Colon);
                    i += 1;
                }
                '=' => {
                    toks.push(Tok::Eq);
                    i += 1;
                }
                '+' => {
                    toks.push(Tok::Plus);
                    i += 1;
                }
                '*' => {
                    if chars.get(i + 1) == Some(&'*') {
                        toks.push(Tok::DStar);
                        i += 2;
                    } else {
                        toks.push(Tok::Star);
                        i += 1;
                    }
                }
                '-' | '0'..='9' | 'a'..='z' | 'A'..='Z' | '_' => {
                    let start = i;
                    if c == '-' {
                        i += 1;
                    }
                    while i < chars.len()
                        && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                    {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    if word == "-" {
                        return Err(CxgError::Syntax {
                            line,
                            msg: "dangling `-`".to_string(),
                        });
                    }
                    // All-digit words are integers; anything else (incl.
                    // `12_0`) is an identifier.
                    let digits_only = word
                        .strip_prefix('-')
                        .unwrap_or(&word)
                        .chars()
                        .all(|c| c.is_ascii_digit());
                    if digits_only {
                        let v = word.parse::<i64>().map_err(|_| CxgError::Syntax {
                            line,
                            msg: format!("bad integer `{word}`"),
                        })?;
                        toks.push(Tok::Int(v));
                    } else {
                        toks.push(Tok::Ident(word));
                    }
                }
                other => {
                    return Err(CxgError::Syntax {
                        line,
                        msg: format!("unexpected character `{other}` in meaning"),
                    })
                }
            }
        }
        Ok(MeaningParser {
            toks,
            pos: 0,
            line,
            params,
        })
    }

    fn syn(&self, msg: String) -> CxgError {
        CxgError::Syntax {
            line: self.line,
            msg,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.syn("unexpected end of meaning".to_string()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            Err(self.syn(format!("expected {want:?}, got {got:?}")))
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.syn(format!("trailing tokens after meaning: {:?}", self.toks[self.pos])))
        }
    }

    fn parse_expr(&mut self) -> Result<MeaningExpr> {
        let mut lhs = self.parse_product()?;
        while self.peek() == Some(&Tok::Plus) {
            self.next()?;
            let rhs = self.parse_product()?;
            lhs = MeaningExpr::add(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_product(&mut self) -> Result<MeaningExpr> {
        let mut lhs = self.parse_power()?;
        while self.peek() == Some(&Tok::Star) {
            self.next()?;
            let rhs = self.parse_power()?;
            lhs = MeaningExpr::mul(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_power(&mut self) -> Result<MeaningExpr> {
        let base = self.parse_atom()?;
        if self.peek() == Some(&Tok::DStar) {
            self.next()?;
            let exp = self.parse_power()?;
            return Ok(MeaningExpr::pow(base, exp));
        }
        Ok(base)
    }

    fn parse_index(&mut self) -> Result<usize> {
        match self.next()? {
            Tok::Int(i) if i >= 1 => Ok(i as usize),
            other => Err(self.syn(format!("expected constituent index >= 1, got {other:?}"))),
        }
    }

    fn parse_ident(&mut self) -> Result<String> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            other => Err(self.syn(format!("expected identifier, got {other:?}"))),
        }
    }

    /// `noun(person,we_0)`, `verb(gather,meet_0)`, `prep(at)`, `marker(pm)`.
    fn parse_sense_record(&mut self) -> Result<SenseRecord> {
        let cat = self.parse_ident()?;
        self.expect(Tok::LParen)?;
        let rec = match cat.as_str() {
            "prep" | "marker" => {
                let tok = self.ident_or_int()?;
                if cat == "prep" {
                    SenseRecord::prep(&tok)
                } else {
                    SenseRecord::marker(&tok)
                }
            }
            _ => {
                let ty = self.ident_or_int()?;
                self.expect(Tok::Comma)?;
                let id = self.ident_or_int()?;
                SenseRecord::new(&cat, &ty, &id)
            }
        };
        self.expect(Tok::RParen)?;
        Ok(rec)
    }

    /// Names that look numeric (the token `12`) lex as integers.
    fn ident_or_int(&mut self) -> Result<String> {
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            Tok::Int(i) => Ok(i.to_string()),
            other => Err(self.syn(format!("expected name, got {other:?}"))),
        }
    }

    fn parse_left_pat(&mut self) -> Result<LeftPat> {
        let name = self.parse_ident()?;
        Ok(match name.as_str() {
            "none" => LeftPat::NoLeft,
            "noun" => LeftPat::NounWord,
            "verb" => LeftPat::VerbWord,
            "marker" => LeftPat::MarkerWord,
            "tok" => {
                self.expect(Tok::LParen)?;
                let t = self.ident_or_int()?;
                self.expect(Tok::RParen)?;
                LeftPat::Tok(t)
            }
            other => return Err(self.syn(format!("unknown left pattern `{other}`"))),
        })
    }

    fn parse_frame_kind(&mut self) -> Result<FrameKind> {
        let name = self.parse_ident()?;
        FrameKind::from_str(&name).ok_or_else(|| self.syn(format!("unknown frame `{name}`")))
    }

    fn parse_atom(&mut self) -> Result<MeaningExpr> {
        match self.next()? {
            Tok::Int(v) => Ok(MeaningExpr::Num(v)),
            Tok::LParen => {
                let e = self.parse_expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => self.parse_named(&name),
            other => Err(self.syn(format!("unexpected {other:?} in meaning"))),
        }
    }

    fn parse_named(&mut self, name: &str) -> Result<MeaningExpr> {
        // Bare keywords first.
        match name {
            "left" => return Ok(MeaningExpr::LeftDigit),
            "bottom" => return Ok(MeaningExpr::Bottom),
            "self" => return Ok(MeaningExpr::SelfSense),
            "mark" => return Ok(MeaningExpr::PrepMark),
            _ => {}
        }
        if self.peek() != Some(&Tok::LParen) {
            if self.params.iter().any(|p| p == name) {
                return Ok(MeaningExpr::Ctx(name.to_string()));
            }
            return Ok(MeaningExpr::Sym(name.to_string()));
        }
        self.expect(Tok::LParen)?;
        let e = match name {
            "mu" => {
                let i = self.parse_index()?;
                MeaningExpr::Arg(i)
            }
            "pos" => {
                let i = self.parse_index()?;
                MeaningExpr::Pos(i)
            }
            "mod" => {
                let a = self.parse_expr()?;
                self.expect(Tok::Comma)?;
                let b = self.parse_expr()?;
                MeaningExpr::modulo(a, b)
            }
            "ifgt" => {
                let l = self.parse_expr()?;
                self.expect(Tok::Comma)?;
                let r = self.parse_expr()?;
                self.expect(Tok::Comma)?;
                let body = self.parse_expr()?;
                MeaningExpr::if_gt(l, r, body)
            }
            "senses" => {
                let mut rs = vec![self.parse_sense_record()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.next()?;
                    rs.push(self.parse_sense_record()?);
                }
                MeaningExpr::Senses(rs)
            }
            "cases" => {
                let mut cases = Vec::new();
                loop {
                    let rec = self.parse_sense_record()?;
                    self.expect(Tok::Colon)?;
                    let body = self.parse_expr()?;
                    cases.push((rec, body));
                    if self.peek() == Some(&Tok::Comma) {
                        self.next()?;
                    } else {
                        break;
                    }
                }
                MeaningExpr::SenseCases(cases)
            }
            "cond" => {
                let mut arms = Vec::new();
                loop {
                    let pat = self.parse_left_pat()?;
                    self.expect(Tok::Colon)?;
                    let body = self.parse_expr()?;
                    arms.push((pat, body));
                    if self.peek() == Some(&Tok::Comma) {
                        self.next()?;
                    } else {
                        break;
                    }
                }
                MeaningExpr::CondLeft(arms)
            }
            "frame" => {
                let mut pairs = Vec::new();
                loop {
                    let role = self.parse_ident()?;
                    self.expect(Tok::Eq)?;
                    let e = self.parse_expr()?;
                    pairs.push((role, e));
                    if self.peek() == Some(&Tok::Comma) {
                        self.next()?;
                    } else {
                        break;
                    }
                }
                MeaningExpr::Frame(pairs)
            }
            "lic" => {
                let frame = self.parse_frame_kind()?;
                self.expect(Tok::Comma)?;
                let verb = self.parse_index()?;
                self.expect(Tok::Comma)?;
                let body = self.parse_expr()?;
                MeaningExpr::License {
                    frame,
                    verb,
                    body: Box::new(body),
                }
            }
            "ppfact" => {
                let prep = self.parse_index()?;
                self.expect(Tok::Comma)?;
                let noun = self.parse_index()?;
                let tag = if self.peek() == Some(&Tok::Comma) {
                    self.next()?;
                    Some(self.ident_or_int()?)
                } else {
                    None
                };
                MeaningExpr::PpFact { prep, noun, tag }
            }
            "adjoin" => {
                let a = self.parse_expr()?;
                self.expect(Tok::Comma)?;
                let b = self.parse_expr()?;
                MeaningExpr::Adjoin(Box::new(a), Box::new(b))
            }
            "append" => {
                let a = self.parse_expr()?;
                self.expect(Tok::Comma)?;
                let b = self.parse_expr()?;
                MeaningExpr::Append(Box::new(a), Box::new(b))
            }
            "fact" => {
                let ty = self.ident_or_int()?;
                self.expect(Tok::Comma)?;
                let payload = self.parse_expr()?;
                MeaningExpr::NewFact {
                    fact_type: ty,
                    payload: Box::new(payload),
                }
            }
            "agent" => MeaningExpr::AgentStart(Box::new(self.parse_expr()?)),
            "act" => {
                let verb = self.parse_expr()?;
                let mut frames = Vec::new();
                while self.peek() == Some(&Tok::Comma) {
                    self.next()?;
                    frames.push(self.parse_frame_kind()?);
                }
                MeaningExpr::ActionAdd {
                    verb: Box::new(verb),
                    frames,
                }
            }
            "obj" => MeaningExpr::ObjectAdd(Box::new(self.parse_expr()?)),
            "obj2" => MeaningExpr::SecondObjectAdd(Box::new(self.parse_expr()?)),
            "tag" => MeaningExpr::RetagLast {
                required_type: self.ident_or_int()?,
            },
            other => return Err(self.syn(format!("unknown function `{other}`"))),
        };
        self.expect(Tok::RParen)?;
        Ok(e)
    }
}

pub fn render_grammar_text(g: &Grammar) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mode: {}", g.mode.as_str());
    if !g.start.is_empty() {
        let _ = writeln!(out, "start: {}", g.start.join(" "));
    }
    if let Some(cat) = &g.lexical_category {
        let _ = writeln!(out, "lexcat: {cat}");
    }
    for (a, b) in &g.subtypes {
        let _ = writeln!(out, "sub: {a} {b}");
    }
    for ((p, t), ty) in &g.ontology.pp_table {
        let _ = writeln!(out, "ppt: {p} {t} -> {ty}");
    }
    for (a, b) in &g.ontology.conflicts {
        let _ = writeln!(out, "conflict: {a} {b}");
    }
    for (id, frames) in &g.ontology.verb_frames {
        let fs: Vec<&str> = frames.iter().map(|f| f.as_str()).collect();
        let _ = writeln!(out, "vframes: {id} {}", fs.join(" "));
    }
    for (tok, ty) in &g.ontology.markers {
        let _ = writeln!(out, "marker: {tok} {ty}");
    }
    out.push('\n');
    for c in &g.constructions {
        let _ = writeln!(
            out,
            "{}: < {} ; {} ; {} >",
            c.name,
            render_context(&c.context),
            render_form(&c.form),
            render_expr(&c.meaning, 0)
        );
    }
    out
}

fn render_context(ctx: &Context) -> String {
    let inner: Vec<String> = ctx
        .params
        .iter()
        .map(|(n, v)| match v {
            CtxValue::Int(i) => format!("{n}={i}"),
            CtxValue::Tag(t) => format!("{n}={t}"),
        })
        .collect();
    format!("[{}]", inner.join(","))
}

fn render_form(form: &FormPattern) -> String {
    match form {
        FormPattern::Lexical { token } => format!("\"{token}\""),
        FormPattern::Rule { lhs, rhs } => {
            let parts: Vec<String> = rhs
                .iter()
                .map(|e| match e {
                    RhsElem::Terminal(t) => format!("\"{t}\""),
                    RhsElem::Cat { cat, args } => {
                        if args.is_empty() {
                            cat.clone()
                        } else {
                            let inner: Vec<String> = args
                                .iter()
                                .map(|a| match a {
                                    FeatureArg::Var(v) => format!("${v}"),
                                    FeatureArg::Const(c) => c.clone(),
                                })
                                .collect();
                            format!("{cat}({})", inner.join(","))
                        }
                    }
                })
                .collect();
            format!("{lhs} -> {}", parts.join(" "))
        }
    }
}

fn render_sense(r: &SenseRecord) -> String {
    match r.cat.as_str() {
        "prep" | "marker" => format!("{}({})", r.cat, r.id),
        _ => format!("{}({},{})", r.cat, r.sem_type, r.id),
    }
}

fn render_left_pat(p: &LeftPat) -> String {
    match p {
        LeftPat::NoLeft => "none".to_string(),
        LeftPat::NounWord => "noun".to_string(),
        LeftPat::VerbWord => "verb".to_string(),
        LeftPat::MarkerWord => "marker".to_string(),
        LeftPat::Tok(t) => format!("tok({t})"),
    }
}

/// Precedence: 1 sum, 2 product, 3 power; atoms bind tightest.
fn render_expr(e: &MeaningExpr, parent_prec: u8) -> String {
    use MeaningExpr as M;
    let (s, prec) = match e {
        M::Num(v) => (v.to_string(), 9),
        M::Sym(s) => (s.clone(), 9),
        M::Ctx(n) => (n.clone(), 9),
        M::Arg(i) => (format!("mu({i})"), 9),
        M::Pos(i) => (format!("pos({i})"), 9),
        M::LeftDigit => ("left".to_string(), 9),
        M::Bottom => ("bottom".to_string(), 9),
        M::SelfSense => ("self".to_string(), 9),
        M::PrepMark => ("mark".to_string(), 9),
        M::Add(a, b) => (
            format!("{} + {}", render_expr(a, 1), render_expr(b, 2)),
            1,
        ),
        M::Mul(a, b) => (
            format!("{}*{}", render_expr(a, 2), render_expr(b, 3)),
            2,
        ),
        M::Pow(a, b) => (
            format!("{}**{}", render_expr(a, 4), render_expr(b, 3)),
            3,
        ),
        M::Modulo(a, b) => (
            format!("mod({},{})", render_expr(a, 0), render_expr(b, 0)),
            9,
        ),
        M::IfGt { lhs, rhs, body } => (
            format!(
                "ifgt({},{},{})",
                render_expr(lhs, 0),
                render_expr(rhs, 0),
                render_expr(body, 0)
            ),
            9,
        ),
        M::Senses(rs) => {
            let inner: Vec<String> = rs.iter().map(render_sense).collect();
            (format!("senses({})", inner.join(",")), 9)
        }
        M::SenseCases(cases) => {
            let inner: Vec<String> = cases
                .iter()
                .map(|(r, b)| format!("{}: {}", render_sense(r), render_expr(b, 0)))
                .collect();
            (format!("cases({})", inner.join(", ")), 9)
        }
        M::CondLeft(arms) => {
            let inner: Vec<String> = arms
                .iter()
                .map(|(p, b)| format!("{}: {}", render_left_pat(p), render_expr(b, 0)))
                .collect();
            (format!("cond({})", inner.join(", ")), 9)
        }
        M::Frame(pairs) => {
            let inner: Vec<String> = pairs
                .iter()
                .map(|(r, e)| format!("{r}={}", render_expr(e, 0)))
                .collect();
            (format!("frame({})", inner.join(", ")), 9)
        }
        M::License { frame, verb, body } => (
            format!("lic({},{verb},{})", frame.as_str(), render_expr(body, 0)),
            9,
        ),
        M::PpFact { prep, noun, tag } => (
            match tag {
                Some(t) => format!("ppfact({prep},{noun},{t})"),
                None => format!("ppfact({prep},{noun})"),
            },
            9,
        ),
        M::Adjoin(a, b) => (
            format!("adjoin({},{})", render_expr(a, 0), render_expr(b, 0)),
            9,
        ),
        M::Append(a, b) => (
            format!("append({},{})", render_expr(a, 0), render_expr(b, 0)),
            9,
        ),
        M::NewFact { fact_type, payload } => (
            format!("fact({fact_type},{})", render_expr(payload, 0)),
            9,
        ),
        M::AgentStart(p) => (format!("agent({})", render_expr(p, 0)), 9),
        M::ActionAdd { verb, frames } => {
            let mut s = format!("act({}", render_expr(verb, 0));
            for f in frames {
                s.push(',');
                s.push_str(f.as_str());
            }
            s.push(')');
            (s, 9)
        }
        M::ObjectAdd(p) => (format!("obj({})", render_expr(p, 0)), 9),
        M::SecondObjectAdd(p) => (format!("obj2({})", render_expr(p, 0)), 9),
        M::RetagLast { required_type } => (format!("tag({required_type})"), 9),
    };
    if prec < parent_prec {
        format!("({s})")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{clause_grammar, fixture_meetings, fixture_small, lexicalize, number_grammar};

    fn roundtrip(g: &Grammar) {
        let text = render_grammar_text(g);
        let back = parse_grammar_text(&text).unwrap_or_else(|e| {
            panic!("reparse failed: {e}\n--- rendered ---\n{text}");
        });
        assert_eq!(&back, g, "--- rendered ---\n{text}");
    }

    #[test]
    fn fixture_grammars_round_trip() {
        for base in [2, 10, 16, 36] {
            for asc in [false, true] {
                let g = number_grammar(base, asc).unwrap();
                roundtrip(&g);
                roundtrip(&lexicalize(&g).unwrap());
            }
        }
        for lex in [fixture_meetings(), fixture_small()] {
            let g = clause_grammar(&lex).unwrap();
            roundtrip(&g);
            roundtrip(&lexicalize(&g).unwrap());
        }
    }

    #[test]
    fn precedence_parses_and_renders_stably() {
        let params = vec!["Base".to_string()];
        let mut p = MeaningParser::new("Base*mu(1) + mu(2)", 1, &params).unwrap();
        let e = p.parse_expr().unwrap();
        p.expect_end().unwrap();
        assert_eq!(
            e,
            MeaningExpr::add(
                MeaningExpr::mul(MeaningExpr::Ctx("Base".to_string()), MeaningExpr::Arg(1)),
                MeaningExpr::Arg(2)
            )
        );

        let mut p = MeaningParser::new("2*(3 + 4)**5", 1, &params).unwrap();
        let e = p.parse_expr().unwrap();
        let text = render_expr(&e, 0);
        let mut p2 = MeaningParser::new(&text, 1, &params).unwrap();
        assert_eq!(p2.parse_expr().unwrap(), e);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let src = "mode: constructional\nstart: DS\nlexcat: D\nbad: < [] ; \"x\" ; mu( >\n";
        match parse_grammar_text(src) {
            Err(CxgError::Syntax { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn empty_input_has_no_constructions() {
        assert!(matches!(
            parse_grammar_text("mode: constructional\n"),
            Err(CxgError::NoConstructions)
        ));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let src = "start: D\nlexcat: D\na: < [] ; \"x\" ; 1 >\na: < [] ; \"y\" ; 2 >\n";
        assert!(matches!(
            parse_grammar_text(src),
            Err(CxgError::DuplicateName(n)) if n == "a"
        ));
    }

    #[test]
    fn out_of_range_constituent_reference_fails() {
        let src = "start: DS\nlexcat: D\nds: < [] ; DS -> DS D ; mu(3) >\n";
        match parse_grammar_text(src) {
            Err(CxgError::Syntax { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("constituent 3"), "{msg}");
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
