//! Grammar family builders and the lexicalization transform.
//!
//! Two families are built here: positional numerals over an arbitrary base
//! (optionally restricted to strictly ascending digit sequences), and a
//! clause-plus-PP language whose PP typing lives in an ontology table.
//! `lexicalize` rewrites a constructional grammar of either family into a
//! lexicalized grammar with the same sentences and meanings: structural
//! meaning moves into every lexical entry and only a universal binary fold
//! rule remains.

use crate::canon::digit_char;
use crate::error::{CxgError, Result};
use crate::grammar::{
    Construction, Context, FeatureArg, FormPattern, FrameKind, Grammar, LeftPat, MeaningExpr,
    Mode, Ontology, RhsElem, SenseRecord,
};

fn ctx_base() -> MeaningExpr {
    MeaningExpr::Ctx("Base".to_string())
}

/// Constructional grammar of base-`base` digit strings. Digits are single
/// symbols valued by position; `ascending` additionally requires each digit
/// to exceed the one before it.
pub fn number_grammar(base: i64, ascending: bool) -> Result<Grammar> {
    if base < 2 {
        return Err(CxgError::InvalidBase(base));
    }
    let mut g = Grammar::new(Mode::Constructional);
    g.start = vec!["DS".to_string()];
    g.subtypes = vec![("D".to_string(), "DS".to_string())];
    g.lexical_category = Some("D".to_string());

    for d in 0..base {
        g.constructions.push(Construction {
            name: format!("d{d}"),
            context: Context::with_base(base),
            form: FormPattern::Lexical {
                token: digit_char(d).to_string(),
            },
            meaning: MeaningExpr::Num(d),
        });
    }

    let fold = MeaningExpr::add(
        MeaningExpr::mul(ctx_base(), MeaningExpr::Arg(1)),
        MeaningExpr::Arg(2),
    );
    let meaning = if ascending {
        MeaningExpr::if_gt(
            MeaningExpr::Arg(2),
            MeaningExpr::modulo(MeaningExpr::Arg(1), ctx_base()),
            fold,
        )
    } else {
        fold
    };
    g.constructions.push(Construction {
        name: "ds".to_string(),
        context: Context::with_base(base),
        form: FormPattern::Rule {
            lhs: "DS".to_string(),
            rhs: vec![RhsElem::cat("DS"), RhsElem::cat("D")],
        },
        meaning,
    });

    g.finalize();
    g.ensure_valid()?;
    Ok(g)
}

/// Word list plus semantic tables from which a clause-and-PP grammar is
/// built. Prepositions are words whose sense has category `prep`;
/// postmodifiers like `pm` are declared in `markers`, not in `words`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lexicon {
    pub words: Vec<(String, Vec<SenseRecord>)>,
    pub pp_table: Vec<((String, String), String)>,
    pub conflicts: Vec<(String, String)>,
    pub verb_frames: Vec<(String, Vec<FrameKind>)>,
    pub markers: Vec<(String, String)>,
}

/// Constructional grammar over `lex`: SV/SVO/SVOO clause rules licensed by
/// verb frames, a typed-PP rule per the PP table, one postmodified-PP rule
/// per marker, and a conflict-guarded adjunct rule.
pub fn clause_grammar(lex: &Lexicon) -> Result<Grammar> {
    if lex.words.is_empty() {
        return Err(CxgError::EmptyLexicon);
    }
    let mut g = Grammar::new(Mode::Constructional);
    g.start = vec!["CL".to_string()];
    g.subtypes = vec![
        ("noun".to_string(), "S".to_string()),
        ("verb".to_string(), "V".to_string()),
        ("noun".to_string(), "O".to_string()),
        ("pp".to_string(), "A".to_string()),
    ];
    g.ontology = Ontology {
        pp_table: lex.pp_table.clone(),
        conflicts: lex.conflicts.clone(),
        verb_frames: lex.verb_frames.clone(),
        markers: lex.markers.clone(),
    };

    for (token, senses) in &lex.words {
        if senses.is_empty() {
            return Err(CxgError::BadLexicon(format!("word `{token}` has no senses")));
        }
        g.constructions.push(Construction {
            name: format!("w_{token}"),
            context: Context::empty(),
            form: FormPattern::Lexical {
                token: token.clone(),
            },
            meaning: MeaningExpr::Senses(senses.clone()),
        });
    }

    let clause = |name: &str, frame: FrameKind, roles: Vec<(&str, usize)>, n_slots: usize| {
        let mut rhs = vec![RhsElem::cat("S"), RhsElem::cat("V")];
        for _ in 2..n_slots {
            rhs.push(RhsElem::cat("O"));
        }
        Construction {
            name: name.to_string(),
            context: Context::empty(),
            form: FormPattern::Rule {
                lhs: "CL".to_string(),
                rhs,
            },
            meaning: MeaningExpr::License {
                frame,
                verb: 2,
                body: Box::new(MeaningExpr::Frame(
                    roles
                        .into_iter()
                        .map(|(r, i)| (r.to_string(), MeaningExpr::Arg(i)))
                        .collect(),
                )),
            },
        }
    };
    g.constructions.push(clause(
        "sv",
        FrameKind::Sv,
        vec![("action", 2), ("agent", 1)],
        2,
    ));
    g.constructions.push(clause(
        "svo",
        FrameKind::Svo,
        vec![("action", 2), ("agent", 1), ("object", 3)],
        3,
    ));
    g.constructions.push(clause(
        "svoo",
        FrameKind::Svoo,
        vec![("action", 2), ("agent", 1), ("recipient", 3), ("object", 4)],
        4,
    ));

    let prep_slot = RhsElem::Cat {
        cat: "prep".to_string(),
        args: vec![FeatureArg::Var("p".to_string())],
    };
    g.constructions.push(Construction {
        name: "pp".to_string(),
        context: Context::empty(),
        form: FormPattern::Rule {
            lhs: "pp".to_string(),
            rhs: vec![
                prep_slot.clone(),
                RhsElem::Cat {
                    cat: "noun".to_string(),
                    args: vec![
                        FeatureArg::Var("t".to_string()),
                        FeatureArg::Var("w".to_string()),
                    ],
                },
            ],
        },
        meaning: MeaningExpr::PpFact {
            prep: 1,
            noun: 2,
            tag: None,
        },
    });

    for (tok, ty) in &lex.markers {
        g.constructions.push(Construction {
            name: format!("pp_{tok}"),
            context: Context::empty(),
            form: FormPattern::Rule {
                lhs: "pp".to_string(),
                rhs: vec![
                    prep_slot.clone(),
                    RhsElem::Cat {
                        cat: "noun".to_string(),
                        args: vec![
                            FeatureArg::Const(ty.clone()),
                            FeatureArg::Var("w".to_string()),
                        ],
                    },
                    RhsElem::Terminal(tok.clone()),
                ],
            },
            meaning: MeaningExpr::PpFact {
                prep: 1,
                noun: 2,
                tag: Some(tok.clone()),
            },
        });
    }

    g.constructions.push(Construction {
        name: "adjunct".to_string(),
        context: Context::empty(),
        form: FormPattern::Rule {
            lhs: "CL".to_string(),
            rhs: vec![RhsElem::cat("CL"), RhsElem::cat("A")],
        },
        meaning: MeaningExpr::Adjoin(Box::new(MeaningExpr::Arg(1)), Box::new(MeaningExpr::Arg(2))),
    });

    g.finalize();
    g.ensure_valid()?;
    Ok(g)
}

/// Rewrite a constructional grammar into a lexicalized one accepting the
/// same sentences with the same meanings.
pub fn lexicalize(g: &Grammar) -> Result<Grammar> {
    if g.mode == Mode::Lexicalized {
        return Err(CxgError::AlreadyLexicalized);
    }
    if is_number_shaped(g) {
        return lexicalize_number(g);
    }
    if is_clause_shaped(g) {
        return lexicalize_clauses(g);
    }
    Err(CxgError::UnsupportedShape(
        "expected a positional-numeral grammar or a clause-and-PP grammar".to_string(),
    ))
}

fn is_number_shaped(g: &Grammar) -> bool {
    g.lexical_category.is_some()
        && g.lexical_constructions()
            .all(|c| matches!(c.meaning, MeaningExpr::Num(_)))
        && g.structural_constructions().count() == 1
}

fn is_clause_shaped(g: &Grammar) -> bool {
    g.lexical_constructions()
        .all(|c| matches!(c.meaning, MeaningExpr::Senses(_)))
        && g
            .structural_constructions()
            .any(|c| matches!(c.meaning, MeaningExpr::License { .. }))
}

/// The positional fold `Base*μ(1)+μ(2)`, with or without the ascending
/// guard `μ(2) > mod(μ(1), Base)`; anything else is out of scope.
fn number_fold_kind(rule: &Construction) -> Result<bool> {
    let plain_fold = |e: &MeaningExpr| {
        matches!(
            e,
            MeaningExpr::Add(a, b)
                if matches!(&**a, MeaningExpr::Mul(x, y)
                    if matches!(**x, MeaningExpr::Ctx(_)) && matches!(**y, MeaningExpr::Arg(1)))
                    && matches!(**b, MeaningExpr::Arg(2))
        )
    };
    match &rule.meaning {
        e if plain_fold(e) => Ok(false),
        MeaningExpr::IfGt { lhs, rhs, body }
            if matches!(**lhs, MeaningExpr::Arg(2))
                && matches!(&**rhs, MeaningExpr::Modulo(a, b)
                    if matches!(**a, MeaningExpr::Arg(1)) && matches!(**b, MeaningExpr::Ctx(_)))
                && plain_fold(body) =>
        {
            Ok(true)
        }
        _ => Err(CxgError::UnsupportedShape(format!(
            "rule `{}` is not a positional digit fold",
            rule.name
        ))),
    }
}

fn lexicalize_number(g: &Grammar) -> Result<Grammar> {
    let rule = g
        .structural_constructions()
        .next()
        .ok_or_else(|| CxgError::UnsupportedShape("no digit-string rule".to_string()))?;
    let ascending = number_fold_kind(rule)?;

    let mut out = Grammar::new(Mode::Lexicalized);
    out.start = g.start.clone();
    out.subtypes = g.subtypes.clone();
    out.lexical_category = g.lexical_category.clone();
    out.ontology = g.ontology.clone();

    for c in g.lexical_constructions() {
        let MeaningExpr::Num(d) = c.meaning else {
            unreachable!("checked by is_number_shaped");
        };
        let FormPattern::Lexical { token } = &c.form else {
            unreachable!()
        };
        // The left-digit guard reads digit values straight off tokens, so a
        // token must denote its own value.
        if *token != digit_char(d).to_string() {
            return Err(CxgError::UnsupportedShape(format!(
                "digit token `{token}` does not denote {d}"
            )));
        }
        // 0 contributes 0 at any position; every other digit is scaled by
        // where it stands.
        let body = if d == 0 {
            MeaningExpr::Num(0)
        } else {
            MeaningExpr::mul(
                MeaningExpr::Num(d),
                MeaningExpr::pow(ctx_base(), MeaningExpr::Pos(1)),
            )
        };
        let meaning = if ascending {
            MeaningExpr::if_gt(MeaningExpr::Num(d), MeaningExpr::LeftDigit, body)
        } else {
            body
        };
        out.constructions.push(Construction {
            name: c.name.clone(),
            context: c.context.clone(),
            form: c.form.clone(),
            meaning,
        });
    }

    let FormPattern::Rule { lhs, rhs } = &rule.form else {
        unreachable!()
    };
    out.constructions.push(Construction {
        name: rule.name.clone(),
        context: rule.context.clone(),
        form: FormPattern::Rule {
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        },
        meaning: MeaningExpr::add(MeaningExpr::Arg(1), MeaningExpr::Arg(2)),
    });

    out.finalize();
    out.ensure_valid()?;
    Ok(out)
}

fn lexicalize_clauses(g: &Grammar) -> Result<Grammar> {
    let has_frame = |kind: FrameKind| {
        g.structural_constructions()
            .any(|c| matches!(&c.meaning, MeaningExpr::License { frame, .. } if *frame == kind))
    };
    if !has_frame(FrameKind::Sv) {
        return Err(CxgError::UnsupportedShape(
            "clause grammar without an SV rule".to_string(),
        ));
    }
    let has_svo = has_frame(FrameKind::Svo);
    let has_svoo = has_frame(FrameKind::Svoo);
    let has_adjuncts = g
        .structural_constructions()
        .any(|c| matches!(c.meaning, MeaningExpr::Adjoin(..)));
    let has_tagged_pp = g
        .structural_constructions()
        .any(|c| matches!(&c.meaning, MeaningExpr::PpFact { tag: Some(_), .. }));

    let mut out = Grammar::new(Mode::Lexicalized);
    out.start = g.start.clone();
    for cat in ["noun", "verb", "prep", "marker"] {
        out.subtypes.push((cat.to_string(), "CL".to_string()));
        out.subtypes.push((cat.to_string(), "W".to_string()));
    }
    // PP typing, verb frames and markers are inlined into the entries
    // below; only the conflict relation stays shared.
    out.ontology.conflicts = g.ontology.conflicts.clone();

    for c in g.lexical_constructions() {
        let MeaningExpr::Senses(senses) = &c.meaning else {
            unreachable!("checked by is_clause_shaped");
        };
        let mut cases = Vec::new();
        for s in senses {
            let arms = match s.cat.as_str() {
                "noun" => {
                    let mut arms = vec![(
                        LeftPat::NoLeft,
                        MeaningExpr::AgentStart(Box::new(MeaningExpr::SelfSense)),
                    )];
                    if has_svo {
                        arms.push((
                            LeftPat::VerbWord,
                            MeaningExpr::ObjectAdd(Box::new(MeaningExpr::SelfSense)),
                        ));
                    }
                    if has_svoo {
                        arms.push((
                            LeftPat::NounWord,
                            MeaningExpr::SecondObjectAdd(Box::new(MeaningExpr::SelfSense)),
                        ));
                    }
                    if has_adjuncts {
                        for ((p, t), ty) in &g.ontology.pp_table {
                            if *t == s.sem_type {
                                arms.push((
                                    LeftPat::Tok(p.clone()),
                                    MeaningExpr::NewFact {
                                        fact_type: ty.clone(),
                                        payload: Box::new(MeaningExpr::SelfSense),
                                    },
                                ));
                            }
                        }
                    }
                    arms
                }
                "verb" => {
                    let frames = g.ontology.frames_of(&s.id).ok_or_else(|| {
                        CxgError::UnsupportedShape(format!("verb `{}` has no frames", s.id))
                    })?;
                    vec![(
                        LeftPat::NounWord,
                        MeaningExpr::ActionAdd {
                            verb: Box::new(MeaningExpr::SelfSense),
                            frames: frames.to_vec(),
                        },
                    )]
                }
                "prep" => {
                    let mut arms = vec![
                        (LeftPat::NounWord, MeaningExpr::PrepMark),
                        (LeftPat::VerbWord, MeaningExpr::PrepMark),
                    ];
                    if has_tagged_pp {
                        arms.push((LeftPat::MarkerWord, MeaningExpr::PrepMark));
                    }
                    arms
                }
                other => {
                    return Err(CxgError::UnsupportedShape(format!(
                        "cannot lexicalize `{}` entries",
                        other
                    )))
                }
            };
            cases.push((s.clone(), MeaningExpr::CondLeft(arms)));
        }
        out.constructions.push(Construction {
            name: c.name.clone(),
            context: c.context.clone(),
            form: c.form.clone(),
            meaning: MeaningExpr::SenseCases(cases),
        });
    }

    // Postmodifiers are ordinary words here: they retag the newest fact of
    // their declared type.
    for (tok, ty) in &g.ontology.markers {
        out.constructions.push(Construction {
            name: format!("w_{tok}"),
            context: Context::empty(),
            form: FormPattern::Lexical { token: tok.clone() },
            meaning: MeaningExpr::SenseCases(vec![(
                SenseRecord::marker(tok),
                MeaningExpr::CondLeft(vec![(
                    LeftPat::NounWord,
                    MeaningExpr::RetagLast {
                        required_type: ty.clone(),
                    },
                )]),
            )]),
        });
    }

    out.constructions.push(Construction {
        name: "cl".to_string(),
        context: Context::empty(),
        form: FormPattern::Rule {
            lhs: "CL".to_string(),
            rhs: vec![RhsElem::cat("CL"), RhsElem::cat("W")],
        },
        meaning: MeaningExpr::Append(
            Box::new(MeaningExpr::Arg(1)),
            Box::new(MeaningExpr::Arg(2)),
        ),
    });

    out.finalize();
    out.ensure_valid()?;
    Ok(out)
}

fn noun(ty: &str, id: &str) -> SenseRecord {
    SenseRecord::new("noun", ty, id)
}

/// Twelve-item vocabulary for the worked clause examples: one clause verb,
/// four prepositions, dual-sense hour numerals, and the `pm` postmodifier.
pub fn fixture_meetings() -> Lexicon {
    let hour = |tok: &str| {
        (
            tok.to_string(),
            vec![
                noun("hour", &format!("{tok}_0")),
                noun("number", &format!("{tok}_1")),
            ],
        )
    };
    Lexicon {
        words: vec![
            ("we".to_string(), vec![noun("person", "we_0")]),
            (
                "meet".to_string(),
                vec![SenseRecord::new("verb", "gather", "meet_0")],
            ),
            ("at".to_string(), vec![SenseRecord::prep("at")]),
            ("with".to_string(), vec![SenseRecord::prep("with")]),
            ("from".to_string(), vec![SenseRecord::prep("from")]),
            ("to".to_string(), vec![SenseRecord::prep("to")]),
            hour("12"),
            hour("5"),
            hour("6"),
            ("bob".to_string(), vec![noun("person", "bob_0")]),
            (
                "6_avenue_and_44_street".to_string(),
                vec![noun("location", "6_avenue_and_44_street_0")],
            ),
        ],
        pp_table: vec![
            (("at".to_string(), "hour".to_string()), "event_time".to_string()),
            (("at".to_string(), "location".to_string()), "location".to_string()),
            (("with".to_string(), "person".to_string()), "participant".to_string()),
            (("from".to_string(), "hour".to_string()), "beginning_time".to_string()),
            (("to".to_string(), "hour".to_string()), "end_time".to_string()),
        ],
        conflicts: vec![
            ("event_time".to_string(), "beginning_time".to_string()),
            ("event_time".to_string(), "end_time".to_string()),
        ],
        verb_frames: vec![("meet_0".to_string(), vec![FrameKind::Sv, FrameKind::Svo])],
        markers: vec![("pm".to_string(), "hour".to_string())],
    }
}

/// Eleven single-sense words, small enough to enumerate the whole language
/// up to a few adjuncts.
pub fn fixture_small() -> Lexicon {
    Lexicon {
        words: vec![
            ("we".to_string(), vec![noun("person", "we_0")]),
            ("bob".to_string(), vec![noun("person", "bob_0")]),
            ("12".to_string(), vec![noun("hour", "12_0")]),
            ("5".to_string(), vec![noun("hour", "5_0")]),
            ("library".to_string(), vec![noun("location", "library_0")]),
            ("report".to_string(), vec![noun("document", "report_0")]),
            (
                "meet".to_string(),
                vec![SenseRecord::new("verb", "gather", "meet_0")],
            ),
            (
                "fax".to_string(),
                vec![SenseRecord::new("verb", "send", "fax_0")],
            ),
            ("at".to_string(), vec![SenseRecord::prep("at")]),
            ("from".to_string(), vec![SenseRecord::prep("from")]),
            ("with".to_string(), vec![SenseRecord::prep("with")]),
        ],
        pp_table: vec![
            (("at".to_string(), "hour".to_string()), "event_time".to_string()),
            (("at".to_string(), "location".to_string()), "location".to_string()),
            (("from".to_string(), "hour".to_string()), "beginning_time".to_string()),
            (("with".to_string(), "person".to_string()), "participant".to_string()),
        ],
        conflicts: vec![("event_time".to_string(), "beginning_time".to_string())],
        verb_frames: vec![
            ("meet_0".to_string(), vec![FrameKind::Sv, FrameKind::Svo]),
            ("fax_0".to_string(), vec![FrameKind::Svo, FrameKind::Svoo]),
        ],
        markers: vec![],
    }
}

/// Lexicon with `n` uniform hour nouns, for scaling measurements: grammar
/// size as a function of noun count.
pub fn hour_lexicon(n: usize) -> Lexicon {
    let mut words = vec![
        ("we".to_string(), vec![noun("person", "we_0")]),
        (
            "meet".to_string(),
            vec![SenseRecord::new("verb", "gather", "meet_0")],
        ),
        ("at".to_string(), vec![SenseRecord::prep("at")]),
        ("from".to_string(), vec![SenseRecord::prep("from")]),
    ];
    for i in 0..n {
        let tok = format!("h{i:02}");
        words.push((tok.clone(), vec![noun("hour", &format!("{tok}_0"))]));
    }
    Lexicon {
        words,
        pp_table: vec![
            (("at".to_string(), "hour".to_string()), "event_time".to_string()),
            (("from".to_string(), "hour".to_string()), "beginning_time".to_string()),
        ],
        conflicts: vec![("event_time".to_string(), "beginning_time".to_string())],
        verb_frames: vec![("meet_0".to_string(), vec![FrameKind::Sv])],
        markers: vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::serialize_grammar;
    use crate::chart::{parse_str, tokenize};

    #[test]
    fn base_ten_grammar_has_eleven_constructions() {
        let g = number_grammar(10, false).unwrap();
        assert_eq!(g.constructions.len(), 11);
        assert_eq!(g.lexical_constructions().count(), 10);
        let lines = serialize_grammar(&g);
        assert_eq!(lines[0], "<[10];0;μ(0)=0>");
        assert_eq!(lines[10], "<[10];DS→DS1D;μ(DS)=10*μ(DS1)+μ(D)>");
    }

    #[test]
    fn rejects_base_below_two() {
        assert!(matches!(number_grammar(1, false), Err(CxgError::InvalidBase(1))));
        assert!(matches!(number_grammar(-3, false), Err(CxgError::InvalidBase(-3))));
    }

    #[test]
    fn digit_strings_evaluate_positionally() {
        let g = number_grammar(10, false).unwrap();
        let p = parse_str(&g, "1 7 3 4 1").unwrap();
        assert_eq!(p.derivation_count(), 1);
        assert_eq!(
            p.meanings().unwrap(),
            vec![crate::semantics::SemValue::Number(17341)]
        );

        let p = parse_str(&g, "0 0 7").unwrap();
        assert_eq!(p.meanings().unwrap(), vec![crate::semantics::SemValue::Number(7)]);
    }

    #[test]
    fn lexicalized_digits_agree_with_constructional() {
        let ga = number_grammar(10, false).unwrap();
        let gb = lexicalize(&ga).unwrap();
        assert_eq!(gb.mode, Mode::Lexicalized);
        let lines = serialize_grammar(&gb);
        assert_eq!(lines[0], "<[10];0;μ(0)=0>");
        assert_eq!(lines[7], "<[10];7;μ(7)=7*10**pos(7)>");
        assert_eq!(lines[10], "<[10];DS→DS1D;μ(DS)=μ(DS1)+μ(D)>");

        for s in ["7", "1 7 3 4 1", "0", "9 0 9", "0 0 7"] {
            let toks = tokenize(s);
            let va = crate::chart::parse(&ga, &toks).unwrap().meanings().unwrap();
            let vb = crate::chart::parse(&gb, &toks).unwrap().meanings().unwrap();
            assert_eq!(va, vb, "meanings differ on {s}");
        }
    }

    #[test]
    fn ascending_grammars_accept_only_ascending_strings() {
        let ga = number_grammar(10, true).unwrap();
        let gb = lexicalize(&ga).unwrap();
        let lines = serialize_grammar(&gb);
        assert_eq!(lines[0], "<[10];0;μ(0)=0if0>leftelse⊥>");
        assert_eq!(lines[7], "<[10];7;μ(7)=7*10**pos(7)if7>leftelse⊥>");

        for (s, want) in [
            ("1 7", Some(17)),
            ("7 1", None),
            ("7 7", None),
            ("7", Some(7)),
            ("1 3 9", Some(139)),
            ("0 1 2", Some(12)),
        ] {
            for g in [&ga, &gb] {
                let p = parse_str(g, s).unwrap();
                let m = p.meanings().unwrap();
                match want {
                    Some(v) => {
                        assert_eq!(m, vec![crate::semantics::SemValue::Number(v)], "{s}")
                    }
                    None => assert!(m.is_empty(), "{s} should be rejected"),
                }
            }
        }
    }

    #[test]
    fn clause_grammar_parses_the_worked_examples() {
        let g = clause_grammar(&fixture_meetings()).unwrap();
        let ok = parse_str(&g, "we meet at 12").unwrap();
        assert!(ok.accepted().unwrap());

        let s1 = parse_str(&g, "we meet at 12 with bob at 6_avenue_and_44_street").unwrap();
        assert!(s1.accepted().unwrap());

        let s2 = parse_str(&g, "we meet at 12 pm with bob from 5 to 6 pm").unwrap();
        assert!(s2.derivation_count() > 0, "parseable but nonsensical");
        assert!(!s2.accepted().unwrap());
    }

    #[test]
    fn lexicalized_clauses_agree_on_the_worked_examples() {
        let ga = clause_grammar(&fixture_meetings()).unwrap();
        let gb = lexicalize(&ga).unwrap();
        for s in [
            "we meet",
            "we meet at 12",
            "we meet at 12 pm",
            "we meet at 12 with bob at 6_avenue_and_44_street",
            "we meet at 12 pm with bob from 5 to 6 pm",
            "we meet from 5 pm to 6",
            "12 meet",
            "we meet bob",
            "meet we",
            "we we",
            "at 12 we meet",
            "we meet at",
            "we meet at 12 at 5",
        ] {
            let toks = tokenize(s);
            let ma = crate::chart::parse(&ga, &toks).unwrap().meanings().unwrap();
            let mb = crate::chart::parse(&gb, &toks).unwrap().meanings().unwrap();
            assert_eq!(ma, mb, "meanings differ on `{s}`");
        }
    }

    #[test]
    fn multi_sense_words_give_one_meaning_per_live_sense() {
        // Four-way ambiguous word: chasing verb plus three noun senses.
        let mut lex = fixture_small();
        lex.words.push((
            "dog".to_string(),
            vec![
                SenseRecord::new("verb", "pursue", "dog_0"),
                noun("person", "dog_1"),
                noun("person", "dog_2"),
                noun("animal", "dog_3"),
            ],
        ));
        lex.verb_frames
            .push(("dog_0".to_string(), vec![FrameKind::Svo]));
        let ga = clause_grammar(&lex).unwrap();
        let gb = lexicalize(&ga).unwrap();

        // dog-as-verb flanked by dog-as-noun: 3 agents × 3 objects.
        let toks = tokenize("dog dog dog");
        let ma = crate::chart::parse(&ga, &toks).unwrap().meanings().unwrap();
        let mb = crate::chart::parse(&gb, &toks).unwrap().meanings().unwrap();
        assert_eq!(ma.len(), 9);
        let sorted = |mut v: Vec<crate::semantics::SemValue>| {
            v.sort();
            v
        };
        assert_eq!(sorted(ma), sorted(mb));
    }
}
