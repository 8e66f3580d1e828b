//! Textual format for basic action theories and progression outputs.
//!
//! A BAT file is a sequence of s-expressions:
//!
//! ```text
//! (vocab (const c1 c2) (fluent F 1) (rigid R 2) (action A 1))
//! (init <sentence>*)
//! (ssa F <entry>*)            ; parameters default to x1..xa
//! (ssa (F x y) <entry>*)      ; or named explicitly
//! ```
//!
//! with effect entries
//!
//! ```text
//! (pos A (v...) (z...) <body>)    ; one disjunct of γ⁺
//! (neg A (v...) (z...) <body>)    ; one disjunct of γ⁻
//! ```
//!
//! where `(v...)` is the action-argument pattern (variables from the
//! fluent's parameters and `(z...)`, repetitions allowed) and `<body>` is the
//! effect condition with fluent atoms read at the axiom's situation variable.
//!
//! Sentences:
//!
//! ```text
//! true | false | (and f f+) | (or f f+) | (not f) | (implies f f)
//! | (iff f f) | (exists (v+) f) | (forall (v+) f) | (= t t) | (P t*)
//! ```
//!
//! A term is a symbol: a declared constant names itself, anything else is a
//! variable. `init` sentences are read at situation `S0`; free variables are
//! implicitly universally quantified (flagged as a warning, charged nothing
//! by the size metric).
//!
//! A progression output file is one s-expression
//! `(progression (vocab ...) (action A c*) <sentence>*)` whose sentences are
//! read at the successor situation `do(A(c*), S0)`. [`print_theory`] and
//! [`parse_theory_str`] round-trip it.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::bat::{Bat, Ssa, SsaEntry, Vocabulary};
use crate::formula::{Formula, GroundAction, SitTerm, Term};
use crate::sexpr::{self, Sexp, SexpError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("{0}")]
    Malformed(String),
}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Malformed(msg.into()))
}

// ---------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------

/// Parses a BAT from source text.
pub fn parse_bat_str(src: &str) -> Result<Bat, ParseError> {
    let items = sexpr::parse_many(src)?;
    let mut vocab: Option<Vocabulary> = None;
    let mut init_forms: Vec<Sexp> = Vec::new();
    let mut ssa_forms: Vec<Sexp> = Vec::new();
    for item in &items {
        match item.as_tagged() {
            Some(("vocab", _)) => {
                if vocab.is_some() {
                    return err("duplicate (vocab ...) block");
                }
                vocab = Some(parse_vocab(item)?);
            }
            Some(("init", rest)) => init_forms.extend(rest.iter().cloned()),
            Some(("ssa", _)) => ssa_forms.push(item.clone()),
            Some((other, _)) => return err(format!("unknown top-level form ({other} ...)")),
            None => return err(format!("unexpected top-level atom {item}")),
        }
    }
    let vocab = match vocab {
        Some(v) => v,
        None => return err("missing (vocab ...) block"),
    };

    let mut warnings = Vec::new();
    let mut init = Vec::new();
    for form in &init_forms {
        let f = parse_formula(&vocab, form, &SitTerm::S0)?;
        let free = f.free_vars();
        if !free.is_empty() {
            warnings.push(format!(
                "initial sentence {f} read as universally closed over {}",
                free.into_iter().collect::<Vec<_>>().join(", ")
            ));
        }
        init.push(f.rename_binders_apart());
    }

    let mut bat = Bat {
        vocab,
        init,
        ssas: Default::default(),
        warnings,
    };
    for form in &ssa_forms {
        let ssa = parse_ssa(&bat.vocab, form)?;
        if bat.ssas.contains_key(&ssa.fluent) {
            return err(format!("duplicate (ssa ...) block for fluent {}", ssa.fluent));
        }
        bat.ssas.insert(ssa.fluent.clone(), ssa);
    }
    // Fluents without a declared SSA are pure frame: empty effect lists.
    for (f, arity) in &bat.vocab.fluents {
        bat.ssas.entry(f.clone()).or_insert_with(|| Ssa {
            fluent: f.clone(),
            params: default_params(*arity),
            pos: Vec::new(),
            neg: Vec::new(),
        });
    }
    Ok(bat)
}

/// Parses a BAT from a file.
pub fn parse_bat_file(path: impl AsRef<Path>) -> Result<Bat, ParseError> {
    let src = std::fs::read_to_string(path.as_ref())
        .map_err(|e| ParseError::Malformed(format!("{}: {e}", path.as_ref().display())))?;
    parse_bat_str(&src)
}

fn default_params(arity: usize) -> Vec<String> {
    (1..=arity).map(|i| format!("x{i}")).collect()
}

fn parse_vocab(item: &Sexp) -> Result<Vocabulary, ParseError> {
    let (_, decls) = item.as_tagged().expect("caller checked tag");
    let mut vocab = Vocabulary::default();
    let mut names = BTreeSet::new();
    let mut claim = |name: &str| -> Result<(), ParseError> {
        if !names.insert(name.to_string()) {
            return err(format!("symbol {name} declared twice"));
        }
        Ok(())
    };
    for d in decls {
        let (tag, rest) = match d.as_tagged() {
            Some(t) => t,
            None => return err(format!("malformed vocab declaration {d}")),
        };
        match tag {
            "const" => {
                for c in rest {
                    let name = sym(c, "constant name")?;
                    claim(name)?;
                    vocab.consts.push(name.to_string());
                }
            }
            "fluent" | "rigid" | "action" => {
                if rest.len() != 2 {
                    return err(format!("({tag} NAME ARITY) expected, got {d}"));
                }
                let name = sym(&rest[0], "predicate name")?;
                let arity: usize = sym(&rest[1], "arity")?
                    .parse()
                    .map_err(|_| ParseError::Malformed(format!("bad arity in {d}")))?;
                claim(name)?;
                match tag {
                    "fluent" => vocab.fluents.insert(name.to_string(), arity),
                    "rigid" => vocab.rigids.insert(name.to_string(), arity),
                    _ => vocab.actions.insert(name.to_string(), arity),
                };
            }
            other => return err(format!("unknown vocab declaration ({other} ...)")),
        }
    }
    Ok(vocab)
}

fn sym<'a>(e: &'a Sexp, what: &str) -> Result<&'a str, ParseError> {
    match e.as_sym() {
        Some(s) => Ok(s),
        None => err(format!("expected {what}, got {e}")),
    }
}

fn var_list(e: &Sexp, what: &str) -> Result<Vec<String>, ParseError> {
    let items = match e.as_list() {
        Some(l) => l,
        None => return err(format!("expected ({what} ...) list, got {e}")),
    };
    items
        .iter()
        .map(|v| sym(v, "variable").map(str::to_string))
        .collect()
}

fn parse_ssa(vocab: &Vocabulary, item: &Sexp) -> Result<Ssa, ParseError> {
    let (_, rest) = item.as_tagged().expect("caller checked tag");
    if rest.is_empty() {
        return err("(ssa ...) needs a fluent");
    }
    let (fluent, params) = match &rest[0] {
        Sexp::Sym(f) => {
            let arity = match vocab.fluents.get(f) {
                Some(a) => *a,
                None => return err(format!("(ssa {f} ...): {f} is not a declared fluent")),
            };
            (f.clone(), default_params(arity))
        }
        Sexp::List(head) => {
            if head.is_empty() {
                return err("(ssa (F x...) ...): empty head");
            }
            let f = sym(&head[0], "fluent name")?.to_string();
            let arity = match vocab.fluents.get(&f) {
                Some(a) => *a,
                None => return err(format!("(ssa ({f} ...) ...): {f} is not a declared fluent")),
            };
            let params: Vec<String> = head[1..]
                .iter()
                .map(|v| sym(v, "parameter").map(str::to_string))
                .collect::<Result<_, _>>()?;
            if params.len() != arity {
                return err(format!(
                    "fluent {f} has arity {arity} but {} parameters are named",
                    params.len()
                ));
            }
            (f, params)
        }
    };
    let distinct: BTreeSet<&String> = params.iter().collect();
    if distinct.len() != params.len() {
        return err(format!("fluent {fluent}: repeated parameter names"));
    }
    for p in &params {
        if vocab.is_const(p) {
            return err(format!("fluent {fluent}: parameter {p} is a declared constant"));
        }
    }

    let mut ssa = Ssa {
        fluent: fluent.clone(),
        params: params.clone(),
        pos: Vec::new(),
        neg: Vec::new(),
    };
    for e in &rest[1..] {
        let (tag, parts) = match e.as_tagged() {
            Some(t) => t,
            None => return err(format!("malformed SSA entry {e}")),
        };
        if tag != "pos" && tag != "neg" {
            return err(format!("SSA entry must be (pos ...) or (neg ...), got ({tag} ...)"));
        }
        if parts.len() != 4 {
            return err(format!("({tag} A (v...) (z...) body) expected, got {e}"));
        }
        let action = sym(&parts[0], "action name")?.to_string();
        let arity = match vocab.actions.get(&action) {
            Some(a) => *a,
            None => return err(format!("{action} is not a declared action")),
        };
        let pattern = var_list(&parts[1], "pattern")?;
        if pattern.len() != arity {
            return err(format!(
                "action {action} has arity {arity} but the pattern names {} variables",
                pattern.len()
            ));
        }
        let exist = var_list(&parts[2], "existential variables")?;
        let exist_set: BTreeSet<&String> = exist.iter().collect();
        if exist_set.len() != exist.len() {
            return err(format!("fluent {fluent}: repeated existential variable"));
        }
        for z in &exist {
            if params.contains(z) || vocab.is_const(z) {
                return err(format!(
                    "fluent {fluent}: existential variable {z} clashes with a parameter or constant"
                ));
            }
        }
        let scope: BTreeSet<String> = params.iter().chain(&exist).cloned().collect();
        for v in &pattern {
            if vocab.is_const(v) {
                return err(format!(
                    "fluent {fluent}: pattern position {v} is a constant; patterns are variables"
                ));
            }
            if !scope.contains(v) {
                return err(format!(
                    "fluent {fluent}, action {action}: pattern variable {v} is neither a \
                     parameter nor listed in (z...)"
                ));
            }
        }
        let body = parse_formula(vocab, &parts[3], &SitTerm::Var("s".into()))?;
        let loose: Vec<String> = body
            .free_vars()
            .into_iter()
            .filter(|v| !scope.contains(v))
            .collect();
        if !loose.is_empty() {
            return err(format!(
                "fluent {fluent}, action {action}: unbound variables {} in effect condition",
                loose.join(", ")
            ));
        }
        let entry = SsaEntry {
            action,
            pattern,
            exist,
            body: body.rename_binders_apart(),
        };
        match tag {
            "pos" => ssa.pos.push(entry),
            _ => ssa.neg.push(entry),
        }
    }
    Ok(ssa)
}

/// Parses one sentence with fluent atoms read at situation `sit`.
pub fn parse_formula(vocab: &Vocabulary, e: &Sexp, sit: &SitTerm) -> Result<Formula, ParseError> {
    match e {
        Sexp::Sym(s) if s == "true" => Ok(Formula::True),
        Sexp::Sym(s) if s == "false" => Ok(Formula::False),
        Sexp::Sym(s) => err(format!("bare symbol {s} is not a sentence")),
        Sexp::List(_) => {
            let (head, rest) = match e.as_tagged() {
                Some(t) => t,
                None => return err(format!("sentence must start with a symbol: {e}")),
            };
            let nary = |rest: &[Sexp], what: &str| -> Result<Vec<Formula>, ParseError> {
                if rest.len() < 2 {
                    return err(format!("({what} ...) needs at least two arguments"));
                }
                rest.iter().map(|x| parse_formula(vocab, x, sit)).collect()
            };
            let binary = |rest: &[Sexp], what: &str| -> Result<(Formula, Formula), ParseError> {
                if rest.len() != 2 {
                    return err(format!("({what} f g) expects exactly two arguments"));
                }
                Ok((
                    parse_formula(vocab, &rest[0], sit)?,
                    parse_formula(vocab, &rest[1], sit)?,
                ))
            };
            match head {
                "and" => Ok(Formula::And(nary(rest, "and")?)),
                "or" => Ok(Formula::Or(nary(rest, "or")?)),
                "not" => {
                    if rest.len() != 1 {
                        return err("(not f) expects exactly one argument");
                    }
                    Ok(parse_formula(vocab, &rest[0], sit)?.not())
                }
                "implies" => {
                    let (a, b) = binary(rest, "implies")?;
                    Ok(a.implies(b))
                }
                "iff" => {
                    let (a, b) = binary(rest, "iff")?;
                    Ok(a.iff(b))
                }
                "exists" | "forall" => {
                    if rest.len() != 2 {
                        return err(format!("({head} (v...) f) expects a var list and a body"));
                    }
                    let vars = var_list(&rest[0], "bound variables")?;
                    if vars.is_empty() {
                        return err(format!("({head} () ...): empty binder"));
                    }
                    for v in &vars {
                        if vocab.is_const(v) {
                            return err(format!("cannot bind declared constant {v}"));
                        }
                    }
                    let body = parse_formula(vocab, &rest[1], sit)?;
                    Ok(if head == "exists" {
                        Formula::exists_many(&vars, body)
                    } else {
                        Formula::forall_many(&vars, body)
                    })
                }
                "=" => {
                    if rest.len() != 2 {
                        return err("(= t u) expects exactly two terms");
                    }
                    Ok(Formula::eq(
                        parse_term(vocab, &rest[0])?,
                        parse_term(vocab, &rest[1])?,
                    ))
                }
                name => {
                    let (arity, fluent) = if let Some(a) = vocab.fluents.get(name) {
                        (*a, true)
                    } else if let Some(a) = vocab.rigids.get(name) {
                        (*a, false)
                    } else {
                        return err(format!("unknown predicate {name}"));
                    };
                    if rest.len() != arity {
                        return err(format!("{name} has arity {arity}, got {} args", rest.len()));
                    }
                    let args: Vec<Term> = rest
                        .iter()
                        .map(|t| parse_term(vocab, t))
                        .collect::<Result<_, _>>()?;
                    Ok(if fluent {
                        Formula::Fluent(name.to_string(), args, sit.clone())
                    } else {
                        Formula::Rigid(name.to_string(), args)
                    })
                }
            }
        }
    }
}

fn parse_term(vocab: &Vocabulary, e: &Sexp) -> Result<Term, ParseError> {
    let name = sym(e, "term")?;
    if vocab.fluents.contains_key(name)
        || vocab.rigids.contains_key(name)
        || vocab.actions.contains_key(name)
    {
        return err(format!("predicate or action symbol {name} used as a term"));
    }
    Ok(if vocab.is_const(name) {
        Term::cnst(name)
    } else {
        Term::var(name)
    })
}

// ---------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------

fn term_to_sexpr(t: &Term) -> Sexp {
    match t {
        Term::Var(v) => Sexp::sym(v.clone()),
        Term::Const(c) => Sexp::sym(c.clone()),
    }
}

/// Renders a sentence; fluent atoms must all sit at `sit` (they print bare)
/// and lifted atoms must have been resolved away.
pub fn formula_to_sexpr(f: &Formula, sit: &SitTerm) -> Result<Sexp, ParseError> {
    Ok(match f {
        Formula::True => Sexp::sym("true"),
        Formula::False => Sexp::sym("false"),
        Formula::Fluent(n, ts, s) => {
            if s != sit {
                return err(format!(
                    "cannot print {f}: fluent atom at {s}, expected {sit}"
                ));
            }
            let mut items = vec![Sexp::sym(n.clone())];
            items.extend(ts.iter().map(term_to_sexpr));
            Sexp::List(items)
        }
        Formula::Rigid(n, ts) => {
            let mut items = vec![Sexp::sym(n.clone())];
            items.extend(ts.iter().map(term_to_sexpr));
            Sexp::List(items)
        }
        Formula::Lifted(n, _) => {
            return err(format!("cannot print unresolved lifted atom for {n}"));
        }
        Formula::Eq(a, b) => Sexp::List(vec![Sexp::sym("="), term_to_sexpr(a), term_to_sexpr(b)]),
        Formula::Not(p) => Sexp::List(vec![Sexp::sym("not"), formula_to_sexpr(p, sit)?]),
        Formula::And(xs) | Formula::Or(xs) => {
            let tag = if matches!(f, Formula::And(_)) { "and" } else { "or" };
            let mut items = vec![Sexp::sym(tag)];
            for x in xs {
                items.push(formula_to_sexpr(x, sit)?);
            }
            Sexp::List(items)
        }
        Formula::Implies(a, b) => Sexp::List(vec![
            Sexp::sym("implies"),
            formula_to_sexpr(a, sit)?,
            formula_to_sexpr(b, sit)?,
        ]),
        Formula::Iff(a, b) => Sexp::List(vec![
            Sexp::sym("iff"),
            formula_to_sexpr(a, sit)?,
            formula_to_sexpr(b, sit)?,
        ]),
        Formula::Exists(..) | Formula::Forall(..) => {
            let existential = matches!(f, Formula::Exists(..));
            let mut vars = Vec::new();
            let mut cur = f;
            loop {
                match (existential, cur) {
                    (true, Formula::Exists(v, b)) | (false, Formula::Forall(v, b)) => {
                        vars.push(Sexp::sym(v.clone()));
                        cur = b;
                    }
                    _ => break,
                }
            }
            Sexp::List(vec![
                Sexp::sym(if existential { "exists" } else { "forall" }),
                Sexp::List(vars),
                formula_to_sexpr(cur, sit)?,
            ])
        }
    })
}

fn vocab_to_sexpr(vocab: &Vocabulary) -> Sexp {
    let mut items = vec![Sexp::sym("vocab")];
    if !vocab.consts.is_empty() {
        let mut cs = vec![Sexp::sym("const")];
        cs.extend(vocab.consts.iter().map(|c| Sexp::sym(c.clone())));
        items.push(Sexp::List(cs));
    }
    for (tag, map) in [("fluent", &vocab.fluents), ("rigid", &vocab.rigids), ("action", &vocab.actions)] {
        for (name, arity) in map {
            items.push(Sexp::List(vec![
                Sexp::sym(tag),
                Sexp::sym(name.clone()),
                Sexp::sym(arity.to_string()),
            ]));
        }
    }
    Sexp::List(items)
}

/// Renders a whole BAT back to its file format.
pub fn print_bat(bat: &Bat) -> Result<String, ParseError> {
    let mut out = String::new();
    let _ = writeln!(out, "{}", sexpr::pretty(&vocab_to_sexpr(&bat.vocab)));
    let mut init = vec![Sexp::sym("init")];
    for f in &bat.init {
        init.push(formula_to_sexpr(f, &SitTerm::S0)?);
    }
    let _ = writeln!(out, "{}", sexpr::pretty(&Sexp::List(init)));
    for ssa in bat.ssas.values() {
        if ssa.pos.is_empty() && ssa.neg.is_empty() {
            continue;
        }
        let mut head = vec![Sexp::sym(ssa.fluent.clone())];
        head.extend(ssa.params.iter().map(|p| Sexp::sym(p.clone())));
        let mut items = vec![Sexp::sym("ssa"), Sexp::List(head)];
        let s_var = SitTerm::Var("s".into());
        for (tag, entries) in [("pos", &ssa.pos), ("neg", &ssa.neg)] {
            for e in entries {
                items.push(Sexp::List(vec![
                    Sexp::sym(tag),
                    Sexp::sym(e.action.clone()),
                    Sexp::List(e.pattern.iter().map(|v| Sexp::sym(v.clone())).collect()),
                    Sexp::List(e.exist.iter().map(|v| Sexp::sym(v.clone())).collect()),
                    formula_to_sexpr(&e.body, &s_var)?,
                ]));
            }
        }
        let _ = writeln!(out, "{}", sexpr::pretty(&Sexp::List(items)));
    }
    Ok(out)
}

/// Renders a progressed theory: `(progression (vocab ...) (action A c*) f*)`
/// with sentences uniform in `do(α, S0)`.
pub fn print_theory(
    vocab: &Vocabulary,
    alpha: &GroundAction,
    sentences: &[Formula],
) -> Result<String, ParseError> {
    let succ = SitTerm::succ(alpha);
    let mut action = vec![Sexp::sym("action"), Sexp::sym(alpha.name.clone())];
    action.extend(alpha.args.iter().map(|c| Sexp::sym(c.clone())));
    let mut items = vec![
        Sexp::sym("progression"),
        vocab_to_sexpr(vocab),
        Sexp::List(action),
    ];
    for f in sentences {
        items.push(formula_to_sexpr(f, &succ)?);
    }
    Ok(sexpr::pretty(&Sexp::List(items)) + "\n")
}

/// Parses a progression output file back into vocabulary, action, and
/// sentences (uniform in the successor situation).
pub fn parse_theory_str(src: &str) -> Result<(Vocabulary, GroundAction, Vec<Formula>), ParseError> {
    let top = sexpr::parse_one(src)?;
    let (tag, rest) = match top.as_tagged() {
        Some(t) => t,
        None => return err("expected (progression ...)"),
    };
    if tag != "progression" {
        return err(format!("expected (progression ...), got ({tag} ...)"));
    }
    if rest.len() < 2 {
        return err("(progression ...) needs a vocab and an action");
    }
    let vocab = match rest[0].as_tagged() {
        Some(("vocab", _)) => parse_vocab(&rest[0])?,
        _ => return err("first element of (progression ...) must be (vocab ...)"),
    };
    let alpha = match rest[1].as_tagged() {
        Some(("action", parts)) if !parts.is_empty() => {
            let name = sym(&parts[0], "action name")?.to_string();
            let args: Vec<String> = parts[1..]
                .iter()
                .map(|c| sym(c, "action argument").map(str::to_string))
                .collect::<Result<_, _>>()?;
            GroundAction { name, args }
        }
        _ => return err("second element of (progression ...) must be (action A c*)"),
    };
    match vocab.actions.get(&alpha.name) {
        Some(a) if *a == alpha.args.len() => {}
        Some(a) => {
            return err(format!(
                "action {} has arity {a}, got {} arguments",
                alpha.name,
                alpha.args.len()
            ))
        }
        None => return err(format!("{} is not a declared action", alpha.name)),
    }
    for c in &alpha.args {
        if !vocab.is_const(c) {
            return err(format!("action argument {c} is not a declared constant"));
        }
    }
    let succ = SitTerm::succ(&alpha);
    let sentences = rest[2..]
        .iter()
        .map(|e| parse_formula(&vocab, e, &succ))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((vocab, alpha, sentences))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOGGLE: &str = "
        (vocab (const c1 c2) (fluent On 1) (action toggle 1))
        (init (On c1) (not (On c2)))
        (ssa (On x)
          (pos toggle (x) () (not (On x)))
          (neg toggle (x) () (On x)))";

    #[test]
    fn parses_and_prints() {
        let bat = parse_bat_str(TOGGLE).unwrap();
        assert_eq!(bat.init.len(), 2);
        assert_eq!(bat.ssas["On"].pos.len(), 1);
        let printed = print_bat(&bat).unwrap();
        let again = parse_bat_str(&printed).unwrap();
        assert_eq!(again.init, bat.init);
        assert_eq!(again.ssas, bat.ssas);
    }

    #[test]
    fn rejects_unbound_pattern_var() {
        let src = "
            (vocab (const c) (fluent F 1) (action A 1))
            (ssa (F x) (pos A (y) () true))";
        assert!(parse_bat_str(src).is_err());
    }
}
