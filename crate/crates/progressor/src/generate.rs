//! Seeded generators for randomized action-theory families.
//!
//! One family per progression class, each with a single size knob: the
//! local-effect family scales the characteristic set (one pinned fluent per
//! unit), the normal family scales the initial clause lists around one
//! unbounded fluent (the quadratic driver), and the acyclic family scales
//! the length of an effect-dependency chain. Families are in-class by
//! construction — effect pairs are built mutually exclusive and non-local
//! conditions are emitted directly in good form — rather than filtered by
//! rejection, and they avoid existentials and wide quantifier scopes, so
//! every instance also lies in both tracked fragments.
//!
//! The module also provides the random raw material for oracle batteries
//! (sentences, quantifier-free conditions, good forms) and single-point
//! theory mutations used to confirm that certification rejects wrong
//! answers. Everything is deterministic in the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bat::{Bat, Vocabulary};
use crate::classify::{ActionClass, GoodForm};
use crate::formula::{Formula, GroundAction, SitTerm, Term};
use crate::parse::parse_bat_str;

/// A generated theory together with its source text and the ground action
/// the family is built around.
#[derive(Debug, Clone)]
pub struct Generated {
    pub source: String,
    pub bat: Bat,
    pub alpha: GroundAction,
}

fn build(source: String, action: &str, args: &[&str]) -> Generated {
    let bat = parse_bat_str(&source)
        .unwrap_or_else(|e| panic!("generated theory must parse: {e}\n{source}"));
    Generated {
        source,
        bat,
        alpha: GroundAction::new(action, args),
    }
}

/// Dispatches on the class: `size` is the characteristic-set size for
/// local-effect instances, the initial clause width for normal ones, and
/// the dependency depth for acyclic ones.
pub fn family(class: ActionClass, size: usize, seed: u64) -> Generated {
    match class {
        ActionClass::LocalEffect => le_family(size.max(1), 2, seed),
        ActionClass::Normal => nr_family(size.max(1), seed),
        ActionClass::Acyclic => ac_family(size, seed),
    }
}

// ---------------------------------------------------------------------
// The three families
// ---------------------------------------------------------------------

/// `fluents` unary fluents, each pinned to the single argument of `Act`,
/// so Ω has exactly `fluents` atoms; `pad` extra initial sentences.
pub fn le_family(fluents: usize, pad: usize, seed: u64) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1E57_0000);
    let mut src = String::from("(vocab (const a b) (rigid R1 1) (rigid R2 1)");
    for i in 1..=fluents {
        src.push_str(&format!(" (fluent F{i} 1)"));
    }
    src.push_str(" (action Act 1))\n");

    let cond = |rng: &mut ChaCha8Rng| -> String {
        match rng.gen_range(0..4u8) {
            0 => "(R1 x1)".into(),
            1 => "(R2 x1)".into(),
            2 => "(not (R1 x1))".into(),
            _ => format!("(F{} x1)", rng.gen_range(1..=fluents)),
        }
    };
    src.push_str("(init");
    for _ in 0..pad {
        let i = rng.gen_range(1..=fluents);
        let j = rng.gen_range(1..=fluents);
        let s = match rng.gen_range(0..4u8) {
            0 => format!(" (F{i} a)"),
            1 => format!(" (not (F{j} b))"),
            2 => format!(" (or (F{i} a) (F{j} b))"),
            _ => format!(
                " (forall (x) (implies (F{i} x) (R{} x)))",
                rng.gen_range(1..=2u8)
            ),
        };
        src.push_str(&s);
    }
    src.push_str(")\n");

    for i in 1..=fluents {
        let entries = match rng.gen_range(0..4u8) {
            0 => format!(
                "(pos Act (x1) () (not (F{i} x1))) (neg Act (x1) () (F{i} x1))"
            ),
            1 => {
                let c = cond(&mut rng);
                format!("(pos Act (x1) () {c}) (neg Act (x1) () (not {c}))")
            }
            2 => format!("(pos Act (x1) () {})", cond(&mut rng)),
            _ => format!("(neg Act (x1) () {})", cond(&mut rng)),
        };
        src.push_str(&format!("(ssa F{i} {entries})\n"));
    }
    build(src, "Act", &["a"])
}

/// One unbounded fluent `H` cleared by a no-argument action; the initial KB
/// carries `width` sufficient and `width` necessary clauses for `H`, so
/// eliminating its lifting predicate pairs them quadratically.
pub fn nr_family(width: usize, seed: u64) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0A0B_0001);
    let mut src = String::from("(vocab (const a) (fluent H 1)");
    for i in 1..=width {
        src.push_str(&format!(" (rigid C{i} 1) (rigid D{i} 1)"));
    }
    src.push_str(" (action Clear 0))\n(init");
    for i in 1..=width {
        src.push_str(&format!(" (forall (x) (implies (C{i} x) (H x)))"));
        src.push_str(&format!(" (forall (x) (implies (H x) (D{i} x)))"));
    }
    // Fluent-free padding keeps some clauses out of the pairing.
    src.push_str(&format!(" (or (C1 a) (D{width} a)))\n"));
    let ssa = match rng.gen_range(0..2u8) {
        0 => "(neg Clear () () true)".to_string(),
        _ => "(pos Clear () () (C1 x1)) (neg Clear () () (not (C1 x1)))".to_string(),
    };
    src.push_str(&format!("(ssa H {ssa})\n"));
    build(src, "Clear", &[])
}

///// A dependency chain `F0 → F1 → … → Fdepth`: each link's effect conditions
/// target the next fluent (in good form), the leaf's are rigid-only. Depth
/// zero is a single unbounded fluent with no fluent dependencies.
pub fn ac_family(depth: usize, seed: u64) -> Generated {
    ac_family_sized(depth, depth + 1, seed)
}

/// [`ac_family`] with the fluent count pinned to `total` (at least
/// `depth + 1`): the first `depth + 1` fluents form the chain and the rest
/// are leaves. Holding `total` — hence the initial-KB size, the instance
/// sizes, and the fluent count — constant across depths isolates the
/// depth's own contribution to growth.
pub fn ac_family_sized(depth: usize, total: usize, seed: u64) -> Generated {
    assert!(total > depth, "need a leaf below the deepest chain link");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xACAC_0003);
    let mut src = String::from("(vocab (const a)");
    for i in 0..total {
        src.push_str(&format!(" (fluent F{i} 1) (rigid R{i} 1)"));
    }
    src.push_str(" (action Cascade 0))\n(init");
    for i in 0..total {
        src.push_str(&format!(" (forall (x) (implies (F{i} x) (R{i} x)))"));
    }
    src.push_str(")\n");
    for i in 0..total {
        let entries = if i >= depth {
            match rng.gen_range(0..2u8) {
                0 => format!("(pos Cascade () () (R{i} x1))"),
                _ => format!(
                    "(pos Cascade () () (R{i} x1)) (neg Cascade () () (not (R{i} x1)))"
                ),
            }
        } else {
            let next = i + 1;
            match rng.gen_range(0..3u8) {
                0 => format!(
                    "(pos Cascade () () (and (F{next} x1) (R{i} x1))) \
                     (neg Cascade () () (not (F{next} x1)))"
                ),
                1 => format!(
                    "(pos Cascade () () (and (F{next} x1) (R{i} x1))) \
                     (neg Cascade () () (or (not (F{next} x1)) (not (R{i} x1))))"
                ),
                _ => format!("(pos Cascade () () (F{next} x1))"),
            }
        };
        src.push_str(&format!("(ssa F{i} {entries})\n"));
    }
    build(src, "Cascade", &[])
}

// ---------------------------------------------------------------------
// Random raw material for oracle batteries
// ---------------------------------------------------------------------

/// A random sentence over lifted `P/1`, `Q/2`, rigid `R/1`, constants
/// `c1, c2`, and at most two quantified variables — small enough for
/// exhaustive model checks, varied enough to exercise every connective.
pub fn rand_sentence(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    fn term(rng: &mut ChaCha8Rng, bound: &[String]) -> Term {
        if !bound.is_empty() && rng.gen_bool(0.6) {
            Term::var(bound[rng.gen_range(0..bound.len())].clone())
        } else if rng.gen_bool(0.5) {
            Term::cnst("c1")
        } else {
            Term::cnst("c2")
        }
    }
    fn go(rng: &mut ChaCha8Rng, depth: usize, bound: &mut Vec<String>) -> Formula {
        if depth == 0 {
            return match rng.gen_range(0..4u8) {
                0 => Formula::lifted("P", vec![term(rng, bound)]),
                1 => Formula::lifted("Q", vec![term(rng, bound), term(rng, bound)]),
                2 => Formula::rigid("R", vec![term(rng, bound)]),
                _ => Formula::eq(term(rng, bound), term(rng, bound)),
            };
        }
        match rng.gen_range(0..6u8) {
            0 => go(rng, depth - 1, bound).not(),
            1 => Formula::conj(vec![go(rng, depth - 1, bound), go(rng, depth - 1, bound)]),
            2 => Formula::disj(vec![go(rng, depth - 1, bound), go(rng, depth - 1, bound)]),
            3 => go(rng, depth - 1, bound).implies(go(rng, depth - 1, bound)),
            _ => {
                let v = if bound.iter().any(|b| b == "x") { "y" } else { "x" };
                bound.push(v.to_string());
                let body = go(rng, depth - 1, bound);
                bound.pop();
                if rng.gen_bool(0.5) {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                }
            }
        }
    }
    go(rng, depth, &mut Vec::new()).close()
}

/// A closed random query over a vocabulary: fluent atoms at `sit`, rigid
/// atoms, and equalities, with arguments drawn from the declared constants
/// and two quantifiable variables. Used to spot-check that a progression
/// answers questions about the successor state the way the original theory
/// does.
pub fn rand_query(vocab: &Vocabulary, sit: &SitTerm, rng: &mut ChaCha8Rng) -> Formula {
    let preds: Vec<(String, usize, bool)> = vocab
        .fluents
        .iter()
        .map(|(f, &a)| (f.clone(), a, true))
        .chain(vocab.rigids.iter().map(|(r, &a)| (r.clone(), a, false)))
        .collect();
    let term = |rng: &mut ChaCha8Rng, bound: &[String]| -> Term {
        if !bound.is_empty() && rng.gen_bool(0.6) {
            Term::var(bound[rng.gen_range(0..bound.len())].clone())
        } else if !vocab.consts.is_empty() && rng.gen_bool(0.8) {
            Term::cnst(vocab.consts[rng.gen_range(0..vocab.consts.len())].clone())
        } else {
            Term::var("x")
        }
    };
    fn go(
        rng: &mut ChaCha8Rng,
        depth: usize,
        bound: &mut Vec<String>,
        preds: &[(String, usize, bool)],
        sit: &SitTerm,
        term: &impl Fn(&mut ChaCha8Rng, &[String]) -> Term,
    ) -> Formula {
        if depth == 0 || (!preds.is_empty() && rng.gen_bool(0.25)) {
            if preds.is_empty() || rng.gen_bool(0.15) {
                return Formula::eq(term(rng, bound), term(rng, bound));
            }
            let (name, arity, fluent) = &preds[rng.gen_range(0..preds.len())];
            let args: Vec<Term> = (0..*arity).map(|_| term(rng, bound)).collect();
            return if *fluent {
                Formula::fluent(name.clone(), args, sit.clone())
            } else {
                Formula::rigid(name.clone(), args)
            };
        }
        match rng.gen_range(0..6u8) {
            0 => go(rng, depth - 1, bound, preds, sit, term).not(),
            1 => Formula::conj(vec![
                go(rng, depth - 1, bound, preds, sit, term),
                go(rng, depth - 1, bound, preds, sit, term),
            ]),
            2 => Formula::disj(vec![
                go(rng, depth - 1, bound, preds, sit, term),
                go(rng, depth - 1, bound, preds, sit, term),
            ]),
            3 => go(rng, depth - 1, bound, preds, sit, term)
                .implies(go(rng, depth - 1, bound, preds, sit, term)),
            _ => {
                let v = if bound.iter().any(|b| b == "x") { "y" } else { "x" };
                bound.push(v.to_string());
                let body = go(rng, depth - 1, bound, preds, sit, term);
                bound.pop();
                if rng.gen_bool(0.5) {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                }
            }
        }
    }
    go(rng, 2, &mut Vec::new(), &preds, sit, &term).close()
}

/// A random quantifier-free condition over the given variables, rigid
/// atoms, equalities, and the constant `c1` — the ψ material for clause
/// rewrites.
pub fn rand_condition(rng: &mut ChaCha8Rng, vars: &[&str]) -> Formula {
    let term = |rng: &mut ChaCha8Rng| -> Term {
        if !vars.is_empty() && rng.gen_bool(0.7) {
            Term::var(vars[rng.gen_range(0..vars.len())])
        } else {
            Term::cnst("c1")
        }
    };
    let atom = |rng: &mut ChaCha8Rng| -> Formula {
        let a = match rng.gen_range(0..3u8) {
            0 => Formula::rigid("R", vec![term(rng)]),
            1 => Formula::rigid("S", vec![term(rng)]),
            _ => Formula::eq(term(rng), term(rng)),
        };
        if rng.gen_bool(0.4) {
            a.not()
        } else {
            a
        }
    };
    match rng.gen_range(0..3u8) {
        0 => atom(rng),
        1 => Formula::disj(vec![atom(rng), atom(rng)]),
        _ => Formula::conj(vec![atom(rng), atom(rng)]),
    }
}

/// A random good form targeting lifted `P/2` with a mixed argument tuple
/// (variables, repeats, constants all possible) and random guard
/// conditions.
pub fn rand_goodform(rng: &mut ChaCha8Rng) -> GoodForm {
    let pool = ["x", "y"];
    let args: Vec<Term> = (0..2)
        .map(|_| match rng.gen_range(0..3u8) {
            0 => Term::var(pool[rng.gen_range(0..2)]),
            1 => Term::var(pool[0]),
            _ => Term::cnst("c1"),
        })
        .collect();
    let vars: Vec<&str> = args
        .iter()
        .filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
        .collect();
    GoodForm {
        target: Some(("P".into(), args.clone())),
        psi_pos: rand_condition(rng, &vars),
        psi_neg: rand_condition(rng, &vars),
        rest: if rng.gen_bool(0.5) {
            Formula::True
        } else {
            rand_condition(rng, &vars)
        },
    }
}

// ---------------------------------------------------------------------
// Mutations
// ---------------------------------------------------------------------

/// A single-point fault injected into a theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Remove one sentence (one conjunct of the theory).
    DropConjunct,
    /// Negate one atom occurrence, flipping its literal's polarity.
    FlipLiteral,
}

impl std::fmt::Display for Fault {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Fault::DropConjunct => "drop-conjunct",
            Fault::FlipLiteral => "flip-literal",
        })
    }
}

impl std::str::FromStr for Fault {
    type Err = String;
    fn from_str(s: &str) -> Result<Fault, String> {
        match s {
            "drop-conjunct" => Ok(Fault::DropConjunct),
            "flip-literal" => Ok(Fault::FlipLiteral),
            other => Err(format!(
                "unknown fault {other} (expected drop-conjunct or flip-literal)"
            )),
        }
    }
}

/// Applies one seeded fault, returning the mutant and a description of the
/// damage; `None` when the theory offers nothing to mutate.
pub fn mutate(theory: &[Formula], fault: Fault, seed: u64) -> Option<(Vec<Formula>, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xFA_0175);
    match fault {
        Fault::DropConjunct => {
            if theory.is_empty() {
                return None;
            }
            let i = rng.gen_range(0..theory.len());
            let mut mutant = theory.to_vec();
            let gone = mutant.remove(i);
            Some((mutant, format!("dropped conjunct {i}: {gone}")))
        }
        Fault::FlipLiteral => {
            let mut atoms = 0usize;
            for f in theory {
                f.map_atoms(&mut |_| {
                    atoms += 1;
                    None
                });
            }
            if atoms == 0 {
                return None;
            }
            let target = rng.gen_range(0..atoms);
            let mut seen = 0usize;
            let mut flipped = String::new();
            let mutant = theory
                .iter()
                .map(|f| {
                    f.map_atoms(&mut |atom| {
                        let hit = seen == target;
                        seen += 1;
                        if hit {
                            flipped = atom.to_string();
                            Some(atom.clone().not())
                        } else {
                            None
                        }
                    })
                })
                .collect();
            Some((mutant, format!("flipped literal at atom {target}: {flipped}")))
        }
    }
}
