//! The progression pipelines.
//!
//! All three run in two stages. The *non-local stage* eliminates the lifting
//! predicates of non-local fluents from the initial KB — by Ackermann-style
//! pairing for normal actions, or by the Δ-axiom fold along the dependency
//! order for acyclic ones — leaving a theory over local-effect lifting
//! predicates and successor-situation atoms. The *local stage* then conjoins
//! the instantiated SSAs for the characteristic set Ω, forgets Ω as one big
//! assignment disjunction, and renames every surviving initial-situation atom
//! to the successor situation. A local-effect action skips the first stage.
//!
//! Size bounds are asserted on the raw output of each stage, before any
//! simplification: the local stage against `2^c·(n+cm+c)·(4ca+4c+3)`, the
//! acyclic stage against the condition-growth recurrence and the aggregate
//! `4·Σ w_F ≤ 4·2^{d+1}·l·(w+4k+6a+10)`. A violated bound is a bug, never an
//! input error.
//!
//! Two decidable fragments can be tracked through the pipeline. In `fo2` or
//! `utc` mode the input is checked up front, every good-form fold routes
//! through a width- or prefix-preserving rewrite instead of the generic
//! guarded one, and the final theory is re-checked — a violation there is an
//! internal error and panics.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::bat::{Bat, BatError, Sign};
use crate::classify::{
    check_fo2, check_utc, classify, is_good_form, lifted_init, mentioned_fluents, prune_gamma,
    ActionClass, GoodForm, Verdict,
};
use crate::forget::{
    consolidate_delta, forget_local, forget_predicate_semidef, goodform_to_semidef,
    negate_goodform, or_goodform, ForgetError,
};
use crate::formula::{fresh_var, Formula, GroundAction, SitTerm, Term};

// ---------------------------------------------------------------------
// Options and results
// ---------------------------------------------------------------------

/// How to pick the pipeline: automatically (cheapest applicable class) or a
/// named one, failing when the action is not in that class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Auto,
    LocalEffect,
    Normal,
    Acyclic,
}

/// A decidable fragment the pipeline can be asked to preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fragment {
    Fo2,
    Utc,
}

impl std::fmt::Display for Fragment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Fragment::Fo2 => "fo2",
            Fragment::Utc => "utc",
        })
    }
}

/// Fragment membership of a finished progression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FragmentOut {
    Fo2,
    Utc,
    Both,
    Neither,
}

#[derive(Debug, Clone, Copy)]
pub struct ProgressOptions {
    pub method: Method,
    /// When set, the input must lie in the fragment and the pipeline keeps
    /// it there (using one-point pin elimination in the instantiated γ±).
    pub fragment: Option<Fragment>,
    /// Unique names for object constants: prunes dead effect branches and
    /// drives the final simplification.
    pub una: bool,
    /// Refuse characteristic sets larger than this (the local stage is
    /// exponential in |Ω|).
    pub omega_cap: usize,
    /// Run the truth-value simplifier on the renamed output.
    pub simplify: bool,
}

impl Default for ProgressOptions {
    fn default() -> ProgressOptions {
        ProgressOptions {
            method: Method::Auto,
            fragment: None,
            una: true,
            omega_cap: 16,
            simplify: true,
        }
    }
}

/// Measurements of one run; the `*_bound` fields repeat the asserted
/// ceilings so reports can show measured-vs-bound without recomputing.
#[derive(Debug, Clone, Serialize)]
pub struct SizeStats {
    /// `c` — ground atoms forgotten in the local stage.
    pub omega: usize,
    /// `a` — widest argument tuple in Ω.
    pub omega_arity: usize,
    /// `n` — size of the theory fed to the local stage (closed, conjoined).
    pub init_size: u64,
    /// `m` — largest instantiated SSA sentence added in the local stage.
    pub max_instance: u64,
    /// `d` — dependency-graph depth.
    pub depth: usize,
    /// `l` — number of non-local fluents.
    pub nle_count: usize,
    /// `k` — largest instantiated SSA of a non-local fluent.
    pub max_nle_instance: u64,
    /// Theory size after the non-local stage (equals the lifted initial KB
    /// size for a local-effect run).
    pub intermediate_size: u64,
    /// Theory size after each single predicate elimination (normal runs).
    pub nle_sizes: Vec<u64>,
    /// Local-stage ceiling `2^c·(n+cm+c)·(4ca+4c+3)` and the raw output
    /// measured against it, before renaming and simplification.
    pub local_bound: u64,
    pub output_size_raw: u64,
    /// Final theory size, after renaming and (optional) simplification.
    pub output_size: u64,
    /// `w` — widest consolidated Δ condition before any fold (zero outside
    /// acyclic runs).
    pub ac_w: u64,
    /// Acyclic stage: measured `4·Σ w_F` and its ceiling
    /// `4·2^{d+1}·l·(w+4k+6a+10)`; both zero otherwise.
    pub ac_sum: u64,
    pub ac_bound: u64,
}

/// A computed progression: sentences uniform in the successor situation.
#[derive(Debug, Clone)]
pub struct ProgressionResult {
    pub theory: Vec<Formula>,
    /// The pipeline that ran.
    pub method: ActionClass,
    pub stats: SizeStats,
    pub fragment_out: FragmentOut,
    pub verdict: Verdict,
}

#[derive(Debug, Error)]
pub enum ProgressError {
    #[error(transparent)]
    Bat(#[from] BatError),
    #[error(transparent)]
    Forget(#[from] ForgetError),
    #[error("the action is not {class}: {witness}")]
    ClassMismatch { class: ActionClass, witness: String },
    #[error("no progression class applies — {detail}")]
    NoClass { detail: String },
    #[error("input is not in the {fragment} fragment: {witness}")]
    FragmentIn { fragment: Fragment, witness: String },
    #[error("{gamma} of {fluent} is not in good form wrt {target}")]
    NotGoodForm {
        fluent: String,
        gamma: &'static str,
        target: String,
    },
    #[error("clause rewrite: {0}")]
    BadClause(String),
}

// ---------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------

/// The instantiated, pruned, lifted effect condition `γ±_F[α]` — the exact
/// sequence the classifier uses, so a pipeline never sees a shape the
/// verdict did not approve. Fragment modes eliminate pattern-pinned
/// existentials on instantiation (`one_point`), which quantifier-free
/// fragments require.
fn gamma_lifted(
    bat: &Bat,
    fluent: &str,
    sign: Sign,
    alpha: &GroundAction,
    opts: &ProgressOptions,
) -> Result<Formula, BatError> {
    let one_point = opts.fragment.is_some();
    let gamma = bat.instantiate_gamma(fluent, sign, alpha, one_point)?;
    Ok(prune_gamma(&gamma, opts.una).lift_at(&SitTerm::S0))
}

/// Renames every initial-situation atom — lifted or explicit — to the
/// successor situation. The progression-defining step: after forgetting,
/// what the theory says about `S0` is exactly what holds at `Sα`.
fn to_successor(f: &Formula, succ: &SitTerm) -> Formula {
    f.map_atoms(&mut |atom| match atom {
        Formula::Lifted(p, ts) => Some(Formula::fluent(p.clone(), ts.clone(), succ.clone())),
        Formula::Fluent(p, ts, SitTerm::S0) => {
            Some(Formula::fluent(p.clone(), ts.clone(), succ.clone()))
        }
        _ => None,
    })
}

fn assert_uniform(theory: &[Formula], succ: &SitTerm) {
    for f in theory {
        f.map_atoms(&mut |atom| {
            match atom {
                Formula::Lifted(p, _) =>

                    panic!("internal error: lifting predicate {p} survived into the output"),
                Formula::Fluent(p, _, sit) => assert!(
                    sit == succ,
                    "internal error: {p} not uniform in the successor situation"
                ),
                _ => {}
            }
            None
        });
    }
}

fn or_parts(f: &Formula) -> Vec<Formula> {
    match f {
        Formula::Or(xs) => xs.iter().flat_map(or_parts).collect(),
        other => vec![other.clone()],
    }
}

/// Renames every bound variable to a name unused so far, threading one
/// used-set through the whole formula: afterwards no two binders share a
/// name and no binder shadows a free variable. Plain α-renaming — sound in
/// any mode, and the precondition for pulling quantifiers across
/// connectives.
fn freshen_binders(
    f: &Formula,
    env: &BTreeMap<String, String>,
    used: &mut BTreeSet<String>,
) -> Formula {
    let term = |t: &Term, env: &BTreeMap<String, String>| match t {
        Term::Var(v) => match env.get(v) {
            Some(n) => Term::var(n.clone()),
            None => t.clone(),
        },
        Term::Const(_) => t.clone(),
    };
    let terms =
        |ts: &[Term], env: &BTreeMap<String, String>| ts.iter().map(|t| term(t, env)).collect();
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Fluent(p, ts, sit) => Formula::fluent(p.clone(), terms(ts, env), sit.clone()),
        Formula::Rigid(p, ts) => Formula::rigid(p.clone(), terms(ts, env)),
        Formula::Lifted(p, ts) => Formula::lifted(p.clone(), terms(ts, env)),
        Formula::Eq(a, b) => Formula::eq(term(a, env), term(b, env)),
        Formula::Not(p) => freshen_binders(p, env, used).not(),
        Formula::And(xs) => {
            Formula::And(xs.iter().map(|x| freshen_binders(x, env, used)).collect())
        }
        Formula::Or(xs) => Formula::Or(xs.iter().map(|x| freshen_binders(x, env, used)).collect()),
        Formula::Implies(a, b) => {
            freshen_binders(a, env, used).implies(freshen_binders(b, env, used))
        }
        Formula::Iff(a, b) => freshen_binders(a, env, used).iff(freshen_binders(b, env, used)),
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            let name = fresh_var(v, used);
            used.insert(name.clone());
            let mut inner = env.clone();
            inner.insert(v.clone(), name.clone());
            let body = freshen_binders(b, &inner, used);
            match f {
                Formula::Exists(..) => Formula::exists(name, body),
                _ => Formula::forall(name, body),
            }
        }
    }
}

/// Pulls all universal prefixes to the front through conjunctions and
/// disjunctions, renaming apart first. `∀x φ ∨ ∀x ψ ⇔ ∀x∀x1 (φ ∨ ψ[x/x1])`
/// — the rule that keeps an assignment disjunction of universal theories
/// universal. Sound for any input; only pulls through `∧`/`∨`, leaving
/// quantifiers under other connectives where they are.
pub fn pull_universals(f: &Formula) -> Formula {
    fn pull(f: &Formula) -> (Vec<String>, Formula) {
        match f {
            Formula::Forall(v, b) => {
                let (mut vs, m) = pull(b);
                vs.insert(0, v.clone());
                (vs, m)
            }
            Formula::And(xs) | Formula::Or(xs) => {
                let mut vs = Vec::new();
                let mut ms = Vec::new();
                for x in xs {
                    let (v, m) = pull(x);
                    vs.extend(v);
                    ms.push(m);
                }
                let rebuilt = match f {
                    Formula::And(_) => Formula::And(ms),
                    _ => Formula::Or(ms),
                };
                (vs, rebuilt)
            }
            other => (Vec::new(), other.clone()),
        }
    }
    let mut used = f.free_vars();
    let renamed = freshen_binders(f, &BTreeMap::new(), &mut used);
    let (vs, matrix) = pull(&renamed);
    Formula::forall_many(&vs, matrix)
}

/// Disjoins two universal theories into one universal sentence by renaming
/// their prefixes apart and pulling them out front:
/// `∀x⃗ φ(x⃗) ∨ ∀x⃗ ψ(x⃗) ⇝ ∀x⃗∀y⃗ (φ(x⃗) ∨ ψ(y⃗))`.
pub fn utc_disjoin(a: &Formula, b: &Formula) -> Formula {
    pull_universals(&Formula::disj(vec![a.clone(), b.clone()]))
}

// ---------------------------------------------------------------------
// Fragment-preserving clause rewrites
// ---------------------------------------------------------------------

/// Splits the clause elements into the single `±P(t⃗)` literal and the
/// remaining condition.
fn extract_literal(
    elems: &[Formula],
    p: &str,
) -> Result<(bool, Vec<Term>, Formula), ProgressError> {
    let mut lit: Option<(bool, Vec<Term>)> = None;
    let mut rest = Vec::new();
    for e in elems {
        let found = match e {
            Formula::Lifted(sym, args) if sym == p => Some((true, args.clone())),
            Formula::Not(inner) => match &**inner {
                Formula::Lifted(sym, args) if sym == p => Some((false, args.clone())),
                _ => None,
            },
            _ => None,
        };
        match found {
            Some(l) => {
                if lit.is_some() {
                    return Err(ProgressError::BadClause(format!(
                        "more than one {p} literal at the clause level"
                    )));
                }
                lit = Some(l);
            }
            None => {
                if e.mentions_lifted(p) {
                    return Err(ProgressError::BadClause(format!(
                        "{p} occurs below the clause level"
                    )));
                }
                rest.push(e.clone());
            }
        }
    }
    let (positive, args) = lit.ok_or_else(|| {
        ProgressError::BadClause(format!("no {p} literal at the clause level"))
    })?;
    Ok((positive, args, Formula::disj(rest)))
}

/// Rewrites a universally closed clause `∀x⃗ (ψ ∨ ±P(t⃗))` into an equivalent
/// semi-definitional clause without widening its variable footprint: each
/// constant or repeated argument position gets a canonical variable guarded
/// by an equality, and the displaced universals are re-bound existentially
/// inside the negated condition (shadowing is deliberate — it is what keeps
/// two names enough). `∀x (ψ(x) ∨ P(A))` becomes
/// `∀x ((x=A) ∧ ∃x ¬ψ(x)) ⊃ P(x)`; a clause whose argument tuple is already
/// distinct variables is returned unchanged.
pub fn fo2_semidef_rewrite(clause: &Formula, p: &str) -> Result<Formula, ProgressError> {
    let (xs, matrix) = clause.close().strip_foralls();
    let (positive, args, psi) = extract_literal(&or_parts(&matrix), p)?;
    let mut kept: Vec<String> = Vec::new();
    let mut keep = vec![false; args.len()];
    for (i, t) in args.iter().enumerate() {
        if let Term::Var(v) = t {
            if !kept.contains(v) {
                kept.push(v.clone());
                keep[i] = true;
            }
        }
    }
    if keep.iter().all(|&k| k) {
        return Ok(clause.close());
    }
    let mut used: BTreeSet<String> = xs.iter().cloned().collect();
    used.extend(matrix.all_var_names());
    let mut canon: Vec<String> = Vec::with_capacity(args.len());
    let mut eqs: Vec<Formula> = Vec::new();
    for (i, t) in args.iter().enumerate() {
        if keep[i] {
            let Term::Var(v) = t else { unreachable!() };
            canon.push(v.clone());
            continue;
        }
        let name = ["x", "y"]
            .iter()
            .map(|s| s.to_string())
            .find(|cand| !kept.contains(cand) && !canon.contains(cand))
            .unwrap_or_else(|| {
                let v = fresh_var("v", &used);
                used.insert(v.clone());
                v
            });
        eqs.push(Formula::eq(Term::var(name.clone()), t.clone()));
        canon.push(name);
    }
    let shadowed: Vec<String> = xs.iter().filter(|v| !kept.contains(v)).cloned().collect();
    if psi != Formula::False {
        eqs.push(Formula::exists_many(&shadowed, psi.not()));
    }
    let lit = Formula::lifted(p, canon.iter().map(|v| Term::var(v.clone())).collect());
    let lit = if positive { lit } else { lit.not() };
    Ok(Formula::forall_many(
        &canon,
        Formula::conj(eqs).implies(lit),
    ))
}

/// Rewrites a universally closed clause `∀x⃗ (ψ ∨ ±P(t⃗))` into the
/// prefix-preserving semi-definitional form
/// `∀x⃗∀y⃗ (y⃗ = t⃗ ⊃ (ψ ∨ ±P(y⃗)))` with fresh `y⃗` — the matrix stays
/// quantifier-free, so universal theories stay universal.
pub fn utc_semidef_rewrite(clause: &Formula, p: &str) -> Result<Formula, ProgressError> {
    let closed = clause.close();
    let (xs, matrix) = closed.clone().strip_foralls();
    let (positive, args, psi) = extract_literal(&or_parts(&matrix), p)?;
    let mut used = closed.all_var_names();
    let ys: Vec<String> = (1..=args.len())
        .map(|i| {
            let y = fresh_var(&format!("y{i}"), &used);
            used.insert(y.clone());
            y
        })
        .collect();
    let yts: Vec<Term> = ys.iter().map(|y| Term::var(y.clone())).collect();
    let lit = Formula::lifted(p, yts.clone());
    let lit = if positive { lit } else { lit.not() };
    let matrix = if psi == Formula::False {
        lit
    } else {
        Formula::disj(vec![psi, lit])
    };
    let mut vars = xs;
    vars.extend(ys);
    Ok(Formula::forall_many(
        &vars,
        Formula::tuple_eq(&yts, &args).implies(matrix),
    ))
}

/// The singleton-predicate simulation of constants for two-variable
/// reasoners that exclude them: for each constant `A` a unary rigid `P_A`
/// together with `∃x P_A(x) ∧ ∀x∀y (P_A(x) ∧ P_A(y) ⊃ x = y)`, pinning its
/// extension to exactly one element.
pub fn fo2_constant_axioms(consts: &[String]) -> Vec<Formula> {
    consts
        .iter()
        .map(|c| {
            let p = format!("P_{c}");
            let px = Formula::rigid(p.clone(), vec![Term::var("x")]);
            let py = Formula::rigid(p, vec![Term::var("y")]);
            Formula::conj(vec![
                Formula::exists("x", px.clone()),
                Formula::forall(
                    "x",
                    Formula::forall(
                        "y",
                        Formula::conj(vec![px, py])
                            .implies(Formula::eq(Term::var("x"), Term::var("y"))),
                    ),
                ),
            ])
        })
        .collect()
}

/// Turns a good form into semi-definitional sentences for the pool of its
/// target predicate, routing through the fragment-preserving rewrite when a
/// fragment is being tracked.
fn fold_clauses(
    gf: &GoodForm,
    fragment: Option<Fragment>,
) -> Result<Vec<Formula>, ProgressError> {
    let Some((p, args)) = &gf.target else {
        return Ok(vec![gf.rest.close()]);
    };
    let rewrite = match fragment {
        None => return Ok(goodform_to_semidef(gf)?),
        Some(Fragment::Fo2) => fo2_semidef_rewrite,
        Some(Fragment::Utc) => utc_semidef_rewrite,
    };
    let atom = Formula::lifted(p.clone(), args.clone());
    let pos = Formula::disj(vec![gf.psi_pos.clone(), atom.clone()]).close();
    let neg = Formula::disj(vec![gf.psi_neg.clone(), atom.not()]).close();
    Ok(vec![
        rewrite(&pos, p)?,
        rewrite(&neg, p)?,
        gf.rest.close(),
    ])
}

// ---------------------------------------------------------------------
// The non-local stage
// ---------------------------------------------------------------------

/// What the non-local stage hands to the local one, plus its measurements.
struct NleStage {
    theory: Vec<Formula>,
    nle_sizes: Vec<u64>,
    max_nle_instance: u64,
    ac_w: u64,
    ac_sum: u64,
    ac_bound: u64,
}

impl NleStage {
    fn passthrough(theory: Vec<Formula>) -> NleStage {
        NleStage {
            theory,
            nle_sizes: Vec::new(),
            max_nle_instance: 0,
            ac_w: 0,
            ac_sum: 0,
            ac_bound: 0,
        }
    }
}

/// The four-sentence decomposition of `F`'s instantiated SSA, over the
/// pruned lifted effect conditions, as closed clauses:
///
/// ```text
/// γ⁺ ∨ ¬F(x⃗,Sα) ∨ F(x⃗,S0)      ¬γ⁺ ∨ F(x⃗,Sα)
/// γ⁻ ∨  F(x⃗,Sα) ∨ ¬F(x⃗,S0)     ¬γ⁻ ∨ ¬F(x⃗,Sα)
/// ```
///
/// The initial-situation atom occurs once in the left pair and not at all
/// on the right, so the set is semi-definitional wrt `F`'s lifting
/// predicate. Equivalent to the SSA under effect consistency `¬(γ⁺ ∧ γ⁻)`.
fn prop_sentences(
    bat: &Bat,
    fluent: &str,
    alpha: &GroundAction,
    opts: &ProgressOptions,
) -> Result<Vec<Formula>, ProgressError> {
    let gp = gamma_lifted(bat, fluent, Sign::Pos, alpha, opts)?;
    let gn = gamma_lifted(bat, fluent, Sign::Neg, alpha, opts)?;
    let xs: Vec<Term> = bat
        .ssa(fluent)?
        .params
        .iter()
        .map(|p| Term::var(p.clone()))
        .collect();
    let p0 = Formula::lifted(fluent, xs.clone());
    let fa = Formula::fluent(fluent, xs, SitTerm::succ(alpha));
    Ok(vec![
        Formula::disj(vec![gp.clone(), fa.clone().not(), p0.clone()]).close(),
        Formula::disj(vec![gn.clone(), fa.clone(), p0.not()]).close(),
        Formula::disj(vec![gp.not(), fa.clone()]).close(),
        Formula::disj(vec![gn.not(), fa.not()]).close(),
    ])
}

/// Largest instantiated SSA over the non-local fluents (`k`).
fn max_nle_instance(
    bat: &Bat,
    nle: &[String],
    alpha: &GroundAction,
    opts: &ProgressOptions,
) -> Result<u64, ProgressError> {
    let mut k = 0;
    for f in nle {
        let xs: Vec<Term> = bat
            .ssa(f)?
            .params
            .iter()
            .map(|p| Term::var(p.clone()))
            .collect();
        let inst = bat.ssa_instance(f, &xs, alpha, opts.fragment.is_some())?;
        k = k.max(inst.size_raw());
    }
    Ok(k)
}

/// Normal actions: pool the initial KB with every non-local fluent's
/// four-sentence decomposition, then forget the non-local lifting
/// predicates one at a time. Any elimination order yields an equivalent
/// theory; sorted fluent order keeps runs deterministic.
fn nr_stage(
    bat: &Bat,
    alpha: &GroundAction,
    opts: &ProgressOptions,
    verdict: &Verdict,
) -> Result<NleStage, ProgressError> {
    let nle = &verdict.nle_fluents;
    let mut pot = lifted_init(bat);
    for f in nle {
        pot.extend(prop_sentences(bat, f, alpha, opts)?);
    }
    let mut sizes = Vec::with_capacity(nle.len());
    for f in nle {
        pot = forget_predicate_semidef(&pot, f, bat.vocab.fluents[f])?;
        sizes.push(Formula::theory_size(&pot));
    }
    for f in nle {
        assert!(
            pot.iter().all(|s| !s.mentions_lifted(f)),
            "internal error: {f} survived its own elimination"
        );
    }
    Ok(NleStage {
        theory: pot,
        nle_sizes: sizes,
        max_nle_instance: max_nle_instance(bat, nle, alpha, opts)?,
        ac_w: 0,
        ac_sum: 0,
        ac_bound: 0,
    })
}

/// Acyclic actions: walk the non-local fluents along the dependency order.
/// For each fluent `F`, consolidate its pool into the Δ axiom
/// `(NWS ∨ F(y⃗,S0)) ∧ (SNC ∨ ¬F(y⃗,S0))` and emit the five successors of
/// `Δ_F ∪ {SSA_F}` with the initial-situation atom forgotten:
///
/// ```text
/// NWS ∨ SNC          ¬γ⁺ ∨ F(y⃗,Sα)           ¬γ⁻ ∨ ¬F(y⃗,Sα)
///                    γ⁺ ∨ ¬F(y⃗,Sα) ∨ SNC     NWS ∨ γ⁻ ∨ F(y⃗,Sα)
/// ```
///
/// A sentence whose γ± mentions a not-yet-processed fluent `G` is withheld
/// instead: rewritten back to semi-definitional clauses and folded into
/// `G`'s pool, to be consolidated when `G`'s turn comes. Condition growth is
/// asserted per fluent against the recurrence allowance `w_F + 4k + 6a + 10`
/// per fold, and in aggregate against `4·2^{d+1}·l·(w+4k+6a+10)`.
fn ac_stage(
    bat: &Bat,
    alpha: &GroundAction,
    opts: &ProgressOptions,
    verdict: &Verdict,
) -> Result<NleStage, ProgressError> {
    let nle = &verdict.nle_fluents;
    let nle_set: BTreeSet<&str> = nle.iter().map(String::as_str).collect();
    let order = verdict
        .elimination_order
        .clone()
        .expect("acyclic verdict carries an elimination order");

    // Separability: each initial sentence mentions at most one non-local
    // fluent; pool it there, carry the rest straight to the local stage.
    let mut pools: BTreeMap<String, Vec<Formula>> =
        nle.iter().map(|f| (f.clone(), Vec::new())).collect();
    let mut carried = Vec::new();
    for s in lifted_init(bat) {
        match nle.iter().find(|f| s.mentions_lifted(f)) {
            Some(f) => pools.get_mut(f).expect("pooled").push(s),
            None => carried.push(s),
        }
    }

    // Symbols of the growth bound, measured before any fold.
    let l = nle.len() as u64;
    let d = verdict.depth as u64;
    let a = bat.vocab.max_arity() as u64;
    let k = max_nle_instance(bat, nle, alpha, opts)?;
    let mut w_orig: BTreeMap<&str, u64> = BTreeMap::new();
    for f in nle {
        let (delta, _) = consolidate_delta(&pools[f], f, bat.vocab.fluents[f])?;
        w_orig.insert(f, delta.good_form().condition_size());
    }
    let w = w_orig.values().copied().max().unwrap_or(0);

    let succ = SitTerm::succ(alpha);
    let mut allowance: BTreeMap<&str, u64> = nle.iter().map(|f| (f.as_str(), 0)).collect();
    let mut emitted = Vec::new();
    let mut sum_wf = 0u64;
    for (step, f) in order.iter().enumerate() {
        let pool = pools.remove(f).expect("processed once");
        let (delta, others) = consolidate_delta(&pool, f, bat.vocab.fluents[f])?;
        emitted.extend(others);
        let w_f = delta.good_form().condition_size();
        assert!(
            w_f <= w_orig[f.as_str()] + allowance[f.as_str()],
            "condition growth for {f} exceeded its recurrence allowance"
        );
        sum_wf += w_f;

        let pending: BTreeSet<&str> = order[step + 1..].iter().map(String::as_str).collect();
        let canon: Vec<Term> = delta.canon.iter().map(|y| Term::var(y.clone())).collect();
        let f_sa = Formula::fluent(f.clone(), canon, succ.clone());
        let into_canon: BTreeMap<String, Term> = bat
            .ssa(f)?
            .params
            .iter()
            .cloned()
            .zip(delta.canon.iter().map(|y| Term::var(y.clone())))
            .collect();

        let first = Formula::disj(vec![delta.nws.clone(), delta.snc.clone()]).close();
        assert!(
            mentioned_fluents(&first)
                .iter()
                .all(|g| !pending.contains(g.as_str())),
            "internal error: consolidated conditions of {f} mention a pending fluent"
        );
        emitted.push(first);

        for sign in [Sign::Pos, Sign::Neg] {
            let gamma = gamma_lifted(bat, f, sign, alpha, opts)?.subst_vars(&into_canon);
            let mut targets: Vec<String> = mentioned_fluents(&gamma)
                .into_iter()
                .filter(|g| nle_set.contains(g.as_str()))
                .collect();
            assert!(
                targets.len() <= 1,
                "internal error: {} of {f} mentions several non-local fluents",
                sign.label()
            );
            let (plain, guarded) = match sign {
                // ¬γ⁺ ∨ F@Sα  and  γ⁺ ∨ ¬F@Sα ∨ SNC
                Sign::Pos => (
                    f_sa.clone(),
                    Formula::disj(vec![f_sa.clone().not(), delta.snc.clone()]),
                ),
                // ¬γ⁻ ∨ ¬F@Sα  and  NWS ∨ γ⁻ ∨ F@Sα
                Sign::Neg => (
                    f_sa.clone().not(),
                    Formula::disj(vec![delta.nws.clone(), f_sa.clone()]),
                ),
            };
            match targets.pop() {
                None => {
                    emitted.push(Formula::disj(vec![gamma.clone().not(), plain]).close());
                    emitted.push(Formula::disj(vec![gamma, guarded]).close());
                }
                Some(g) => {
                    assert!(
                        pending.contains(g.as_str()),
                        "internal error: {g} mentioned after its elimination"
                    );
                    let gf = is_good_form(&gamma, &g).ok_or_else(|| {
                        ProgressError::NotGoodForm {
                            fluent: f.clone(),
                            gamma: sign.label(),
                            target: g.clone(),
                        }
                    })?;
                    let withheld = [
                        or_goodform(&negate_goodform(&gf), &plain)?,
                        or_goodform(&gf, &guarded)?,
                    ];
                    let pool_g = pools.get_mut(&g).expect("pending fluents keep pools");
                    for w in &withheld {
                        pool_g.extend(fold_clauses(w, opts.fragment)?);
                    }
                    *allowance.get_mut(g.as_str()).expect("pending") +=
                        w_f + 4 * k + 6 * a + 10;
                }
            }
        }
    }

    let ac_sum = 4 * sum_wf;
    let ac_bound = 4u64
        .saturating_mul(1u64 << (d + 1).min(62))
        .saturating_mul(l)
        .saturating_mul(w + 4 * k + 6 * a + 10);
    assert!(
        ac_sum <= ac_bound,
        "aggregate condition growth exceeded the depth bound: {ac_sum} > {ac_bound}"
    );

    carried.extend(emitted);
    Ok(NleStage {
        theory: carried,
        nle_sizes: Vec::new(),
        max_nle_instance: k,
        ac_w: w,
        ac_sum,
        ac_bound,
    })
}

// ---------------------------------------------------------------------
// The local stage and the drivers
// ---------------------------------------------------------------------

/// Conjoins the staged theory with the instantiated SSAs of the
/// characteristic set, forgets Ω, renames to the successor situation, and
/// packages the result.
fn finish(
    bat: &Bat,
    alpha: &GroundAction,
    opts: &ProgressOptions,
    verdict: Verdict,
    method: ActionClass,
    stage: NleStage,
) -> Result<ProgressionResult, ProgressError> {
    let intermediate_size = Formula::theory_size(&stage.theory);
    let omega = bat.characteristic_set(&verdict.le_fluents, alpha)?;
    let c = omega.len() as u64;
    let a = omega.iter().map(|(_, t)| t.len()).max().unwrap_or(0) as u64;
    let n = Formula::conj(stage.theory.iter().map(|f| f.close()).collect()).size_raw();

    let mut full = stage.theory;
    let mut m = 0u64;
    for (f, args) in &omega {
        let targs: Vec<Term> = args.iter().map(|c| Term::cnst(c.clone())).collect();
        let inst = bat
            .ssa_instance(f, &targs, alpha, opts.fragment.is_some())?
            .lift_at(&SitTerm::S0);
        m = m.max(inst.size_raw());
        full.push(inst);
    }

    let raw = forget_local(&full, &omega, opts.omega_cap)?;
    let output_size_raw = raw.size_raw();
    let local_bound = (1u64 << c) * (n + c * m + c) * (4 * c * a + 4 * c + 3);
    assert!(
        output_size_raw <= local_bound,
        "local forgetting exceeded its size bound: {output_size_raw} > {local_bound}"
    );

    // Rename quantified variables apart across the assignment disjuncts —
    // and in UTC mode pull the prefixes out front, which keeps the
    // disjunction of universal theories universal.
    let combined = match opts.fragment {
        Some(Fragment::Utc) => pull_universals(&raw),
        _ => {
            let mut used = raw.free_vars();
            freshen_binders(&raw, &BTreeMap::new(), &mut used)
        }
    };

    let succ = SitTerm::succ(alpha);
    let renamed = to_successor(&combined, &succ);
    let simplified = if opts.simplify {
        renamed.simplify(opts.una)
    } else {
        renamed
    };
    let mut theory = simplified.split_conjuncts();
    theory.retain(|f| !matches!(f, Formula::True));
    assert_uniform(&theory, &succ);

    let fragment_out = match (check_fo2(&theory).is_ok(), check_utc(&theory).is_ok()) {
        (true, true) => FragmentOut::Both,
        (true, false) => FragmentOut::Fo2,
        (false, true) => FragmentOut::Utc,
        (false, false) => FragmentOut::Neither,
    };
    if let Some(frag) = opts.fragment {
        let closed = match frag {
            Fragment::Fo2 => matches!(fragment_out, FragmentOut::Fo2 | FragmentOut::Both),
            Fragment::Utc => matches!(fragment_out, FragmentOut::Utc | FragmentOut::Both),
        };
        assert!(
            closed,
            "internal error: progression left the {frag} fragment"
        );
    }

    let output_size = Formula::theory_size(&theory);
    Ok(ProgressionResult {
        theory,
        method,
        stats: SizeStats {
            omega: omega.len(),
            omega_arity: a as usize,
            init_size: n,
            max_instance: m,
            depth: verdict.depth,
            nle_count: verdict.nle_fluents.len(),
            max_nle_instance: stage.max_nle_instance,
            intermediate_size,
            nle_sizes: stage.nle_sizes,
            local_bound,
            output_size_raw,
            output_size,
            ac_w: stage.ac_w,
            ac_sum: stage.ac_sum,
            ac_bound: stage.ac_bound,
        },
        fragment_out,
        verdict,
    })
}

/// The instantiated theory whose fragment membership defines an FO²- or
/// UTC-BAT: the lifted initial KB together with every fluent's instantiated
/// SSA (pattern-pinned existentials eliminated).
pub fn fragment_input(bat: &Bat, alpha: &GroundAction) -> Result<Vec<Formula>, BatError> {
    let mut theory = lifted_init(bat);
    for f in bat.vocab.fluents.keys() {
        let xs: Vec<Term> = bat
            .ssa(f)?
            .params
            .iter()
            .map(|p| Term::var(p.clone()))
            .collect();
        theory.push(bat.ssa_instance(f, &xs, alpha, true)?.close());
    }
    Ok(theory)
}

fn run_class(
    bat: &Bat,
    alpha: &GroundAction,
    opts: &ProgressOptions,
    verdict: Verdict,
    class: ActionClass,
) -> Result<ProgressionResult, ProgressError> {
    let check = verdict.check(class);
    if !check.applicable {
        return Err(ProgressError::ClassMismatch {
            class,
            witness: check
                .witness
                .clone()
                .unwrap_or_else(|| "not applicable".into()),
        });
    }
    if let Some(fragment) = opts.fragment {
        let input = fragment_input(bat, alpha)?;
        let checked = match fragment {
            Fragment::Fo2 => check_fo2(&input),
            Fragment::Utc => check_utc(&input),
        };
        checked.map_err(|witness| ProgressError::FragmentIn { fragment, witness })?;
    }
    let stage = match class {
        ActionClass::LocalEffect => NleStage::passthrough(lifted_init(bat)),
        ActionClass::Normal => nr_stage(bat, alpha, opts, &verdict)?,
        ActionClass::Acyclic => ac_stage(bat, alpha, opts, &verdict)?,
    };
    finish(bat, alpha, opts, verdict, class, stage)
}

/// Progresses the initial KB through `alpha`, dispatching on
/// [`ProgressOptions::method`]: `Auto` picks the cheapest applicable class,
/// a named method errors with the classifier's witness when the action is
/// not in that class.
pub fn progress(
    bat: &Bat,
    alpha: &GroundAction,
    opts: &ProgressOptions,
) -> Result<ProgressionResult, ProgressError> {
    let verdict = classify(bat, alpha, opts.una)?;
    let class = match opts.method {
        Method::Auto => verdict.cheapest().ok_or_else(|| {
            let why = |c: &crate::classify::ClassCheck| {
                c.witness.clone().unwrap_or_else(|| "applicable".into())
            };
            ProgressError::NoClass {
                detail: format!(
                    "local-effect: {}; normal: {}; acyclic: {}",
                    why(&verdict.local_effect),
                    why(&verdict.normal),
                    why(&verdict.acyclic)
                ),
            }
        })?,
        Method::LocalEffect => ActionClass::LocalEffect,
        Method::Normal => ActionClass::Normal,
        Method::Acyclic => ActionClass::Acyclic,
    };
    run_class(bat, alpha, opts, verdict, class)
}

/// Forces the local-effect pipeline.
pub fn progress_le(
    bat: &Bat,
    alpha: &GroundAction,
    opts: &ProgressOptions,
) -> Result<ProgressionResult, ProgressError> {
    let verdict = classify(bat, alpha, opts.una)?;
    run_class(bat, alpha, opts, verdict, ActionClass::LocalEffect)
}

/// Forces the normal pipeline.
pub fn progress_nr(
    bat: &Bat,
    alpha: &GroundAction,
    opts: &ProgressOptions,
) -> Result<ProgressionResult, ProgressError> {
    let verdict = classify(bat, alpha, opts.una)?;
    run_class(bat, alpha, opts, verdict, ActionClass::Normal)
}

/// Forces the acyclic pipeline.
pub fn progress_ac(
    bat: &Bat,
    alpha: &GroundAction,
    opts: &ProgressOptions,
) -> Result<ProgressionResult, ProgressError> {
    let verdict = classify(bat, alpha, opts.una)?;
    run_class(bat, alpha, opts, verdict, ActionClass::Acyclic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(p: &str, vs: &[&str]) -> Formula {
        Formula::lifted(p, vs.iter().map(|v| Term::var(*v)).collect())
    }

    #[test]
    fn disjoining_universal_sentences_renames_apart_and_pulls() {
        let a = Formula::forall("x", lv("P", &["x"]));
        let b = Formula::forall("x", lv("Q", &["x"]));
        let got = utc_disjoin(&a, &b);
        let expect = Formula::forall(
            "x",
            Formula::forall(
                "x1",
                Formula::disj(vec![lv("P", &["x"]), lv("Q", &["x1"])]),
            ),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn pulling_leaves_ground_disjunctions_alone() {
        let f = Formula::disj(vec![
            Formula::lifted("P", vec![Term::cnst("c1")]),
            Formula::lifted("Q", vec![Term::cnst("c2")]),
        ]);
        assert_eq!(pull_universals(&f), f);
    }

    #[test]
    fn two_variable_rewrite_keeps_clean_argument_tuples() {
        let clause = Formula::forall(
            "x",
            Formula::disj(vec![Formula::rigid("R", vec![Term::var("x")]), lv("P", &["x"])]),
        );
        assert_eq!(fo2_semidef_rewrite(&clause, "P").unwrap(), clause);
    }

    #[test]
    fn constant_axioms_pin_singleton_extensions() {
        let axioms = fo2_constant_axioms(&["A".to_string()]);
        assert_eq!(axioms.len(), 1);
        let shown = axioms[0].to_string();
        assert!(shown.contains("P_A"), "unexpected rendering: {shown}");
    }
}
