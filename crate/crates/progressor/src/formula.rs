//! Many-sorted first-order formulas over objects and situations.
//!
//! Terms are flat: an object term is a variable or a constant (no function
//! symbols), a situation term is the initial situation `S0`, a situation
//! variable, or `do(α, σ)` for a ground action `α`. Fluent atoms carry their
//! situation argument separately from their object arguments; rigid atoms
//! have no situation. A *lifted* atom `P_F(t⃗)` is a fluent atom whose
//! situation argument has been erased — the device used to talk about the
//! initial extension of `F` inside a situation-free theory.
//!
//! # Size metric
//!
//! [`Formula::size`] counts atoms (equalities, `true` and `false` included,
//! one each), the connectives `∧`, `∨`, `¬`, and quantifiers. Implications
//! and biconditionals are measured as their desugared forms (`p ⊃ q` as
//! `¬p ∨ q`, `p ≡ q` as the conjunction of both implications). A *leading*
//! run of universal quantifiers on a sentence is free of charge (sentences
//! are implicitly closed); every other quantifier counts. The size of a
//! theory is the sum of its sentence sizes plus one `∧` per joint.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// An object term: a variable or a constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn cnst(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }

    pub fn as_const(&self) -> Option<&str> {
        match self {
            Term::Const(c) => Some(c),
            Term::Var(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

/// A ground action: an action symbol applied to object constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAction {
    pub name: String,
    pub args: Vec<String>,
}

impl GroundAction {
    pub fn new(name: impl Into<String>, args: &[&str]) -> GroundAction {
        GroundAction {
            name: name.into(),
            args: args.iter().map(|a| a.to_string()).collect(),
        }
    }
}

impl fmt::Display for GroundAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.args.join(","))
    }
}

/// A situation term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SitTerm {
    /// The initial situation.
    S0,
    /// A situation variable (the `s` of a successor-state axiom body).
    Var(String),
    /// `do(α, σ)` for a ground action `α`.
    Do(GroundAction, Box<SitTerm>),
}

impl SitTerm {
    /// The successor situation `do(α, S0)`.
    pub fn succ(alpha: &GroundAction) -> SitTerm {
        SitTerm::Do(alpha.clone(), Box::new(SitTerm::S0))
    }

    /// Replaces `from` by `to` wherever it occurs inside this term.
    pub fn subst(&self, from: &SitTerm, to: &SitTerm) -> SitTerm {
        if self == from {
            return to.clone();
        }
        match self {
            SitTerm::Do(a, inner) => SitTerm::Do(a.clone(), Box::new(inner.subst(from, to))),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for SitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SitTerm::S0 => write!(f, "S0"),
            SitTerm::Var(v) => write!(f, "{v}"),
            SitTerm::Do(a, s) => write!(f, "do({a},{s})"),
        }
    }
}

/// A first-order formula.
///
/// `And`/`Or` are n-ary (at least two children when built by the smart
/// constructors [`Formula::conj`] / [`Formula::disj`]). `Implies` and `Iff`
/// are kept as nodes for readability but are measured and evaluated as their
/// desugared forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    /// `F(t⃗, σ)` — a fluent atom with explicit situation argument.
    Fluent(String, Vec<Term>, SitTerm),
    /// `R(t⃗)` — a situation-independent (rigid) atom.
    Rigid(String, Vec<Term>),
    /// `P_F(t⃗)` — a lifted fluent atom (situation argument erased).
    Lifted(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("formula is not uniform in {expected}: found fluent atom {atom} at {found}")]
    NotUniform {
        expected: String,
        atom: String,
        found: String,
    },
}

impl Formula {
    // ------------------------------------------------------------------
    // Convenience constructors
    // ------------------------------------------------------------------

    pub fn fluent(name: impl Into<String>, args: Vec<Term>, sit: SitTerm) -> Formula {
        Formula::Fluent(name.into(), args, sit)
    }

    pub fn rigid(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Rigid(name.into(), args)
    }

    pub fn lifted(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Lifted(name.into(), args)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    pub fn exists(var: impl Into<String>, self_: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(self_))
    }

    pub fn forall(var: impl Into<String>, self_: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(self_))
    }

    pub fn exists_many(vars: &[String], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::exists(v.clone(), acc))
    }

    pub fn forall_many(vars: &[String], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v.clone(), acc))
    }

    /// N-ary conjunction. Flattens nested `And`s; `[]` is `true`, a single
    /// element is returned unwrapped. (Flattening preserves the size metric:
    /// `k` conjuncts cost `k − 1` connectives either way.)
    pub fn conj(xs: Vec<Formula>) -> Formula {
        let mut out = Vec::with_capacity(xs.len());
        for x in xs {
            match x {
                Formula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.into_iter().next().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// N-ary disjunction; dual of [`Formula::conj`].
    pub fn disj(xs: Vec<Formula>) -> Formula {
        let mut out = Vec::with_capacity(xs.len());
        for x in xs {
            match x {
                Formula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.into_iter().next().unwrap(),
            _ => Formula::Or(out),
        }
    }

    /// The component-wise equality `t⃗ = u⃗` as a conjunction (size `2a − 1`
    /// for arity `a`); `true` for empty tuples.
    pub fn tuple_eq(ts: &[Term], us: &[Term]) -> Formula {
        assert_eq!(ts.len(), us.len(), "tuple arity mismatch");
        Formula::conj(
            ts.iter()
                .zip(us)
                .map(|(t, u)| Formula::eq(t.clone(), u.clone()))
                .collect(),
        )
    }

    /// The tuple disequality `t⃗ ≠ u⃗` as the negated conjunction (size `2a`).
    pub fn tuple_neq(ts: &[Term], us: &[Term]) -> Formula {
        Formula::tuple_eq(ts, us).not()
    }

    // ------------------------------------------------------------------
    // Size metric
    // ------------------------------------------------------------------

    /// Size of this formula read as a *sentence*: a leading run of universal
    /// quantifiers is not charged.
    pub fn size(&self) -> u64 {
        let mut f = self;
        while let Formula::Forall(_, body) = f {
            f = body;
        }
        f.size_raw()
    }

    /// Size with *every* node charged (no leading-quantifier discount).
    pub fn size_raw(&self) -> u64 {
        match self {
            Formula::True
            | Formula::False
            | Formula::Fluent(..)
            | Formula::Rigid(..)
            | Formula::Lifted(..)
            | Formula::Eq(..) => 1,
            Formula::Not(p) => 1 + p.size_raw(),
            Formula::And(xs) | Formula::Or(xs) => {
                (xs.len() as u64).saturating_sub(1) + xs.iter().map(|x| x.size_raw()).sum::<u64>()
            }
            Formula::Implies(a, b) => 2 + a.size_raw() + b.size_raw(),
            Formula::Iff(a, b) => 5 + 2 * a.size_raw() + 2 * b.size_raw(),
            Formula::Exists(_, b) | Formula::Forall(_, b) => 1 + b.size_raw(),
        }
    }

    /// Size of a theory: sentence sizes plus one `∧` per joint; `0` if empty.
    pub fn theory_size(sentences: &[Formula]) -> u64 {
        if sentences.is_empty() {
            return 0;
        }
        sentences.iter().map(|s| s.size()).sum::<u64>() + (sentences.len() as u64 - 1)
    }

    // ------------------------------------------------------------------
    // Variables
    // ------------------------------------------------------------------

    /// Free object variables, in sorted order.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out, &mut BTreeSet::new());
        out
    }

    fn free_vars_into(&self, out: &mut BTreeSet<String>, bound: &mut BTreeSet<String>) {
        let terms = |ts: &[Term], out: &mut BTreeSet<String>, bound: &BTreeSet<String>| {
            for t in ts {
                if let Term::Var(v) = t {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Fluent(_, ts, _) | Formula::Rigid(_, ts) | Formula::Lifted(_, ts) => {
                terms(ts, out, bound)
            }
            Formula::Eq(a, b) => terms(&[a.clone(), b.clone()], out, bound),
            Formula::Not(p) => p.free_vars_into(out, bound),
            Formula::And(xs) | Formula::Or(xs) => {
                for x in xs {
                    x.free_vars_into(out, bound);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.free_vars_into(out, bound);
                b.free_vars_into(out, bound);
            }
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let fresh = bound.insert(v.clone());
                b.free_vars_into(out, bound);
                if fresh {
                    bound.remove(v);
                }
            }
        }
    }

    /// Every object variable name occurring anywhere (free, bound, binders).
    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.all_var_names_into(&mut out);
        out
    }

    fn all_var_names_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Fluent(_, ts, _) | Formula::Rigid(_, ts) | Formula::Lifted(_, ts) => {
                for t in ts {
                    if let Term::Var(v) = t {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Eq(a, b) => {
                for t in [a, b] {
                    if let Term::Var(v) = t {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Not(p) => p.all_var_names_into(out),
            Formula::And(xs) | Formula::Or(xs) => {
                for x in xs {
                    x.all_var_names_into(out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.all_var_names_into(out);
                b.all_var_names_into(out);
            }
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                out.insert(v.clone());
                b.all_var_names_into(out);
            }
        }
    }

    /// Universal closure over the free object variables, sorted so the
    /// result is deterministic.
    pub fn close(&self) -> Formula {
        let vars: Vec<String> = self.free_vars().into_iter().collect();
        Formula::forall_many(&vars, self.clone())
    }

    /// Strips a leading run of universal quantifiers, returning the bound
    /// names (outermost first) and the matrix.
    pub fn strip_foralls(self) -> (Vec<String>, Formula) {
        let mut vars = Vec::new();
        let mut f = self;
        while let Formula::Forall(v, body) = f {
            vars.push(v);
            f = *body;
        }
        (vars, f)
    }

    /// Splits a sentence `∀x⃗ (φ₁ ∧ … ∧ φₖ)` into the separately re-closed
    /// conjuncts `∀(x⃗ ∩ FV(φᵢ)) φᵢ` — an equivalence-preserving
    /// normalization used before harvesting per-sentence shapes.
    pub fn split_conjuncts(&self) -> Vec<Formula> {
        let (vars, matrix) = self.clone().strip_foralls();
        match matrix {
            Formula::And(xs) => xs
                .into_iter()
                .flat_map(|x| {
                    let fv = x.free_vars();
                    let keep: Vec<String> =
                        vars.iter().filter(|v| fv.contains(*v)).cloned().collect();
                    Formula::forall_many(&keep, x).split_conjuncts()
                })
                .collect(),
            other => vec![Formula::forall_many(
                &{
                    let fv = other.free_vars();
                    vars.iter()
                        .filter(|v| fv.contains(*v))
                        .cloned()
                        .collect::<Vec<_>>()
                },
                other,
            )],
        }
    }

    // ------------------------------------------------------------------
    // Substitution
    // ------------------------------------------------------------------

    /// Simultaneous, capture-avoiding substitution of object terms for free
    /// object variables. Binders that would capture a substituted variable
    /// are renamed.
    pub fn subst_vars(&self, map: &BTreeMap<String, Term>) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        let term = |t: &Term| -> Term {
            match t {
                Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| t.clone()),
                Term::Const(_) => t.clone(),
            }
        };
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Fluent(n, ts, s) => {
                Formula::Fluent(n.clone(), ts.iter().map(term).collect(), s.clone())
            }
            Formula::Rigid(n, ts) => Formula::Rigid(n.clone(), ts.iter().map(term).collect()),
            Formula::Lifted(n, ts) => Formula::Lifted(n.clone(), ts.iter().map(term).collect()),
            Formula::Eq(a, b) => Formula::Eq(term(a), term(b)),
            Formula::Not(p) => p.subst_vars(map).not(),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.subst_vars(map)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.subst_vars(map)).collect()),
            Formula::Implies(a, b) => a.subst_vars(map).implies(b.subst_vars(map)),
            Formula::Iff(a, b) => a.subst_vars(map).iff(b.subst_vars(map)),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let mut m = map.clone();
                m.remove(v);
                let (v2, b2) = if m.values().any(|t| t.as_var() == Some(v.as_str())) {
                    let mut used = b.all_var_names();
                    used.extend(m.keys().cloned());
                    used.extend(m.values().filter_map(|t| t.as_var().map(str::to_string)));
                    used.insert(v.clone());
                    let fresh = fresh_var(v, &used);
                    let mut rename = BTreeMap::new();
                    rename.insert(v.clone(), Term::Var(fresh.clone()));
                    (fresh, b.subst_vars(&rename))
                } else {
                    (v.clone(), (**b).clone())
                };
                let body = b2.subst_vars(&m);
                match self {
                    Formula::Exists(..) => Formula::exists(v2, body),
                    _ => Formula::forall(v2, body),
                }
            }
        }
    }

    /// Substitutes one term for another throughout (`from` a variable hits
    /// only free occurrences; `from` a constant hits every occurrence).
    pub fn subst_term(&self, from: &Term, to: &Term) -> Formula {
        match from {
            Term::Var(v) => {
                let mut m = BTreeMap::new();
                m.insert(v.clone(), to.clone());
                self.subst_vars(&m)
            }
            Term::Const(_) => self.map_terms(&mut |t| if t == from { to.clone() } else { t.clone() }),
        }
    }

    fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Fluent(n, ts, s) => {
                Formula::Fluent(n.clone(), ts.iter().map(&mut *f).collect(), s.clone())
            }
            Formula::Rigid(n, ts) => Formula::Rigid(n.clone(), ts.iter().map(&mut *f).collect()),
            Formula::Lifted(n, ts) => Formula::Lifted(n.clone(), ts.iter().map(&mut *f).collect()),
            Formula::Eq(a, b) => Formula::Eq(f(a), f(b)),
            Formula::Not(p) => p.map_terms(f).not(),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.map_terms(f)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.map_terms(f)).collect()),
            Formula::Implies(a, b) => a.map_terms(f).implies(b.map_terms(f)),
            Formula::Iff(a, b) => a.map_terms(f).iff(b.map_terms(f)),
            Formula::Exists(v, b) => Formula::exists(v.clone(), b.map_terms(f)),
            Formula::Forall(v, b) => Formula::forall(v.clone(), b.map_terms(f)),
        }
    }

    /// Replaces situation term `from` by `to` in every fluent atom.
    pub fn subst_sit(&self, from: &SitTerm, to: &SitTerm) -> Formula {
        self.map_atoms(&mut |atom| match atom {
            Formula::Fluent(n, ts, s) => Some(Formula::Fluent(
                n.clone(),
                ts.clone(),
                s.subst(from, to),
            )),
            _ => None,
        })
    }

    /// Rewrites atoms bottom-up: `f` returns `Some(replacement)` to swap an
    /// atom (`Fluent`/`Rigid`/`Lifted`/`Eq`/`True`/`False`) for a formula.
    ///
    /// No capture avoidance is performed: a replacement mentioning variables
    /// bound at the occurrence site refers to those binders — exactly what
    /// atom-level expansion rules (equality guards around an atom's own
    /// arguments) want.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Formula) -> Option<Formula>) -> Formula {
        match self {
            Formula::True
            | Formula::False
            | Formula::Fluent(..)
            | Formula::Rigid(..)
            | Formula::Lifted(..)
            | Formula::Eq(..) => f(self).unwrap_or_else(|| self.clone()),
            Formula::Not(p) => p.map_atoms(f).not(),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.map_atoms(f)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.map_atoms(f)).collect()),
            Formula::Implies(a, b) => a.map_atoms(f).implies(b.map_atoms(f)),
            Formula::Iff(a, b) => a.map_atoms(f).iff(b.map_atoms(f)),
            Formula::Exists(v, b) => Formula::exists(v.clone(), b.map_atoms(f)),
            Formula::Forall(v, b) => Formula::forall(v.clone(), b.map_atoms(f)),
        }
    }

    /// Replaces every occurrence of an exact subformula by another, renaming
    /// binders that would capture free variables of the replacement.
    pub fn replace_subformula(&self, from: &Formula, to: &Formula) -> Formula {
        if self == from {
            return to.clone();
        }
        match self {
            Formula::True
            | Formula::False
            | Formula::Fluent(..)
            | Formula::Rigid(..)
            | Formula::Lifted(..)
            | Formula::Eq(..) => self.clone(),
            Formula::Not(p) => p.replace_subformula(from, to).not(),
            Formula::And(xs) => {
                Formula::And(xs.iter().map(|x| x.replace_subformula(from, to)).collect())
            }
            Formula::Or(xs) => {
                Formula::Or(xs.iter().map(|x| x.replace_subformula(from, to)).collect())
            }
            Formula::Implies(a, b) => a
                .replace_subformula(from, to)
                .implies(b.replace_subformula(from, to)),
            Formula::Iff(a, b) => a
                .replace_subformula(from, to)
                .iff(b.replace_subformula(from, to)),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let (v2, b2) = if to.free_vars().contains(v) && b.replace_would_hit(from) {
                    let mut used = b.all_var_names();
                    used.extend(to.all_var_names());
                    used.extend(from.all_var_names());
                    let fresh = fresh_var(v, &used);
                    let mut rename = BTreeMap::new();
                    rename.insert(v.clone(), Term::Var(fresh.clone()));
                    (fresh, b.subst_vars(&rename))
                } else {
                    (v.clone(), (**b).clone())
                };
                let body = b2.replace_subformula(from, to);
                match self {
                    Formula::Exists(..) => Formula::exists(v2, body),
                    _ => Formula::forall(v2, body),
                }
            }
        }
    }

    fn replace_would_hit(&self, from: &Formula) -> bool {
        if self == from {
            return true;
        }
        match self {
            Formula::True
            | Formula::False
            | Formula::Fluent(..)
            | Formula::Rigid(..)
            | Formula::Lifted(..)
            | Formula::Eq(..) => false,
            Formula::Not(p) => p.replace_would_hit(from),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().any(|x| x.replace_would_hit(from)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.replace_would_hit(from) || b.replace_would_hit(from)
            }
            Formula::Exists(_, b) | Formula::Forall(_, b) => b.replace_would_hit(from),
        }
    }

    // ------------------------------------------------------------------
    // Lifting between fluent and situation-free form
    // ------------------------------------------------------------------

    /// True when every fluent atom carries exactly the situation `sit`.
    pub fn uniform_in(&self, sit: &SitTerm) -> bool {
        self.find_nonuniform(sit).is_none()
    }

    fn find_nonuniform(&self, sit: &SitTerm) -> Option<(String, SitTerm)> {
        match self {
            Formula::Fluent(n, _, s) => (s != sit).then(|| (n.clone(), s.clone())),
            Formula::True
            | Formula::False
            | Formula::Rigid(..)
            | Formula::Lifted(..)
            | Formula::Eq(..) => None,
            Formula::Not(p) => p.find_nonuniform(sit),
            Formula::And(xs) | Formula::Or(xs) => {
                xs.iter().find_map(|x| x.find_nonuniform(sit))
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.find_nonuniform(sit).or_else(|| b.find_nonuniform(sit))
            }
            Formula::Exists(_, b) | Formula::Forall(_, b) => b.find_nonuniform(sit),
        }
    }

    /// Erases the situation argument of every fluent atom, turning
    /// `F(t⃗, sit)` into the lifted atom `P_F(t⃗)`. Errors unless the
    /// formula is uniform in `sit`.
    pub fn lift(&self, sit: &SitTerm) -> Result<Formula, FormulaError> {
        if let Some((atom, found)) = self.find_nonuniform(sit) {
            return Err(FormulaError::NotUniform {
                expected: sit.to_string(),
                atom,
                found: found.to_string(),
            });
        }
        Ok(self.lift_at(sit))
    }

    /// Erases the situation argument of fluent atoms *at* `sit`, leaving
    /// atoms at other situations untouched.
    pub fn lift_at(&self, sit: &SitTerm) -> Formula {
        self.map_atoms(&mut |atom| match atom {
            Formula::Fluent(n, ts, s) if s == sit => Some(Formula::Lifted(n.clone(), ts.clone())),
            _ => None,
        })
    }

    /// Inverse of lifting: every lifted atom becomes a fluent atom at `sit`.
    pub fn unlift(&self, sit: &SitTerm) -> Formula {
        self.map_atoms(&mut |atom| match atom {
            Formula::Lifted(n, ts) => Some(Formula::Fluent(n.clone(), ts.clone(), sit.clone())),
            _ => None,
        })
    }

    /// True if any lifted atom occurs.
    pub fn has_lifted(&self) -> bool {
        let mut found = false;
        self.map_atoms(&mut |atom| {
            if matches!(atom, Formula::Lifted(..)) {
                found = true;
            }
            None
        });
        found
    }

    pub fn mentions_lifted(&self, sym: &str) -> bool {
        let mut found = false;
        self.map_atoms(&mut |atom| {
            if matches!(atom, Formula::Lifted(n, _) if n == sym) {
                found = true;
            }
            None
        });
        found
    }

    pub fn mentions_fluent(&self, sym: &str) -> bool {
        let mut found = false;
        self.map_atoms(&mut |atom| {
            if matches!(atom, Formula::Fluent(n, _, _) if n == sym) {
                found = true;
            }
            None
        });
        found
    }

    /// Collects every symbol used, with arities (for deriving a vocabulary
    /// or a finite-structure shape from bare formulas).
    pub fn collect_symbols(&self, usage: &mut SymbolUsage) {
        self.map_atoms(&mut |atom| {
            match atom {
                Formula::Fluent(n, ts, s) => {
                    usage.fluents.insert(n.clone(), ts.len());
                    usage.note_terms(ts);
                    usage.note_sit(s);
                }
                Formula::Rigid(n, ts) => {
                    usage.rigids.insert(n.clone(), ts.len());
                    usage.note_terms(ts);
                }
                Formula::Lifted(n, ts) => {
                    usage.fluents.insert(n.clone(), ts.len());
                    usage.note_terms(ts);
                }
                Formula::Eq(a, b) => usage.note_terms(&[a.clone(), b.clone()]),
                _ => {}
            }
            None
        });
    }

    // ------------------------------------------------------------------
    // Normal forms and simplification
    // ------------------------------------------------------------------

    /// Eliminates `Implies` and `Iff` (`p ⊃ q` ⇒ `¬p ∨ q`;
    /// `p ≡ q` ⇒ `(¬p ∨ q) ∧ (¬q ∨ p)`).
    pub fn desugar(&self) -> Formula {
        match self {
            Formula::True
            | Formula::False
            | Formula::Fluent(..)
            | Formula::Rigid(..)
            | Formula::Lifted(..)
            | Formula::Eq(..) => self.clone(),
            Formula::Not(p) => p.desugar().not(),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.desugar()).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.desugar()).collect()),
            Formula::Implies(a, b) => Formula::Or(vec![a.desugar().not(), b.desugar()]),
            Formula::Iff(a, b) => {
                let (a, b) = (a.desugar(), b.desugar());
                Formula::And(vec![
                    Formula::Or(vec![a.clone().not(), b.clone()]),
                    Formula::Or(vec![b.not(), a]),
                ])
            }
            Formula::Exists(v, b) => Formula::exists(v.clone(), b.desugar()),
            Formula::Forall(v, b) => Formula::forall(v.clone(), b.desugar()),
        }
    }

    /// Negation normal form: desugared, negations pushed onto atoms.
    pub fn nnf(&self) -> Formula {
        self.desugar().nnf_inner(false)
    }

    fn nnf_inner(&self, neg: bool) -> Formula {
        match self {
            Formula::True => {
                if neg {
                    Formula::False
                } else {
                    Formula::True
                }
            }
            Formula::False => {
                if neg {
                    Formula::True
                } else {
                    Formula::False
                }
            }
            Formula::Fluent(..) | Formula::Rigid(..) | Formula::Lifted(..) | Formula::Eq(..) => {
                if neg {
                    self.clone().not()
                } else {
                    self.clone()
                }
            }
            Formula::Not(p) => p.nnf_inner(!neg),
            Formula::And(xs) => {
                let ys = xs.iter().map(|x| x.nnf_inner(neg)).collect();
                if neg {
                    Formula::Or(ys)
                } else {
                    Formula::And(ys)
                }
            }
            Formula::Or(xs) => {
                let ys = xs.iter().map(|x| x.nnf_inner(neg)).collect();
                if neg {
                    Formula::And(ys)
                } else {
                    Formula::Or(ys)
                }
            }
            Formula::Implies(..) | Formula::Iff(..) => unreachable!("desugared before nnf"),
            Formula::Exists(v, b) => {
                let body = b.nnf_inner(neg);
                if neg {
                    Formula::forall(v.clone(), body)
                } else {
                    Formula::exists(v.clone(), body)
                }
            }
            Formula::Forall(v, b) => {
                let body = b.nnf_inner(neg);
                if neg {
                    Formula::exists(v.clone(), body)
                } else {
                    Formula::forall(v.clone(), body)
                }
            }
        }
    }

    /// Unit-level simplification: `true`/`false` propagation through every
    /// connective and quantifier, double-negation elimination, `t = t` to
    /// `true`, and — only when `una` is set — distinct constants `c = d` to
    /// `false` (object unique-names). Nothing cleverer: bounds are asserted
    /// on raw constructions and this pass runs after.
    pub fn simplify(&self, una: bool) -> Formula {
        match self {
            Formula::True
            | Formula::False
            | Formula::Fluent(..)
            | Formula::Rigid(..)
            | Formula::Lifted(..) => self.clone(),
            Formula::Eq(a, b) => {
                if a == b {
                    Formula::True
                } else if una {
                    match (a, b) {
                        (Term::Const(x), Term::Const(y)) if x != y => Formula::False,
                        _ => self.clone(),
                    }
                } else {
                    self.clone()
                }
            }
            Formula::Not(p) => match p.simplify(una) {
                Formula::True => Formula::False,
                Formula::False => Formula::True,
                Formula::Not(inner) => *inner,
                q => q.not(),
            },
            Formula::And(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    match x.simplify(una) {
                        Formula::True => {}
                        Formula::False => return Formula::False,
                        Formula::And(inner) => out.extend(inner),
                        y => out.push(y),
                    }
                }
                match out.len() {
                    0 => Formula::True,
                    1 => out.into_iter().next().unwrap(),
                    _ => Formula::And(out),
                }
            }
            Formula::Or(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    match x.simplify(una) {
                        Formula::False => {}
                        Formula::True => return Formula::True,
                        Formula::Or(inner) => out.extend(inner),
                        y => out.push(y),
                    }
                }
                match out.len() {
                    0 => Formula::False,
                    1 => out.into_iter().next().unwrap(),
                    _ => Formula::Or(out),
                }
            }
            Formula::Implies(a, b) => match (a.simplify(una), b.simplify(una)) {
                (Formula::False, _) => Formula::True,
                (_, Formula::True) => Formula::True,
                (Formula::True, q) => q,
                (p, Formula::False) => p.not().simplify(una),
                (p, q) => p.implies(q),
            },
            Formula::Iff(a, b) => match (a.simplify(una), b.simplify(una)) {
                (Formula::True, q) => q,
                (q, Formula::True) => q,
                (Formula::False, q) => q.not().simplify(una),
                (q, Formula::False) => q.not().simplify(una),
                (p, q) if p == q => Formula::True,
                (p, q) => p.iff(q),
            },
            Formula::Exists(v, b) => match b.simplify(una) {
                Formula::True => Formula::True,
                Formula::False => Formula::False,
                body => Formula::exists(v.clone(), body),
            },
            Formula::Forall(v, b) => match b.simplify(una) {
                Formula::True => Formula::True,
                Formula::False => Formula::False,
                body => Formula::forall(v.clone(), body),
            },
        }
    }

    /// Renames binders so no variable is bound twice and no binder shadows a
    /// free variable — established once after parsing.
    pub fn rename_binders_apart(&self) -> Formula {
        let mut used = self.free_vars();
        self.rename_binders_inner(&mut used)
    }

    fn rename_binders_inner(&self, used: &mut BTreeSet<String>) -> Formula {
        match self {
            Formula::True
            | Formula::False
            | Formula::Fluent(..)
            | Formula::Rigid(..)
            | Formula::Lifted(..)
            | Formula::Eq(..) => self.clone(),
            Formula::Not(p) => p.rename_binders_inner(used).not(),
            Formula::And(xs) => {
                Formula::And(xs.iter().map(|x| x.rename_binders_inner(used)).collect())
            }
            Formula::Or(xs) => {
                Formula::Or(xs.iter().map(|x| x.rename_binders_inner(used)).collect())
            }
            Formula::Implies(a, b) => a
                .rename_binders_inner(used)
                .implies(b.rename_binders_inner(used)),
            Formula::Iff(a, b) => a
                .rename_binders_inner(used)
                .iff(b.rename_binders_inner(used)),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let (v2, b2) = if used.contains(v) {
                    let mut avoid = used.clone();
                    avoid.extend(b.all_var_names());
                    let fresh = fresh_var(v, &avoid);
                    let mut rename = BTreeMap::new();
                    rename.insert(v.clone(), Term::Var(fresh.clone()));
                    (fresh, b.subst_vars(&rename))
                } else {
                    (v.clone(), (**b).clone())
                };
                used.insert(v2.clone());
                let body = b2.rename_binders_inner(used);
                match self {
                    Formula::Exists(..) => Formula::exists(v2, body),
                    _ => Formula::forall(v2, body),
                }
            }
        }
    }
}

/// Symbols and arities harvested from formulas.
#[derive(Debug, Default, Clone)]
pub struct SymbolUsage {
    pub consts: BTreeSet<String>,
    pub rigids: BTreeMap<String, usize>,
    /// Fluent and lifted symbols share one namespace: `P_F` talks about `F`.
    pub fluents: BTreeMap<String, usize>,
}

impl SymbolUsage {
    fn note_terms(&mut self, ts: &[Term]) {
        for t in ts {
            if let Term::Const(c) = t {
                self.consts.insert(c.clone());
            }
        }
    }

    fn note_sit(&mut self, s: &SitTerm) {
        if let SitTerm::Do(a, inner) = s {
            for c in &a.args {
                self.consts.insert(c.clone());
            }
            self.note_sit(inner);
        }
    }
}

/// A name not in `used`, derived from `base` by appending a counter.
pub fn fresh_var(base: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(base) {
        return base.to_string();
    }
    let stem: String = base.trim_end_matches(|c: char| c.is_ascii_digit()).into();
    let stem = if stem.is_empty() { "v" } else { stem.as_str() }.to_string();
    for i in 1.. {
        let cand = format!("{stem}{i}");
        if !used.contains(&cand) {
            return cand;
        }
    }
    unreachable!()
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn args(ts: &[Term]) -> String {
            ts.iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        fn go(x: &Formula, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
            // Precedence: quantifiers/not bind tightest in this layout; we
            // parenthesize children of binary connectives conservatively.
            match x {
                Formula::True => write!(f, "true"),
                Formula::False => write!(f, "false"),
                Formula::Fluent(n, ts, s) => write!(f, "{n}({})@{s}", args(ts)),
                Formula::Rigid(n, ts) => write!(f, "{n}({})", args(ts)),
                Formula::Lifted(n, ts) => write!(f, "{n}'({})", args(ts)),
                Formula::Eq(a, b) => write!(f, "{a} = {b}"),
                Formula::Not(p) => {
                    write!(f, "~")?;
                    go(p, f, 3)
                }
                Formula::And(xs) => {
                    if parent > 1 {
                        write!(f, "(")?;
                    }
                    for (i, c) in xs.iter().enumerate() {
                        if i > 0 {
                            write!(f, " & ")?;
                        }
                        go(c, f, 2)?;
                    }
                    if parent > 1 {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                Formula::Or(xs) => {
                    if parent > 0 {
                        write!(f, "(")?;
                    }
                    for (i, c) in xs.iter().enumerate() {
                        if i > 0 {
                            write!(f, " | ")?;
                        }
                        go(c, f, 1)?;
                    }
                    if parent > 0 {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                Formula::Implies(a, b) => {
                    write!(f, "(")?;
                    go(a, f, 1)?;
                    write!(f, " -> ")?;
                    go(b, f, 1)?;
                    write!(f, ")")
                }
                Formula::Iff(a, b) => {
                    write!(f, "(")?;
                    go(a, f, 1)?;
                    write!(f, " <-> ")?;
                    go(b, f, 1)?;
                    write!(f, ")")
                }
                Formula::Exists(v, b) => {
                    write!(f, "exists {v}.")?;
                    go(b, f, 3)
                }
                Formula::Forall(v, b) => {
                    write!(f, "forall {v}.")?;
                    go(b, f, 3)
                }
            }
        }
        go(self, f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_var_skips_used() {
        let used: BTreeSet<String> = ["x".into(), "x1".into()].into();
        assert_eq!(fresh_var("x", &used), "x2");
        assert_eq!(fresh_var("y", &used), "y");
    }

    #[test]
    fn capture_avoided() {
        // (exists y. x = y)[x := y]  must rename the binder
        let f = Formula::exists("y", Formula::eq(Term::var("x"), Term::var("y")));
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), Term::var("y"));
        let g = f.subst_vars(&m);
        match g {
            Formula::Exists(v, body) => {
                assert_ne!(v, "y");
                assert_eq!(*body, Formula::eq(Term::var("y"), Term::var(v)));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }
}
