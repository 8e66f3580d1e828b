//! Basic action theories: vocabulary, successor-state axioms, and the
//! action-dependent instantiations the progression algorithms consume.
//!
//! A successor-state axiom (SSA) for fluent `F` with parameters `x⃗` is kept
//! in *effect normal form*: two lists of entries, positive and negative, each
//! entry reading
//!
//! ```text
//! ∃z⃗ ( a = A(v⃗) ∧ φ(x⃗, z⃗, s) )
//! ```
//!
//! where the pattern `v⃗` is a tuple of variables drawn from `x⃗ ∪ z⃗` (one
//! per argument of `A`, repetitions allowed). The axiom itself is
//!
//! ```text
//! F(x⃗, do(a,s)) ≡ γ⁺_F(x⃗,a,s) ∨ (F(x⃗,s) ∧ ¬γ⁻_F(x⃗,a,s))
//! ```
//!
//! with `γ±` the disjunction of the respective entries. Instantiating `γ±`
//! with a ground action `α = A(c⃗)` keeps only entries for `A` and replaces
//! `a = A(v⃗)` by the component equalities `v⃗ = c⃗` (unique names for action
//! terms; nothing is assumed about object constants here).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::formula::{Formula, GroundAction, SitTerm, Term};

/// Declared symbols. Object constants, fluents, rigids, and actions live in
/// disjoint namespaces (the parser enforces it).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub consts: Vec<String>,
    pub fluents: BTreeMap<String, usize>,
    pub rigids: BTreeMap<String, usize>,
    pub actions: BTreeMap<String, usize>,
}

impl Vocabulary {
    pub fn is_const(&self, name: &str) -> bool {
        self.consts.iter().any(|c| c == name)
    }

    /// Maximum object arity over fluents and rigids (the `a` of the size
    /// bounds); 0 when there are none.
    pub fn max_arity(&self) -> usize {
        self.fluents
            .values()
            .chain(self.rigids.values())
            .copied()
            .max()
            .unwrap_or(0)
    }
}

/// One effect entry of an SSA (one disjunct of `γ⁺` or `γ⁻`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SsaEntry {
    pub action: String,
    /// Variable names, one per argument of `action`; drawn from the fluent's
    /// parameters and `exist`.
    pub pattern: Vec<String>,
    /// The existentially quantified variables `z⃗`.
    pub exist: Vec<String>,
    /// Effect condition `φ(x⃗, z⃗, s)`; fluent atoms at situation var `s`.
    pub body: Formula,
}

/// A successor-state axiom in effect normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ssa {
    pub fluent: String,
    /// Canonical parameter names `x⃗` of the fluent.
    pub params: Vec<String>,
    pub pos: Vec<SsaEntry>,
    pub neg: Vec<SsaEntry>,
}

impl Ssa {
    pub fn entries(&self, sign: Sign) -> &[SsaEntry] {
        match sign {
            Sign::Pos => &self.pos,
            Sign::Neg => &self.neg,
        }
    }
}

/// A basic action theory: initial knowledge base plus one SSA per fluent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bat {
    pub vocab: Vocabulary,
    /// Sentences uniform in `S0` (free variables read universally).
    pub init: Vec<Formula>,
    /// One entry per *declared* fluent; fluents without a declared SSA get an
    /// empty one (pure frame: no action ever changes them).
    pub ssas: BTreeMap<String, Ssa>,
    /// Non-fatal notes from parsing (e.g. implicitly closed sentences).
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn label(self) -> &'static str {
        match self {
            Sign::Pos => "gamma+",
            Sign::Neg => "gamma-",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BatError {
    #[error("unknown fluent {0}")]
    UnknownFluent(String),
    #[error("unknown action {0}")]
    UnknownAction(String),
    #[error("action {action} expects {expected} arguments, got {got}")]
    ActionArity {
        action: String,
        expected: usize,
        got: usize,
    },
    #[error("argument {0} of the ground action is not a declared constant")]
    NotAConstant(String),
    #[error("entry for action {action} of fluent {fluent} does not pin parameter {param}: not local-effect")]
    NotLocalEffect {
        fluent: String,
        action: String,
        param: String,
    },
}

impl Bat {
    pub fn ssa(&self, fluent: &str) -> Result<&Ssa, BatError> {
        self.ssas
            .get(fluent)
            .ok_or_else(|| BatError::UnknownFluent(fluent.to_string()))
    }

    pub fn check_action(&self, alpha: &GroundAction) -> Result<(), BatError> {
        let arity = *self
            .vocab
            .actions
            .get(&alpha.name)
            .ok_or_else(|| BatError::UnknownAction(alpha.name.clone()))?;
        if alpha.args.len() != arity {
            return Err(BatError::ActionArity {
                action: alpha.name.clone(),
                expected: arity,
                got: alpha.args.len(),
            });
        }
        for c in &alpha.args {
            if !self.vocab.is_const(c) {
                return Err(BatError::NotAConstant(c.clone()));
            }
        }
        Ok(())
    }

    /// The instantiated effect condition `γ±_F(x⃗, α, S0)`: a disjunction
    /// over the entries for `α`'s action symbol, each contributing
    /// `∃z⃗ (v⃗ = c⃗ ∧ φ(x⃗, z⃗, S0))`. No matching entries yields `false`.
    ///
    /// With `one_point` set, existential variables pinned by the pattern are
    /// eliminated by the one-point rule (`∃z (z = c ∧ φ)` ⇒ `φ[z/c]`), the
    /// fragment-preserving variant used in UTC mode where instantiated
    /// axioms must be quantifier-free.
    pub fn instantiate_gamma(
        &self,
        fluent: &str,
        sign: Sign,
        alpha: &GroundAction,
        one_point: bool,
    ) -> Result<Formula, BatError> {
        self.check_action(alpha)?;
        let ssa = self.ssa(fluent)?;
        let mut disjuncts = Vec::new();
        for entry in ssa.entries(sign) {
            if entry.action != alpha.name {
                continue;
            }
            disjuncts.push(instantiate_entry(entry, alpha, one_point));
        }
        Ok(Formula::disj(disjuncts))
    }

    /// The instantiated SSA for `F` at argument tuple `args`:
    /// `F(args, Sα) ≡ γ⁺ ∨ (F(args, S0) ∧ ¬γ⁻)` with `γ±` instantiated by
    /// `α` and `x⃗` substituted by `args`.
    pub fn ssa_instance(
        &self,
        fluent: &str,
        args: &[Term],
        alpha: &GroundAction,
        one_point: bool,
    ) -> Result<Formula, BatError> {
        let ssa = self.ssa(fluent)?.clone();
        let gp = self.instantiate_gamma(fluent, Sign::Pos, alpha, one_point)?;
        let gn = self.instantiate_gamma(fluent, Sign::Neg, alpha, one_point)?;
        let mut map = BTreeMap::new();
        for (p, t) in ssa.params.iter().zip(args) {
            map.insert(p.clone(), t.clone());
        }
        let lhs = Formula::fluent(fluent, args.to_vec(), SitTerm::succ(alpha));
        let rhs = Formula::disj(vec![
            gp.subst_vars(&map),
            Formula::conj(vec![
                Formula::fluent(fluent, args.to_vec(), SitTerm::S0),
                gn.subst_vars(&map).not(),
            ]),
        ]);
        Ok(lhs.iff(rhs))
    }

    /// The four-sentence decomposition of the SSA for `F` under `α`
    /// (equivalent to the instantiated SSA given effect consistency
    /// `¬(γ⁺ ∧ γ⁻)`; only sentence (d) needs that assumption):
    ///
    /// ```text
    /// (a)  ¬γ⁺ ∧ F(x⃗, Sα) ⊃ F(x⃗, S0)      (b)  F(x⃗, S0) ⊃ γ⁻ ∨ F(x⃗, Sα)
    /// (c)  γ⁺ ⊃ F(x⃗, Sα)                  (d)  γ⁻ ⊃ ¬F(x⃗, Sα)
    /// ```
    ///
    /// `F(x⃗, S0)` occurs exactly once per sentence — positively in (a),
    /// negatively in (b), not at all in (c)/(d) — so after lifting, the set
    /// is semi-definitional in the initial-situation predicate of `F`.
    pub fn ssa_decompose(
        &self,
        fluent: &str,
        alpha: &GroundAction,
        one_point: bool,
    ) -> Result<[Formula; 4], BatError> {
        let ssa = self.ssa(fluent)?.clone();
        let gp = self.instantiate_gamma(fluent, Sign::Pos, alpha, one_point)?;
        let gn = self.instantiate_gamma(fluent, Sign::Neg, alpha, one_point)?;
        let xs: Vec<Term> = ssa.params.iter().map(|p| Term::var(p.clone())).collect();
        let f_s0 = Formula::fluent(fluent, xs.clone(), SitTerm::S0);
        let f_sa = Formula::fluent(fluent, xs, SitTerm::succ(alpha));
        Ok([
            Formula::conj(vec![gp.clone().not(), f_sa.clone()]).implies(f_s0.clone()),
            f_s0.implies(Formula::disj(vec![gn.clone(), f_sa.clone()])),
            gp.implies(f_sa.clone()),
            gn.implies(f_sa.not()),
        ])
    }

    /// The characteristic set `Ω` of ground fluent atoms possibly affected
    /// by `α`, restricted to `fluents`: for each entry of a listed fluent
    /// matching `α`'s symbol, every parameter must be pinned by the pattern
    /// (else `NotLocalEffect`); the tuples are the cartesian product of the
    /// per-parameter pin sets (usually singletons), sorted and deduplicated.
    pub fn characteristic_set(
        &self,
        fluents: &[String],
        alpha: &GroundAction,
    ) -> Result<Vec<(String, Vec<String>)>, BatError> {
        self.check_action(alpha)?;
        let mut omega = BTreeSet::new();
        for f in fluents {
            let ssa = self.ssa(f)?;
            for entry in ssa.pos.iter().chain(&ssa.neg) {
                if entry.action != alpha.name {
                    continue;
                }
                let mut pin_sets: Vec<Vec<String>> = Vec::with_capacity(ssa.params.len());
                for param in &ssa.params {
                    let pins: Vec<String> = entry
                        .pattern
                        .iter()
                        .zip(&alpha.args)
                        .filter(|(v, _)| *v == param)
                        .map(|(_, c)| c.clone())
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect();
                    if pins.is_empty() {
                        return Err(BatError::NotLocalEffect {
                            fluent: f.clone(),
                            action: entry.action.clone(),
                            param: param.clone(),
                        });
                    }
                    pin_sets.push(pins);
                }
                for tuple in cartesian(&pin_sets) {
                    omega.insert((f.clone(), tuple));
                }
            }
        }
        Ok(omega.into_iter().collect())
    }
}

fn instantiate_entry(entry: &SsaEntry, alpha: &GroundAction, one_point: bool) -> Formula {
    let body = entry.body.subst_sit(&SitTerm::Var("s".into()), &SitTerm::S0);
    let mut eqs: Vec<(String, String)> = entry
        .pattern
        .iter()
        .zip(&alpha.args)
        .map(|(v, c)| (v.clone(), c.clone()))
        .collect();
    let mut exist = entry.exist.clone();
    let mut pinned = BTreeMap::new();
    if one_point {
        // Eliminate each pattern-pinned existential via its first pin.
        for z in &entry.exist {
            if let Some((_, c)) = eqs.iter().find(|(v, _)| v == z) {
                pinned.insert(z.clone(), Term::cnst(c.clone()));
            }
        }
        exist.retain(|z| !pinned.contains_key(z));
        eqs = eqs
            .into_iter()
            .filter(|(v, c)| pinned.get(v) != Some(&Term::cnst(c.clone())))
            .collect();
    }
    let eq_forms: Vec<Formula> = eqs
        .iter()
        .map(|(v, c)| {
            let lhs = pinned
                .get(v)
                .cloned()
                .unwrap_or_else(|| Term::var(v.clone()));
            Formula::eq(lhs, Term::cnst(c.clone()))
        })
        .collect();
    let matrix = Formula::conj(
        eq_forms
            .into_iter()
            .chain([body.subst_vars(&pinned)])
            .collect(),
    );
    Formula::exists_many(&exist, matrix)
}

/// Cartesian product of the per-position choice sets.
fn cartesian(sets: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    for set in sets {
        let mut next = Vec::with_capacity(out.len() * set.len());
        for prefix in &out {
            for item in set {
                let mut t = prefix.clone();
                t.push(item.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Parses a ground action written `A(c1,c2)` (or bare `A` when nullary) and
/// validates it against the vocabulary.
pub fn parse_ground_action(bat: &Bat, text: &str) -> Result<GroundAction, BatError> {
    let text = text.trim();
    let (name, args) = match text.find('(') {
        None => (text, Vec::new()),
        Some(i) => {
            let name = &text[..i];
            let rest = text[i..]
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| BatError::UnknownAction(text.to_string()))?;
            let args: Vec<String> = if rest.trim().is_empty() {
                Vec::new()
            } else {
                rest.split(',').map(|a| a.trim().to_string()).collect()
            };
            (name, args)
        }
    };
    let alpha = GroundAction {
        name: name.to_string(),
        args,
    };
    bat.check_action(&alpha)?;
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartesian_of_singletons() {
        let sets = vec![vec!["a".to_string()], vec!["b".to_string()]];
        assert_eq!(cartesian(&sets), vec![vec!["a".to_string(), "b".to_string()]]);
        assert_eq!(cartesian(&[]), vec![Vec::<String>::new()]);
    }
}
