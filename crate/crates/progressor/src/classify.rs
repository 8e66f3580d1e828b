//! Syntactic classification of a BAT relative to a ground action: the three
//! progressable classes, the shapes they rely on (semi-definitional
//! theories, good form), the fluent dependency graph, and membership checks
//! for the two decidable fragments (FO², UTC).
//!
//! Everything here is deliberately syntactic — a theory logically equivalent
//! to, say, a semi-definitional one but not written that way is rejected.
//! That keeps classification deterministic and cheap.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bat::{Bat, BatError, Sign};
use crate::formula::{Formula, GroundAction, SitTerm, SymbolUsage, Term};

/// The progressable action classes, cheapest first. Every local-effect
/// action is normal, every normal action is acyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionClass {
    LocalEffect,
    Normal,
    Acyclic,
}

impl std::fmt::Display for ActionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ActionClass::LocalEffect => "local-effect",
            ActionClass::Normal => "normal",
            ActionClass::Acyclic => "acyclic",
        })
    }
}

/// One class test: applicable, or a witness explaining why not.
#[derive(Debug, Clone, Serialize)]
pub struct ClassCheck {
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ClassCheck {
    fn ok() -> ClassCheck {
        ClassCheck {
            applicable: true,
            witness: None,
        }
    }

    fn no(witness: String) -> ClassCheck {
        ClassCheck {
            applicable: false,
            witness: Some(witness),
        }
    }
}

/// Result of classifying a BAT against a ground action.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    /// Fluents whose matching effect entries all pin every parameter.
    pub le_fluents: Vec<String>,
    /// The rest: fluents with at least one non-local entry for this action.
    pub nle_fluents: Vec<String>,
    pub local_effect: ClassCheck,
    pub normal: ClassCheck,
    pub acyclic: ClassCheck,
    /// Longest path (in edges) of the dependency graph; 0 when cyclic.
    pub depth: usize,
    /// Elimination order for the non-local fluents (dependency sources
    /// first), present when the graph is acyclic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elimination_order: Option<Vec<String>>,
    /// `|Ω|` over the local-effect fluents.
    pub omega_size: usize,
}

impl Verdict {
    pub fn applicable(&self) -> Vec<ActionClass> {
        let mut out = Vec::new();
        if self.local_effect.applicable {
            out.push(ActionClass::LocalEffect);
        }
        if self.normal.applicable {
            out.push(ActionClass::Normal);
        }
        if self.acyclic.applicable {
            out.push(ActionClass::Acyclic);
        }
        out
    }

    /// Cheapest applicable class, if any.
    pub fn cheapest(&self) -> Option<ActionClass> {
        self.applicable().into_iter().next()
    }

    pub fn check(&self, class: ActionClass) -> &ClassCheck {
        match class {
            ActionClass::LocalEffect => &self.local_effect,
            ActionClass::Normal => &self.normal,
            ActionClass::Acyclic => &self.acyclic,
        }
    }
}

// ---------------------------------------------------------------------
// Local-effect split
// ---------------------------------------------------------------------

/// Partitions the fluents into local-effect and non-local-effect relative to
/// `alpha`, with a witness per non-local fluent. A fluent is local-effect
/// when every entry matching `alpha`'s action symbol pins all of the
/// fluent's parameters in its pattern — instantiation then grounds every
/// affected instance. Fluents with no matching entry are vacuously
/// local-effect.
pub fn fluent_split(
    bat: &Bat,
    alpha: &GroundAction,
) -> Result<(Vec<String>, Vec<String>, BTreeMap<String, String>), BatError> {
    bat.check_action(alpha)?;
    let mut le = Vec::new();
    let mut nle = Vec::new();
    let mut witnesses = BTreeMap::new();
    for (fluent, ssa) in &bat.ssas {
        let mut bad = None;
        for (sign, entry) in ssa
            .pos
            .iter()
            .map(|e| (Sign::Pos, e))
            .chain(ssa.neg.iter().map(|e| (Sign::Neg, e)))
        {
            if entry.action != alpha.name {
                continue;
            }
            if let Some(p) = ssa.params.iter().find(|p| !entry.pattern.contains(p)) {
                bad = Some(format!(
                    "{} entry for {}: parameter {p} not pinned by the pattern",
                    sign.label(),
                    entry.action
                ));
                break;
            }
        }
        match bad {
            None => le.push(fluent.clone()),
            Some(w) => {
                witnesses.insert(fluent.clone(), w);
                nle.push(fluent.clone());
            }
        }
    }
    Ok((le, nle, witnesses))
}

// ---------------------------------------------------------------------
// Dead-branch pruning and fluent mentions
// ---------------------------------------------------------------------

/// Drops instantiated effect disjuncts that are dead under object unique
/// names: an `∃z⃗(e₁ ∧ … ∧ φ)` branch whose equalities pin one variable to
/// two distinct constants (or equate distinct constants outright) can never
/// fire. Used with `una` off it is the identity.
pub fn prune_gamma(gamma: &Formula, una: bool) -> Formula {
    if !una {
        return gamma.clone();
    }
    let branches = match gamma {
        Formula::Or(xs) => xs.clone(),
        other => vec![other.clone()],
    };
    let live: Vec<Formula> = branches
        .into_iter()
        .filter(|b| !branch_dead(b))
        .collect();
    Formula::disj(live)
}

fn branch_dead(branch: &Formula) -> bool {
    let mut inner = branch;
    while let Formula::Exists(_, b) = inner {
        inner = b;
    }
    let conj = match inner {
        Formula::And(xs) => xs.as_slice(),
        other => std::slice::from_ref(other),
    };
    let mut pins: BTreeMap<&str, &str> = BTreeMap::new();
    for c in conj {
        if let Formula::Eq(a, b) = c {
            match (a, b) {
                (Term::Const(x), Term::Const(y)) if x != y => return true,
                (Term::Var(v), Term::Const(c)) | (Term::Const(c), Term::Var(v)) => {
                    if let Some(prev) = pins.insert(v.as_str(), c.as_str()) {
                        if prev != c.as_str() {
                            return true;
                        }
                    }
                }
                _ => {}
            }
        }
    }
    false
}

/// Fluent symbols mentioned (as fluent or lifted atoms).
pub fn mentioned_fluents(f: &Formula) -> BTreeSet<String> {
    let mut usage = SymbolUsage::default();
    f.collect_symbols(&mut usage);
    usage.fluents.into_keys().collect()
}

// ---------------------------------------------------------------------
// Semi-definitional shape
// ---------------------------------------------------------------------

/// Checks that every sentence of `theory` (lifted, free variables read
/// universally) mentions the lifted predicate `p` at most once, as a
/// top-level clause literal `… ∨ P(y⃗)` or `… ∨ ¬P(y⃗)` whose arguments are
/// distinct variables. Condition variables beyond `y⃗` stay universal.
/// Returns the harvested implication conditions: `wsc` are the ψ of
/// `ψ ⊃ P`, `snc` the φ of `P ⊃ φ`.
pub fn is_semi_definitional(theory: &[Formula], p: &str) -> (bool, Vec<Formula>, Vec<Formula>) {
    let mut wsc = Vec::new();
    let mut snc = Vec::new();
    for sentence in theory {
        match clause_split(sentence, p) {
            Ok(None) => {}
            Ok(Some((positive, _, cond))) => {
                // Display as the implication condition: ψ ⊃ P has ψ = ¬κ.
                let disp = negate_for_display(&cond);
                if positive {
                    wsc.push(disp);
                } else {
                    snc.push(cond);
                }
            }
            Err(_) => return (false, Vec::new(), Vec::new()),
        }
    }
    (true, wsc, snc)
}

/// Human witness for the first sentence breaking the semi-definitional shape
/// wrt `p`, if any.
pub fn semidef_witness(theory: &[Formula], p: &str) -> Option<String> {
    for sentence in theory {
        if let Err(why) = clause_split(sentence, p) {
            return Some(format!("{sentence}: {why}"));
        }
    }
    None
}

/// Splits one sentence wrt lifted `p`: `Ok(None)` when `p` is absent,
/// `Ok(Some((positive, args, condition)))` for the clause shape, and
/// `Err(reason)` otherwise. The condition is the disjunction of the
/// non-`p` clause elements (`false` when the literal stands alone); its
/// free variables beyond the literal's arguments are read universally,
/// so `∀x∀y (¬P(x) ∨ κ(x,y))` splits with condition `κ(x,y)`.
pub(crate) fn clause_split(
    sentence: &Formula,
    p: &str,
) -> Result<Option<(bool, Vec<String>, Formula)>, String> {
    if !sentence.mentions_lifted(p) {
        return Ok(None);
    }
    let (_, matrix) = sentence.clone().strip_foralls();
    let matrix = matrix.desugar();
    let elems = match matrix {
        Formula::Or(xs) => xs,
        other => vec![other],
    };
    let mut lit: Option<(bool, Vec<Term>)> = None;
    let mut rest = Vec::new();
    for e in flatten_or(elems) {
        match &e {
            Formula::Lifted(sym, args) if sym == p => {
                if lit.is_some() {
                    return Err(format!("more than one occurrence of {p}"));
                }
                lit = Some((true, args.clone()));
            }
            Formula::Not(inner) => match &**inner {
                Formula::Lifted(sym, args) if sym == p => {
                    if lit.is_some() {
                        return Err(format!("more than one occurrence of {p}"));
                    }
                    lit = Some((false, args.clone()));
                }
                _ => {
                    if e.mentions_lifted(p) {
                        return Err(format!("{p} occurs below the clause level"));
                    }
                    rest.push(e);
                }
            },
            _ => {
                if e.mentions_lifted(p) {
                    return Err(format!("{p} occurs below the clause level"));
                }
                rest.push(e);
            }
        }
    }
    let (positive, args) = lit.expect("mention was checked");
    let mut vars = Vec::new();
    let mut seen = BTreeSet::new();
    for a in &args {
        match a {
            Term::Var(v) if seen.insert(v.clone()) => vars.push(v.clone()),
            Term::Var(v) => return Err(format!("repeated argument {v} in the {p} literal")),
            Term::Const(c) => return Err(format!("ground argument {c} in the {p} literal")),
        }
    }
    Ok(Some((positive, vars, Formula::disj(rest))))
}

fn flatten_or(elems: Vec<Formula>) -> Vec<Formula> {
    let mut out = Vec::new();
    for e in elems {
        match e {
            Formula::Or(xs) => out.extend(flatten_or(xs)),
            other => out.push(other),
        }
    }
    out
}

fn negate_for_display(f: &Formula) -> Formula {
    match f {
        Formula::Not(p) => (**p).clone(),
        other => other.clone().not(),
    }
}

// ---------------------------------------------------------------------
// Good form
// ---------------------------------------------------------------------

/// Decomposition of `(ψ ∨ P(t⃗)) ∧ (ψ′ ∨ ¬P(t⃗)) ∧ ψ″` with `ψ, ψ′, ψ″`
/// free of the lifted predicate `P`. A missing guarded conjunct reads
/// `true`; a bare literal conjunct has condition `false`.
#[derive(Debug, Clone)]
pub struct GoodForm {
    /// The target atom, absent when the predicate does not occur at all.
    pub target: Option<(String, Vec<Term>)>,
    /// ψ — condition of the positive guard.
    pub psi_pos: Formula,
    /// ψ′ — condition of the negative guard.
    pub psi_neg: Formula,
    /// ψ″ — the predicate-free remainder.
    pub rest: Formula,
}

impl GoodForm {
    /// Canonical reassembly `(ψ ∨ P(t⃗)) ∧ (ψ′ ∨ ¬P(t⃗)) ∧ ψ″`; collapses
    /// to `ψ″` when the predicate is absent.
    pub fn formula(&self) -> Formula {
        match &self.target {
            None => self.rest.clone(),
            Some((p, args)) => {
                let atom = Formula::lifted(p.clone(), args.clone());
                Formula::And(vec![
                    Formula::disj(vec![self.psi_pos.clone(), atom.clone()]),
                    Formula::disj(vec![self.psi_neg.clone(), atom.not()]),
                    self.rest.clone(),
                ])
            }
        }
    }

    pub fn size(&self) -> u64 {
        self.formula().size_raw()
    }

    /// Size of the largest of the three conditions.
    pub fn condition_size(&self) -> u64 {
        self.psi_pos
            .size_raw()
            .max(self.psi_neg.size_raw())
            .max(self.rest.size_raw())
    }
}

/// Matches the good-form shape of `f` wrt lifted predicate `p`, modulo
/// conjunct reordering and associativity only. Fails on any occurrence of
/// `p` outside the two guard literals or on mismatched guard arguments.
pub fn is_good_form(f: &Formula, p: &str) -> Option<GoodForm> {
    let conjuncts = match f.clone() {
        Formula::And(xs) => xs,
        other => vec![other],
    };
    let mut pos: Option<(Vec<Term>, Formula)> = None;
    let mut neg: Option<(Vec<Term>, Formula)> = None;
    let mut rest = Vec::new();
    for c in conjuncts {
        if !c.mentions_lifted(p) {
            rest.push(c);
            continue;
        }
        let elems = match c {
            Formula::Or(xs) => flatten_or(xs),
            other => vec![other],
        };
        let mut lit: Option<(bool, Vec<Term>)> = None;
        let mut others = Vec::new();
        for e in elems {
            match &e {
                Formula::Lifted(sym, args) if sym == p => {
                    if lit.is_some() {
                        return None;
                    }
                    lit = Some((true, args.clone()));
                }
                Formula::Not(inner) => {
                    if let Formula::Lifted(sym, args) = &**inner {
                        if sym == p {
                            if lit.is_some() {
                                return None;
                            }
                            lit = Some((false, args.clone()));
                            continue;
                        }
                    }
                    if e.mentions_lifted(p) {
                        return None;
                    }
                    others.push(e);
                }
                _ => {
                    if e.mentions_lifted(p) {
                        return None;
                    }
                    others.push(e);
                }
            }
        }
        let (positive, args) = lit?;
        let cond = Formula::disj(others);
        let slot = if positive { &mut pos } else { &mut neg };
        if slot.is_some() {
            return None;
        }
        *slot = Some((args, cond));
    }
    let target = match (&pos, &neg) {
        (Some((a, _)), Some((b, _))) => {
            if a != b {
                return None;
            }
            Some((p.to_string(), a.clone()))
        }
        (Some((a, _)), None) | (None, Some((a, _))) => Some((p.to_string(), a.clone())),
        (None, None) => None,
    };
    Some(GoodForm {
        target,
        psi_pos: pos.map(|(_, c)| c).unwrap_or(Formula::True),
        psi_neg: neg.map(|(_, c)| c).unwrap_or(Formula::True),
        rest: Formula::conj(rest),
    })
}

// ---------------------------------------------------------------------
// Dependency graph
// ---------------------------------------------------------------------

/// The fluent dependency graph for a ground action: an edge `F → F'` when
/// `F` is non-local and `F'`'s atoms occur in `F`'s instantiated effect
/// conditions (dead branches pruned first under `una`).
#[derive(Debug, Clone, Serialize)]
pub struct DepGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
    /// Nodes on or downstream of a cycle; empty iff the graph is acyclic.
    pub cycle: Vec<String>,
    /// Longest path in edges (0 when cyclic or edge-free).
    pub depth: usize,
    /// Topological order of the non-local fluents, sources first,
    /// lexicographic tie-break; absent when cyclic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nle_order: Option<Vec<String>>,
}

impl DepGraph {
    pub fn cyclic(&self) -> bool {
        !self.cycle.is_empty()
    }
}

pub fn dependency_graph(
    bat: &Bat,
    alpha: &GroundAction,
    una: bool,
) -> Result<DepGraph, BatError> {
    let (_, nle, _) = fluent_split(bat, alpha)?;
    let nle_set: BTreeSet<&String> = nle.iter().collect();
    let nodes: Vec<String> = bat.vocab.fluents.keys().cloned().collect();
    let index: BTreeMap<&str, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let mut edges = Vec::new();
    for f in &nle {
        let mut targets = BTreeSet::new();
        for sign in [Sign::Pos, Sign::Neg] {
            let gamma = prune_gamma(&bat.instantiate_gamma(f, sign, alpha, false)?, una);
            targets.extend(mentioned_fluents(&gamma));
        }
        for t in targets {
            edges.push((f.clone(), t));
        }
    }

    // Kahn's algorithm, popping the lexicographically least ready vertex
    // (node order is already sorted, so index order is name order).
    let n = nodes.len();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b) in &edges {
        let (i, j) = (index[a.as_str()], index[b.as_str()]);
        indeg[j] += 1;
        out[i].push(j);
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        order.push(i);
        for &j in &out[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.insert(j);
            }
        }
    }
    let cycle: Vec<String> = if order.len() == n {
        Vec::new()
    } else {
        let done: BTreeSet<usize> = order.iter().copied().collect();
        (0..n)
            .filter(|i| !done.contains(i))
            .map(|i| nodes[i].clone())
            .collect()
    };
    let (depth, nle_order) = if cycle.is_empty() {
        // Longest path: relax out-edges in topological order.
        let mut dist = vec![0usize; n];
        let mut depth = 0;
        for &i in &order {
            for &j in &out[i] {
                dist[j] = dist[j].max(dist[i] + 1);
                depth = depth.max(dist[j]);
            }
        }
        let nle_order = order
            .iter()
            .map(|&i| &nodes[i])
            .filter(|n| nle_set.contains(n))
            .cloned()
            .collect();
        (depth, Some(nle_order))
    } else {
        (0, None)
    };
    Ok(DepGraph {
        nodes,
        edges,
        cycle,
        depth,
        nle_order,
    })
}

impl DepGraph {
    /// Graphviz rendering; non-local fluents are drawn as boxes.
    pub fn to_dot(&self, nle: &BTreeSet<String>) -> String {
        let mut out = String::from("digraph fluents {\n");
        for n in &self.nodes {
            let shape = if nle.contains(n) { "box" } else { "ellipse" };
            out.push_str(&format!("  \"{n}\" [shape={shape}];\n"));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

// ---------------------------------------------------------------------
// Class verdict
// ---------------------------------------------------------------------

/// Lifted, conjunct-split view of the initial KB that the shape checks and
/// the staged pipelines share: sugar removed, each sentence closed, initial
/// atoms lifted, and top-level conjunctions split into separate sentences
/// (so a biconditional definition becomes its two clause halves).
pub fn lifted_init(bat: &Bat) -> Vec<Formula> {
    bat.init
        .iter()
        .flat_map(|f| {
            f.desugar()
                .close()
                .lift_at(&SitTerm::S0)
                .split_conjuncts()
        })
        .collect()
}

/// Classifies the BAT relative to `alpha`. `una` controls dead-branch
/// pruning in the dependency analysis (matching the pipeline's own
/// simplification mode).
pub fn classify(bat: &Bat, alpha: &GroundAction, una: bool) -> Result<Verdict, BatError> {
    let (le, nle, le_witnesses) = fluent_split(bat, alpha)?;
    let graph = dependency_graph(bat, alpha, una)?;
    let init = lifted_init(bat);
    let nle_set: BTreeSet<String> = nle.iter().cloned().collect();

    let local_effect = match nle.first() {
        None => ClassCheck::ok(),
        Some(f) => ClassCheck::no(format!("{f} is not local-effect: {}", le_witnesses[f])),
    };

    // Shared side condition for the staged pipelines: effect conditions of
    // local-effect fluents must not mention non-local fluents, or the local
    // substitution stage would reintroduce eliminated predicates.
    let mut shared_witness: Option<String> = None;
    'outer: for f in &le {
        for sign in [Sign::Pos, Sign::Neg] {
            let gamma = prune_gamma(&bat.instantiate_gamma(f, sign, alpha, false)?, una);
            if let Some(bad) = mentioned_fluents(&gamma).iter().find(|g| nle_set.contains(*g)) {
                shared_witness = Some(format!(
                    "{} of local-effect fluent {f} mentions non-local fluent {bad}",
                    sign.label()
                ));
                break 'outer;
            }
        }
    }

    let normal = (|| -> Result<ClassCheck, BatError> {
        if let Some(w) = &shared_witness {
            return Ok(ClassCheck::no(w.clone()));
        }
        for f in &nle {
            for sign in [Sign::Pos, Sign::Neg] {
                let gamma = prune_gamma(&bat.instantiate_gamma(f, sign, alpha, false)?, una);
                if let Some(bad) =
                    mentioned_fluents(&gamma).iter().find(|g| nle_set.contains(*g))
                {
                    return Ok(ClassCheck::no(format!(
                        "{} of {f} mentions non-local fluent {bad}; a normal action's \
                         non-local conditions may mention only local-effect fluents",
                        sign.label()
                    )));
                }
            }
            if let Some(w) = semidef_witness(&init, f) {
                return Ok(ClassCheck::no(format!(
                    "initial KB is not semi-definitional wrt {f}: {w}"
                )));
            }
        }
        Ok(ClassCheck::ok())
    })()?;

    let acyclic = (|| -> Result<ClassCheck, BatError> {
        if let Some(w) = &shared_witness {
            return Ok(ClassCheck::no(w.clone()));
        }
        if graph.cyclic() {
            return Ok(ClassCheck::no(format!(
                "dependency graph is cyclic (among {})",
                graph.cycle.join(", ")
            )));
        }
        for f in &nle {
            for sign in [Sign::Pos, Sign::Neg] {
                let gamma = prune_gamma(&bat.instantiate_gamma(f, sign, alpha, false)?, una)
                    .lift_at(&SitTerm::S0);
                let targets: Vec<String> = mentioned_fluents(&gamma)
                    .into_iter()
                    .filter(|g| nle_set.contains(g))
                    .collect();
                if targets.len() > 1 {
                    return Ok(ClassCheck::no(format!(
                        "{} of {f} mentions {} non-local fluents ({}); at most one \
                         good-form target is allowed per sign",
                        sign.label(),
                        targets.len(),
                        targets.join(", ")
                    )));
                }
                if let Some(target) = targets.first() {
                    if is_good_form(&gamma, target).is_none() {
                        return Ok(ClassCheck::no(format!(
                            "{} of {f} is not in good form wrt {target}",
                            sign.label()
                        )));
                    }
                }
            }
        }
        // Separability: each initial sentence mentions at most one non-local
        // fluent, and is semi-definitional wrt it.
        for sentence in &init {
            let mentioned: Vec<&String> = nle
                .iter()
                .filter(|f| sentence.mentions_lifted(f))
                .collect();
            if mentioned.len() > 1 {
                return Ok(ClassCheck::no(format!(
                    "initial sentence {sentence} mentions {} non-local fluents ({}); \
                     separability requires at most one",
                    mentioned.len(),
                    mentioned
                        .iter()
                        .map(|s| s.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                )));
            }
            if let Some(f) = mentioned.first() {
                if let Err(w) = clause_split(sentence, f) {
                    return Ok(ClassCheck::no(format!(
                        "initial sentence {sentence} is not semi-definitional wrt {f}: {w}"
                    )));
                }
            }
        }
        Ok(ClassCheck::ok())
    })()?;

    let omega_size = bat.characteristic_set(&le, alpha)?.len();

    Ok(Verdict {
        le_fluents: le,
        nle_fluents: nle,
        local_effect,
        normal,
        acyclic,
        depth: graph.depth,
        elimination_order: graph.nle_order,
        omega_size,
    })
}

// ---------------------------------------------------------------------
// Fragments
// ---------------------------------------------------------------------

/// Fewest variable names needed to write `f` structure-preservingly: the
/// maximum, over quantifier subformulas `Qv.b`, of `|FV(b) ∪ {v}|`, and the
/// free-variable count of `f` itself. Internals rename binders apart, so
/// surface name counts are meaningless; this width is what "uses at most
/// two variable names" denotes.
pub fn quantifier_width(f: &Formula) -> usize {
    fn go(f: &Formula, acc: &mut usize) {
        match f {
            Formula::True
            | Formula::False
            | Formula::Fluent(..)
            | Formula::Rigid(..)
            | Formula::Lifted(..)
            | Formula::Eq(..) => {}
            Formula::Not(p) => go(p, acc),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| go(x, acc)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                go(a, acc);
                go(b, acc);
            }
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let mut fv = b.free_vars();
                fv.insert(v.clone());
                *acc = (*acc).max(fv.len());
                go(b, acc);
            }
        }
    }
    let mut acc = f.free_vars().len();
    go(f, &mut acc);
    acc
}

/// Two-variable fragment: every sentence has quantifier width ≤ 2 and every
/// predicate has object arity ≤ 2. Returns the first offender.
pub fn check_fo2(theory: &[Formula]) -> Result<(), String> {
    let mut usage = SymbolUsage::default();
    for f in theory {
        f.collect_symbols(&mut usage);
    }
    for (sym, arity) in usage.fluents.iter().chain(usage.rigids.iter()) {
        if *arity > 2 {
            return Err(format!("{sym} has object arity {arity} > 2"));
        }
    }
    for f in theory {
        let w = quantifier_width(f);
        if w > 2 {
            return Err(format!("{f} needs {w} variable names"));
        }
    }
    Ok(())
}

/// Universal theories with constants: every sentence is a run of universal
/// quantifiers over a quantifier-free matrix. Returns the first offender.
pub fn check_utc(theory: &[Formula]) -> Result<(), String> {
    fn quantifier_free(f: &Formula) -> bool {
        match f {
            Formula::True
            | Formula::False
            | Formula::Fluent(..)
            | Formula::Rigid(..)
            | Formula::Lifted(..)
            | Formula::Eq(..) => true,
            Formula::Not(p) => quantifier_free(p),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().all(quantifier_free),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                quantifier_free(a) && quantifier_free(b)
            }
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }
    for f in theory {
        let (_, matrix) = f.clone().strip_foralls();
        if !quantifier_free(&matrix) {
            return Err(format!("{f} is not a universal sentence"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_allows_variable_reuse() {
        // forall x (P(x) -> exists x Q(x)) needs one name.
        let f = Formula::forall(
            "x",
            Formula::lifted("P", vec![Term::var("x")])
                .implies(Formula::exists("x", Formula::lifted("Q", vec![Term::var("x")]))),
        );
        assert_eq!(quantifier_width(&f), 1);
    }

    #[test]
    fn width_counts_simultaneous_frees() {
        // exists z (R(x,y) & z=z) pins three names at the quantifier.
        let f = Formula::exists(
            "z",
            Formula::conj(vec![
                Formula::rigid("R", vec![Term::var("x"), Term::var("y")]),
                Formula::eq(Term::var("z"), Term::var("z")),
            ]),
        );
        assert_eq!(quantifier_width(&f), 3);
    }
}
