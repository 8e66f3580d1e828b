//! Brute-force certification over bounded domains.
//!
//! A finite structure interprets a [`Shape`] — object constants plus rigid
//! and fluent predicate symbols, the fluents with *two* tables each (initial
//! extension, read by atoms at `S0` and by lifted atoms, and successor
//! extension, read by atoms at `do(α, S0)`). Tables are bitmasks over the
//! tuple index space `n^arity`, so domains up to 4 and arities up to 2 fit
//! comfortably in a word.
//!
//! Checks enumerate the whole structure space when it fits the budget
//! (`2^24` candidates by default) and otherwise fall back to seeded random
//! sampling — reported as non-exhaustive ("probabilistic pass"). Under
//! `una`, object constants take pairwise-distinct values (domains smaller
//! than the constant count admit no structures at all: checks pass
//! vacuously and report zero structures).
//!
//! The progression check compares *reduct sets*: for every interpretation of
//! constants, rigids, and successor tables, the result theory must hold
//! exactly when **some** initial extension satisfies the lifted definition
//! (initial knowledge base plus every instantiated successor-state axiom).
//! This is precisely "the result and the second-order progression have the
//! same models that forget the initial tables".

use rayon::prelude::*;

use rand::{distributions::Uniform, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bat::Bat;
use crate::formula::{Formula, GroundAction, SitTerm, SymbolUsage, Term};

/// Symbols a finite structure must interpret.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Shape {
    pub consts: Vec<String>,
    pub rigids: Vec<(String, usize)>,
    pub fluents: Vec<(String, usize)>,
}

impl Shape {
    /// Everything the BAT declares (unused rigids included: unique names
    /// range over all declared constants).
    pub fn from_bat(bat: &Bat) -> Shape {
        let mut consts = bat.vocab.consts.clone();
        consts.sort();
        Shape {
            consts,
            rigids: bat.vocab.rigids.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            fluents: bat.vocab.fluents.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }

    /// Just the symbols the given formulas use (lifted atoms register their
    /// fluent symbol).
    pub fn from_formulas<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Shape {
        let mut usage = SymbolUsage::default();
        for f in fs {
            f.collect_symbols(&mut usage);
        }
        Shape {
            consts: usage.consts.into_iter().collect(),
            rigids: usage.rigids.into_iter().collect(),
            fluents: usage.fluents.into_iter().collect(),
        }
    }

    fn fluent_index(&self, sym: &str) -> Option<usize> {
        self.fluents.iter().position(|(s, _)| s == sym)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("symbol {sym} needs {bits} table bits on domain {n} (max 64)")]
    TableTooLarge { sym: String, bits: u128, n: usize },
    #[error("free situation variable in atom {0}")]
    FreeSituationVar(String),
    #[error("unsupported situation term {0} (expected S0 or the successor situation)")]
    UnsupportedSituation(String),
    #[error("constant {0} not in shape")]
    UnknownConst(String),
    #[error("theory mentions {0} which must already be eliminated")]
    UnexpectedSymbol(String),
    #[error("result theory is not uniform in {expected}: {detail}")]
    NotUniform { expected: String, detail: String },
}

/// Options shared by every oracle check.
#[derive(Debug, Clone, Copy)]
pub struct OracleOpts {
    /// Checks run on every domain size `1..=n_max`.
    pub n_max: usize,
    /// Unique names for object constants.
    pub una: bool,
    /// Enumerate exhaustively up to this many candidate structures per
    /// domain size; beyond it, sample.
    pub budget: u128,
    /// Sample count when over budget.
    pub samples: u64,
    pub seed: u64,
}

impl Default for OracleOpts {
    fn default() -> Self {
        OracleOpts {
            n_max: 3,
            una: true,
            budget: 1 << 24,
            samples: 20_000,
            seed: 0xBAC0_5EED,
        }
    }
}

/// Verdict of a check.
#[derive(Debug, Clone)]
pub enum Outcome {
    Holds { structures: u128, exhaustive: bool },
    Fails(Witness),
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds { .. })
    }
}

/// A differing structure, rendered for diagnostics.
#[derive(Debug, Clone)]
pub struct Witness {
    pub n: usize,
    pub reason: String,
    pub structure: String,
}

// ---------------------------------------------------------------------
// Compiled formulas
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum TableRef {
    Rigid(usize),
    S0(usize),
    Sa(usize),
}

#[derive(Debug, Clone, Copy)]
enum CArg {
    /// de Bruijn level: index into the quantifier environment.
    Var(usize),
    /// Index into the constant assignment.
    Const(usize),
}

#[derive(Debug, Clone)]
enum CForm {
    True,
    False,
    Atom(TableRef, Vec<CArg>),
    Eq(CArg, CArg),
    Not(Box<CForm>),
    And(Vec<CForm>),
    Or(Vec<CForm>),
    Exists(Box<CForm>),
    Forall(Box<CForm>),
}

/// One structure's tables, borrowed for evaluation.
#[derive(Debug, Clone, Copy)]
struct Tabs<'a> {
    n: usize,
    consts: &'a [usize],
    rigids: &'a [u64],
    s0: &'a [u64],
    sa: &'a [u64],
}

/// Compiles a *sentence* (closed first) for evaluation. Fluent atoms at `S0`
/// and lifted atoms read the initial tables; atoms at `target` read the
/// successor tables; anything else is an error.
fn compile(
    f: &Formula,
    shape: &Shape,
    target: Option<&SitTerm>,
) -> Result<CForm, OracleError> {
    fn go(
        f: &Formula,
        shape: &Shape,
        target: Option<&SitTerm>,
        scope: &mut Vec<String>,
    ) -> Result<CForm, OracleError> {
        let arg = |t: &Term, scope: &Vec<String>| -> Result<CArg, OracleError> {
            match t {
                Term::Var(v) => Ok(CArg::Var(
                    scope
                        .iter()
                        .rposition(|s| s == v)
                        .expect("sentence closed before compilation"),
                )),
                Term::Const(c) => shape
                    .consts
                    .iter()
                    .position(|d| d == c)
                    .map(CArg::Const)
                    .ok_or_else(|| OracleError::UnknownConst(c.clone())),
            }
        };
        Ok(match f {
            Formula::True => CForm::True,
            Formula::False => CForm::False,
            Formula::Eq(a, b) => CForm::Eq(arg(a, scope)?, arg(b, scope)?),
            Formula::Rigid(sym, ts) => {
                let i = shape
                    .rigids
                    .iter()
                    .position(|(s, _)| s == sym)
                    .ok_or_else(|| OracleError::UnexpectedSymbol(sym.clone()))?;
                CForm::Atom(
                    TableRef::Rigid(i),
                    ts.iter().map(|t| arg(t, scope)).collect::<Result<_, _>>()?,
                )
            }
            Formula::Lifted(sym, ts) => {
                let i = shape
                    .fluent_index(sym)
                    .ok_or_else(|| OracleError::UnexpectedSymbol(sym.clone()))?;
                CForm::Atom(
                    TableRef::S0(i),
                    ts.iter().map(|t| arg(t, scope)).collect::<Result<_, _>>()?,
                )
            }
            Formula::Fluent(sym, ts, sit) => {
                let i = shape
                    .fluent_index(sym)
                    .ok_or_else(|| OracleError::UnexpectedSymbol(sym.clone()))?;
                let table = if *sit == SitTerm::S0 {
                    TableRef::S0(i)
                } else if Some(sit) == target {
                    TableRef::Sa(i)
                } else if matches!(sit, SitTerm::Var(_)) {
                    return Err(OracleError::FreeSituationVar(f.to_string()));
                } else {
                    return Err(OracleError::UnsupportedSituation(sit.to_string()));
                };
                CForm::Atom(
                    table,
                    ts.iter().map(|t| arg(t, scope)).collect::<Result<_, _>>()?,
                )
            }
            Formula::Not(p) => CForm::Not(Box::new(go(p, shape, target, scope)?)),
            Formula::And(xs) => CForm::And(
                xs.iter()
                    .map(|x| go(x, shape, target, scope))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Or(xs) => CForm::Or(
                xs.iter()
                    .map(|x| go(x, shape, target, scope))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Implies(..) | Formula::Iff(..) => unreachable!("desugared"),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                scope.push(v.clone());
                let body = go(b, shape, target, scope)?;
                scope.pop();
                if matches!(f, Formula::Exists(..)) {
                    CForm::Exists(Box::new(body))
                } else {
                    CForm::Forall(Box::new(body))
                }
            }
        })
    }
    go(&f.close().desugar(), shape, target, &mut Vec::new())
}

fn eval(cf: &CForm, t: Tabs<'_>, env: &mut Vec<usize>) -> bool {
    match cf {
        CForm::True => true,
        CForm::False => false,
        CForm::Atom(table, args) => {
            let mut idx = 0usize;
            let mut mul = 1usize;
            for a in args {
                let v = match a {
                    CArg::Var(i) => env[*i],
                    CArg::Const(i) => t.consts[*i],
                };
                idx += v * mul;
                mul *= t.n;
            }
            let bits = match table {
                TableRef::Rigid(i) => t.rigids[*i],
                TableRef::S0(i) => t.s0[*i],
                TableRef::Sa(i) => t.sa[*i],
            };
            (bits >> idx) & 1 == 1
        }
        CForm::Eq(a, b) => {
            let v = |x: &CArg| match x {
                CArg::Var(i) => env[*i],
                CArg::Const(i) => t.consts[*i],
            };
            v(a) == v(b)
        }
        CForm::Not(p) => !eval(p, t, env),
        CForm::And(xs) => xs.iter().all(|x| eval(x, t, env)),
        CForm::Or(xs) => xs.iter().any(|x| eval(x, t, env)),
        CForm::Exists(b) => {
            for v in 0..t.n {
                env.push(v);
                let r = eval(b, t, env);
                env.pop();
                if r {
                    return true;
                }
            }
            false
        }
        CForm::Forall(b) => {
            for v in 0..t.n {
                env.push(v);
                let r = eval(b, t, env);
                env.pop();
                if !r {
                    return false;
                }
            }
            true
        }
    }
}

fn eval_all(cfs: &[CForm], t: Tabs<'_>) -> bool {
    let mut env = Vec::with_capacity(8);
    cfs.iter().all(|cf| eval(cf, t, &mut env))
}

// ---------------------------------------------------------------------
// Structure spaces
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Consts,
    Rigid(usize),
    S0(usize),
    Sa(usize),
}

/// A mixed-radix enumeration over a chosen subset of a structure's slots.
#[derive(Debug, Clone)]
struct Space {
    n: usize,
    una: bool,
    const_count: usize,
    dims: Vec<(Slot, u128)>,
}

/// All tables of one structure (owned; the spaces fill the slots they own).
#[derive(Debug, Clone, Default)]
struct Assign {
    consts: Vec<usize>,
    rigids: Vec<u64>,
    s0: Vec<u64>,
    sa: Vec<u64>,
}

impl Assign {
    fn for_shape(shape: &Shape) -> Assign {
        Assign {
            consts: vec![0; shape.consts.len()],
            rigids: vec![0; shape.rigids.len()],
            s0: vec![0; shape.fluents.len()],
            sa: vec![0; shape.fluents.len()],
        }
    }

    fn tabs(&self, n: usize) -> Tabs<'_> {
        Tabs {
            n,
            consts: &self.consts,
            rigids: &self.rigids,
            s0: &self.s0,
            sa: &self.sa,
        }
    }
}

fn injective_count(n: usize, k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k {
        c *= (n.saturating_sub(i)) as u128;
    }
    c
}

impl Space {
    fn new(shape: &Shape, n: usize, una: bool, slots: &[Slot]) -> Result<Space, OracleError> {
        let mut dims = Vec::new();
        for slot in slots {
            let count = match slot {
                Slot::Consts => {
                    if una {
                        injective_count(n, shape.consts.len())
                    } else {
                        (n as u128).pow(shape.consts.len() as u32)
                    }
                }
                Slot::Rigid(i) => table_count(&shape.rigids[*i].0, shape.rigids[*i].1, n)?,
                Slot::S0(i) | Slot::Sa(i) => {
                    table_count(&shape.fluents[*i].0, shape.fluents[*i].1, n)?
                }
            };
            dims.push((*slot, count));
        }
        Ok(Space {
            n,
            una,
            const_count: shape.consts.len(),
            dims,
        })
    }

    fn count(&self) -> u128 {
        self.dims
            .iter()
            .map(|(_, c)| *c)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    fn decode(&self, mut idx: u128, out: &mut Assign) {
        for (slot, count) in &self.dims {
            let digit = idx % count;
            idx /= count;
            match slot {
                Slot::Consts => decode_consts(
                    digit,
                    self.n,
                    self.const_count,
                    self.una,
                    &mut out.consts,
                ),
                Slot::Rigid(i) => out.rigids[*i] = digit as u64,
                Slot::S0(i) => out.s0[*i] = digit as u64,
                Slot::Sa(i) => out.sa[*i] = digit as u64,
            }
        }
    }
}

fn table_count(sym: &str, arity: usize, n: usize) -> Result<u128, OracleError> {
    let tuples = (n as u128).pow(arity as u32);
    if tuples > 64 {
        return Err(OracleError::TableTooLarge {
            sym: sym.to_string(),
            bits: tuples,
            n,
        });
    }
    Ok(1u128 << tuples)
}

fn decode_consts(mut idx: u128, n: usize, k: usize, una: bool, out: &mut [usize]) {
    if una {
        // Factorial number system over the shrinking pool of unused values.
        let mut pool: Vec<usize> = (0..n).collect();
        for slot in out.iter_mut().take(k) {
            let m = pool.len() as u128;
            let d = (idx % m) as usize;
            idx /= m;
            *slot = pool.remove(d);
        }
    } else {
        for slot in out.iter_mut().take(k) {
            *slot = (idx % n as u128) as usize;
            idx /= n as u128;
        }
    }
}

// ---------------------------------------------------------------------
// Generic scan driver
// ---------------------------------------------------------------------

/// Applies `test` to every index of `space` (or a seeded sample when the
/// count exceeds the budget), returning the first witness in index order.
fn scan<F>(space: &Space, opts: &OracleOpts, test: F) -> (Option<Witness>, u128, bool)
where
    F: Fn(u128) -> Option<Witness> + Sync,
{
    let count = space.count();
    if count == 0 {
        return (None, 0, true);
    }
    if count <= opts.budget {
        let hit = (0..count as u64)
            .into_par_iter()
            .find_map_first(|i| test(i as u128));
        (hit, count, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (space.n as u64).rotate_left(17));
        let dist = Uniform::new(0u128, count);
        let indices: Vec<u128> = (0..opts.samples).map(|_| rng.sample(dist)).collect();
        let hit = indices.par_iter().find_map_first(|&i| test(i));
        (hit, opts.samples as u128, false)
    }
}

fn render(shape: &Shape, a: &Assign, n: usize) -> String {
    let mut parts = vec![format!("domain {{0..{}}}", n - 1)];
    for (i, c) in shape.consts.iter().enumerate() {
        parts.push(format!("{c}={}", a.consts[i]));
    }
    let tuples = |bits: u64, arity: usize| -> String {
        let total = n.pow(arity as u32);
        let mut out = Vec::new();
        for idx in 0..total {
            if (bits >> idx) & 1 == 1 {
                let mut t = Vec::new();
                let mut rest = idx;
                for _ in 0..arity {
                    t.push((rest % n).to_string());
                    rest /= n;
                }
                out.push(format!("({})", t.join(",")));
            }
        }
        format!("{{{}}}", out.join(","))
    };
    for (i, (r, arity)) in shape.rigids.iter().enumerate() {
        parts.push(format!("{r}={}", tuples(a.rigids[i], *arity)));
    }
    for (i, (f, arity)) in shape.fluents.iter().enumerate() {
        parts.push(format!("{f}@S0={}", tuples(a.s0[i], *arity)));
        parts.push(format!("{f}@succ={}", tuples(a.sa[i], *arity)));
    }
    parts.join("; ")
}

fn all_slots(shape: &Shape) -> Vec<Slot> {
    let mut slots = sentence_slots(shape);
    slots.extend((0..shape.fluents.len()).map(Slot::Sa));
    slots
}

/// Slots a theory compiled without a successor target can reference:
/// successor tables are unreachable there, and enumerating them would
/// multiply the scan by their full count for identical results.
fn sentence_slots(shape: &Shape) -> Vec<Slot> {
    let mut slots = vec![Slot::Consts];
    slots.extend((0..shape.rigids.len()).map(Slot::Rigid));
    slots.extend((0..shape.fluents.len()).map(Slot::S0));
    slots
}

fn compile_theory(
    theory: &[Formula],
    shape: &Shape,
    target: Option<&SitTerm>,
) -> Result<Vec<CForm>, OracleError> {
    theory.iter().map(|f| compile(f, shape, target)).collect()
}

// ---------------------------------------------------------------------
// Public checks
// ---------------------------------------------------------------------

/// Are the two theories satisfied by exactly the same structures (over the
/// union of their symbols, domains `1..=n_max`)?
pub fn equivalent(a: &[Formula], b: &[Formula], opts: &OracleOpts) -> Result<Outcome, OracleError> {
    let shape = Shape::from_formulas(a.iter().chain(b));
    let mut total = 0u128;
    let mut exhaustive = true;
    for n in 1..=opts.n_max {
        let ca = compile_theory(a, &shape, None)?;
        let cb = compile_theory(b, &shape, None)?;
        let space = Space::new(&shape, n, opts.una, &sentence_slots(&shape))?;
        let (hit, checked, ex) = scan(&space, opts, |idx| {
            let mut assign = Assign::for_shape(&shape);
            space.decode(idx, &mut assign);
            let tabs = assign.tabs(n);
            let ra = eval_all(&ca, tabs);
            let rb = eval_all(&cb, tabs);
            (ra != rb).then(|| Witness {
                n,
                reason: format!(
                    "first theory {}, second theory {}",
                    if ra { "holds" } else { "fails" },
                    if rb { "holds" } else { "fails" }
                ),
                structure: render(&shape, &assign, n),
            })
        });
        if let Some(w) = hit {
            return Ok(Outcome::Fails(w));
        }
        total += checked;
        exhaustive &= ex;
    }
    Ok(Outcome::Holds {
        structures: total,
        exhaustive,
    })
}

/// Does `theory` entail `conclusion` on every bounded domain?
pub fn entails(
    theory: &[Formula],
    conclusion: &Formula,
    opts: &OracleOpts,
) -> Result<Outcome, OracleError> {
    entails_core(theory, conclusion, None, opts)
}

/// [`entails`] for theories and conclusions that mention fluents at the
/// successor situation `target` (compiled to the successor tables), e.g.
/// queries about the state after the action.
pub fn entails_at(
    theory: &[Formula],
    conclusion: &Formula,
    target: &SitTerm,
    opts: &OracleOpts,
) -> Result<Outcome, OracleError> {
    entails_core(theory, conclusion, Some(target), opts)
}

fn entails_core(
    theory: &[Formula],
    conclusion: &Formula,
    target: Option<&SitTerm>,
    opts: &OracleOpts,
) -> Result<Outcome, OracleError> {
    let shape = Shape::from_formulas(theory.iter().chain([conclusion]));
    let mut total = 0u128;
    let mut exhaustive = true;
    for n in 1..=opts.n_max {
        let ct = compile_theory(theory, &shape, target)?;
        let cc = compile(conclusion, &shape, target)?;
        let space = Space::new(&shape, n, opts.una, &sentence_slots(&shape))?;
        let (hit, checked, ex) = scan(&space, opts, |idx| {
            let mut assign = Assign::for_shape(&shape);
            space.decode(idx, &mut assign);
            let tabs = assign.tabs(n);
            (eval_all(&ct, tabs) && !eval(&cc, tabs, &mut Vec::new())).then(|| Witness {
                n,
                reason: "theory holds but conclusion fails".into(),
                structure: render(&shape, &assign, n),
            })
        });
        if let Some(w) = hit {
            return Ok(Outcome::Fails(w));
        }
        total += checked;
        exhaustive &= ex;
    }
    Ok(Outcome::Holds {
        structures: total,
        exhaustive,
    })
}

/// Is `theory` satisfiable on some domain `1..=n_max`? Returns the witness
/// structure if so. Only exhaustive spaces give a definitive "no".
pub fn satisfiable(theory: &[Formula], opts: &OracleOpts) -> Result<Option<Witness>, OracleError> {
    let shape = Shape::from_formulas(theory.iter());
    for n in 1..=opts.n_max {
        let ct = compile_theory(theory, &shape, None)?;
        let space = Space::new(&shape, n, opts.una, &sentence_slots(&shape))?;
        let (hit, _, _) = scan(&space, opts, |idx| {
            let mut assign = Assign::for_shape(&shape);
            space.decode(idx, &mut assign);
            eval_all(&ct, assign.tabs(n)).then(|| Witness {
                n,
                reason: "satisfying structure".into(),
                structure: render(&shape, &assign, n),
            })
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Counts models of `theory` on the exact domain size `n` (over the symbols
/// the theory uses). Errors if the space exceeds the budget — counting must
/// be exhaustive to mean anything.
pub fn count_models(
    theory: &[Formula],
    n: usize,
    opts: &OracleOpts,
) -> Result<u128, OracleError> {
    let shape = Shape::from_formulas(theory.iter());
    let ct = compile_theory(theory, &shape, None)?;
    let space = Space::new(&shape, n, opts.una, &sentence_slots(&shape))?;
    let count = space.count();
    if count > opts.budget {
        return Err(OracleError::TableTooLarge {
            sym: format!("model space of {count} structures"),
            bits: count,
            n,
        });
    }
    Ok((0..count as u64)
        .into_par_iter()
        .filter(|&i| {
            let mut assign = Assign::for_shape(&shape);
            space.decode(i as u128, &mut assign);
            eval_all(&ct, assign.tabs(n))
        })
        .count() as u128)
}

/// Semantic check of ground-atom forgetting: `after` must hold in a
/// structure exactly when `before` holds in it or in its one-bit mutation at
/// the ground atom (`sym` lifted, `args` constants).
pub fn check_forget_ground(
    before: &[Formula],
    sym: &str,
    args: &[String],
    after: &[Formula],
    opts: &OracleOpts,
) -> Result<Outcome, OracleError> {
    let shape = Shape::from_formulas(before.iter().chain(after))
        .merged_with_consts(args);
    let p = shape
        .fluent_index(sym)
        .ok_or_else(|| OracleError::UnexpectedSymbol(sym.to_string()))?;
    let mut total = 0u128;
    let mut exhaustive = true;
    for n in 1..=opts.n_max {
        let cb = compile_theory(before, &shape, None)?;
        let ca = compile_theory(after, &shape, None)?;
        let space = Space::new(&shape, n, opts.una, &sentence_slots(&shape))?;
        let (hit, checked, ex) = scan(&space, opts, |idx| {
            let mut assign = Assign::for_shape(&shape);
            space.decode(idx, &mut assign);
            // Tuple index of the ground atom under this constant assignment.
            let mut t_idx = 0usize;
            let mut mul = 1usize;
            for c in args {
                let slot = shape.consts.iter().position(|d| d == c).unwrap();
                t_idx += assign.consts[slot] * mul;
                mul *= n;
            }
            let lhs_here = eval_all(&cb, assign.tabs(n));
            let mut flipped = assign.clone();
            flipped.s0[p] ^= 1u64 << t_idx;
            let lhs_flip = eval_all(&cb, flipped.tabs(n));
            let rhs = eval_all(&ca, assign.tabs(n));
            (rhs != (lhs_here || lhs_flip)).then(|| Witness {
                n,
                reason: format!(
                    "forgetting semantics violated: result {}, original-or-flipped {}",
                    rhs,
                    lhs_here || lhs_flip
                ),
                structure: render(&shape, &assign, n),
            })
        });
        if let Some(w) = hit {
            return Ok(Outcome::Fails(w));
        }
        total += checked;
        exhaustive &= ex;
    }
    Ok(Outcome::Holds {
        structures: total,
        exhaustive,
    })
}

/// Semantic check of predicate forgetting: `after` (which must not mention
/// `sym`) holds exactly when **some** interpretation of `sym`'s initial
/// table makes `before` hold.
pub fn check_forget_pred(
    before: &[Formula],
    sym: &str,
    after: &[Formula],
    opts: &OracleOpts,
) -> Result<Outcome, OracleError> {
    if after.iter().any(|f| f.mentions_lifted(sym) || f.mentions_fluent(sym)) {
        return Err(OracleError::UnexpectedSymbol(sym.to_string()));
    }
    let shape = Shape::from_formulas(before.iter().chain(after));
    let p = shape
        .fluent_index(sym)
        .ok_or_else(|| OracleError::UnexpectedSymbol(sym.to_string()))?;
    let outer_slots: Vec<Slot> = sentence_slots(&shape)
        .into_iter()
        .filter(|s| *s != Slot::S0(p))
        .collect();
    let mut total = 0u128;
    let mut exhaustive = true;
    for n in 1..=opts.n_max {
        let cb = compile_theory(before, &shape, None)?;
        let ca = compile_theory(after, &shape, None)?;
        let outer = Space::new(&shape, n, opts.una, &outer_slots)?;
        let inner = Space::new(&shape, n, opts.una, &[Slot::S0(p)])?;
        let inner_count = inner.count();
        let mut scan_opts = *opts;
        scan_opts.budget = opts.budget / inner_count.max(1);
        let (hit, checked, ex) = scan(&outer, &scan_opts, |idx| {
            let mut assign = Assign::for_shape(&shape);
            outer.decode(idx, &mut assign);
            let rhs = eval_all(&ca, assign.tabs(n));
            let mut lhs = false;
            let mut probe = assign.clone();
            for j in 0..inner_count {
                inner.decode(j, &mut probe);
                if eval_all(&cb, probe.tabs(n)) {
                    lhs = true;
                    break;
                }
            }
            (rhs != lhs).then(|| Witness {
                n,
                reason: format!(
                    "second-order forgetting violated: result {rhs}, exists-table {lhs}"
                ),
                structure: render(&shape, &assign, n),
            })
        });
        if let Some(w) = hit {
            return Ok(Outcome::Fails(w));
        }
        total += checked.saturating_mul(inner_count);
        exhaustive &= ex;
    }
    Ok(Outcome::Holds {
        structures: total,
        exhaustive,
    })
}

impl Shape {
    fn merged_with_consts(mut self, extra: &[String]) -> Shape {
        for c in extra {
            if !self.consts.iter().any(|d| d == c) {
                self.consts.push(c.clone());
            }
        }
        self.consts.sort();
        self
    }
}

///// The lifted definition a progression answers to: the closed initial KB
/// plus every fluent's instantiated SSA, initial-situation atoms lifted.
/// Mixes lifted and successor atoms; evaluate with the successor-aware
/// checks ([`entails_at`], [`check_progression`]).
pub fn progression_lhs(bat: &Bat, alpha: &GroundAction) -> Vec<Formula> {
    let mut lhs: Vec<Formula> = bat
        .init
        .iter()
        .map(|f| f.close().lift_at(&SitTerm::S0))
        .collect();
    for fluent in bat.vocab.fluents.keys() {
        let ssa = &bat.ssas[fluent];
        let args: Vec<Term> = ssa.params.iter().map(|p| Term::var(p.clone())).collect();
        let inst = bat
            .ssa_instance(fluent, &args, alpha, false)
            .expect("declared fluent instantiates");
        lhs.push(inst.close().lift_at(&SitTerm::S0));
    }
    lhs
}

/// Certifies a progression: over domains `1..=n_max`, for every
/// interpretation of constants, rigids, and successor tables, `result` holds
/// exactly when some initial extension satisfies the lifted definition
/// (initial KB plus all instantiated SSAs).
pub fn check_progression(
    bat: &Bat,
    alpha: &GroundAction,
    result: &[Formula],
    opts: &OracleOpts,
) -> Result<Outcome, OracleError> {
    let succ = SitTerm::succ(alpha);
    for f in result {
        if let Some(err) = f
            .lift(&succ)
            .err()
        {
            return Err(OracleError::NotUniform {
                expected: succ.to_string(),
                detail: err.to_string(),
            });
        }
        if f.has_lifted() {
            return Err(OracleError::NotUniform {
                expected: succ.to_string(),
                detail: format!("lifted atom left in {f}"),
            });
        }
    }
    let shape = Shape::from_bat(bat);
    let lhs = progression_lhs(bat, alpha);

    let reduct_slots: Vec<Slot> = all_slots(&shape)
        .into_iter()
        .filter(|s| !matches!(s, Slot::S0(_)))
        .collect();
    let s0_slots: Vec<Slot> = (0..shape.fluents.len()).map(Slot::S0).collect();

    let mut total = 0u128;
    let mut exhaustive = true;
    for n in 1..=opts.n_max {
        let cl = compile_theory(&lhs, &shape, Some(&succ))?;
        let cr = compile_theory(result, &shape, Some(&succ))?;
        let outer = Space::new(&shape, n, opts.una, &reduct_slots)?;
        let inner = Space::new(&shape, n, opts.una, &s0_slots)?;
        let inner_count = inner.count();

        // Budget covers candidate structures = reducts × initial tables; when
        // over, sample reducts (each still scanned exactly inside).
        let mut scan_opts = *opts;
        scan_opts.budget = opts.budget / inner_count.max(1);
        let (hit, checked, ex) = scan(&outer, &scan_opts, |idx| {
            let mut assign = Assign::for_shape(&shape);
            outer.decode(idx, &mut assign);
            let rhs = eval_all(&cr, assign.tabs(n));
            let mut lhs_holds = false;
            let mut probe = assign.clone();
            for j in 0..inner_count {
                inner.decode(j, &mut probe);
                if eval_all(&cl, probe.tabs(n)) {
                    lhs_holds = true;
                    break;
                }
            }
            (rhs != lhs_holds).then(|| Witness {
                n,
                reason: if rhs {
                    "result holds but no initial extension satisfies the definition".into()
                } else {
                    "an initial extension satisfies the definition but the result fails".into()
                },
                structure: render(&shape, &assign, n),
            })
        });
        if let Some(w) = hit {
            return Ok(Outcome::Fails(w));
        }
        total += checked.saturating_mul(inner_count);
        exhaustive &= ex;
    }
    Ok(Outcome::Holds {
        structures: total,
        exhaustive,
    })
}

/// Bounded-domain effect-consistency check: searches for a structure and
/// argument tuple where both `γ⁺` and `γ⁻` of some fluent fire under `α`
/// together with the (lifted) initial KB. Returns one warning per fluent
/// found inconsistent.
pub fn consistency_warnings(
    bat: &Bat,
    alpha: &GroundAction,
    opts: &OracleOpts,
) -> Result<Vec<String>, OracleError> {
    let mut warnings = Vec::new();
    for fluent in bat.vocab.fluents.keys() {
        let gp = bat
            .instantiate_gamma(fluent, crate::bat::Sign::Pos, alpha, false)
            .expect("declared fluent");
        let gn = bat
            .instantiate_gamma(fluent, crate::bat::Sign::Neg, alpha, false)
            .expect("declared fluent");
        if gp == Formula::False || gn == Formula::False {
            continue;
        }
        let both = Formula::conj(vec![gp, gn]).lift_at(&SitTerm::S0);
        let vars: Vec<String> = both.free_vars().into_iter().collect();
        let mut theory: Vec<Formula> = bat
            .init
            .iter()
            .map(|f| f.close().lift_at(&SitTerm::S0))
            .collect();
        theory.push(Formula::exists_many(&vars, both));
        if let Some(w) = satisfiable(&theory, opts)? {
            warnings.push(format!(
                "effect consistency: gamma+ and gamma- of {fluent} can fire together under {alpha} \
                 (domain {}: {})",
                w.n, w.structure
            ));
        }
    }
    Ok(warnings)
}
