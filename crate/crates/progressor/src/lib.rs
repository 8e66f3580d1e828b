//! First-order progression for situation-calculus basic action theories.
//!
//! A *basic action theory* (BAT) describes a dynamic world by an initial
//! knowledge base (sentences uniform in the initial situation `S0`) plus one
//! successor-state axiom per fluent:
//!
//! ```text
//! F(x⃗, do(a, s)) ≡ γ⁺_F(x⃗, a, s) ∨ (¬γ⁻_F(x⃗, a, s) ∧ F(x⃗, s))
//! ```
//!
//! *Progression* answers: after executing a ground action `α`, what is a new
//! knowledge base, uniform in the successor situation `Sα = do(α, S0)`, that
//! carries exactly the same information about the future? In general this
//! requires second-order logic, but for three increasingly liberal classes of
//! BATs a first-order progression exists and can be computed with size
//! guarantees:
//!
//! * **local-effect** ([`classify::ActionClass::LocalEffect`]): every action
//!   names the objects it affects among its arguments; progression is a
//!   disjunction over the finitely many affected ground atoms.
//! * **normal** ([`classify::ActionClass::Normal`]): non-local fluents depend
//!   only on local ones and the initial KB is semi-definitional in them;
//!   progression eliminates each non-local predicate by an Ackermann-style
//!   resolution step and grows at most quadratically.
//! * **acyclic** ([`classify::ActionClass::Acyclic`]): non-local fluents may
//!   depend on each other along a DAG; progression processes them in
//!   topological order, rewriting "good form" effect conditions into
//!   semi-definitional shape, with growth bounded in the DAG depth.
//!
//! Every computed progression can be *certified* against a brute-force oracle
//! ([`oracle`]) that enumerates finite structures over bounded domains and
//! compares the models of the result with the models of the second-order
//! definition of progression (forgetting the initial-situation predicates).
//!
//! Two decidable fragments are tracked through the pipeline: **FO²** (two
//! variable names, object arity ≤ 2) and **UTC** (universally quantified
//! prefix over a quantifier-free matrix with constants only). When requested,
//! every intermediate rewrite routes through a fragment-preserving variant so
//! membership is closed under progression.
//!
//! Start with [`parse::parse_bat_str`], [`classify::classify`],
//! [`progress::progress`], and [`oracle::check_progression`]; the
//! `examples/` directory exercises each capability end to end.

pub mod bat;
pub mod classify;
pub mod cli;
pub mod forget;
pub mod formula;
pub mod generate;
pub mod oracle;
pub mod parse;
pub mod progress;
pub mod report;
pub mod sexpr;

pub use bat::{Bat, SsaEntry, Vocabulary};
pub use classify::{classify, ActionClass, Verdict};
pub use formula::GroundAction;
pub use formula::{Formula, SitTerm, Term};
pub use progress::{progress, Fragment, Method, ProgressOptions, ProgressionResult};
