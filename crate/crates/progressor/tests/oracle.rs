//! Semantic ground-truth tests for the bounded-domain checker.
//!
//! Expected values here were derived by hand from the definitions (model
//! counts over explicit table spaces, reduct-set comparisons) and are frozen:
//! the rest of the test suite trusts this module.

use progressor::formula::{Formula, Term};
use progressor::oracle::{self, OracleOpts};
use progressor::parse;

const TOGGLE: &str = "
    (vocab (const c1 c2) (fluent On 1) (action toggle 1))
    (init (On c1) (not (On c2)))
    (ssa (On x)
      (pos toggle (x) () (not (On x)))
      (neg toggle (x) () (On x)))";

fn opts(una: bool) -> OracleOpts {
    OracleOpts {
        una,
        ..OracleOpts::default()
    }
}

fn sentences(vocab_src: &str, forms: &[&str]) -> Vec<Formula> {
    let bat = parse::parse_bat_str(vocab_src).unwrap();
    forms
        .iter()
        .map(|f| {
            parse::parse_formula(
                &bat.vocab,
                &progressor::sexpr::parse_one(f).unwrap(),
                &progressor::formula::SitTerm::S0,
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn equivalent_accepts_tautology_pairs() {
    let a = sentences(TOGGLE, &["(or (On c1) (not (On c1)))"]);
    let b = sentences(TOGGLE, &["true"]);
    assert!(oracle::equivalent(&a, &b, &opts(true)).unwrap().holds());
    assert!(oracle::equivalent(&a, &b, &opts(false)).unwrap().holds());
}

#[test]
fn equivalent_distinguishes_quantifier_order() {
    // exists-forall vs forall-exists over a rigid binary relation
    let src = "(vocab (rigid R 2) (fluent F 1) (action A 0))";
    let a = sentences(src, &["(exists (x) (forall (y) (R x y)))"]);
    let b = sentences(src, &["(forall (y) (exists (x) (R x y)))"]);
    let out = oracle::equivalent(&a, &b, &opts(true)).unwrap();
    match out {
        oracle::Outcome::Fails(w) => assert_eq!(w.n, 2),
        other => panic!("expected counterexample, got {other:?}"),
    }
}

#[test]
fn entails_finds_smallest_counterexample() {
    let src = "(vocab (const c) (rigid R 1) (fluent F 1) (action A 0))";
    let t = sentences(src, &["(R c)"]);
    let concl = &sentences(src, &["(forall (x) (R x))"])[0];
    let out = oracle::entails(&t, concl, &opts(true)).unwrap();
    match out {
        oracle::Outcome::Fails(w) => assert_eq!(w.n, 2),
        other => panic!("expected counterexample, got {other:?}"),
    }
}

#[test]
fn count_models_matches_hand_count() {
    // Shape: const c, fluent P (arity 1). A structure for an
    // initial-situation sentence is (constants, initial table). Domain 1:
    // one constant value, 2 initial tables; "P(c) at S0" holds in 1.
    let src = "(vocab (const c) (fluent P 1) (action A 0))";
    let t = sentences(src, &["(P c)"]);
    assert_eq!(oracle::count_models(&t, 1, &opts(true)).unwrap(), 1);
    // Domain 2: 2 values for c, 4 initial tables; P(c)@S0 halves it.
    assert_eq!(oracle::count_models(&t, 2, &opts(true)).unwrap(), 4);
}

#[test]
fn una_flag_separates_const_spaces() {
    let src = "(vocab (const c d) (fluent P 1) (action A 0))";
    let t = sentences(src, &["(not (= c d))"]);
    // Unique names: every structure (domain >= 2) satisfies c != d.
    let out = oracle::equivalent(&t, &sentences(src, &["true"]), &opts(true)).unwrap();
    assert!(out.holds());
    // Without unique names the two theories differ (c = d is possible).
    let out = oracle::equivalent(&t, &sentences(src, &["true"]), &opts(false)).unwrap();
    assert!(!out.holds());
}

#[test]
fn toggle_progression_certified() {
    let bat = parse::parse_bat_str(TOGGLE).unwrap();
    let alpha = progressor::bat::parse_ground_action(&bat, "toggle(c1)").unwrap();
    // Hand-derived reduct set: after toggle(c1), On(c1) and On(c2) are both
    // false, unaffected elements keep their (forgotten, hence free) initial
    // value, and the initial KB's entailment c1 != c2 persists.
    let good = sentences(
        TOGGLE,
        &["(not (On c1))", "(not (On c2))", "(not (= c1 c2))"],
    );
    let succ = progressor::formula::SitTerm::succ(&alpha);
    let good: Vec<Formula> = good
        .iter()
        .map(|f| f.subst_sit(&progressor::formula::SitTerm::S0, &succ))
        .collect();
    for una in [true, false] {
        let out = oracle::check_progression(&bat, &alpha, &good, &opts(una)).unwrap();
        assert!(out.holds(), "una={una}: {out:?}");
    }
}

#[test]
fn toggle_progression_needs_equality_knowledge() {
    // Dropping the persisted c1 != c2 is detectable only without unique
    // names: the lifted definition is unsatisfiable when c1 = c2, so the
    // candidate wrongly admits that reduct.
    let bat = parse::parse_bat_str(TOGGLE).unwrap();
    let alpha = progressor::bat::parse_ground_action(&bat, "toggle(c1)").unwrap();
    let succ = progressor::formula::SitTerm::succ(&alpha);
    let weak: Vec<Formula> = sentences(TOGGLE, &["(not (On c1))", "(not (On c2))"])
        .iter()
        .map(|f| f.subst_sit(&progressor::formula::SitTerm::S0, &succ))
        .collect();
    let out = oracle::check_progression(&bat, &alpha, &weak, &opts(false)).unwrap();
    assert!(!out.holds());
    let out = oracle::check_progression(&bat, &alpha, &weak, &opts(true)).unwrap();
    assert!(out.holds());
}

#[test]
fn toggle_progression_rejects_wrong_sign() {
    let bat = parse::parse_bat_str(TOGGLE).unwrap();
    let alpha = progressor::bat::parse_ground_action(&bat, "toggle(c1)").unwrap();
    let succ = progressor::formula::SitTerm::succ(&alpha);
    let wrong: Vec<Formula> = sentences(TOGGLE, &["(On c1)"])
        .iter()
        .map(|f| f.subst_sit(&progressor::formula::SitTerm::S0, &succ))
        .collect();
    let out = oracle::check_progression(&bat, &alpha, &wrong, &opts(true)).unwrap();
    match out {
        oracle::Outcome::Fails(w) => assert!(w.n >= 2, "needs both constants distinct: {w:?}"),
        other => panic!("expected failure, got {other:?}"),
    }
}

#[test]
fn forget_ground_atom_semantics() {
    let src = "(vocab (const c1) (fluent On 1) (action A 0))";
    let before: Vec<Formula> = sentences(src, &["(On c1)"])
        .iter()
        .map(|f| f.lift_at(&progressor::formula::SitTerm::S0))
        .collect();
    // Forgetting the only atom the theory constrains leaves no information.
    let after = sentences(src, &["true"]);
    let out =
        oracle::check_forget_ground(&before, "On", &["c1".into()], &after, &opts(true)).unwrap();
    assert!(out.holds());
    // Forgetting an unrelated atom must keep the constraint.
    let src2 = "(vocab (const c1 c2) (fluent On 1) (action A 0))";
    let before: Vec<Formula> = sentences(src2, &["(On c1)"])
        .iter()
        .map(|f| f.lift_at(&progressor::formula::SitTerm::S0))
        .collect();
    let keep: Vec<Formula> = before.clone();
    let out =
        oracle::check_forget_ground(&keep, "On", &["c2".into()], &before, &opts(true)).unwrap();
    assert!(out.holds());
    // Claiming "no information" after forgetting the unrelated atom is wrong.
    let wrong = sentences(src2, &["true"]);
    let out =
        oracle::check_forget_ground(&before, "On", &["c2".into()], &wrong, &opts(true)).unwrap();
    assert!(!out.holds());
}

#[test]
fn forget_pred_semantics() {
    let src = "(vocab (const c) (fluent Q 1) (rigid R 1) (action A 0))";
    let lift = |fs: Vec<Formula>| -> Vec<Formula> {
        fs.iter()
            .map(|f| f.lift_at(&progressor::formula::SitTerm::S0))
            .collect()
    };
    let before = lift(sentences(
        src,
        &["(forall (x) (implies (Q x) (R x)))", "(Q c)"],
    ));
    let after = sentences(src, &["(R c)"]);
    let out = oracle::check_forget_pred(&before, "Q", &after, &opts(true)).unwrap();
    assert!(out.holds(), "{out:?}");
    let wrong = sentences(src, &["true"]);
    let out = oracle::check_forget_pred(&before, "Q", &wrong, &opts(true)).unwrap();
    assert!(!out.holds());
}

#[test]
fn lifted_atoms_share_initial_tables() {
    // P_F(c) and F(c)@S0 are the same constraint to the oracle.
    let src = "(vocab (const c) (fluent F 1) (action A 0))";
    let plain = sentences(src, &["(F c)"]);
    let lifted: Vec<Formula> = plain.iter().map(|f| f.lift_at(&progressor::formula::SitTerm::S0)).collect();
    assert!(matches!(
        oracle::equivalent(&plain, &lifted, &opts(true)).unwrap(),
        oracle::Outcome::Holds { .. }
    ));
    let _ = Term::var("unused");
}
