//! Classification: local-effect splits, semi-definitional and good-form
//! shape checks, the dependency graph, and fragment membership.

use progressor::classify::{
    check_fo2, check_utc, classify, dependency_graph, is_good_form, is_semi_definitional,
    ActionClass,
};
use progressor::parse::parse_bat_str;
use progressor::{Formula, GroundAction, Term};

fn v(name: &str) -> Term {
    Term::var(name)
}

fn lp(name: &str, args: &[&str]) -> Formula {
    Formula::lifted(name, args.iter().map(|a| v(a)).collect())
}

fn rg(name: &str, args: &[&str]) -> Formula {
    Formula::rigid(name, args.iter().map(|a| v(a)).collect())
}

// -------------------------------------------------------------------
// Semi-definitional shape
// -------------------------------------------------------------------

#[test]
fn semidef_harvests_both_condition_kinds() {
    // { forall x (P(x) -> Q(x)), forall x (R(x) -> P(x)) }
    let t = vec![
        Formula::forall("x", lp("P", &["x"]).implies(rg("Q", &["x"]))),
        Formula::forall("x", rg("R", &["x"]).implies(lp("P", &["x"]))),
    ];
    let (ok, wsc, snc) = is_semi_definitional(&t, "P");
    assert!(ok);
    assert_eq!(wsc, vec![rg("R", &["x"])]);
    assert_eq!(snc, vec![rg("Q", &["x"])]);
}

#[test]
fn semidef_accepts_sentences_not_mentioning_the_predicate() {
    let t = vec![Formula::forall("x", rg("Q", &["x"]))];
    let (ok, wsc, snc) = is_semi_definitional(&t, "P");
    assert!(ok && wsc.is_empty() && snc.is_empty());
}

#[test]
fn semidef_rejects_double_occurrence() {
    let t = vec![Formula::forall(
        "x",
        Formula::disj(vec![lp("P", &["x"]).not(), lp("P", &["x"])]),
    )];
    assert!(!is_semi_definitional(&t, "P").0);
}

#[test]
fn semidef_rejects_occurrence_below_clause_level() {
    // forall x (not (P(x) & Q(x)) | R(x)) — P is buried in a conjunction.
    let t = vec![Formula::forall(
        "x",
        Formula::disj(vec![
            Formula::conj(vec![lp("P", &["x"]), rg("Q", &["x"])]).not(),
            rg("R", &["x"]),
        ]),
    )];
    assert!(!is_semi_definitional(&t, "P").0);
}

#[test]
fn semidef_rejects_ground_and_repeated_literal_arguments() {
    let ground = vec![Formula::lifted("P", vec![Term::cnst("c1")]).not()];
    assert!(!is_semi_definitional(&ground, "P").0);
    let repeated = vec![Formula::forall(
        "x",
        Formula::lifted("P", vec![v("x"), v("x")]).not(),
    )];
    assert!(!is_semi_definitional(&repeated, "P").0);
}

#[test]
fn semidef_accepts_condition_variables_outside_the_literal() {
    // forall x, y (¬P(x) ∨ Q(x,y)) ⇔ forall x (P(x) ⊃ forall y Q(x,y)):
    // the extra universal y stays in the harvested condition.
    let t = vec![Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::disj(vec![lp("P", &["x"]).not(), rg("Q", &["x", "y"])]),
        ),
    )];
    let (ok, wsc, snc) = is_semi_definitional(&t, "P");
    assert!(ok && wsc.is_empty());
    assert_eq!(snc, vec![rg("Q", &["x", "y"])]);
}

#[test]
fn semidef_tolerates_mixed_clauses_over_two_predicates() {
    // forall x (F(x) -> G(x)) is semi-definitional wrt F and wrt G.
    let t = vec![Formula::forall("x", lp("F", &["x"]).implies(lp("G", &["x"])))];
    assert!(is_semi_definitional(&t, "F").0);
    assert!(is_semi_definitional(&t, "G").0);
}

// -------------------------------------------------------------------
// Good form
// -------------------------------------------------------------------

#[test]
fn good_form_decomposes_the_full_shape() {
    // (R(x) | P(x)) & (~S(x) | ~P(x)) & T(x)
    let f = Formula::conj(vec![
        Formula::disj(vec![rg("R", &["x"]), lp("P", &["x"])]),
        Formula::disj(vec![rg("S", &["x"]).not(), lp("P", &["x"]).not()]),
        rg("T", &["x"]),
    ]);
    let gf = is_good_form(&f, "P").expect("good form");
    assert_eq!(gf.target, Some(("P".to_string(), vec![v("x")])));
    assert_eq!(gf.psi_pos, rg("R", &["x"]));
    assert_eq!(gf.psi_neg, rg("S", &["x"]).not());
    assert_eq!(gf.rest, rg("T", &["x"]));
}

#[test]
fn good_form_fills_missing_parts() {
    // A bare positive guard: P(x) alone has condition false, the other
    // conjuncts default to true.
    let gf = is_good_form(&lp("P", &["x"]), "P").expect("good form");
    assert_eq!(gf.psi_pos, Formula::False);
    assert_eq!(gf.psi_neg, Formula::True);
    assert_eq!(gf.rest, Formula::True);
    // Predicate absent: everything lands in the remainder.
    let gf = is_good_form(&rg("Q", &["x"]), "P").expect("good form");
    assert!(gf.target.is_none());
    assert_eq!(gf.rest, rg("Q", &["x"]));
}

#[test]
fn good_form_rejects_bad_shapes() {
    // Mismatched guard arguments.
    let f = Formula::conj(vec![
        Formula::disj(vec![rg("R", &["x"]), lp("P", &["x"])]),
        Formula::disj(vec![rg("S", &["y"]), lp("P", &["y"]).not()]),
    ]);
    assert!(is_good_form(&f, "P").is_none());
    // Occurrence nested under a negated conjunction.
    let g = Formula::conj(vec![lp("P", &["x"]), rg("Q", &["x"])])
        .not();
    assert!(is_good_form(&g, "P").is_none());
    // Two positive guards.
    let h = Formula::conj(vec![
        Formula::disj(vec![rg("R", &["x"]), lp("P", &["x"])]),
        Formula::disj(vec![rg("S", &["x"]), lp("P", &["x"])]),
    ]);
    assert!(is_good_form(&h, "P").is_none());
}

#[test]
fn good_form_reassembly_has_the_canonical_size() {
    let f = Formula::conj(vec![
        Formula::disj(vec![rg("R", &["x"]), lp("P", &["x"])]),
        Formula::disj(vec![rg("S", &["x"]).not(), lp("P", &["x"]).not()]),
        rg("T", &["x"]),
    ]);
    let gf = is_good_form(&f, "P").expect("good form");
    // l1 + l2 + l3 + 7 with l1 = 1, l2 = 2, l3 = 1.
    assert_eq!(gf.size(), 11);
    assert_eq!(gf.formula(), f);
    assert_eq!(gf.condition_size(), 2);
}

// -------------------------------------------------------------------
// Hand BATs: class verdicts
// -------------------------------------------------------------------

const TOGGLE: &str = "
(vocab (const c1 c2) (fluent On 1) (action Toggle 1))
(init (or (On c1) (On c2)))
(ssa On
  (pos Toggle (x1) () (not (On x1)))
  (neg Toggle (x1) () (On x1)))
";

#[test]
fn local_effect_bat_is_in_every_class() {
    let bat = parse_bat_str(TOGGLE).unwrap();
    let alpha = GroundAction::new("Toggle", &["c1"]);
    let verdict = classify(&bat, &alpha, true).unwrap();
    assert_eq!(verdict.le_fluents, vec!["On"]);
    assert!(verdict.nle_fluents.is_empty());
    assert!(verdict.local_effect.applicable);
    assert!(verdict.normal.applicable);
    assert!(verdict.acyclic.applicable);
    assert_eq!(verdict.cheapest(), Some(ActionClass::LocalEffect));
    assert_eq!(verdict.depth, 0);
    assert_eq!(verdict.omega_size, 1);
}

const DROP_ALL: &str = "
(vocab (const c1) (fluent Holding 1) (rigid Fragile 1) (action DropAll 0))
(init (forall (x) (implies (Holding x) (Fragile x))))
(ssa Holding
  (neg DropAll () () true))
";

#[test]
fn unbounded_effect_is_normal_but_not_local() {
    let bat = parse_bat_str(DROP_ALL).unwrap();
    let alpha = GroundAction::new("DropAll", &[]);
    let verdict = classify(&bat, &alpha, true).unwrap();
    assert_eq!(verdict.nle_fluents, vec!["Holding"]);
    assert!(!verdict.local_effect.applicable);
    assert!(verdict
        .local_effect
        .witness
        .as_deref()
        .unwrap()
        .contains("not pinned"));
    assert!(verdict.normal.applicable);
    assert!(verdict.acyclic.applicable);
    assert_eq!(verdict.cheapest(), Some(ActionClass::Normal));
    assert_eq!(verdict.depth, 0);
    assert_eq!(verdict.elimination_order.as_deref(), Some(&["Holding".to_string()][..]));
}

const STORM: &str = "
(vocab (const c1) (fluent Wet 1) (fluent Sprayed 1) (rigid Dirty 1) (action Storm 0))
(init (forall (x) (implies (Wet x) (Dirty x))))
(ssa Sprayed (pos Storm () () true))
(ssa Wet (pos Storm () () (Sprayed x1)))
";

#[test]
fn chained_effects_are_acyclic_but_not_normal() {
    let bat = parse_bat_str(STORM).unwrap();
    let alpha = GroundAction::new("Storm", &[]);
    let verdict = classify(&bat, &alpha, true).unwrap();
    assert_eq!(verdict.nle_fluents, vec!["Sprayed", "Wet"]);
    assert!(!verdict.normal.applicable);
    assert!(verdict
        .normal
        .witness
        .as_deref()
        .unwrap()
        .contains("Sprayed"));
    assert!(verdict.acyclic.applicable);
    assert_eq!(verdict.cheapest(), Some(ActionClass::Acyclic));
    assert_eq!(verdict.depth, 1);
    assert_eq!(
        verdict.elimination_order.as_deref(),
        Some(&["Wet".to_string(), "Sprayed".to_string()][..])
    );
}

const CYCLE: &str = "
(vocab (const c1) (fluent F 1) (fluent G 1) (action A 0))
(ssa F (pos A () () (G x1)))
(ssa G (pos A () () (F x1)))
";

#[test]
fn cyclic_dependencies_defeat_every_class() {
    let bat = parse_bat_str(CYCLE).unwrap();
    let alpha = GroundAction::new("A", &[]);
    let verdict = classify(&bat, &alpha, true).unwrap();
    assert!(!verdict.local_effect.applicable);
    assert!(!verdict.normal.applicable);
    assert!(!verdict.acyclic.applicable);
    assert!(verdict.acyclic.witness.as_deref().unwrap().contains("cyclic"));
    assert_eq!(verdict.cheapest(), None);
    assert!(verdict.elimination_order.is_none());
}

const CHAIN: &str = "
(vocab (const c1) (fluent F 1) (fluent G 1) (fluent H 1) (action A 0))
(ssa F (pos A () () (G x1)))
(ssa G (pos A () () (H x1)))
(ssa H (pos A () () true))
";

#[test]
fn chain_depth_counts_edges() {
    let bat = parse_bat_str(CHAIN).unwrap();
    let alpha = GroundAction::new("A", &[]);
    let verdict = classify(&bat, &alpha, true).unwrap();
    assert!(verdict.acyclic.applicable);
    assert_eq!(verdict.depth, 2);
    assert_eq!(
        verdict.elimination_order.as_deref(),
        Some(&["F".to_string(), "G".to_string(), "H".to_string()][..])
    );
}

const MIXED_INIT: &str = "
(vocab (const c1) (fluent Holding 1) (fluent Carried 1) (action DropAll 0))
(init (forall (x) (implies (Holding x) (Carried x))))
(ssa Holding (neg DropAll () () true))
(ssa Carried (neg DropAll () () true))
";

#[test]
fn mixed_initial_clause_is_normal_but_not_separable() {
    let bat = parse_bat_str(MIXED_INIT).unwrap();
    let alpha = GroundAction::new("DropAll", &[]);
    let verdict = classify(&bat, &alpha, true).unwrap();
    assert!(verdict.normal.applicable);
    assert!(!verdict.acyclic.applicable);
    assert!(verdict
        .acyclic
        .witness
        .as_deref()
        .unwrap()
        .contains("separability"));
}

#[test]
fn normal_plus_separable_init_implies_acyclic_with_shallow_graph() {
    for src in [TOGGLE, DROP_ALL, STORM, CYCLE, CHAIN, MIXED_INIT] {
        let bat = parse_bat_str(src).unwrap();
        let action = bat.vocab.actions.iter().next().unwrap();
        let args: Vec<&str> = bat.vocab.consts[..*action.1].iter().map(|c| c.as_str()).collect();
        let alpha = GroundAction::new(action.0.clone(), &args);
        let verdict = classify(&bat, &alpha, true).unwrap();
        let init = progressor::classify::lifted_init(&bat);
        let separable = init.iter().all(|s| {
            verdict
                .nle_fluents
                .iter()
                .filter(|f| s.mentions_lifted(f))
                .count()
                <= 1
        });
        if verdict.normal.applicable && separable {
            assert!(verdict.acyclic.applicable, "{src}");
            assert!(verdict.depth <= 1, "{src}");
        }
    }
}

// -------------------------------------------------------------------
// Dead-branch pruning
// -------------------------------------------------------------------

const GUARDED: &str = "
(vocab (const c1 c2) (fluent F 1) (fluent G 1) (action A 2))
(ssa F (pos A (z z) (z) (G z)))
";

#[test]
fn unique_names_pruning_drops_dead_edges() {
    let bat = parse_bat_str(GUARDED).unwrap();
    let clash = GroundAction::new("A", &["c1", "c2"]);
    let live = GroundAction::new("A", &["c1", "c1"]);
    assert!(dependency_graph(&bat, &clash, true).unwrap().edges.is_empty());
    assert_eq!(
        dependency_graph(&bat, &clash, false).unwrap().edges,
        vec![("F".to_string(), "G".to_string())]
    );
    assert_eq!(
        dependency_graph(&bat, &live, true).unwrap().edges,
        vec![("F".to_string(), "G".to_string())]
    );
    assert_eq!(dependency_graph(&bat, &live, false).unwrap().depth, 1);
}

#[test]
fn dot_rendering_lists_nodes_and_edges() {
    let bat = parse_bat_str(CHAIN).unwrap();
    let alpha = GroundAction::new("A", &[]);
    let g = dependency_graph(&bat, &alpha, true).unwrap();
    let nle: std::collections::BTreeSet<String> =
        ["F", "G", "H"].iter().map(|s| s.to_string()).collect();
    let dot = g.to_dot(&nle);
    assert!(dot.contains("digraph"));
    assert!(dot.contains("\"F\" -> \"G\""));
    assert!(dot.contains("\"G\" -> \"H\""));
}

// -------------------------------------------------------------------
// Fragments
// -------------------------------------------------------------------

#[test]
fn fo2_accepts_reuse_and_rejects_width_three() {
    let ok = Formula::forall(
        "x",
        lp("P", &["x"]).implies(Formula::exists("x", lp("Q", &["x"]))),
    );
    assert!(check_fo2(&[ok]).is_ok());

    let wide = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::exists("z", Formula::conj(vec![rg("R", &["x", "y"]), rg("S", &["y", "z"])])),
        ),
    );
    let err = check_fo2(&[wide]).unwrap_err();
    assert!(err.contains("3 variable names"), "{err}");
}

#[test]
fn fo2_rejects_wide_predicates() {
    let f = Formula::rigid("T", vec![v("x"), v("x"), v("x")]);
    let err = check_fo2(&[Formula::forall("x", f)]).unwrap_err();
    assert!(err.contains("arity 3"), "{err}");
}

#[test]
fn utc_requires_a_universal_prefix_over_a_quantifier_free_matrix() {
    let ok = Formula::forall(
        "x",
        Formula::disj(vec![lp("P", &["x"]).not(), rg("Q", &["x"])]),
    );
    assert!(check_utc(&[ok.clone()]).is_ok());
    // A ground clause is universal with an empty prefix.
    assert!(check_utc(&[Formula::lifted("P", vec![Term::cnst("c1")])]).is_ok());
    let bad = Formula::forall("x", Formula::exists("y", rg("Q", &["x", "y"])));
    assert!(check_utc(&[bad]).is_err());
}
