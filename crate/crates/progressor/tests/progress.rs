//! End-to-end progression runs for the three pipelines, certified against
//! the bounded-domain oracle, plus the fragment-preserving clause rewrites.

use progressor::classify::{check_fo2, check_utc, is_semi_definitional, ActionClass};
use progressor::forget::forget_predicate_semidef;
use progressor::oracle::{check_progression, equivalent, OracleOpts, Outcome};
use progressor::parse::parse_bat_str;
use progressor::progress::{
    fo2_constant_axioms, fo2_semidef_rewrite, progress, progress_ac, progress_le, progress_nr,
    pull_universals, utc_disjoin, utc_semidef_rewrite, Fragment, FragmentOut, Method,
    ProgressError, ProgressOptions, ProgressionResult,
};
use progressor::{Bat, Formula, GroundAction, SitTerm, Term};

fn bat(src: &str) -> Bat {
    parse_bat_str(src).expect("test action theory parses")
}

fn oracle() -> OracleOpts {
    OracleOpts::default()
}

/// Reads the result back as an initial-situation theory (lifting the
/// successor atoms) so the model-counting oracle can compare it.
fn lifted(result: &ProgressionResult, alpha: &GroundAction) -> Vec<Formula> {
    let succ = SitTerm::succ(alpha);
    result.theory.iter().map(|f| f.lift_at(&succ)).collect()
}

fn assert_equiv(a: &[Formula], b: &[Formula]) {
    match equivalent(a, b, &oracle()).expect("oracle runs") {
        Outcome::Holds { .. } => {}
        Outcome::Fails(w) => panic!("theories differ: {w:?}"),
    }
}

fn assert_certified(bat: &Bat, alpha: &GroundAction, result: &ProgressionResult) {
    match check_progression(bat, alpha, &result.theory, &oracle()).expect("oracle runs") {
        Outcome::Holds { .. } => {}
        Outcome::Fails(w) => panic!("progression not certified: {w:?}"),
    }
}

fn lc(p: &str, c: &str) -> Formula {
    Formula::lifted(p, vec![Term::cnst(c)])
}

fn lv(p: &str, vs: &[&str]) -> Formula {
    Formula::lifted(p, vs.iter().map(|v| Term::var(*v)).collect())
}

fn rv(p: &str, vs: &[&str]) -> Formula {
    Formula::rigid(p, vs.iter().map(|v| Term::var(*v)).collect())
}

// -------------------------------------------------------------------
// Local-effect runs
// -------------------------------------------------------------------

const TOGGLE: &str = "
(vocab (const c1 c2) (fluent F 1) (action Flip 1) (action Noop 0))
(init (F c1))
(ssa F
  (pos Flip (x1) () (not (F x1)))
  (neg Flip (x1) () (F x1)))
";

#[test]
fn toggling_a_known_atom_negates_it() {
    let bat = bat(TOGGLE);
    let alpha = GroundAction::new("Flip", &["c1"]);
    let result = progress(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_eq!(result.method, ActionClass::LocalEffect);
    assert_eq!(result.stats.omega, 1);
    assert_equiv(&lifted(&result, &alpha), &[lc("F", "c1").not()]);
    assert_certified(&bat, &alpha, &result);
}

#[test]
fn empty_characteristic_set_renames_and_nothing_else() {
    let src = "
(vocab (const c1 c2) (fluent F 1) (action Flip 1) (action Noop 0))
(init (or (F c1) (F c2)))
(ssa F
  (pos Flip (x1) () (not (F x1)))
  (neg Flip (x1) () (F x1)))
";
    let bat = bat(src);
    let alpha = GroundAction::new("Noop", &[]);
    let result = progress(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_eq!(result.stats.omega, 0);
    assert_equiv(
        &lifted(&result, &alpha),
        &[Formula::disj(vec![lc("F", "c1"), lc("F", "c2")])],
    );
    assert_certified(&bat, &alpha, &result);
}

#[test]
fn quantified_initial_knowledge_survives_forgetting() {
    let src = "
(vocab (const c1 c2) (fluent F 1) (rigid R 1) (action Flip 1))
(init (forall (x) (implies (F x) (R x))))
(ssa F
  (pos Flip (x1) () (not (F x1)))
  (neg Flip (x1) () (F x1)))
";
    let bat = bat(src);
    let alpha = GroundAction::new("Flip", &["c1"]);
    let result = progress_le(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_eq!(result.stats.omega, 1);
    assert!(result.stats.init_size > 0);
    assert!(result.stats.max_instance > 0);
    assert!(result.stats.output_size_raw <= result.stats.local_bound);
    assert_certified(&bat, &alpha, &result);
}

#[test]
fn ground_outputs_sit_in_both_fragments() {
    let bat = bat(TOGGLE);
    let alpha = GroundAction::new("Flip", &["c1"]);
    let result = progress(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_eq!(result.fragment_out, FragmentOut::Both);
}

// -------------------------------------------------------------------
// Method dispatch
// -------------------------------------------------------------------

const STORM: &str = "
(vocab (const c1) (fluent Wet 1) (fluent Sprayed 1) (rigid Dirty 1) (action Storm 0))
(init (forall (x) (implies (Wet x) (Dirty x))))
(ssa Sprayed (pos Storm () () true))
(ssa Wet (pos Storm () () (Sprayed x1)))
";

#[test]
fn explicit_method_errors_with_the_classifier_witness() {
    let bat = bat(STORM);
    let alpha = GroundAction::new("Storm", &[]);
    let opts = ProgressOptions {
        method: Method::LocalEffect,
        ..ProgressOptions::default()
    };
    match progress(&bat, &alpha, &opts) {
        Err(ProgressError::ClassMismatch { class, witness }) => {
            assert_eq!(class, ActionClass::LocalEffect);
            assert!(witness.contains("not pinned"), "witness: {witness}");
        }
        other => panic!("expected a class mismatch, got {other:?}"),
    }
}

#[test]
fn unclassifiable_theories_report_every_witness() {
    let src = "
(vocab (const c1) (fluent F 1) (fluent G 1) (action A 0))
(ssa F (pos A () () (G x1)))
(ssa G (pos A () () (F x1)))
";
    let bat = bat(src);
    let alpha = GroundAction::new("A", &[]);
    match progress(&bat, &alpha, &ProgressOptions::default()) {
        Err(ProgressError::NoClass { detail }) => {
            assert!(detail.contains("cyclic"), "detail: {detail}");
        }
        other => panic!("expected no applicable class, got {other:?}"),
    }
}

// -------------------------------------------------------------------
// Normal runs
// -------------------------------------------------------------------

const DROP_ALL: &str = "
(vocab (const c1) (fluent Holding 1) (rigid Fragile 1) (action DropAll 0))
(init (forall (x) (implies (Holding x) (Fragile x))))
(ssa Holding (neg DropAll () () true))
";

#[test]
fn unbounded_drop_clears_the_fluent_everywhere() {
    let bat = bat(DROP_ALL);
    let alpha = GroundAction::new("DropAll", &[]);
    let result = progress(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_eq!(result.method, ActionClass::Normal);
    assert_eq!(result.stats.nle_count, 1);
    assert_eq!(result.stats.nle_sizes.len(), 1);
    assert!(result.stats.max_nle_instance >= 5);
    let expect = Formula::forall("x", lv("Holding", &["x"]).not());
    assert_equiv(&lifted(&result, &alpha), &[expect]);
    assert_certified(&bat, &alpha, &result);
}

const MIXED_INIT: &str = "
(vocab (const c1) (fluent Holding 1) (fluent Carried 1) (action DropAll 0))
(init (forall (x) (implies (Holding x) (Carried x))))
(ssa Holding (neg DropAll () () true))
(ssa Carried (neg DropAll () () true))
";

#[test]
fn chained_initial_knowledge_forgets_both_fluents() {
    let bat = bat(MIXED_INIT);
    let alpha = GroundAction::new("DropAll", &[]);
    let result = progress_nr(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_eq!(result.stats.nle_sizes.len(), 2);
    let expect = vec![
        Formula::forall("x", lv("Holding", &["x"]).not()),
        Formula::forall("x", lv("Carried", &["x"]).not()),
    ];
    assert_equiv(&lifted(&result, &alpha), &expect);
    assert_certified(&bat, &alpha, &result);
}

#[test]
fn without_nonlocal_fluents_the_normal_run_is_the_local_one() {
    let bat = bat(TOGGLE);
    let alpha = GroundAction::new("Flip", &["c1"]);
    let le = progress_le(&bat, &alpha, &ProgressOptions::default()).unwrap();
    let nr = progress_nr(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_eq!(le.theory, nr.theory);
    assert_eq!(nr.method, ActionClass::Normal);
    assert!(nr.stats.nle_sizes.is_empty());
}

#[test]
fn predicate_elimination_order_does_not_change_the_models() {
    // forall x (F(x) -> R(x)), forall x (G(x) -> F(x)), forall x (S(x) -> G(x)):
    // forgetting F then G must match forgetting G then F.
    let theory = vec![
        Formula::forall("x", lv("F", &["x"]).implies(rv("R", &["x"]))),
        Formula::forall("x", lv("G", &["x"]).implies(lv("F", &["x"]))),
        Formula::forall("x", rv("S", &["x"]).implies(lv("G", &["x"]))),
    ];
    let fg = forget_predicate_semidef(
        &forget_predicate_semidef(&theory, "F", 1).unwrap(),
        "G",
        1,
    )
    .unwrap();
    let gf = forget_predicate_semidef(
        &forget_predicate_semidef(&theory, "G", 1).unwrap(),
        "F",
        1,
    )
    .unwrap();
    assert_equiv(&fg, &gf);
}

// -------------------------------------------------------------------
// Acyclic runs
// -------------------------------------------------------------------

#[test]
fn effect_chains_progress_along_the_dependency_order() {
    let bat = bat(STORM);
    let alpha = GroundAction::new("Storm", &[]);
    let result = progress(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_eq!(result.method, ActionClass::Acyclic);
    assert_eq!(result.stats.depth, 1);
    assert!(result.stats.ac_sum <= result.stats.ac_bound);
    let expect = Formula::forall("x", lv("Sprayed", &["x"]));
    assert_equiv(&lifted(&result, &alpha), &[expect]);
    assert_certified(&bat, &alpha, &result);
}

#[test]
fn depth_zero_acyclic_runs_match_the_normal_pipeline() {
    let bat = bat(DROP_ALL);
    let alpha = GroundAction::new("DropAll", &[]);
    let nr = progress_nr(&bat, &alpha, &ProgressOptions::default()).unwrap();
    let ac = progress_ac(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_eq!(ac.stats.depth, 0);
    assert_equiv(&lifted(&nr, &alpha), &lifted(&ac, &alpha));
    assert_certified(&bat, &alpha, &ac);
}

#[test]
fn acyclic_pipeline_degenerates_on_local_effect_theories() {
    let bat = bat(TOGGLE);
    let alpha = GroundAction::new("Flip", &["c1"]);
    let le = progress_le(&bat, &alpha, &ProgressOptions::default()).unwrap();
    let ac = progress_ac(&bat, &alpha, &ProgressOptions::default()).unwrap();
    assert_equiv(&lifted(&le, &alpha), &lifted(&ac, &alpha));
}

// -------------------------------------------------------------------
// Fragment-tracked runs
// -------------------------------------------------------------------

#[test]
fn two_variable_runs_stay_in_the_fragment() {
    let bat = bat(TOGGLE);
    let alpha = GroundAction::new("Flip", &["c1"]);
    let opts = ProgressOptions {
        fragment: Some(Fragment::Fo2),
        ..ProgressOptions::default()
    };
    let result = progress(&bat, &alpha, &opts).unwrap();
    assert!(matches!(
        result.fragment_out,
        FragmentOut::Fo2 | FragmentOut::Both
    ));
    assert_certified(&bat, &alpha, &result);
}

#[test]
fn universal_runs_stay_in_the_fragment() {
    let bat = bat(DROP_ALL);
    let alpha = GroundAction::new("DropAll", &[]);
    let opts = ProgressOptions {
        fragment: Some(Fragment::Utc),
        ..ProgressOptions::default()
    };
    let result = progress(&bat, &alpha, &opts).unwrap();
    assert!(matches!(
        result.fragment_out,
        FragmentOut::Utc | FragmentOut::Both
    ));
    assert_certified(&bat, &alpha, &result);
}

#[test]
fn fragment_mode_rejects_inputs_outside_the_fragment() {
    let src = "
(vocab (const c1) (fluent F 1) (rigid R 2) (action Flip 1))
(init (forall (x) (forall (y) (forall (z) (or (R x y) (R y z))))))
(ssa F
  (pos Flip (x1) () (not (F x1)))
  (neg Flip (x1) () (F x1)))
";
    let bat = bat(src);
    let alpha = GroundAction::new("Flip", &["c1"]);
    let opts = ProgressOptions {
        fragment: Some(Fragment::Fo2),
        ..ProgressOptions::default()
    };
    match progress(&bat, &alpha, &opts) {
        Err(ProgressError::FragmentIn { fragment, .. }) => {
            assert_eq!(fragment, Fragment::Fo2);
        }
        other => panic!("expected a fragment rejection, got {other:?}"),
    }
    // An existential in the initial KB likewise falls outside UTC.
    let src = "
(vocab (const c1) (fluent F 1) (action Flip 1))
(init (exists (x) (F x)))
(ssa F
  (pos Flip (x1) () (not (F x1)))
  (neg Flip (x1) () (F x1)))
";
    let bat = parse_bat_str(src).unwrap();
    let opts = ProgressOptions {
        fragment: Some(Fragment::Utc),
        ..ProgressOptions::default()
    };
    assert!(matches!(
        progress(&bat, &alpha, &opts),
        Err(ProgressError::FragmentIn {
            fragment: Fragment::Utc,
            ..
        })
    ));
}

// -------------------------------------------------------------------
// Two-variable clause rewrite: the case table
// -------------------------------------------------------------------

fn pl(args: Vec<Term>) -> Formula {
    Formula::lifted("P", args)
}

fn assert_rewrite_sound(clause: &Formula, rewritten: &Formula, pred: &str) {
    assert_equiv(
        std::slice::from_ref(&clause.close()),
        std::slice::from_ref(rewritten),
    );
    let (ok, _, _) = is_semi_definitional(std::slice::from_ref(rewritten), pred);
    assert!(ok, "rewrite is not semi-definitional: {rewritten}");
    check_fo2(std::slice::from_ref(rewritten))
        .unwrap_or_else(|w| panic!("rewrite left the two-variable fragment: {w}"));
}

#[test]
fn unary_ground_argument_gets_an_equality_guard() {
    // forall x (R(x) | P(A))  ~>  forall x ((x=A & exists x -R(x)) -> P(x))
    let psi = rv("R", &["x"]);
    let clause = Formula::forall(
        "x",
        Formula::disj(vec![psi.clone(), pl(vec![Term::cnst("A")])]),
    );
    let got = fo2_semidef_rewrite(&clause, "P").unwrap();
    let expect = Formula::forall(
        "x",
        Formula::conj(vec![
            Formula::eq(Term::var("x"), Term::cnst("A")),
            Formula::exists("x", psi.not()),
        ])
        .implies(pl(vec![Term::var("x")])),
    );
    assert_eq!(got, expect);
    assert_rewrite_sound(&clause, &got, "P");
}

#[test]
fn unary_variable_argument_is_already_in_shape() {
    let clause = Formula::forall(
        "x",
        Formula::disj(vec![rv("R", &["x"]), pl(vec![Term::var("x")])]),
    );
    assert_eq!(fo2_semidef_rewrite(&clause, "P").unwrap(), clause);
}

#[test]
fn binary_ground_pair_guards_both_positions() {
    // forall x,y (R(x,y) | P(A,B))
    //   ~>  forall x,y ((x=A & y=B & exists x,y -R(x,y)) -> P(x,y))
    let psi = rv("R", &["x", "y"]);
    let clause = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::disj(vec![psi.clone(), pl(vec![Term::cnst("A"), Term::cnst("B")])]),
        ),
    );
    let got = fo2_semidef_rewrite(&clause, "P").unwrap();
    let expect = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::conj(vec![
                Formula::eq(Term::var("x"), Term::cnst("A")),
                Formula::eq(Term::var("y"), Term::cnst("B")),
                Formula::exists("x", Formula::exists("y", psi.not())),
            ])
            .implies(pl(vec![Term::var("x"), Term::var("y")])),
        ),
    );
    assert_eq!(got, expect);
    assert_rewrite_sound(&clause, &got, "P");
}

#[test]
fn binary_second_position_ground_keeps_the_first() {
    // forall x,y (R(x,y) | P(x,B))
    //   ~>  forall x,y ((y=B & exists y -R(x,y)) -> P(x,y))
    let psi = rv("R", &["x", "y"]);
    let clause = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::disj(vec![psi.clone(), pl(vec![Term::var("x"), Term::cnst("B")])]),
        ),
    );
    let got = fo2_semidef_rewrite(&clause, "P").unwrap();
    let expect = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::conj(vec![
                Formula::eq(Term::var("y"), Term::cnst("B")),
                Formula::exists("y", psi.not()),
            ])
            .implies(pl(vec![Term::var("x"), Term::var("y")])),
        ),
    );
    assert_eq!(got, expect);
    assert_rewrite_sound(&clause, &got, "P");
}

#[test]
fn binary_first_position_ground_keeps_the_second() {
    // forall x,y (R(x,y) | P(A,y))
    //   ~>  forall x,y ((x=A & exists x -R(x,y)) -> P(x,y))
    let psi = rv("R", &["x", "y"]);
    let clause = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::disj(vec![psi.clone(), pl(vec![Term::cnst("A"), Term::var("y")])]),
        ),
    );
    let got = fo2_semidef_rewrite(&clause, "P").unwrap();
    let expect = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::conj(vec![
                Formula::eq(Term::var("x"), Term::cnst("A")),
                Formula::exists("x", psi.not()),
            ])
            .implies(pl(vec![Term::var("x"), Term::var("y")])),
        ),
    );
    assert_eq!(got, expect);
    assert_rewrite_sound(&clause, &got, "P");
}

#[test]
fn binary_distinct_variables_are_already_in_shape() {
    let clause = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::disj(vec![
                rv("R", &["x", "y"]),
                pl(vec![Term::var("x"), Term::var("y")]),
            ]),
        ),
    );
    assert_eq!(fo2_semidef_rewrite(&clause, "P").unwrap(), clause);
}

#[test]
fn negative_literals_rewrite_the_same_way() {
    let psi = rv("R", &["x"]);
    let clause = Formula::forall(
        "x",
        Formula::disj(vec![psi.clone(), pl(vec![Term::cnst("A")]).not()]),
    );
    let got = fo2_semidef_rewrite(&clause, "P").unwrap();
    let expect = Formula::forall(
        "x",
        Formula::conj(vec![
            Formula::eq(Term::var("x"), Term::cnst("A")),
            Formula::exists("x", psi.not()),
        ])
        .implies(pl(vec![Term::var("x")]).not()),
    );
    assert_eq!(got, expect);
    assert_rewrite_sound(&clause, &got, "P");
}

#[test]
fn canonical_names_dodge_variables_kept_in_later_positions() {
    // forall x (R(x) | P(A,x)): position 1 keeps x, so position 0 must
    // canonicalize to y, staying within two names.
    let psi = rv("R", &["x"]);
    let clause = Formula::forall(
        "x",
        Formula::disj(vec![psi.clone(), pl(vec![Term::cnst("A"), Term::var("x")])]),
    );
    let got = fo2_semidef_rewrite(&clause, "P").unwrap();
    let expect = Formula::forall(
        "y",
        Formula::forall(
            "x",
            Formula::conj(vec![Formula::eq(Term::var("y"), Term::cnst("A")), psi.not()])
                .implies(pl(vec![Term::var("y"), Term::var("x")])),
        ),
    );
    assert_eq!(got, expect);
    assert_rewrite_sound(&clause, &got, "P");
}

#[test]
fn repeated_variables_split_into_two_names() {
    // forall x (R(x) | P(x,x)) needs a second name for the repeat.
    let psi = rv("R", &["x"]);
    let clause = Formula::forall(
        "x",
        Formula::disj(vec![psi.clone(), pl(vec![Term::var("x"), Term::var("x")])]),
    );
    let got = fo2_semidef_rewrite(&clause, "P").unwrap();
    let expect = Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::conj(vec![Formula::eq(Term::var("y"), Term::var("x")), psi.not()])
                .implies(pl(vec![Term::var("x"), Term::var("y")])),
        ),
    );
    assert_eq!(got, expect);
    assert_rewrite_sound(&clause, &got, "P");
}

// -------------------------------------------------------------------
// Universal clause rewrite and disjunction
// -------------------------------------------------------------------

#[test]
fn universal_rewrite_introduces_a_fresh_guarded_tuple() {
    // forall x (R(x) | P(x))  ~>  forall x,y1 (y1=x -> (R(x) | P(y1)))
    let clause = Formula::forall(
        "x",
        Formula::disj(vec![rv("R", &["x"]), pl(vec![Term::var("x")])]),
    );
    let got = utc_semidef_rewrite(&clause, "P").unwrap();
    let expect = Formula::forall(
        "x",
        Formula::forall(
            "y1",
            Formula::eq(Term::var("y1"), Term::var("x"))
                .implies(Formula::disj(vec![rv("R", &["x"]), pl(vec![Term::var("y1")])])),
        ),
    );
    assert_eq!(got, expect);
    assert_equiv(
        std::slice::from_ref(&clause),
        std::slice::from_ref(&got),
    );
    let (ok, _, _) = is_semi_definitional(std::slice::from_ref(&got), "P");
    assert!(ok);
    check_utc(std::slice::from_ref(&got)).unwrap();
}

#[test]
fn universal_rewrite_guards_ground_tuples() {
    let clause = pl(vec![Term::cnst("c")]);
    let got = utc_semidef_rewrite(&clause, "P").unwrap();
    let expect = Formula::forall(
        "y1",
        Formula::eq(Term::var("y1"), Term::cnst("c")).implies(pl(vec![Term::var("y1")])),
    );
    assert_eq!(got, expect);
    assert_equiv(std::slice::from_ref(&clause), std::slice::from_ref(&got));
}

#[test]
fn universal_disjunction_is_model_preserving() {
    let a = Formula::forall(
        "x",
        Formula::disj(vec![rv("R", &["x"]), lv("F", &["x"])]),
    );
    let b = Formula::forall("x", Formula::disj(vec![rv("S", &["x"]), lv("G", &["x"])]));
    let joined = utc_disjoin(&a, &b);
    check_utc(std::slice::from_ref(&joined)).unwrap();
    assert_equiv(
        std::slice::from_ref(&joined),
        std::slice::from_ref(&Formula::disj(vec![a, b])),
    );
}

#[test]
fn prefix_pulling_preserves_models_through_conjunction() {
    let f = Formula::conj(vec![
        Formula::forall("x", lv("F", &["x"])),
        Formula::disj(vec![
            Formula::forall("x", lv("G", &["x"])),
            Formula::exists("x", rv("R", &["x"])),
        ]),
    ]);
    let pulled = pull_universals(&f);
    assert_equiv(std::slice::from_ref(&f), std::slice::from_ref(&pulled));
}

// -------------------------------------------------------------------
// Constant simulation axioms
// -------------------------------------------------------------------

#[test]
fn constant_axioms_describe_singletons() {
    assert!(fo2_constant_axioms(&[]).is_empty());
    let axioms = fo2_constant_axioms(&["A".into(), "B".into()]);
    assert_eq!(axioms.len(), 2);
    check_fo2(&axioms).unwrap();
    let unique = Formula::forall(
        "u",
        Formula::forall(
            "v",
            Formula::conj(vec![
                Formula::rigid("P_A", vec![Term::var("u")]),
                Formula::rigid("P_A", vec![Term::var("v")]),
            ])
            .implies(Formula::eq(Term::var("u"), Term::var("v"))),
        ),
    );
    match progressor::oracle::entails(&axioms, &unique, &oracle()).unwrap() {
        Outcome::Holds { .. } => {}
        Outcome::Fails(w) => panic!("singleton axiom too weak: {w:?}"),
    }
}
