//! Generated families: class membership by construction, determinism,
//! fragment safety, and mutation detection.

use progressor::classify::{check_fo2, check_utc, classify, ActionClass};
use progressor::generate::{ac_family, family, le_family, mutate, nr_family, Fault};
use progressor::oracle::{check_progression, consistency_warnings, OracleOpts, Outcome};
use progressor::parse::parse_bat_str;
use progressor::progress::{progress, Fragment, ProgressOptions};
use std::collections::BTreeSet;

#[test]
fn generated_sources_reparse_to_the_same_theory() {
    for seed in 0..5 {
        let g = family(ActionClass::Acyclic, 2, seed);
        let again = parse_bat_str(&g.source).unwrap();
        assert_eq!(g.bat, again);
    }
}

#[test]
fn families_are_deterministic_in_the_seed() {
    for class in [
        ActionClass::LocalEffect,
        ActionClass::Normal,
        ActionClass::Acyclic,
    ] {
        let a = family(class, 3, 42);
        let b = family(class, 3, 42);
        assert_eq!(a.source, b.source);
        let distinct: BTreeSet<String> = (0..10).map(|s| family(class, 3, s).source).collect();
        assert!(distinct.len() > 1, "{class} family ignored its seed");
    }
}

#[test]
fn local_effect_family_pins_every_fluent() {
    for seed in 0..10 {
        for c in [1, 3, 5] {
            let g = le_family(c, 2, seed);
            let verdict = classify(&g.bat, &g.alpha, true).unwrap();
            assert!(verdict.local_effect.applicable, "seed {seed}, c {c}");
            assert!(verdict.nle_fluents.is_empty());
            assert_eq!(verdict.omega_size, c);
        }
    }
}

#[test]
fn normal_family_is_normal_and_not_local() {
    for seed in 0..10 {
        let g = nr_family(3, seed);
        let verdict = classify(&g.bat, &g.alpha, true).unwrap();
        assert!(!verdict.local_effect.applicable);
        assert!(verdict.normal.applicable, "seed {seed}");
        assert_eq!(verdict.nle_fluents, vec!["H"]);
    }
}

#[test]
fn acyclic_family_reaches_the_requested_depth() {
    for seed in 0..10 {
        for d in [0, 1, 3] {
            let g = ac_family(d, seed);
            let verdict = classify(&g.bat, &g.alpha, true).unwrap();
            assert!(verdict.acyclic.applicable, "seed {seed}, depth {d}");
            assert_eq!(verdict.depth, d);
            if d > 0 {
                assert!(!verdict.normal.applicable);
            }
        }
    }
}

#[test]
fn every_family_lies_in_both_fragments() {
    for seed in 0..5 {
        for class in [
            ActionClass::LocalEffect,
            ActionClass::Normal,
            ActionClass::Acyclic,
        ] {
            for frag in [Fragment::Fo2, Fragment::Utc] {
                let g = family(class, 2, seed);
                let opts = ProgressOptions {
                    fragment: Some(frag),
                    ..ProgressOptions::default()
                };
                let result = progress(&g.bat, &g.alpha, &opts)
                    .unwrap_or_else(|e| panic!("{class}/{frag} seed {seed}: {e}"));
                assert!(result.stats.output_size_raw <= result.stats.local_bound);
            }
        }
    }
}

#[test]
fn small_generated_instances_are_certified() {
    let opts = OracleOpts {
        n_max: 2,
        ..OracleOpts::default()
    };
    for seed in 0..3 {
        for class in [
            ActionClass::LocalEffect,
            ActionClass::Normal,
            ActionClass::Acyclic,
        ] {
            let g = family(class, 2, seed);
            let result = progress(&g.bat, &g.alpha, &ProgressOptions::default()).unwrap();
            match check_progression(&g.bat, &g.alpha, &result.theory, &opts).unwrap() {
                Outcome::Holds { .. } => {}
                Outcome::Fails(w) => panic!("{class} seed {seed} not certified: {w:?}"),
            }
        }
    }
}

#[test]
fn generated_effect_pairs_never_fire_together() {
    let opts = OracleOpts {
        n_max: 2,
        ..OracleOpts::default()
    };
    for seed in 0..6 {
        for class in [
            ActionClass::LocalEffect,
            ActionClass::Normal,
            ActionClass::Acyclic,
        ] {
            let g = family(class, 3, seed);
            let warnings = consistency_warnings(&g.bat, &g.alpha, &opts).unwrap();
            assert!(warnings.is_empty(), "{class} seed {seed}: {warnings:?}");
        }
    }
}

#[test]
fn fragment_checks_hold_on_raw_family_sources() {
    for seed in 0..5 {
        let g = le_family(3, 3, seed);
        let init: Vec<_> = g.bat.init.iter().map(|f| f.close()).collect();
        check_fo2(&init).unwrap();
        check_utc(&init).unwrap();
    }
}

#[test]
fn dropping_a_conjunct_and_flipping_a_literal_change_the_theory() {
    let g = le_family(2, 3, 7);
    let result = progress(&g.bat, &g.alpha, &ProgressOptions::default()).unwrap();
    let (dropped, why) = mutate(&result.theory, Fault::DropConjunct, 1).unwrap();
    assert_eq!(dropped.len(), result.theory.len() - 1, "{why}");
    let (flipped, why) = mutate(&result.theory, Fault::FlipLiteral, 1).unwrap();
    assert_ne!(flipped, result.theory, "{why}");
    assert_eq!(flipped.len(), result.theory.len());
    assert!(mutate(&[], Fault::DropConjunct, 0).is_none());
}

#[test]
fn mutated_progressions_fail_certification() {
    let opts = OracleOpts {
        n_max: 2,
        ..OracleOpts::default()
    };
    let g = le_family(2, 3, 11);
    let result = progress(&g.bat, &g.alpha, &ProgressOptions::default()).unwrap();
    let mut detected = false;
    for seed in 0..8 {
        let (mutant, _) = mutate(&result.theory, Fault::FlipLiteral, seed).unwrap();
        if let Outcome::Fails(_) = check_progression(&g.bat, &g.alpha, &mutant, &opts).unwrap() {
            detected = true;
            break;
        }
    }
    assert!(detected, "no literal flip was caught by the oracle");
}
