use std::collections::BTreeMap;

use knotex::geom::{ratio, Rat};
use knotex::ledger::{
    cable_companion_bound, eval_formula, faces_after_cut, non_parallelity_pieces,
    prime_companion_bound, satellite_bound, verify_constants, verify_inequalities,
    BoundCertificate, BoundStep, EvalError, LedgerError, ReplayError, SimplificationRecord,
    CORE_CURVE_BUDGET, SQUARE_POLYGONS, TRIANGLE_POLYGONS,
};
use knotex::normal::DiscKind;
use proptest::prelude::*;

fn all_true() -> SimplificationRecord {
    SimplificationRecord {
        exceptional_free_structure: true,
        annular_simplifications_exhausted: true,
        horizontal_boundary_incompressible: true,
        bundle_annuli_non_meridional: true,
        curve_single_arc_per_handle: true,
    }
}

fn step_value(cert: &BoundCertificate, label: &str) -> i128 {
    cert.steps
        .iter()
        .find(|s| s.label == label)
        .unwrap_or_else(|| panic!("no step {label}"))
        .value
}

#[test]
fn evaluator_units() {
    let env: BTreeMap<String, Rat> = [("n".to_string(), Rat::from_integer(7.into()))].into();
    let ev = |f: &str| eval_formula(f, &env);
    assert_eq!(ev("2 + 3*4"), Ok(Rat::from_integer(14.into())));
    assert_eq!(ev("(2 + 3)*4"), Ok(Rat::from_integer(20.into())));
    assert_eq!(ev("7/2"), Ok(ratio(7, 2)));
    assert_eq!(ev("ceil(7/2)"), Ok(Rat::from_integer(4.into())));
    assert_eq!(ev("ceil(6/2)"), Ok(Rat::from_integer(3.into())));
    assert_eq!(ev("ceil(-7/2)"), Ok(Rat::from_integer((-3).into())));
    assert_eq!(ev("-(2 + n)"), Ok(Rat::from_integer((-9).into())));
    assert_eq!(ev("n*n - 1"), Ok(Rat::from_integer(48.into())));
    assert_eq!(ev("m"), Err(EvalError::UnknownName("m".to_string())));
    assert_eq!(ev("1/0"), Err(EvalError::DivisionByZero));
    assert_eq!(ev("1/(2 - 2)"), Err(EvalError::DivisionByZero));
    assert_eq!(ev("2 3"), Err(EvalError::Trailing));
    assert_eq!(ev("2 + "), Err(EvalError::Truncated));
    assert_eq!(ev("(1"), Err(EvalError::Expected(')')));
    assert_eq!(ev("2 @ 3"), Err(EvalError::Trailing));
    assert_eq!(ev("@"), Err(EvalError::BadChar('@')));
}

#[test]
fn satellite_certificate_frozen() {
    let cert = satellite_bound(3).unwrap();
    assert_eq!(cert.chain, "satellite");
    assert_eq!(cert.inputs, [("c".to_string(), 3)].into());
    assert_eq!(step_value(&cert, "zero_handles"), 14);
    assert_eq!(step_value(&cert, "spine_arcs_per_zero"), 67968);
    assert_eq!(step_value(&cert, "spine_crossings_per_zero"), 4619649024);
    assert_eq!(step_value(&cert, "spine_crossing_coeff"), 21558362112);
    assert_eq!(step_value(&cert, "spine_coeff_rounded"), 30_000_000_000);
    assert_eq!(step_value(&cert, "band_arcs_per_zero"), 64);
    assert_eq!(step_value(&cert, "band_pairs_per_zero"), 2048);
    assert_eq!(step_value(&cert, "band_crossing_coeff"), 9558);
    assert_eq!(step_value(&cert, "band_closed_coeff"), 2275262784);
    assert_eq!(step_value(&cert, "band_coeff_rounded"), 3_000_000_000);
    assert_eq!(step_value(&cert, "external_projection_factor"), 152);
    assert_eq!(step_value(&cert, "closed_coeff"), 4_560_000_000_000);
    assert_eq!(step_value(&cert, "final_coeff"), 10_000_000_000_000);
    assert_eq!(cert.bound, 30_000_000_000_000);
    assert_eq!(cert.bound, cert.steps.last().unwrap().value);
    cert.replay().unwrap();

    assert_eq!(satellite_bound(2), Err(LedgerError::TooFewCrossings { c: 2 }));
    assert_eq!(satellite_bound(-1), Err(LedgerError::TooFewCrossings { c: -1 }));
}

#[test]
fn cable_certificate_frozen() {
    let cert = cable_companion_bound(5, 2).unwrap();
    assert_eq!(cert.chain, "cable");
    assert_eq!(step_value(&cert, "pattern_crossings"), 14);
    assert_eq!(step_value(&cert, "zero_handles"), 56);
    assert_eq!(step_value(&cert, "boundary_cells"), 22);
    assert_eq!(step_value(&cert, "cells"), 86);
    assert_eq!(step_value(&cert, "direct_coeff"), 29240);
    assert_eq!(step_value(&cert, "direct_bound"), 29240 * 7);
    assert_eq!(step_value(&cert, "straight_arcs"), 173);
    assert_eq!(step_value(&cert, "annulus_coeff"), 119024);
    assert_eq!(cert.bound, 119024 * 7);
    cert.replay().unwrap();

    let untwisted = cable_companion_bound(4, 0).unwrap();
    assert_eq!(untwisted.bound, 119024 * 4);
    assert_eq!(
        cable_companion_bound(-1, 0),
        Err(LedgerError::NegativeInput { name: "c", value: -1 })
    );
    assert_eq!(
        cable_companion_bound(3, -2),
        Err(LedgerError::NegativeInput { name: "twist", value: -2 })
    );
}

#[test]
fn prime_certificate_requires_every_flag() {
    let cert = prime_companion_bound(3, &all_true()).unwrap();
    assert_eq!(cert.chain, "prime-companion");
    assert_eq!(cert.bound, 456);
    assert_eq!(cert.assumptions.len(), 5);
    cert.replay().unwrap();
    assert_eq!(prime_companion_bound(0, &all_true()).unwrap().bound, 0);

    let drops: [(fn(&mut SimplificationRecord), &str); 5] = [
        (|r| r.exceptional_free_structure = false, "exceptional_free_structure"),
        (
            |r| r.annular_simplifications_exhausted = false,
            "annular_simplifications_exhausted",
        ),
        (
            |r| r.horizontal_boundary_incompressible = false,
            "horizontal_boundary_incompressible",
        ),
        (
            |r| r.bundle_annuli_non_meridional = false,
            "bundle_annuli_non_meridional",
        ),
        (
            |r| r.curve_single_arc_per_handle = false,
            "curve_single_arc_per_handle",
        ),
    ];
    for (drop, name) in drops {
        let mut record = all_true();
        drop(&mut record);
        assert_eq!(
            prime_companion_bound(3, &record),
            Err(LedgerError::MissingHypothesis { name })
        );
    }
    assert!(matches!(
        prime_companion_bound(-4, &all_true()),
        Err(LedgerError::NegativeInput { name: "c", .. })
    ));
}

#[test]
fn replay_detects_tampering() {
    let good = satellite_bound(4).unwrap();

    let mut wrong_value = good.clone();
    wrong_value.steps[2].value += 1;
    assert!(matches!(
        wrong_value.replay(),
        Err(ReplayError::ValueMismatch { step: 2, .. })
    ));

    let mut wrong_formula = good.clone();
    wrong_formula.steps[0].formula = "4*c + 3".to_string();
    assert!(matches!(
        wrong_formula.replay(),
        Err(ReplayError::ValueMismatch { step: 0, .. })
    ));

    let mut wrong_bound = good.clone();
    wrong_bound.bound += 1;
    assert!(matches!(
        wrong_bound.replay(),
        Err(ReplayError::BoundMismatch { .. })
    ));

    let mut bad_name = good.clone();
    bad_name.steps[3].formula = "no_such_step * 2".to_string();
    assert!(matches!(
        bad_name.replay(),
        Err(ReplayError::Eval {
            step: 3,
            error: EvalError::UnknownName(_),
            ..
        })
    ));

    let mut duplicated = good.clone();
    duplicated.steps[1].label = "zero_handles".to_string();
    assert!(matches!(
        duplicated.replay(),
        Err(ReplayError::DuplicateLabel { step: 1, .. })
    ));

    let mut empty = good.clone();
    empty.steps.clear();
    assert_eq!(empty.replay(), Err(ReplayError::EmptyChain));

    let fraction = BoundCertificate {
        tool_version: good.tool_version.clone(),
        chain: "test".to_string(),
        inputs: BTreeMap::new(),
        assumptions: Vec::new(),
        steps: vec![BoundStep {
            label: "half".to_string(),
            formula: "1/2".to_string(),
            value: 0,
        }],
        bound: 0,
    };
    assert!(matches!(
        fraction.replay(),
        Err(ReplayError::NotInteger { step: 0, .. })
    ));
}

#[test]
fn json_round_trip_is_byte_identical() {
    for cert in [
        satellite_bound(7).unwrap(),
        cable_companion_bound(6, 3).unwrap(),
        prime_companion_bound(9, &all_true()).unwrap(),
    ] {
        let text = cert.to_json();
        assert_eq!(text, cert.to_json());
        let back = BoundCertificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), text);
        back.replay().unwrap();
        assert!(text.ends_with('\n'));
    }
}

#[test]
fn face_census_table_frozen() {
    let empty = faces_after_cut(&[]).unwrap();
    assert_eq!(
        (empty.island_strips, empty.bridge_strips, empty.patch_pieces, empty.disc_faces),
        (4, 6, 16, 0)
    );
    assert_eq!(empty.total(), 26);

    let mut every = vec![
        DiscKind::Triangle { corner: 1 },
        DiscKind::Triangle { corner: 2 },
        DiscKind::Triangle { corner: 3 },
        DiscKind::Triangle { corner: 4 },
        DiscKind::Square { separation: 2 },
    ];
    let full = faces_after_cut(&every).unwrap();
    assert_eq!(
        (full.island_strips, full.bridge_strips, full.patch_pieces, full.disc_faces),
        (20, 22, 16, 178)
    );
    assert_eq!(full.total(), 236);

    // Parallel copies collapse to their kind set.
    every.push(DiscKind::Triangle { corner: 1 });
    every.push(DiscKind::Square { separation: 2 });
    assert_eq!(faces_after_cut(&every).unwrap(), full);

    let one_triangle = faces_after_cut(&[DiscKind::Triangle { corner: 1 }]).unwrap();
    assert_eq!(
        (
            one_triangle.island_strips,
            one_triangle.bridge_strips,
            one_triangle.disc_faces
        ),
        (7, 9, 2 * TRIANGLE_POLYGONS)
    );
    assert_eq!(one_triangle.total(), 64);

    let one_square = faces_after_cut(&[DiscKind::Square { separation: 1 }]).unwrap();
    assert_eq!(
        (one_square.island_strips, one_square.bridge_strips, one_square.disc_faces),
        (8, 10, 2 * SQUARE_POLYGONS)
    );
    assert_eq!(one_square.total(), 84);

    assert_eq!(
        faces_after_cut(&[
            DiscKind::Square { separation: 1 },
            DiscKind::Square { separation: 3 },
        ]),
        Err(LedgerError::SecondSquareType)
    );
    assert_eq!(
        faces_after_cut(&[DiscKind::Triangle { corner: 0 }]),
        Err(LedgerError::BadKind(DiscKind::Triangle { corner: 0 }))
    );
    assert_eq!(
        faces_after_cut(&[DiscKind::Square { separation: 4 }]),
        Err(LedgerError::BadKind(DiscKind::Square { separation: 4 }))
    );
}

#[test]
fn non_parallelity_pieces_stay_under_budget() {
    assert_eq!(non_parallelity_pieces(&[]).unwrap(), 1);
    let kinds = [
        DiscKind::Triangle { corner: 1 },
        DiscKind::Triangle { corner: 2 },
        DiscKind::Triangle { corner: 3 },
        DiscKind::Triangle { corner: 4 },
        DiscKind::Square { separation: 3 },
    ];
    assert_eq!(non_parallelity_pieces(&kinds).unwrap(), 6);
    for mask in 0u32..32 {
        let subset: Vec<DiscKind> = kinds
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &k)| k)
            .collect();
        let pieces = non_parallelity_pieces(&subset).unwrap();
        assert!(pieces <= 6);
        assert_eq!(pieces, subset.len() + 1);
    }
}

#[test]
fn budget_constants_frozen() {
    assert_eq!(CORE_CURVE_BUDGET.arcs_per_one, 24);
    assert_eq!(CORE_CURVE_BUDGET.arcs_per_zero, 48);
    assert_eq!(CORE_CURVE_BUDGET.face_meetings, 6);
    assert_eq!(CORE_CURVE_BUDGET.max_islands, 4);
    assert_eq!(CORE_CURVE_BUDGET.max_strips, 3);
    assert_eq!(TRIANGLE_POLYGONS, 16);
    assert_eq!(SQUARE_POLYGONS, 25);
}

#[test]
fn every_constant_rederives() {
    let checks = verify_constants();
    assert!(checks.len() >= 24);
    let mut names: Vec<&str> = checks.iter().map(|c| c.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), checks.len(), "duplicate check names");
    for check in &checks {
        assert!(check.ok, "{}: expected {}, derived {}", check.name, check.expected, check.derived);
        assert_eq!(check.expected, check.derived);
    }
    let find = |name: &str| checks.iter().find(|c| c.name == name).unwrap();
    assert_eq!(find("block_faces").derived, 26);
    assert_eq!(find("triangle_polygons").derived, 16);
    assert_eq!(find("square_polygons").derived, 25);
    assert_eq!(find("full_cut_faces").derived, 236);
    assert_eq!(find("spine_crossing_coeff").derived, 21558362112);
    assert_eq!(find("cable_annulus_coeff").derived, 119024);
}

#[test]
fn every_inequality_holds() {
    let checks = verify_inequalities();
    assert!(checks.len() >= 5);
    for check in &checks {
        assert!(
            check.ok,
            "{}: {} = {} exceeds {} = {}",
            check.name, check.smaller, check.smaller_value, check.larger, check.larger_value
        );
        assert!(check.smaller_value <= check.larger_value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn satellite_bound_replays_and_grows(c in 3i128..1_000_000_000) {
        let cert = satellite_bound(c).unwrap();
        prop_assert_eq!(cert.bound, 10_000_000_000_000 * c);
        prop_assert!(cert.replay().is_ok());
        let next = satellite_bound(c + 1).unwrap();
        prop_assert!(next.bound > cert.bound);
    }

    #[test]
    fn cable_bound_replays_and_grows(c in 0i128..1_000_000_000, t in 0i128..1_000_000) {
        let cert = cable_companion_bound(c, t).unwrap();
        prop_assert_eq!(cert.bound, 119024 * (c + t));
        prop_assert!(cert.replay().is_ok());
        prop_assert!(cable_companion_bound(c + 1, t).unwrap().bound > cert.bound);
        prop_assert!(cable_companion_bound(c, t + 1).unwrap().bound > cert.bound);
    }

    #[test]
    fn prime_bound_replays_and_grows(c in 0i128..1_000_000_000) {
        let cert = prime_companion_bound(c, &all_true()).unwrap();
        prop_assert_eq!(cert.bound, 152 * c);
        prop_assert!(cert.replay().is_ok());
        prop_assert!(prime_companion_bound(c + 1, &all_true()).unwrap().bound > cert.bound);
    }
}
