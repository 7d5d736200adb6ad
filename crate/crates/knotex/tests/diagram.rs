use knotex::diagram::{face_walks, Diagram, DiagramError, Sign};
use knotex::sample;
use proptest::prelude::*;

fn revalidate(d: &Diagram) {
    assert!(Diagram::from_signed(d.crossings().to_vec()).is_ok());
}

#[test]
fn trefoil_signs_inferred() {
    let d = sample::trefoil();
    assert_eq!(d.len(), 3);
    assert!(d.crossings().iter().all(|c| c.sign == Sign::Plus));
    assert_eq!(d.writhe(), 3);
}

#[test]
fn trefoil_mirror_is_valid_with_opposite_writhe() {
    // reversing each tuple's rotational order mirrors the diagram
    let d = Diagram::from_signed_tuples(&[
        ([1, 5, 2, 4], Sign::Minus),
        ([3, 1, 4, 6], Sign::Minus),
        ([5, 3, 6, 2], Sign::Minus),
    ])
    .unwrap();
    assert_eq!(d.writhe(), -3);
}

#[test]
fn trefoil_gauss_round_trip() {
    let d = sample::trefoil();
    assert_eq!(d.gauss_string(), "U1+ O2+ U3+ O1+ U2+ O3+");
    let back = Diagram::from_gauss_str(&d.gauss_string()).unwrap();
    assert!(d.same_diagram(&back));
}

#[test]
fn braid_trefoil_matches_pinned_tuples() {
    let braided = sample::braid_closure(2, &[-1, -1, -1]).unwrap();
    assert!(braided.same_diagram(&sample::trefoil()));
}

#[test]
fn figure_eight_has_balanced_writhe() {
    let d = sample::figure_eight();
    assert_eq!(d.len(), 4);
    assert_eq!(d.writhe(), 0);
    let plus = d
        .crossings()
        .iter()
        .filter(|c| c.sign == Sign::Plus)
        .count();
    assert_eq!(plus, 2);
}

#[test]
fn kinks_change_writhe_by_one() {
    let d = sample::trefoil();
    let k = d.with_kink(Sign::Plus);
    assert_eq!(k.len(), 4);
    assert_eq!(k.writhe(), 4);
    revalidate(&k);
    let many = d.with_kinks(2, 3);
    assert_eq!(many.len(), 8);
    assert_eq!(many.writhe(), 3 + 2 - 3);
    revalidate(&many);
}

#[test]
fn one_crossing_curls() {
    let plus = Diagram::from_signed_tuples(&[([1, 2, 2, 1], Sign::Plus)]).unwrap();
    assert_eq!(plus.writhe(), 1);
    let minus = Diagram::from_signed_tuples(&[([1, 1, 2, 2], Sign::Minus)]).unwrap();
    assert_eq!(minus.writhe(), -1);
    // with the other sign the loop arc would enter twice
    assert_eq!(
        Diagram::from_signed_tuples(&[([1, 2, 2, 1], Sign::Minus)]),
        Err(DiagramError::BadOrientation(1))
    );
    // unsigned, both orientations fit a single curl
    assert_eq!(
        Diagram::from_tuples(&[[1, 2, 2, 1]]),
        Err(DiagramError::AmbiguousSign(0))
    );
}

#[test]
fn nonplanar_code_rejected() {
    // two interleaved crossings: closes up combinatorially but only on a torus
    let err = Diagram::from_signed_tuples(&[
        ([3, 1, 4, 2], Sign::Plus),
        ([4, 2, 1, 3], Sign::Plus),
    ])
    .unwrap_err();
    assert_eq!(
        err,
        DiagramError::NonPlanar {
            faces: 2,
            crossings: 2
        }
    );
    let err = Diagram::from_gauss_str("O1+ O2+ U1+ U2+").unwrap_err();
    assert!(matches!(err, DiagramError::NonPlanar { faces: 2, .. }));
}

#[test]
fn links_rejected() {
    assert_eq!(
        sample::braid_closure(2, &[1, 1]),
        Err(DiagramError::MultipleComponents(2))
    );
}

#[test]
fn label_multiplicity_checked() {
    let err = Diagram::from_signed_tuples(&[
        ([1, 4, 2, 5], Sign::Plus),
        ([3, 6, 4, 1], Sign::Plus),
        ([5, 2, 6, 1], Sign::Plus),
    ])
    .unwrap_err();
    assert_eq!(err, DiagramError::LabelMultiplicity(1, 3));
}

#[test]
fn relabelled_trefoil_is_same_diagram() {
    let shifted = Diagram::from_tuples(&[[2, 5, 3, 6], [4, 1, 5, 2], [6, 3, 1, 4]]).unwrap();
    assert!(shifted.same_diagram(&sample::trefoil()));
    assert_ne!(shifted, sample::trefoil());
}

#[test]
fn json_round_trip() {
    let d = sample::figure_eight();
    let back = Diagram::from_json(&d.to_json()).unwrap();
    assert_eq!(d, back);
}

#[test]
fn json_validates() {
    let bad = r#"{"crossings":[{"arcs":[1,2,3,4],"sign":"+"}]}"#;
    assert!(Diagram::from_json(bad).is_err());
}

#[test]
fn face_count_matches_sphere_formula() {
    for d in [sample::trefoil(), sample::figure_eight()] {
        let walks = face_walks(&d);
        assert_eq!(walks.len(), d.len() + 2);
        assert_eq!(walks.iter().map(|w| w.len()).sum::<usize>(), 4 * d.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_knots_hold_invariants(seed in any::<u64>(), c in 1usize..12, strands in 2usize..5) {
        let d = sample::random_knot(seed, c, strands);
        revalidate(&d);

        let walks = face_walks(&d);
        prop_assert_eq!(walks.len(), d.len() + 2);

        let back = Diagram::from_gauss_str(&d.gauss_string()).unwrap();
        prop_assert!(d.same_diagram(&back));

        let json_back = Diagram::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(&json_back, &d);

        let kinked = d.with_kink(Sign::Minus);
        prop_assert_eq!(kinked.len(), d.len() + 1);
        prop_assert_eq!(kinked.writhe(), d.writhe() - 1);
        revalidate(&kinked);
    }
}
