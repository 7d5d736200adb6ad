use std::collections::BTreeSet;

use knotex::handles::boundary::check_boundary;
use knotex::handles::build::build;
use knotex::handles::pattern::zero_pattern;
use knotex::handles::verify::{expected_counts, patch_islands, verify};
use knotex::handles::{ArcSide, FreeLabel, HandleStructure, ThreeKind, TwoKind};
use knotex::sample;
use proptest::prelude::*;

fn trefoil() -> knotex::Diagram {
    sample::trefoil()
}

#[test]
fn trefoil_plain_counts_frozen() {
    let h = build(&trefoil(), false);
    assert_eq!(h.counts(), [12, 24, 14, 2]);
    assert_eq!(h.euler(), 0);
    assert_eq!(h.bridges.len(), 72);
    assert_eq!(h.threes, vec![ThreeKind::Top, ThreeKind::Bottom]);
    let kinds: Vec<usize> = [
        h.twos
            .iter()
            .filter(|t| matches!(t.kind, TwoKind::Room { .. }))
            .count(),
        h.twos
            .iter()
            .filter(|t| matches!(t.kind, TwoKind::Face { .. }))
            .count(),
        h.twos
            .iter()
            .filter(|t| matches!(t.kind, TwoKind::Above { .. }))
            .count(),
        h.twos
            .iter()
            .filter(|t| matches!(t.kind, TwoKind::Below { .. }))
            .count(),
    ]
    .into();
    assert_eq!(kinds, vec![3, 5, 3, 3]);
}

#[test]
fn trefoil_exceptional_counts_frozen() {
    let h = build(&trefoil(), true);
    assert_eq!(h.counts(), [14, 28, 16, 2]);
    assert_eq!(h.euler(), 0);
    assert_eq!(h.bridges.len(), 82);
}

#[test]
fn every_wall_and_follower_carries_three_strips() {
    for exceptional in [false, true] {
        let h = build(&trefoil(), exceptional);
        for one in &h.ones {
            let strips = one.sides.iter().filter(|s| s.is_strip()).count();
            let want = match one.kind {
                knotex::handles::OneKind::Crossbar { .. } => 2,
                _ => 3,
            };
            assert_eq!(strips, want, "{:?}", one.kind);
            assert_eq!(one.sides.len(), 2 * want);
        }
    }
}

#[test]
fn trefoil_verifies() {
    let h = build(&trefoil(), false);
    let report = verify(&h).expect("plain trefoil structure verifies");
    assert_eq!(report.counts, [12, 24, 14, 2]);
    assert_eq!(report.bridges, 72);
    // Per corner block: one patch facing each 3-handle, two facing the knot.
    assert_eq!(report.patches, [12, 12, 24]);
}

#[test]
fn trefoil_exceptional_verifies() {
    let h = build(&trefoil(), true);
    let report = verify(&h).expect("exceptional trefoil structure verifies");
    assert_eq!(report.counts, [14, 28, 16, 2]);
    assert_eq!(report.bridges, 82);
    // Corner blocks contribute 4 patches each, the two mid-arc blocks 3 each.
    assert_eq!(report.patches, [14, 14, 26]);
}

#[test]
fn corner_block_patch_census() {
    let d = trefoil();
    let h = build(&d, false);
    // Corner 0 of crossing 0 lies between the under-strand entering along
    // arc 1 (direction 0) and the over-strand entering along arc 4
    // (direction 1).
    let su = (h.find_wall(0, 0), 1);
    let so = (h.find_wall(0, 1), 0);
    let fu = (h.find_follower(1, ArcSide::Right).unwrap(), 1);
    let fo = (h.find_follower(4, ArcSide::Left).unwrap(), 1);
    let p = zero_pattern(&h, 0).unwrap();
    assert_eq!(p.islands.len(), 4);
    assert_eq!(p.bridges.len(), 6);

    let pi = patch_islands(&p);
    let set = |items: &[(usize, usize)]| items.iter().copied().collect::<BTreeSet<_>>();
    assert_eq!(pi[&FreeLabel::Top], vec![set(&[su, fu, fo])]);
    assert_eq!(pi[&FreeLabel::Bottom], vec![set(&[so, fu, fo])]);
    let mut bdry = pi[&FreeLabel::Bdry].clone();
    bdry.sort();
    let mut want = vec![set(&[su, so, fu]), set(&[su, so, fo])];
    want.sort();
    assert_eq!(bdry, want);
}

#[test]
fn exceptional_block_patch_census() {
    let d = trefoil();
    let h = build(&d, true);
    let c = d.len();
    for zero in [4 * c, 4 * c + 1] {
        let p = zero_pattern(&h, zero).unwrap();
        assert_eq!(p.islands.len(), 4);
        assert_eq!(p.bridges.len(), 5);
        let mut labels: Vec<FreeLabel> = p.patches.iter().map(|x| x.label).collect();
        labels.sort();
        assert_eq!(
            labels,
            vec![FreeLabel::Top, FreeLabel::Bottom, FreeLabel::Bdry]
        );
        for patch in &p.patches {
            let want = if patch.label == FreeLabel::Bdry { 8 } else { 6 };
            assert_eq!(patch.walk.len(), want, "{:?}", patch.label);
        }
    }
}

#[test]
fn trefoil_boundary_census() {
    let h = build(&trefoil(), false);
    let report = check_boundary(&h).expect("boundary closes up");
    assert_eq!(
        report.summary(),
        vec![
            (FreeLabel::Top, 2, true),
            (FreeLabel::Bottom, 2, true),
            (FreeLabel::Bdry, 0, true),
        ]
    );
    let faces: Vec<usize> = report.components.iter().map(|c| c.faces).collect();
    assert_eq!(faces, vec![38, 38, 72]);
}

#[test]
fn trefoil_exceptional_boundary_census() {
    let h = build(&trefoil(), true);
    let report = check_boundary(&h).expect("boundary closes up");
    assert_eq!(
        report.summary(),
        vec![
            (FreeLabel::Top, 2, true),
            (FreeLabel::Bottom, 2, true),
            (FreeLabel::Bdry, 0, true),
        ]
    );
    let faces: Vec<usize> = report.components.iter().map(|c| c.faces).collect();
    assert_eq!(faces, vec![44, 44, 80]);
}

#[test]
fn figure_eight_round_trip() {
    let d = sample::figure_eight();
    for (exceptional, zeros) in [(false, 16), (true, 18)] {
        let h = build(&d, exceptional);
        assert_eq!(h.counts(), expected_counts(4, exceptional, false));
        assert_eq!(h.zeros.len(), zeros);
        verify(&h).expect("figure eight verifies");
        check_boundary(&h).expect("figure eight boundary");

        let json = serde_json::to_string(&h).unwrap();
        let back: HandleStructure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, h);
    }
}

#[test]
fn kinked_diagrams_build() {
    let d = trefoil().with_kinks(1, 1);
    for exceptional in [false, true] {
        let h = build(&d, exceptional);
        verify(&h).expect("kinked diagram verifies");
        check_boundary(&h).expect("kinked diagram boundary");
    }
}

#[test]
fn one_crossing_curl_builds() {
    use knotex::diagram::Sign;
    let d = knotex::Diagram::from_signed_tuples(&[([1, 2, 2, 1], Sign::Plus)]).unwrap();
    let h = build(&d, false);
    assert_eq!(h.counts(), [4, 8, 6, 2]);
    verify(&h).expect("curl verifies");
    check_boundary(&h).expect("curl boundary");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_diagrams_verify(seed in 0u64..5000, crossings in 3usize..9, strands in 2usize..4, exceptional in any::<bool>()) {
        let d = sample::random_knot(seed, crossings, strands);
        let h = build(&d, exceptional);
        prop_assert_eq!(h.counts(), expected_counts(d.len(), exceptional, false));
        let report = verify(&h);
        prop_assert!(report.is_ok(), "{:?}", report.err());
        let b = check_boundary(&h);
        prop_assert!(b.is_ok(), "{:?}", b.err());
    }
}
