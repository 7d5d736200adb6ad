use std::collections::BTreeSet;

use knotex::diagram::Sign;
use knotex::handles::build::build;
use knotex::handles::HandleStructure;
use knotex::normal::{
    bottom_sphere, cut_along, enumerate_admissible, enumerate_admissible_with_limit,
    enumerate_disc_types, matching_equations, peripheral_torus, realize_surface, solve,
    top_sphere, zero_disc_types, DiscKind, DiscType, EnumError, EnumLimits, NormalCoordinates,
};
use knotex::sample;

fn trefoil_handles() -> HandleStructure {
    build(&sample::trefoil(), false)
}

fn curl_handles() -> HandleStructure {
    let d = knotex::Diagram::from_signed_tuples(&[([1, 2, 2, 1], Sign::Plus)]).unwrap();
    build(&d, false)
}

fn kind_counts(types: &[DiscType]) -> (usize, usize) {
    let tri = types
        .iter()
        .filter(|t| matches!(t.kind, DiscKind::Triangle { .. }))
        .count();
    (tri, types.len() - tri)
}

#[test]
fn corner_zero_census_is_four_triangles_three_squares() {
    let h = trefoil_handles();
    for zero in 0..h.zeros.len() {
        let types = zero_disc_types(&h, zero);
        assert_eq!(kind_counts(&types), (4, 3), "zero {zero}");
        // Triangles cut off each island once; squares use all four.
        for t in &types {
            match t.kind {
                DiscKind::Triangle { .. } => assert_eq!(t.cycle.len(), 3),
                DiscKind::Square { .. } => assert_eq!(t.cycle.len(), 4),
            }
        }
    }
    assert_eq!(enumerate_disc_types(&h).len(), 7 * h.zeros.len());
}

#[test]
fn exceptional_zero_census_is_two_triangles_one_square() {
    let h = build(&sample::trefoil(), true);
    let mut small = 0;
    for zero in 0..h.zeros.len() {
        let types = zero_disc_types(&h, zero);
        match h.zeros[zero] {
            knotex::handles::ZeroKind::Corner { .. } => {
                assert_eq!(kind_counts(&types), (4, 3), "corner zero {zero}")
            }
            knotex::handles::ZeroKind::Exceptional { .. } => {
                assert_eq!(kind_counts(&types), (2, 1), "exceptional zero {zero}");
                small += 1;
            }
        }
    }
    assert_eq!(small, 2);
}

#[test]
fn matching_accepts_push_in_vectors() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    let system = matching_equations(&h, &census);

    let zero = NormalCoordinates::zero(census.len());
    assert!(system.satisfied_by(&zero));

    let per = peripheral_torus(&h, &census);
    assert_eq!(per.weight(), 24);
    assert!(system.satisfied_by(&per));

    let top = top_sphere(&h, &census);
    let bot = bottom_sphere(&h, &census);
    assert_eq!(top.weight(), 12);
    assert_eq!(bot.weight(), 12);
    assert!(system.satisfied_by(&top));
    assert!(system.satisfied_by(&bot));
    assert!(system.satisfied_by(&top.add(&bot)));
    assert!(system.satisfied_by(&per.scale(3)));
}

#[test]
fn two_distinct_squares_at_a_zero_are_rejected() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    let squares: Vec<usize> = census
        .iter()
        .enumerate()
        .filter(|(_, t)| t.zero == 0 && matches!(t.kind, DiscKind::Square { .. }))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(squares.len(), 3);
    let mut v = NormalCoordinates::zero(census.len());
    v.counts[squares[0]] = 1;
    v.counts[squares[1]] = 1;
    let err = solve(&h, &census, &v).unwrap_err();
    assert!(matches!(
        err,
        knotex::normal::SolveError::SquareClash { zero: 0, .. }
    ));
}

#[test]
fn peripheral_torus_realizes_as_a_torus() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    let per = peripheral_torus(&h, &census);
    let s = realize_surface(&h, &census, &per).expect("peripheral realizes");
    assert_eq!(s.weight, 24);
    assert_eq!(s.euler, 0);
    assert!(s.orientable);
    assert!(s.is_connected());
    assert_eq!(s.vertices as i64 - s.edges as i64 + s.faces as i64, 0);
}

#[test]
fn label_spheres_realize_as_spheres() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    for v in [top_sphere(&h, &census), bottom_sphere(&h, &census)] {
        let s = realize_surface(&h, &census, &v).expect("sphere realizes");
        assert_eq!(s.euler, 2);
        assert!(s.orientable);
        assert!(s.is_connected());
    }
    let both = top_sphere(&h, &census).add(&bottom_sphere(&h, &census));
    let s = realize_surface(&h, &census, &both).expect("two spheres realize");
    assert_eq!(s.euler, 4);
    assert_eq!(s.components.len(), 2);
    for c in &s.components {
        assert_eq!(c.euler, 2);
        assert!(c.orientable);
    }
}

#[test]
fn doubled_peripheral_torus_has_two_components() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    let doubled = peripheral_torus(&h, &census).scale(2);
    let s = realize_surface(&h, &census, &doubled).expect("doubled realizes");
    assert_eq!(s.euler, 0);
    assert!(s.orientable);
    assert_eq!(s.components.len(), 2);
    for c in &s.components {
        assert_eq!(c.euler, 0);
        assert!(c.orientable);
    }
}

#[test]
fn push_ins_realize_on_random_diagrams() {
    for seed in 0..6 {
        let d = sample::random_knot(seed, 3 + (seed as usize % 4), 3);
        let h = build(&d, false);
        let census = enumerate_disc_types(&h);
        let system = matching_equations(&h, &census);

        let per = peripheral_torus(&h, &census);
        assert!(system.satisfied_by(&per));
        let s = realize_surface(&h, &census, &per).expect("peripheral realizes");
        assert_eq!(s.euler, 0, "seed {seed}");
        assert!(s.is_connected(), "seed {seed}");
        assert!(s.orientable, "seed {seed}");

        let top = realize_surface(&h, &census, &top_sphere(&h, &census)).unwrap();
        assert_eq!(top.euler, 2, "seed {seed}");
        assert!(top.is_connected(), "seed {seed}");
    }
}

/// Plain lattice scan: every coordinate vector within the weight bound,
/// kept when the matching equations have a solution.
fn brute_force_admissible(h: &HandleStructure, bound: u64) -> Vec<NormalCoordinates> {
    let census = enumerate_disc_types(h);
    let mut out = Vec::new();
    let mut v = NormalCoordinates::zero(census.len());
    fn rec(
        h: &HandleStructure,
        census: &[DiscType],
        v: &mut NormalCoordinates,
        i: usize,
        left: u64,
        out: &mut Vec<NormalCoordinates>,
    ) {
        if i == v.counts.len() {
            if solve(h, census, v).is_ok() {
                out.push(v.clone());
            }
            return;
        }
        for c in 0..=left {
            v.counts[i] = c;
            rec(h, census, v, i + 1, left - c, out);
        }
        v.counts[i] = 0;
    }
    rec(h, &census, &mut v, 0, bound, &mut out);
    out.sort_by(|a, b| a.counts.cmp(&b.counts));
    out
}

#[test]
fn curl_enumeration_matches_brute_force() {
    let h = curl_handles();
    let fast = enumerate_admissible(&h, 6).expect("within limits");
    let slow = brute_force_admissible(&h, 6);
    assert_eq!(fast, slow);
    // The scan must find more than just the empty solution.
    assert!(fast.len() > 1);
    let census = enumerate_disc_types(&h);
    assert!(fast.contains(&top_sphere(&h, &census)));
    assert!(fast.contains(&bottom_sphere(&h, &census)));
}

#[test]
fn trefoil_enumeration_is_closed_and_complete() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    let bound = 24;
    let found = enumerate_admissible(&h, bound).expect("within limits");

    // Every result solves, respects the bound, and the list is sorted+unique.
    for v in &found {
        assert!(v.weight() <= bound);
        assert!(solve(&h, &census, v).is_ok());
    }
    let set: BTreeSet<&NormalCoordinates> = found.iter().collect();
    assert_eq!(set.len(), found.len());

    // The known closed surfaces below the bound all appear.
    let top = top_sphere(&h, &census);
    let bot = bottom_sphere(&h, &census);
    let per = peripheral_torus(&h, &census);
    for v in [
        NormalCoordinates::zero(census.len()),
        top.clone(),
        bot.clone(),
        top.scale(2),
        top.add(&bot),
        bot.scale(2),
        per.clone(),
    ] {
        assert!(found.contains(&v), "missing {:?}", v.counts);
    }

    // Admissibility is closed under addition within the weight bound.
    for a in &found {
        for b in &found {
            if a.weight() + b.weight() <= bound {
                assert!(found.contains(&a.add(b)));
            }
        }
    }
}

#[test]
fn enumeration_node_limit_reports_resource_error() {
    let h = trefoil_handles();
    let err = enumerate_admissible_with_limit(&h, 24, EnumLimits { max_nodes: 10 }).unwrap_err();
    assert!(matches!(err, EnumError::ResourceLimit { .. }));
}

#[test]
fn cutting_along_the_empty_surface_changes_nothing() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    let empty = realize_surface(&h, &census, &NormalCoordinates::zero(census.len())).unwrap();
    let cut = cut_along(&h, &empty).expect("cut");
    let [z, o, t, th] = h.counts();
    assert_eq!(cut.pieces.len(), z + o + t + th);
    assert_eq!(cut.euler(), h.euler());
    assert!(cut.s_cells.is_empty());
    let comps = cut.components();
    assert_eq!(comps.len(), 1);
    assert!(comps[0].touches_boundary);
}

#[test]
fn cutting_along_peripheral_torus_gives_shell_and_core() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    let per = realize_surface(&h, &census, &peripheral_torus(&h, &census)).unwrap();
    let cut = cut_along(&h, &per).expect("cut");
    assert_eq!(cut.euler(), h.euler() + per.euler);
    assert_eq!(cut.pieces.len(), 124);

    let comps = cut.components();
    assert_eq!(comps.len(), 2);
    for c in &comps {
        assert_eq!(c.euler, 0);
    }
    // Exactly one side keeps the manifold boundary; the other swallowed the
    // 3-handles.
    let shell: Vec<_> = comps.iter().filter(|c| c.touches_boundary).collect();
    assert_eq!(shell.len(), 1);
    assert_eq!(shell[0].counts[3], 0);
    let core = comps.iter().find(|c| !c.touches_boundary).unwrap();
    assert_eq!(core.counts[3], 2);
}

#[test]
fn cutting_along_top_sphere_splits_off_a_cap() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    let s = realize_surface(&h, &census, &top_sphere(&h, &census)).unwrap();
    let cut = cut_along(&h, &s).expect("cut");
    assert_eq!(cut.euler(), h.euler() + 2);
    let comps = cut.components();
    assert_eq!(comps.len(), 2);
    for c in &comps {
        assert_eq!(c.euler, 1);
    }
    let cap = comps.iter().find(|c| !c.touches_boundary).unwrap();
    // The cap holds the top 3-handle and nothing from the other end.
    assert_eq!(cap.counts[3], 1);
}

#[test]
fn cutting_along_doubled_torus_gives_three_shells() {
    let h = trefoil_handles();
    let census = enumerate_disc_types(&h);
    let doubled = peripheral_torus(&h, &census).scale(2);
    let s = realize_surface(&h, &census, &doubled).unwrap();
    let cut = cut_along(&h, &s).expect("cut");
    assert_eq!(cut.pieces.len(), 196);
    assert_eq!(cut.euler(), 0);
    let comps = cut.components();
    assert_eq!(comps.len(), 3);
    for c in &comps {
        assert_eq!(c.euler, 0);
    }
    let boundary_side: Vec<_> = comps.iter().filter(|c| c.touches_boundary).collect();
    assert_eq!(boundary_side.len(), 1);
    // The middle shell is the product between the two copies: no boundary,
    // no 3-handles.
    let middles: Vec<_> = comps
        .iter()
        .filter(|c| !c.touches_boundary && c.counts[3] == 0)
        .collect();
    assert_eq!(middles.len(), 1);
    assert_eq!(middles[0].pieces.len(), 72);
}
