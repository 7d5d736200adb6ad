use std::collections::{BTreeMap, BTreeSet, VecDeque};

use knotex::bundles::synth::{finger_chain, moebius_ring, pleat_ring, two_pleat};
use knotex::bundles::{
    apply_annular_move, assemble_bundle, attach_solid_torus, find_annular_move,
    find_parallelity_handles, replace_disc_bundles, same_class, straighten_boundary_curve,
    verify_gpb, AttachError, BaseKind, BundleError, MoveError, ReplaceError, StraightenError,
};
use knotex::handles::boundary::{boundary_faces, check_boundary, EdgeKey, VertexKey};
use knotex::handles::build::build;
use knotex::handles::verify::verify;
use knotex::handles::{FreeLabel, HandleStructure, OneKind, ZeroKind};
use knotex::normal::{
    cut_along, enumerate_disc_types, peripheral_torus, realize_surface, zero_disc_types, CellShape,
    CutComplex, DiscKind,
};
use knotex::sample;

fn torus_cut(copies: u64) -> CutComplex {
    let h = build(&sample::trefoil(), false);
    let census = enumerate_disc_types(&h);
    let per = peripheral_torus(&h, &census);
    let v = if copies == 1 { per } else { per.scale(copies) };
    let s = realize_surface(&h, &census, &v).expect("peripheral surface realizes");
    cut_along(&h, &s).expect("cut complex is consistent")
}

/// Flagged pieces counted by handle index.
fn flag_census(c: &CutComplex) -> [usize; 4] {
    let flags = find_parallelity_handles(c);
    let mut by_index = [0usize; 4];
    for (p, &f) in flags.iter().enumerate() {
        if f {
            by_index[c.pieces[p].index as usize] += 1;
        }
    }
    by_index
}

#[test]
fn doubled_torus_parallelity_census() {
    let cut = torus_cut(2);
    assert_eq!(cut.pieces.len(), 196);
    assert_eq!(flag_census(&cut), [24, 36, 15, 0]);
}

#[test]
fn doubled_torus_assembles_product_shell_and_disc_pockets() {
    let cut = torus_cut(2);
    let bundle = assemble_bundle(&cut).expect("product structures line up");
    assert_eq!(bundle.flagged.len(), 75);

    let mut big = Vec::new();
    let mut small = Vec::new();
    for comp in &bundle.components {
        if comp.pieces.len() == 1 {
            small.push(comp);
        } else {
            big.push(comp);
        }
    }

    // The region between the two parallel copies is one bundle over a torus:
    // closed vertical boundary, horizontal boundary = the two copies.
    assert_eq!(big.len(), 1);
    assert_eq!(big[0].pieces.len(), 72);
    assert_eq!(big[0].base, BaseKind::Torus);
    assert!(big[0].frontier.is_empty());
    assert_eq!(big[0].h_components, 2);
    assert_eq!(big[0].h_euler, 0);
    assert!(verify_gpb(&cut, &big[0].pieces).pass());

    // Each crossing room keeps one product pocket between same-copy discs.
    assert_eq!(small.len(), 3);
    for comp in &small {
        assert_eq!(comp.base, BaseKind::Disc);
        assert!(!comp.frontier.is_empty());
        assert_eq!(cut.pieces[comp.pieces[0]].index, 2);
        assert!(verify_gpb(&cut, &comp.pieces).pass());
    }

    // Nothing here leans on the manifold boundary, so no annular move exists.
    assert!(find_annular_move(&cut).unwrap().is_none());
}

#[test]
fn single_torus_disc_pockets_replace_cleanly() {
    let cut = torus_cut(1);
    assert_eq!(cut.pieces.len(), 124);
    assert_eq!(flag_census(&cut), [0, 0, 3, 0]);

    let bundle = assemble_bundle(&cut).unwrap();
    assert_eq!(bundle.components.len(), 3);
    for comp in &bundle.components {
        assert_eq!(comp.pieces.len(), 1);
        assert_eq!(comp.base, BaseKind::Disc);
        assert_eq!(comp.h_euler, 2);
        assert_eq!(comp.h_components, 2);
    }

    let out = replace_disc_bundles(&cut).unwrap();
    assert_eq!(out.pieces.len(), 124);
    assert_eq!(out.euler(), cut.euler());
    for ci in 0..3 {
        let cap = out.piece_by_name(&format!("cap:{ci}")).expect("cap piece");
        assert_eq!(out.pieces[cap].index, 2);
        assert_eq!(out.pieces[cap].s_faces.len(), 2);
    }
    // The replacement is a fixpoint: no parallelity handles remain.
    assert_eq!(flag_census(&out), [0, 0, 0, 0]);
    assert!(assemble_bundle(&out).unwrap().components.is_empty());
}

#[test]
fn pleat_ring_census_and_move() {
    let c1 = pleat_ring(3);
    assert_eq!(c1.pieces.len(), 18);
    let flags = find_parallelity_handles(&c1);
    let flagged: Vec<usize> = (0..18).filter(|&p| flags[p]).collect();
    assert_eq!(flagged, vec![0, 1, 2, 3, 4, 5]);

    let bundle = assemble_bundle(&c1).unwrap();
    assert_eq!(bundle.components.len(), 1);
    let comp = &bundle.components[0];
    assert_eq!(comp.pieces, vec![0, 1, 2, 3, 4, 5]);
    assert_eq!(comp.base, BaseKind::Annulus);
    assert_eq!(comp.h_euler, 0);
    assert_eq!(comp.h_components, 2);

    let mv = find_annular_move(&c1).unwrap().expect("pleated annulus moves");
    assert_eq!(mv.component, vec![0, 1, 2, 3, 4, 5]);
    assert_eq!(mv.collar, (12..18).collect::<Vec<_>>());
    assert_eq!(mv.removed, (0..6).chain(12..18).collect::<Vec<_>>());
    assert_eq!(mv.kept_annulus.len(), 6);
    for &fi in &mv.kept_annulus {
        assert!(c1.interfaces[fi].label.starts_with("pleat:in"));
    }

    let c2 = apply_annular_move(&c1, &mv).unwrap();
    assert_eq!(c2.pieces.len(), 6);
    assert_eq!(c2.euler(), c1.euler());
    for i in 0..6 {
        let p = c2.piece_by_name(&format!("pleatK{i}")).expect("core survives");
        assert_eq!(c2.pieces[p].s_faces.len(), 1);
        let cell = c2.pieces[p].s_faces[0];
        assert!(matches!(&c2.s_cells[cell].shape, CellShape::Tag(t) if t.starts_with("exposed:")));
    }
    assert!(find_annular_move(&c2).unwrap().is_none());

    // A move found on the old complex no longer applies.
    assert!(matches!(apply_annular_move(&c2, &mv), Err(MoveError::Stale)));

    // The annulus bundle is not a disc bundle, so replacement refuses it.
    assert!(matches!(
        replace_disc_bundles(&c1),
        Err(ReplaceError::NonDisc { base: BaseKind::Annulus })
    ));
}

#[test]
fn nested_pleats_strip_outside_in() {
    let c1 = two_pleat(2);
    assert_eq!(c1.pieces.len(), 24);

    let mv1 = find_annular_move(&c1).unwrap().expect("outer pleat moves");
    assert_eq!(mv1.component, vec![0, 1, 2, 3]);
    assert_eq!(mv1.collar, vec![12, 13, 14, 15]);
    let c2 = apply_annular_move(&c1, &mv1).unwrap();
    assert_eq!(c2.pieces.len(), 16);
    assert_eq!(c2.pieces[0].name, "wall0");
    assert_eq!(c2.pieces[4].name, "innerB0");
    assert_eq!(c2.pieces[8].name, "innerQ0");
    assert_eq!(c2.pieces[12].name, "core0");

    let mv2 = find_annular_move(&c2).unwrap().expect("inner pleat moves next");
    assert_eq!(mv2.component, vec![4, 5, 6, 7]);
    assert_eq!(mv2.collar, vec![8, 9, 10, 11]);
    let c3 = apply_annular_move(&c2, &mv2).unwrap();
    assert_eq!(c3.pieces.len(), 8);
    for i in 0..4 {
        assert_eq!(c3.pieces[i].name, format!("wall{i}"));
        assert_eq!(c3.pieces[i].s_faces.len(), 2);
        assert_eq!(c3.pieces[4 + i].name, format!("core{i}"));
    }
    assert_eq!(c3.euler(), c1.euler());
    assert!(find_annular_move(&c3).unwrap().is_none());
}

#[test]
fn disc_chain_collapses_to_cap() {
    let c = finger_chain();
    let flags = find_parallelity_handles(&c);
    assert_eq!(flags, vec![false, true, true, true, false]);

    let bundle = assemble_bundle(&c).unwrap();
    assert_eq!(bundle.components.len(), 1);
    assert_eq!(bundle.components[0].pieces, vec![1, 2, 3]);
    assert_eq!(bundle.components[0].base, BaseKind::Disc);

    let out = replace_disc_bundles(&c).unwrap();
    assert_eq!(out.pieces.len(), 3);
    assert_eq!(out.pieces[0].name, "fingerU1");
    assert_eq!(out.pieces[1].name, "fingerU2");
    assert_eq!(out.pieces[2].name, "cap:0");
    assert_eq!(out.pieces[2].index, 2);
    assert_eq!(out.euler(), c.euler());
    assert_eq!(out.interfaces.len(), 2);
    for f in &out.interfaces {
        assert!(f.pieces.contains(&2));
    }
    assert_eq!(flag_census(&out), [0, 0, 0, 0]);
}

#[test]
fn disc_chain_rejects_high_index_attachment() {
    let mut c = finger_chain();
    c.pieces[0].index = 2;
    assert!(matches!(
        replace_disc_bundles(&c),
        Err(ReplaceError::BadAttachment { piece: 0 })
    ));
}

#[test]
fn twisted_band_is_not_a_disc_bundle() {
    let c = moebius_ring();
    let bundle = assemble_bundle(&c).unwrap();
    assert_eq!(bundle.components.len(), 1);
    let comp = &bundle.components[0];
    assert_eq!(comp.pieces, vec![0, 1]);
    assert_eq!(comp.base, BaseKind::Moebius);
    assert_eq!(comp.h_components, 1);
    assert_eq!(comp.h_euler, 0);

    assert!(matches!(
        replace_disc_bundles(&c),
        Err(ReplaceError::NonDisc { base: BaseKind::Moebius })
    ));
    assert!(find_annular_move(&c).unwrap().is_none());
}

#[test]
fn misaligned_product_directions_are_rejected() {
    let mut c = finger_chain();
    let Some([a, b]) = c.interfaces[1].spans[1] else {
        panic!("chain interface carries a span")
    };
    c.interfaces[1].spans[1] = Some([b, a]);
    assert!(matches!(
        assemble_bundle(&c),
        Err(BundleError::IncompatibleStructures { interface: 1 })
    ));
}

#[test]
fn bundle_certificate_demands_maximality_and_order() {
    let c = pleat_ring(3);
    let full: Vec<usize> = (0..6).collect();
    let report = verify_gpb(&c, &full);
    assert!(report.pass(), "{:?}", report.clauses);

    // Dropping a piece leaves a flagged neighbour outside: not maximal.
    let minus_even: Vec<usize> = (1..6).collect();
    let report = verify_gpb(&c, &minus_even);
    assert!(!report.clauses[3].pass);
    assert!(report.clauses[4].pass);

    // Dropping the other parity breaks the frontier index order instead.
    let minus_odd: Vec<usize> = [0, 2, 3, 4, 5].into();
    let report = verify_gpb(&c, &minus_odd);
    assert!(!report.clauses[4].pass);
}

#[test]
fn attaching_solid_torus_extends_structure() {
    let h = build(&sample::trefoil(), true);
    let h2 = attach_solid_torus(&h).unwrap();
    let rep = verify(&h2).expect("attached structure verifies");
    assert_eq!(rep.counts, [14, 28, 17, 3]);
    check_boundary(&h2).expect("boundary becomes a sphere");

    for (zero, kind) in h2.zeros.iter().enumerate() {
        if matches!(kind, ZeroKind::Exceptional { .. }) {
            assert_eq!(h2.islands_at(zero).len(), 4);
            let types = zero_disc_types(&h2, zero);
            let tri = types
                .iter()
                .filter(|t| matches!(t.kind, DiscKind::Triangle { .. }))
                .count();
            assert_eq!((tri, types.len() - tri), (4, 3));
        }
    }
    for one in &h2.ones {
        assert!(one.side_count() <= 6);
    }

    assert!(matches!(
        attach_solid_torus(&h2),
        Err(AttachError::AlreadyAttached)
    ));
    let plain = build(&sample::trefoil(), false);
    assert!(matches!(
        attach_solid_torus(&plain),
        Err(AttachError::NotExceptional)
    ));
}

/// Edges of the knot-boundary surface with their endpoints.
fn bdry_skeleton(h: &HandleStructure) -> BTreeMap<EdgeKey, [VertexKey; 2]> {
    let mut ends = BTreeMap::new();
    for f in boundary_faces(h).unwrap() {
        if f.label != FreeLabel::Bdry {
            continue;
        }
        for &(e, u, v) in &f.cycle {
            ends.entry(e).or_insert([u, v]);
        }
    }
    ends
}

/// A simple cycle through the over-crossbar corner, closed up across the
/// extra blocks: it runs once around the lowest arc.
fn around_the_arc(
    h: &HandleStructure,
    ends: &BTreeMap<EdgeKey, [VertexKey; 2]>,
) -> (EdgeKey, BTreeSet<EdgeKey>) {
    let bar = |over: bool| {
        h.ones
            .iter()
            .position(|o| o.kind == OneKind::Crossbar { over })
            .expect("exceptional structure")
    };
    let (ob, ub) = (bar(true), bar(false));
    let ezs: BTreeSet<usize> = h
        .zeros
        .iter()
        .enumerate()
        .filter(|(_, z)| matches!(z, ZeroKind::Exceptional { .. }))
        .map(|(i, _)| i)
        .collect();
    let corner = EdgeKey::Corner { one: ob, corner: 3 };
    assert!(ends.contains_key(&corner), "crossbar corner lies on the knot boundary");

    let allowed: Vec<EdgeKey> = ends
        .keys()
        .copied()
        .filter(|&e| match e {
            EdgeKey::Corner { one, corner } => {
                (one == ob && corner == 3) || (one == ub && corner <= 1)
            }
            EdgeKey::Side { zero, .. } => ezs.contains(&zero),
            EdgeKey::Flank { bridge, .. } => ezs.contains(&h.bridges[bridge].zero),
        })
        .collect();

    let [start, goal] = ends[&corner];
    let mut prev: BTreeMap<VertexKey, (VertexKey, EdgeKey)> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    let mut seen = BTreeSet::from([start]);
    while let Some(v) = queue.pop_front() {
        if v == goal {
            break;
        }
        for &e in &allowed {
            if e == corner {
                continue;
            }
            let [a, b] = ends[&e];
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if seen.insert(w) {
                prev.insert(w, (v, e));
                queue.push_back(w);
            }
        }
    }
    let mut cycle = BTreeSet::from([corner]);
    let mut at = goal;
    while at != start {
        let (p, e) = prev[&at];
        cycle.insert(e);
        at = p;
    }
    (corner, cycle)
}

#[test]
fn boundary_curve_straightens_to_standard_position() {
    let h = build(&sample::trefoil(), true);
    let ends = bdry_skeleton(&h);
    let (_, seed) = around_the_arc(&h, &ends);
    assert!(
        !same_class(&h, &seed, &BTreeSet::new()).unwrap(),
        "the curve around the arc does not bound"
    );

    // Wrinkle the curve: add the boundary of a face it never touches.
    let seed_verts: BTreeSet<VertexKey> = seed.iter().flat_map(|e| ends[e]).collect();
    let faces = boundary_faces(&h).unwrap();
    let bump = faces
        .iter()
        .filter(|f| f.label == FreeLabel::Bdry)
        .find(|f| {
            let es: BTreeSet<EdgeKey> = f.cycle.iter().map(|&(e, _, _)| e).collect();
            es.len() == f.cycle.len()
                && f.cycle
                    .iter()
                    .all(|(e, u, v)| !seed.contains(e) && !seed_verts.contains(u) && !seed_verts.contains(v))
        })
        .expect("a face away from the curve");
    let mut messy = seed.clone();
    for &(e, _, _) in &bump.cycle {
        if !messy.remove(&e) {
            messy.insert(e);
        }
    }

    let out = straighten_boundary_curve(&h, &messy, None).unwrap();

    // Same class, but simple: every vertex has degree two and the edges form
    // one closed curve.
    assert!(same_class(&h, &out, &messy).unwrap());
    assert!(!same_class(&h, &out, &BTreeSet::new()).unwrap());
    let mut deg: BTreeMap<VertexKey, usize> = BTreeMap::new();
    for e in &out {
        for v in ends[e] {
            *deg.entry(v).or_default() += 1;
        }
    }
    assert!(!out.is_empty());
    assert!(deg.values().all(|&d| d == 2), "simple curve");

    let first = *out.iter().next().unwrap();
    let mut todo = vec![first];
    let mut reached = BTreeSet::from([first]);
    while let Some(e) = todo.pop() {
        for &f in &out {
            if !reached.contains(&f) && ends[&f].iter().any(|v| ends[&e].contains(v)) {
                reached.insert(f);
                todo.push(f);
            }
        }
    }
    assert_eq!(reached.len(), out.len(), "one component");
}

#[test]
fn straighten_rejects_open_arcs() {
    let h = build(&sample::trefoil(), true);
    let ends = bdry_skeleton(&h);
    let (corner, _) = around_the_arc(&h, &ends);
    let target = BTreeSet::from([corner]);
    assert!(matches!(
        straighten_boundary_curve(&h, &target, None),
        Err(StraightenError::NotACycle(_))
    ));
}

#[test]
fn straighten_reports_unrealizable_restrictions() {
    let h = build(&sample::trefoil(), true);
    let ends = bdry_skeleton(&h);
    let (corner, seed) = around_the_arc(&h, &ends);
    let mut broken = seed.clone();
    broken.remove(&corner);
    assert!(matches!(
        straighten_boundary_curve(&h, &seed, Some(&broken)),
        Err(StraightenError::UnrealizableClass)
    ));
}
