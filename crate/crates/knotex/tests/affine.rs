use std::collections::{BTreeMap, BTreeSet};

use knotex::affine::{
    assign_affine, corner_block, disc_boundary, polygons_disjoint, project_and_count, realize_disc,
    trefoil_grid, AssignError, CurveArc, DiscError, FaceRole, GridEmbedding, HandleTag,
    PathSegment, ProjectError, StraightArcPath, SurfaceCurve,
};
use knotex::geom::{rat, ratio, EpsPoly, V3};
use knotex::handles::build::build;
use knotex::normal::DiscKind;
use knotex::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_kinds() -> Vec<DiscKind> {
    let mut kinds: Vec<DiscKind> = (1..=4).map(|corner| DiscKind::Triangle { corner }).collect();
    kinds.extend((1..=3).map(|separation| DiscKind::Square { separation }));
    kinds
}

#[test]
fn block_census_frozen() {
    let block = corner_block();
    let p = &block.solid;
    p.validate().expect("corner block is a valid polyhedron");
    assert_eq!(p.vertices.len(), 24);
    assert_eq!(p.edges().len(), 48);
    assert_eq!(p.faces.len(), 26);
    let islands = block
        .roles
        .iter()
        .filter(|r| matches!(r, FaceRole::Island(_)))
        .count();
    let bridges = block
        .roles
        .iter()
        .filter(|r| matches!(r, FaceRole::Bridge(..)))
        .count();
    let patches = block
        .roles
        .iter()
        .filter(|r| matches!(r, FaceRole::Patch { .. }))
        .count();
    assert_eq!([islands, bridges, patches], [4, 6, 16]);
    // The pressed corner.
    let pressed = V3::new(ratio(5, 2), ratio(5, 2), rat(5));
    assert!(p.vertices.contains(&pressed));
    // Island 0 keeps a planar convex hexagon through the pressed vertex.
    let island0: BTreeSet<V3> = p.faces[block.island_face(0)]
        .iter()
        .map(|&v| p.vertices[v].clone())
        .collect();
    let expect: BTreeSet<V3> = [
        pressed.clone(),
        V3::ints(3, 2, 5),
        V3::ints(5, 2, 3),
        V3::ints(5, 3, 2),
        V3::ints(3, 5, 2),
        V3::ints(2, 5, 3),
    ]
    .into_iter()
    .collect();
    assert_eq!(island0, expect);
    // Every bridge face is a rectangle piece, every patch piece a triangle.
    for (f, role) in block.roles.iter().enumerate() {
        match role {
            FaceRole::Island(_) => assert_eq!(p.faces[f].len(), 6),
            FaceRole::Bridge(..) => assert_eq!(p.faces[f].len(), 4),
            FaceRole::Patch { .. } => assert_eq!(p.faces[f].len(), 3),
        }
    }
}

#[test]
fn block_is_star_shaped_but_not_convex() {
    let block = corner_block();
    let p = &block.solid;
    // Convexity fails: some vertex lies strictly outside some face plane.
    let mut reflex = false;
    for f in 0..p.faces.len() {
        let (n, d) = p.face_plane(f);
        if p.vertices.iter().any(|v| v.dot(&n) > d) {
            reflex = true;
        }
    }
    assert!(reflex, "pressing a corner must break convexity");
}

#[test]
fn block_patch_labels_frozen() {
    let block = corner_block();
    // Pre-press labels: the pressed vertex kept its patch.
    let pressed = V3::new(ratio(5, 2), ratio(5, 2), rat(5));
    let pi = block
        .solid
        .vertices
        .iter()
        .position(|v| *v == pressed)
        .unwrap();
    assert_eq!(block.vertex_patch[pi], 1);
    let vi = block
        .solid
        .vertices
        .iter()
        .position(|v| *v == V3::ints(3, 2, 5))
        .unwrap();
    assert_eq!(block.vertex_patch[vi], 2);
    // Six rim vertices per patch.
    for patch in 0..4 {
        assert_eq!(
            block.vertex_patch.iter().filter(|&&q| q == patch).count(),
            6
        );
    }
    // The island-bridge edge toward island 3 is the pressed edge.
    let edge = block.island_bridge_edge(0, 3);
    let coords: BTreeSet<V3> = edge
        .iter()
        .map(|&v| block.solid.vertices[v].clone())
        .collect();
    assert!(coords.contains(&pressed));
    assert!(coords.contains(&V3::ints(3, 2, 5)));
}

#[test]
fn dilation_and_translation_preserve_validity() {
    let block = corner_block();
    let half = block.solid.dilate(&ratio(1, 2));
    half.validate().expect("dilated block stays valid");
    assert!(half.vertices.contains(&V3::new(rat(1), ratio(5, 2), ratio(3, 2))));
    let moved = block.solid.translate(&V3::ints(7, -2, 11));
    moved.validate().expect("translated block stays valid");
    assert_eq!(moved.star_center, V3::ints(7, -2, 11));
}

/// Whether `target` on the boundary is visible from `from`: the open segment
/// between them pierces no face polygon.
fn visible(p: &knotex::affine::AffinePolyhedron, from: &V3, target: &V3) -> bool {
    for f in 0..p.faces.len() {
        let (n, d) = p.face_plane(f);
        let a = n.dot(from) - d.clone();
        let b = n.dot(target) - d;
        if a == b {
            continue;
        }
        let t = &a / (&a - &b);
        if t <= rat(0) || t >= rat(1) {
            continue;
        }
        let q = from.lerp(target, &t);
        if inside_face(p, f, &q) {
            return false;
        }
    }
    true
}

fn inside_face(p: &knotex::affine::AffinePolyhedron, f: usize, q: &V3) -> bool {
    let (n, _) = p.face_plane(f);
    let cycle = &p.faces[f];
    (0..cycle.len()).all(|k| {
        let a = &p.vertices[cycle[k]];
        let b = &p.vertices[cycle[(k + 1) % cycle.len()]];
        (b - a).cross(&(q - a)).dot(&n) >= rat(0)
    })
}

fn boundary_samples(p: &knotex::affine::AffinePolyhedron) -> Vec<V3> {
    let mut out = Vec::new();
    for cycle in &p.faces {
        let m = cycle.len();
        let mut centroid = V3::zero();
        for &v in cycle {
            centroid = &centroid + &p.vertices[v];
        }
        out.push(centroid.scale(&ratio(1, m as i64)));
        for k in 0..m {
            out.push(p.vertices[cycle[k]].clone());
            out.push(p.vertices[cycle[k]].lerp(&p.vertices[cycle[(k + 1) % m]], &ratio(1, 2)));
        }
    }
    out
}

#[test]
fn star_check_agrees_with_visibility_sampling() {
    let block = corner_block();
    let good = &block.solid;
    for s in boundary_samples(good) {
        assert!(
            visible(good, &good.star_center, &s),
            "sample {s} should be visible from the star center"
        );
    }
    for bad_center in [V3::new(rat(0), rat(0), ratio(9, 2)), V3::ints(4, 4, 4)] {
        let mut bad = good.clone();
        bad.star_center = bad_center.clone();
        assert!(bad.validate().is_err(), "{bad_center} is not a star center");
        let blocked = boundary_samples(&bad)
            .iter()
            .any(|s| !visible(&bad, &bad.star_center, s));
        assert!(blocked, "some sample must be hidden from {bad_center}");
    }
}

#[test]
fn disc_boundaries_close_and_alternate() {
    let block = corner_block();
    for kind in all_kinds() {
        for slot in 0..4 {
            let b = disc_boundary(&block, kind, slot);
            let arcs = &b.curve.arcs;
            let want = match kind {
                DiscKind::Triangle { .. } => 6,
                DiscKind::Square { .. } => 8,
            };
            assert_eq!(arcs.len(), want, "{kind:?}");
            for (i, arc) in arcs.iter().enumerate() {
                assert_eq!(arc.end, arcs[(i + 1) % arcs.len()].start, "{kind:?}");
                let role = block.roles[arc.face];
                if i % 2 == 0 {
                    assert!(matches!(role, FaceRole::Island(_)), "{kind:?} arc {i}");
                } else {
                    assert!(matches!(role, FaceRole::Bridge(..)), "{kind:?} arc {i}");
                }
            }
            assert!(matches!(block.roles[b.cap_face], FaceRole::Patch { .. }));
        }
    }
}

#[test]
fn realized_polygon_counts_frozen() {
    let block = corner_block();
    for kind in all_kinds() {
        let b = disc_boundary(&block, kind, 0);
        let disc = realize_disc(&block.solid, &b.curve, 0, Some(b.cap_face)).unwrap();
        let (arcs, total) = match kind {
            DiscKind::Triangle { .. } => (6, 16),
            DiscKind::Square { .. } => (8, 25),
        };
        assert_eq!(disc.polygons.len(), total, "{kind:?}");
        // Quadrilateral ring first, cap pieces after.
        for quad in &disc.polygons[..arcs] {
            assert_eq!(quad.len(), 4);
        }
        assert_eq!(
            disc.boundary,
            b.curve.arcs.iter().map(|a| a.start.clone()).collect::<Vec<_>>()
        );
    }
}

fn share_vertex(p: &[V3], q: &[V3]) -> bool {
    p.iter().any(|v| q.contains(v))
}

#[test]
fn realized_discs_are_embedded() {
    let block = corner_block();
    for kind in all_kinds() {
        let b = disc_boundary(&block, kind, 0);
        let disc = realize_disc(&block.solid, &b.curve, 0, Some(b.cap_face)).unwrap();
        for i in 0..disc.polygons.len() {
            for j in i + 1..disc.polygons.len() {
                let (p, q) = (&disc.polygons[i], &disc.polygons[j]);
                if !share_vertex(p, q) {
                    assert!(
                        polygons_disjoint(p, q),
                        "{kind:?}: polygons {i} and {j} overlap"
                    );
                }
            }
        }
    }
}

#[test]
fn nested_discs_stay_disjoint() {
    let block = corner_block();
    for kind in all_kinds() {
        let discs: Vec<_> = (0..5)
            .map(|depth| {
                let b = disc_boundary(&block, kind, depth);
                realize_disc(&block.solid, &b.curve, depth, Some(b.cap_face)).unwrap()
            })
            .collect();
        for i in 0..discs.len() {
            for j in i + 1..discs.len() {
                for (pi, p) in discs[i].polygons.iter().enumerate() {
                    for (qi, q) in discs[j].polygons.iter().enumerate() {
                        assert!(
                            polygons_disjoint(p, q),
                            "{kind:?}: depth {i} polygon {pi} meets depth {j} polygon {qi}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn square_cap_needs_hint() {
    let block = corner_block();
    let b = disc_boundary(&block, DiscKind::Square { separation: 2 }, 0);
    let err = realize_disc(&block.solid, &b.curve, 0, None).unwrap_err();
    assert_eq!(err, DiscError::AmbiguousCap);
    // Triangles split 10 against 22, so the smaller side wins unaided.
    let t = disc_boundary(&block, DiscKind::Triangle { corner: 2 }, 0);
    let with_hint = realize_disc(&block.solid, &t.curve, 0, Some(t.cap_face)).unwrap();
    let without = realize_disc(&block.solid, &t.curve, 0, None).unwrap();
    assert_eq!(with_hint, without);
}

#[test]
fn realize_rejects_bad_curves() {
    let block = corner_block();
    let p = &block.solid;
    assert_eq!(
        realize_disc(p, &SurfaceCurve { arcs: Vec::new() }, 0, None).unwrap_err(),
        DiscError::EmptyCurve
    );
    let good = disc_boundary(&block, DiscKind::Triangle { corner: 1 }, 0);
    let mut broken = good.curve.clone();
    broken.arcs[2].start = V3::ints(0, 0, 0);
    assert!(matches!(
        realize_disc(p, &broken, 0, None).unwrap_err(),
        DiscError::BrokenChain { .. } | DiscError::PointOffEdge { .. }
    ));
    let mut repeated = good.curve.clone();
    let f = repeated.arcs[0].face;
    repeated.arcs[2].face = f;
    assert!(matches!(
        realize_disc(p, &repeated, 0, None).unwrap_err(),
        DiscError::RepeatedFace { .. } | DiscError::PointOffEdge { .. }
    ));
    let one = SurfaceCurve {
        arcs: vec![CurveArc {
            face: 0,
            start: V3::ints(1, 0, 0),
            end: V3::ints(0, 1, 0),
        }],
    };
    assert!(realize_disc(p, &one, 0, None).is_err());
}

#[test]
fn disjointness_oracle_spot_checks() {
    let z = |x: i64, y: i64| V3::ints(x, y, 0);
    let sq = vec![z(0, 0), z(4, 0), z(4, 4), z(0, 4)];
    // Coplanar overlap.
    let shifted = vec![z(2, 2), z(6, 2), z(6, 6), z(2, 6)];
    assert!(!polygons_disjoint(&sq, &shifted));
    // Coplanar, touching at one corner: still meeting.
    let corner = vec![z(4, 4), z(8, 4), z(8, 8), z(4, 8)];
    assert!(!polygons_disjoint(&sq, &corner));
    // Coplanar, separated.
    let apart = vec![z(5, 0), z(9, 0), z(9, 4), z(5, 4)];
    assert!(polygons_disjoint(&sq, &apart));
    // Parallel planes.
    let lifted: Vec<V3> = sq.iter().map(|v| v + &V3::ints(0, 0, 3)).collect();
    assert!(polygons_disjoint(&sq, &lifted));
    // A wall piercing the square's interior.
    let wall = vec![
        V3::ints(2, 2, -1),
        V3::ints(3, 2, -1),
        V3::ints(3, 2, 1),
        V3::ints(2, 2, 1),
    ];
    assert!(!polygons_disjoint(&sq, &wall));
    // A wall stopping exactly on the square: touching.
    let resting = vec![
        V3::ints(2, 2, 0),
        V3::ints(3, 2, 0),
        V3::ints(3, 2, 2),
        V3::ints(2, 2, 2),
    ];
    assert!(!polygons_disjoint(&sq, &resting));
    // A wall above it.
    let floating = vec![
        V3::ints(2, 2, 1),
        V3::ints(3, 2, 1),
        V3::ints(3, 2, 3),
        V3::ints(2, 2, 3),
    ];
    assert!(polygons_disjoint(&sq, &floating));
    // Crossing planes but separated segments on the common line.
    let tilted = vec![
        V3::ints(6, 0, -1),
        V3::ints(9, 0, -1),
        V3::ints(9, 0, 1),
        V3::ints(6, 0, 1),
    ];
    assert!(polygons_disjoint(&sq, &tilted));
}

fn seg(zero: usize, a: (i64, i64, i64), b: (i64, i64, i64)) -> PathSegment {
    PathSegment {
        start: V3::ints(a.0, a.1, a.2),
        end: V3::ints(b.0, b.1, b.2),
        handle: HandleTag::Zero(zero),
        product_respecting: false,
    }
}

fn one_path(segments: Vec<PathSegment>) -> StraightArcPath {
    StraightArcPath { segments }
}

#[test]
fn projection_counts_hand_examples() {
    // Two arcs crossing at different heights: one crossing.
    let report = project_and_count(&[
        one_path(vec![seg(0, (-2, 0, 0), (2, 0, 0))]),
        one_path(vec![seg(0, (0, -2, 1), (0, 2, 1))]),
    ])
    .unwrap();
    assert_eq!(report.total, 1);
    assert_eq!(report.per_zero, BTreeMap::from([(0, 1)]));

    // Same picture in different 0-handles: nothing.
    let report = project_and_count(&[
        one_path(vec![seg(0, (-2, 0, 0), (2, 0, 0))]),
        one_path(vec![seg(1, (0, -2, 1), (0, 2, 1))]),
    ])
    .unwrap();
    assert_eq!(report.total, 0);

    // A T-shape at distinct heights: the shear resolves it to no crossing.
    let report = project_and_count(&[
        one_path(vec![seg(0, (-2, 0, 0), (2, 0, 0))]),
        one_path(vec![seg(0, (0, 0, 1), (0, 2, 1))]),
    ])
    .unwrap();
    assert_eq!(report.total, 0);

    // A vertical segment over a horizontal one: resolved symbolically.
    let report = project_and_count(&[
        one_path(vec![seg(0, (-2, 0, 0), (2, 0, 0))]),
        one_path(vec![seg(0, (0, 1, -1), (0, 1, 1))]),
    ])
    .unwrap();
    assert_eq!(report.total, 0);

    // Same-height collinear overlap stays degenerate.
    let err = project_and_count(&[
        one_path(vec![seg(0, (-2, 0, 0), (2, 0, 0))]),
        one_path(vec![seg(0, (-1, 0, 0), (3, 0, 0))]),
    ])
    .unwrap_err();
    assert!(matches!(err, ProjectError::UnresolvedDegeneracy { handle: 0, .. }));

    // Path corners share an endpoint and are skipped.
    let report = project_and_count(&[one_path(vec![
        seg(0, (0, 0, 0), (2, 0, 0)),
        seg(0, (2, 0, 0), (2, 2, 1)),
    ])])
    .unwrap();
    assert_eq!(report.total, 0);

    // 1-handle segments need the product flag and then count nothing.
    let mut p = one_path(vec![seg(0, (0, 0, 0), (1, 0, 0))]);
    p.segments[0].handle = HandleTag::One(5);
    let err = project_and_count(std::slice::from_ref(&p)).unwrap_err();
    assert!(matches!(err, ProjectError::NotProductRespecting { .. }));
    p.segments[0].product_respecting = true;
    assert_eq!(project_and_count(&[p]).unwrap().total, 0);

    // Broken paths are refused.
    let err = project_and_count(&[one_path(vec![
        seg(0, (0, 0, 0), (1, 0, 0)),
        seg(0, (5, 5, 5), (6, 5, 5)),
    ])])
    .unwrap_err();
    assert!(matches!(err, ProjectError::BrokenPath { path: 0, segment: 0 }));
}

/// Independent crossing test: solve the two-segment intersection by Cramer's
/// rule over the sheared coordinates and classify by the sign of each
/// parameter, flagging any boundary or parallel-line contact as degenerate.
fn cramer_pairs(
    paths: &[StraightArcPath],
) -> Result<(u64, BTreeMap<usize, u64>), (usize, (usize, usize), (usize, usize))> {
    let shear = |v: &V3| {
        (
            &EpsPoly::constant(v.0[0].clone()) + &EpsPoly::eps(1).scale(&v.0[2]),
            &EpsPoly::constant(v.0[1].clone()) + &EpsPoly::eps(2).scale(&v.0[2]),
        )
    };
    let mut by_zero: BTreeMap<usize, Vec<((usize, usize), &PathSegment)>> = BTreeMap::new();
    for (pi, path) in paths.iter().enumerate() {
        for (si, s) in path.segments.iter().enumerate() {
            if let HandleTag::Zero(z) = s.handle {
                by_zero.entry(z).or_default().push(((pi, si), s));
            }
        }
    }
    let mut total = 0;
    let mut per = BTreeMap::new();
    for (&zero, segs) in &by_zero {
        let mut count = 0u64;
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (ia, a) = &segs[i];
                let (ib, b) = &segs[j];
                if a.start == b.start || a.start == b.end || a.end == b.start || a.end == b.end {
                    continue;
                }
                let (ax, ay) = shear(&a.start);
                let (bx, by) = shear(&a.end);
                let (cx, cy) = shear(&b.start);
                let (dx, dy) = shear(&b.end);
                let rx = &bx - &ax;
                let ry = &by - &ay;
                let qx = &dx - &cx;
                let qy = &dy - &cy;
                let wx = &cx - &ax;
                let wy = &cy - &ay;
                let det = &(&qx * &ry) - &(&rx * &qy);
                let cross_rw = &(&rx * &wy) - &(&ry * &wx);
                if det.sign() == 0 {
                    if cross_rw.sign() == 0 {
                        return Err((zero, *ia, *ib));
                    }
                    continue;
                }
                let s_num = &(&qx * &wy) - &(&wx * &qy);
                let t_num = cross_rw;
                let on_boundary = |n: &EpsPoly| n.sign() == 0 || (n - &det).sign() == 0;
                if on_boundary(&s_num) || on_boundary(&t_num) {
                    return Err((zero, *ia, *ib));
                }
                let strictly_inside = |n: &EpsPoly| {
                    n.sign() == det.sign() && (&det - n).sign() == det.sign()
                };
                if strictly_inside(&s_num) && strictly_inside(&t_num) {
                    count += 1;
                }
            }
        }
        if count > 0 {
            per.insert(zero, count);
        }
        total += count;
    }
    Ok((total, per))
}

fn random_paths(rng: &mut ChaCha8Rng) -> Vec<StraightArcPath> {
    let paths = rng.gen_range(1..4);
    (0..paths)
        .map(|_| {
            let mut at = (
                rng.gen_range(-5i64..=5),
                rng.gen_range(-5i64..=5),
                rng.gen_range(-3i64..=3),
            );
            let segs = rng.gen_range(1..8);
            let segments = (0..segs)
                .map(|_| {
                    let mut next = at;
                    while next == at {
                        next = (
                            rng.gen_range(-5i64..=5),
                            rng.gen_range(-5i64..=5),
                            rng.gen_range(-3i64..=3),
                        );
                    }
                    let s = PathSegment {
                        start: V3::ints(at.0, at.1, at.2),
                        end: V3::ints(next.0, next.1, next.2),
                        handle: if rng.gen_bool(0.8) {
                            HandleTag::Zero(rng.gen_range(0..3))
                        } else {
                            HandleTag::One(rng.gen_range(0..4))
                        },
                        product_respecting: true,
                    };
                    at = next;
                    s
                })
                .collect();
            StraightArcPath { segments }
        })
        .collect()
}

#[test]
fn projection_matches_cramer_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0afF1);
    for _ in 0..80 {
        let paths = random_paths(&mut rng);
        let got = project_and_count(&paths).map(|r| (r.total, r.per_zero));
        let want = cramer_pairs(&paths).map_err(|(handle, first, second)| {
            ProjectError::UnresolvedDegeneracy {
                handle,
                first,
                second,
            }
        });
        assert_eq!(got, want);
    }
}

#[test]
fn trefoil_assignment_counts_and_validity() {
    let grid = trefoil_grid();
    for (exceptional, zeros, ones) in [(false, 12, 24), (true, 14, 28)] {
        let h = build(&sample::trefoil(), exceptional);
        let assignment = assign_affine(&h, &grid).unwrap();
        assert_eq!(assignment.zeros.len(), zeros);
        assert_eq!(assignment.ones.len(), ones);
        for (i, solid) in assignment.zeros.iter().enumerate() {
            solid
                .validate()
                .unwrap_or_else(|e| panic!("0-handle {i}: {e}"));
        }
        for (i, prism) in assignment.ones.iter().enumerate() {
            prism
                .validate()
                .unwrap_or_else(|e| panic!("1-handle {i}: {e}"));
            // Fibers are parallel translates.
            let (a0, a1) = prism.fiber_through(&prism.base[0]);
            let (b0, b1) = prism.fiber_through(&prism.base[1]);
            assert_eq!(&a1 - &a0, &b1 - &b0);
        }
    }
}

#[test]
fn assignment_rejects_bad_embeddings() {
    let h = build(&sample::trefoil(), false);
    let good = trefoil_grid();

    let mut short = good.clone();
    short.crossings.pop();
    assert!(matches!(
        assign_affine(&h, &short).unwrap_err(),
        AssignError::CrossingCountMismatch { got: 2, want: 3 }
    ));

    let mut dup = good.clone();
    dup.crossings[2] = dup.crossings[0];
    assert_eq!(
        assign_affine(&h, &dup).unwrap_err(),
        AssignError::DuplicateCrossing
    );

    let mut diagonal = good.clone();
    diagonal.arcs.get_mut(&2).unwrap()[1] = (-3, 1);
    assert!(matches!(
        assign_affine(&h, &diagonal).unwrap_err(),
        AssignError::NotAxisAligned { arc: 2, .. }
    ));

    let mut stray = good.clone();
    stray.arcs.get_mut(&5).unwrap().pop();
    assert!(matches!(
        assign_affine(&h, &stray).unwrap_err(),
        AssignError::EndpointMismatch { arc: 5 } | AssignError::DirectionMismatch { arc: 5 }
    ));

    let mut wrong_dir = good.clone();
    // Reroute arc 4 to reach its target from the south instead of the north.
    *wrong_dir.arcs.get_mut(&4).unwrap() = vec![(8, 4), (8, 6), (-2, 6), (-2, 0), (0, 0)];
    assert!(matches!(
        assign_affine(&h, &wrong_dir).unwrap_err(),
        AssignError::DirectionMismatch { arc: 4 }
    ));

    let mut missing = good.clone();
    missing.arcs.remove(&3);
    assert!(matches!(
        assign_affine(&h, &missing).unwrap_err(),
        AssignError::ArcSetMismatch { .. }
    ));
}

#[test]
fn grid_embedding_round_trips_through_json() {
    let grid = trefoil_grid();
    let text = serde_json::to_string(&grid).unwrap();
    let back: GridEmbedding = serde_json::from_str(&text).unwrap();
    assert_eq!(grid, back);
}
