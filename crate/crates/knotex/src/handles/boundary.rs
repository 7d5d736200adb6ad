//! The boundary surface left free by the 0-, 1- and 2-handles.
//!
//! Free faces come in three shapes: patches on 0-handle spheres, free side
//! rectangles of 1-handles, and the two end discs of each 2-handle.  Gluing
//! them along shared edges yields closed surfaces; the two 3-handles (and the
//! core handle, once a solid torus has been attached) cap the spherical ones.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::pattern::{all_patterns, flank_corners, side_corners, PatchStep, PatternError};
use super::*;

/// A corner vertex: 0-handle, island, canonical corner id on that island.
pub type VertexKey = (ZeroId, IslandRef, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeKey {
    /// Free side of an island, on the 0-handle sphere.
    Side {
        zero: ZeroId,
        island: IslandRef,
        side: usize,
    },
    /// Free edge of a bridge.
    Flank { bridge: BridgeId, edge: usize },
    /// Corner line along the length of a 1-handle.
    Corner { one: OneId, corner: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FaceKind {
    Patch { zero: ZeroId, index: usize },
    Rect { one: OneId, side: usize },
    Disc { two: TwoId, disc: usize },
}

/// One free face with its oriented edge cycle.
pub struct BoundaryFace {
    pub kind: FaceKind,
    pub label: FreeLabel,
    pub cycle: Vec<(EdgeKey, VertexKey, VertexKey)>,
}

#[derive(Debug, thiserror::Error)]
pub enum BoundaryError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("face {0:?} does not close up")]
    OpenFace(FaceKind),
    #[error("end disc walk of 2-handle {two} fails to close")]
    OpenDisc { two: TwoId },
    #[error("2-handle {two} runs past a non-free neighbour side")]
    BadNeighbor { two: TwoId },
    #[error("edge {0:?} lies on {1} face sides, expected 2")]
    EdgeCount(EdgeKey, usize),
    #[error("edge {0:?} has mismatched endpoints")]
    EdgeEnds(EdgeKey),
    #[error("a component mixes labels {0:?} and {1:?}")]
    MixedLabels(FreeLabel, FreeLabel),
    #[error("boundary census {got:?} differs from expected {want:?}")]
    Census {
        got: Vec<(FreeLabel, i64, bool)>,
        want: Vec<(FreeLabel, i64, bool)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub label: FreeLabel,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub components: Vec<BoundaryComponent>,
}

impl BoundaryReport {
    pub fn summary(&self) -> Vec<(FreeLabel, i64, bool)> {
        self.components
            .iter()
            .map(|c| (c.label, c.euler, c.orientable))
            .collect()
    }
}

fn patch_faces(h: &HandleStructure, faces: &mut Vec<BoundaryFace>) -> Result<(), BoundaryError> {
    for p in all_patterns(h)? {
        for (index, patch) in p.patches.iter().enumerate() {
            let cycle = patch
                .walk
                .iter()
                .map(|step| match *step {
                    PatchStep::Arc {
                        island,
                        side,
                        from,
                        to,
                    } => (
                        EdgeKey::Side {
                            zero: p.zero,
                            island,
                            side,
                        },
                        (p.zero, island, from),
                        (p.zero, island, to),
                    ),
                    PatchStep::Flank {
                        bridge,
                        edge,
                        from,
                        to,
                    } => (
                        EdgeKey::Flank { bridge, edge },
                        (p.zero, from.0, from.1),
                        (p.zero, to.0, to.1),
                    ),
                })
                .collect();
            faces.push(BoundaryFace {
                kind: FaceKind::Patch {
                    zero: p.zero,
                    index,
                },
                label: patch.label,
                cycle,
            });
        }
    }
    Ok(())
}

fn rect_faces(h: &HandleStructure, faces: &mut Vec<BoundaryFace>) {
    for (one, handle) in h.ones.iter().enumerate() {
        let m = handle.side_count();
        let [z0, z1] = handle.ends;
        for (f, side) in handle.sides.iter().enumerate() {
            let label = match side {
                Side::Free(l) => *l,
                Side::Strip(_) => continue,
            };
            let (cb, ca) = side_corners(m, f);
            let (i0, i1) = ((one, 0), (one, 1));
            faces.push(BoundaryFace {
                kind: FaceKind::Rect { one, side: f },
                label,
                cycle: vec![
                    (
                        EdgeKey::Side {
                            zero: z0,
                            island: i0,
                            side: f,
                        },
                        (z0, i0, cb),
                        (z0, i0, ca),
                    ),
                    (EdgeKey::Corner { one, corner: ca }, (z0, i0, ca), (z1, i1, ca)),
                    (
                        EdgeKey::Side {
                            zero: z1,
                            island: i1,
                            side: f,
                        },
                        (z1, i1, ca),
                        (z1, i1, cb),
                    ),
                    (EdgeKey::Corner { one, corner: cb }, (z1, i1, cb), (z0, i0, cb)),
                ],
            });
        }
    }
}

/// Walk one end disc boundary of a 2-handle.  The disc runs alongside the
/// circuit: along each strip it follows the corner line between the strip and
/// one neighbouring free side, and across each hop it crosses one flank edge
/// of the bridge.  Which neighbour is followed propagates through the hops;
/// the walk must return to its starting choice.
fn disc_face(h: &HandleStructure, two: TwoId, disc: usize) -> Result<BoundaryFace, BoundaryError> {
    let circuit = &h.twos[two].circuit;
    let strips: Vec<(OneId, usize, bool)> = h.twos[two].strips().collect();
    let hops: Vec<BridgeId> = h.twos[two].hops().collect();
    assert_eq!(strips.len(), hops.len());
    assert_eq!(circuit.len(), 2 * strips.len());
    let n = strips.len();

    let m0 = h.ones[strips[0].0].side_count();
    let start = if disc == 0 {
        (strips[0].1 + 1) % m0
    } else {
        (strips[0].1 + m0 - 1) % m0
    };

    let mut label: Option<FreeLabel> = None;
    let mut cycle = Vec::with_capacity(2 * n);
    let mut neighbor = start;
    for k in 0..n {
        let (one, side, forward) = strips[k];
        let m = h.ones[one].side_count();
        match h.ones[one].sides[neighbor] {
            Side::Free(l) => match label {
                None => label = Some(l),
                Some(prev) if prev == l => {}
                Some(prev) => return Err(BoundaryError::MixedLabels(prev, l)),
            },
            Side::Strip(_) => return Err(BoundaryError::BadNeighbor { two }),
        }
        let corner = if neighbor == (side + 1) % m {
            side
        } else {
            debug_assert_eq!(neighbor, (side + m - 1) % m);
            (side + m - 1) % m
        };
        let (dep_end, arr_end) = if forward { (0, 1) } else { (1, 0) };
        let dep = (h.ones[one].ends[dep_end], (one, dep_end), corner);
        let arr = (h.ones[one].ends[arr_end], (one, arr_end), corner);
        cycle.push((EdgeKey::Corner { one, corner }, dep, arr));

        let b = hops[k];
        let fc = flank_corners(h, b);
        let here = ((one, arr_end), corner);
        let (w, other) = (0..2)
            .find_map(|w| {
                let [a, bb] = fc[w];
                if a == here {
                    Some((w, bb))
                } else if bb == here {
                    Some((w, a))
                } else {
                    None
                }
            })
            .ok_or(BoundaryError::OpenDisc { two })?;
        let zero = h.bridges[b].zero;
        cycle.push((
            EdgeKey::Flank { bridge: b, edge: w },
            (zero, here.0, here.1),
            (zero, other.0, other.1),
        ));

        let (one2, side2, forward2) = strips[(k + 1) % n];
        let dep_end2 = if forward2 { 0 } else { 1 };
        if other.0 != (one2, dep_end2) {
            return Err(BoundaryError::OpenDisc { two });
        }
        let m2 = h.ones[one2].side_count();
        neighbor = if other.1 == side2 {
            (side2 + 1) % m2
        } else if other.1 == (side2 + m2 - 1) % m2 {
            (side2 + m2 - 1) % m2
        } else {
            return Err(BoundaryError::OpenDisc { two });
        };
    }
    if neighbor != start {
        return Err(BoundaryError::OpenDisc { two });
    }

    Ok(BoundaryFace {
        kind: FaceKind::Disc { two, disc },
        label: label.expect("circuit is non-empty"),
        cycle,
    })
}

/// Assemble the free faces, each with its closed oriented edge cycle.
pub fn boundary_faces(h: &HandleStructure) -> Result<Vec<BoundaryFace>, BoundaryError> {
    let mut faces = Vec::new();
    patch_faces(h, &mut faces)?;
    rect_faces(h, &mut faces);
    for two in 0..h.twos.len() {
        for disc in 0..2 {
            faces.push(disc_face(h, two, disc)?);
        }
    }

    for f in &faces {
        let n = f.cycle.len();
        let closed = n >= 2
            && (0..n).all(|i| f.cycle[i].2 == f.cycle[(i + 1) % n].1);
        if !closed {
            return Err(BoundaryError::OpenFace(f.kind));
        }
    }
    Ok(faces)
}

/// Glue the free faces along shared edges into closed labelled surfaces.
pub fn boundary(h: &HandleStructure) -> Result<BoundaryReport, BoundaryError> {
    let faces = boundary_faces(h)?;

    // Every edge key must be traversed by exactly two face sides.
    let mut on_edge: BTreeMap<EdgeKey, Vec<(usize, VertexKey, VertexKey)>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &(key, u, v) in &f.cycle {
            on_edge.entry(key).or_default().push((i, u, v));
        }
    }
    for (&key, uses) in &on_edge {
        if uses.len() != 2 {
            return Err(BoundaryError::EdgeCount(key, uses.len()));
        }
        let (a, b) = (&uses[0], &uses[1]);
        if !(a.1 == b.1 && a.2 == b.2 || a.1 == b.2 && a.2 == b.1) {
            return Err(BoundaryError::EdgeEnds(key));
        }
    }

    // Group faces into components and orient each by flipping faces.
    let mut comp: Vec<usize> = (0..faces.len()).collect();
    fn root(comp: &mut Vec<usize>, mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    for uses in on_edge.values() {
        let (a, b) = (root(&mut comp, uses[0].0), root(&mut comp, uses[1].0));
        if a != b {
            comp[a] = b;
        }
    }

    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); faces.len()];
    let mut self_clash = vec![false; faces.len()];
    for uses in on_edge.values() {
        let (i, u1, v1) = uses[0];
        let (j, u2, v2) = uses[1];
        // Coherent orientation needs opposite traversals of a shared edge.
        let same_dir = u1 == u2 && v1 == v2;
        if i == j {
            if same_dir {
                self_clash[i] = true;
            }
        } else {
            adj[i].push((j, same_dir));
            adj[j].push((i, same_dir));
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..faces.len() {
        let r = root(&mut comp, i);
        groups.entry(r).or_default().push(i);
    }

    let mut components = Vec::new();
    for members in groups.values() {
        let mut label = faces[members[0]].label;
        for &i in members {
            if faces[i].label != label {
                return Err(BoundaryError::MixedLabels(label, faces[i].label));
            }
            label = faces[i].label;
        }

        let mut verts: BTreeSet<VertexKey> = BTreeSet::new();
        let mut edges: BTreeSet<EdgeKey> = BTreeSet::new();
        for &i in members {
            for &(key, u, v) in &faces[i].cycle {
                edges.insert(key);
                verts.insert(u);
                verts.insert(v);
            }
        }
        let euler = verts.len() as i64 - edges.len() as i64 + members.len() as i64;

        let mut orientable = !members.iter().any(|&i| self_clash[i]);
        let mut flip: BTreeMap<usize, bool> = BTreeMap::new();
        let mut queue = vec![members[0]];
        flip.insert(members[0], false);
        while let Some(i) = queue.pop() {
            let fi = flip[&i];
            for &(j, same_dir) in &adj[i] {
                let want = fi ^ same_dir;
                match flip.get(&j) {
                    None => {
                        flip.insert(j, want);
                        queue.push(j);
                    }
                    Some(&fj) if fj == want => {}
                    Some(_) => orientable = false,
                }
            }
        }

        components.push(BoundaryComponent {
            label,
            vertices: verts.len(),
            edges: edges.len(),
            faces: members.len(),
            euler,
            orientable,
        });
    }
    components.sort_by_key(|c| (c.label, c.euler, c.faces));

    Ok(BoundaryReport { components })
}

/// Build the boundary and require the expected census: spheres ready for the
/// upper and lower 3-handles, plus either a torus around the knot or, once a
/// solid torus has been attached, a sphere for the core handle.
pub fn check_boundary(h: &HandleStructure) -> Result<BoundaryReport, BoundaryError> {
    let report = boundary(h)?;
    let meridian = h.twos.iter().any(|t| t.kind == TwoKind::Meridian);
    let bdry_euler = if meridian { 2 } else { 0 };
    let want = vec![
        (FreeLabel::Top, 2, true),
        (FreeLabel::Bottom, 2, true),
        (FreeLabel::Bdry, bdry_euler, true),
    ];
    let mut got = report.summary();
    got.sort();
    let mut want_sorted = want.clone();
    want_sorted.sort();
    if got != want_sorted {
        return Err(BoundaryError::Census { got, want });
    }
    Ok(report)
}
