//! From a disc vector to an embedded surface.
//!
//! The vector fixes how many sheets run through every 1-handle and how many
//! cross-discs through every 2-handle.  Laying the sheets of each island
//! family out in nesting order (triangle copies sit nearer the anchoring free
//! side than square copies, which is the only disjoint arrangement) pins
//! every chord endpoint to a concrete position on a strip side.  Bridge arcs
//! then join matching positions across each bridge, and following
//! chord-arc-chord walks around every 0-handle reassembles the discs the
//! vector promised.  The walk is also the strongest self-check we have: the
//! traced discs must reproduce the input vector type for type.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::handles::pattern::flank_corners;
use crate::handles::{BridgeId, HandleStructure, IslandRef, OneId, TwoId, ZeroId};

use super::census::{sheet_families, DiscKind, DiscType};
use super::system::{solve, DerivedLevels, NormalCoordinates, SolveError};

/// A point where a chord endpoint meets a strip side: (1-handle, end, side,
/// position along the side counted from the corner toward side+1).
pub type SurfVertex = (OneId, usize, usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfEdge {
    /// Sheet end on an island: the chord of family `sides` at nesting level
    /// `level`, seen at the given end of the 1-handle.
    Chord {
        one: OneId,
        end: usize,
        sides: [usize; 2],
        level: u64,
    },
    /// Sheet meets cross-disc along a strip side, at a fixed position for the
    /// whole length of the 1-handle.
    Line { one: OneId, side: usize, pos: usize },
    /// Cross-disc passes over a bridge, joining two islands.
    Arc { bridge: BridgeId, k: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfFace {
    /// Index into `Realization::discs`.
    Disc(usize),
    Sheet {
        one: OneId,
        sides: [usize; 2],
        level: u64,
    },
    Cross { two: TwoId, k: u64 },
}

/// One disc of the surface inside a 0-handle, reassembled by tracing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscInstance {
    pub zero: ZeroId,
    pub type_idx: usize,
    pub copy: u64,
    /// Directed boundary cycle, alternating chords and arcs; the bool is
    /// true when the edge is traversed in its canonical direction.
    pub boundary: Vec<(SurfEdge, bool)>,
}

/// Contiguous run of nesting levels owned by one disc type on one island
/// family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub type_idx: usize,
    pub start: u64,
    pub count: u64,
}

/// The fully positioned surface: every cell with a stable identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub coords: NormalCoordinates,
    pub discs: Vec<DiscInstance>,
    /// Chord and arc edges resolved to the disc instance they bound.
    pub edge_disc: BTreeMap<SurfEdge, usize>,
    /// Every face with its directed boundary cycle.
    pub faces: Vec<(SurfFace, Vec<(SurfEdge, bool)>)>,
    /// Endpoints of every edge, in its canonical direction.
    pub edge_ends: BTreeMap<SurfEdge, [SurfVertex; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComponent {
    pub faces: usize,
    pub euler: i64,
    pub orientable: bool,
}

/// A realized normal surface with its census-level summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSurface {
    pub coordinates: NormalCoordinates,
    pub weight: u64,
    pub euler: i64,
    pub orientable: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: Vec<SurfaceComponent>,
    pub realization: Realization,
    /// Component index of every face.
    pub face_component: BTreeMap<SurfFace, usize>,
}

impl NormalSurface {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RealizeError {
    #[error("vector fails the matching system: {0}")]
    Matching(#[from] SolveError),
}

/// Total chord endpoints on one strip side.
pub fn side_total(h: &HandleStructure, levels: &DerivedLevels, one: OneId, side: usize) -> u64 {
    sheet_families(h, one)
        .iter()
        .filter(|f| f.sides.contains(&side))
        .map(|f| levels.y[&(one, f.sides)])
        .sum()
}

/// Position of chord `level` of family `sides` on the given side, counted
/// from the corner toward side+1.  Families anchored past side+1 stack up
/// from that corner; families anchored past side-1 stack from the other.
pub fn chord_pos(
    h: &HandleStructure,
    levels: &DerivedLevels,
    one: OneId,
    sides: [usize; 2],
    level: u64,
    side: usize,
) -> usize {
    let m = h.ones[one].side_count();
    let fam = sheet_families(h, one)
        .into_iter()
        .find(|f| f.sides == sides)
        .expect("family exists");
    let z = side_total(h, levels, one, side);
    if fam.anchor == (side + 1) % m {
        level as usize
    } else {
        debug_assert_eq!(fam.anchor, (side + m - 1) % m);
        (z - 1 - level) as usize
    }
}

/// Which free side the 0-end disc of a 2-handle hugs along each strip of its
/// circuit.  Mirrors the end-disc walk used for boundary assembly.
pub fn disc_zero_hugs(h: &HandleStructure, two: TwoId) -> Vec<usize> {
    let strips: Vec<(OneId, usize, bool)> = h.twos[two].strips().collect();
    let hops: Vec<BridgeId> = h.twos[two].hops().collect();
    let n = strips.len();
    let m0 = h.ones[strips[0].0].side_count();
    let mut neighbor = (strips[0].1 + 1) % m0;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (one, side, forward) = strips[k];
        let m = h.ones[one].side_count();
        out.push(neighbor);
        let corner = if neighbor == (side + 1) % m {
            side
        } else {
            debug_assert_eq!(neighbor, (side + m - 1) % m);
            (side + m - 1) % m
        };
        let arr_end = if forward { 1 } else { 0 };
        let fc = flank_corners(h, hops[k]);
        let here = ((one, arr_end), corner);
        let other = (0..2)
            .find_map(|w| {
                let [a, b] = fc[w];
                if a == here {
                    Some(b)
                } else if b == here {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("hop flank matches strip corner");
        let (one2, side2, _) = strips[(k + 1) % n];
        let m2 = h.ones[one2].side_count();
        neighbor = if other.1 == side2 {
            (side2 + 1) % m2
        } else {
            debug_assert_eq!(other.1, (side2 + m2 - 1) % m2);
            (side2 + m2 - 1) % m2
        };
    }
    debug_assert_eq!(neighbor, (strips[0].1 + 1) % m0);
    out
}

/// Position of cross-disc `k` on a strip side: discs count from the end the
/// 0-end disc hugs.
pub fn cross_pos(m: usize, side: usize, hug: usize, z: u64, k: u64) -> usize {
    if hug == (side + 1) % m {
        k as usize
    } else {
        debug_assert_eq!(hug, (side + m - 1) % m);
        (z - 1 - k) as usize
    }
}

/// Nesting blocks of one island family: which disc types own which levels.
/// Triangles sit nearest the anchor, then squares; at most one of each can
/// use a family, so the order is forced.
pub fn island_blocks(
    census: &[DiscType],
    v: &NormalCoordinates,
    island: IslandRef,
    sides: [usize; 2],
) -> Vec<Block> {
    let mut tri = Vec::new();
    let mut sq = Vec::new();
    for (i, d) in census.iter().enumerate() {
        if v.counts[i] > 0 && d.chord_at(island) == Some(sides) {
            match d.kind {
                DiscKind::Triangle { .. } => tri.push(i),
                DiscKind::Square { .. } => sq.push(i),
            }
        }
    }
    assert!(tri.len() <= 1 && sq.len() <= 1, "one type per kind per family");
    let mut out = Vec::new();
    let mut start = 0;
    for i in tri.into_iter().chain(sq) {
        out.push(Block {
            type_idx: i,
            start,
            count: v.counts[i],
        });
        start += v.counts[i];
    }
    out
}

fn chord_vertices(
    h: &HandleStructure,
    levels: &DerivedLevels,
    one: OneId,
    end: usize,
    sides: [usize; 2],
    level: u64,
) -> [SurfVertex; 2] {
    let p0 = chord_pos(h, levels, one, sides, level, sides[0]);
    let p1 = chord_pos(h, levels, one, sides, level, sides[1]);
    [(one, end, sides[0], p0), (one, end, sides[1], p1)]
}

fn arc_vertices(
    h: &HandleStructure,
    levels: &DerivedLevels,
    hug_cache: &BTreeMap<TwoId, Vec<usize>>,
    bridge: BridgeId,
    k: u64,
) -> [SurfVertex; 2] {
    let br = &h.bridges[bridge];
    let two = br.owner;
    let z = levels.z[two];
    let hops: Vec<BridgeId> = h.twos[two].hops().collect();
    let strips: Vec<(OneId, usize, bool)> = h.twos[two].strips().collect();
    let i = hops.iter().position(|&b| b == bridge).expect("bridge in circuit");
    let n = strips.len();
    let hugs = &hug_cache[&two];
    let mk = |(island, side): (IslandRef, usize), strip_idx: usize| -> SurfVertex {
        let (one, end) = island;
        let m = h.ones[one].side_count();
        debug_assert_eq!(strips[strip_idx].0, one);
        debug_assert_eq!(strips[strip_idx].1, side);
        let p = cross_pos(m, side, hugs[strip_idx], z, k);
        (one, end, side, p)
    };
    [mk(br.from, i), mk(br.to, (i + 1) % n)]
}

/// Realize the surface a matching vector describes.
pub fn realize_surface(
    h: &HandleStructure,
    census: &[DiscType],
    v: &NormalCoordinates,
) -> Result<NormalSurface, RealizeError> {
    let levels = solve(h, census, v)?;
    let hug_cache: BTreeMap<TwoId, Vec<usize>> = (0..h.twos.len())
        .filter(|&t| levels.z[t] > 0)
        .map(|t| (t, disc_zero_hugs(h, t)))
        .collect();

    // Trace the discs of every 0-handle.
    let mut discs = Vec::new();
    let mut edge_disc = BTreeMap::new();
    for zero in 0..h.zeros.len() {
        trace_zero(h, census, v, &levels, &hug_cache, zero, &mut discs, &mut edge_disc);
    }

    // Traced discs must reproduce the vector exactly.
    let mut recount = vec![0u64; census.len()];
    for d in &discs {
        recount[d.type_idx] += 1;
    }
    assert_eq!(recount, v.counts, "traced discs reproduce the coordinates");

    // Assemble the face complex.
    let mut faces: Vec<(SurfFace, Vec<(SurfEdge, bool)>)> = Vec::new();
    for (i, d) in discs.iter().enumerate() {
        faces.push((SurfFace::Disc(i), d.boundary.clone()));
    }
    for one in 0..h.ones.len() {
        for fam in sheet_families(h, one) {
            for level in 0..levels.y[&(one, fam.sides)] {
                let [s, t] = fam.sides;
                let ps = chord_pos(h, &levels, one, fam.sides, level, s);
                let pt = chord_pos(h, &levels, one, fam.sides, level, t);
                faces.push((
                    SurfFace::Sheet {
                        one,
                        sides: fam.sides,
                        level,
                    },
                    vec![
                        (
                            SurfEdge::Chord {
                                one,
                                end: 0,
                                sides: fam.sides,
                                level,
                            },
                            true,
                        ),
                        (SurfEdge::Line { one, side: t, pos: pt }, true),
                        (
                            SurfEdge::Chord {
                                one,
                                end: 1,
                                sides: fam.sides,
                                level,
                            },
                            false,
                        ),
                        (SurfEdge::Line { one, side: s, pos: ps }, false),
                    ],
                ));
            }
        }
    }
    for two in 0..h.twos.len() {
        let z = levels.z[two];
        if z == 0 {
            continue;
        }
        let strips: Vec<(OneId, usize, bool)> = h.twos[two].strips().collect();
        let hops: Vec<BridgeId> = h.twos[two].hops().collect();
        let hugs = &hug_cache[&two];
        for k in 0..z {
            let mut cycle = Vec::new();
            for (i, &(one, side, forward)) in strips.iter().enumerate() {
                let m = h.ones[one].side_count();
                let pos = cross_pos(m, side, hugs[i], z, k);
                cycle.push((SurfEdge::Line { one, side, pos }, forward));
                cycle.push((SurfEdge::Arc { bridge: hops[i], k }, true));
            }
            faces.push((SurfFace::Cross { two, k }, cycle));
        }
    }

    // Directed-edge bookkeeping: every edge bounds exactly two faces, and
    // coherent orientations exist exactly when the surface is orientable.
    let edge_ends = |e: &SurfEdge| -> [SurfVertex; 2] {
        match *e {
            SurfEdge::Chord {
                one,
                end,
                sides,
                level,
            } => chord_vertices(h, &levels, one, end, sides, level),
            SurfEdge::Line { one, side, pos } => [(one, 0, side, pos), (one, 1, side, pos)],
            SurfEdge::Arc { bridge, k } => arc_vertices(h, &levels, &hug_cache, bridge, k),
        }
    };

    let mut on_edge: BTreeMap<SurfEdge, Vec<(usize, bool)>> = BTreeMap::new();
    let mut vertices: std::collections::BTreeSet<SurfVertex> = Default::default();
    for (fi, (_, cycle)) in faces.iter().enumerate() {
        // Boundary must close up.
        let n = cycle.len();
        for i in 0..n {
            let (e, fwd) = cycle[i];
            let ends = edge_ends(&e);
            let head = if fwd { ends[1] } else { ends[0] };
            let (e2, fwd2) = cycle[(i + 1) % n];
            let ends2 = edge_ends(&e2);
            let tail2 = if fwd2 { ends2[0] } else { ends2[1] };
            assert_eq!(head, tail2, "face boundary closes: {:?}", faces[fi].0);
            on_edge.entry(e).or_default().push((fi, fwd));
            vertices.insert(ends[0]);
            vertices.insert(ends[1]);
        }
    }
    for (e, uses) in &on_edge {
        assert_eq!(uses.len(), 2, "edge {e:?} bounds exactly two faces");
    }

    // Orientation spread and connected components in one sweep.
    let nf = faces.len();
    let mut comp = vec![usize::MAX; nf];
    let mut sign = vec![true; nf];
    let mut orientable_comp = Vec::new();
    let mut ncomp = 0;
    for start in 0..nf {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut orient = true;
        let mut queue = vec![start];
        comp[start] = ncomp;
        while let Some(f) = queue.pop() {
            for &(e, fwd) in &faces[f].1 {
                let uses = &on_edge[&e];
                for &(g, gfwd) in uses {
                    if g == f {
                        continue;
                    }
                    // Opposite traversal keeps the sign, equal traversal flips.
                    let want = if fwd != gfwd { sign[f] } else { !sign[f] };
                    if comp[g] == usize::MAX {
                        comp[g] = ncomp;
                        sign[g] = want;
                        queue.push(g);
                    } else if sign[g] != want {
                        orient = false;
                    }
                }
            }
        }
        orientable_comp.push(orient);
        ncomp += 1;
    }

    // Per-component census.
    let mut comp_faces = vec![0usize; ncomp];
    let mut comp_edges: Vec<std::collections::BTreeSet<SurfEdge>> = vec![Default::default(); ncomp];
    let mut comp_verts: Vec<std::collections::BTreeSet<SurfVertex>> =
        vec![Default::default(); ncomp];
    for (fi, (_, cycle)) in faces.iter().enumerate() {
        comp_faces[comp[fi]] += 1;
        for &(e, _) in cycle {
            comp_edges[comp[fi]].insert(e);
            let ends = edge_ends(&e);
            comp_verts[comp[fi]].insert(ends[0]);
            comp_verts[comp[fi]].insert(ends[1]);
        }
    }
    let components: Vec<SurfaceComponent> = (0..ncomp)
        .map(|c| SurfaceComponent {
            faces: comp_faces[c],
            euler: comp_verts[c].len() as i64 - comp_edges[c].len() as i64 + comp_faces[c] as i64,
            orientable: orientable_comp[c],
        })
        .collect();

    let v_count = vertices.len();
    let e_count = on_edge.len();
    let f_count = nf;
    let euler = v_count as i64 - e_count as i64 + f_count as i64;
    // The same number through handle counts.
    let sum_y: u64 = levels.y.values().sum();
    let sum_z: u64 = levels.z.iter().sum();
    assert_eq!(
        euler,
        v.weight() as i64 - sum_y as i64 + sum_z as i64,
        "cell count agrees with handle count"
    );

    let face_component = faces
        .iter()
        .enumerate()
        .map(|(fi, (f, _))| (*f, comp[fi]))
        .collect();
    let edge_end_map: BTreeMap<SurfEdge, [SurfVertex; 2]> =
        on_edge.keys().map(|e| (*e, edge_ends(e))).collect();

    Ok(NormalSurface {
        coordinates: v.clone(),
        weight: v.weight(),
        euler,
        orientable: components.iter().all(|c| c.orientable),
        vertices: v_count,
        edges: e_count,
        faces: f_count,
        components,
        realization: Realization {
            coords: v.clone(),
            discs,
            edge_disc,
            faces,
            edge_ends: edge_end_map,
        },
        face_component,
    })
}

/// Trace the chord-arc cycles of one 0-handle into disc instances.
#[allow(clippy::too_many_arguments)]
fn trace_zero(
    h: &HandleStructure,
    census: &[DiscType],
    v: &NormalCoordinates,
    levels: &DerivedLevels,
    hug_cache: &BTreeMap<TwoId, Vec<usize>>,
    zero: ZeroId,
    discs: &mut Vec<DiscInstance>,
    edge_disc: &mut BTreeMap<SurfEdge, usize>,
) {
    let islands = h.islands_at(zero);
    // Vertex incidences local to this 0-handle.
    let mut chord_at: BTreeMap<SurfVertex, (SurfEdge, SurfVertex)> = BTreeMap::new();
    let mut arc_at: BTreeMap<SurfVertex, (SurfEdge, SurfVertex)> = BTreeMap::new();
    for &(one, end) in &islands {
        for fam in sheet_families(h, one) {
            for level in 0..levels.y[&(one, fam.sides)] {
                let e = SurfEdge::Chord {
                    one,
                    end,
                    sides: fam.sides,
                    level,
                };
                let [a, b] = chord_vertices(h, levels, one, end, fam.sides, level);
                chord_at.insert(a, (e, b));
                chord_at.insert(b, (e, a));
            }
        }
    }
    for b in h.bridges_at(zero) {
        let two = h.bridges[b].owner;
        for k in 0..levels.z[two] {
            let e = SurfEdge::Arc { bridge: b, k };
            let [x, y] = arc_vertices(h, levels, hug_cache, b, k);
            arc_at.insert(x, (e, y));
            arc_at.insert(y, (e, x));
        }
    }
    assert_eq!(
        chord_at.len(),
        arc_at.len(),
        "every chord endpoint continues over a bridge"
    );

    let mut visited: std::collections::BTreeSet<SurfVertex> = Default::default();
    let starts: Vec<SurfVertex> = chord_at.keys().copied().collect();
    for start in starts {
        if visited.contains(&start) {
            continue;
        }
        // Walk chord, arc, chord, arc... from `start`.
        let mut boundary = Vec::new();
        let mut cycle_islands: Vec<IslandRef> = Vec::new();
        let mut claim: Option<(usize, u64)> = None; // (type index, copy)
        let mut at = start;
        loop {
            visited.insert(at);
            let (chord, other) = chord_at[&at];
            let (one, end, sides, level) = match chord {
                SurfEdge::Chord {
                    one,
                    end,
                    sides,
                    level,
                } => (one, end, sides, level),
                _ => unreachable!(),
            };
            visited.insert(other);
            // Canonical chord direction runs sides[0] -> sides[1].
            let fwd = at.2 == sides[0];
            boundary.push((chord, fwd));
            cycle_islands.push((one, end));
            // Which type and copy owns this nesting level here?
            let blocks = island_blocks(census, v, (one, end), sides);
            let owner = blocks
                .iter()
                .find(|b| b.start <= level && level < b.start + b.count)
                .expect("level owned by a block");
            let here = (owner.type_idx, level - owner.start);
            match claim {
                None => claim = Some(here),
                Some(c) => assert_eq!(c, here, "cycle stays on one disc copy"),
            }
            let (arc, next) = arc_at[&other];
            let arc_fwd = match arc {
                SurfEdge::Arc { bridge, k } => {
                    let [fa, _] = arc_vertices(h, levels, hug_cache, bridge, k);
                    fa == other
                }
                _ => unreachable!(),
            };
            boundary.push((arc, arc_fwd));
            if next == start {
                break;
            }
            at = next;
        }

        let (type_idx, copy) = claim.expect("nonempty cycle");
        // The walked islands must match the census cycle of the claimed type.
        let d = &census[type_idx];
        assert_eq!(d.zero, zero);
        let locals: Vec<usize> = cycle_islands
            .iter()
            .map(|isl| islands.iter().position(|i| i == isl).unwrap())
            .collect();
        assert!(
            cycles_equal(&d.cycle, &locals),
            "traced cycle realizes its census type"
        );
        let id = discs.len();
        for &(e, _) in &boundary {
            edge_disc.insert(e, id);
        }
        discs.push(DiscInstance {
            zero,
            type_idx,
            copy,
            boundary,
        });
    }
}

fn cycles_equal(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    (0..n).any(|s| {
        (0..n).all(|k| a[k] == b[(s + k) % n]) || (0..n).all(|k| a[k] == b[(s + n - k) % n])
    })
}
