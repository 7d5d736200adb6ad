//! The intersection pattern on each 0-handle boundary sphere.
//!
//! Island discs (1-handle ends) and bridge rectangles (2-handle crossings)
//! tile part of the sphere; the complementary patches face a 3-handle or the
//! knot boundary.  Patches are recovered by tracing faces of the cubic graph
//! formed by island corners.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::*;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatchStep {
    /// Free side of an island, walked between two of its corners.
    Arc {
        island: IslandRef,
        side: usize,
        from: usize,
        to: usize,
    },
    /// Free edge of a bridge (0 or 1), walked between two island corners.
    Flank {
        bridge: BridgeId,
        edge: usize,
        from: (IslandRef, usize),
        to: (IslandRef, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Patch {
    pub label: FreeLabel,
    pub walk: Vec<PatchStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroPattern {
    pub zero: ZeroId,
    pub islands: Vec<IslandRef>,
    pub bridges: Vec<BridgeId>,
    pub patches: Vec<Patch>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("0-handle {zero}: island {island:?} side {side} appears in a patch but carries a strip")]
    StripInPatch {
        zero: ZeroId,
        island: IslandRef,
        side: usize,
    },
    #[error("0-handle {zero}: patch mixes free labels {a:?} and {b:?}")]
    MixedPatch {
        zero: ZeroId,
        a: FreeLabel,
        b: FreeLabel,
    },
    #[error("0-handle {zero}: boundary complex has Euler number {chi}, expected 2")]
    NotASphere { zero: ZeroId, chi: i64 },
    #[error("0-handle {zero}: corner ({island:?}, {corner}) meets {found} bridge edges, expected 1")]
    CornerMismatch {
        zero: ZeroId,
        island: IslandRef,
        corner: usize,
        found: usize,
    },
    #[error("0-handle {zero}: face tracing produced {islands} island and {bridges} bridge faces")]
    BadFaces {
        zero: ZeroId,
        islands: usize,
        bridges: usize,
    },
    #[error("0-handle {zero}: bridge {bridge} references a side not on its island")]
    BadBridge { zero: ZeroId, bridge: BridgeId },
}

/// Corner id (between listed sides `k` and `k+1`) for the corner at rotation
/// position `pos` seen from the given end of a 1-handle with `m` sides.
pub fn listed_corner(m: usize, end: usize, pos: usize) -> usize {
    if end == 0 {
        pos % m
    } else {
        (m - 1 - pos % m) % m
    }
}

/// The listed corners flanking a listed side: (before, after).
pub fn side_corners(m: usize, side: usize) -> (usize, usize) {
    ((side + m - 1) % m, side)
}

/// Endpoints of the two free edges of a bridge, as (island, listed corner)
/// pairs.  Edge 0 joins the pre-side corners, edge 1 the post-side corners,
/// in rotation position terms at each end.
pub fn flank_corners(h: &HandleStructure, b: BridgeId) -> [[(IslandRef, usize); 2]; 2] {
    let br = &h.bridges[b];
    let pos_of = |(isl, side): (IslandRef, usize)| -> (usize, usize, usize) {
        let m = h.ones[isl.0].side_count();
        let order = h.ones[isl.0].order_at(isl.1);
        let pos = order
            .iter()
            .position(|&s| s == side)
            .expect("bridge side on its island");
        (pos, m, isl.1)
    };
    let (fi, fs) = br.from;
    let (ti, ts) = br.to;
    let (fp, fm, fe) = pos_of((fi, fs));
    let (tp, tm, te) = pos_of((ti, ts));
    let edge0 = [
        (fi, listed_corner(fm, fe, (fp + fm - 1) % fm)),
        (ti, listed_corner(tm, te, tp)),
    ];
    let edge1 = [
        (ti, listed_corner(tm, te, (tp + tm - 1) % tm)),
        (fi, listed_corner(fm, fe, fp)),
    ];
    [edge0, edge1]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum EdgeRef {
    Side { island: usize, pos: usize },
    Flank { bridge: BridgeId, edge: usize },
}

/// Trace the boundary sphere of one 0-handle.
pub fn zero_pattern(h: &HandleStructure, zero: ZeroId) -> Result<ZeroPattern, PatternError> {
    let islands = h.islands_at(zero);
    let bridge_ids = h.bridges_at(zero);
    let orders: Vec<Vec<usize>> = islands
        .iter()
        .map(|&(one, end)| h.ones[one].order_at(end))
        .collect();
    let index_of = |isl: IslandRef| islands.iter().position(|&i| i == isl);

    // Vertices are island corners (island local index, rotation position).
    let mut vert_base = Vec::with_capacity(islands.len());
    let mut nv = 0usize;
    for o in &orders {
        vert_base.push(nv);
        nv += o.len();
    }
    let vid = |i: usize, j: usize| vert_base[i] + j % orders[i].len();

    // Edges: island sides, then bridge flanks.
    let mut edges: Vec<(EdgeRef, [usize; 2])> = Vec::new();
    for (i, o) in orders.iter().enumerate() {
        let m = o.len();
        for j in 0..m {
            edges.push((
                EdgeRef::Side { island: i, pos: j },
                [vid(i, (j + m - 1) % m), vid(i, j)],
            ));
        }
    }
    let side_edge_id = |i: usize, j: usize| vert_base[i] + j % orders[i].len();

    let mut flank_at_corner: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &b in &bridge_ids {
        let br = &h.bridges[b];
        let fp = index_of(br.from.0).ok_or(PatternError::BadBridge { zero, bridge: b })?;
        let tp = index_of(br.to.0).ok_or(PatternError::BadBridge { zero, bridge: b })?;
        let fpos = orders[fp]
            .iter()
            .position(|&s| s == br.from.1)
            .ok_or(PatternError::BadBridge { zero, bridge: b })?;
        let tpos = orders[tp]
            .iter()
            .position(|&s| s == br.to.1)
            .ok_or(PatternError::BadBridge { zero, bridge: b })?;
        let fm = orders[fp].len();
        let tm = orders[tp].len();
        for (w, ends) in [
            (0usize, [vid(fp, (fpos + fm - 1) % fm), vid(tp, tpos)]),
            (1usize, [vid(tp, (tpos + tm - 1) % tm), vid(fp, fpos)]),
        ] {
            let id = edges.len();
            edges.push((EdgeRef::Flank { bridge: b, edge: w }, ends));
            for v in ends {
                if flank_at_corner.insert(v, (id, 0)).is_some() {
                    let (i, j) = corner_of(&vert_base, v);
                    return Err(PatternError::CornerMismatch {
                        zero,
                        island: islands[i],
                        corner: j,
                        found: 2,
                    });
                }
            }
        }
    }

    // Rotation at each corner (ccw from outside): next side, previous side,
    // then the bridge flank.
    let mut rot: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (i, o) in orders.iter().enumerate() {
        let m = o.len();
        for j in 0..m {
            let v = vid(i, j);
            let mut r = vec![
                end_at(&edges, side_edge_id(i, (j + 1) % m), v),
                end_at(&edges, side_edge_id(i, j), v),
            ];
            match flank_at_corner.get(&v) {
                Some(&(e, _)) => r.push(end_at(&edges, e, v)),
                None => {
                    let (ii, jj) = corner_of(&vert_base, v);
                    return Err(PatternError::CornerMismatch {
                        zero,
                        island: islands[ii],
                        corner: jj,
                        found: 0,
                    });
                }
            }
            rot[v] = r;
        }
    }

    // Trace faces: arrive at the head of a dart, leave along the previous
    // edge-end in ccw order.
    let nd = edges.len() * 2;
    let head = |d: usize| edges[d / 2].1[if d % 2 == 0 { 1 } else { 0 }];
    let next = |d: usize| -> usize {
        let v = head(d);
        let arriving = (d / 2, if d % 2 == 0 { 1 } else { 0 });
        let r = &rot[v];
        let p = r.iter().position(|&x| x == arriving).expect("dart at head");
        let (e, w) = r[(p + r.len() - 1) % r.len()];
        // Leave v: pick the direction of edge e whose tail end is w.
        if w == 0 {
            2 * e
        } else {
            2 * e + 1
        }
    };

    let mut seen = vec![false; nd];
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for d0 in 0..nd {
        if seen[d0] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = d0;
        loop {
            seen[d] = true;
            walk.push(d);
            d = next(d);
            if d == d0 {
                break;
            }
        }
        faces.push(walk);
    }

    // Classify.
    let mut island_faces = 0usize;
    let mut bridge_faces = 0usize;
    let mut patches = Vec::new();
    for f in &faces {
        let refs: Vec<EdgeRef> = f.iter().map(|&d| edges[d / 2].0).collect();
        let one_island = refs.iter().all(|r| match (r, refs[0]) {
            (EdgeRef::Side { island: a, .. }, EdgeRef::Side { island: b, .. }) => *a == b,
            _ => false,
        });
        if one_island {
            if let EdgeRef::Side { island: i, .. } = refs[0] {
                if refs.len() == orders[i].len() {
                    island_faces += 1;
                    continue;
                }
            }
        }
        let is_bridge = refs.len() == 4
            && refs
                .iter()
                .filter(|r| matches!(r, EdgeRef::Flank { .. }))
                .count()
                == 2
            && match refs.iter().find(|r| matches!(r, EdgeRef::Flank { .. })) {
                Some(EdgeRef::Flank { bridge, .. }) => refs.iter().all(|r| match r {
                    EdgeRef::Flank { bridge: b2, .. } => b2 == bridge,
                    EdgeRef::Side { .. } => true,
                }),
                _ => false,
            };
        if is_bridge {
            bridge_faces += 1;
            continue;
        }

        // A patch: convert to the public walk form and label it.
        let mut label: Option<FreeLabel> = None;
        let mut walk = Vec::new();
        for &d in f {
            let (er, ends) = edges[d / 2];
            let (tail, hd) = if d % 2 == 0 {
                (ends[0], ends[1])
            } else {
                (ends[1], ends[0])
            };
            match er {
                EdgeRef::Side { island: i, pos: j } => {
                    let (one, end) = islands[i];
                    let side = orders[i][j];
                    match h.ones[one].sides[side] {
                        Side::Free(l) => match label {
                            None => label = Some(l),
                            Some(prev) if prev == l => {}
                            Some(prev) => {
                                return Err(PatternError::MixedPatch { zero, a: prev, b: l })
                            }
                        },
                        Side::Strip(_) => {
                            return Err(PatternError::StripInPatch {
                                zero,
                                island: (one, end),
                                side,
                            })
                        }
                    }
                    let m = orders[i].len();
                    let corner = |v: usize| listed_corner(m, end, v - vert_base[i]);
                    walk.push(PatchStep::Arc {
                        island: (one, end),
                        side,
                        from: corner(tail),
                        to: corner(hd),
                    });
                }
                EdgeRef::Flank { bridge, edge } => {
                    let conv = |v: usize| {
                        let (i, j) = corner_of(&vert_base, v);
                        let (one, end) = islands[i];
                        (
                            (one, end),
                            listed_corner(orders[i].len(), end, j),
                        )
                    };
                    walk.push(PatchStep::Flank {
                        bridge,
                        edge,
                        from: conv(tail),
                        to: conv(hd),
                    });
                }
            }
        }
        patches.push(Patch {
            label: label.expect("patch contains at least one island side"),
            walk,
        });
    }

    if island_faces != islands.len() || bridge_faces != bridge_ids.len() {
        return Err(PatternError::BadFaces {
            zero,
            islands: island_faces,
            bridges: bridge_faces,
        });
    }
    let chi = nv as i64 - edges.len() as i64 + faces.len() as i64;
    if chi != 2 {
        return Err(PatternError::NotASphere { zero, chi });
    }

    Ok(ZeroPattern {
        zero,
        islands,
        bridges: bridge_ids,
        patches,
    })
}

fn corner_of(vert_base: &[usize], v: usize) -> (usize, usize) {
    let i = match vert_base.binary_search(&v) {
        Ok(i) => i,
        Err(i) => i - 1,
    };
    (i, v - vert_base[i])
}

fn end_at(edges: &[(EdgeRef, [usize; 2])], e: usize, v: usize) -> (usize, usize) {
    let ends = edges[e].1;
    if ends[0] == v {
        (e, 0)
    } else {
        debug_assert_eq!(ends[1], v);
        (e, 1)
    }
}

/// Patterns for every 0-handle.
pub fn all_patterns(h: &HandleStructure) -> Result<Vec<ZeroPattern>, PatternError> {
    (0..h.zeros.len()).map(|q| zero_pattern(h, q)).collect()
}
