//! Disc types: the ways a closed surface can cross one 0-handle.
//!
//! On the boundary sphere of a 0-handle the surface appears as disjoint
//! simple closed curves that alternate between chords across island discs and
//! arcs across bridges, never entering a patch.  Each bridge carries at most
//! one arc of any single curve, and an island has at most three bridges, so
//! every curve is a simple cycle in the island-bridge graph.  With four
//! islands joined pairwise that leaves the four 3-cycles and three 4-cycles
//! of the complete graph; sparser blocks have correspondingly fewer.

use serde::{Deserialize, Serialize};

use crate::handles::{BridgeId, HandleStructure, IslandRef, OneId, ZeroId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiscKind {
    /// Cuts one island off from the other three; `corner` is 1 + the local
    /// index of the island cut off.
    Triangle { corner: usize },
    /// Separates the islands into two pairs; `separation` numbers the omitted
    /// pairing: 1 = {0,1}|{2,3}, 2 = {0,2}|{1,3}, 3 = {0,3}|{1,2}.
    Square { separation: usize },
}

/// One way a closed surface can cross a 0-handle: a cycle through some of its
/// islands, crossing one bridge between consecutive ones and one chord inside
/// each island visited.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiscType {
    pub zero: ZeroId,
    pub kind: DiscKind,
    /// Local island indices (into `islands_at(zero)`) in cyclic visit order,
    /// rotated to start at the smallest and oriented so the second entry is
    /// smaller than the last.
    pub cycle: Vec<usize>,
    /// Bridges crossed, aligned with `cycle`: entry k joins island k to
    /// island k+1.
    pub bridges: Vec<BridgeId>,
    /// Chord at each visited island: the pair of strip sides the curve
    /// enters and leaves through, sorted.
    pub chords: Vec<(IslandRef, [usize; 2])>,
    /// Arc count on every bridge of the 0-handle, in `bridges_at` order.
    pub incidence: Vec<u8>,
}

impl DiscType {
    /// The chord family this type uses at the given island, if any.
    pub fn chord_at(&self, island: IslandRef) -> Option<[usize; 2]> {
        self.chords
            .iter()
            .find(|(isl, _)| *isl == island)
            .map(|&(_, fam)| fam)
    }
}

/// A family of parallel sheets inside a 1-handle: the chords joining one
/// pair of strip sides.  Sheets are indexed outward from the anchor, the
/// free side lying directly between the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SheetFamily {
    pub one: OneId,
    pub sides: [usize; 2],
    pub anchor: usize,
}

/// All sheet families of a 1-handle, sorted by side pair.
pub fn sheet_families(h: &HandleStructure, one: OneId) -> Vec<SheetFamily> {
    let handle = &h.ones[one];
    let m = handle.side_count();
    let strips: Vec<usize> = (0..m).filter(|&s| handle.sides[s].is_strip()).collect();
    let mut out = Vec::new();
    for i in 0..strips.len() {
        for j in i + 1..strips.len() {
            let (s, t) = (strips[i], strips[j]);
            // Free runs strictly between s and t in each direction.
            let run = |a: usize, b: usize| -> Option<Vec<usize>> {
                let mut sides = Vec::new();
                let mut k = (a + 1) % m;
                while k != b {
                    if handle.sides[k].is_strip() {
                        return None;
                    }
                    sides.push(k);
                    k = (k + 1) % m;
                }
                Some(sides)
            };
            let mut candidates = Vec::new();
            for r in [run(s, t), run(t, s)].into_iter().flatten() {
                if r.len() == 1 {
                    candidates.push(r[0]);
                }
            }
            let anchor = match candidates.as_slice() {
                [a] => *a,
                [a, b] => (*a).min(*b),
                _ => continue,
            };
            out.push(SheetFamily {
                one,
                sides: [s, t],
                anchor,
            });
        }
    }
    out.sort();
    out
}

/// Every closed disc type of one 0-handle, deterministically ordered.
pub fn zero_disc_types(h: &HandleStructure, zero: ZeroId) -> Vec<DiscType> {
    let islands = h.islands_at(zero);
    let bridge_ids = h.bridges_at(zero);
    let n = islands.len();
    let local = |isl: IslandRef| islands.iter().position(|&i| i == isl);

    // edge[a][b] = bridge joining local islands a and b, with its attach side
    // on each.
    let mut edge: Vec<Vec<Option<(BridgeId, usize, usize)>>> = vec![vec![None; n]; n];
    for &b in &bridge_ids {
        let br = &h.bridges[b];
        let (fa, fs) = br.from;
        let (ta, ts) = br.to;
        let (a, c) = match (local(fa), local(ta)) {
            (Some(a), Some(c)) => (a, c),
            _ => continue,
        };
        edge[a][c] = Some((b, fs, ts));
        edge[c][a] = Some((b, ts, fs));
    }

    let mut out = Vec::new();
    let mut push = |cycle: Vec<usize>| {
        let len = cycle.len();
        let mut bridges = Vec::with_capacity(len);
        let mut chords = Vec::with_capacity(len);
        for k in 0..len {
            let (a, b) = (cycle[k], cycle[(k + 1) % len]);
            let (bid, _, _) = edge[a][b].expect("cycle edge");
            bridges.push(bid);
            let (_, _, s_in) = edge[cycle[(k + len - 1) % len]][a].expect("cycle edge");
            let (_, s_out, _) = edge[a][b].expect("cycle edge");
            if s_in == s_out {
                return; // enters and leaves through one strip side: no chord
            }
            let mut fam = [s_in, s_out];
            fam.sort();
            chords.push((islands[a], fam));
        }
        // Rotate chords/bridges to match the canonical cycle start.
        let kind = match len {
            3 => {
                let missing = (0..n).find(|i| !cycle.contains(i)).unwrap_or(n);
                DiscKind::Triangle {
                    corner: missing + 1,
                }
            }
            _ => {
                let p = cycle.iter().position(|&i| i == 0).unwrap();
                let opposite = cycle[(p + 2) % 4];
                DiscKind::Square {
                    separation: opposite, // omitted pairing {0,opposite}|rest
                }
            }
        };
        let mut incidence = vec![0u8; bridge_ids.len()];
        for &b in &bridges {
            let i = bridge_ids.iter().position(|&x| x == b).unwrap();
            incidence[i] += 1;
        }
        out.push(DiscType {
            zero,
            kind,
            cycle,
            bridges,
            chords,
            incidence,
        });
    };

    // 3-cycles: island triples with all pairwise bridges.
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if edge[a][b].is_some() && edge[b][c].is_some() && edge[c][a].is_some() {
                    push(vec![a, b, c]);
                }
            }
        }
    }
    // 4-cycles through all four islands: one per pairing left out.
    if n == 4 {
        for opposite in 1..4 {
            let rest: Vec<usize> = (1..4).filter(|&i| i != opposite).collect();
            let cycle = vec![0, rest[0], opposite, rest[1]];
            if (0..4).all(|k| edge[cycle[k]][cycle[(k + 1) % 4]].is_some()) {
                push(cycle);
            }
        }
    }

    out.sort();
    out
}

/// The closed disc-type census of the whole structure.
pub fn enumerate_disc_types(h: &HandleStructure) -> Vec<DiscType> {
    (0..h.zeros.len())
        .flat_map(|q| zero_disc_types(h, q))
        .collect()
}

/// A disc type that runs through boundary patches as well as islands and
/// bridges, for surfaces with boundary on the knot torus.  Enumerated for
/// reporting only; the closed-surface machinery never consumes these.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundaryDiscType {
    pub zero: ZeroId,
    pub pattern: usize,
    /// Walk as (island local index, entered through patch?) pairs; consecutive
    /// entries are joined by a bridge when neither end used the patch.
    pub islands: Vec<usize>,
    /// Patch indices (into the 0-handle's patch list) the walk passes.
    pub patches: Vec<usize>,
}

/// Boundary-touching disc types of one 0-handle: walks alternating island
/// chords with bridge arcs or patch crossings, each island, bridge and patch
/// used at most once, at least one patch used.
pub fn zero_boundary_disc_types(
    h: &HandleStructure,
    zero: ZeroId,
    patch_count: usize,
) -> Vec<BoundaryDiscType> {
    let islands = h.islands_at(zero);
    let bridge_ids = h.bridges_at(zero);
    let n = islands.len();
    let local = |isl: IslandRef| islands.iter().position(|&i| i == isl);
    let mut bridge_edge: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for &b in &bridge_ids {
        let br = &h.bridges[b];
        if let (Some(a), Some(c)) = (local(br.from.0), local(br.to.0)) {
            bridge_edge[a][c] = true;
            bridge_edge[c][a] = true;
        }
    }

    // A walk is a cyclic sequence of islands where consecutive islands are
    // joined either by a bridge or by a patch crossing; patches join any two
    // islands on their walk.  We approximate patch adjacency as "any pair",
    // which over-counts only if a patch misses an island pair, and dedupe by
    // the canonical form.
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    // steps[i] = (next island, via patch p or bridge)
    #[derive(Clone)]
    struct State {
        walk: Vec<usize>,
        links: Vec<Option<usize>>, // patch used between walk[i], walk[i+1]
        used_islands: u32,
        used_patches: u32,
    }
    let mut stack: Vec<State> = (0..n)
        .map(|start| State {
            walk: vec![start],
            links: Vec::new(),
            used_islands: 1 << start,
            used_patches: 0,
        })
        .collect();
    while let Some(st) = stack.pop() {
        let last = *st.walk.last().unwrap();
        let first = st.walk[0];
        // Try to close up.
        for link in link_options(last, first, &bridge_edge, patch_count, st.used_patches) {
            if st.walk.len() == 1 && link.is_none() {
                continue;
            }
            if link.is_some() || st.links.iter().any(|l| l.is_some()) {
                let mut links = st.links.clone();
                links.push(link);
                let canon = canonical_walk(&st.walk, &links);
                if seen.insert(canon.clone()) {
                    out.push(BoundaryDiscType {
                        zero,
                        pattern: 0,
                        islands: canon.0,
                        patches: canon.1,
                    });
                }
            }
        }
        // Extend.
        for next in 0..n {
            if st.used_islands & (1 << next) != 0 {
                continue;
            }
            for link in link_options(last, next, &bridge_edge, patch_count, st.used_patches) {
                let mut nst = st.clone();
                nst.walk.push(next);
                nst.links.push(link);
                nst.used_islands |= 1 << next;
                if let Some(p) = link {
                    nst.used_patches |= 1 << p;
                }
                stack.push(nst);
            }
        }
    }
    out.sort();
    for (i, t) in out.iter_mut().enumerate() {
        t.pattern = i;
    }
    out
}

fn link_options(
    a: usize,
    b: usize,
    bridge_edge: &[Vec<bool>],
    patch_count: usize,
    used_patches: u32,
) -> Vec<Option<usize>> {
    let mut links = Vec::new();
    if bridge_edge[a][b] {
        links.push(None);
    }
    for p in 0..patch_count {
        if used_patches & (1 << p) == 0 {
            links.push(Some(p));
        }
    }
    links
}

fn canonical_walk(walk: &[usize], links: &[Option<usize>]) -> (Vec<usize>, Vec<usize>) {
    let n = walk.len();
    let mut best: Option<(Vec<usize>, Vec<Option<usize>>)> = None;
    for start in 0..n {
        for dir in [false, true] {
            let mut w = Vec::with_capacity(n);
            let mut l = Vec::with_capacity(n);
            for k in 0..n {
                if !dir {
                    w.push(walk[(start + k) % n]);
                    l.push(links[(start + k) % n]);
                } else {
                    w.push(walk[(start + n - k) % n]);
                    l.push(links[(start + n - k + n - 1) % n]);
                }
            }
            let cand = (w, l);
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let (w, l) = best.unwrap();
    (w, l.into_iter().flatten().collect())
}
