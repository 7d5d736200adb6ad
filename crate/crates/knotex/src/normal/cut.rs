//! Cutting the manifold along a realized surface.
//!
//! Every handle splits along its surface cells: a 0-handle into the regions
//! its discs cut from the ball, a 1-handle into the slabs between its
//! sheets, a 2-handle into the slabs between its cross-discs.  3-handles are
//! never met.  The result is recorded as a piece complex: pieces carry their
//! handle index, their faces on the two surface copies, and their interfaces
//! to neighbouring pieces.  Interfaces between consecutive parallel cells
//! remember which two cells they run between on each side — that span data
//! is what later certifies a piece as a product between surface copies.

use std::collections::{BTreeMap, BTreeSet};

use crate::handles::{
    pattern::{zero_pattern, PatchStep},
    BridgeId, FreeLabel, HandleStructure, IslandRef, OneId, Side, ThreeKind, TwoId, ZeroId,
};

use super::census::{enumerate_disc_types, sheet_families};
use super::realize::{disc_zero_hugs, NormalSurface, SurfEdge, SurfFace, SurfVertex};
use super::system::{solve, DerivedLevels};

pub type PieceId = usize;
pub type SCellId = usize;
pub type InterfaceId = usize;

/// Shape tag of a surface-copy cell; equal shapes mean the two cells are
/// parallel copies of the same normal cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CellShape {
    Disc { zero: ZeroId, type_idx: usize },
    Sheet { one: OneId, sides: [usize; 2] },
    Cross { two: TwoId },
    Tag(String),
}

/// One cell of the doubled cut surface, as a boundary face of one piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SCell {
    pub shape: CellShape,
    pub piece: PieceId,
}

/// A shared face between two pieces.  When the face is a rectangle running
/// between two surface-copy cells of a side's piece, `spans` records those
/// two cells for that side, in a geometric order common to both sides: entry
/// j on one side is edge-adjacent to entry j on the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interface {
    pub pieces: [PieceId; 2],
    pub spans: [Option<[SCellId; 2]>; 2],
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    /// Handle index 0..=3 of the handle this piece came from.
    pub index: u8,
    pub name: String,
    pub s_faces: Vec<SCellId>,
    /// Labels of boundary faces on the manifold boundary, away from the cut
    /// surface.
    pub outer: Vec<String>,
}

/// Polygon geometry of the surface-copy cells.  Each cell lists its boundary
/// as (edge instance, endpoint instances) entries; instances live on the
/// doubled cut surface, so the two copies of an edge carry different ids and
/// two cells listing the same instance are glued along it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CutGeometry {
    /// Indexed by `SCellId`.
    pub cell_edges: Vec<Vec<(u64, [u64; 2])>>,
}

impl CutGeometry {
    /// First id unused by any edge or vertex instance.
    pub fn fresh_id(&self) -> u64 {
        self.cell_edges
            .iter()
            .flatten()
            .map(|&(e, [a, b])| e.max(a).max(b) + 1)
            .max()
            .unwrap_or(0)
    }

    /// Euler characteristic and connected-component count of the subsurface
    /// spanned by the given cells, glued along shared edge instances.
    pub fn subsurface(&self, cells: &[SCellId]) -> (i64, usize) {
        let mut verts: BTreeSet<u64> = BTreeSet::new();
        let mut edges: BTreeSet<u64> = BTreeSet::new();
        let mut uf = UnionFind::new(cells.len());
        let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
        for (i, &c) in cells.iter().enumerate() {
            for &(e, [a, b]) in &self.cell_edges[c] {
                edges.insert(e);
                verts.insert(a);
                verts.insert(b);
                match seen.get(&e) {
                    Some(&j) => uf.union(i, j),
                    None => {
                        seen.insert(e, i);
                    }
                }
            }
        }
        let comps: BTreeSet<usize> = (0..cells.len()).map(|i| uf.find(i)).collect();
        let euler = verts.len() as i64 - edges.len() as i64 + cells.len() as i64;
        (euler, comps.len())
    }
}

/// The manifold cut along a two-sided surface, as pieces and gluings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutComplex {
    pub label: String,
    pub pieces: Vec<Piece>,
    pub s_cells: Vec<SCell>,
    pub interfaces: Vec<Interface>,
    pub geometry: CutGeometry,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutComponent {
    pub pieces: Vec<PieceId>,
    pub counts: [usize; 4],
    pub euler: i64,
    pub touches_boundary: bool,
}

impl CutComplex {
    pub fn euler(&self) -> i64 {
        self.pieces
            .iter()
            .map(|p| if p.index % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn piece_by_name(&self, name: &str) -> Option<PieceId> {
        self.pieces.iter().position(|p| p.name == name)
    }

    /// Interfaces listed per piece, as (interface id, side) pairs.
    pub fn piece_interfaces(&self) -> Vec<Vec<(InterfaceId, usize)>> {
        let mut out = vec![Vec::new(); self.pieces.len()];
        for (i, f) in self.interfaces.iter().enumerate() {
            out[f.pieces[0]].push((i, 0));
            if f.pieces[1] != f.pieces[0] {
                out[f.pieces[1]].push((i, 1));
            }
        }
        out
    }

    /// Connected components of the cut manifold.
    pub fn components(&self) -> Vec<CutComponent> {
        let n = self.pieces.len();
        let mut uf = UnionFind::new(n);
        for f in &self.interfaces {
            uf.union(f.pieces[0], f.pieces[1]);
        }
        let mut groups: BTreeMap<usize, Vec<PieceId>> = BTreeMap::new();
        for p in 0..n {
            groups.entry(uf.find(p)).or_default().push(p);
        }
        groups
            .into_values()
            .map(|pieces| {
                let mut counts = [0usize; 4];
                let mut euler = 0i64;
                let mut touches = false;
                for &p in &pieces {
                    counts[self.pieces[p].index as usize] += 1;
                    euler += if self.pieces[p].index % 2 == 0 { 1 } else { -1 };
                    touches |= !self.pieces[p].outer.is_empty();
                }
                CutComponent {
                    pieces,
                    counts,
                    euler,
                    touches_boundary: touches,
                }
            })
            .collect()
    }

    /// Structural sanity: cell/piece cross-references agree and span cells
    /// belong to the side they describe.
    pub fn validate(&self) -> Result<(), String> {
        for (ci, c) in self.s_cells.iter().enumerate() {
            let p = self
                .pieces
                .get(c.piece)
                .ok_or_else(|| format!("cell {ci}: bad piece"))?;
            if !p.s_faces.contains(&ci) {
                return Err(format!("cell {ci} missing from piece {}", c.piece));
            }
        }
        for (pi, p) in self.pieces.iter().enumerate() {
            if p.index > 3 {
                return Err(format!("piece {pi}: index {}", p.index));
            }
            for &ci in &p.s_faces {
                if self.s_cells.get(ci).map(|c| c.piece) != Some(pi) {
                    return Err(format!("piece {pi}: foreign cell {ci}"));
                }
            }
        }
        for (fi, f) in self.interfaces.iter().enumerate() {
            for side in 0..2 {
                let p = f.pieces[side];
                if p >= self.pieces.len() {
                    return Err(format!("interface {fi}: bad piece"));
                }
                if let Some([a, b]) = f.spans[side] {
                    for cell in [a, b] {
                        if self.s_cells.get(cell).map(|c| c.piece) != Some(p) {
                            return Err(format!(
                                "interface {fi} side {side}: span cell {cell} not on piece {p}"
                            ));
                        }
                    }
                    if !self.pieces[p].s_faces.contains(&a) || !self.pieces[p].s_faces.contains(&b)
                    {
                        return Err(format!("interface {fi} side {side}: span outside piece"));
                    }
                }
            }
        }
        if self.geometry.cell_edges.len() != self.s_cells.len() {
            return Err(format!(
                "geometry covers {} of {} cells",
                self.geometry.cell_edges.len(),
                self.s_cells.len()
            ));
        }
        let mut users: BTreeMap<u64, Vec<(SCellId, [u64; 2])>> = BTreeMap::new();
        for (ci, edges) in self.geometry.cell_edges.iter().enumerate() {
            for &(e, vs) in edges {
                users.entry(e).or_default().push((ci, vs));
            }
        }
        for (e, us) in users {
            if us.len() > 2 {
                return Err(format!("edge instance {e} glues {} cells", us.len()));
            }
            if us.len() == 2 {
                let sort = |[a, b]: [u64; 2]| if a <= b { [a, b] } else { [b, a] };
                if sort(us[0].1) != sort(us[1].1) {
                    return Err(format!("edge instance {e}: endpoint mismatch"));
                }
            }
        }
        Ok(())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    pub fn find(&mut self, a: usize) -> usize {
        if self.parent[a] != a {
            let r = self.find(self.parent[a]);
            self.parent[a] = r;
        }
        self.parent[a]
    }
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CutError {
    #[error("surface is one-sided; cutting requires a two-sided surface")]
    OneSided,
}

/// Fragment of a 1-handle cross-section (equally, of an island disc at its
/// ends): the regions its sheet chords cut out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Frag {
    /// Region between chords level j-1 and j of one family (j = 0: between
    /// the anchor free side and chord 0).
    Ear { sides: [usize; 2], j: u64 },
    /// The region beyond the last chord of every family.
    Center,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum ZFrag {
    Island { island: IslandRef, frag: Frag },
    Bridge { bridge: BridgeId, k: u64 },
    Patch { idx: usize },
}

/// Families of a strip side by which corner they stack from: `a` anchors past
/// side+1, `b` anchors past side-1.
struct SideFams {
    a: Option<([usize; 2], u64)>,
    b: Option<([usize; 2], u64)>,
}

fn side_fams(h: &HandleStructure, levels: &DerivedLevels, one: OneId, side: usize) -> SideFams {
    let m = h.ones[one].side_count();
    let mut out = SideFams { a: None, b: None };
    for f in sheet_families(h, one) {
        if !f.sides.contains(&side) {
            continue;
        }
        let y = levels.y[&(one, f.sides)];
        if f.anchor == (side + 1) % m {
            out.a = Some((f.sides, y));
        } else {
            debug_assert_eq!(f.anchor, (side + m - 1) % m);
            out.b = Some((f.sides, y));
        }
    }
    out
}

/// Which fragment borders portion p of a strip side (portions count from the
/// corner toward side+1; portion p lies between chord endpoints p-1 and p).
fn frag_of_portion(fams: &SideFams, p: u64) -> Frag {
    let ya = fams.a.map_or(0, |(_, y)| y);
    let yb = fams.b.map_or(0, |(_, y)| y);
    if p < ya {
        Frag::Ear {
            sides: fams.a.unwrap().0,
            j: p,
        }
    } else if p == ya {
        Frag::Center
    } else {
        debug_assert!(p <= ya + yb);
        Frag::Ear {
            sides: fams.b.unwrap().0,
            j: ya + yb - p,
        }
    }
}

/// All fragments of a 1-handle cross-section, in a fixed order.
fn one_frags(h: &HandleStructure, levels: &DerivedLevels, one: OneId) -> Vec<Frag> {
    let mut out = Vec::new();
    for f in sheet_families(h, one) {
        for j in 0..levels.y[&(one, f.sides)] {
            out.push(Frag::Ear { sides: f.sides, j });
        }
    }
    out.push(Frag::Center);
    out
}

/// Chords bounding a fragment, as (family sides, level) in increasing-level
/// order for ears.
fn bounding_chords(
    h: &HandleStructure,
    levels: &DerivedLevels,
    one: OneId,
    frag: Frag,
) -> Vec<([usize; 2], u64)> {
    match frag {
        Frag::Ear { sides, j } => {
            if j == 0 {
                vec![(sides, 0)]
            } else {
                vec![(sides, j - 1), (sides, j)]
            }
        }
        Frag::Center => sheet_families(h, one)
            .into_iter()
            .filter(|f| levels.y[&(one, f.sides)] > 0)
            .map(|f| (f.sides, levels.y[&(one, f.sides)] - 1))
            .collect(),
    }
}

/// The free side labels on a fragment's boundary.
fn frag_free_sides(h: &HandleStructure, levels: &DerivedLevels, one: OneId, frag: Frag) -> Vec<usize> {
    let handle = &h.ones[one];
    let m = handle.side_count();
    let fams = sheet_families(h, one);
    let anchor_of = |sides: [usize; 2]| fams.iter().find(|f| f.sides == sides).unwrap().anchor;
    match frag {
        Frag::Ear { sides, j } => {
            if j == 0 {
                vec![anchor_of(sides)]
            } else {
                vec![]
            }
        }
        Frag::Center => (0..m)
            .filter(|&s| !handle.sides[s].is_strip())
            .filter(|&s| {
                // Anchors of non-empty families belong to their ear 0.
                !fams
                    .iter()
                    .any(|f| f.anchor == s && levels.y[&(one, f.sides)] > 0)
            })
            .collect(),
    }
}

/// Walk the 0-end disc of a 2-handle again, returning the flank edge index
/// crossed at each hop.
fn disc_zero_flanks(h: &HandleStructure, two: TwoId) -> Vec<usize> {
    use crate::handles::pattern::flank_corners;
    let strips: Vec<(OneId, usize, bool)> = h.twos[two].strips().collect();
    let hops: Vec<BridgeId> = h.twos[two].hops().collect();
    let n = strips.len();
    let m0 = h.ones[strips[0].0].side_count();
    let mut neighbor = (strips[0].1 + 1) % m0;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (one, side, forward) = strips[k];
        let m = h.ones[one].side_count();
        let corner = if neighbor == (side + 1) % m {
            side
        } else {
            (side + m - 1) % m
        };
        let arr_end = if forward { 1 } else { 0 };
        let fc = flank_corners(h, hops[k]);
        let here = ((one, arr_end), corner);
        let (w, other) = (0..2)
            .find_map(|w| {
                let [a, b] = fc[w];
                if a == here {
                    Some((w, b))
                } else if b == here {
                    Some((w, a))
                } else {
                    None
                }
            })
            .expect("hop flank matches strip corner");
        out.push(w);
        let (one2, side2, _) = strips[(k + 1) % n];
        let m2 = h.ones[one2].side_count();
        neighbor = if other.1 == side2 {
            (side2 + 1) % m2
        } else {
            (side2 + m2 - 1) % m2
        };
    }
    out
}

/// Cut the structure along a realized two-sided surface.
pub fn cut_along(h: &HandleStructure, s: &NormalSurface) -> Result<CutComplex, CutError> {
    if !s.orientable {
        return Err(CutError::OneSided);
    }
    let census = enumerate_disc_types(h);
    let levels = solve(h, &census, &s.coordinates).expect("realized surface matches");
    let real = &s.realization;

    // --- 0-handle regions ------------------------------------------------
    // Fragments of each 0-handle sphere merge into regions wherever no
    // surface curve separates them.
    let mut region_of: BTreeMap<(ZeroId, ZFrag), usize> = BTreeMap::new();
    let mut zero_regions: Vec<Vec<Vec<ZFrag>>> = Vec::new(); // zero -> region -> frags
    for zero in 0..h.zeros.len() {
        let islands = h.islands_at(zero);
        let pat = zero_pattern(h, zero).expect("valid pattern");
        let mut frags: Vec<ZFrag> = Vec::new();
        for &(one, end) in &islands {
            for frag in one_frags(h, &levels, one) {
                frags.push(ZFrag::Island {
                    island: (one, end),
                    frag,
                });
            }
        }
        for b in h.bridges_at(zero) {
            let z = levels.z[h.bridges[b].owner];
            for k in 0..=z {
                frags.push(ZFrag::Bridge { bridge: b, k });
            }
        }
        for idx in 0..pat.patches.len() {
            frags.push(ZFrag::Patch { idx });
        }
        let index_of: BTreeMap<ZFrag, usize> =
            frags.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut uf = UnionFind::new(frags.len());

        // Island side portions <-> bridge fragments.
        for b in h.bridges_at(zero) {
            let br = &h.bridges[b];
            let two = br.owner;
            let z = levels.z[two];
            let strips: Vec<(OneId, usize, bool)> = h.twos[two].strips().collect();
            let hops: Vec<BridgeId> = h.twos[two].hops().collect();
            let i = hops.iter().position(|&x| x == b).unwrap();
            let hugs = disc_zero_hugs(h, two);
            let n = strips.len();
            for (attach, strip_idx) in [(br.from, i), (br.to, (i + 1) % n)] {
                let ((one, end), side) = attach;
                let m = h.ones[one].side_count();
                let fams = side_fams(h, &levels, one, side);
                let hug = hugs[strip_idx];
                for p in 0..=z {
                    let frag = frag_of_portion(&fams, p);
                    let bk = if hug == (side + 1) % m { p } else { z - p };
                    uf.union(
                        index_of[&ZFrag::Island {
                            island: (one, end),
                            frag,
                        }],
                        index_of[&ZFrag::Bridge { bridge: b, k: bk }],
                    );
                }
            }
        }
        // Island free sides <-> patches.
        let mut patch_of_free: BTreeMap<(IslandRef, usize), usize> = BTreeMap::new();
        for (idx, patch) in pat.patches.iter().enumerate() {
            for step in &patch.walk {
                if let PatchStep::Arc { island, side, .. } = step {
                    patch_of_free.insert((*island, *side), idx);
                }
            }
        }
        for &(one, end) in &islands {
            let fams = sheet_families(h, one);
            let m = h.ones[one].side_count();
            for a in (0..m).filter(|&x| !h.ones[one].sides[x].is_strip()) {
                let frag = match fams
                    .iter()
                    .find(|f| f.anchor == a && levels.y[&(one, f.sides)] > 0)
                {
                    Some(f) => Frag::Ear { sides: f.sides, j: 0 },
                    None => Frag::Center,
                };
                let idx = patch_of_free[&((one, end), a)];
                uf.union(
                    index_of[&ZFrag::Island {
                        island: (one, end),
                        frag,
                    }],
                    index_of[&ZFrag::Patch { idx }],
                );
            }
        }
        // Patches <-> bridge end fragments across flank edges.
        for (idx, patch) in pat.patches.iter().enumerate() {
            for step in &patch.walk {
                if let PatchStep::Flank { bridge, edge, .. } = step {
                    let two = h.bridges[*bridge].owner;
                    let z = levels.z[two];
                    let hops: Vec<BridgeId> = h.twos[two].hops().collect();
                    let i = hops.iter().position(|x| x == bridge).unwrap();
                    let w0 = disc_zero_flanks(h, two)[i];
                    let k = if *edge == w0 { 0 } else { z };
                    uf.union(
                        index_of[&ZFrag::Patch { idx }],
                        index_of[&ZFrag::Bridge { bridge: *bridge, k }],
                    );
                }
            }
        }

        let mut groups: BTreeMap<usize, Vec<ZFrag>> = BTreeMap::new();
        for (i, &f) in frags.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(f);
        }
        let regions: Vec<Vec<ZFrag>> = groups.into_values().collect();
        for (r, fs) in regions.iter().enumerate() {
            for &f in fs {
                region_of.insert((zero, f), r);
            }
        }
        zero_regions.push(regions);
    }

    // --- piece ids --------------------------------------------------------
    let mut pieces: Vec<Piece> = Vec::new();
    let mut region_piece: BTreeMap<(ZeroId, usize), PieceId> = BTreeMap::new();
    for (zero, regions) in zero_regions.iter().enumerate() {
        for r in 0..regions.len() {
            region_piece.insert((zero, r), pieces.len());
            pieces.push(Piece {
                index: 0,
                name: format!("q{zero}:r{r}"),
                s_faces: Vec::new(),
                outer: Vec::new(),
            });
        }
    }
    let mut one_piece: BTreeMap<(OneId, Frag), PieceId> = BTreeMap::new();
    for one in 0..h.ones.len() {
        for frag in one_frags(h, &levels, one) {
            one_piece.insert((one, frag), pieces.len());
            let name = match frag {
                Frag::Ear { sides, j } => format!("o{one}:ear{}-{}:{j}", sides[0], sides[1]),
                Frag::Center => format!("o{one}:center"),
            };
            pieces.push(Piece {
                index: 1,
                name,
                s_faces: Vec::new(),
                outer: Vec::new(),
            });
        }
    }
    let mut two_piece: BTreeMap<(TwoId, u64), PieceId> = BTreeMap::new();
    for two in 0..h.twos.len() {
        for k in 0..=levels.z[two] {
            two_piece.insert((two, k), pieces.len());
            pieces.push(Piece {
                index: 2,
                name: format!("t{two}:slab{k}"),
                s_faces: Vec::new(),
                outer: Vec::new(),
            });
        }
    }
    let mut three_piece: BTreeMap<ThreeKind, PieceId> = BTreeMap::new();
    for &kind in &h.threes {
        three_piece.insert(kind, pieces.len());
        pieces.push(Piece {
            index: 3,
            name: format!("three:{kind:?}"),
            s_faces: Vec::new(),
            outer: Vec::new(),
        });
    }

    // --- s-cells ----------------------------------------------------------
    let mut s_cells: Vec<SCell> = Vec::new();
    let mut disc_cell: BTreeMap<(usize, PieceId), SCellId> = BTreeMap::new();
    let mut sheet_cell: BTreeMap<(OneId, [usize; 2], u64, u8), SCellId> = BTreeMap::new();
    let mut cross_cell: BTreeMap<(TwoId, u64, u8), SCellId> = BTreeMap::new();
    let mut disc_regions: Vec<[PieceId; 2]> = Vec::new();

    for (di, d) in real.discs.iter().enumerate() {
        let mut adj: BTreeSet<PieceId> = BTreeSet::new();
        for &(e, _) in &d.boundary {
            if let SurfEdge::Chord {
                one,
                end,
                sides,
                level,
            } = e
            {
                let y = levels.y[&(one, sides)];
                let near = Frag::Ear { sides, j: level };
                let far = if level + 1 < y {
                    Frag::Ear {
                        sides,
                        j: level + 1,
                    }
                } else {
                    Frag::Center
                };
                for frag in [near, far] {
                    let r = region_of[&(
                        d.zero,
                        ZFrag::Island {
                            island: (one, end),
                            frag,
                        },
                    )];
                    adj.insert(region_piece[&(d.zero, r)]);
                }
            }
        }
        let adj: Vec<PieceId> = adj.into_iter().collect();
        assert_eq!(adj.len(), 2, "a disc separates two regions");
        for &p in &adj {
            let id = s_cells.len();
            s_cells.push(SCell {
                shape: CellShape::Disc {
                    zero: d.zero,
                    type_idx: d.type_idx,
                },
                piece: p,
            });
            disc_cell.insert((di, p), id);
            pieces[p].s_faces.push(id);
        }
        disc_regions.push([adj[0], adj[1]]);
    }
    for one in 0..h.ones.len() {
        for f in sheet_families(h, one) {
            let y = levels.y[&(one, f.sides)];
            for level in 0..y {
                for side in 0..2u8 {
                    let frag = if side == 0 {
                        Frag::Ear {
                            sides: f.sides,
                            j: level,
                        }
                    } else if level + 1 < y {
                        Frag::Ear {
                            sides: f.sides,
                            j: level + 1,
                        }
                    } else {
                        Frag::Center
                    };
                    let p = one_piece[&(one, frag)];
                    let id = s_cells.len();
                    s_cells.push(SCell {
                        shape: CellShape::Sheet {
                            one,
                            sides: f.sides,
                        },
                        piece: p,
                    });
                    sheet_cell.insert((one, f.sides, level, side), id);
                    pieces[p].s_faces.push(id);
                }
            }
        }
    }
    for two in 0..h.twos.len() {
        for k in 0..levels.z[two] {
            for side in 0..2u8 {
                let slab = k + u64::from(side);
                let p = two_piece[&(two, slab)];
                let id = s_cells.len();
                s_cells.push(SCell {
                    shape: CellShape::Cross { two },
                    piece: p,
                });
                cross_cell.insert((two, k, side), id);
                pieces[p].s_faces.push(id);
            }
        }
    }

    // --- interfaces -------------------------------------------------------
    let mut interfaces: Vec<Interface> = Vec::new();
    let three_for = |label: FreeLabel| -> Option<PieceId> {
        match label {
            FreeLabel::Top => three_piece.get(&ThreeKind::Top).copied(),
            FreeLabel::Bottom => three_piece.get(&ThreeKind::Bottom).copied(),
            FreeLabel::Bdry => three_piece.get(&ThreeKind::Core).copied(),
        }
    };

    // Sheet cell facing a given 1-handle fragment piece.
    let sheet_facing = |one: OneId, chord: ([usize; 2], u64), p: PieceId| -> SCellId {
        let (sides, level) = chord;
        for side in 0..2u8 {
            let id = sheet_cell[&(one, sides, level, side)];
            if s_cells[id].piece == p {
                return id;
            }
        }
        panic!("no sheet cell of {chord:?} faces piece {p}");
    };
    let cross_facing = |two: TwoId, k: u64, p: PieceId| -> SCellId {
        for side in 0..2u8 {
            let id = cross_cell[&(two, k, side)];
            if s_cells[id].piece == p {
                return id;
            }
        }
        panic!("no cross cell {two}/{k} faces piece {p}");
    };

    // (0,1): island fragments are the end faces of 1-handle pieces.
    for zero in 0..h.zeros.len() {
        for (one, end) in h.islands_at(zero) {
            for frag in one_frags(h, &levels, one) {
                let r = region_of[&(
                    zero,
                    ZFrag::Island {
                        island: (one, end),
                        frag,
                    },
                )];
                let rp = region_piece[&(zero, r)];
                let op = one_piece[&(one, frag)];
                let chords = bounding_chords(h, &levels, one, frag);
                let spans = if chords.len() == 2 {
                    let zero_span = [
                        disc_cell[&(
                            disc_of_chord(real, one, end, chords[0]),
                            rp,
                        )],
                        disc_cell[&(
                            disc_of_chord(real, one, end, chords[1]),
                            rp,
                        )],
                    ];
                    let one_span = [
                        sheet_facing(one, chords[0], op),
                        sheet_facing(one, chords[1], op),
                    ];
                    [Some(zero_span), Some(one_span)]
                } else {
                    [None, None]
                };
                interfaces.push(Interface {
                    pieces: [rp, op],
                    spans,
                    label: format!("end o{one}e{end}"),
                });
            }
        }
    }

    // (1,2): strip side portions join 1-handle pieces to 2-handle slabs.
    for one in 0..h.ones.len() {
        let m = h.ones[one].side_count();
        for side in 0..m {
            let two = match h.ones[one].sides[side] {
                Side::Strip(Some(t)) => t,
                Side::Strip(None) => unreachable!("validated structure"),
                Side::Free(_) => continue,
            };
            let z = levels.z[two];
            let strips: Vec<(OneId, usize, bool)> = h.twos[two].strips().collect();
            let hugs = disc_zero_hugs(h, two);
            let i = strips
                .iter()
                .position(|&(o, s, _)| o == one && s == side)
                .expect("strip in owner circuit");
            let hug = hugs[i];
            let fams = side_fams(h, &levels, one, side);
            for p in 0..=z {
                let frag = frag_of_portion(&fams, p);
                let op = one_piece[&(one, frag)];
                let slab = if hug == (side + 1) % m { p } else { z - p };
                let tp = two_piece[&(two, slab)];
                let spans = if p >= 1 && p <= z.saturating_sub(1) && z >= 2 {
                    let chord_at_pos = |pos: u64| -> ([usize; 2], u64) {
                        let ya = fams.a.map_or(0, |(_, y)| y);
                        if pos < ya {
                            (fams.a.unwrap().0, pos)
                        } else {
                            let (sides_b, yb) = fams.b.unwrap();
                            (sides_b, ya + yb - 1 - pos)
                        }
                    };
                    let k_at_pos =
                        |pos: u64| -> u64 { if hug == (side + 1) % m { pos } else { z - 1 - pos } };
                    let one_span = [
                        sheet_facing(one, chord_at_pos(p - 1), op),
                        sheet_facing(one, chord_at_pos(p), op),
                    ];
                    let two_span = [
                        cross_facing(two, k_at_pos(p - 1), tp),
                        cross_facing(two, k_at_pos(p), tp),
                    ];
                    [Some(one_span), Some(two_span)]
                } else {
                    [None, None]
                };
                interfaces.push(Interface {
                    pieces: [op, tp],
                    spans,
                    label: format!("strip o{one}s{side}p{p}"),
                });
            }
        }
    }

    // (0,2): bridge fragments join 0-handle regions to 2-handle slabs.
    for (b, br) in h.bridges.iter().enumerate() {
        let two = br.owner;
        let z = levels.z[two];
        for k in 0..=z {
            let r = region_of[&(br.zero, ZFrag::Bridge { bridge: b, k })];
            let rp = region_piece[&(br.zero, r)];
            let tp = two_piece[&(two, k)];
            let spans = if k >= 1 && k <= z.saturating_sub(1) && z >= 2 {
                let zero_span = [
                    disc_cell[&(real.edge_disc[&SurfEdge::Arc { bridge: b, k: k - 1 }], rp)],
                    disc_cell[&(real.edge_disc[&SurfEdge::Arc { bridge: b, k }], rp)],
                ];
                let two_span = [cross_facing(two, k - 1, tp), cross_facing(two, k, tp)];
                [Some(zero_span), Some(two_span)]
            } else {
                [None, None]
            };
            interfaces.push(Interface {
                pieces: [rp, tp],
                spans,
                label: format!("bridge {b}k{k}"),
            });
        }
    }

    // Boundary-labelled faces: interfaces to 3-handles, or outer faces.
    let mut attach = |piece: PieceId, label: FreeLabel, what: String, ifs: &mut Vec<Interface>| {
        match three_for(label) {
            Some(tp) => ifs.push(Interface {
                pieces: [piece, tp],
                spans: [None, None],
                label: what,
            }),
            None => pieces[piece].outer.push(format!("{label:?}:{what}")),
        }
    };
    let mut label_faces: Vec<(PieceId, FreeLabel, String)> = Vec::new();
    for zero in 0..h.zeros.len() {
        let pat = zero_pattern(h, zero).expect("valid pattern");
        for (idx, patch) in pat.patches.iter().enumerate() {
            let r = region_of[&(zero, ZFrag::Patch { idx })];
            label_faces.push((
                region_piece[&(zero, r)],
                patch.label,
                format!("patch q{zero}#{idx}"),
            ));
        }
    }
    for one in 0..h.ones.len() {
        for frag in one_frags(h, &levels, one) {
            for a in frag_free_sides(h, &levels, one, frag) {
                let label = match h.ones[one].sides[a] {
                    Side::Free(l) => l,
                    Side::Strip(_) => unreachable!(),
                };
                label_faces.push((one_piece[&(one, frag)], label, format!("rect o{one}s{a}")));
            }
        }
    }
    for two in 0..h.twos.len() {
        let z = levels.z[two];
        let strips: Vec<(OneId, usize, bool)> = h.twos[two].strips().collect();
        let (one0, s0, _) = strips[0];
        let m0 = h.ones[one0].side_count();
        let label_of = |neighbor: usize| -> FreeLabel {
            match h.ones[one0].sides[neighbor] {
                Side::Free(l) => l,
                Side::Strip(_) => unreachable!("end disc hugs a free side"),
            }
        };
        let l0 = label_of((s0 + 1) % m0);
        let l1 = label_of((s0 + m0 - 1) % m0);
        label_faces.push((two_piece[&(two, 0)], l0, format!("enddisc t{two}#0")));
        label_faces.push((two_piece[&(two, z)], l1, format!("enddisc t{two}#1")));
    }
    for (piece, label, what) in label_faces {
        attach(piece, label, what, &mut interfaces);
    }

    // --- geometry ---------------------------------------------------------
    // Pair off the two sides of every surface edge: each of its two faces
    // contributes two cells, and the pairing says which pair touches across
    // the edge on a common side of the surface.  Union-find over the pairs
    // then splits the cells of each surface component into its two copies,
    // and every pair becomes one edge instance on the doubled surface.
    let mut inc: BTreeMap<SurfEdge, Vec<SurfFace>> = BTreeMap::new();
    for (f, cycle) in &real.faces {
        for &(e, _) in cycle {
            inc.entry(e).or_default().push(*f);
        }
    }
    let mut side_uf = UnionFind::new(s_cells.len());
    let mut edge_pairs: Vec<(SurfEdge, [[SCellId; 2]; 2])> = Vec::new();
    for (&e, fs) in &inc {
        assert_eq!(fs.len(), 2, "interior surface edge");
        let pairs: [[SCellId; 2]; 2] = match e {
            SurfEdge::Chord {
                one,
                end,
                sides,
                level,
            } => {
                let d = real.edge_disc[&e];
                let zero = real.discs[d].zero;
                let r = region_of[&(
                    zero,
                    ZFrag::Island {
                        island: (one, end),
                        frag: Frag::Ear { sides, j: level },
                    },
                )];
                let near = region_piece[&(zero, r)];
                let [ra, rb] = disc_regions[d];
                let far = if near == ra { rb } else { ra };
                [
                    [disc_cell[&(d, near)], sheet_cell[&(one, sides, level, 0)]],
                    [disc_cell[&(d, far)], sheet_cell[&(one, sides, level, 1)]],
                ]
            }
            SurfEdge::Line { one, side, pos } => {
                let (two, k) = fs
                    .iter()
                    .find_map(|f| match *f {
                        SurfFace::Cross { two, k } => Some((two, k)),
                        _ => None,
                    })
                    .expect("line bounds a cross rectangle");
                let chord = fs
                    .iter()
                    .find_map(|f| match *f {
                        SurfFace::Sheet { sides, level, .. } => Some((sides, level)),
                        _ => None,
                    })
                    .expect("line bounds a sheet");
                let m = h.ones[one].side_count();
                let z = levels.z[two];
                let strips: Vec<(OneId, usize, bool)> = h.twos[two].strips().collect();
                let i = strips
                    .iter()
                    .position(|&(o, s2, _)| o == one && s2 == side)
                    .expect("strip in owner circuit");
                let hug = disc_zero_hugs(h, two)[i] == (side + 1) % m;
                let posu = pos as u64;
                debug_assert_eq!(k, if hug { posu } else { z - 1 - posu });
                let fams = side_fams(h, &levels, one, side);
                let below = one_piece[&(one, frag_of_portion(&fams, posu))];
                let above = one_piece[&(one, frag_of_portion(&fams, posu + 1))];
                let below_slab = if hug { posu } else { z - posu };
                let above_slab = if hug { posu + 1 } else { z - posu - 1 };
                [
                    [
                        sheet_facing(one, chord, below),
                        cross_facing(two, k, two_piece[&(two, below_slab)]),
                    ],
                    [
                        sheet_facing(one, chord, above),
                        cross_facing(two, k, two_piece[&(two, above_slab)]),
                    ],
                ]
            }
            SurfEdge::Arc { bridge, k } => {
                let d = real.edge_disc[&e];
                let zero = h.bridges[bridge].zero;
                let two = h.bridges[bridge].owner;
                let side_piece = |frag_k: u64| -> PieceId {
                    region_piece[&(
                        zero,
                        region_of[&(
                            zero,
                            ZFrag::Bridge {
                                bridge,
                                k: frag_k,
                            },
                        )],
                    )]
                };
                [
                    [
                        disc_cell[&(d, side_piece(k))],
                        cross_facing(two, k, two_piece[&(two, k)]),
                    ],
                    [
                        disc_cell[&(d, side_piece(k + 1))],
                        cross_facing(two, k, two_piece[&(two, k + 1)]),
                    ],
                ]
            }
        };
        for pr in pairs {
            side_uf.union(pr[0], pr[1]);
        }
        edge_pairs.push((e, pairs));
    }
    let mut vid: BTreeMap<(SurfVertex, usize), u64> = BTreeMap::new();
    let mut next_v = 2 * edge_pairs.len() as u64;
    let mut cell_edges: Vec<Vec<(u64, [u64; 2])>> = vec![Vec::new(); s_cells.len()];
    for (i, (e, pairs)) in edge_pairs.iter().enumerate() {
        let ends = real.edge_ends[e];
        for (half, pr) in pairs.iter().enumerate() {
            let eid = 2 * i as u64 + half as u64;
            let class = side_uf.find(pr[0]);
            debug_assert_eq!(class, side_uf.find(pr[1]));
            let vids = ends.map(|v| {
                *vid.entry((v, class)).or_insert_with(|| {
                    let id = next_v;
                    next_v += 1;
                    id
                })
            });
            for &c in pr {
                cell_edges[c].push((eid, vids));
            }
        }
    }
    let geometry = CutGeometry { cell_edges };
    if !s_cells.is_empty() {
        let all: Vec<SCellId> = (0..s_cells.len()).collect();
        let (doubled, _) = geometry.subsurface(&all);
        assert_eq!(doubled, 2 * s.euler, "two copies of the surface");
    }

    let complex = CutComplex {
        label: format!("cut along weight-{} surface", s.weight),
        pieces,
        s_cells,
        interfaces,
        geometry,
    };
    complex.validate().expect("cut complex is consistent");
    assert_eq!(
        complex.euler(),
        h.euler() + s.euler,
        "cutting adds the surface characteristic"
    );
    Ok(complex)
}

fn disc_of_chord(
    real: &super::realize::Realization,
    one: OneId,
    end: usize,
    chord: ([usize; 2], u64),
) -> usize {
    real.edge_disc[&SurfEdge::Chord {
        one,
        end,
        sides: chord.0,
        level: chord.1,
    }]
}
