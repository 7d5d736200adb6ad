use std::collections::{BTreeMap, BTreeSet};

use crate::normal::cut::{
    CellShape, CutComplex, CutGeometry, InterfaceId, Piece, PieceId, SCell, SCellId,
};

use super::assemble::{assemble_bundle, BaseKind, BundleError};
use super::flags::find_parallelity_handles;

/// One annular simplification: an annulus bundle is removed together with the
/// collar of boundary-touching pieces it is pleated against, and the annulus
/// it was attached along on the far side is re-exposed.
#[derive(Debug, Clone)]
pub struct AnnularMove {
    /// The annulus-bundle pieces being removed.
    pub component: Vec<PieceId>,
    /// Boundary-touching pieces swallowed with them.
    pub collar: Vec<PieceId>,
    /// Every piece that disappears, sorted.
    pub removed: Vec<PieceId>,
    /// Frontier faces on the far side; their surface re-appears after the move.
    pub kept_annulus: Vec<InterfaceId>,
    snapshot: Vec<(PieceId, String)>,
}

#[derive(Debug, thiserror::Error)]
pub enum MoveError {
    #[error("the complex changed since this move was found")]
    Stale,
}

#[derive(Debug, thiserror::Error)]
pub enum ReplaceError {
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("component with base {base:?} is not a disc bundle")]
    NonDisc { base: BaseKind },
    #[error("piece {piece} of index >= 2 attaches along the replaced region")]
    BadAttachment { piece: PieceId },
}

/// Searches for an annular simplification.
///
/// A move exists when an annulus-bundle component is pleated against the
/// manifold boundary: the pieces just outside part of its frontier form a
/// collar of boundary rim pieces, and cutting the whole pleat off along the
/// far frontier leaves the complex intact.  Of all such moves the smallest
/// (fewest pieces, then lexicographic) is returned.
pub fn find_annular_move(c: &CutComplex) -> Result<Option<AnnularMove>, BundleError> {
    let bundle = assemble_bundle(c)?;
    let flags = find_parallelity_handles(c);
    let is_rim = |p: PieceId| {
        !flags[p] && c.pieces[p].s_faces.len() == 1 && !c.pieces[p].outer.is_empty()
    };
    let mut by_piece: Vec<Vec<InterfaceId>> = vec![Vec::new(); c.pieces.len()];
    for (fi, f) in c.interfaces.iter().enumerate() {
        by_piece[f.pieces[0]].push(fi);
        if f.pieces[1] != f.pieces[0] {
            by_piece[f.pieces[1]].push(fi);
        }
    }

    let mut best: Option<AnnularMove> = None;
    for comp in &bundle.components {
        if comp.base != BaseKind::Annulus {
            continue;
        }
        let inside: BTreeSet<PieceId> = comp.pieces.iter().copied().collect();

        // Collar seed: rim pieces straight across the frontier, then close up
        // under rim-to-rim adjacency.
        let mut collar: BTreeSet<PieceId> = BTreeSet::new();
        for &fi in &comp.frontier {
            let f = &c.interfaces[fi];
            let out = if inside.contains(&f.pieces[0]) {
                f.pieces[1]
            } else {
                f.pieces[0]
            };
            if is_rim(out) {
                collar.insert(out);
            }
        }
        let mut stack: Vec<PieceId> = collar.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &fi in &by_piece[p] {
                let f = &c.interfaces[fi];
                let o = if f.pieces[0] == p { f.pieces[1] } else { f.pieces[0] };
                if !collar.contains(&o) && !inside.contains(&o) && is_rim(o) {
                    collar.insert(o);
                    stack.push(o);
                }
            }
        }
        if collar.is_empty() {
            continue;
        }

        // The collar may not spill anywhere else.
        let sealed = collar.iter().all(|&p| {
            by_piece[p].iter().all(|&fi| {
                let f = &c.interfaces[fi];
                let o = if f.pieces[0] == p { f.pieces[1] } else { f.pieces[0] };
                collar.contains(&o) || inside.contains(&o)
            })
        });
        if !sealed {
            continue;
        }

        // The frontier must split: part against the collar, part kept.
        let (f_collar, f_kept): (Vec<InterfaceId>, Vec<InterfaceId>) =
            comp.frontier.iter().partition(|&&fi| {
                let f = &c.interfaces[fi];
                let out = if inside.contains(&f.pieces[0]) {
                    f.pieces[1]
                } else {
                    f.pieces[0]
                };
                collar.contains(&out)
            });
        if f_collar.is_empty() || f_kept.is_empty() {
            continue;
        }

        let region: BTreeSet<PieceId> = inside.union(&collar).copied().collect();
        // No other product piece may touch the region, removal may not strand
        // an attaching region, and the count must balance.
        let mut ok = true;
        for (a, fa) in by_piece.iter().enumerate() {
            if !region.contains(&a) {
                continue;
            }
            for &fi in fa {
                let f = &c.interfaces[fi];
                let o = if f.pieces[0] == a { f.pieces[1] } else { f.pieces[0] };
                if region.contains(&o) {
                    continue;
                }
                if flags[o] && !inside.contains(&o) {
                    ok = false;
                }
                if c.pieces[a].index < c.pieces[o].index {
                    ok = false;
                }
            }
        }
        let balance: i64 = region
            .iter()
            .map(|&p| if c.pieces[p].index % 2 == 0 { 1 } else { -1 })
            .sum();
        if !ok || balance != 0 {
            continue;
        }

        let removed: Vec<PieceId> = region.iter().copied().collect();
        let replace = match &best {
            None => true,
            Some(b) => (removed.len(), &removed) < (b.removed.len(), &b.removed),
        };
        if replace {
            let snapshot = removed
                .iter()
                .map(|&p| (p, c.pieces[p].name.clone()))
                .collect();
            best = Some(AnnularMove {
                component: comp.pieces.clone(),
                collar: collar.iter().copied().collect(),
                removed,
                kept_annulus: f_kept,
                snapshot,
            });
        }
    }
    Ok(best)
}

fn fresh_quad(cell_edges: &mut Vec<Vec<(u64, [u64; 2])>>, next: &mut u64) {
    let e: Vec<u64> = (0..4).map(|i| *next + i).collect();
    let v: Vec<u64> = (4..8).map(|i| *next + i).collect();
    *next += 8;
    cell_edges.push(vec![
        (e[0], [v[0], v[1]]),
        (e[1], [v[1], v[2]]),
        (e[2], [v[2], v[3]]),
        (e[3], [v[3], v[0]]),
    ]);
}

struct Carved {
    pieces: Vec<Piece>,
    s_cells: Vec<SCell>,
    cell_edges: Vec<Vec<(u64, [u64; 2])>>,
    piece_map: BTreeMap<PieceId, PieceId>,
    cell_map: BTreeMap<SCellId, SCellId>,
}

/// Copies the complex without the given pieces, their cells or geometry.
fn carve(c: &CutComplex, removed: &BTreeSet<PieceId>) -> Carved {
    let mut piece_map = BTreeMap::new();
    let mut pieces = Vec::new();
    for (pi, p) in c.pieces.iter().enumerate() {
        if removed.contains(&pi) {
            continue;
        }
        piece_map.insert(pi, pieces.len());
        pieces.push(Piece {
            index: p.index,
            name: p.name.clone(),
            s_faces: Vec::new(),
            outer: p.outer.clone(),
        });
    }
    let mut cell_map = BTreeMap::new();
    let mut s_cells = Vec::new();
    let mut cell_edges = Vec::new();
    for (ci, cell) in c.s_cells.iter().enumerate() {
        if removed.contains(&cell.piece) {
            continue;
        }
        let p = piece_map[&cell.piece];
        cell_map.insert(ci, s_cells.len());
        pieces[p].s_faces.push(s_cells.len());
        s_cells.push(SCell {
            shape: cell.shape.clone(),
            piece: p,
        });
        cell_edges.push(c.geometry.cell_edges[ci].clone());
    }
    Carved {
        pieces,
        s_cells,
        cell_edges,
        piece_map,
        cell_map,
    }
}

/// Performs a previously found annular simplification.
///
/// The removed pieces vanish; each kept frontier face turns into a fresh
/// exposed surface cell on its surviving piece.  Piece count strictly drops,
/// the complex stays consistent, its count balance is unchanged, and every
/// surviving parallelity piece is still one afterwards.
pub fn apply_annular_move(c: &CutComplex, mv: &AnnularMove) -> Result<CutComplex, MoveError> {
    for (id, name) in &mv.snapshot {
        if c.pieces.get(*id).map(|p| p.name.as_str()) != Some(name.as_str()) {
            return Err(MoveError::Stale);
        }
    }
    let removed: BTreeSet<PieceId> = mv.removed.iter().copied().collect();
    let kept: BTreeSet<InterfaceId> = mv.kept_annulus.iter().copied().collect();
    let mut out = carve(c, &removed);
    let mut next = c.geometry.fresh_id();

    let mut interfaces = Vec::new();
    let mut exposed = 0usize;
    for (fi, f) in c.interfaces.iter().enumerate() {
        let gone = [removed.contains(&f.pieces[0]), removed.contains(&f.pieces[1])];
        match gone {
            [false, false] => {
                let mut g = f.clone();
                g.pieces = [out.piece_map[&f.pieces[0]], out.piece_map[&f.pieces[1]]];
                for side in 0..2 {
                    g.spans[side] =
                        f.spans[side].map(|[a, b]| [out.cell_map[&a], out.cell_map[&b]]);
                }
                interfaces.push(g);
            }
            [true, true] => {}
            _ => {
                if !kept.contains(&fi) {
                    return Err(MoveError::Stale);
                }
                exposed += 1;
                let side = usize::from(gone[0]);
                let p = out.piece_map[&f.pieces[side]];
                let cell = out.s_cells.len();
                out.pieces[p].s_faces.push(cell);
                out.s_cells.push(SCell {
                    shape: CellShape::Tag(format!("exposed:{fi}")),
                    piece: p,
                });
                fresh_quad(&mut out.cell_edges, &mut next);
            }
        }
    }
    if exposed != kept.len() {
        return Err(MoveError::Stale);
    }

    let result = CutComplex {
        label: format!("{} / annular move", c.label),
        pieces: out.pieces,
        s_cells: out.s_cells,
        interfaces,
        geometry: CutGeometry {
            cell_edges: out.cell_edges,
        },
    };
    result.validate().expect("move leaves a consistent complex");
    assert!(result.pieces.len() < c.pieces.len(), "move shrinks the complex");
    assert_eq!(result.euler(), c.euler(), "move preserves the count balance");
    let before = find_parallelity_handles(c);
    let after = find_parallelity_handles(&result);
    for (&old, &new) in &out.piece_map {
        assert!(
            !before[old] || after[new],
            "surviving product piece {old} lost its structure"
        );
    }
    Ok(result)
}

/// Replaces every disc-bundle component by a single thickened-disc piece.
///
/// Each component must fiber over a disc and attach only along pieces of
/// index below two; it is then carved out and one index-two piece with two
/// fresh exposed cells is glued back along the old frontier.
pub fn replace_disc_bundles(c: &CutComplex) -> Result<CutComplex, ReplaceError> {
    let bundle = assemble_bundle(c)?;
    if bundle.components.is_empty() {
        return Ok(c.clone());
    }
    let mut comp_of: BTreeMap<PieceId, usize> = BTreeMap::new();
    for (ci, comp) in bundle.components.iter().enumerate() {
        if comp.base != BaseKind::Disc {
            return Err(ReplaceError::NonDisc { base: comp.base });
        }
        let inside: BTreeSet<PieceId> = comp.pieces.iter().copied().collect();
        for &fi in &comp.frontier {
            let f = &c.interfaces[fi];
            let outp = if inside.contains(&f.pieces[0]) {
                f.pieces[1]
            } else {
                f.pieces[0]
            };
            if c.pieces[outp].index >= 2 {
                return Err(ReplaceError::BadAttachment { piece: outp });
            }
        }
        for &p in &comp.pieces {
            comp_of.insert(p, ci);
        }
    }

    let removed: BTreeSet<PieceId> = bundle.flagged.iter().copied().collect();
    let mut out = carve(c, &removed);
    let mut next = c.geometry.fresh_id();
    let mut cap: Vec<PieceId> = Vec::new();
    for ci in 0..bundle.components.len() {
        let id = out.pieces.len();
        out.pieces.push(Piece {
            index: 2,
            name: format!("cap:{ci}"),
            s_faces: Vec::new(),
            outer: Vec::new(),
        });
        for half in 0..2 {
            let cell = out.s_cells.len();
            out.pieces[id].s_faces.push(cell);
            out.s_cells.push(SCell {
                shape: CellShape::Tag(format!("cap:{ci}:{half}")),
                piece: id,
            });
            fresh_quad(&mut out.cell_edges, &mut next);
        }
        cap.push(id);
    }

    let mut interfaces = Vec::new();
    for f in c.interfaces.iter() {
        let gone = [removed.contains(&f.pieces[0]), removed.contains(&f.pieces[1])];
        match gone {
            [false, false] => {
                let mut g = f.clone();
                g.pieces = [out.piece_map[&f.pieces[0]], out.piece_map[&f.pieces[1]]];
                for side in 0..2 {
                    g.spans[side] =
                        f.spans[side].map(|[a, b]| [out.cell_map[&a], out.cell_map[&b]]);
                }
                interfaces.push(g);
            }
            [true, true] => {}
            _ => {
                let side = if gone[0] { 0 } else { 1 };
                let other = 1 - side;
                let mut g = f.clone();
                g.pieces[side] = cap[comp_of[&f.pieces[side]]];
                g.pieces[other] = out.piece_map[&f.pieces[other]];
                g.spans[side] = None;
                g.spans[other] =
                    f.spans[other].map(|[a, b]| [out.cell_map[&a], out.cell_map[&b]]);
                interfaces.push(g);
            }
        }
    }

    let result = CutComplex {
        label: format!("{} / discs replaced", c.label),
        pieces: out.pieces,
        s_cells: out.s_cells,
        interfaces,
        geometry: CutGeometry {
            cell_edges: out.cell_edges,
        },
    };
    result
        .validate()
        .expect("replacement leaves a consistent complex");
    assert_eq!(
        result.euler(),
        c.euler(),
        "a disc bundle and its replacement count alike"
    );
    Ok(result)
}
