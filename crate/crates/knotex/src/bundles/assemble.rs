use std::collections::{BTreeMap, BTreeSet};

use crate::normal::cut::{CutComplex, InterfaceId, PieceId, SCellId, UnionFind};

use super::flags::find_parallelity_handles;

/// Topological type of the base of an interval-bundle region, read off from
/// the horizontal boundary (the surface cells the region is a product over).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Disc,
    Annulus,
    Moebius,
    Torus,
    Klein,
    Other { euler: i64 },
}

/// One connected interval-bundle region assembled from parallelity pieces.
#[derive(Debug, Clone)]
pub struct BundleComponent {
    pub pieces: Vec<PieceId>,
    pub base: BaseKind,
    /// Surface cells forming the horizontal boundary: two copies of the base
    /// (one copy when the bundle is twisted).
    pub h_cells: Vec<SCellId>,
    pub h_euler: i64,
    pub h_components: usize,
    /// Interfaces with exactly one side inside: the vertical boundary.
    pub frontier: Vec<InterfaceId>,
}

/// All interval-bundle regions of a cut complex.
#[derive(Debug, Clone)]
pub struct ParallelityBundle {
    pub flagged: Vec<PieceId>,
    pub components: Vec<BundleComponent>,
}

#[derive(Debug, thiserror::Error)]
pub enum BundleError {
    #[error("interface {interface}: the product structures on its two sides do not line up")]
    IncompatibleStructures { interface: InterfaceId },
}

fn share_instance(c: &CutComplex, a: SCellId, b: SCellId) -> bool {
    let ea: BTreeSet<u64> = c.geometry.cell_edges[a].iter().map(|&(e, _)| e).collect();
    c.geometry.cell_edges[b].iter().any(|&(e, _)| ea.contains(&e))
}

/// Glues the flagged pieces into interval bundles over identified bases.
///
/// Neighbouring flagged pieces merge across an interface only if the spans on
/// its two sides list edge-adjacent cells in the same order; a mismatch means
/// the two products induce opposite interval directions and cannot form one
/// bundle.
pub fn assemble_bundle(c: &CutComplex) -> Result<ParallelityBundle, BundleError> {
    let flags = find_parallelity_handles(c);
    let flagged: Vec<PieceId> = (0..c.pieces.len()).filter(|&p| flags[p]).collect();

    let mut uf = UnionFind::new(c.pieces.len());
    for (fi, f) in c.interfaces.iter().enumerate() {
        let [p, q] = f.pieces;
        if !(flags[p] && flags[q]) {
            continue;
        }
        let (sa, sb) = match (f.spans[0], f.spans[1]) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(BundleError::IncompatibleStructures { interface: fi }),
        };
        for j in 0..2 {
            if !share_instance(c, sa[j], sb[j]) {
                return Err(BundleError::IncompatibleStructures { interface: fi });
            }
        }
        uf.union(p, q);
    }

    let mut groups: BTreeMap<usize, Vec<PieceId>> = BTreeMap::new();
    for &p in &flagged {
        groups.entry(uf.find(p)).or_default().push(p);
    }

    let mut components = Vec::new();
    for pieces in groups.into_values() {
        let inside: BTreeSet<PieceId> = pieces.iter().copied().collect();
        let mut h_cells: Vec<SCellId> = Vec::new();
        for &p in &pieces {
            h_cells.extend(&c.pieces[p].s_faces);
        }
        h_cells.sort_unstable();
        let (h_euler, h_components) = c.geometry.subsurface(&h_cells);
        let frontier: Vec<InterfaceId> = c
            .interfaces
            .iter()
            .enumerate()
            .filter(|(_, f)| inside.contains(&f.pieces[0]) != inside.contains(&f.pieces[1]))
            .map(|(fi, _)| fi)
            .collect();
        let base = match (h_euler, h_components, frontier.is_empty()) {
            (2, 2, false) => BaseKind::Disc,
            (0, 2, false) => BaseKind::Annulus,
            (0, 1, false) => BaseKind::Moebius,
            (0, 2, true) => BaseKind::Torus,
            (0, 1, true) => BaseKind::Klein,
            _ => BaseKind::Other { euler: h_euler / 2 },
        };
        components.push(BundleComponent {
            pieces,
            base,
            h_cells,
            h_euler,
            h_components,
            frontier,
        });
    }
    Ok(ParallelityBundle { flagged, components })
}

/// Outcome of one clause of the product-region certification.
#[derive(Debug, Clone)]
pub struct ClauseCheck {
    pub pass: bool,
    pub detail: String,
}

/// Certification that a candidate set of pieces is a generalized product
/// region that can be carved out of the decomposition in one go.
#[derive(Debug, Clone)]
pub struct GpbReport {
    pub clauses: [ClauseCheck; 5],
}

impl GpbReport {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

/// Checks a candidate piece set clause by clause:
///
/// 1. it is a nonempty connected union of parallelity pieces;
/// 2. every member is a product over exactly two surface cells;
/// 3. it is a union of handles of the decomposition;
/// 4. its vertical boundary is genuinely maximal — no product piece sits
///    just outside it, and every boundary face is laterally framed;
/// 5. removing it never strands a remaining handle's attaching region.
pub fn verify_gpb(c: &CutComplex, candidate: &[PieceId]) -> GpbReport {
    let flags = find_parallelity_handles(c);
    let inside: BTreeSet<PieceId> = candidate.iter().copied().collect();

    // (i) nonempty, connected, all parallelity pieces.
    let clause1 = {
        if inside.is_empty() {
            ClauseCheck {
                pass: false,
                detail: "empty candidate".into(),
            }
        } else if let Some(&p) = candidate.iter().find(|&&p| !flags[p]) {
            ClauseCheck {
                pass: false,
                detail: format!("piece {p} is not a parallelity piece; cannot certify"),
            }
        } else {
            let mut uf = UnionFind::new(c.pieces.len());
            for f in &c.interfaces {
                if inside.contains(&f.pieces[0]) && inside.contains(&f.pieces[1]) {
                    uf.union(f.pieces[0], f.pieces[1]);
                }
            }
            let roots: BTreeSet<usize> = candidate.iter().map(|&p| uf.find(p)).collect();
            if roots.len() == 1 {
                ClauseCheck {
                    pass: true,
                    detail: format!("{} connected parallelity pieces", candidate.len()),
                }
            } else {
                ClauseCheck {
                    pass: false,
                    detail: format!("{} components", roots.len()),
                }
            }
        }
    };

    // (ii) interval-bundle structure on every member.
    let clause2 = match candidate
        .iter()
        .find(|&&p| c.pieces[p].s_faces.len() != 2 || !c.pieces[p].outer.is_empty())
    {
        Some(&p) => ClauseCheck {
            pass: false,
            detail: format!("piece {p} is not a product over two cells"),
        },
        None => ClauseCheck {
            pass: true,
            detail: "every member fibers over two surface cells".into(),
        },
    };

    // (iii) the candidate is literally a set of pieces of the decomposition.
    let clause3 = ClauseCheck {
        pass: candidate.iter().all(|&p| p < c.pieces.len()),
        detail: "union of handles of the decomposition".into(),
    };

    // (iv) vertical boundary is framed and maximal.
    let mut clause4 = ClauseCheck {
        pass: true,
        detail: "vertical boundary is framed and maximal".into(),
    };
    for f in c.interfaces.iter() {
        let [p, q] = f.pieces;
        let (member, other, side) = if inside.contains(&p) && !inside.contains(&q) {
            (p, q, 0)
        } else if inside.contains(&q) && !inside.contains(&p) {
            (q, p, 1)
        } else {
            continue;
        };
        if f.spans[side].is_none() {
            clause4 = ClauseCheck {
                pass: false,
                detail: format!("boundary face of piece {member} is not laterally framed"),
            };
            break;
        }
        if flags[other] {
            clause4 = ClauseCheck {
                pass: false,
                detail: format!(
                    "vertical boundary cuts through the product region at piece {other}"
                ),
            };
            break;
        }
    }

    // (v) attaching regions of the remaining handles stay intact.
    let mut clause5 = ClauseCheck {
        pass: true,
        detail: "no remaining attaching region is stranded".into(),
    };
    for f in c.interfaces.iter() {
        let [p, q] = f.pieces;
        for (a, b) in [(p, q), (q, p)] {
            if inside.contains(&a)
                && !inside.contains(&b)
                && c.pieces[a].index < c.pieces[b].index
            {
                clause5 = ClauseCheck {
                    pass: false,
                    detail: format!(
                        "removing piece {a} (index {}) strands piece {b} (index {})",
                        c.pieces[a].index, c.pieces[b].index
                    ),
                };
            }
        }
    }

    GpbReport {
        clauses: [clause1, clause2, clause3, clause4, clause5],
    }
}
