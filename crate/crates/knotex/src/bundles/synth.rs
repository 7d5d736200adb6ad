//! Hand-built cut complexes for exercising bundle assembly and the
//! simplification moves on shapes that small knot diagrams do not produce:
//! pleated annulus bundles, nested pleats, a disc-bundle chain, and a
//! twisted (Moebius) bundle.

use crate::normal::cut::{CellShape, CutComplex, CutGeometry, Interface, Piece, PieceId, SCell};

/// Boundary quad `i` of a cyclic band of `n` quads; `band` numbers the rows
/// of a stacked grid so that vertically adjacent bands share their rim edges.
fn ring_quad(grid: u64, band: u64, i: usize, n: usize) -> Vec<(u64, [u64; 2])> {
    let g = |kind: u64, a: u64, b: u64| (grid << 48) | (kind << 40) | (a << 20) | b;
    let j = ((i + 1) % n) as u64;
    let i = i as u64;
    let (r0, r1) = (band, band + 1);
    vec![
        (g(0, r0, i), [g(2, r0, i), g(2, r0, j)]),
        (g(1, r0, j), [g(2, r0, j), g(2, r1, j)]),
        (g(0, r1, i), [g(2, r1, i), g(2, r1, j)]),
        (g(1, r0, i), [g(2, r0, i), g(2, r1, i)]),
    ]
}

/// Quad `j` of an open strip (no wrap-around).
fn strip_quad(grid: u64, j: usize) -> Vec<(u64, [u64; 2])> {
    let g = |kind: u64, a: u64, b: u64| (grid << 48) | (kind << 40) | (a << 20) | b;
    let j1 = j as u64 + 1;
    let j = j as u64;
    vec![
        (g(0, 0, j), [g(2, 0, j), g(2, 0, j1)]),
        (g(1, 0, j1), [g(2, 0, j1), g(2, 1, j1)]),
        (g(0, 1, j), [g(2, 1, j), g(2, 1, j1)]),
        (g(1, 0, j), [g(2, 0, j), g(2, 1, j)]),
    ]
}

struct Builder {
    pieces: Vec<Piece>,
    s_cells: Vec<SCell>,
    cell_edges: Vec<Vec<(u64, [u64; 2])>>,
    interfaces: Vec<Interface>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            pieces: Vec::new(),
            s_cells: Vec::new(),
            cell_edges: Vec::new(),
            interfaces: Vec::new(),
        }
    }
    fn piece(&mut self, index: u8, name: String, outer: &[&str]) -> PieceId {
        self.pieces.push(Piece {
            index,
            name,
            s_faces: Vec::new(),
            outer: outer.iter().map(|s| s.to_string()).collect(),
        });
        self.pieces.len() - 1
    }
    fn cell(&mut self, piece: PieceId, tag: &str, quad: Vec<(u64, [u64; 2])>) -> usize {
        let id = self.s_cells.len();
        self.s_cells.push(SCell {
            shape: CellShape::Tag(tag.to_string()),
            piece,
        });
        self.pieces[piece].s_faces.push(id);
        self.cell_edges.push(quad);
        id
    }
    fn finish(self, label: String) -> CutComplex {
        let complex = CutComplex {
            label,
            pieces: self.pieces,
            s_cells: self.s_cells,
            interfaces: self.interfaces,
            geometry: CutGeometry {
                cell_edges: self.cell_edges,
            },
        };
        complex.validate().expect("synthetic complex is consistent");
        complex
    }
}

/// A ring of `2c` product pieces pleated over the boundary: the bundle `B`
/// fibers over an annulus, one side of its frontier leans on rim pieces `Q`
/// that touch the boundary, the other side attaches to a core ring `K`.
/// One annular move removes `B` and `Q` and leaves the core ring.
pub fn pleat_ring(c: usize) -> CutComplex {
    assert!(c >= 1);
    let n = 2 * c;
    let mut b = Builder::new();
    let bp: Vec<PieceId> = (0..n)
        .map(|i| b.piece(if i % 2 == 0 { 1 } else { 2 }, format!("pleatB{i}"), &[]))
        .collect();
    let kp: Vec<PieceId> = (0..n)
        .map(|i| b.piece(if i % 2 == 0 { 0 } else { 1 }, format!("pleatK{i}"), &["core"]))
        .collect();
    let qp: Vec<PieceId> = (0..n)
        .map(|i| b.piece(if i % 2 == 0 { 0 } else { 1 }, format!("pleatQ{i}"), &["rim"]))
        .collect();
    let bc: Vec<[usize; 2]> = (0..n)
        .map(|i| {
            let tag = if i % 2 == 0 { "pleat:sheet" } else { "pleat:cross" };
            [
                b.cell(bp[i], tag, ring_quad(0, 2, i, n)),
                b.cell(bp[i], tag, ring_quad(0, 0, i, n)),
            ]
        })
        .collect();
    for (i, &q) in qp.iter().enumerate() {
        b.cell(q, "pleat:fold", ring_quad(0, 1, i, n));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        b.interfaces.push(Interface {
            pieces: [bp[i], bp[j]],
            spans: [Some(bc[i]), Some(bc[j])],
            label: format!("pleat:ring{i}"),
        });
        b.interfaces.push(Interface {
            pieces: [bp[i], kp[i]],
            spans: [Some(bc[i]), None],
            label: format!("pleat:in{i}"),
        });
        b.interfaces.push(Interface {
            pieces: [bp[i], qp[i]],
            spans: [Some(bc[i]), None],
            label: format!("pleat:out{i}"),
        });
        b.interfaces.push(Interface {
            pieces: [kp[i], kp[j]],
            spans: [None, None],
            label: format!("pleat:core{i}"),
        });
        b.interfaces.push(Interface {
            pieces: [qp[i], qp[j]],
            spans: [None, None],
            label: format!("pleat:rim{i}"),
        });
    }
    b.finish(format!("synthetic pleat ring ({n} around)"))
}

/// Two nested pleated rings `B1`, `B2` around a common wall ring `W` with a
/// separate core `K`: two annular moves in succession strip first the outer
/// pleat, then the inner one, leaving the wall and the core.
pub fn two_pleat(c: usize) -> CutComplex {
    assert!(c >= 1);
    let n = 2 * c;
    let mut b = Builder::new();
    let b1: Vec<PieceId> = (0..n)
        .map(|i| b.piece(if i % 2 == 0 { 1 } else { 2 }, format!("outerB{i}"), &[]))
        .collect();
    let wp: Vec<PieceId> = (0..n)
        .map(|i| b.piece(if i % 2 == 0 { 0 } else { 1 }, format!("wall{i}"), &[]))
        .collect();
    let b2: Vec<PieceId> = (0..n)
        .map(|i| b.piece(if i % 2 == 0 { 1 } else { 2 }, format!("innerB{i}"), &[]))
        .collect();
    let q1: Vec<PieceId> = (0..n)
        .map(|i| b.piece(if i % 2 == 0 { 0 } else { 1 }, format!("outerQ{i}"), &["rim"]))
        .collect();
    let q2: Vec<PieceId> = (0..n)
        .map(|i| b.piece(if i % 2 == 0 { 0 } else { 1 }, format!("innerQ{i}"), &["rim"]))
        .collect();
    let kp: Vec<PieceId> = (0..n)
        .map(|i| b.piece(if i % 2 == 0 { 1 } else { 0 }, format!("core{i}"), &["core"]))
        .collect();
    let mk_cells = |b: &mut Builder, ring: &[PieceId], grid: u64, tag: &str| -> Vec<[usize; 2]> {
        (0..n)
            .map(|i| {
                [
                    b.cell(ring[i], tag, ring_quad(grid, 2, i, n)),
                    b.cell(ring[i], tag, ring_quad(grid, 0, i, n)),
                ]
            })
            .collect()
    };
    let c1 = mk_cells(&mut b, &b1, 0, "pleat:outer");
    let c2 = mk_cells(&mut b, &b2, 1, "pleat:inner");
    for i in 0..n {
        b.cell(q1[i], "pleat:fold", ring_quad(0, 1, i, n));
        b.cell(q2[i], "pleat:fold", ring_quad(1, 1, i, n));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        b.interfaces.push(Interface {
            pieces: [b1[i], b1[j]],
            spans: [Some(c1[i]), Some(c1[j])],
            label: format!("p1:ring{i}"),
        });
        b.interfaces.push(Interface {
            pieces: [b1[i], q1[i]],
            spans: [Some(c1[i]), None],
            label: format!("p1:rim{i}"),
        });
        b.interfaces.push(Interface {
            pieces: [b1[i], wp[i]],
            spans: [Some(c1[i]), None],
            label: format!("p1:wall{i}"),
        });
        b.interfaces.push(Interface {
            pieces: [b2[i], b2[j]],
            spans: [Some(c2[i]), Some(c2[j])],
            label: format!("p2:ring{i}"),
        });
        b.interfaces.push(Interface {
            pieces: [b2[i], q2[i]],
            spans: [Some(c2[i]), None],
            label: format!("p2:rim{i}"),
        });
        b.interfaces.push(Interface {
            pieces: [b2[i], wp[i]],
            spans: [Some(c2[i]), None],
            label: format!("p2:wall{i}"),
        });
        for (name, ring) in [("w", &wp), ("q1", &q1), ("q2", &q2), ("k", &kp)] {
            b.interfaces.push(Interface {
                pieces: [ring[i], ring[j]],
                spans: [None, None],
                label: format!("{name}:ring{i}"),
            });
        }
        b.interfaces.push(Interface {
            pieces: [wp[i], kp[i]],
            spans: [None, None],
            label: format!("w:core{i}"),
        });
    }
    b.finish(format!("synthetic double pleat ({n} around)"))
}

/// A chain `U1 - R1 - E - R2 - U2` whose middle three pieces form one disc
/// bundle; replacing it collapses the chain to `U1 - cap - U2`.
pub fn finger_chain() -> CutComplex {
    let mut b = Builder::new();
    let u1 = b.piece(1, "fingerU1".into(), &["wall"]);
    let r1 = b.piece(0, "fingerR1".into(), &[]);
    let e = b.piece(1, "fingerE".into(), &[]);
    let r2 = b.piece(0, "fingerR2".into(), &[]);
    let u2 = b.piece(1, "fingerU2".into(), &["wall"]);
    let cells: Vec<[usize; 2]> = [(r1, "finger:room"), (e, "finger:sheet"), (r2, "finger:room")]
        .iter()
        .enumerate()
        .map(|(j, &(p, tag))| [b.cell(p, tag, strip_quad(0, j)), b.cell(p, tag, strip_quad(1, j))])
        .collect();
    let chain = [
        (u1, r1, None, Some(cells[0])),
        (r1, e, Some(cells[0]), Some(cells[1])),
        (e, r2, Some(cells[1]), Some(cells[2])),
        (r2, u2, Some(cells[2]), None),
    ];
    for (i, &(p, q, sp, sq)) in chain.iter().enumerate() {
        b.interfaces.push(Interface {
            pieces: [p, q],
            spans: [sp, sq],
            label: format!("finger:{i}"),
        });
    }
    b.finish("synthetic finger chain".into())
}

/// Two pieces glued twice, the second time with a flipped span: the bundle
/// fibers over a Moebius band (one horizontal boundary annulus double
/// covering the base), so disc replacement must refuse it.
pub fn moebius_ring() -> CutComplex {
    let mut b = Builder::new();
    let a = b.piece(0, "moA".into(), &[]);
    let bb = b.piece(1, "moB".into(), &[]);
    let u = b.piece(1, "moU".into(), &["wall"]);
    let a0 = b.cell(a, "mo:strip", ring_quad(0, 0, 0, 4));
    let a1 = b.cell(a, "mo:strip", ring_quad(0, 0, 2, 4));
    let b0 = b.cell(bb, "mo:strip", ring_quad(0, 0, 1, 4));
    let b1 = b.cell(bb, "mo:strip", ring_quad(0, 0, 3, 4));
    b.interfaces.push(Interface {
        pieces: [a, bb],
        spans: [Some([a0, a1]), Some([b0, b1])],
        label: "mo:straight".into(),
    });
    b.interfaces.push(Interface {
        pieces: [a, bb],
        spans: [Some([a0, a1]), Some([b1, b0])],
        label: "mo:twisted".into(),
    });
    b.interfaces.push(Interface {
        pieces: [a, u],
        spans: [Some([a0, a1]), None],
        label: "mo:wall".into(),
    });
    b.finish("synthetic twisted band".into())
}
