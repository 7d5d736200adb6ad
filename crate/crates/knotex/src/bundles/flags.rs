use crate::normal::cut::CutComplex;

/// Marks the pieces that are products between two parallel surface cells.
///
/// A piece qualifies when it carries exactly two surface cells of the same
/// combinatorial shape, touches no free boundary, and every lateral face it
/// has runs from one of those cells to the other — so the piece is swept out
/// by the pair.  Returned vector is indexed by piece id.
pub fn find_parallelity_handles(c: &CutComplex) -> Vec<bool> {
    let mut flags = vec![false; c.pieces.len()];
    'piece: for (pi, p) in c.pieces.iter().enumerate() {
        if p.s_faces.len() != 2 || !p.outer.is_empty() {
            continue;
        }
        let (a, b) = (p.s_faces[0], p.s_faces[1]);
        if c.s_cells[a].shape != c.s_cells[b].shape {
            continue;
        }
        let want = [a.min(b), a.max(b)];
        for f in &c.interfaces {
            for side in 0..2 {
                if f.pieces[side] != pi {
                    continue;
                }
                match f.spans[side] {
                    Some([x, y]) if [x.min(y), x.max(y)] == want => {}
                    _ => continue 'piece,
                }
            }
        }
        flags[pi] = true;
    }
    flags
}
