use crate::handles::{
    Bridge, FreeLabel, HandleStructure, OneKind, Side, Step, ThreeKind, TwoHandle, TwoKind,
};

#[derive(Debug, thiserror::Error)]
pub enum AttachError {
    #[error("structure has no broken strand to frame")]
    NotExceptional,
    #[error("a solid torus is already attached")]
    AlreadyAttached,
}

/// Fills the knot boundary back in with a solid torus.
///
/// The torus is glued as one 2-handle whose disc wraps the broken strand
/// between the two crossbars, plus one 3-handle for the leftover core.  Each
/// crossbar grows a new strip flanked by boundary walls: the over bar simply
/// appends it, the under bar splits its boundary wall, shifting its old
/// upper strip and floor wall outward by two side slots.
pub fn attach_solid_torus(h: &HandleStructure) -> Result<HandleStructure, AttachError> {
    if h.twos.iter().any(|t| t.kind == TwoKind::Meridian) {
        return Err(AttachError::AlreadyAttached);
    }
    let ob = h
        .ones
        .iter()
        .position(|o| o.kind == OneKind::Crossbar { over: true });
    let ub = h
        .ones
        .iter()
        .position(|o| o.kind == OneKind::Crossbar { over: false });
    let (ob, ub) = match (ob, ub) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(AttachError::NotExceptional),
    };

    let mut h = h.clone();
    assert_eq!(h.ones[ob].ends, h.ones[ub].ends, "crossbars span the same break");
    let [e1, e2] = h.ones[ob].ends;
    let two = h.twos.len();

    h.ones[ob].sides.push(Side::Strip(Some(two)));
    h.ones[ob].sides.push(Side::Free(FreeLabel::Bdry));

    let old = h.ones[ub].sides.clone();
    assert_eq!(old.len(), 4, "under crossbar starts as a box");
    h.ones[ub].sides = vec![
        old[0],
        old[1],
        Side::Strip(Some(two)),
        Side::Free(FreeLabel::Bdry),
        old[2],
        old[3],
    ];
    for t in &mut h.twos {
        for step in &mut t.circuit {
            if let Step::Strip { one, side, .. } = step {
                if *one == ub && *side == 2 {
                    *side = 4;
                }
            }
        }
    }
    for br in &mut h.bridges {
        for end in [&mut br.from, &mut br.to] {
            if end.0 .0 == ub && end.1 == 2 {
                end.1 = 4;
            }
        }
    }

    let b1 = h.bridges.len();
    let b2 = b1 + 1;
    h.bridges.push(Bridge {
        zero: e1,
        from: ((ub, 0), 2),
        to: ((ob, 0), 4),
        owner: two,
    });
    h.bridges.push(Bridge {
        zero: e2,
        from: ((ob, 1), 4),
        to: ((ub, 1), 2),
        owner: two,
    });
    h.twos.push(TwoHandle {
        kind: TwoKind::Meridian,
        circuit: vec![
            Step::Strip {
                one: ob,
                side: 4,
                forward: true,
            },
            Step::Hop(b2),
            Step::Strip {
                one: ub,
                side: 2,
                forward: false,
            },
            Step::Hop(b1),
        ],
    });
    h.threes.push(ThreeKind::Core);
    Ok(h)
}
