//! Assembly of the handle structure from a diagram.

use std::collections::BTreeMap;

use super::*;
use crate::diagram::Diagram;

/// Strip specification used while circuits are being laid out: 1-handle,
/// cross-section side, and direction of travel.
type StripSpec = (OneId, usize, bool);

/// Side ids on wall cross-sections.
pub const WALL_U_ROOM: usize = 1;
pub const WALL_U_THROUGH: usize = 3;
pub const WALL_U_POCKET: usize = 5;
pub const WALL_O_ROOM: usize = 5;
pub const WALL_O_THROUGH: usize = 3;
pub const WALL_O_POCKET: usize = 1;

/// Side ids on follower cross-sections.
pub const FOLLOWER_FACE: usize = 0;
pub const FOLLOWER_L_ABOVE: usize = 2;
pub const FOLLOWER_L_BELOW: usize = 4;
pub const FOLLOWER_R_ABOVE: usize = 4;
pub const FOLLOWER_R_BELOW: usize = 2;

pub fn follower_above_side(side: ArcSide) -> usize {
    match side {
        ArcSide::Left => FOLLOWER_L_ABOVE,
        ArcSide::Right => FOLLOWER_R_ABOVE,
    }
}

pub fn follower_below_side(side: ArcSide) -> usize {
    match side {
        ArcSide::Left => FOLLOWER_L_BELOW,
        ArcSide::Right => FOLLOWER_R_BELOW,
    }
}

fn wall_sides(dir: usize) -> Vec<Side> {
    use FreeLabel::*;
    use Side::*;
    if dir % 2 == 0 {
        // Over the under-strand: the free top side faces the upper 3-handle.
        vec![
            Free(Bdry),
            Strip(None),
            Free(Bdry),
            Strip(None),
            Free(Top),
            Strip(None),
        ]
    } else {
        vec![
            Free(Bdry),
            Strip(None),
            Free(Bottom),
            Strip(None),
            Free(Bdry),
            Strip(None),
        ]
    }
}

fn follower_sides(side: ArcSide) -> Vec<Side> {
    use FreeLabel::*;
    use Side::*;
    match side {
        ArcSide::Left => vec![
            Strip(None),
            Free(Top),
            Strip(None),
            Free(Bdry),
            Strip(None),
            Free(Bottom),
        ],
        ArcSide::Right => vec![
            Strip(None),
            Free(Bottom),
            Strip(None),
            Free(Bdry),
            Strip(None),
            Free(Top),
        ],
    }
}

/// A maximal run of arcs along which the strand stays on one level.
#[derive(Debug, Clone)]
pub struct Run {
    /// Crossing whose passage starts the run.
    pub start: usize,
    /// Arcs in strand order.
    pub arcs: Vec<usize>,
    /// Passages crossed mid-run without changing level: (crossing, incoming
    /// dart position).
    pub passes: Vec<(usize, usize)>,
    /// Crossing whose passage ends the run.
    pub end: (usize, usize),
}

/// Over-runs: from each under-passage exit to the next under-passage entry.
pub fn over_runs(d: &Diagram) -> Vec<Run> {
    runs(d, true)
}

/// Under-runs: from each over-passage exit to the next over-passage entry.
pub fn under_runs(d: &Diagram) -> Vec<Run> {
    runs(d, false)
}

fn runs(d: &Diagram, over: bool) -> Vec<Run> {
    let mut out = Vec::new();
    for start in 0..d.len() {
        let first = if over {
            d.crossings()[start].under_out()
        } else {
            d.crossings()[start].over_out()
        };
        let mut arcs = Vec::new();
        let mut passes = Vec::new();
        let mut arc = first;
        let end = loop {
            arcs.push(arc);
            let t = d.arc_target(arc);
            let c = &d.crossings()[t.crossing];
            let stops = if over { t.pos == 0 } else { t.pos == c.over_in_pos() };
            if stops {
                break (t.crossing, t.pos);
            }
            passes.push((t.crossing, t.pos));
            arc = if over { c.over_out() } else { c.under_out() };
        };
        out.push(Run {
            start,
            arcs,
            passes,
            end,
        });
    }
    out
}

struct Assembler {
    diagram: Diagram,
    zeros: Vec<ZeroKind>,
    ones: Vec<OneHandle>,
    /// Kind plus strip layout of each 2-handle; hops are interpolated later.
    layouts: Vec<(TwoKind, Vec<StripSpec>)>,
    wall_ids: BTreeMap<(usize, usize), OneId>,
    follower_ids: BTreeMap<(usize, ArcSide), OneId>,
}

impl Assembler {
    fn wall(&self, crossing: usize, dir: usize) -> OneId {
        self.wall_ids[&(crossing, dir % 4)]
    }

    fn follower(&self, arc: usize, side: ArcSide) -> OneId {
        self.follower_ids[&(arc, side)]
    }

    fn new(diagram: &Diagram) -> Self {
        let n = diagram.len();
        let mut zeros = Vec::new();
        for crossing in 0..n {
            for corner in 0..4 {
                zeros.push(ZeroKind::Corner { crossing, corner });
            }
        }

        let mut ones = Vec::new();
        let mut wall_ids = BTreeMap::new();
        for crossing in 0..n {
            for dir in 0..4 {
                wall_ids.insert((crossing, dir), ones.len());
                ones.push(OneHandle {
                    kind: OneKind::Wall { crossing, dir },
                    ends: [
                        4 * crossing + (dir + 3) % 4,
                        4 * crossing + dir,
                    ],
                    sides: wall_sides(dir),
                });
            }
        }

        let mut follower_ids = BTreeMap::new();
        for arc in diagram.arc_labels() {
            let s = diagram.arc_source(arc);
            let t = diagram.arc_target(arc);
            for side in [ArcSide::Left, ArcSide::Right] {
                let ends = match side {
                    ArcSide::Left => [
                        4 * s.crossing + s.pos,
                        4 * t.crossing + (t.pos + 3) % 4,
                    ],
                    ArcSide::Right => [
                        4 * s.crossing + (s.pos + 3) % 4,
                        4 * t.crossing + t.pos,
                    ],
                };
                follower_ids.insert((arc, side), ones.len());
                ones.push(OneHandle {
                    kind: OneKind::Follower { arc, side },
                    ends,
                    sides: follower_sides(side),
                });
            }
        }

        Assembler {
            diagram: diagram.clone(),
            zeros,
            ones,
            layouts: Vec::new(),
            wall_ids,
            follower_ids,
        }
    }

    fn lay_out_rooms(&mut self) {
        for x in 0..self.diagram.len() {
            let mut strips = Vec::new();
            for dir in 0..4 {
                let side = if dir % 2 == 0 { WALL_U_ROOM } else { WALL_O_ROOM };
                strips.push((self.wall(x, dir), side, true));
            }
            self.layouts.push((TwoKind::Room { crossing: x }, strips));
        }
    }

    fn lay_out_faces(&mut self) {
        let walks = crate::diagram::face_walks(&self.diagram);
        for (f, walk) in walks.iter().enumerate() {
            let mut strips = Vec::new();
            for dart in walk {
                let arc = self.diagram.arc_at(*dart);
                let with_arc = self.diagram.arc_source(arc) == *dart;
                let side = if with_arc { ArcSide::Right } else { ArcSide::Left };
                strips.push((self.follower(arc, side), FOLLOWER_FACE, with_arc));
            }
            self.layouts.push((TwoKind::Face { face: f }, strips));
        }
    }

    /// Ribbon circuit: out along the left followers, a turn around the far
    /// wall, back along the right followers, a turn around the near wall.
    /// Mid-run passages are crossed over a wall of the passed crossing.
    fn ribbon(&self, run: &Run, above: bool) -> Vec<StripSpec> {
        let k = run.arcs.len();
        let mut strips = Vec::new();
        for j in 0..k {
            strips.push((
                self.follower(run.arcs[j], ArcSide::Left),
                if above { FOLLOWER_L_ABOVE } else { FOLLOWER_L_BELOW },
                true,
            ));
            if j + 1 < k {
                let (m, pin) = run.passes[j];
                let (w, side) = if above {
                    (self.wall(m, (pin + 3) % 4), WALL_U_THROUGH)
                } else {
                    (self.wall(m, 3), WALL_O_THROUGH)
                };
                strips.push((w, side, false));
            }
        }
        // Far turn.
        let (ec, ep) = run.end;
        let (w, side) = if above {
            (self.wall(ec, 0), WALL_U_POCKET)
        } else {
            (self.wall(ec, ep), WALL_O_POCKET)
        };
        strips.push((w, side, true));
        // Return leg.
        for j in (0..k).rev() {
            strips.push((
                self.follower(run.arcs[j], ArcSide::Right),
                if above { FOLLOWER_R_ABOVE } else { FOLLOWER_R_BELOW },
                false,
            ));
            if j > 0 {
                let (m, pin) = run.passes[j - 1];
                let (w, side) = if above {
                    (self.wall(m, (pin + 1) % 4), WALL_U_THROUGH)
                } else {
                    (self.wall(m, 1), WALL_O_THROUGH)
                };
                strips.push((w, side, false));
            }
        }
        // Near turn.
        let sp = if above {
            2
        } else {
            self.diagram.crossings()[run.start].over_out_pos()
        };
        let (w, side) = if above {
            (self.wall(run.start, sp), WALL_U_POCKET)
        } else {
            (self.wall(run.start, sp), WALL_O_POCKET)
        };
        strips.push((w, side, true));
        strips
    }

    fn lay_out_ribbons(&mut self) {
        for (s, run) in over_runs(&self.diagram).iter().enumerate() {
            let strips = self.ribbon(run, true);
            self.layouts.push((TwoKind::Above { segment: s }, strips));
        }
        for (s, run) in under_runs(&self.diagram).iter().enumerate() {
            let strips = self.ribbon(run, false);
            self.layouts.push((TwoKind::Below { segment: s }, strips));
        }
    }

    /// Plant the two extra blocks beside the lowest arc purely by editing the
    /// laid-out strips: split that arc's followers, cut its two ribbons in
    /// half over the new crossbars, and lengthen the two face circuits.
    fn make_exceptional(&mut self) {
        use FreeLabel::*;
        use Side::*;

        let e0 = self.diagram.min_label();
        let t = self.diagram.arc_target(e0);
        let e1: ZeroId = self.zeros.len();
        self.zeros.push(ZeroKind::Exceptional { index: 0 });
        let e2: ZeroId = self.zeros.len();
        self.zeros.push(ZeroKind::Exceptional { index: 1 });

        let fl = self.follower(e0, ArcSide::Left);
        let fr = self.follower(e0, ArcSide::Right);

        // Front halves keep their ids; rear halves are new handles.
        let flb = self.ones.len();
        self.ones.push(OneHandle {
            kind: OneKind::FollowerPart {
                arc: e0,
                side: ArcSide::Left,
                part: 1,
            },
            ends: [e1, 4 * t.crossing + (t.pos + 3) % 4],
            sides: follower_sides(ArcSide::Left),
        });
        let frb = self.ones.len();
        self.ones.push(OneHandle {
            kind: OneKind::FollowerPart {
                arc: e0,
                side: ArcSide::Right,
                part: 1,
            },
            ends: [e2, 4 * t.crossing + t.pos],
            sides: follower_sides(ArcSide::Right),
        });
        self.ones[fl].kind = OneKind::FollowerPart {
            arc: e0,
            side: ArcSide::Left,
            part: 0,
        };
        self.ones[fl].ends[1] = e1;
        self.ones[fr].kind = OneKind::FollowerPart {
            arc: e0,
            side: ArcSide::Right,
            part: 0,
        };
        self.ones[fr].ends[1] = e2;

        let over_bar = self.ones.len();
        self.ones.push(OneHandle {
            kind: OneKind::Crossbar { over: true },
            ends: [e1, e2],
            sides: vec![Strip(None), Free(Top), Strip(None), Free(Bdry)],
        });
        let under_bar = self.ones.len();
        self.ones.push(OneHandle {
            kind: OneKind::Crossbar { over: false },
            ends: [e1, e2],
            sides: vec![Strip(None), Free(Bdry), Strip(None), Free(Bottom)],
        });

        // Face circuits gain a second half-follower strip.
        for (kind, strips) in self.layouts.iter_mut() {
            if !matches!(kind, TwoKind::Face { .. }) {
                continue;
            }
            for (one, half) in [(fl, flb), (fr, frb)] {
                if let Some(i) = strips
                    .iter()
                    .position(|s| *s == (one, FOLLOWER_FACE, true))
                {
                    strips.insert(i + 1, (half, FOLLOWER_FACE, true));
                } else if let Some(i) = strips
                    .iter()
                    .position(|s| *s == (one, FOLLOWER_FACE, false))
                {
                    strips.insert(i, (half, FOLLOWER_FACE, false));
                }
            }
        }

        // Each ribbon through the lowest arc is cut in two over a crossbar.
        for (above, bar) in [(true, over_bar), (false, under_bar)] {
            let (l_side, r_side) = if above {
                (FOLLOWER_L_ABOVE, FOLLOWER_R_ABOVE)
            } else {
                (FOLLOWER_L_BELOW, FOLLOWER_R_BELOW)
            };
            let idx = self
                .layouts
                .iter()
                .position(|(k, strips)| {
                    matches!(
                        (above, k),
                        (true, TwoKind::Above { .. }) | (false, TwoKind::Below { .. })
                    ) && strips.contains(&(fl, l_side, true))
                })
                .expect("the lowest arc lies on one run per level");
            let segment = match self.layouts[idx].0 {
                TwoKind::Above { segment } | TwoKind::Below { segment } => segment,
                _ => unreachable!(),
            };
            let strips = &self.layouts[idx].1;
            let il = strips
                .iter()
                .position(|s| *s == (fl, l_side, true))
                .expect("left strip present");
            let ir = strips
                .iter()
                .position(|s| *s == (fr, r_side, false))
                .expect("right strip present");
            assert!(il < ir, "outbound leg precedes the return leg");

            let (half_l, half_r) = (flb, frb);
            let mut rear = vec![(half_l, l_side, true)];
            rear.extend_from_slice(&strips[il + 1..ir]);
            rear.push((half_r, r_side, false));
            rear.push((bar, 0, false));

            // Seen from the arrival end the bar's side 2 faces the front cut.
            let mut front = vec![(fl, l_side, true), (bar, 2, true), (fr, r_side, false)];
            front.extend_from_slice(&strips[ir + 1..]);
            front.extend_from_slice(&strips[..il]);

            let front_kind = if above {
                TwoKind::AbovePart { segment, part: 0 }
            } else {
                TwoKind::BelowPart { segment, part: 0 }
            };
            let rear_kind = if above {
                TwoKind::AbovePart { segment, part: 1 }
            } else {
                TwoKind::BelowPart { segment, part: 1 }
            };
            self.layouts[idx] = (front_kind, front);
            self.layouts.push((rear_kind, rear));
        }
    }

    /// Interpolate hops between consecutive strips, recording bridges and
    /// claiming strip sides.
    fn materialize(mut self, exceptional: bool) -> HandleStructure {
        let mut twos = Vec::new();
        let mut bridges: Vec<Bridge> = Vec::new();
        let layouts = std::mem::take(&mut self.layouts);

        for (owner, (kind, strips)) in layouts.into_iter().enumerate() {
            assert!(!strips.is_empty(), "2-handle circuit cannot be empty");
            let mut circuit = Vec::new();
            for (i, &(one, side, forward)) in strips.iter().enumerate() {
                let &(next_one, next_side, next_forward) = &strips[(i + 1) % strips.len()];
                circuit.push(Step::Strip { one, side, forward });

                let here = self.ones[one].ends[if forward { 1 } else { 0 }];
                let there = self.ones[next_one].ends[if next_forward { 0 } else { 1 }];
                assert_eq!(
                    here, there,
                    "consecutive strips of {kind:?} must meet on a 0-handle"
                );
                let from = ((one, if forward { 1 } else { 0 }), side);
                let to = ((next_one, if next_forward { 0 } else { 1 }), next_side);
                circuit.push(Step::Hop(bridges.len()));
                bridges.push(Bridge {
                    zero: here,
                    from,
                    to,
                    owner,
                });
            }
            for &(one, side, _) in &strips {
                match &mut self.ones[one].sides[side] {
                    Side::Strip(slot) => {
                        assert!(slot.is_none(), "strip side claimed twice");
                        *slot = Some(owner);
                    }
                    Side::Free(_) => panic!("circuit routed over a free side"),
                }
            }
            twos.push(TwoHandle { kind, circuit });
        }

        for h in &self.ones {
            for s in &h.sides {
                if let Side::Strip(owner) = s {
                    assert!(owner.is_some(), "unused strip side on {:?}", h.kind);
                }
            }
        }

        HandleStructure {
            diagram: self.diagram,
            exceptional,
            zeros: self.zeros,
            ones: self.ones,
            twos,
            bridges,
            threes: vec![ThreeKind::Top, ThreeKind::Bottom],
        }
    }
}

/// Build the handle structure of the knot exterior.
pub fn build(diagram: &Diagram, exceptional: bool) -> HandleStructure {
    let mut a = Assembler::new(diagram);
    a.lay_out_rooms();
    a.lay_out_faces();
    a.lay_out_ribbons();
    if exceptional {
        a.make_exceptional();
    }
    a.materialize(exceptional)
}
