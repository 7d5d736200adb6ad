//! Handle structures on knot exteriors built from planar diagrams.
//!
//! For a diagram with n crossings the plain structure has:
//!
//! * 0-handles: four corner blocks per crossing, one in each quadrant.
//! * 1-handles: per crossing, four walls bridging the strand ends between
//!   adjacent blocks (over the under-strand, under the over-strand), and two
//!   followers running alongside every arc, one per side.
//! * 2-handles: a room at each crossing centre, a sheet over every
//!   complementary face, and two ribbons along the strand — one above it,
//!   one below — cut at the passages where the strand changes level.
//! * 3-handles: one above the whole picture and one below.
//!
//! Every 1-handle meets the 2-handles in strips along its length; its
//! cross-section is a polygon whose sides alternate between strips and free
//! sides.  Free sides face a 3-handle or the knot boundary.  On each
//! 0-handle the 1-handle ends form islands, joined by bridges where 2-handles
//! cross between them; the leftover patches face a 3-handle or the knot
//! boundary.
//!
//! The exceptional variant plants two extra blocks beside the lowest arc,
//! splits its followers in half, and joins the blocks by two crossbars, one
//! over the strand and one under it.

pub mod boundary;
pub mod build;
pub mod pattern;
pub mod verify;

use crate::diagram::Diagram;
use serde::{Deserialize, Serialize};

pub type ZeroId = usize;
pub type OneId = usize;
pub type TwoId = usize;
pub type BridgeId = usize;

/// A 1-handle end: the handle and which of its two ends (0 or 1).
pub type IslandRef = (OneId, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArcSide {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ZeroKind {
    /// Block in the quadrant between directions `corner` and `corner + 1`.
    Corner { crossing: usize, corner: usize },
    /// Extra block beside the lowest arc: 0 on its left, 1 on its right.
    Exceptional { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OneKind {
    /// Beam across the strand end in direction `dir`; passes over the strand
    /// when `dir` is even (an under-strand end), under it otherwise.
    Wall { crossing: usize, dir: usize },
    Follower { arc: usize, side: ArcSide },
    /// Half of a split follower: part 0 leaves the arc's source, part 1
    /// reaches its target.
    FollowerPart { arc: usize, side: ArcSide, part: usize },
    /// Joins the two extra blocks across the lowest arc.
    Crossbar { over: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FreeLabel {
    Top,
    Bottom,
    Bdry,
}

/// One side of a 1-handle cross-section polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Carries a 2-handle strip; the owner is filled in during assembly.
    Strip(Option<TwoId>),
    Free(FreeLabel),
}

impl Side {
    pub fn is_strip(&self) -> bool {
        matches!(self, Side::Strip(_))
    }

    pub fn free_label(&self) -> Option<FreeLabel> {
        match self {
            Side::Free(l) => Some(*l),
            Side::Strip(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneHandle {
    pub kind: OneKind,
    pub ends: [ZeroId; 2],
    /// Cross-section sides in rotational order as seen from end 0; at end 1
    /// the rotational order is reversed.
    pub sides: Vec<Side>,
}

impl OneHandle {
    pub fn side_count(&self) -> usize {
        self.sides.len()
    }

    /// Side ids in rotational order as seen at the given end.
    pub fn order_at(&self, end: usize) -> Vec<usize> {
        let m = self.sides.len();
        match end {
            0 => (0..m).collect(),
            _ => std::iter::once(0).chain((1..m).rev()).collect(),
        }
    }

    /// The two sides adjacent to `side` on the cross-section polygon.
    pub fn neighbors(&self, side: usize) -> [usize; 2] {
        let m = self.sides.len();
        [(side + m - 1) % m, (side + 1) % m]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TwoKind {
    Room { crossing: usize },
    Face { face: usize },
    /// Ribbon above the strand along the over-run starting at the
    /// under-passage of `segment`.
    Above { segment: usize },
    /// Ribbon below the strand along the under-run starting at the
    /// over-passage of `segment`.
    Below { segment: usize },
    /// Half of a ribbon cut by a crossbar: part 0 holds the run's start.
    AbovePart { segment: usize, part: usize },
    BelowPart { segment: usize, part: usize },
    /// Attaching disc of a solid torus glued to the knot boundary.
    Meridian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    /// Run along a 1-handle on the given cross-section side; `forward` means
    /// from end 0 to end 1.
    Strip { one: OneId, side: usize, forward: bool },
    /// Cross a 0-handle over a bridge between two islands.
    Hop(BridgeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoHandle {
    pub kind: TwoKind,
    /// Alternating strips and hops, cyclically closed.
    pub circuit: Vec<Step>,
}

impl TwoHandle {
    pub fn strips(&self) -> impl Iterator<Item = (OneId, usize, bool)> + '_ {
        self.circuit.iter().filter_map(|s| match s {
            Step::Strip { one, side, forward } => Some((*one, *side, *forward)),
            Step::Hop(_) => None,
        })
    }

    pub fn hops(&self) -> impl Iterator<Item = BridgeId> + '_ {
        self.circuit.iter().filter_map(|s| match s {
            Step::Hop(b) => Some(*b),
            Step::Strip { .. } => None,
        })
    }
}

/// Where a 2-handle crosses a 0-handle between two island sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub zero: ZeroId,
    /// Island and side id on which the incoming strip ends.
    pub from: (IslandRef, usize),
    /// Island and side id on which the outgoing strip starts.
    pub to: (IslandRef, usize),
    pub owner: TwoId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ThreeKind {
    Top,
    Bottom,
    /// Interior of a solid torus glued to the knot boundary.
    Core,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleStructure {
    pub diagram: Diagram,
    pub exceptional: bool,
    pub zeros: Vec<ZeroKind>,
    pub ones: Vec<OneHandle>,
    pub twos: Vec<TwoHandle>,
    pub bridges: Vec<Bridge>,
    pub threes: Vec<ThreeKind>,
}

impl HandleStructure {
    pub fn counts(&self) -> [usize; 4] {
        [
            self.zeros.len(),
            self.ones.len(),
            self.twos.len(),
            self.threes.len(),
        ]
    }

    pub fn euler(&self) -> i64 {
        let [a, b, c, d] = self.counts();
        a as i64 - b as i64 + c as i64 - d as i64
    }

    /// All 1-handle ends lying on the given 0-handle, in (handle, end) order.
    pub fn islands_at(&self, q: ZeroId) -> Vec<IslandRef> {
        let mut out = Vec::new();
        for (i, h) in self.ones.iter().enumerate() {
            for end in 0..2 {
                if h.ends[end] == q {
                    out.push((i, end));
                }
            }
        }
        out
    }

    pub fn bridges_at(&self, q: ZeroId) -> Vec<BridgeId> {
        (0..self.bridges.len())
            .filter(|&b| self.bridges[b].zero == q)
            .collect()
    }

    pub fn find_wall(&self, crossing: usize, dir: usize) -> OneId {
        self.ones
            .iter()
            .position(|h| h.kind == OneKind::Wall { crossing, dir })
            .expect("wall exists")
    }

    pub fn find_follower(&self, arc: usize, side: ArcSide) -> Option<OneId> {
        self.ones
            .iter()
            .position(|h| h.kind == OneKind::Follower { arc, side })
    }

    pub fn find_two(&self, kind: TwoKind) -> Option<TwoId> {
        self.twos.iter().position(|t| t.kind == kind)
    }

    /// The 0-handle a strip leaves from.
    pub fn strip_departure(&self, one: OneId, forward: bool) -> ZeroId {
        self.ones[one].ends[if forward { 0 } else { 1 }]
    }

    /// The 0-handle a strip arrives at.
    pub fn strip_arrival(&self, one: OneId, forward: bool) -> ZeroId {
        self.ones[one].ends[if forward { 1 } else { 0 }]
    }

    /// The free labels on the two sides flanking a strip side: the pair of
    /// surfaces the 2-handle's end discs face along this strip.
    pub fn strip_flank_labels(&self, one: OneId, side: usize) -> [FreeLabel; 2] {
        let h = &self.ones[one];
        let [p, n] = h.neighbors(side);
        let lab = |s: usize| {
            h.sides[s]
                .free_label()
                .expect("strip sides alternate with free sides")
        };
        [lab(p), lab(n)]
    }
}
