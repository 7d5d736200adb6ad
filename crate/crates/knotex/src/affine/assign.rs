//! Affine solids for every handle of a structure, laid out over an
//! axis-aligned grid drawing of the diagram.
//!
//! Grid unit = 48 world units; the diagram lives in the z = 0 plane.  Each
//! 0-handle becomes a translated corner block, each 1-handle a straight prism
//! whose fibers are parallel translates — product-respecting arcs inside a
//! prism never cross under projection.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::geom::{rat, V3};
use crate::handles::{ArcSide, HandleStructure, OneKind, ZeroKind};

use super::polyhedron::{corner_block, AffinePolyhedron};

/// An axis-aligned drawing: one grid point per crossing, one rectilinear
/// polyline per arc running from its source crossing to its target.
///
/// At a crossing the four strand ends leave in the four axis directions,
/// matching tuple positions: 0 east, 1 north, 2 west, 3 south.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEmbedding {
    pub crossings: Vec<(i64, i64)>,
    pub arcs: BTreeMap<usize, Vec<(i64, i64)>>,
}

/// A straight prism: a convex planar base swept along `shift`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prism {
    pub base: Vec<V3>,
    pub shift: V3,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PrismError {
    #[error("base has fewer than three vertices")]
    BaseTooSmall,
    #[error("base is not planar")]
    BaseNotPlanar,
    #[error("base has a reflex or straight corner")]
    BaseNotConvex,
    #[error("shift is parallel to the base")]
    ShiftInPlane,
}

impl Prism {
    pub fn validate(&self) -> Result<(), PrismError> {
        if self.base.len() < 3 {
            return Err(PrismError::BaseTooSmall);
        }
        let n = (&self.base[1] - &self.base[0]).cross(&(&self.base[2] - &self.base[0]));
        if n == V3::zero() {
            return Err(PrismError::BaseNotConvex);
        }
        let d = n.dot(&self.base[0]);
        if self.base.iter().any(|v| v.dot(&n) != d) {
            return Err(PrismError::BaseNotPlanar);
        }
        let m = self.base.len();
        for k in 0..m {
            let a = &self.base[k];
            let b = &self.base[(k + 1) % m];
            let c = &self.base[(k + 2) % m];
            if (b - a).cross(&(c - b)).dot(&n) <= rat(0) {
                return Err(PrismError::BaseNotConvex);
            }
        }
        if n.dot(&self.shift) == rat(0) {
            return Err(PrismError::ShiftInPlane);
        }
        Ok(())
    }

    /// The fiber through a base point: parallel translates, so distinct
    /// fibers never meet.
    pub fn fiber_through(&self, w: &V3) -> (V3, V3) {
        (w.clone(), w + &self.shift)
    }
}

/// Solids for one handle structure, indexed like its handle lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineAssignment {
    pub zeros: Vec<AffinePolyhedron>,
    pub ones: Vec<Prism>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AssignError {
    #[error("embedding has {got} crossing points, diagram has {want}")]
    CrossingCountMismatch { got: usize, want: usize },
    #[error("two crossings share one grid point")]
    DuplicateCrossing,
    #[error("embedding draws arcs {got:?}, diagram has {want:?}")]
    ArcSetMismatch { got: Vec<usize>, want: Vec<usize> },
    #[error("arc {arc} polyline has fewer than two points")]
    ShortArc { arc: usize },
    #[error("arc {arc} step {step} is not a straight axis move")]
    NotAxisAligned { arc: usize, step: usize },
    #[error("arc {arc} does not start and end at its crossings")]
    EndpointMismatch { arc: usize },
    #[error("arc {arc} leaves or enters a crossing in the wrong direction")]
    DirectionMismatch { arc: usize },
}

const GRID: i64 = 48;
const LANE: i64 = 12;
const RISE: i64 = 8;

fn unit(dir: usize) -> (i64, i64) {
    [(1, 0), (0, 1), (-1, 0), (0, -1)][dir % 4]
}

/// Quarter turn left: the side a left-hand follower sits on.
fn left_of(step: (i64, i64)) -> (i64, i64) {
    (-step.1, step.0)
}

fn norm_step(from: (i64, i64), to: (i64, i64)) -> Option<(i64, i64)> {
    let dx = (to.0 - from.0).signum();
    let dy = (to.1 - from.1).signum();
    if (dx == 0) == (dy == 0) {
        return None;
    }
    Some((dx, dy))
}

fn world(grid: (i64, i64), z: i64) -> V3 {
    V3::ints(grid.0 * GRID, grid.1 * GRID, z)
}

/// Prism with a convex cross-section swept from `center` along `axis`.
/// The section is spanned by `u` (in-plane) and the vertical.
fn swept(center: &V3, axis: (i64, i64), u: (i64, i64), section: &[(i64, i64)]) -> Prism {
    let base = section
        .iter()
        .map(|&(a, b)| {
            &(center + &V3::ints(4 * a * u.0, 4 * a * u.1, 4 * b))
                - &V3::ints(LANE * axis.0, LANE * axis.1, 0)
        })
        .collect();
    Prism {
        base,
        shift: V3::ints(2 * LANE * axis.0, 2 * LANE * axis.1, 0),
    }
}

const WALL_SECTION: [(i64, i64); 6] = [(3, 0), (1, 2), (-1, 2), (-3, 0), (-1, -2), (1, -2)];
const FOLLOWER_SECTION: [(i64, i64); 5] = [(2, 0), (1, 2), (-2, 1), (-2, -1), (1, -2)];

fn validate_embedding(h: &HandleStructure, emb: &GridEmbedding) -> Result<(), AssignError> {
    let d = &h.diagram;
    if emb.crossings.len() != d.len() {
        return Err(AssignError::CrossingCountMismatch {
            got: emb.crossings.len(),
            want: d.len(),
        });
    }
    if emb.crossings.iter().collect::<BTreeSet<_>>().len() != emb.crossings.len() {
        return Err(AssignError::DuplicateCrossing);
    }
    let want = d.arc_labels();
    let got: Vec<usize> = emb.arcs.keys().copied().collect();
    if got != want {
        return Err(AssignError::ArcSetMismatch { got, want });
    }
    for (&arc, line) in &emb.arcs {
        if line.len() < 2 {
            return Err(AssignError::ShortArc { arc });
        }
        for (step, w) in line.windows(2).enumerate() {
            if norm_step(w[0], w[1]).is_none() {
                return Err(AssignError::NotAxisAligned { arc, step });
            }
        }
        let src = d.arc_source(arc);
        let tgt = d.arc_target(arc);
        if line[0] != emb.crossings[src.crossing] || line[line.len() - 1] != emb.crossings[tgt.crossing]
        {
            return Err(AssignError::EndpointMismatch { arc });
        }
        let first = norm_step(line[0], line[1]).unwrap();
        let last = norm_step(line[line.len() - 2], line[line.len() - 1]).unwrap();
        if first != unit(src.pos) || last != (-unit(tgt.pos).0, -unit(tgt.pos).1) {
            return Err(AssignError::DirectionMismatch { arc });
        }
    }
    Ok(())
}

fn arc_end_step(emb: &GridEmbedding, arc: usize, at_source: bool) -> ((i64, i64), (i64, i64)) {
    let line = &emb.arcs[&arc];
    if at_source {
        (line[0], norm_step(line[0], line[1]).unwrap())
    } else {
        let n = line.len();
        (line[n - 1], norm_step(line[n - 2], line[n - 1]).unwrap())
    }
}

/// Midpoint of the lowest arc's first step in world coordinates, and the
/// step direction.  The two extra blocks sit one lane left and right of it.
fn lowest_arc_mid(h: &HandleStructure, emb: &GridEmbedding) -> (V3, (i64, i64)) {
    let arc = h.diagram.min_label();
    let line = &emb.arcs[&arc];
    let step = norm_step(line[0], line[1]).unwrap();
    let mid = V3::ints(
        (line[0].0 + line[1].0) * GRID / 2,
        (line[0].1 + line[1].1) * GRID / 2,
        0,
    );
    (mid, step)
}

/// Build the affine solid for every handle: corner blocks for 0-handles,
/// straight prisms for 1-handles.
pub fn assign_affine(
    h: &HandleStructure,
    emb: &GridEmbedding,
) -> Result<AffineAssignment, AssignError> {
    validate_embedding(h, emb)?;
    let block = corner_block();

    let mut zeros = Vec::with_capacity(h.zeros.len());
    for kind in &h.zeros {
        let centre = match *kind {
            ZeroKind::Corner { crossing, corner } => {
                let u = unit(corner);
                let v = unit(corner + 1);
                &world(emb.crossings[crossing], 0)
                    + &V3::ints(LANE * (u.0 + v.0), LANE * (u.1 + v.1), 0)
            }
            ZeroKind::Exceptional { index } => {
                let (mid, step) = lowest_arc_mid(h, emb);
                let left = left_of(step);
                let sgn = if index == 0 { 1 } else { -1 };
                &mid + &V3::ints(sgn * LANE * left.0, sgn * LANE * left.1, 0)
            }
        };
        zeros.push(block.solid.translate(&centre));
    }

    let mut ones = Vec::with_capacity(h.ones.len());
    for one in &h.ones {
        let prism = match one.kind {
            OneKind::Wall { crossing, dir } => {
                let u = unit(dir);
                let z = if dir % 2 == 0 { RISE } else { -RISE };
                let centre =
                    &world(emb.crossings[crossing], z) + &V3::ints(2 * LANE * u.0, 2 * LANE * u.1, 0);
                swept(&centre, left_of(u), u, &WALL_SECTION)
            }
            OneKind::Follower { arc, side } => follower_prism(emb, arc, side, 0),
            OneKind::FollowerPart { arc, side, part } => follower_prism(emb, arc, side, part),
            OneKind::Crossbar { over } => {
                let (mid, step) = lowest_arc_mid(h, emb);
                let left = left_of(step);
                let z = if over { RISE } else { -RISE };
                let centre = &mid + &V3::ints(0, 0, z);
                swept(&centre, (-left.0, -left.1), step, &WALL_SECTION)
            }
        };
        ones.push(prism);
    }
    Ok(AffineAssignment { zeros, ones })
}

/// Prism beside one end segment of an arc: the source end for a whole
/// follower or part 0, the target end for part 1.  `Left` is the strand's
/// left in its direction of travel.
fn follower_prism(emb: &GridEmbedding, arc: usize, side: ArcSide, part: usize) -> Prism {
    let at_source = part == 0;
    let (corner, travel) = arc_end_step(emb, arc, at_source);
    let away = if at_source {
        travel
    } else {
        (-travel.0, -travel.1)
    };
    let left = left_of(travel);
    let sgn = match side {
        ArcSide::Left => 1,
        ArcSide::Right => -1,
    };
    let centre = &world(corner, 0)
        + &V3::ints(
            sgn * LANE * left.0 + 2 * LANE * away.0,
            sgn * LANE * left.1 + 2 * LANE * away.1,
            0,
        );
    swept(&centre, away, left, &FOLLOWER_SECTION)
}

/// The standard 3-crossing diagram drawn on the grid: crossings at (0,0),
/// (8,4) and (4,8), every strand end leaving in its tuple direction.
pub fn trefoil_grid() -> GridEmbedding {
    let arcs: BTreeMap<usize, Vec<(i64, i64)>> = [
        (1, vec![(8, 4), (8, 0), (0, 0)]),
        (2, vec![(0, 0), (-3, 0), (-3, 11), (4, 11), (4, 8)]),
        (3, vec![(4, 8), (4, 6), (10, 6), (10, 4), (8, 4)]),
        (4, vec![(8, 4), (0, 4), (0, 0)]),
        (5, vec![(0, 0), (0, -2), (13, -2), (13, 8), (4, 8)]),
        (6, vec![(4, 8), (2, 8), (2, 5), (8, 5), (8, 4)]),
    ]
    .into_iter()
    .collect();
    GridEmbedding {
        crossings: vec![(0, 0), (8, 4), (4, 8)],
        arcs,
    }
}
