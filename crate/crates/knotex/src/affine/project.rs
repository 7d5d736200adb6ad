//! Crossing counts of straight-arc families under vertical projection.
//!
//! Projection forgets height, so two arcs crossing at distinct heights land
//! on intersecting plane segments.  A shear by nilpotent infinitesimals tilts
//! the projection direction just enough that counts are generic: every
//! orientation test carries symbolic eps-terms of the heights, and a test
//! that still vanishes is a genuine degeneracy, reported rather than dropped.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geom::{EpsPoly, V3};

/// Which handle a path segment runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HandleTag {
    Zero(usize),
    One(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSegment {
    pub start: V3,
    pub end: V3,
    pub handle: HandleTag,
    /// Whether the segment runs along the product structure of its handle.
    /// Required on 1-handles, where such segments never cross.
    pub product_respecting: bool,
}

/// A path of straight arcs, consecutive segments sharing an endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StraightArcPath {
    pub segments: Vec<PathSegment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub total: u64,
    /// Crossings per 0-handle, by handle index.
    pub per_zero: BTreeMap<usize, u64>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ProjectError {
    #[error("path {path} breaks between segments {segment} and the next")]
    BrokenPath { path: usize, segment: usize },
    #[error("path {path} segment {segment} has coincident endpoints")]
    DegenerateSegment { path: usize, segment: usize },
    #[error("path {path} segment {segment} runs through a 1-handle without respecting its product")]
    NotProductRespecting { path: usize, segment: usize },
    #[error(
        "projection of segments {first:?} and {second:?} in 0-handle {handle} stays degenerate"
    )]
    UnresolvedDegeneracy {
        handle: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
}

/// Sheared plane coordinates: X = x + eps*z, Y = y + eps^2*z.
fn sheared(v: &V3) -> (EpsPoly, EpsPoly) {
    let x = EpsPoly::constant(v.0[0].clone());
    let y = EpsPoly::constant(v.0[1].clone());
    (
        &x + &EpsPoly::eps(1).scale(&v.0[2]),
        &y + &EpsPoly::eps(2).scale(&v.0[2]),
    )
}

fn orient(a: &(EpsPoly, EpsPoly), b: &(EpsPoly, EpsPoly), c: &(EpsPoly, EpsPoly)) -> i8 {
    let abx = &b.0 - &a.0;
    let aby = &b.1 - &a.1;
    let acx = &c.0 - &a.0;
    let acy = &c.1 - &a.1;
    (&(&abx * &acy) - &(&aby * &acx)).sign()
}

/// Count projected crossings between segments sharing a 0-handle.  Segments
/// sharing an endpoint in space (path corners, common junctions) are skipped;
/// 1-handle segments contribute nothing.
pub fn project_and_count(paths: &[StraightArcPath]) -> Result<CrossingReport, ProjectError> {
    let mut by_zero: BTreeMap<usize, Vec<((usize, usize), &PathSegment)>> = BTreeMap::new();
    for (pi, path) in paths.iter().enumerate() {
        for (si, seg) in path.segments.iter().enumerate() {
            if seg.start == seg.end {
                return Err(ProjectError::DegenerateSegment {
                    path: pi,
                    segment: si,
                });
            }
            if si + 1 < path.segments.len() && seg.end != path.segments[si + 1].start {
                return Err(ProjectError::BrokenPath {
                    path: pi,
                    segment: si,
                });
            }
            match seg.handle {
                HandleTag::One(_) => {
                    if !seg.product_respecting {
                        return Err(ProjectError::NotProductRespecting {
                            path: pi,
                            segment: si,
                        });
                    }
                }
                HandleTag::Zero(z) => {
                    by_zero.entry(z).or_default().push(((pi, si), seg));
                }
            }
        }
    }

    let mut per_zero = BTreeMap::new();
    let mut total = 0u64;
    for (&zero, segs) in &by_zero {
        let mut count = 0u64;
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (ia, a) = &segs[i];
                let (ib, b) = &segs[j];
                if a.start == b.start || a.start == b.end || a.end == b.start || a.end == b.end {
                    continue;
                }
                let a0 = sheared(&a.start);
                let a1 = sheared(&a.end);
                let b0 = sheared(&b.start);
                let b1 = sheared(&b.end);
                let d1 = orient(&a0, &a1, &b0);
                let d2 = orient(&a0, &a1, &b1);
                let d3 = orient(&b0, &b1, &a0);
                let d4 = orient(&b0, &b1, &a1);
                if d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0 {
                    return Err(ProjectError::UnresolvedDegeneracy {
                        handle: zero,
                        first: *ia,
                        second: *ib,
                    });
                }
                if d1 != d2 && d3 != d4 {
                    count += 1;
                }
            }
        }
        if count > 0 {
            per_zero.insert(zero, count);
        }
        total += count;
    }
    Ok(CrossingReport { total, per_zero })
}
