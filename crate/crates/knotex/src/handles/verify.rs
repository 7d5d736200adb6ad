//! Structural soundness checks for a handle structure.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::pattern::{all_patterns, PatchStep, PatternError, ZeroPattern};
use super::*;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("handle counts {got:?} differ from expected {want:?}")]
    Counts { got: [usize; 4], want: [usize; 4] },
    #[error("alternating handle count sum is {0}, expected 0")]
    Euler(i64),
    #[error("1-handle {one} has a malformed cross-section")]
    CrossSection { one: OneId },
    #[error("2-handle {two} has a malformed circuit")]
    Circuit { two: TwoId },
    #[error("strip ({one}, {side}) is traversed {count} times")]
    StripUse { one: OneId, side: usize, count: usize },
    #[error("bridge {bridge} is traversed {count} times")]
    BridgeUse { bridge: BridgeId, count: usize },
    #[error("0-handle {zero} has {islands} islands, {bridges} bridges and patch labels {labels:?}")]
    Pattern {
        zero: ZeroId,
        islands: usize,
        bridges: usize,
        labels: Vec<FreeLabel>,
    },
    #[error(transparent)]
    Sphere(#[from] PatternError),
    #[error("2-handle {two}: end disc labels disagree ({a:?} vs {b:?})")]
    DiscLabels {
        two: TwoId,
        a: [FreeLabel; 2],
        b: [FreeLabel; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub counts: [usize; 4],
    pub bridges: usize,
    /// Patches facing the upper 3-handle, the lower one, and the knot
    /// boundary.
    pub patches: [usize; 3],
    /// End-disc label pair of each 2-handle, sorted per handle.
    pub disc_labels: Vec<[FreeLabel; 2]>,
}

pub fn expected_counts(crossings: usize, exceptional: bool, meridian: bool) -> [usize; 4] {
    let c = crossings;
    if meridian {
        [4 * c + 2, 8 * c + 4, 4 * c + 5, 3]
    } else if exceptional {
        [4 * c + 2, 8 * c + 4, 4 * c + 4, 2]
    } else {
        [4 * c, 8 * c, 4 * c + 2, 2]
    }
}

pub fn verify(h: &HandleStructure) -> Result<VerifyReport, VerifyError> {
    let meridian = h.twos.iter().any(|t| t.kind == TwoKind::Meridian);
    let want = expected_counts(h.diagram.len(), h.exceptional, meridian);
    let got = h.counts();
    if got != want {
        return Err(VerifyError::Counts { got, want });
    }
    if h.euler() != 0 {
        return Err(VerifyError::Euler(h.euler()));
    }

    for (one, handle) in h.ones.iter().enumerate() {
        let m = handle.sides.len();
        let ok = m >= 4
            && m % 2 == 0
            && (0..m).all(|s| handle.sides[s].is_strip() != handle.sides[(s + 1) % m].is_strip())
            && handle
                .sides
                .iter()
                .all(|s| !matches!(s, Side::Strip(None)));
        if !ok {
            return Err(VerifyError::CrossSection { one });
        }
    }

    let mut strip_use: BTreeMap<(OneId, usize), usize> = BTreeMap::new();
    let mut bridge_use: BTreeMap<BridgeId, usize> = BTreeMap::new();
    for (two, handle) in h.twos.iter().enumerate() {
        let n = handle.circuit.len();
        if n == 0 || n % 2 != 0 {
            return Err(VerifyError::Circuit { two });
        }
        for i in (0..n).step_by(2) {
            let (one, side, forward) = match handle.circuit[i] {
                Step::Strip { one, side, forward } => (one, side, forward),
                Step::Hop(_) => return Err(VerifyError::Circuit { two }),
            };
            let bridge = match handle.circuit[(i + 1) % n] {
                Step::Hop(b) => b,
                Step::Strip { .. } => return Err(VerifyError::Circuit { two }),
            };
            let (next_one, next_side, next_forward) = match handle.circuit[(i + 2) % n] {
                Step::Strip { one, side, forward } => (one, side, forward),
                Step::Hop(_) => return Err(VerifyError::Circuit { two }),
            };
            *strip_use.entry((one, side)).or_default() += 1;
            *bridge_use.entry(bridge).or_default() += 1;

            if h.ones[one].sides.get(side) != Some(&Side::Strip(Some(two))) {
                return Err(VerifyError::Circuit { two });
            }
            let br = &h.bridges[bridge];
            let here = h.strip_arrival(one, forward);
            let there = h.strip_departure(next_one, next_forward);
            let ok = br.owner == two
                && br.zero == here
                && here == there
                && br.from == ((one, if forward { 1 } else { 0 }), side)
                && br.to == ((next_one, if next_forward { 0 } else { 1 }), next_side);
            if !ok {
                return Err(VerifyError::Circuit { two });
            }
        }
    }

    let total_strips: usize = h
        .ones
        .iter()
        .map(|o| o.sides.iter().filter(|s| s.is_strip()).count())
        .sum();
    if strip_use.len() != total_strips {
        let missing = h
            .ones
            .iter()
            .enumerate()
            .flat_map(|(i, o)| {
                (0..o.sides.len())
                    .filter(|&s| o.sides[s].is_strip())
                    .map(move |s| (i, s))
            })
            .find(|k| !strip_use.contains_key(k));
        if let Some((one, side)) = missing {
            return Err(VerifyError::StripUse {
                one,
                side,
                count: 0,
            });
        }
    }
    if let Some((&(one, side), &count)) = strip_use.iter().find(|(_, &c)| c != 1) {
        return Err(VerifyError::StripUse { one, side, count });
    }
    for b in 0..h.bridges.len() {
        let count = bridge_use.get(&b).copied().unwrap_or(0);
        if count != 1 {
            return Err(VerifyError::BridgeUse { bridge: b, count });
        }
    }

    let patterns = all_patterns(h)?;
    let mut patch_totals = [0usize; 3];
    for p in &patterns {
        let mut labels: Vec<FreeLabel> = p.patches.iter().map(|x| x.label).collect();
        labels.sort();
        for l in &labels {
            patch_totals[*l as usize] += 1;
        }
        let want: Vec<FreeLabel> = match h.zeros[p.zero] {
            ZeroKind::Corner { .. } => {
                vec![
                    FreeLabel::Top,
                    FreeLabel::Bottom,
                    FreeLabel::Bdry,
                    FreeLabel::Bdry,
                ]
            }
            ZeroKind::Exceptional { .. } if meridian => vec![
                FreeLabel::Top,
                FreeLabel::Bottom,
                FreeLabel::Bdry,
                FreeLabel::Bdry,
            ],
            ZeroKind::Exceptional { .. } => {
                vec![FreeLabel::Top, FreeLabel::Bottom, FreeLabel::Bdry]
            }
        };
        let mut want = want;
        want.sort();
        let (ni, nb) = (p.islands.len(), p.bridges.len());
        if ni != 4 || nb != want.len() + 2 || labels != want {
            return Err(VerifyError::Pattern {
                zero: p.zero,
                islands: ni,
                bridges: nb,
                labels,
            });
        }
    }

    let disc_labels = check_disc_labels(h, &patterns)?;

    Ok(VerifyReport {
        counts: got,
        bridges: h.bridges.len(),
        patches: patch_totals,
        disc_labels,
    })
}

/// Each 2-handle's two end discs face a fixed pair of surfaces: every strip's
/// flanking free sides and every crossed patch pair must agree on it.
fn check_disc_labels(
    h: &HandleStructure,
    patterns: &[ZeroPattern],
) -> Result<Vec<[FreeLabel; 2]>, VerifyError> {
    let mut patch_of_flank: BTreeMap<(BridgeId, usize), FreeLabel> = BTreeMap::new();
    for p in patterns {
        for patch in &p.patches {
            for step in &patch.walk {
                if let PatchStep::Flank { bridge, edge, .. } = step {
                    patch_of_flank.insert((*bridge, *edge), patch.label);
                }
            }
        }
    }

    let mut out = Vec::new();
    for (two, handle) in h.twos.iter().enumerate() {
        let mut pair: Option<[FreeLabel; 2]> = None;
        let mut push = |lab: [FreeLabel; 2]| -> Result<(), VerifyError> {
            let mut lab = lab;
            lab.sort();
            match &pair {
                None => {
                    pair = Some(lab);
                    Ok(())
                }
                Some(p) if *p == lab => Ok(()),
                Some(p) => Err(VerifyError::DiscLabels { two, a: *p, b: lab }),
            }
        };
        for step in &handle.circuit {
            match step {
                Step::Strip { one, side, .. } => push(h.strip_flank_labels(*one, *side))?,
                Step::Hop(b) => {
                    let labs = [
                        patch_of_flank[&(*b, 0)],
                        patch_of_flank[&(*b, 1)],
                    ];
                    push(labs)?;
                }
            }
        }
        let expect: Option<[FreeLabel; 2]> = match handle.kind {
            TwoKind::Room { .. } | TwoKind::Meridian => Some([FreeLabel::Bdry, FreeLabel::Bdry]),
            TwoKind::Face { .. } => Some([FreeLabel::Top, FreeLabel::Bottom]),
            TwoKind::Above { .. } | TwoKind::AbovePart { .. } => {
                Some([FreeLabel::Top, FreeLabel::Bdry])
            }
            TwoKind::Below { .. } | TwoKind::BelowPart { .. } => {
                Some([FreeLabel::Bottom, FreeLabel::Bdry])
            }
        };
        let mut got = pair.expect("non-empty circuit");
        got.sort();
        if let Some(mut want) = expect {
            want.sort();
            if got != want {
                return Err(VerifyError::DiscLabels {
                    two,
                    a: got,
                    b: want,
                });
            }
        }
        out.push(got);
    }
    Ok(out)
}

/// Distinct sorted multisets of islands per patch label at a 0-handle, used
/// by tests to pin down the local pattern.
pub fn patch_islands(p: &ZeroPattern) -> BTreeMap<FreeLabel, Vec<BTreeSet<IslandRef>>> {
    let mut out: BTreeMap<FreeLabel, Vec<BTreeSet<IslandRef>>> = BTreeMap::new();
    for patch in &p.patches {
        let mut set = BTreeSet::new();
        for step in &patch.walk {
            if let PatchStep::Arc { island, .. } = step {
                set.insert(*island);
            }
        }
        out.entry(patch.label).or_default().push(set);
    }
    out
}
