//! Normal coordinates and the matching system.
//!
//! A surface is described by how many discs of each type it carries.  Sheet
//! counts in 1-handles and cross-disc counts in 2-handles are not free data:
//! every chord on an island is the end of a sheet, and every sheet side on a
//! strip continues into a cross-disc, so both are determined by the disc
//! vector.  The matching system records exactly the consistency this forces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::handles::{HandleStructure, IslandRef, OneId, TwoId, ZeroId};

use super::census::{sheet_families, DiscKind, DiscType};

/// Census plus per-type counts.  The census is the deterministic output of
/// `enumerate_disc_types`, so two vectors over the same structure are
/// directly comparable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalCoordinates {
    pub counts: Vec<u64>,
}

impl NormalCoordinates {
    pub fn zero(census_len: usize) -> Self {
        NormalCoordinates {
            counts: vec![0; census_len],
        }
    }

    pub fn weight(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &NormalCoordinates) -> NormalCoordinates {
        assert_eq!(self.counts.len(), other.counts.len());
        NormalCoordinates {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: u64) -> NormalCoordinates {
        NormalCoordinates {
            counts: self.counts.iter().map(|c| c * k).collect(),
        }
    }
}

/// Sheet and cross-disc counts induced by a disc vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedLevels {
    /// Sheets per family, keyed by (1-handle, sorted side pair).
    pub y: BTreeMap<(OneId, [usize; 2]), u64>,
    /// Cross-discs per 2-handle.
    pub z: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("census mismatch: vector has {found} entries, census has {expected}")]
    Length { expected: usize, found: usize },
    #[error("1-handle {one} family {sides:?}: ends demand {demands:?}")]
    FamilyMismatch {
        one: OneId,
        sides: [usize; 2],
        demands: [u64; 2],
    },
    #[error("2-handle {two}: attachment elements demand sheet counts {demands:?}")]
    CrossMismatch { two: TwoId, demands: Vec<u64> },
    #[error("0-handle {zero} carries {count} square types; discs would cross")]
    SquareClash { zero: ZeroId, count: usize },
}

/// Demand a vector places on one island family: total chords there.
fn island_demand(
    census: &[DiscType],
    v: &NormalCoordinates,
    island: IslandRef,
    sides: [usize; 2],
) -> u64 {
    census
        .iter()
        .zip(&v.counts)
        .filter(|(d, _)| d.chord_at(island) == Some(sides))
        .map(|(_, &c)| c)
        .sum()
}

/// Derive sheet and cross-disc counts, checking every gluing constraint and
/// the embeddability restriction of at most one square type per 0-handle.
pub fn solve(
    h: &HandleStructure,
    census: &[DiscType],
    v: &NormalCoordinates,
) -> Result<DerivedLevels, SolveError> {
    if v.counts.len() != census.len() {
        return Err(SolveError::Length {
            expected: census.len(),
            found: v.counts.len(),
        });
    }
    // At most one square type per 0-handle: two distinct separations always
    // cross on the boundary sphere.
    for zero in 0..h.zeros.len() {
        let squares = census
            .iter()
            .zip(&v.counts)
            .filter(|(d, &c)| {
                d.zero == zero && c > 0 && matches!(d.kind, DiscKind::Square { .. })
            })
            .count();
        if squares > 1 {
            return Err(SolveError::SquareClash {
                zero,
                count: squares,
            });
        }
    }

    let mut y = BTreeMap::new();
    for one in 0..h.ones.len() {
        for fam in sheet_families(h, one) {
            let d0 = island_demand(census, v, (one, 0), fam.sides);
            let d1 = island_demand(census, v, (one, 1), fam.sides);
            if d0 != d1 {
                return Err(SolveError::FamilyMismatch {
                    one,
                    sides: fam.sides,
                    demands: [d0, d1],
                });
            }
            y.insert((one, fam.sides), d0);
        }
    }

    let mut z = vec![0u64; h.twos.len()];
    for two in 0..h.twos.len() {
        let mut demands = Vec::new();
        // Each strip in the circuit: sheets with a side on it.
        for (one, side, _) in h.twos[two].strips() {
            let total: u64 = sheet_families(h, one)
                .iter()
                .filter(|f| f.sides.contains(&side))
                .map(|f| y[&(one, f.sides)])
                .sum();
            demands.push(total);
        }
        // Each bridge: disc arcs over it.
        for b in h.twos[two].hops() {
            let zero = h.bridges[b].zero;
            let bridge_ids = h.bridges_at(zero);
            let bi = bridge_ids.iter().position(|&x| x == b).unwrap();
            let total: u64 = census
                .iter()
                .zip(&v.counts)
                .filter(|(d, _)| d.zero == zero)
                .map(|(d, &c)| u64::from(d.incidence[bi]) * c)
                .sum();
            demands.push(total);
        }
        if demands.windows(2).any(|w| w[0] != w[1]) {
            return Err(SolveError::CrossMismatch { two, demands });
        }
        z[two] = demands.first().copied().unwrap_or(0);
    }

    Ok(DerivedLevels { y, z })
}

/// One homogeneous equation over the disc vector: sum of coeff * x = 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquationRow {
    pub label: String,
    pub terms: Vec<(usize, i64)>,
}

impl EquationRow {
    pub fn eval(&self, v: &NormalCoordinates) -> i64 {
        self.terms
            .iter()
            .map(|&(i, c)| c * v.counts[i] as i64)
            .sum()
    }
}

/// The matching system over disc coordinates alone: non-negative integer
/// solutions are exactly the vectors whose sheets and cross-discs glue up.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchingSystem {
    pub census: Vec<DiscType>,
    pub rows: Vec<EquationRow>,
}

impl MatchingSystem {
    pub fn satisfied_by(&self, v: &NormalCoordinates) -> bool {
        v.counts.len() == self.census.len() && self.rows.iter().all(|r| r.eval(v) == 0)
    }
}

fn demand_terms(census: &[DiscType], island: IslandRef, sides: [usize; 2]) -> Vec<(usize, i64)> {
    census
        .iter()
        .enumerate()
        .filter(|(_, d)| d.chord_at(island) == Some(sides))
        .map(|(i, _)| (i, 1))
        .collect()
}

pub fn matching_equations(h: &HandleStructure, census: &[DiscType]) -> MatchingSystem {
    let mut rows = Vec::new();
    let mut merge = |label: String, plus: Vec<(usize, i64)>, minus: Vec<(usize, i64)>| {
        let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
        for (i, c) in plus {
            *terms.entry(i).or_insert(0) += c;
        }
        for (i, c) in minus {
            *terms.entry(i).or_insert(0) -= c;
        }
        let terms: Vec<_> = terms.into_iter().filter(|&(_, c)| c != 0).collect();
        if !terms.is_empty() {
            rows.push(EquationRow { label, terms });
        }
    };

    // Sheet counts seen from the two ends of each 1-handle must agree.
    for one in 0..h.ones.len() {
        for fam in sheet_families(h, one) {
            merge(
                format!("one {} family {:?}", one, fam.sides),
                demand_terms(census, (one, 0), fam.sides),
                demand_terms(census, (one, 1), fam.sides),
            );
        }
    }
    // Every attachment element of a 2-handle must carry the same number of
    // surface crossings; compare each to the first, expressing sheet counts
    // through end 0 of the strip's 1-handle.
    for two in 0..h.twos.len() {
        let strip_expr = |one: OneId, side: usize| -> Vec<(usize, i64)> {
            let mut terms = Vec::new();
            for f in sheet_families(h, one) {
                if f.sides.contains(&side) {
                    terms.extend(demand_terms(census, (one, 0), f.sides));
                }
            }
            terms
        };
        let mut exprs: Vec<(String, Vec<(usize, i64)>)> = Vec::new();
        for (one, side, _) in h.twos[two].strips() {
            exprs.push((format!("strip ({one},{side})"), strip_expr(one, side)));
        }
        for b in h.twos[two].hops() {
            let zero = h.bridges[b].zero;
            let bridge_ids = h.bridges_at(zero);
            let bi = bridge_ids.iter().position(|&x| x == b).unwrap();
            let terms = census
                .iter()
                .enumerate()
                .filter(|(_, d)| d.zero == zero && d.incidence[bi] > 0)
                .map(|(i, d)| (i, i64::from(d.incidence[bi])))
                .collect();
            exprs.push((format!("bridge {b}"), terms));
        }
        for k in 1..exprs.len() {
            merge(
                format!("two {}: {} vs {}", two, exprs[k].0, exprs[0].0),
                exprs[k].1.clone(),
                exprs[0].1.clone(),
            );
        }
    }
    MatchingSystem {
        census: census.to_vec(),
        rows,
    }
}

/// Push every boundary patch with the given label slightly into its 0-handle:
/// each 3-island patch yields the triangle cutting its islands off, each
/// 4-island patch the square visiting them in walk order.
pub fn label_push_in(
    h: &HandleStructure,
    census: &[DiscType],
    label: crate::handles::FreeLabel,
) -> NormalCoordinates {
    use crate::handles::pattern::{all_patterns, PatchStep};
    let mut v = NormalCoordinates::zero(census.len());
    for pat in all_patterns(h).expect("valid 0-handle patterns") {
        for patch in &pat.patches {
            if patch.label != label {
                continue;
            }
            let islands = h.islands_at(pat.zero);
            let mut cycle = Vec::new();
            for step in &patch.walk {
                if let PatchStep::Arc { island, .. } = step {
                    let local = islands.iter().position(|i| i == island).unwrap();
                    cycle.push(local);
                }
            }
            let idx = census
                .iter()
                .position(|d| d.zero == pat.zero && same_cycle(&d.cycle, &cycle))
                .expect("push-in type in census");
            v.counts[idx] += 1;
        }
    }
    v
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    for start in 0..n {
        if (0..n).all(|k| a[k] == b[(start + k) % n])
            || (0..n).all(|k| a[k] == b[(start + n - k) % n])
        {
            return true;
        }
    }
    false
}

/// The two-sided torus running just inside the boundary of the knot
/// complement: one push-in of every boundary-labelled patch.
pub fn peripheral_torus(h: &HandleStructure, census: &[DiscType]) -> NormalCoordinates {
    label_push_in(h, census, crate::handles::FreeLabel::Bdry)
}

/// The sphere just inside the top 3-handle.
pub fn top_sphere(h: &HandleStructure, census: &[DiscType]) -> NormalCoordinates {
    label_push_in(h, census, crate::handles::FreeLabel::Top)
}

/// The sphere just inside the bottom 3-handle.
pub fn bottom_sphere(h: &HandleStructure, census: &[DiscType]) -> NormalCoordinates {
    label_push_in(h, census, crate::handles::FreeLabel::Bottom)
}
