//! Planar knot diagrams given by crossing tuples.
//!
//! A crossing is four arc labels listed counterclockwise starting from the
//! incoming under-strand, plus a sign.  The under-strand enters at position 0
//! and leaves at position 2.  The sign records which way the over-strand runs:
//! `+` means it enters at position 1 and leaves at position 3, `-` the
//! reverse.  Arc labels are arbitrary distinct positive integers, each
//! appearing exactly twice in the whole diagram (possibly twice at one
//! crossing, as in a kink).
//!
//! Unsigned tuples can be imported when the labels run 1..=2n sequentially
//! along the strand; the sign of each crossing is then inferred from which
//! over position is followed by the other.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Orientation of a crossing.  `Plus` means the over-strand enters at tuple
/// position 1 and leaves at position 3; `Minus` the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One crossing: arc labels counterclockwise from the incoming under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [usize; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn under_in(&self) -> usize {
        self.arcs[0]
    }

    pub fn under_out(&self) -> usize {
        self.arcs[2]
    }

    pub fn over_in_pos(&self) -> usize {
        match self.sign {
            Sign::Plus => 1,
            Sign::Minus => 3,
        }
    }

    pub fn over_out_pos(&self) -> usize {
        match self.sign {
            Sign::Plus => 3,
            Sign::Minus => 1,
        }
    }

    pub fn over_in(&self) -> usize {
        self.arcs[self.over_in_pos()]
    }

    pub fn over_out(&self) -> usize {
        self.arcs[self.over_out_pos()]
    }

    /// Whether the arc at `pos` runs into this crossing.
    pub fn is_incoming(&self, pos: usize) -> bool {
        pos == 0 || pos == self.over_in_pos()
    }

    /// Whether `pos` carries the under-strand (positions 0 and 2).
    pub fn is_under_pos(pos: usize) -> bool {
        pos % 2 == 0
    }
}

/// One arc end: a crossing together with a tuple position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub crossing: usize,
    pub pos: usize,
}

impl Dart {
    pub fn new(crossing: usize, pos: usize) -> Dart {
        Dart { crossing, pos }
    }

    /// The next position counterclockwise at the same crossing.
    pub fn rotated(self) -> Dart {
        Dart::new(self.crossing, (self.pos + 1) % 4)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("diagram has no crossings")]
    Empty,
    #[error("arc label {0} appears {1} times, expected exactly 2")]
    LabelMultiplicity(usize, usize),
    #[error("arc label {0} does not run from one crossing end into another")]
    BadOrientation(usize),
    #[error("diagram has {0} strand components; a knot diagram must have exactly 1")]
    MultipleComponents(usize),
    #[error("diagram does not embed in the sphere: {faces} faces for {crossings} crossings")]
    NonPlanar { faces: usize, crossings: usize },
    #[error("crossing {0}: arc labels must run 1..=2n along the strand to infer signs")]
    CannotInferSign(usize),
    #[error("crossing {0}: both signs are consistent, supply them explicitly")]
    AmbiguousSign(usize),
    #[error("gauss code: {0}")]
    Gauss(String),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    crossings: Vec<Crossing>,
}

/// A validated knot diagram: one strand, embedded in the sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct Diagram {
    crossings: Vec<Crossing>,
}

impl TryFrom<RawDiagram> for Diagram {
    type Error = DiagramError;

    fn try_from(raw: RawDiagram) -> Result<Diagram, DiagramError> {
        Diagram::from_signed(raw.crossings)
    }
}

impl From<Diagram> for RawDiagram {
    fn from(d: Diagram) -> RawDiagram {
        RawDiagram {
            crossings: d.crossings,
        }
    }
}

impl Diagram {
    /// Build and validate a diagram from explicitly signed crossings.
    pub fn from_signed(crossings: Vec<Crossing>) -> Result<Diagram, DiagramError> {
        check(&crossings)?;
        Ok(Diagram { crossings })
    }

    pub fn from_signed_tuples(tuples: &[([usize; 4], Sign)]) -> Result<Diagram, DiagramError> {
        Self::from_signed(
            tuples
                .iter()
                .map(|&(arcs, sign)| Crossing { arcs, sign })
                .collect(),
        )
    }

    /// Build a diagram from unsigned tuples with strand-sequential labels
    /// 1..=2n, inferring each sign from which over position succeeds the
    /// other along the strand.
    pub fn from_tuples(tuples: &[[usize; 4]]) -> Result<Diagram, DiagramError> {
        if tuples.is_empty() {
            return Err(DiagramError::Empty);
        }
        let n = tuples.len() * 2;
        let mut seen = vec![0usize; n + 1];
        for (i, t) in tuples.iter().enumerate() {
            for &a in t {
                if a == 0 || a > n {
                    return Err(DiagramError::CannotInferSign(i));
                }
                seen[a] += 1;
            }
        }
        if let Some(label) = (1..=n).find(|&a| seen[a] != 2) {
            return Err(DiagramError::LabelMultiplicity(label, seen[label]));
        }
        let succ = |x: usize| x % n + 1;
        let mut crossings = Vec::with_capacity(tuples.len());
        for (i, &arcs) in tuples.iter().enumerate() {
            let (b, d) = (arcs[1], arcs[3]);
            let sign = match (succ(b) == d, succ(d) == b) {
                (true, true) => return Err(DiagramError::AmbiguousSign(i)),
                (true, false) => Sign::Plus,
                (false, true) => Sign::Minus,
                (false, false) => return Err(DiagramError::CannotInferSign(i)),
            };
            crossings.push(Crossing { arcs, sign });
        }
        Self::from_signed(crossings)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// All arc labels, ascending.
    pub fn arc_labels(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.occurrences().keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn min_label(&self) -> usize {
        *self.occurrences().keys().next().unwrap()
    }

    pub fn max_label(&self) -> usize {
        *self.occurrences().keys().next_back().unwrap()
    }

    fn occurrences(&self) -> BTreeMap<usize, Vec<Dart>> {
        occurrences(&self.crossings)
    }

    /// The end where this arc leaves its crossing.
    pub fn arc_source(&self, label: usize) -> Dart {
        *self
            .occurrences()
            .get(&label)
            .expect("unknown arc label")
            .iter()
            .find(|d| !self.crossings[d.crossing].is_incoming(d.pos))
            .unwrap()
    }

    /// The end where this arc runs into its crossing.
    pub fn arc_target(&self, label: usize) -> Dart {
        *self
            .occurrences()
            .get(&label)
            .expect("unknown arc label")
            .iter()
            .find(|d| self.crossings[d.crossing].is_incoming(d.pos))
            .unwrap()
    }

    pub fn arc_at(&self, dart: Dart) -> usize {
        self.crossings[dart.crossing].arcs[dart.pos]
    }

    /// The opposite end of the arc at `dart`.
    pub fn other_end(&self, dart: Dart) -> Dart {
        let label = self.arc_at(dart);
        let ds = &self.occurrences()[&label];
        if ds[0] == dart {
            ds[1]
        } else {
            ds[0]
        }
    }

    /// Arc labels in strand order, starting from the smallest label.
    pub fn strand(&self) -> Vec<usize> {
        let succ = successor(&self.crossings);
        let start = self.min_label();
        let mut out = vec![start];
        let mut cur = succ[&start];
        while cur != start {
            out.push(cur);
            cur = succ[&cur];
        }
        out
    }

    /// Gauss events along the strand, starting from the smallest arc label.
    /// Crossing ids are 1-based in order of first visit.
    pub fn gauss(&self) -> Vec<GaussEvent> {
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out = Vec::new();
        for &arc in &self.strand() {
            let t = self.arc_target(arc);
            let next_id = ids.len() + 1;
            let id = *ids.entry(t.crossing).or_insert(next_id);
            out.push(GaussEvent {
                over: !Crossing::is_under_pos(t.pos),
                id,
                sign: self.crossings[t.crossing].sign,
            });
        }
        out
    }

    pub fn gauss_string(&self) -> String {
        self.gauss()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Assemble a diagram from a Gauss code: a cyclic sequence of over/under
    /// passes with crossing ids and signs.  Fails if the code does not close
    /// into a single planar knot strand.
    pub fn from_gauss(events: &[GaussEvent]) -> Result<Diagram, DiagramError> {
        if events.is_empty() {
            return Err(DiagramError::Empty);
        }
        let n = events.len();
        if n % 2 != 0 {
            return Err(DiagramError::Gauss(format!(
                "odd number of passes ({n})"
            )));
        }
        // id -> (over event index, under event index)
        let mut passes: BTreeMap<usize, (Option<usize>, Option<usize>)> = BTreeMap::new();
        let mut order: Vec<usize> = Vec::new();
        for (k, e) in events.iter().enumerate() {
            let entry = passes.entry(e.id).or_insert_with(|| {
                order.push(e.id);
                (None, None)
            });
            let slot = if e.over { &mut entry.0 } else { &mut entry.1 };
            if slot.is_some() {
                return Err(DiagramError::Gauss(format!(
                    "crossing {} passed {} twice",
                    e.id,
                    if e.over { "over" } else { "under" }
                )));
            }
            *slot = Some(k);
        }
        // arc k+1 runs from event k to event k+1 (cyclically)
        let arc_in = |k: usize| if k == 0 { n } else { k };
        let arc_out = |k: usize| k + 1;
        let mut crossings = Vec::new();
        for &id in &order {
            let (over, under) = passes[&id];
            let (ko, ku) = match (over, under) {
                (Some(ko), Some(ku)) => (ko, ku),
                _ => {
                    return Err(DiagramError::Gauss(format!(
                        "crossing {id} needs one over and one under pass"
                    )))
                }
            };
            let sign = events[ko].sign;
            if events[ku].sign != sign {
                return Err(DiagramError::Gauss(format!(
                    "crossing {id} has conflicting signs"
                )));
            }
            let (u_in, u_out) = (arc_in(ku), arc_out(ku));
            let (o_in, o_out) = (arc_in(ko), arc_out(ko));
            let arcs = match sign {
                Sign::Plus => [u_in, o_in, u_out, o_out],
                Sign::Minus => [u_in, o_out, u_out, o_in],
            };
            crossings.push(Crossing { arcs, sign });
        }
        Self::from_signed(crossings)
    }

    pub fn from_gauss_str(s: &str) -> Result<Diagram, DiagramError> {
        let mut events = Vec::new();
        for tok in s.split_whitespace() {
            events.push(tok.parse::<GaussEvent>()?);
        }
        Self::from_gauss(&events)
    }

    /// Insert one twist on the lowest-labelled arc.  The loop arc and the
    /// continuation arc get the next two labels above the current maximum.
    pub fn with_kink(&self, sign: Sign) -> Diagram {
        let l = self.min_label();
        let m = self.max_label() + 1;
        let n = m + 1;
        let mut crossings = self.crossings.clone();
        let t = self.arc_target(l);
        crossings[t.crossing].arcs[t.pos] = n;
        crossings.push(match sign {
            Sign::Plus => Crossing {
                arcs: [l, m, m, n],
                sign,
            },
            Sign::Minus => Crossing {
                arcs: [l, n, m, m],
                sign,
            },
        });
        debug_assert!(check(&crossings).is_ok());
        Diagram { crossings }
    }

    /// Insert `plus` positive twists followed by `minus` negative ones.
    pub fn with_kinks(&self, plus: usize, minus: usize) -> Diagram {
        let mut d = self.clone();
        for _ in 0..plus {
            d = d.with_kink(Sign::Plus);
        }
        for _ in 0..minus {
            d = d.with_kink(Sign::Minus);
        }
        d
    }

    /// A label-independent encoding: the minimum over all strand starting
    /// points of the relabelled crossing list.  Two diagrams are the same
    /// marked diagram exactly when these agree.
    pub fn canonical_code(&self) -> Vec<([usize; 4], Sign)> {
        let strand = self.strand();
        let n = strand.len();
        let mut best: Option<Vec<([usize; 4], Sign)>> = None;
        for s in 0..n {
            let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
            for k in 0..n {
                relabel.insert(strand[(s + k) % n], k + 1);
            }
            // crossing order by first visit along the relabelled strand
            let mut index: BTreeMap<usize, usize> = BTreeMap::new();
            for k in 0..n {
                let t = self.arc_target(strand[(s + k) % n]);
                let next = index.len();
                index.entry(t.crossing).or_insert(next);
            }
            let mut code = vec![([0usize; 4], Sign::Plus); self.crossings.len()];
            for (x, c) in self.crossings.iter().enumerate() {
                let arcs = [
                    relabel[&c.arcs[0]],
                    relabel[&c.arcs[1]],
                    relabel[&c.arcs[2]],
                    relabel[&c.arcs[3]],
                ];
                code[index[&x]] = (arcs, c.sign);
            }
            if best.as_ref().map_or(true, |b| code < *b) {
                best = Some(code);
            }
        }
        best.unwrap()
    }

    /// Same marked diagram up to relabelling arcs along the strand.
    pub fn same_diagram(&self, other: &Diagram) -> bool {
        self.len() == other.len() && self.canonical_code() == other.canonical_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn from_json(s: &str) -> Result<Diagram, DiagramError> {
        serde_json::from_str(s).map_err(|e| DiagramError::Json(e.to_string()))
    }
}

/// One pass of the strand through a crossing, as written in a Gauss code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussEvent {
    pub over: bool,
    pub id: usize,
    pub sign: Sign,
}

impl fmt::Display for GaussEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            if self.over { 'O' } else { 'U' },
            self.id,
            self.sign
        )
    }
}

impl std::str::FromStr for GaussEvent {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<GaussEvent, DiagramError> {
        let bad = || DiagramError::Gauss(format!("bad token {s:?}, expected e.g. O3+ or U3-"));
        let mut chars = s.chars();
        let over = match chars.next() {
            Some('O') | Some('o') => true,
            Some('U') | Some('u') => false,
            _ => return Err(bad()),
        };
        let rest: String = chars.collect();
        if rest.len() < 2 {
            return Err(bad());
        }
        let (digits, sign_str) = rest.split_at(rest.len() - 1);
        let id = digits.parse::<usize>().map_err(|_| bad())?;
        let sign = match sign_str {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(bad()),
        };
        Ok(GaussEvent { over, id, sign })
    }
}

fn occurrences(crossings: &[Crossing]) -> BTreeMap<usize, Vec<Dart>> {
    let mut occ: BTreeMap<usize, Vec<Dart>> = BTreeMap::new();
    for (x, c) in crossings.iter().enumerate() {
        for pos in 0..4 {
            occ.entry(c.arcs[pos]).or_default().push(Dart::new(x, pos));
        }
    }
    occ
}

fn successor(crossings: &[Crossing]) -> BTreeMap<usize, usize> {
    let mut succ = BTreeMap::new();
    for c in crossings {
        succ.insert(c.under_in(), c.under_out());
        succ.insert(c.over_in(), c.over_out());
    }
    succ
}

fn check(crossings: &[Crossing]) -> Result<(), DiagramError> {
    if crossings.is_empty() {
        return Err(DiagramError::Empty);
    }
    let occ = occurrences(crossings);
    for (&label, ds) in &occ {
        if ds.len() != 2 {
            return Err(DiagramError::LabelMultiplicity(label, ds.len()));
        }
    }
    for (&label, ds) in &occ {
        let incoming = ds
            .iter()
            .filter(|d| crossings[d.crossing].is_incoming(d.pos))
            .count();
        if incoming != 1 {
            return Err(DiagramError::BadOrientation(label));
        }
    }
    // one strand: the arc successor permutation must be a single cycle
    let succ = successor(crossings);
    let mut visited: BTreeMap<usize, bool> = occ.keys().map(|&l| (l, false)).collect();
    let mut components = 0;
    for &start in occ.keys() {
        if visited[&start] {
            continue;
        }
        components += 1;
        let mut cur = start;
        loop {
            visited.insert(cur, true);
            cur = succ[&cur];
            if cur == start {
                break;
            }
        }
    }
    if components != 1 {
        return Err(DiagramError::MultipleComponents(components));
    }
    // sphere embedding: V - E + F = 2 with V = n, E = 2n forces F = n + 2
    let faces = count_faces(crossings, &occ);
    if faces != crossings.len() + 2 {
        return Err(DiagramError::NonPlanar {
            faces,
            crossings: crossings.len(),
        });
    }
    Ok(())
}

/// Orbits of (other end of arc, then rotate counterclockwise): the faces of
/// the 4-valent map given by the crossing tuples.
fn count_faces(crossings: &[Crossing], occ: &BTreeMap<usize, Vec<Dart>>) -> usize {
    let other = |d: Dart| -> Dart {
        let ds = &occ[&crossings[d.crossing].arcs[d.pos]];
        if ds[0] == d {
            ds[1]
        } else {
            ds[0]
        }
    };
    let mut seen: BTreeMap<Dart, bool> = BTreeMap::new();
    for x in 0..crossings.len() {
        for pos in 0..4 {
            seen.insert(Dart::new(x, pos), false);
        }
    }
    let mut faces = 0;
    let darts: Vec<Dart> = seen.keys().copied().collect();
    for &start in &darts {
        if seen[&start] {
            continue;
        }
        faces += 1;
        let mut cur = start;
        loop {
            seen.insert(cur, true);
            cur = other(cur).rotated();
            if cur == start {
                break;
            }
        }
    }
    faces
}

/// The face walks themselves, as lists of darts.  Each walk lists, in order,
/// the darts whose arcs border the face.
pub fn face_walks(d: &Diagram) -> Vec<Vec<Dart>> {
    let occ = occurrences(d.crossings());
    let other = |dt: Dart| -> Dart {
        let ds = &occ[&d.crossings()[dt.crossing].arcs[dt.pos]];
        if ds[0] == dt {
            ds[1]
        } else {
            ds[0]
        }
    };
    let mut seen: BTreeMap<Dart, bool> = BTreeMap::new();
    for x in 0..d.len() {
        for pos in 0..4 {
            seen.insert(Dart::new(x, pos), false);
        }
    }
    let mut walks = Vec::new();
    let darts: Vec<Dart> = seen.keys().copied().collect();
    for &start in &darts {
        if seen[&start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            seen.insert(cur, true);
            walk.push(cur);
            cur = other(cur).rotated();
            if cur == start {
                break;
            }
        }
        walks.push(walk);
    }
    walks
}
