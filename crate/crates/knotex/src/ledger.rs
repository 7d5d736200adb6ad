//! Integer bound arithmetic and replayable certificates.
//!
//! Every bound is a chain of named integer steps.  A step's formula is an
//! exact rational expression over the certificate inputs and earlier steps;
//! replaying re-evaluates every formula and demands the recorded value to the
//! last digit.  Coefficient roundings appear as explicit literal steps, and
//! the facts behind them are re-checked by [`verify_inequalities`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::affine::{corner_block, disc_boundary, realize_disc};
use crate::geom::Rat;
use crate::normal::DiscKind;

/// Arc budget for a companion core curve in standard position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreCurveBudget {
    /// Arcs through any 1-handle.
    pub arcs_per_one: u32,
    /// Arcs through any 0-handle.
    pub arcs_per_zero: u32,
    /// Times one boundary face is met by arcs parallel to it.
    pub face_meetings: u32,
    /// Island components a 0-handle may carry.
    pub max_islands: u32,
    /// Strip sides a 1-handle may carry.
    pub max_strips: u32,
}

pub const CORE_CURVE_BUDGET: CoreCurveBudget = CoreCurveBudget {
    arcs_per_one: 24,
    arcs_per_zero: 48,
    face_meetings: 6,
    max_islands: 4,
    max_strips: 3,
};

/// Flat polygons realizing one triangle disc.
pub const TRIANGLE_POLYGONS: usize = 16;
/// Flat polygons realizing one square disc.
pub const SQUARE_POLYGONS: usize = 25;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LedgerError {
    #[error("the handle count bound needs at least three crossings, got {c}")]
    TooFewCrossings { c: i128 },
    #[error("{name} must be non-negative, got {value}")]
    NegativeInput { name: &'static str, value: i128 },
    #[error("a 0-handle admits only one square type; census lists two")]
    SecondSquareType,
    #[error("disc kind out of range: {0:?}")]
    BadKind(DiscKind),
    #[error("missing hypothesis: {name}")]
    MissingHypothesis { name: &'static str },
}

// ---------------------------------------------------------------------------
// Formula evaluation

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unexpected character {0:?}")]
    BadChar(char),
    #[error("unexpected end of formula")]
    Truncated,
    #[error("expected {0:?}")]
    Expected(char),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("trailing input after formula")]
    Trailing,
    #[error("integer literal out of range")]
    BadLiteral,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    env: &'a BTreeMap<String, Rat>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), EvalError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(EvalError::Expected(c as char))
        }
    }

    fn expr(&mut self) -> Result<Rat, EvalError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Rat, EvalError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc *= self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if d == Rat::from_integer(0.into()) {
                        return Err(EvalError::DivisionByZero);
                    }
                    acc /= d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Rat, EvalError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(c) if c.is_ascii_lowercase() || c == b'_' => self.name(),
            Some(c) => Err(EvalError::BadChar(c as char)),
            None => Err(EvalError::Truncated),
        }
    }

    fn literal(&mut self) -> Result<Rat, EvalError> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let n: i128 = text.parse().map_err(|_| EvalError::BadLiteral)?;
        Ok(Rat::from_integer(n.into()))
    }

    fn name(&mut self) -> Result<Rat, EvalError> {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || *c == b'_')
        {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if word == "ceil" {
            self.expect(b'(')?;
            let v = self.expr()?;
            self.expect(b')')?;
            return Ok(v.ceil());
        }
        self.env
            .get(word)
            .cloned()
            .ok_or_else(|| EvalError::UnknownName(word.to_string()))
    }
}

/// Evaluate an exact rational formula over named values.  Grammar: integers,
/// names, `+ - * /`, parentheses and `ceil(...)`.
pub fn eval_formula(formula: &str, env: &BTreeMap<String, Rat>) -> Result<Rat, EvalError> {
    let mut p = Parser {
        src: formula.as_bytes(),
        pos: 0,
        env,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(EvalError::Trailing);
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Certificates

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundStep {
    pub label: String,
    pub formula: String,
    pub value: i128,
}

/// A replayable bound: inputs, assumptions consumed, and the step chain.
/// The final step's value is the bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub tool_version: String,
    pub chain: String,
    pub inputs: BTreeMap<String, i128>,
    pub assumptions: Vec<String>,
    pub steps: Vec<BoundStep>,
    pub bound: i128,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("certificate has no steps")]
    EmptyChain,
    #[error("step {step} ({label}): {error}")]
    Eval {
        step: usize,
        label: String,
        error: EvalError,
    },
    #[error("step {step} ({label}) does not evaluate to an integer")]
    NotInteger { step: usize, label: String },
    #[error("step {step} ({label}) evaluates to {got}, certificate says {want}")]
    ValueMismatch {
        step: usize,
        label: String,
        want: i128,
        got: i128,
    },
    #[error("step {step} reuses the name {label}")]
    DuplicateLabel { step: usize, label: String },
    #[error("value at step {step} exceeds the integer range")]
    Overflow { step: usize },
    #[error("bound {bound} is not the final step's value {last}")]
    BoundMismatch { bound: i128, last: i128 },
}

fn int_rat(n: i128) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

impl BoundCertificate {
    /// Re-evaluate every formula and compare against the recorded values.
    pub fn replay(&self) -> Result<(), ReplayError> {
        if self.steps.is_empty() {
            return Err(ReplayError::EmptyChain);
        }
        let mut env: BTreeMap<String, Rat> =
            self.inputs.iter().map(|(k, &v)| (k.clone(), int_rat(v))).collect();
        for (i, step) in self.steps.iter().enumerate() {
            if env.contains_key(&step.label) {
                return Err(ReplayError::DuplicateLabel {
                    step: i,
                    label: step.label.clone(),
                });
            }
            let v = eval_formula(&step.formula, &env).map_err(|error| ReplayError::Eval {
                step: i,
                label: step.label.clone(),
                error,
            })?;
            if !v.is_integer() {
                return Err(ReplayError::NotInteger {
                    step: i,
                    label: step.label.clone(),
                });
            }
            let got = v
                .to_integer()
                .to_i128()
                .ok_or(ReplayError::Overflow { step: i })?;
            if got != step.value {
                return Err(ReplayError::ValueMismatch {
                    step: i,
                    label: step.label.clone(),
                    want: step.value,
                    got,
                });
            }
            env.insert(step.label.clone(), v);
        }
        let last = self.steps.last().unwrap().value;
        if last != self.bound {
            return Err(ReplayError::BoundMismatch {
                bound: self.bound,
                last,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("certificates serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<BoundCertificate, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Build a certificate, evaluating each formula as it is added so the result
/// replays by construction.
fn certify(
    chain: &str,
    inputs: &[(&str, i128)],
    assumptions: &[&str],
    formulas: &[(&str, String)],
) -> BoundCertificate {
    let mut env: BTreeMap<String, Rat> = inputs
        .iter()
        .map(|&(k, v)| (k.to_string(), int_rat(v)))
        .collect();
    let mut steps = Vec::with_capacity(formulas.len());
    for (label, formula) in formulas {
        let v = eval_formula(formula, &env)
            .unwrap_or_else(|e| panic!("step {label}: bad formula {formula:?}: {e}"));
        assert!(v.is_integer(), "step {label} is not an integer");
        let value = v.to_integer().to_i128().expect("step fits in an integer");
        env.insert(label.to_string(), v);
        steps.push(BoundStep {
            label: label.to_string(),
            formula: formula.clone(),
            value,
        });
    }
    let bound = steps.last().expect("chain has steps").value;
    BoundCertificate {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        chain: chain.to_string(),
        inputs: inputs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        assumptions: assumptions.iter().map(|s| s.to_string()).collect(),
        steps,
        bound,
    }
}

fn s(text: &str) -> String {
    text.to_string()
}

/// Bound the companion's crossing number by the satellite diagram's: the
/// certificate closes at 10^13 times the crossing count.
///
/// The chain carries both cases — the core curve riding the spine of the
/// solid torus, and the curve following a one-sided band — and finishes with
/// the spine coefficient, which dominates.
pub fn satellite_bound(c: i128) -> Result<BoundCertificate, LedgerError> {
    if c < 3 {
        return Err(LedgerError::TooFewCrossings { c });
    }
    Ok(certify(
        "satellite",
        &[("c", c)],
        &[
            "an essential torus in the exterior is normal for the handle structure",
            "annular simplification of its parallelity bundle terminates",
            "the core curve straightens to at most 48 arcs per 0-handle, \
             meeting each face at most 6 times",
            "in the one-sided band case the curve and the twisting each close \
             under the band coefficient",
            "each case lands under the final coefficient",
        ],
        &[
            ("zero_handles", s("4*c + 2")),
            ("spine_arcs_per_zero", s("6*48*236")),
            (
                "spine_crossings_per_zero",
                s("spine_arcs_per_zero * spine_arcs_per_zero"),
            ),
            (
                "spine_crossing_coeff",
                s("14 * spine_crossings_per_zero / 3"),
            ),
            ("spine_coeff_rounded", s("30000000000")),
            ("band_arcs_per_zero", s("2*8 + 8*6")),
            (
                "band_pairs_per_zero",
                s("band_arcs_per_zero * band_arcs_per_zero / 2"),
            ),
            (
                "band_crossing_coeff",
                s("ceil(14 * band_pairs_per_zero / 3)"),
            ),
            (
                "band_closed_coeff",
                s("8 * 173 * 172 / 2 * 2 * band_crossing_coeff"),
            ),
            ("band_coeff_rounded", s("3000000000")),
            ("external_projection_factor", s("152")),
            (
                "closed_coeff",
                s("external_projection_factor * spine_coeff_rounded"),
            ),
            ("final_coeff", s("10000000000000")),
            ("bound", s("final_coeff * c")),
        ],
    ))
}

/// Bound the companion's crossing number from a cable pattern: the
/// certificate closes at 119024 times crossings-plus-twist.
pub fn cable_companion_bound(c: i128, twist: i128) -> Result<BoundCertificate, LedgerError> {
    if c < 0 {
        return Err(LedgerError::NegativeInput { name: "c", value: c });
    }
    if twist < 0 {
        return Err(LedgerError::NegativeInput {
            name: "twist",
            value: twist,
        });
    }
    Ok(certify(
        "cable",
        &[("c", c), ("t", twist)],
        &[
            "the pattern is drawn over the companion diagram with kinks \
             matching twice the twisting",
            "the compressing annulus meets each boundary disc in at most two \
             arcs in standard position",
            "the through-band case dominates the direct case: 29240 <= 119024",
        ],
        &[
            ("pattern_crossings", s("2*c + 2*t")),
            ("zero_handles", s("4 * pattern_crossings")),
            ("boundary_cells", s("2 * (6 + 5)")),
            ("band_arcs_per_zero", s("2*8 + 8*6")),
            ("cells", s("boundary_cells + band_arcs_per_zero")),
            ("direct_coeff", s("8 * cells * (cells - 1) / 2")),
            ("direct_bound", s("direct_coeff * (c + t)")),
            ("straight_arcs", s("4*16 + 25 + 84")),
            (
                "annulus_coeff",
                s("8 * straight_arcs * (straight_arcs - 1) / 2"),
            ),
            ("bound", s("annulus_coeff * (c + t)")),
        ],
    ))
}

/// Structural facts a prime-companion bound consumes.  Every flag must be
/// asserted; each one is recorded in the certificate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplificationRecord {
    /// The handle structure was built without exceptional blocks.
    pub exceptional_free_structure: bool,
    /// No annular simplification move applies to the cut-open bundle.
    pub annular_simplifications_exhausted: bool,
    /// The horizontal boundary of the bundle is incompressible.
    pub horizontal_boundary_incompressible: bool,
    /// No bundle annulus is meridional on the boundary torus.
    pub bundle_annuli_non_meridional: bool,
    /// The core curve crosses each handle in a single arc.
    pub curve_single_arc_per_handle: bool,
}

/// Bound the external curve's crossing number over a prime companion: 152
/// times the companion diagram's crossings, valid once every structural flag
/// in the record is asserted.
pub fn prime_companion_bound(
    c: i128,
    record: &SimplificationRecord,
) -> Result<BoundCertificate, LedgerError> {
    if c < 0 {
        return Err(LedgerError::NegativeInput { name: "c", value: c });
    }
    let flags = [
        (
            record.exceptional_free_structure,
            "exceptional_free_structure",
            "the handle structure has no exceptional blocks",
        ),
        (
            record.annular_simplifications_exhausted,
            "annular_simplifications_exhausted",
            "annular simplifications are exhausted",
        ),
        (
            record.horizontal_boundary_incompressible,
            "horizontal_boundary_incompressible",
            "the horizontal boundary is incompressible",
        ),
        (
            record.bundle_annuli_non_meridional,
            "bundle_annuli_non_meridional",
            "no bundle annulus is meridional",
        ),
        (
            record.curve_single_arc_per_handle,
            "curve_single_arc_per_handle",
            "the curve crosses each handle once",
        ),
    ];
    for (ok, name, _) in flags {
        if !ok {
            return Err(LedgerError::MissingHypothesis { name });
        }
    }
    let assumptions: Vec<&str> = flags.iter().map(|&(_, _, text)| text).collect();
    Ok(certify(
        "prime-companion",
        &[("c", c)],
        &assumptions,
        &[
            ("external_projection_factor", s("152")),
            ("bound", s("external_projection_factor * c")),
        ],
    ))
}

// ---------------------------------------------------------------------------
// Face census after cutting

/// Boundary faces of a 0-handle after cutting along all discs of the given
/// kinds.  Parallel copies of one kind bound parallelity regions and do not
/// add strips, so only the set of kinds matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutFaces {
    pub island_strips: usize,
    pub bridge_strips: usize,
    pub patch_pieces: usize,
    pub disc_faces: usize,
}

impl CutFaces {
    pub fn total(&self) -> usize {
        self.island_strips + self.bridge_strips + self.patch_pieces + self.disc_faces
    }
}

fn kind_crosses_island(kind: DiscKind, island: usize) -> bool {
    match kind {
        DiscKind::Triangle { corner } => corner - 1 != island,
        DiscKind::Square { .. } => true,
    }
}

fn kind_crosses_bridge(kind: DiscKind, i: usize, j: usize) -> bool {
    match kind {
        DiscKind::Triangle { corner } => {
            let cut = corner - 1;
            cut != i && cut != j
        }
        DiscKind::Square { separation } => {
            // The square spares the bridge inside each of its island pairs.
            !((i == 0 && j == separation) || (i != 0 && i != separation && j != 0 && j != separation))
        }
    }
}

/// The face census of a cut-open 0-handle.  Rejects censuses with two square
/// types, which no admissible surface produces.
pub fn faces_after_cut(census: &[DiscKind]) -> Result<CutFaces, LedgerError> {
    let mut kinds: Vec<DiscKind> = Vec::new();
    for &kind in census {
        match kind {
            DiscKind::Triangle { corner } if !(1..=4).contains(&corner) => {
                return Err(LedgerError::BadKind(kind))
            }
            DiscKind::Square { separation } if !(1..=3).contains(&separation) => {
                return Err(LedgerError::BadKind(kind))
            }
            _ => {}
        }
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    let squares = kinds
        .iter()
        .filter(|k| matches!(k, DiscKind::Square { .. }))
        .count();
    if squares > 1 {
        return Err(LedgerError::SecondSquareType);
    }
    let mut island_strips = 0;
    for island in 0..4 {
        island_strips += 1 + kinds
            .iter()
            .filter(|&&k| kind_crosses_island(k, island))
            .count();
    }
    let mut bridge_strips = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            bridge_strips += 1 + kinds
                .iter()
                .filter(|&&k| kind_crosses_bridge(k, i, j))
                .count();
        }
    }
    let disc_faces = kinds
        .iter()
        .map(|k| match k {
            DiscKind::Triangle { .. } => 2 * TRIANGLE_POLYGONS,
            DiscKind::Square { .. } => 2 * SQUARE_POLYGONS,
        })
        .sum();
    Ok(CutFaces {
        island_strips,
        bridge_strips,
        patch_pieces: 16,
        disc_faces,
    })
}

/// Pieces of a cut-open 0-handle outside the parallelity regions: one per
/// kind present, plus the core piece.  At most six.
pub fn non_parallelity_pieces(census: &[DiscKind]) -> Result<usize, LedgerError> {
    faces_after_cut(census)?;
    let mut kinds: Vec<DiscKind> = Vec::new();
    for &k in census {
        if !kinds.contains(&k) {
            kinds.push(k);
        }
    }
    Ok(kinds.len() + 1)
}

// ---------------------------------------------------------------------------
// Constant verification

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantCheck {
    pub name: String,
    pub formula: String,
    pub expected: i128,
    pub derived: i128,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub smaller: String,
    pub larger: String,
    pub smaller_value: i128,
    pub larger_value: i128,
    pub ok: bool,
}

fn arith_check(name: &str, formula: &str, expected: i128) -> ConstantCheck {
    let env = BTreeMap::new();
    let derived = eval_formula(formula, &env)
        .ok()
        .filter(|v| v.is_integer())
        .and_then(|v| v.to_integer().to_i128())
        .unwrap_or(i128::MIN);
    ConstantCheck {
        name: name.to_string(),
        formula: formula.to_string(),
        expected,
        derived,
        ok: derived == expected,
    }
}

fn geometric_check(name: &str, what: &str, expected: i128, derived: usize) -> ConstantCheck {
    ConstantCheck {
        name: name.to_string(),
        formula: what.to_string(),
        expected,
        derived: derived as i128,
        ok: derived as i128 == expected,
    }
}

fn all_kinds() -> Vec<DiscKind> {
    let mut kinds: Vec<DiscKind> = (1..=4).map(|corner| DiscKind::Triangle { corner }).collect();
    kinds.push(DiscKind::Square { separation: 1 });
    kinds
}

/// Re-derive every pinned constant: the block census and polygon counts from
/// the affine geometry, the rest from their defining formulas.
pub fn verify_constants() -> Vec<ConstantCheck> {
    let block = corner_block();
    let realized = |kind: DiscKind| {
        let b = disc_boundary(&block, kind, 0);
        realize_disc(&block.solid, &b.curve, 0, Some(b.cap_face))
            .map(|d| d.polygons.len())
            .unwrap_or(0)
    };
    let full_cut = faces_after_cut(&all_kinds()).map(|f| f.total()).unwrap_or(0);
    let empty_cut = faces_after_cut(&[]).map(|f| f.total()).unwrap_or(0);
    vec![
        geometric_check("block_vertices", "corner block vertex count", 24, {
            block.solid.vertices.len()
        }),
        geometric_check(
            "block_edges",
            "corner block edge count",
            48,
            block.solid.edges().len(),
        ),
        geometric_check(
            "block_faces",
            "corner block face count",
            26,
            block.solid.faces.len(),
        ),
        arith_check("block_face_split", "4 + 6 + 16", 26),
        geometric_check(
            "triangle_polygons",
            "flat polygons of a realized triangle disc",
            16,
            realized(DiscKind::Triangle { corner: 1 }),
        ),
        geometric_check(
            "square_polygons",
            "flat polygons of a realized square disc",
            25,
            realized(DiscKind::Square { separation: 1 }),
        ),
        geometric_check(
            "uncut_faces",
            "face census with no discs",
            26,
            empty_cut,
        ),
        geometric_check(
            "full_cut_faces",
            "face census with every admissible kind",
            236,
            full_cut,
        ),
        arith_check("full_cut_split", "20 + 22 + 16 + 2*(4*16 + 25)", 236),
        arith_check("max_disc_faces", "2*(4*16 + 25)", 178),
        arith_check("spine_arcs_per_zero", "6*48*236", 67968),
        arith_check("spine_crossings_per_zero", "67968*67968", 4619649024),
        arith_check("spine_crossing_coeff", "14*67968*67968/3", 21558362112),
        arith_check("band_arcs_per_zero", "2*8 + 8*6", 64),
        arith_check("band_pairs_per_zero", "64*64/2", 2048),
        arith_check("band_crossing_coeff", "ceil(14*2048/3)", 9558),
        arith_check("band_closed_coeff", "8*173*172/2 * 2 * 9558", 2275262784),
        arith_check("cable_boundary_cells", "2*(6 + 5)", 22),
        arith_check("cable_cells", "22 + 64", 86),
        arith_check("cable_direct_coeff", "8*86*85/2", 29240),
        arith_check("cable_straight_arcs", "4*16 + 25 + 84", 173),
        arith_check("cable_pair_count", "173*172/2", 14878),
        arith_check("cable_half_coeff", "4*173*172/2", 59512),
        arith_check("cable_annulus_coeff", "8*173*172/2", 119024),
        arith_check("closed_coeff", "152 * 30000000000", 4560000000000),
    ]
}

fn ineq(name: &str, smaller: &str, larger: &str) -> InequalityCheck {
    let env = BTreeMap::new();
    let value = |f: &str| {
        eval_formula(f, &env)
            .ok()
            .filter(|v| v.is_integer())
            .and_then(|v| v.to_integer().to_i128())
            .unwrap_or(i128::MIN)
    };
    let sv = value(smaller);
    let lv = value(larger);
    InequalityCheck {
        name: name.to_string(),
        smaller: smaller.to_string(),
        larger: larger.to_string(),
        smaller_value: sv,
        larger_value: lv,
        ok: sv != i128::MIN && sv <= lv,
    }
}

/// The coefficient roundings used by the bound chains, as exact integer
/// comparisons.
pub fn verify_inequalities() -> Vec<InequalityCheck> {
    vec![
        ineq(
            "spine_coeff_rounds_up",
            "14*67968*67968/3",
            "30000000000",
        ),
        ineq(
            "band_coeff_rounds_up",
            "8*173*172/2 * 2 * ceil(14*2048/3)",
            "3000000000",
        ),
        ineq("band_ceiling_covers", "14*2048", "3*9558"),
        ineq(
            "closing_rounds_up",
            "152 * 30000000000",
            "10000000000000",
        ),
        ineq("direct_under_annulus", "8*86*85/2", "8*173*172/2"),
    ]
}
