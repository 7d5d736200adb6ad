//! Flat realizations of disc boundaries on a corner block.
//!
//! A disc boundary is a closed curve crossing a cycle of faces, one chord per
//! face.  Its flat filling is a ring of quadrilaterals hanging from the curve
//! toward the star center, closed by a shrunken copy of one side of the
//! boundary surface.  Successive nesting depths use smaller shrink factors,
//! so discs over nested curves stay pairwise disjoint.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::geom::{rat, ratio, Rat, V3};
use crate::normal::DiscKind;

use super::polyhedron::{AffinePolyhedron, CornerBlock};

/// One chord of a disc boundary: a straight segment across a face, both
/// endpoints strictly inside boundary edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveArc {
    pub face: usize,
    pub start: V3,
    pub end: V3,
}

/// A closed curve on a polyhedron boundary, one arc per crossed face, each
/// arc ending where the next begins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCurve {
    pub arcs: Vec<CurveArc>,
}

/// A disc boundary plus a face known to lie on the side the flat filling
/// should cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscBoundary {
    pub curve: SurfaceCurve,
    pub cap_face: usize,
}

/// The boundary curve of the disc of the given kind in slot `slot`.
///
/// Curves in later slots sit farther from the corner they cut off; any two
/// slots give disjoint curves, and pairing slot with nesting depth keeps the
/// filled discs disjoint as well.
pub fn disc_boundary(block: &CornerBlock, kind: DiscKind, slot: usize) -> DiscBoundary {
    let tau = ratio(slot as i64 + 1, slot as i64 + 2);
    let (visits, caps): (Vec<usize>, Vec<usize>) = match kind {
        DiscKind::Triangle { corner } => {
            assert!((1..=4).contains(&corner), "corner out of range");
            let cut = corner - 1;
            ((0..4).filter(|&i| i != cut).collect(), vec![cut])
        }
        DiscKind::Square { separation } => {
            assert!((1..=3).contains(&separation), "separation out of range");
            let rest: Vec<usize> = (1..4).filter(|&i| i != separation).collect();
            (vec![0, rest[0], separation, rest[1]], vec![0, separation])
        }
    };
    let n = visits.len();
    let point = |island: usize, toward: usize| -> V3 {
        let [va, vb] = block.island_bridge_edge(island, toward);
        let a_capped = caps.contains(&block.vertex_patch[va]);
        let b_capped = caps.contains(&block.vertex_patch[vb]);
        assert!(
            a_capped != b_capped,
            "crossed edge has one end toward the cap"
        );
        let (from, to) = if a_capped { (va, vb) } else { (vb, va) };
        block.solid.vertices[from].lerp(&block.solid.vertices[to], &tau)
    };
    let mut arcs = Vec::with_capacity(2 * n);
    for k in 0..n {
        let here = visits[k];
        let prev = visits[(k + n - 1) % n];
        let next = visits[(k + 1) % n];
        arcs.push(CurveArc {
            face: block.island_face(here),
            start: point(here, prev),
            end: point(here, next),
        });
        arcs.push(CurveArc {
            face: block.bridge_face(here, next),
            start: point(here, next),
            end: point(next, here),
        });
    }
    DiscBoundary {
        curve: SurfaceCurve { arcs },
        cap_face: block.patch_faces(caps[0])[0],
    }
}

/// A disc as a list of flat polygons: one quadrilateral per boundary arc,
/// then the cap polygons in arc order followed by whole capped faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatDisc {
    pub polygons: Vec<Vec<V3>>,
    /// Arc start points, in order, tracing the boundary curve.
    pub boundary: Vec<V3>,
    pub nesting: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DiscError {
    #[error("curve has no arcs")]
    EmptyCurve,
    #[error("arc {arc} does not end where the next begins")]
    BrokenChain { arc: usize },
    #[error("face {face} is crossed by more than one arc")]
    RepeatedFace { face: usize },
    #[error("arc {arc} names a face outside the polyhedron")]
    BadFace { arc: usize },
    #[error("arc {arc} has coincident endpoints")]
    DegenerateArc { arc: usize },
    #[error("arc {arc} has an endpoint not strictly inside a boundary edge")]
    PointOffEdge { arc: usize },
    #[error("arc {arc} enters and leaves face {face} through one edge")]
    ChordOnSingleEdge { arc: usize, face: usize },
    #[error("arcs {arc} and next cross different polyhedron edges")]
    EdgeMismatch { arc: usize },
    #[error("chord on face {face} runs through a vertex")]
    ChordThroughVertex { face: usize },
    #[error("face sides cannot be labelled consistently")]
    SidesInconsistent,
    #[error("curve does not separate the boundary")]
    NotSeparating,
    #[error("cap hint {face} is not a whole face")]
    BadCapHint { face: usize },
    #[error("both sides have equally many pieces; a cap hint is needed")]
    AmbiguousCap,
}

fn rsign(r: &Rat) -> i8 {
    let z = rat(0);
    if *r > z {
        1
    } else if *r < z {
        -1
    } else {
        0
    }
}

/// Where `q` sits strictly inside a boundary edge of face `face`: the edge's
/// position in the cycle and its unordered vertex pair.
fn edge_of_point(p: &AffinePolyhedron, face: usize, q: &V3) -> Option<(usize, (usize, usize))> {
    let cycle = &p.faces[face];
    let m = cycle.len();
    for k in 0..m {
        let a = &p.vertices[cycle[k]];
        let b = &p.vertices[cycle[(k + 1) % m]];
        let e = b - a;
        let d = q - a;
        if d.cross(&e) != V3::zero() {
            continue;
        }
        let along = d.dot(&e);
        if along > rat(0) && along < e.dot(&e) {
            let (x, y) = (cycle[k], cycle[(k + 1) % m]);
            return Some((k, (x.min(y), x.max(y))));
        }
    }
    None
}

struct Split {
    /// Two pieces, each a polygon: chord start, original vertices, chord end.
    pieces: [Vec<V3>; 2],
    /// Original vertex ids of each piece's interior run.
    runs: [Vec<usize>; 2],
}

fn split_face(
    p: &AffinePolyhedron,
    arc: &CurveArc,
    start_pos: usize,
    end_pos: usize,
) -> Result<Split, DiscError> {
    let cycle = &p.faces[arc.face];
    let m = cycle.len();
    let run = |from: usize, to: usize| -> Vec<usize> {
        // Cycle vertices strictly after edge `from`, up to the start of edge
        // `to`, walking forward.
        let mut ids = Vec::new();
        let mut k = (from + 1) % m;
        loop {
            ids.push(cycle[k]);
            if k == to {
                break;
            }
            k = (k + 1) % m;
        }
        ids
    };
    let run_a = run(start_pos, end_pos);
    let run_b = run(end_pos, start_pos);
    let build = |head: &V3, ids: &[usize], tail: &V3| -> Vec<V3> {
        let mut poly = vec![head.clone()];
        poly.extend(ids.iter().map(|&v| p.vertices[v].clone()));
        poly.push(tail.clone());
        poly
    };
    Ok(Split {
        pieces: [
            build(&arc.start, &run_a, &arc.end),
            build(&arc.end, &run_b, &arc.start),
        ],
        runs: [run_a, run_b],
    })
}

/// Build the flat disc over a separating curve.  `nesting` picks the shrink
/// factor 1/(nesting+2); `cap_hint` names a whole face that must land on the
/// capped side, breaking the tie when both sides have equally many pieces.
pub fn realize_disc(
    p: &AffinePolyhedron,
    curve: &SurfaceCurve,
    nesting: usize,
    cap_hint: Option<usize>,
) -> Result<FlatDisc, DiscError> {
    let arcs = &curve.arcs;
    if arcs.is_empty() {
        return Err(DiscError::EmptyCurve);
    }
    let mut crossed_faces = BTreeSet::new();
    for (ai, arc) in arcs.iter().enumerate() {
        if arc.face >= p.faces.len() {
            return Err(DiscError::BadFace { arc: ai });
        }
        if arc.start == arc.end {
            return Err(DiscError::DegenerateArc { arc: ai });
        }
        if !crossed_faces.insert(arc.face) {
            return Err(DiscError::RepeatedFace { face: arc.face });
        }
    }
    for ai in 0..arcs.len() {
        if arcs[ai].end != arcs[(ai + 1) % arcs.len()].start {
            return Err(DiscError::BrokenChain { arc: ai });
        }
    }

    // Locate every chord endpoint on a face edge and split the crossed faces.
    let mut splits: BTreeMap<usize, Split> = BTreeMap::new();
    let mut end_pairs = Vec::with_capacity(arcs.len());
    let mut start_pairs = Vec::with_capacity(arcs.len());
    for (ai, arc) in arcs.iter().enumerate() {
        let (spos, spair) =
            edge_of_point(p, arc.face, &arc.start).ok_or(DiscError::PointOffEdge { arc: ai })?;
        let (epos, epair) =
            edge_of_point(p, arc.face, &arc.end).ok_or(DiscError::PointOffEdge { arc: ai })?;
        if spos == epos {
            return Err(DiscError::ChordOnSingleEdge {
                arc: ai,
                face: arc.face,
            });
        }
        start_pairs.push(spair);
        end_pairs.push(epair);
        splits.insert(arc.face, split_face(p, arc, spos, epos)?);
    }
    for ai in 0..arcs.len() {
        if end_pairs[ai] != start_pairs[(ai + 1) % arcs.len()] {
            return Err(DiscError::EdgeMismatch { arc: ai });
        }
    }

    // Each node is one side of a crossed face or a whole face; nodes sharing
    // an uncut edge lie on the same side of the curve, the two pieces of one
    // face on opposite sides.
    type Node = (usize, usize);
    let mut edge_owners: BTreeMap<(usize, usize), Vec<Node>> = BTreeMap::new();
    for (face, cycle) in p.faces.iter().enumerate() {
        if let Some(split) = splits.get(&face) {
            for (side, rn) in split.runs.iter().enumerate() {
                for w in rn.windows(2) {
                    let pair = (w[0].min(w[1]), w[0].max(w[1]));
                    edge_owners.entry(pair).or_default().push((face, side));
                }
            }
        } else {
            for k in 0..cycle.len() {
                let (x, y) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                edge_owners
                    .entry((x.min(y), x.max(y)))
                    .or_default()
                    .push((face, 0));
            }
        }
    }

    let mut colors: BTreeMap<Node, u8> = BTreeMap::new();
    let mut queue: VecDeque<Node> = VecDeque::new();
    let first_crossed = *splits.keys().next().unwrap();
    colors.insert((first_crossed, 0), 0);
    queue.push_back((first_crossed, 0));
    let mut adjacency: BTreeMap<Node, Vec<(Node, bool)>> = BTreeMap::new();
    for owners in edge_owners.values() {
        if owners.len() == 2 {
            adjacency
                .entry(owners[0])
                .or_default()
                .push((owners[1], false));
            adjacency
                .entry(owners[1])
                .or_default()
                .push((owners[0], false));
        }
    }
    for &face in splits.keys() {
        adjacency
            .entry((face, 0))
            .or_default()
            .push(((face, 1), true));
        adjacency
            .entry((face, 1))
            .or_default()
            .push(((face, 0), true));
    }
    while let Some(node) = queue.pop_front() {
        let here = colors[&node];
        for (other, flip) in adjacency.get(&node).cloned().unwrap_or_default() {
            let want = if flip { 1 - here } else { here };
            match colors.get(&other) {
                Some(&c) if c != want => return Err(DiscError::SidesInconsistent),
                Some(_) => {}
                None => {
                    colors.insert(other, want);
                    queue.push_back(other);
                }
            }
        }
    }
    let node_count = p.faces.len() + splits.len();
    if colors.len() != node_count {
        return Err(DiscError::NotSeparating);
    }

    // Pieces with all vertices on the chord line cannot be assigned a side.
    for (&face, split) in &splits {
        for piece in &split.pieces {
            let a = &piece[0];
            let b = piece.last().unwrap();
            let chord = b - a;
            let (n, _) = p.face_plane(face);
            if piece[1..piece.len() - 1]
                .iter()
                .all(|w| rsign(&chord.cross(&(w - a)).dot(&n)) == 0)
            {
                return Err(DiscError::ChordThroughVertex { face });
            }
        }
    }

    let counts = {
        let mut c = [0usize; 2];
        for &col in colors.values() {
            c[col as usize] += 1;
        }
        c
    };
    let cap_color = match cap_hint {
        Some(face) => {
            if face >= p.faces.len() || splits.contains_key(&face) {
                return Err(DiscError::BadCapHint { face });
            }
            colors[&(face, 0)]
        }
        None => match counts[0].cmp(&counts[1]) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Equal => return Err(DiscError::AmbiguousCap),
        },
    };

    let lam = ratio(1, nesting as i64 + 2);
    let center = &p.star_center;
    let shrink = |v: &V3| center.lerp(v, &lam);
    let mut polygons = Vec::new();
    for arc in arcs {
        polygons.push(vec![
            arc.start.clone(),
            arc.end.clone(),
            shrink(&arc.end),
            shrink(&arc.start),
        ]);
    }
    for arc in arcs {
        let split = &splits[&arc.face];
        for side in 0..2 {
            if colors[&(arc.face, side)] == cap_color {
                polygons.push(split.pieces[side].iter().map(&shrink).collect());
            }
        }
    }
    for (face, cycle) in p.faces.iter().enumerate() {
        if !splits.contains_key(&face) && colors[&(face, 0)] == cap_color {
            polygons.push(cycle.iter().map(|&v| shrink(&p.vertices[v])).collect());
        }
    }
    Ok(FlatDisc {
        polygons,
        boundary: arcs.iter().map(|a| a.start.clone()).collect(),
        nesting,
    })
}

fn line_interval(poly: &[V3], n: &V3, d: &Rat, dir: &V3) -> Option<(Rat, Rat)> {
    let f: Vec<Rat> = poly.iter().map(|v| n.dot(v) - d).collect();
    let signs: Vec<i8> = f.iter().map(rsign).collect();
    if signs.iter().all(|&s| s > 0) || signs.iter().all(|&s| s < 0) {
        return None;
    }
    let mut params: Vec<Rat> = Vec::new();
    let m = poly.len();
    for i in 0..m {
        if signs[i] == 0 {
            params.push(poly[i].dot(dir));
        }
        let j = (i + 1) % m;
        if signs[i] * signs[j] == -1 {
            let t = &f[i] / (&f[i] - &f[j]);
            params.push(poly[i].lerp(&poly[j], &t).dot(dir));
        }
    }
    let lo = params.iter().min().cloned()?;
    let hi = params.iter().max().cloned()?;
    Some((lo, hi))
}

fn separated_by_edge(p: &[V3], q: &[V3], n: &V3) -> bool {
    let m = p.len();
    'edges: for i in 0..m {
        let a = &p[i];
        let e = &p[(i + 1) % m] - a;
        let side = |w: &V3| rsign(&e.cross(&(w - a)).dot(n));
        let Some(sp) = p.iter().map(&side).find(|&s| s != 0) else {
            continue;
        };
        for w in q {
            if side(w) != -sp {
                continue 'edges;
            }
        }
        return true;
    }
    false
}

/// Whether two convex planar polygons, taken as closed regions, have no
/// common point.  Touching along an edge or at a single vertex counts as
/// meeting.
pub fn polygons_disjoint(p: &[V3], q: &[V3]) -> bool {
    assert!(p.len() >= 3 && q.len() >= 3, "polygons need three vertices");
    let np = (&p[1] - &p[0]).cross(&(&p[2] - &p[0]));
    let nq = (&q[1] - &q[0]).cross(&(&q[2] - &q[0]));
    let dp = np.dot(&p[0]);
    let dq = nq.dot(&q[0]);
    let dir = np.cross(&nq);
    if dir == V3::zero() {
        if nq.dot(&p[0]) != dq {
            return true;
        }
        return separated_by_edge(p, q, &nq) || separated_by_edge(q, p, &nq);
    }
    let (Some(ip), Some(iq)) = (
        line_interval(p, &nq, &dq, &dir),
        line_interval(q, &np, &dp, &dir),
    ) else {
        return true;
    };
    ip.0.max(iq.0) > ip.1.min(iq.1)
}
