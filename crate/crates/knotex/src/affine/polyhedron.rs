//! Exact polyhedra with convex planar faces, star-shaped about a marked
//! interior point, and the canonical corner-block solid used for 0-handles.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::geom::{rat, ratio, Rat, V3};

/// What a face of the corner block models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaceRole {
    /// Meets the 1-handle at the given local island index.
    Island(usize),
    /// Meets the 2-handle strip running between islands `.0 < .1`.
    Bridge(usize, usize),
    /// Piece of the free boundary patch opposite island `patch`.
    Patch { patch: usize, piece: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePolyhedron {
    pub vertices: Vec<V3>,
    /// Faces as vertex cycles, wound so the plane normal points outward.
    pub faces: Vec<Vec<usize>>,
    /// Point strictly on the inner side of every face plane.
    pub star_center: V3,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyhedronError {
    #[error("face {face} has fewer than three vertices or repeats one")]
    FaceTooSmall { face: usize },
    #[error("face {face} opens with collinear vertices")]
    DegenerateFace { face: usize },
    #[error("face {face} leaves its spanning plane")]
    NonPlanarFace { face: usize },
    #[error("face {face} has a reflex or straight corner")]
    NonConvexFace { face: usize },
    #[error("star center is not strictly inside the plane of face {face}")]
    NotStarShaped { face: usize },
    #[error("edge {a}-{b} is not shared by exactly two opposite face traversals")]
    BadEdge { a: usize, b: usize },
    #[error("cell counts {v}-{e}+{f} do not close up a sphere")]
    NotSphere { v: usize, e: usize, f: usize },
}

impl AffinePolyhedron {
    /// Outward plane of a face: `normal`·x = `offset` on the face and
    /// `normal`·star_center < `offset` when the winding is valid.
    pub fn face_plane(&self, face: usize) -> (V3, Rat) {
        let f = &self.faces[face];
        let a = &self.vertices[f[0]];
        let b = &self.vertices[f[1]];
        let c = &self.vertices[f[2]];
        let n = (b - a).cross(&(c - a));
        let d = n.dot(a);
        (n, d)
    }

    pub fn validate(&self) -> Result<(), PolyhedronError> {
        let mut edges: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        let mut used = vec![false; self.vertices.len()];
        for (fi, cycle) in self.faces.iter().enumerate() {
            let m = cycle.len();
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if m < 3 || sorted.len() != m {
                return Err(PolyhedronError::FaceTooSmall { face: fi });
            }
            let (n, d) = self.face_plane(fi);
            if n == V3::zero() {
                return Err(PolyhedronError::DegenerateFace { face: fi });
            }
            for &v in cycle {
                used[v] = true;
                if self.vertices[v].dot(&n) != d {
                    return Err(PolyhedronError::NonPlanarFace { face: fi });
                }
            }
            if self.star_center.dot(&n) >= d {
                return Err(PolyhedronError::NotStarShaped { face: fi });
            }
            for k in 0..m {
                let p = &self.vertices[cycle[k]];
                let q = &self.vertices[cycle[(k + 1) % m]];
                let r = &self.vertices[cycle[(k + 2) % m]];
                let turn = (q - p).cross(&(r - q)).dot(&n);
                if turn <= rat(0) {
                    return Err(PolyhedronError::NonConvexFace { face: fi });
                }
                *edges.entry((cycle[k], cycle[(k + 1) % m])).or_insert(0) += 1;
            }
        }
        for (&(a, b), &count) in &edges {
            if count != 1 || edges.get(&(b, a)) != Some(&1) {
                return Err(PolyhedronError::BadEdge { a, b });
            }
        }
        let v = used.iter().filter(|u| **u).count();
        let e = edges.len() / 2;
        let f = self.faces.len();
        if v + f != e + 2 {
            return Err(PolyhedronError::NotSphere { v, e, f });
        }
        Ok(())
    }

    /// Image under the dilation about the star center with the given ratio.
    pub fn dilate(&self, lambda: &Rat) -> AffinePolyhedron {
        AffinePolyhedron {
            vertices: self
                .vertices
                .iter()
                .map(|v| self.star_center.lerp(v, lambda))
                .collect(),
            faces: self.faces.clone(),
            star_center: self.star_center.clone(),
        }
    }

    pub fn translate(&self, offset: &V3) -> AffinePolyhedron {
        AffinePolyhedron {
            vertices: self.vertices.iter().map(|v| v + offset).collect(),
            faces: self.faces.clone(),
            star_center: &self.star_center + offset,
        }
    }

    /// Undirected vertex pairs bounding faces.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for cycle in &self.faces {
            for k in 0..cycle.len() {
                let a = cycle[k];
                let b = cycle[(k + 1) % cycle.len()];
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Sign patterns of the four island planes; the bevel between islands i and j
/// is the coordinate plane on which their patterns agree.
pub const ISLAND_SIGNS: [[i64; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];

const BEVELS: [(usize, i64, usize, usize); 6] = [
    (0, 1, 0, 1),
    (0, -1, 2, 3),
    (1, 1, 0, 2),
    (1, -1, 1, 3),
    (2, 1, 0, 3),
    (2, -1, 1, 2),
];

/// The canonical 0-handle solid: a tetrahedron with corners truncated by the
/// island planes and edges bevelled by the coordinate planes, then one patch
/// corner pressed inward so the result is star-shaped but not convex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerBlock {
    pub solid: AffinePolyhedron,
    pub roles: Vec<FaceRole>,
    /// Patch whose plane each rim vertex lay on before the press.
    pub vertex_patch: Vec<usize>,
}

impl CornerBlock {
    pub fn island_face(&self, island: usize) -> usize {
        self.find(FaceRole::Island(island))
    }

    pub fn bridge_face(&self, i: usize, j: usize) -> usize {
        self.find(FaceRole::Bridge(i.min(j), i.max(j)))
    }

    pub fn patch_faces(&self, patch: usize) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| matches!(r, FaceRole::Patch { patch: p, .. } if *p == patch))
            .map(|(f, _)| f)
            .collect()
    }

    fn find(&self, role: FaceRole) -> usize {
        self.roles
            .iter()
            .position(|r| *r == role)
            .expect("corner block carries every island and bridge face")
    }

    /// The shared edge between an island face and the bevel toward `other`,
    /// as a vertex pair.
    pub fn island_bridge_edge(&self, island: usize, other: usize) -> [usize; 2] {
        let fi = &self.solid.faces[self.island_face(island)];
        let fb = &self.solid.faces[self.bridge_face(island, other)];
        let mut shared: Vec<usize> = fi.iter().filter(|v| fb.contains(v)).copied().collect();
        shared.sort_unstable();
        assert_eq!(shared.len(), 2, "island and bevel share one edge");
        [shared[0], shared[1]]
    }
}

fn signs_v3(s: [i64; 3]) -> V3 {
    V3::ints(s[0], s[1], s[2])
}

/// Cyclic order of coplanar points around their centroid, counterclockwise
/// as seen from the tip of `normal`.
fn sort_cycle(ids: &mut [usize], coords: &[V3], normal: &V3) {
    let mut centroid = V3::zero();
    for &i in ids.iter() {
        centroid = &centroid + &coords[i];
    }
    let inv = ratio(1, ids.len() as i64);
    centroid = centroid.scale(&inv);
    let u1 = &coords[ids[0]] - &centroid;
    let u2 = normal.cross(&u1);
    let key = |i: usize| -> (u8, V3) {
        let d = &coords[i] - &centroid;
        let s = d.dot(&u2);
        let half = if s > rat(0) || (s.is_zero() && d.dot(&u1) > rat(0)) {
            0
        } else {
            1
        };
        (half, d)
    };
    ids.sort_by(|&a, &b| {
        let (ha, da) = key(a);
        let (hb, db) = key(b);
        ha.cmp(&hb)
            .then_with(|| rat(0).cmp(&da.cross(&db).dot(normal)))
    });
}

pub fn corner_block() -> CornerBlock {
    let base = [2i64, 3, 5];
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut vertices = Vec::with_capacity(24);
    for signs in ISLAND_SIGNS {
        for p in perms {
            vertices.push(V3::ints(
                signs[0] * base[p[0]],
                signs[1] * base[p[1]],
                signs[2] * base[p[2]],
            ));
        }
    }
    let vertex_patch: Vec<usize> = vertices
        .iter()
        .map(|v| {
            (0..4)
                .find(|&p| signs_v3(ISLAND_SIGNS[p]).dot(v) == rat(-6))
                .expect("every rim vertex lies on one patch plane")
        })
        .collect();

    let mut faces = Vec::new();
    let mut roles = Vec::new();
    for (isl, signs) in ISLAND_SIGNS.iter().enumerate() {
        let mut ids: Vec<usize> = (isl * 6..isl * 6 + 6).collect();
        sort_cycle(&mut ids, &vertices, &signs_v3(*signs));
        faces.push(ids);
        roles.push(FaceRole::Island(isl));
    }
    for (axis, sgn, i, j) in BEVELS {
        let mut ids: Vec<usize> = (0..24)
            .filter(|&v| vertices[v].0[axis] == rat(5 * sgn))
            .collect();
        let mut n = V3::zero();
        n.0[axis] = rat(sgn);
        sort_cycle(&mut ids, &vertices, &n);
        faces.push(ids);
        roles.push(FaceRole::Bridge(i, j));
    }
    for p in 0..4 {
        let mut ids: Vec<usize> = (0..24).filter(|&v| vertex_patch[v] == p).collect();
        let n = signs_v3(ISLAND_SIGNS[p]).scale(&rat(-1));
        sort_cycle(&mut ids, &vertices, &n);
        // Rotate the hexagon to a deterministic anchor: the smallest vertex
        // on the lowest-numbered island present.
        let anchor = (0..6)
            .min_by_key(|&k| (ids[k] / 6, vertices[ids[k]].clone()))
            .unwrap();
        ids.rotate_left(anchor);
        // Strip triangulation; triangles stay planar whatever the press does.
        for (piece, tri) in [[0, 1, 2], [0, 2, 5], [2, 3, 5], [3, 4, 5]]
            .into_iter()
            .enumerate()
        {
            faces.push(tri.map(|k| ids[k]).to_vec());
            roles.push(FaceRole::Patch { patch: p, piece });
        }
    }

    // Press one rim corner inward along its island-bevel line.  Only the
    // incident patch triangles change plane; the island hexagon and the bevel
    // stay planar and convex, and the solid stops being convex.
    let pressed = vertices
        .iter()
        .position(|v| *v == V3::ints(2, 3, 5))
        .unwrap();
    vertices[pressed] = V3::new(ratio(5, 2), ratio(5, 2), rat(5));

    let solid = AffinePolyhedron {
        vertices,
        faces,
        star_center: V3::zero(),
    };
    CornerBlock {
        solid,
        roles,
        vertex_patch,
    }
}
