//! Putting boundary curves into standard position.
//!
//! A curve on the knot-boundary surface is a set of skeleton edges forming a
//! 1-cycle mod 2.  Straightening replaces it by a simple cycle in the same
//! homology class that meets every block sphere in at most one arc and runs
//! along at most one corner line of any 1-handle.

use std::collections::{BTreeMap, BTreeSet};

use crate::handles::boundary::{boundary_faces, BoundaryError, EdgeKey, VertexKey};
use crate::handles::{FreeLabel, HandleStructure, ZeroId};
use crate::normal::cut::UnionFind;

#[derive(Debug, thiserror::Error)]
pub enum StraightenError {
    #[error("target is not a one-cycle on the knot boundary: {0}")]
    NotACycle(String),
    #[error("no simple standard representative of the class within the allowed edges")]
    UnrealizableClass,
    #[error("straightening search exceeded {steps} steps")]
    SearchLimit { steps: usize },
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
}

struct Skeleton {
    ends: BTreeMap<EdgeKey, [VertexKey; 2]>,
    adj: BTreeMap<VertexKey, Vec<(EdgeKey, VertexKey)>>,
    /// Face-boundary span in echelon form, keyed by pivot edge.
    basis: BTreeMap<EdgeKey, BTreeSet<EdgeKey>>,
}

fn sym_diff(a: &BTreeSet<EdgeKey>, b: &BTreeSet<EdgeKey>) -> BTreeSet<EdgeKey> {
    a.symmetric_difference(b).copied().collect()
}

fn reduce(basis: &BTreeMap<EdgeKey, BTreeSet<EdgeKey>>, mut v: BTreeSet<EdgeKey>) -> BTreeSet<EdgeKey> {
    while let Some(&m) = v.iter().next() {
        match basis.get(&m) {
            Some(b) => v = sym_diff(&v, b),
            None => break,
        }
    }
    v
}

fn skeleton(h: &HandleStructure) -> Result<Skeleton, StraightenError> {
    let faces = boundary_faces(h)?;
    let mut ends: BTreeMap<EdgeKey, [VertexKey; 2]> = BTreeMap::new();
    let mut adj: BTreeMap<VertexKey, Vec<(EdgeKey, VertexKey)>> = BTreeMap::new();
    let mut basis: BTreeMap<EdgeKey, BTreeSet<EdgeKey>> = BTreeMap::new();
    for f in faces.iter().filter(|f| f.label == FreeLabel::Bdry) {
        let mut cls: BTreeSet<EdgeKey> = BTreeSet::new();
        for &(e, u, v) in &f.cycle {
            if ends.insert(e, [u, v]).is_none() {
                adj.entry(u).or_default().push((e, v));
                adj.entry(v).or_default().push((e, u));
            }
            if !cls.remove(&e) {
                cls.insert(e);
            }
        }
        let r = reduce(&basis, cls);
        if let Some(&p) = r.iter().next() {
            basis.insert(p, r);
        }
    }
    for nbrs in adj.values_mut() {
        nbrs.sort_unstable();
    }
    Ok(Skeleton { ends, adj, basis })
}

/// Whether two edge sets on the knot-boundary surface bound together, i.e.
/// differ by a sum of face boundaries.
pub fn same_class(
    h: &HandleStructure,
    a: &BTreeSet<EdgeKey>,
    b: &BTreeSet<EdgeKey>,
) -> Result<bool, StraightenError> {
    let sk = skeleton(h)?;
    Ok(reduce(&sk.basis, sym_diff(a, b)).is_empty())
}

fn zero_of(h: &HandleStructure, e: EdgeKey) -> Option<ZeroId> {
    match e {
        EdgeKey::Side { zero, .. } => Some(zero),
        EdgeKey::Flank { bridge, .. } => Some(h.bridges[bridge].zero),
        EdgeKey::Corner { .. } => None,
    }
}

/// Arcs only: within each 0-handle the cycle's sphere edges must form one
/// connected arc, never a loop and never several strands.
fn zero_arcs_ok(h: &HandleStructure, sk: &Skeleton, cycle: &BTreeSet<EdgeKey>) -> bool {
    let mut by_zero: BTreeMap<ZeroId, Vec<EdgeKey>> = BTreeMap::new();
    for &e in cycle {
        if let Some(z) = zero_of(h, e) {
            by_zero.entry(z).or_default().push(e);
        }
    }
    for group in by_zero.values() {
        let mut verts: BTreeMap<VertexKey, usize> = BTreeMap::new();
        for &e in group {
            for v in sk.ends[&e] {
                let next = verts.len();
                verts.entry(v).or_insert(next);
            }
        }
        let mut uf = UnionFind::new(verts.len());
        for &e in group {
            let [u, v] = sk.ends[&e];
            uf.union(verts[&u], verts[&v]);
        }
        let roots: BTreeSet<usize> = (0..verts.len()).map(|i| uf.find(i)).collect();
        if roots.len() != 1 || verts.len() != group.len() + 1 {
            return false;
        }
    }
    true
}

fn corner_ok(cycle: &BTreeSet<EdgeKey>) -> bool {
    let mut seen = BTreeSet::new();
    for &e in cycle {
        if let EdgeKey::Corner { one, .. } = e {
            if !seen.insert(one) {
                return false;
            }
        }
    }
    true
}

const WORK_CAP: usize = 400_000;

struct Search<'a> {
    h: &'a HandleStructure,
    sk: &'a Skeleton,
    allowed: BTreeSet<EdgeKey>,
    want: BTreeSet<EdgeKey>,
    work: usize,
}

impl Search<'_> {
    /// Depth-first extension of a simple path; edges stay above the start
    /// edge so every cycle is enumerated once, from its least edge.
    fn dfs(
        &mut self,
        start_edge: EdgeKey,
        start_vert: VertexKey,
        head: VertexKey,
        path: &mut BTreeSet<EdgeKey>,
        visited: &mut BTreeSet<VertexKey>,
        limit: usize,
    ) -> Result<Option<BTreeSet<EdgeKey>>, StraightenError> {
        if head == start_vert {
            if reduce(&self.sk.basis, sym_diff(path, &self.want)).is_empty()
                && corner_ok(path)
                && zero_arcs_ok(self.h, self.sk, path)
            {
                return Ok(Some(path.clone()));
            }
            return Ok(None);
        }
        if path.len() >= limit {
            return Ok(None);
        }
        let nbrs = match self.sk.adj.get(&head) {
            Some(n) => n.clone(),
            None => return Ok(None),
        };
        for (e, next) in nbrs {
            self.work += 1;
            if self.work > WORK_CAP {
                return Err(StraightenError::SearchLimit { steps: self.work });
            }
            if e <= start_edge || !self.allowed.contains(&e) || path.contains(&e) {
                continue;
            }
            if next != start_vert && visited.contains(&next) {
                continue;
            }
            path.insert(e);
            visited.insert(next);
            if !corner_ok(path) {
                path.remove(&e);
                visited.remove(&next);
                continue;
            }
            let hit = self.dfs(start_edge, start_vert, next, path, visited, limit)?;
            path.remove(&e);
            visited.remove(&next);
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }
}

/// Finds a simple standard-position cycle homologous to the target.
///
/// The target may self-cross or fall into several loops; the result is a
/// single embedded cycle in the same class, meeting each block sphere in at
/// most one arc and each 1-handle in at most one corner line.  When
/// `allowed` is given the result only uses those edges.
pub fn straighten_boundary_curve(
    h: &HandleStructure,
    target: &BTreeSet<EdgeKey>,
    allowed: Option<&BTreeSet<EdgeKey>>,
) -> Result<BTreeSet<EdgeKey>, StraightenError> {
    let sk = skeleton(h)?;
    for &e in target {
        if !sk.ends.contains_key(&e) {
            return Err(StraightenError::NotACycle(format!(
                "edge {e:?} is not on the knot boundary"
            )));
        }
    }
    let mut deg: BTreeMap<VertexKey, usize> = BTreeMap::new();
    for &e in target {
        for v in sk.ends[&e] {
            *deg.entry(v).or_insert(0) += 1;
        }
    }
    if let Some((v, d)) = deg.iter().find(|(_, &d)| d % 2 != 0) {
        return Err(StraightenError::NotACycle(format!(
            "vertex {v:?} has odd degree {d}"
        )));
    }

    let allowed: BTreeSet<EdgeKey> = match allowed {
        Some(a) => a.iter().copied().filter(|e| sk.ends.contains_key(e)).collect(),
        None => sk.ends.keys().copied().collect(),
    };
    let want = reduce(&sk.basis, target.clone());

    let mut search = Search {
        h,
        sk: &sk,
        allowed: allowed.clone(),
        want,
        work: 0,
    };
    let mut limit = 8;
    loop {
        for &e in &allowed {
            let [u, v] = sk.ends[&e];
            let mut path: BTreeSet<EdgeKey> = [e].into_iter().collect();
            let mut visited: BTreeSet<VertexKey> = [v].into_iter().collect();
            if let Some(cycle) = search.dfs(e, u, v, &mut path, &mut visited, limit)? {
                return Ok(cycle);
            }
        }
        if limit >= allowed.len() {
            return Err(StraightenError::UnrealizableClass);
        }
        limit *= 2;
    }
}
