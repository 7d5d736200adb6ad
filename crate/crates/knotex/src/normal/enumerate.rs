//! Exhaustive admissible-vector enumeration below a weight bound.
//!
//! Zeros are visited in breadth-first order over shared 1-handles, so by the
//! time a 0-handle is assigned most of its island demands are already pinned
//! by neighbours and the local choice space collapses to a few free counts.
//! Every leaf is re-checked by the full solver, so pruning only ever needs to
//! be sound, not sharp.

use std::collections::BTreeMap;

use crate::handles::{HandleStructure, ZeroId};

use super::census::{enumerate_disc_types, sheet_families, DiscKind, DiscType};
use super::system::{solve, NormalCoordinates};

#[derive(Debug, Clone, Copy)]
pub struct EnumLimits {
    pub max_nodes: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_nodes: 20_000_000,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration exceeded the node budget of {limit} (weight bound {bound})")]
    ResourceLimit { limit: u64, bound: u64 },
}

/// All admissible vectors of weight at most `bound`, deterministically
/// ordered, including the empty vector.
pub fn enumerate_admissible(
    h: &HandleStructure,
    bound: u64,
) -> Result<Vec<NormalCoordinates>, EnumError> {
    enumerate_admissible_with_limit(h, bound, EnumLimits::default())
}

pub fn enumerate_admissible_with_limit(
    h: &HandleStructure,
    bound: u64,
    limits: EnumLimits,
) -> Result<Vec<NormalCoordinates>, EnumError> {
    let census = enumerate_disc_types(h);
    let nz = h.zeros.len();

    // Breadth-first order over 1-handle adjacency.
    let mut adj: Vec<Vec<ZeroId>> = vec![Vec::new(); nz];
    for one in &h.ones {
        let [a, b] = one.ends;
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut order = Vec::with_capacity(nz);
    let mut seen = vec![false; nz];
    for root in 0..nz {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &n in &adj[q] {
                if !seen[n] {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
    }
    let mut pos_of = vec![0usize; nz];
    for (i, &q) in order.iter().enumerate() {
        pos_of[q] = i;
    }

    let types_of: Vec<Vec<usize>> = (0..nz)
        .map(|q| {
            census
                .iter()
                .enumerate()
                .filter(|(_, d)| d.zero == q)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    let mut search = Search {
        h,
        census: &census,
        order,
        pos_of,
        types_of,
        x: vec![0u64; census.len()],
        weight: 0,
        bound,
        nodes: 0,
        limit: limits.max_nodes,
        out: Vec::new(),
    };
    search.zero_step(0)?;
    let mut out = search.out;
    out.sort_by(|a, b| a.counts.cmp(&b.counts));
    out.dedup();
    Ok(out)
}

struct Search<'a> {
    h: &'a HandleStructure,
    census: &'a [DiscType],
    order: Vec<ZeroId>,
    pos_of: Vec<usize>,
    types_of: Vec<Vec<usize>>,
    x: Vec<u64>,
    weight: u64,
    bound: u64,
    nodes: u64,
    limit: u64,
    out: Vec<NormalCoordinates>,
}

impl<'a> Search<'a> {
    fn bump(&mut self) -> Result<(), EnumError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(EnumError::ResourceLimit {
                limit: self.limit,
                bound: self.bound,
            });
        }
        Ok(())
    }

    /// Demand already placed on an island family by assigned zeros.
    fn demand(&self, island: (usize, usize), sides: [usize; 2]) -> u64 {
        self.census
            .iter()
            .zip(&self.x)
            .filter(|(d, _)| d.chord_at(island) == Some(sides))
            .map(|(_, &c)| c)
            .sum()
    }

    /// Sound lower bound on the weight still to be spent on zeros from
    /// `depth` on, given demands pinned by earlier assignments.
    fn future_min(&self, depth: usize) -> u64 {
        let mut total = 0;
        for &q in &self.order[depth..] {
            // Every disc is a simple cycle, so it meets each island at most
            // once: the disc count at q is at least any single island's
            // demand, and at least the summed demand spread over all islands.
            let islands = self.h.islands_at(q);
            let mut need = 0u64;
            let mut sum = 0u64;
            for &(one, e) in &islands {
                let other_zero = self.h.ones[one].ends[1 - e];
                if self.pos_of[other_zero] >= depth {
                    continue;
                }
                let mut island_total = 0u64;
                for fam in sheet_families(self.h, one) {
                    island_total += self.demand((one, 1 - e), fam.sides);
                }
                need = need.max(island_total);
                sum += island_total;
            }
            let cap = islands.len() as u64;
            if cap > 0 {
                need = need.max((sum + cap - 1) / cap);
            }
            total += need;
        }
        total
    }

    fn zero_step(&mut self, depth: usize) -> Result<(), EnumError> {
        if depth == self.order.len() {
            let v = NormalCoordinates {
                counts: self.x.clone(),
            };
            if solve(self.h, self.census, &v).is_ok() {
                self.out.push(v);
            }
            return Ok(());
        }
        self.bump()?;
        let q = self.order[depth];

        // Pinned equations: islands whose other end is already assigned.
        // Each (island, family) has at most one triangle and one square user.
        struct Pin {
            demand: u64,
            tri: Option<usize>,
            sq: Option<usize>,
        }
        let mut pins: Vec<Pin> = Vec::new();
        for (one, e) in self.h.islands_at(q) {
            let other_zero = self.h.ones[one].ends[1 - e];
            if self.pos_of[other_zero] >= depth {
                continue;
            }
            for fam in sheet_families(self.h, one) {
                let demand = self.demand((one, 1 - e), fam.sides);
                let mut tri = None;
                let mut sq = None;
                for &t in &self.types_of[q] {
                    if self.census[t].chord_at((one, e)) == Some(fam.sides) {
                        match self.census[t].kind {
                            DiscKind::Triangle { .. } => tri = Some(t),
                            DiscKind::Square { .. } => sq = Some(t),
                        }
                    }
                }
                pins.push(Pin { demand, tri, sq });
            }
        }

        let budget = (self.bound - self.weight).saturating_sub(self.future_min(depth + 1));
        let squares: Vec<usize> = self.types_of[q]
            .iter()
            .copied()
            .filter(|&t| matches!(self.census[t].kind, DiscKind::Square { .. }))
            .collect();
        let triangles: Vec<usize> = self.types_of[q]
            .iter()
            .copied()
            .filter(|&t| matches!(self.census[t].kind, DiscKind::Triangle { .. }))
            .collect();

        // Square selection: none, or one square type with a positive count.
        let mut selections: Vec<Option<(usize, u64)>> = vec![None];
        for &s in &squares {
            for c in 1..=budget {
                selections.push(Some((s, c)));
            }
        }

        'sel: for sel in selections {
            self.bump()?;
            let sq_weight = sel.map_or(0, |(_, c)| c);
            if sq_weight > budget {
                continue;
            }
            // Solve the pinned equations for triangle counts.
            let mut fixed: BTreeMap<usize, u64> = BTreeMap::new();
            for p in &pins {
                let sq_part = match (sel, p.sq) {
                    (Some((s, c)), Some(u)) if s == u => c,
                    _ => 0,
                };
                if sq_part > p.demand {
                    continue 'sel;
                }
                let rhs = p.demand - sq_part;
                match p.tri {
                    Some(t) => match fixed.get(&t) {
                        Some(&prev) if prev != rhs => continue 'sel,
                        _ => {
                            fixed.insert(t, rhs);
                        }
                    },
                    None if rhs != 0 => continue 'sel,
                    None => {}
                }
            }
            let fixed_weight: u64 = fixed.values().sum();
            if sq_weight + fixed_weight > budget {
                continue;
            }
            let free: Vec<usize> = triangles
                .iter()
                .copied()
                .filter(|t| !fixed.contains_key(t))
                .collect();

            // Apply the determined part.
            if let Some((s, c)) = sel {
                self.x[s] = c;
            }
            for (&t, &c) in &fixed {
                self.x[t] = c;
            }
            let base = sq_weight + fixed_weight;
            self.weight += base;
            let r = self.free_step(depth, &free, 0, budget - base);
            self.weight -= base;
            if let Some((s, _)) = sel {
                self.x[s] = 0;
            }
            for (&t, _) in &fixed {
                self.x[t] = 0;
            }
            r?;
        }
        Ok(())
    }

    fn free_step(
        &mut self,
        depth: usize,
        free: &[usize],
        i: usize,
        budget: u64,
    ) -> Result<(), EnumError> {
        if i == free.len() {
            return self.zero_step(depth + 1);
        }
        self.bump()?;
        for c in 0..=budget {
            self.x[free[i]] = c;
            self.weight += c;
            let r = self.free_step(depth, free, i + 1, budget - c);
            self.weight -= c;
            self.x[free[i]] = 0;
            r?;
        }
        Ok(())
    }
}
