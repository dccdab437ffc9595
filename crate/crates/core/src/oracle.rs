//! Exact equitable-colorability by exhaustive backtracking.
//!
//! This module deliberately depends on nothing but the explicit graph model,
//! so its answers can arbitrate the closed forms and the constructive
//! colorer.

use crate::error::{Error, Result};
use crate::graphs::{verify_coloring, Coloring, Graph};

/// Default node budget for a single decision.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest graph the bitmask search accepts.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub k: usize,
    pub feasible: bool,
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
}

struct Search<'a> {
    order: Vec<usize>,
    adj: &'a [u64],
    capacity: Vec<usize>,
    /// First class index of each capacity group; classes of a group are
    /// opened in index order.
    group_of: Vec<usize>,
    group_start: Vec<usize>,
    opened: Vec<usize>,
    blocked: Vec<u64>,
    size: Vec<usize>,
    color: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, unassigned: u64) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        if pos == self.order.len() {
            return Ok(true);
        }
        let v = self.order[pos];
        let bit = 1u64 << v;
        let rest = unassigned & !bit;
        for c in 0..self.capacity.len() {
            if self.size[c] == self.capacity[c] || self.blocked[c] & bit != 0 {
                continue;
            }
            let group = self.group_of[c];
            let fresh = self.size[c] == 0;
            if fresh && c != self.group_start[group] + self.opened[group] {
                continue;
            }

            let saved = self.blocked[c];
            self.blocked[c] |= self.adj[v];
            self.size[c] += 1;
            if fresh {
                self.opened[group] += 1;
            }
            self.color[v] = c;

            if self.fillable(rest) && self.run(pos + 1, rest)? {
                return Ok(true);
            }

            if fresh {
                self.opened[group] -= 1;
            }
            self.size[c] -= 1;
            self.blocked[c] = saved;
        }
        Ok(false)
    }

    /// Every class must still see enough compatible unassigned vertices to
    /// reach its capacity.
    fn fillable(&self, unassigned: u64) -> bool {
        (0..self.capacity.len()).all(|c| {
            let room = self.capacity[c] - self.size[c];
            room == 0 || (unassigned & !self.blocked[c]).count_ones() as usize >= room
        })
    }
}

fn check_size(g: &Graph) -> Result<()> {
    if g.vertex_count() > MAX_VERTICES {
        return Err(Error::GraphTooLarge {
            vertices: g.vertex_count(),
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

/// Decides whether `g` has an equitable `k`-coloring.
///
/// Classes get capacities `ceil(N/k)` (for `N mod k` of them) and
/// `floor(N/k)`; vertices are placed in descending-degree order, and within
/// a group of equal capacities classes are opened in index order.
pub fn k_colorable(g: &Graph, k: usize, budget: u64) -> Result<OracleResult> {
    check_size(g)?;
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let nv = g.vertex_count();
    if k >= nv {
        // One vertex per class, remaining classes empty.
        let witness = Coloring::new((0..nv).collect(), k)?;
        return Ok(OracleResult {
            k,
            feasible: true,
            witness: Some(witness),
            nodes_explored: 0,
        });
    }

    let q = nv / k;
    let big = nv % k;
    let capacity: Vec<usize> = (0..k).map(|c| if c < big { q + 1 } else { q }).collect();
    let group_of: Vec<usize> = (0..k).map(|c| usize::from(c >= big)).collect();
    let adj: Vec<u64> = (0..nv).map(|v| g.row_mask(v)).collect();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut search = Search {
        order,
        adj: &adj,
        capacity,
        group_of,
        group_start: vec![0, big],
        opened: vec![0, 0],
        blocked: vec![0; k],
        size: vec![0; k],
        color: vec![0; nv],
        nodes: 0,
        budget,
    };
    let all = if nv == 64 { u64::MAX } else { (1u64 << nv) - 1 };
    let feasible = search.run(0, all)?;
    let witness = if feasible {
        let c = Coloring::new(search.color.clone(), k)?;
        debug_assert!(verify_coloring(g, &c).map(|v| v.is_ok()).unwrap_or(false));
        Some(c)
    } else {
        None
    };
    Ok(OracleResult {
        k,
        feasible,
        witness,
        nodes_explored: search.nodes,
    })
}

/// `k_colorable` for every `k` in `1..=N`.
pub fn feasibility_profile(g: &Graph, budget: u64) -> Result<Vec<OracleResult>> {
    (1..=g.vertex_count().max(1))
        .map(|k| k_colorable(g, k, budget))
        .collect()
}

/// Least `k` admitting an equitable `k`-coloring.
pub fn chi_eq_exact(g: &Graph, budget: u64) -> Result<usize> {
    for k in 1..=g.vertex_count() {
        if k_colorable(g, k, budget)?.feasible {
            return Ok(k);
        }
    }
    Ok(1)
}

/// Least `t` such that every `k >= t` admits an equitable `k`-coloring.
/// Every `k >= N` is feasible, so the scan runs downward from `N`.
pub fn chi_eq_star_exact(g: &Graph, budget: u64) -> Result<usize> {
    for k in (1..g.vertex_count()).rev() {
        if !k_colorable(g, k, budget)?.feasible {
            return Ok(k + 1);
        }
    }
    Ok(1)
}

/// Reads `chi_eq` and `chi_eq_star` off a profile for `k = 1..=N`.
pub fn thresholds_from_profile(profile: &[OracleResult]) -> (usize, usize) {
    let chi = profile.iter().find(|r| r.feasible).map_or(1, |r| r.k);
    let star = profile.iter().rev().find(|r| !r.feasible).map_or(1, |r| r.k + 1);
    (chi, star)
}
