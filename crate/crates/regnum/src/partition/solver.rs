//! Backtracking search for a regular edge partition with at most `t` parts.
//!
//! Each edge gets a part label. A part `p` has an (initially unknown)
//! regularity `r_p`; every vertex incident to `p` must end with exactly
//! `r_p` edges in `p`. The search keeps an interval [lo, hi] for each `r_p`,
//! tightened as vertices fill up, and runs deductions to a fixpoint:
//!
//!   - a fully assigned vertex pins `r_p` for every part it touches;
//!   - a vertex whose free edges exactly cover the deficit of one touched
//!     part sends all of them there (this subsumes the monochromatic-vertex
//!     rule when the deficit is its whole degree);
//!   - a vertex saturated for `p` forbids `p` on its free edges, as does a
//!     vertex that can no longer reach `r_p` from zero; an edge left with a
//!     single viable label is assigned immediately.
//!
//! Part-permutation symmetry is broken by letting an edge open at most one
//! fresh part index.

use crate::budget::{Budget, BudgetExceeded, SearchStats};
use crate::graph::{EdgeIndex, Graph};

/// Hard cap so per-edge forbidden sets fit in a bitmask. reg <= chi' <= Δ+1,
/// so desk-scale instances stay far below this.
pub const MAX_PARTS: usize = 16;

pub enum AtMostOutcome {
    /// Parts listed by ascending first edge index, each sorted.
    Yes(Vec<Vec<EdgeIndex>>),
    /// Search space exhausted: no partition into at most `t` parts exists.
    No,
}

#[derive(Clone)]
struct State {
    t: usize,
    labels: Vec<i8>,
    count: Vec<u16>,
    unassigned: Vec<u16>,
    r_lo: Vec<u16>,
    r_hi: Vec<u16>,
    forbidden: Vec<u16>,
    open: usize,
}

struct Searcher<'g> {
    g: &'g Graph,
    order: Vec<EdgeIndex>,
    budget: Budget,
    stats: SearchStats,
}

pub fn search_at_most(
    g: &Graph,
    t: usize,
    budget: Budget,
) -> Result<(AtMostOutcome, SearchStats), BudgetExceeded> {
    assert!((1..=MAX_PARTS).contains(&t));
    let m = g.edge_count();
    if m == 0 {
        return Ok((AtMostOutcome::Yes(Vec::new()), SearchStats::default()));
    }
    let max_deg = g.max_degree() as u16;

    // Branch vertex-major, highest degree first: completing one vertex's
    // star pins the regularity of every part it touches, and the largest
    // stars pin the most at once. Ties and the within-star sequence follow
    // construction order, so runs are reproducible.
    let mut verts: Vec<usize> = (0..g.vertex_count()).collect();
    verts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut order: Vec<EdgeIndex> = Vec::with_capacity(m);
    let mut queued = vec![false; m];
    for &v in &verts {
        for &(_, e) in g.incident(v) {
            if !queued[e] {
                queued[e] = true;
                order.push(e);
            }
        }
    }

    let mut searcher = Searcher {
        g,
        order,
        budget,
        stats: SearchStats::default(),
    };
    let state = State {
        t,
        labels: vec![-1; m],
        count: vec![0; g.vertex_count() * t],
        unassigned: (0..g.vertex_count()).map(|v| g.degree(v) as u16).collect(),
        r_lo: vec![1; t],
        r_hi: vec![max_deg.max(1); t],
        forbidden: vec![0; m],
        open: 0,
    };
    let result = searcher.search(state)?;
    let outcome = match result {
        Some(labels) => AtMostOutcome::Yes(parts_from_labels(&labels)),
        None => AtMostOutcome::No,
    };
    Ok((outcome, searcher.stats))
}

fn parts_from_labels(labels: &[i8]) -> Vec<Vec<EdgeIndex>> {
    let used = labels
        .iter()
        .map(|&l| l as usize)
        .max()
        .map_or(0, |p| p + 1);
    let mut parts = vec![Vec::new(); used];
    for (e, &l) in labels.iter().enumerate() {
        parts[l as usize].push(e);
    }
    // Branch order is not index order, so canonicalize: parts by first edge.
    parts.sort_by_key(|part| part[0]);
    parts
}

impl State {
    fn count_at(&self, v: usize, p: usize) -> u16 {
        self.count[v * self.t + p]
    }

    fn assign(&mut self, e: EdgeIndex, p: usize, g: &Graph) {
        debug_assert!(self.labels[e] < 0);
        debug_assert!(p <= self.open && p < self.t);
        self.labels[e] = p as i8;
        if p == self.open {
            self.open += 1;
        }
        let (u, v) = g.endpoints(e);
        self.count[u * self.t + p] += 1;
        self.count[v * self.t + p] += 1;
        self.unassigned[u] -= 1;
        self.unassigned[v] -= 1;
    }

    /// Surviving label choices for a free edge: open parts not yet forbidden,
    /// plus one fresh part if any remain.
    fn allowed(&self, e: EdgeIndex) -> (u16, bool) {
        let open_mask = if self.open >= 16 {
            !0u16
        } else {
            (1u16 << self.open) - 1
        };
        (open_mask & !self.forbidden[e], self.open < self.t)
    }
}

impl<'g> Searcher<'g> {
    fn search(&mut self, mut state: State) -> Result<Option<Vec<i8>>, BudgetExceeded> {
        self.stats.charge_node(self.budget)?;
        if !self.propagate(&mut state) {
            return Ok(None);
        }
        let Some(&edge) = self.order.iter().find(|&&e| state.labels[e] < 0) else {
            return Ok(Some(state.labels));
        };
        let last = state.open.min(state.t - 1);
        for p in 0..=last {
            if state.forbidden[edge] & (1 << p) != 0 {
                continue;
            }
            let mut child = state.clone();
            child.assign(edge, p, self.g);
            if let Some(solution) = self.search(child)? {
                return Ok(Some(solution));
            }
        }
        Ok(None)
    }

    /// Monotone fixpoint over all deduction rules; `false` means conflict.
    fn propagate(&mut self, state: &mut State) -> bool {
        loop {
            self.stats.propagations += 1;
            let mut changed = false;
            for v in 0..self.g.vertex_count() {
                if !self.propagate_vertex(state, v, &mut changed) {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn propagate_vertex(&self, state: &mut State, v: usize, changed: &mut bool) -> bool {
        let u = state.unassigned[v];
        let mut deficit_total: u16 = 0;
        let mut forced_part: Option<usize> = None;
        for p in 0..state.open {
            let c = state.count_at(v, p);
            if c == 0 {
                // v might still join p, but only if its free edges suffice.
                if u > 0 && u < state.r_lo[p] && !self.forbid(state, v, p, changed) {
                    return false;
                }
                continue;
            }
            if c > state.r_hi[p] {
                return false;
            }
            if c > state.r_lo[p] {
                state.r_lo[p] = c;
                *changed = true;
            }
            if c + u < state.r_hi[p] {
                state.r_hi[p] = c + u;
                *changed = true;
            }
            if u == 0 {
                if state.r_lo[p] > c {
                    return false;
                }
                if state.r_lo[p] < c {
                    state.r_lo[p] = c;
                    *changed = true;
                }
                if state.r_hi[p] > c {
                    state.r_hi[p] = c;
                    *changed = true;
                }
            }
            if state.r_lo[p] > state.r_hi[p] {
                return false;
            }
            let deficit = state.r_lo[p] - c;
            deficit_total += deficit;
            if deficit > 0 && deficit == u {
                forced_part = Some(p);
            }
        }
        if deficit_total > u {
            return false;
        }
        if let Some(p) = forced_part {
            // deficit_total <= u and this part alone needs u, so every free
            // edge at v goes to p.
            for (_, e) in self.g.incident(v).to_vec() {
                if state.labels[e] < 0 {
                    if state.forbidden[e] & (1 << p) != 0 {
                        return false;
                    }
                    state.assign(e, p, self.g);
                    *changed = true;
                }
            }
            return true;
        }
        // Saturation: v cannot take further p-edges.
        for p in 0..state.open {
            let c = state.count_at(v, p);
            if u > 0 && c > 0 && c == state.r_hi[p] && !self.forbid(state, v, p, changed) {
                return false;
            }
        }
        true
    }

    /// Forbids label `p` on every free edge at `v`, assigning edges that are
    /// left with a single choice. `false` on wipeout.
    fn forbid(&self, state: &mut State, v: usize, p: usize, changed: &mut bool) -> bool {
        for (_, e) in self.g.incident(v).to_vec() {
            if state.labels[e] >= 0 || state.forbidden[e] & (1 << p) != 0 {
                continue;
            }
            state.forbidden[e] |= 1 << p;
            *changed = true;
            let (mask, fresh) = state.allowed(e);
            match (mask.count_ones(), fresh) {
                (0, false) => return false,
                (0, true) => {
                    let fresh_index = state.open;
                    state.assign(e, fresh_index, self.g);
                }
                (1, false) => {
                    state.assign(e, mask.trailing_zeros() as usize, self.g);
                }
                _ => {}
            }
        }
        true
    }
}
