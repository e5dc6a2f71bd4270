//! Exact minimum-cost broadcasts by depth-first branch and bound.
//!
//! The search assigns a strength to one vertex per level. Independence is
//! checked as each strength is placed, since both notions are closed under
//! lowering strengths; maximality is only decided once every vertex has a
//! strength. A partial assignment is cut off when some undominated vertex can
//! no longer be reached by any unassigned vertex within the remaining budget,
//! or when the cheapest way of reaching the worst such vertex already
//! overshoots the cost cap.
//!
//! Sets of vertices and edges are `u128` masks, which caps the order at
//! [`MAX_VERTICES`].

use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::broadcast::{Broadcast, Strength};
use crate::construct;
use crate::split;
use crate::tree::Tree;

pub const MAX_VERTICES: usize = 128;
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Objective {
    /// Minimum dominating broadcast.
    #[serde(rename = "gamma_b")]
    GammaB,
    /// Minimum maximal bn-independent broadcast.
    #[serde(rename = "i_bn")]
    Ibn,
    /// Minimum maximal hearing independent broadcast.
    #[serde(rename = "i_h")]
    Ih,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::GammaB => "gamma_b",
            Objective::Ibn => "i_bn",
            Objective::Ih => "i_h",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes_bound: u64,
    pub prunes_independence: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.prunes_bound += other.prunes_bound;
        self.prunes_independence += other.prunes_independence;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub objective: Objective,
    pub value: u32,
    pub witness: Broadcast,
    pub stats: SearchStats,
    /// False only when the node budget ran out.
    pub optimal: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("tree of order {n} exceeds the solver limit of {cap} vertices")]
    TooLarge { n: usize, cap: usize },
    #[error("node budget exhausted; best cost found {}", .0.value)]
    BudgetExhausted(Box<SolveResult>),
}

/// Precomputed masks for one tree.
struct Masks {
    n: usize,
    all: u128,
    ecc: Vec<u32>,
    /// `sphere[v][r]`: vertices at distance exactly `r` from `v`.
    sphere: Vec<Vec<u128>>,
    /// `ball[v][s]`: vertices within distance `s` of `v`; empty for `s = 0`.
    ball: Vec<Vec<u128>>,
    /// `cover[v][s]`: edges covered by `v` at strength `s`.
    cover: Vec<Vec<u128>>,
}

impl Masks {
    fn new(t: &Tree) -> Masks {
        let n = t.n();
        debug_assert!(n <= MAX_VERTICES);
        let all = if n == 128 {
            u128::MAX
        } else {
            (1u128 << n) - 1
        };
        let ecc = t.eccentricities().to_vec();
        let mut sphere = Vec::with_capacity(n);
        let mut ball = Vec::with_capacity(n);
        let mut cover = Vec::with_capacity(n);
        for v in 0..n {
            let e = ecc[v] as usize;
            let mut sp = vec![0u128; e + 1];
            for u in 0..n {
                sp[t.dist(u, v) as usize] |= 1 << u;
            }
            let mut b = vec![0u128; e + 1];
            let mut acc = 0;
            for s in 1..=e {
                acc |= sp[s - 1];
                b[s] = acc | sp[s];
            }
            // An edge is covered at strength s iff its nearer end is within s - 1.
            let mut c = vec![0u128; e + 1];
            for (i, &(x, y)) in t.edges().iter().enumerate() {
                let near = t.dist(v, x).min(t.dist(v, y)) as usize;
                for cs in c.iter_mut().skip(near + 1) {
                    *cs |= 1 << i;
                }
            }
            sphere.push(sp);
            ball.push(b);
            cover.push(c);
        }
        Masks {
            n,
            all,
            ecc,
            sphere,
            ball,
            cover,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    /// Decreasing eccentricity, strengths tried from high to low.
    Pruning,
    /// Vertex ids ascending, strengths low to high: leaves come out in
    /// lexicographic order.
    Lexicographic,
}

enum Step {
    Continue,
    Tighten(u32),
    Stop,
}

struct Search<'a> {
    m: &'a Masks,
    objective: Objective,
    order: Vec<usize>,
    ascending: bool,
    cap: u32,
    budget: u64,
    exhausted: bool,
    stats: SearchStats,
    strengths: Vec<Strength>,
    cost: u32,
    assigned: u128,
    dominated: u128,
    covered: u128,
    broadcasters: u128,
}

impl<'a> Search<'a> {
    fn new(m: &'a Masks, objective: Objective, order: Order, cap: u32, budget: u64) -> Self {
        let mut ids: Vec<usize> = (0..m.n).collect();
        if order == Order::Pruning {
            ids.sort_by_key(|&v| (std::cmp::Reverse(m.ecc[v]), v));
        }
        Search {
            m,
            objective,
            order: ids,
            ascending: order == Order::Lexicographic,
            cap,
            budget,
            exhausted: false,
            stats: SearchStats::default(),
            strengths: vec![0; m.n],
            cost: 0,
            assigned: 0,
            dominated: 0,
            covered: 0,
            broadcasters: 0,
        }
    }

    #[inline]
    fn compatible(&self, v: usize, s: u32) -> bool {
        match self.objective {
            Objective::GammaB => true,
            Objective::Ibn => self.m.cover[v][s as usize] & self.covered == 0,
            Objective::Ih => {
                self.m.ball[v][s as usize] & self.broadcasters == 0
                    && self.dominated & (1 << v) == 0
            }
        }
    }

    /// Lower bound on the cost still needed, or `None` if some undominated
    /// vertex cannot be reached any more.
    fn remaining_bound(&self) -> Option<u32> {
        let remaining = self.cap - self.cost;
        let free = !self.assigned & self.m.all;
        let mut undominated = !self.dominated & self.m.all;
        let mut worst = 0;
        while undominated != 0 {
            let u = undominated.trailing_zeros() as usize;
            undominated &= undominated - 1;
            let sphere = &self.m.sphere[u];
            let mut need = None;
            'radii: for (r, &ring) in sphere.iter().enumerate() {
                let s = (r as u32).max(1);
                if s > remaining {
                    break;
                }
                let mut cands = ring & free;
                while cands != 0 {
                    let v = cands.trailing_zeros() as usize;
                    cands &= cands - 1;
                    if s <= self.m.ecc[v] && self.compatible(v, s) {
                        need = Some(s);
                        break 'radii;
                    }
                }
            }
            worst = worst.max(need?);
        }
        Some(worst)
    }

    fn feasible(&self) -> bool {
        if self.dominated != self.m.all {
            return false;
        }
        match self.objective {
            Objective::GammaB => true,
            Objective::Ibn => {
                let mut support = self.broadcasters;
                if support.count_ones() == 1 {
                    return true;
                }
                while support != 0 {
                    let v = support.trailing_zeros() as usize;
                    support &= support - 1;
                    let mut others_heard = 0u128;
                    let mut rest = self.broadcasters & !(1 << v);
                    while rest != 0 {
                        let w = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        others_heard |= self.m.ball[w][self.strengths[w] as usize];
                    }
                    let s = self.strengths[v] as usize;
                    if self.m.sphere[v][s] & others_heard == 0 {
                        return false;
                    }
                }
                true
            }
            Objective::Ih => (0..self.m.n).all(|v| {
                let s = self.strengths[v];
                if s == 0 {
                    // Activation at strength 1 must make v heard or hear someone.
                    self.dominated & (1 << v) != 0 || self.m.ball[v][1] & self.broadcasters != 0
                } else {
                    s >= self.m.ecc[v]
                        || self.m.ball[v][s as usize + 1] & self.broadcasters & !(1 << v) != 0
                }
            }),
        }
    }

    fn place(&mut self, v: usize, s: u32) {
        self.strengths[v] = s;
        self.assigned |= 1 << v;
        if s > 0 {
            self.cost += s;
            self.dominated |= self.m.ball[v][s as usize];
            self.covered |= self.m.cover[v][s as usize];
            self.broadcasters |= 1 << v;
        }
    }

    fn dfs(
        &mut self,
        depth: usize,
        visit: &mut dyn FnMut(&[Strength], u32) -> Step,
    ) -> ControlFlow<()> {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            self.exhausted = true;
            return ControlFlow::Break(());
        }
        if depth == self.m.n {
            if self.cost <= self.cap && self.feasible() {
                match visit(&self.strengths, self.cost) {
                    Step::Continue => {}
                    Step::Tighten(cap) => self.cap = cap,
                    Step::Stop => return ControlFlow::Break(()),
                }
            }
            return ControlFlow::Continue(());
        }
        match self.remaining_bound() {
            Some(lb) if self.cost + lb <= self.cap => {}
            _ => {
                self.stats.prunes_bound += 1;
                return ControlFlow::Continue(());
            }
        }
        let v = self.order[depth];
        let saved = (
            self.cost,
            self.assigned,
            self.dominated,
            self.covered,
            self.broadcasters,
        );
        let top = self.m.ecc[v].min(self.cap - self.cost);
        for i in 0..=top {
            let s = if self.ascending { i } else { top - i };
            // The cap may have tightened since the loop started.
            if self.cost + s > self.cap {
                continue;
            }
            if s > 0 && !self.compatible(v, s) {
                self.stats.prunes_independence += 1;
                continue;
            }
            self.place(v, s);
            let flow = self.dfs(depth + 1, visit);
            self.strengths[v] = 0;
            (
                self.cost,
                self.assigned,
                self.dominated,
                self.covered,
                self.broadcasters,
            ) = saved;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn check_size(t: &Tree) -> Result<(), SolverError> {
    if t.n() > MAX_VERTICES {
        Err(SolverError::TooLarge {
            n: t.n(),
            cap: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

fn single_vertex_result(objective: Objective) -> SolveResult {
    SolveResult {
        objective,
        value: 1,
        witness: Broadcast::from_vec_unchecked(vec![1]),
        stats: SearchStats::default(),
        optimal: true,
    }
}

/// Shared driver: minimize from a feasible seed, then pick the
/// lexicographically smallest optimal strength vector.
fn solve(
    t: &Tree,
    objective: Objective,
    seed: Broadcast,
    budget: u64,
) -> Result<SolveResult, SolverError> {
    check_size(t)?;
    if t.n() == 1 {
        return Ok(single_vertex_result(objective));
    }
    let m = Masks::new(t);
    let mut best = seed;
    let mut stats = SearchStats::default();

    let seed_cost = best.cost();
    if seed_cost > 0 {
        let mut search = Search::new(&m, objective, Order::Pruning, seed_cost - 1, budget);
        let _ = search.dfs(0, &mut |strengths, cost| {
            best = Broadcast::from_vec_unchecked(strengths.to_vec());
            Step::Tighten(cost.saturating_sub(1))
        });
        stats.absorb(search.stats);
        if search.exhausted {
            return Err(SolverError::BudgetExhausted(Box::new(SolveResult {
                objective,
                value: best.cost(),
                witness: best,
                stats,
                optimal: false,
            })));
        }
    }

    let value = best.cost();
    let mut search = Search::new(
        &m,
        objective,
        Order::Lexicographic,
        value,
        budget.saturating_sub(stats.nodes),
    );
    let mut first = None;
    let _ = search.dfs(0, &mut |strengths, _| {
        first = Some(Broadcast::from_vec_unchecked(strengths.to_vec()));
        Step::Stop
    });
    stats.absorb(search.stats);
    // With the budget spent the value is still proven; keep the first witness.
    let witness = first.unwrap_or(best);
    debug_assert_eq!(witness.cost(), value);
    Ok(SolveResult {
        objective,
        value,
        witness,
        stats,
        optimal: true,
    })
}

/// Minimum cost of a maximal bn-independent broadcast.
pub fn solve_ibn(t: &Tree, budget: u64) -> Result<SolveResult, SolverError> {
    check_size(t)?;
    let mut seed = construct::radial_broadcast(t);
    if let Some(ms) = split::witness_split_set(t) {
        if let Ok(up) = construct::construct_ibn_upper(t, &ms) {
            if up.broadcast.cost() < seed.cost() {
                seed = up.broadcast;
            }
        }
    }
    solve(t, Objective::Ibn, seed, budget)
}

/// Minimum cost of a maximal hearing independent broadcast.
pub fn solve_ih(t: &Tree, budget: u64) -> Result<SolveResult, SolverError> {
    check_size(t)?;
    solve(t, Objective::Ih, construct::radial_broadcast(t), budget)
}

/// Minimum cost of a dominating broadcast by search alone, independent of
/// the split-set formula.
pub fn brute_gamma_b(t: &Tree) -> Result<SolveResult, SolverError> {
    check_size(t)?;
    solve(
        t,
        Objective::GammaB,
        construct::radial_broadcast(t),
        DEFAULT_BUDGET,
    )
}

pub fn solve_objective(
    t: &Tree,
    objective: Objective,
    budget: u64,
) -> Result<SolveResult, SolverError> {
    match objective {
        Objective::GammaB => {
            check_size(t)?;
            solve(t, objective, construct::radial_broadcast(t), budget)
        }
        Objective::Ibn => solve_ibn(t, budget),
        Objective::Ih => solve_ih(t, budget),
    }
}

/// Calls `visit` on every feasible broadcast for `objective` with cost at
/// most `cap`, until it breaks.
pub fn for_each_feasible(
    t: &Tree,
    objective: Objective,
    cap: u32,
    mut visit: impl FnMut(&Broadcast) -> ControlFlow<()>,
) -> Result<(), SolverError> {
    check_size(t)?;
    if t.n() == 1 {
        if cap >= 1 {
            let _ = visit(&Broadcast::from_vec_unchecked(vec![1]));
        }
        return Ok(());
    }
    let m = Masks::new(t);
    let mut search = Search::new(&m, objective, Order::Pruning, cap, u64::MAX);
    let _ = search.dfs(
        0,
        &mut |strengths, _| match visit(&Broadcast::from_vec_unchecked(strengths.to_vec())) {
            ControlFlow::Continue(()) => Step::Continue,
            ControlFlow::Break(()) => Step::Stop,
        },
    );
    Ok(())
}

/// All feasible broadcasts of cost at most `cap`, sorted lexicographically.
pub fn enumerate_optimal(
    t: &Tree,
    objective: Objective,
    cap: u32,
) -> Result<Vec<Broadcast>, SolverError> {
    let mut out = Vec::new();
    for_each_feasible(t, objective, cap, |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    })?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A minimum independent dominating set of the path on `k` vertices,
/// lexicographically smallest as a sorted list. Its size is `ceil(k/3)`.
pub fn independent_domination_path(k: usize) -> (usize, Vec<usize>) {
    assert!(k >= 1, "path needs at least one vertex");
    let size = k.div_ceil(3);
    // Greedy: the smallest next vertex that keeps everything before it
    // dominated and leaves a tail that the remaining picks can still handle.
    let mut chosen = Vec::with_capacity(size);
    let mut next_min = 0;
    let mut last_allowed = 1;
    while chosen.len() < size {
        let left = size - chosen.len() - 1;
        let pick = (next_min..=last_allowed.min(k - 1))
            .find(|&q| {
                let tail = k.saturating_sub(q + 2);
                tail.div_ceil(3) == left || (tail == 0 && left == 0)
            })
            .expect("a minimum independent dominating set exists");
        chosen.push(pick);
        next_min = pick + 2;
        last_allowed = pick + 3;
    }
    (size, chosen)
}
