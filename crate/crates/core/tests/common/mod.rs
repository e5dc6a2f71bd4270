//! Test-only helpers: a naive enumeration oracle and random instance
//! generators. Shared with the cli test suites.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use treecast::tree::{Tree, Vertex};
use treecast::Broadcast;

/// Minimum costs and lexicographically smallest witnesses found by walking
/// every valid broadcast, with no pruning at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Naive {
    pub gamma_b: u32,
    pub i_bn: u32,
    pub i_h: u32,
    pub gamma_b_witness: Vec<u32>,
    pub i_bn_witness: Vec<u32>,
    pub i_h_witness: Vec<u32>,
    pub visited: u64,
}

/// What the oracle knows about one broadcast.
#[derive(Debug, Clone, Copy)]
pub struct Seen<'a> {
    pub strengths: &'a [u32],
    pub cost: u32,
    pub dominating: bool,
    pub bn_independent: bool,
    pub hearing_independent: bool,
    pub bn_maximal: bool,
    pub hearing_maximal: bool,
}

struct Walk<'a, F: FnMut(&Seen)> {
    t: &'a Tree,
    n: usize,
    ecc: Vec<u32>,
    f: Vec<u32>,
    /// Broadcasters heard by each vertex.
    total: Vec<u32>,
    /// Broadcasters heard strictly inside their range.
    interior: Vec<u32>,
    visit: F,
    best: [(u32, Vec<u32>); 3],
    visited: u64,
}

fn violations(f: &[u32], total: &[u32], interior: &[u32]) -> (bool, bool) {
    let bn = total.iter().zip(interior).any(|(&t, &i)| t >= 2 && i >= 1);
    let hearing = f.iter().zip(total).any(|(&s, &t)| s > 0 && t >= 2);
    (bn, hearing)
}

impl<'a, F: FnMut(&Seen)> Walk<'a, F> {
    fn apply(&mut self, v: Vertex, s: u32, sign: i32) {
        if s == 0 {
            return;
        }
        for u in 0..self.n {
            let d = self.t.dist(u, v);
            if d <= s {
                self.total[u] = (self.total[u] as i32 + sign) as u32;
            }
            if d < s {
                self.interior[u] = (self.interior[u] as i32 + sign) as u32;
            }
        }
    }

    /// Whether raising `v` by one keeps the given kind of independence.
    fn extendable(&mut self, v: Vertex, bn: bool) -> bool {
        let s = self.f[v];
        if s >= self.ecc[v] {
            return false;
        }
        self.apply(v, s, -1);
        self.apply(v, s + 1, 1);
        self.f[v] = s + 1;
        let (vbn, vh) = violations(&self.f, &self.total, &self.interior);
        self.f[v] = s;
        self.apply(v, s + 1, -1);
        self.apply(v, s, 1);
        if bn {
            !vbn
        } else {
            !vh
        }
    }

    fn leaf(&mut self) {
        self.visited += 1;
        let cost: u32 = self.f.iter().sum();
        let dominating = self.total.iter().all(|&t| t >= 1);
        let (vbn, vh) = violations(&self.f, &self.total, &self.interior);
        let single = self.n == 1;
        let bn_maximal = !vbn && (single || (0..self.n).all(|v| !self.extendable(v, true)));
        let hearing_maximal = !vh && (single || (0..self.n).all(|v| !self.extendable(v, false)));
        for (k, ok) in [dominating, bn_maximal, hearing_maximal]
            .into_iter()
            .enumerate()
        {
            if ok && cost < self.best[k].0 {
                self.best[k] = (cost, self.f.clone());
            }
        }
        let seen = Seen {
            strengths: &self.f,
            cost,
            dominating,
            bn_independent: !vbn,
            hearing_independent: !vh,
            bn_maximal,
            hearing_maximal,
        };
        (self.visit)(&seen);
    }

    fn walk(&mut self, v: Vertex) {
        if v == self.n {
            self.leaf();
            return;
        }
        let lo = if self.n == 1 { 1 } else { 0 };
        for s in lo..=self.ecc[v].max(lo) {
            self.f[v] = s;
            self.apply(v, s, 1);
            self.walk(v + 1);
            self.apply(v, s, -1);
        }
        self.f[v] = 0;
    }
}

/// Walks all valid broadcasts of `t` in lexicographic order.
pub fn naive_with(t: &Tree, visit: impl FnMut(&Seen)) -> Naive {
    let n = t.n();
    let mut w = Walk {
        t,
        n,
        ecc: (0..n).map(|v| t.ecc(v)).collect(),
        f: vec![0; n],
        total: vec![0; n],
        interior: vec![0; n],
        visit,
        best: [
            (u32::MAX, Vec::new()),
            (u32::MAX, Vec::new()),
            (u32::MAX, Vec::new()),
        ],
        visited: 0,
    };
    w.walk(0);
    let [g, b, h] = w.best;
    Naive {
        gamma_b: g.0,
        i_bn: b.0,
        i_h: h.0,
        gamma_b_witness: g.1,
        i_bn_witness: b.1,
        i_h_witness: h.1,
        visited: w.visited,
    }
}

pub fn naive(t: &Tree) -> Naive {
    naive_with(t, |_| {})
}

/// A connected vertex set of size `k` grown from a random seed vertex.
pub fn random_subtree<R: Rng>(t: &Tree, k: usize, rng: &mut R) -> Vec<Vertex> {
    assert!(k >= 1 && k <= t.n());
    let mut inside = vec![false; t.n()];
    let start = rng.gen_range(0..t.n());
    inside[start] = true;
    let mut chosen = vec![start];
    while chosen.len() < k {
        let frontier: Vec<Vertex> = chosen
            .iter()
            .flat_map(|&v| t.neighbors(v).iter().copied())
            .filter(|&u| !inside[u])
            .collect();
        let &u = frontier
            .choose(rng)
            .expect("a connected tree has a frontier");
        inside[u] = true;
        chosen.push(u);
    }
    chosen.sort_unstable();
    chosen
}

/// Raises random vertices one unit at a time while bn-independence holds,
/// until nothing can be raised.
pub fn random_maximal_bn<R: Rng>(t: &Tree, rng: &mut R) -> Broadcast {
    if t.n() == 1 {
        return Broadcast::new(t, vec![1]).unwrap();
    }
    let mut f = Broadcast::zero(t.n());
    loop {
        let options: Vec<Vertex> = (0..t.n())
            .filter(|&v| f.strength(v) < t.ecc(v))
            .filter(|&v| treecast::broadcast::is_bn_independent(t, &f.with(v, f.strength(v) + 1)))
            .collect();
        match options.choose(rng) {
            Some(&v) => f = f.with(v, f.strength(v) + 1),
            None => return f,
        }
    }
}

/// A uniformly random valid broadcast, biased towards small strengths.
pub fn random_broadcast<R: Rng>(t: &Tree, rng: &mut R) -> Broadcast {
    if t.n() == 1 {
        return Broadcast::new(t, vec![1]).unwrap();
    }
    let strengths = (0..t.n())
        .map(|v| {
            if rng.gen_bool(0.7) {
                0
            } else {
                rng.gen_range(1..=t.ecc(v))
            }
        })
        .collect();
    Broadcast::new(t, strengths).unwrap()
}
