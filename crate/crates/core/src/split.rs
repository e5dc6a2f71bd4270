//! Split-sets, the closed form for the broadcast domination number, and the
//! radial classification.
//!
//! Every vertex of a tree attaches to its nearest vertex on a diametrical
//! path `p_0 .. p_d`. Deleting path edges leaves components that are unions
//! of consecutive branches, so whether a segment `p_s .. p_c` is diametrical
//! in its component only depends on branch heights and branch diameters.
//! Those are computed once per path, which makes each segment test O(1)
//! after an O(d^2) sweep.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::broadcast::Broadcast;
use crate::solver::{self, Objective};
use crate::tree::{normalize, Component, Edge, Tree, TreePath, Vertex};

/// Uniqueness of the radial broadcast is decided by exhaustive enumeration
/// only up to this order.
pub const UNIQUENESS_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("path is not a diametrical path of the tree")]
    NotDiametrical,
    #[error("tree is not radial")]
    NotRadial,
    #[error("tree of order {n} exceeds the enumeration limit of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("edge set is not a maximum split-set")]
    NotMaximumSplitSet,
    #[error("not a split-set: {0}")]
    NotASplitSet(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub path: TreePath,
    pub component: Component,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSet {
    pub path: TreePath,
    /// Cut edges in path order.
    pub edges: Vec<Edge>,
    /// The `m + 1` segments in path order.
    pub segments: Vec<Segment>,
}

impl SplitSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn report(&self) -> SplitSetReport {
        SplitSetReport {
            path: self.path.vertices().to_vec(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            segments: self
                .segments
                .iter()
                .map(|s| s.path.vertices().to_vec())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitSetReport {
    pub path: Vec<Vertex>,
    pub edges: Vec<[Vertex; 2]>,
    pub segments: Vec<Vec<Vertex>>,
}

/// Per-path segment data.
struct PathProfile {
    path: TreePath,
    /// `attach[v]` is the index of the path vertex nearest to `v`.
    attach: Vec<usize>,
    /// `valid[s][c]`: segment `p_s .. p_c` has even positive length and is
    /// diametrical in its component.
    valid: Vec<Vec<bool>>,
}

impl PathProfile {
    fn new(t: &Tree, path: &TreePath) -> PathProfile {
        let vs = path.vertices();
        let d = path.len();
        let attach: Vec<usize> = (0..t.n())
            .map(|v| {
                (0..=d)
                    .min_by_key(|&j| t.dist(v, vs[j]))
                    .expect("path is nonempty")
            })
            .collect();
        let mut branches: Vec<Vec<Vertex>> = vec![Vec::new(); d + 1];
        for v in 0..t.n() {
            branches[attach[v]].push(v);
        }
        let height: Vec<i64> = (0..=d)
            .map(|j| {
                branches[j]
                    .iter()
                    .map(|&v| t.dist(v, vs[j]) as i64)
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let inner: Vec<i64> = branches
            .iter()
            .map(|b| {
                b.iter()
                    .flat_map(|&u| b.iter().map(move |&v| (u, v)))
                    .map(|(u, v)| t.dist(u, v) as i64)
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut valid = vec![vec![false; d + 1]; d + 1];
        for s in 0..=d {
            let mut best_inner = inner[s];
            // Max over j in [s, c) of height[j] - j, and the best path between
            // two distinct branches in [s, c].
            let mut best_left = height[s] - s as i64;
            let mut best_cross = i64::MIN;
            for c in s + 1..=d {
                best_inner = best_inner.max(inner[c]);
                best_cross = best_cross.max(best_left + height[c] + c as i64);
                best_left = best_left.max(height[c] - c as i64);
                let len = (c - s) as i64;
                if len % 2 == 0 && best_inner.max(best_cross) == len {
                    valid[s][c] = true;
                }
            }
        }
        PathProfile {
            path: path.clone(),
            attach,
            valid,
        }
    }

    fn d(&self) -> usize {
        self.path.len()
    }

    /// Maximum number of cuts starting from segment start `s`, if any
    /// partition of the rest exists.
    fn best_from(&self) -> Vec<Option<usize>> {
        let d = self.d();
        let mut best = vec![None; d + 1];
        for s in (0..=d).rev() {
            for c in s + 2..=d {
                if !self.valid[s][c] {
                    continue;
                }
                let here = if c == d {
                    Some(0)
                } else {
                    best[c + 1].map(|b: usize| b + 1)
                };
                best[s] = best[s].max(here);
            }
        }
        best
    }

    fn max_cuts(&self) -> usize {
        if self.d() == 0 {
            return 0;
        }
        self.best_from()[0].unwrap_or(0)
    }

    fn build(&self, t: &Tree, cuts: &[usize]) -> SplitSet {
        let vs = self.path.vertices();
        let d = self.d();
        let mut starts = vec![0];
        starts.extend(cuts.iter().map(|&c| c + 1));
        let mut ends: Vec<usize> = cuts.to_vec();
        ends.push(d);
        let segments = starts
            .iter()
            .zip(&ends)
            .map(|(&s, &c)| {
                let members: Vec<Vertex> = (0..t.n())
                    .filter(|&v| (s..=c).contains(&self.attach[v]))
                    .collect();
                Segment {
                    path: TreePath::new(vs[s..=c].to_vec()),
                    component: t.induced(&members).expect("segments induce subtrees"),
                }
            })
            .collect();
        SplitSet {
            path: self.path.clone(),
            edges: cuts.iter().map(|&c| normalize(vs[c], vs[c + 1])).collect(),
            segments,
        }
    }

    /// Cut positions of every split-set, or only maximum ones.
    fn cut_lists(&self, only_maximum: bool) -> Vec<Vec<usize>> {
        let d = self.d();
        let best = self.best_from();
        let target = if only_maximum {
            best.first().copied().flatten()
        } else {
            None
        };
        let mut out = Vec::new();
        let mut cuts = Vec::new();
        self.walk(0, d, &best, only_maximum, &mut cuts, &mut out);
        if only_maximum {
            out.retain(|c| Some(c.len()) == target);
        }
        out.retain(|c| !c.is_empty());
        out
    }

    fn walk(
        &self,
        s: usize,
        d: usize,
        best: &[Option<usize>],
        only_maximum: bool,
        cuts: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for c in s + 2..=d {
            if !self.valid[s][c] {
                continue;
            }
            if c == d {
                if !only_maximum || best[s] == Some(0) {
                    out.push(cuts.clone());
                }
                continue;
            }
            let rest = best[c + 1];
            if rest.is_none() {
                continue;
            }
            if only_maximum && rest.map(|b| b + 1) != best[s] {
                continue;
            }
            cuts.push(c);
            self.walk(c + 1, d, best, only_maximum, cuts, out);
            cuts.pop();
        }
    }
}

/// Every split-set on the diametrical path `p`.
pub fn split_sets(t: &Tree, p: &TreePath) -> Result<Vec<SplitSet>, SplitError> {
    if !t.is_diametrical(p) {
        return Err(SplitError::NotDiametrical);
    }
    let profile = PathProfile::new(t, p);
    Ok(profile
        .cut_lists(false)
        .iter()
        .map(|cuts| profile.build(t, cuts))
        .collect())
}

/// Validates an explicit edge set on a diametrical path.
pub fn split_set_on(t: &Tree, p: &TreePath, edges: &[Edge]) -> Result<SplitSet, SplitError> {
    if !t.is_diametrical(p) {
        return Err(SplitError::NotDiametrical);
    }
    let wanted: BTreeSet<Edge> = edges.iter().map(|&(u, v)| normalize(u, v)).collect();
    if wanted.is_empty() {
        return Err(SplitError::NotASplitSet("empty edge set".into()));
    }
    let path_edges: Vec<Edge> = p.edges().collect();
    let mut cuts = Vec::new();
    for (i, e) in path_edges.iter().enumerate() {
        if wanted.contains(e) {
            cuts.push(i);
        }
    }
    if cuts.len() != wanted.len() {
        return Err(SplitError::NotASplitSet("edge not on the path".into()));
    }
    let profile = PathProfile::new(t, p);
    let mut s = 0;
    for &c in cuts.iter().chain(std::iter::once(&p.len())) {
        if c < s + 2 || !profile.valid[s][c] {
            return Err(SplitError::NotASplitSet(format!(
                "segment {s}..{c} is not an even diametrical segment"
            )));
        }
        s = c + 1;
    }
    Ok(profile.build(t, &cuts))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSplits {
    pub path: TreePath,
    pub max_size: usize,
    pub maximum: Vec<SplitSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximumSplit {
    pub m: usize,
    pub per_path: Vec<PathSplits>,
    /// Whether every diametrical path attains the same maximum.
    pub consistent: bool,
}

impl MaximumSplit {
    /// Distinct maximum split-sets across all paths, as edge sets.
    pub fn distinct(&self) -> Vec<&SplitSet> {
        let mut seen = BTreeSet::new();
        self.per_path
            .iter()
            .flat_map(|p| p.maximum.iter())
            .filter(|s| seen.insert(s.edge_set()))
            .collect()
    }

    pub fn witness(&self) -> Option<&SplitSet> {
        self.per_path.iter().find_map(|p| p.maximum.first())
    }
}

/// Maximum split-sets on every diametrical path.
pub fn maximum_split_set(t: &Tree) -> MaximumSplit {
    let mut per_path = Vec::new();
    for p in t.diametrical_paths() {
        let profile = PathProfile::new(t, &p);
        let max_size = profile.max_cuts();
        let maximum = if max_size == 0 {
            Vec::new()
        } else {
            profile
                .cut_lists(true)
                .iter()
                .map(|cuts| profile.build(t, cuts))
                .collect()
        };
        per_path.push(PathSplits {
            path: p,
            max_size,
            maximum,
        });
    }
    let m = per_path.iter().map(|p| p.max_size).max().unwrap_or(0);
    let consistent = per_path.iter().all(|p| p.max_size == m);
    MaximumSplit {
        m,
        per_path,
        consistent,
    }
}

/// Size of a maximum split-set, from the first diametrical path.
pub fn max_split_size(t: &Tree) -> usize {
    let p = &t.diametrical_paths()[0];
    PathProfile::new(t, p).max_cuts()
}

/// One maximum split-set, or `None` for radial trees.
pub fn witness_split_set(t: &Tree) -> Option<SplitSet> {
    let p = &t.diametrical_paths()[0];
    let profile = PathProfile::new(t, p);
    if profile.max_cuts() == 0 {
        return None;
    }
    let cuts = profile.cut_lists(true).into_iter().next()?;
    Some(profile.build(t, &cuts))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadialKind {
    RadialUnique,
    RadialNonunique,
    /// Radial, but too large for the uniqueness enumeration.
    Radial,
    Nonradial,
}

impl RadialKind {
    pub fn is_radial(self) -> bool {
        self != RadialKind::Nonradial
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialClass {
    pub kind: RadialKind,
    pub gamma_b: u32,
    pub max_split_size: usize,
    pub split_set: Option<SplitSet>,
    /// A dominating broadcast of cost `gamma_b`.
    pub witness: Broadcast,
}

/// Broadcast domination number from the split-set formula.
pub fn gamma_b(t: &Tree) -> RadialClass {
    let split = witness_split_set(t);
    match split {
        None => {
            let kind = match is_uniquely_radial(t) {
                Ok(u) if u.unique => RadialKind::RadialUnique,
                Ok(_) => RadialKind::RadialNonunique,
                Err(_) => RadialKind::Radial,
            };
            RadialClass {
                kind,
                gamma_b: gamma_b_value(t),
                max_split_size: 0,
                split_set: None,
                witness: radial_witness(t),
            }
        }
        Some(ms) => {
            let subtrees = subtrees_of(&ms);
            let mut strengths = vec![0; t.n()];
            for s in &subtrees {
                strengths[s.center] = s.radius;
            }
            RadialClass {
                kind: RadialKind::Nonradial,
                gamma_b: (t.diameter() - ms.len() as u32) / 2,
                max_split_size: ms.len(),
                split_set: Some(ms),
                witness: Broadcast::from_vec_unchecked(strengths),
            }
        }
    }
}

/// The value alone, without the uniqueness enumeration.
pub fn gamma_b_value(t: &Tree) -> u32 {
    if t.n() == 1 {
        return 1;
    }
    match max_split_size(t) {
        0 => t.radius(),
        m => (t.diameter() - m as u32) / 2,
    }
}

fn radial_witness(t: &Tree) -> Broadcast {
    let mut strengths = vec![0; t.n()];
    strengths[t.centers()[0]] = t.radius().max(1);
    Broadcast::from_vec_unchecked(strengths)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Uniqueness {
    /// Exactly one dominating broadcast of minimum cost.
    pub unique: bool,
    /// Every minimum dominating broadcast has a single broadcaster.
    pub single_broadcaster: bool,
    pub count: usize,
}

pub fn is_uniquely_radial(t: &Tree) -> Result<Uniqueness, SplitError> {
    if t.n() > UNIQUENESS_CAP {
        return Err(SplitError::TooLarge {
            n: t.n(),
            cap: UNIQUENESS_CAP,
        });
    }
    if t.n() > 1 && max_split_size(t) > 0 {
        return Err(SplitError::NotRadial);
    }
    let mut count = 0;
    let mut single = true;
    solver::for_each_feasible(t, Objective::GammaB, gamma_b_value(t), |f| {
        count += 1;
        single &= f.support_size() == 1;
        ControlFlow::Continue(())
    })
    .map_err(|_| SplitError::TooLarge {
        n: t.n(),
        cap: UNIQUENESS_CAP,
    })?;
    Ok(Uniqueness {
        unique: count == 1,
        single_broadcaster: single,
        count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialSubtree {
    pub component: Component,
    /// Center in host ids.
    pub center: Vertex,
    pub radius: u32,
}

fn subtrees_of(ms: &SplitSet) -> Vec<RadialSubtree> {
    ms.segments
        .iter()
        .map(|seg| {
            let tr = &seg.component.tree;
            let centers = tr.centers();
            debug_assert_eq!(centers.len(), 1, "even diameter gives one center");
            RadialSubtree {
                component: seg.component.clone(),
                center: seg.component.original(centers[0]),
                radius: tr.radius(),
            }
        })
        .collect()
}

/// Components of `t - M` with their centers and radii, in path order.
pub fn radial_subtrees(t: &Tree, ms: &SplitSet) -> Result<Vec<RadialSubtree>, SplitError> {
    let checked =
        split_set_on(t, &ms.path, &ms.edges).map_err(|_| SplitError::NotMaximumSplitSet)?;
    if checked.len() != max_split_size(t) {
        return Err(SplitError::NotMaximumSplitSet);
    }
    Ok(subtrees_of(&checked))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadialSubtreeReport {
    pub vertices: Vec<Vertex>,
    pub center: Vertex,
    pub radius: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub kind: RadialKind,
    pub gamma_b: u32,
    pub m: usize,
    pub consistent: bool,
    pub splitsets: Vec<SplitSetReport>,
    pub radial_subtrees: Vec<RadialSubtreeReport>,
}

/// Everything about split-sets of `t` in one serializable value. Radial
/// subtrees refer to the first maximum split-set listed.
pub fn split_report(t: &Tree) -> SplitReport {
    let class = gamma_b(t);
    let all = maximum_split_set(t);
    let distinct = all.distinct();
    let radial_subtrees = distinct
        .first()
        .map(|ms| {
            subtrees_of(ms)
                .into_iter()
                .map(|s| RadialSubtreeReport {
                    vertices: s.component.mapping.clone(),
                    center: s.center,
                    radius: s.radius,
                })
                .collect()
        })
        .unwrap_or_default();
    SplitReport {
        kind: class.kind,
        gamma_b: class.gamma_b,
        m: all.m,
        consistent: all.consistent,
        splitsets: distinct.iter().map(|s| s.report()).collect(),
        radial_subtrees,
    }
}
