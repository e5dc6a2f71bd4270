//! Broadcasts on trees and the structures derived from them: neighbourhoods,
//! boundaries, private boundaries, covered edges and the independence and
//! maximality predicates built on top of those.
//!
//! Two independence notions are supported. A broadcast is *bn-independent*
//! when every vertex that hears two or more broadcasters lies on the boundary
//! of each broadcaster it hears. On a tree this is the same as asking that no
//! edge is covered by two broadcasters: if `x` hears `u` and `v` and is
//! interior to the ball of `u`, the edge from `x` towards `v` has both ends in
//! both balls and its nearer end is interior to the ball of `v`, while its
//! other end is interior to the ball of `u`; conversely a doubly covered edge
//! has an endpoint interior to one of its coverers that hears the other.
//! The vertex form is primary here and [`is_bn_independent_by_edges`] is kept
//! as a cross-check.
//!
//! *Hearing independence* asks that no broadcaster hears another.
//!
//! Both notions are closed under lowering strengths, so a broadcast `f` is
//! maximal iff no single unit increase keeps it independent: if `g > f` is
//! independent then `f + e_v <= g` for some `v`, and lowering `g` to
//! `f + e_v` preserves independence.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::tree::{normalize, Component, Edge, Tree, TreePath, Vertex};

pub type Strength = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BroadcastError {
    #[error("invalid broadcast: {0}")]
    InvalidBroadcast(String),
    #[error("broadcast is not bn-independent")]
    NotBnIndependent,
    #[error("the component test needs at least two broadcasting vertices")]
    NeedTwoBroadcasters,
    #[error("edge {0}-{1} is covered, so it cannot be removed")]
    RemovedCoveredEdge(Vertex, Vertex),
    #[error("path is not a path of the tree")]
    PathNotInTree,
    #[error("component does not belong to this tree")]
    ComponentMismatch,
}

/// Which independence notion a predicate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Independence {
    /// Overlaps only in boundaries.
    Bn,
    /// No broadcaster hears another.
    Hearing,
}

/// A strength per vertex. Valid broadcasts never exceed the eccentricity of
/// their vertex, and the single-vertex tree only admits strength 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Broadcast {
    strengths: Vec<Strength>,
}

impl Broadcast {
    pub fn new(t: &Tree, strengths: Vec<Strength>) -> Result<Broadcast, BroadcastError> {
        let f = Broadcast { strengths };
        validate(t, &f)?;
        Ok(f)
    }

    /// All-zero broadcast. Invalid on the single-vertex tree.
    pub fn zero(n: usize) -> Broadcast {
        Broadcast {
            strengths: vec![0; n],
        }
    }

    pub(crate) fn from_vec_unchecked(strengths: Vec<Strength>) -> Broadcast {
        Broadcast { strengths }
    }

    pub fn from_map(
        t: &Tree,
        map: &BTreeMap<Vertex, Strength>,
    ) -> Result<Broadcast, BroadcastError> {
        let mut strengths = vec![0; t.n()];
        for (&v, &s) in map {
            if v >= t.n() {
                return Err(BroadcastError::InvalidBroadcast(format!(
                    "vertex {v} not in tree of order {}",
                    t.n()
                )));
            }
            strengths[v] = s;
        }
        Broadcast::new(t, strengths)
    }

    /// Nonzero strengths keyed by vertex.
    pub fn to_map(&self) -> BTreeMap<Vertex, Strength> {
        self.support().map(|v| (v, self.strengths[v])).collect()
    }

    pub fn len(&self) -> usize {
        self.strengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strengths.is_empty()
    }

    #[inline]
    pub fn strength(&self, v: Vertex) -> Strength {
        self.strengths[v]
    }

    pub fn strengths(&self) -> &[Strength] {
        &self.strengths
    }

    pub fn cost(&self) -> u32 {
        self.strengths.iter().sum()
    }

    /// Broadcasting vertices in increasing order.
    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.strengths
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 0)
            .map(|(v, _)| v)
    }

    pub fn support_size(&self) -> usize {
        self.strengths.iter().filter(|&&s| s > 0).count()
    }

    /// Copy with `v` set to `s`, skipping validation.
    pub fn with(&self, v: Vertex, s: Strength) -> Broadcast {
        let mut strengths = self.strengths.clone();
        strengths[v] = s;
        Broadcast { strengths }
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &Broadcast) -> bool {
        self.strengths.len() == other.strengths.len()
            && self
                .strengths
                .iter()
                .zip(&other.strengths)
                .all(|(a, b)| a <= b)
    }
}

pub fn validate(t: &Tree, f: &Broadcast) -> Result<(), BroadcastError> {
    if f.len() != t.n() {
        return Err(BroadcastError::InvalidBroadcast(format!(
            "{} strengths for a tree of order {}",
            f.len(),
            t.n()
        )));
    }
    if t.n() == 1 {
        if f.strength(0) != 1 {
            return Err(BroadcastError::InvalidBroadcast(
                "the single-vertex tree only admits strength 1".into(),
            ));
        }
        return Ok(());
    }
    for v in 0..t.n() {
        if f.strength(v) > t.ecc(v) {
            return Err(BroadcastError::InvalidBroadcast(format!(
                "strength {} at vertex {v} exceeds its eccentricity {}",
                f.strength(v),
                t.ecc(v)
            )));
        }
    }
    Ok(())
}

pub fn is_valid(t: &Tree, f: &Broadcast) -> bool {
    validate(t, f).is_ok()
}

/// `u` hears `v`.
#[inline]
pub fn hears(t: &Tree, f: &Broadcast, u: Vertex, v: Vertex) -> bool {
    let s = f.strength(v);
    s > 0 && t.dist(u, v) <= s
}

pub fn hearers_of(t: &Tree, f: &Broadcast, u: Vertex) -> Vec<Vertex> {
    f.support().filter(|&v| hears(t, f, u, v)).collect()
}

pub fn neighbourhood(t: &Tree, f: &Broadcast, v: Vertex) -> Vec<Vertex> {
    let s = f.strength(v);
    if s == 0 {
        return Vec::new();
    }
    (0..t.n()).filter(|&u| t.dist(u, v) <= s).collect()
}

pub fn boundary(t: &Tree, f: &Broadcast, v: Vertex) -> Vec<Vertex> {
    let s = f.strength(v);
    if s == 0 {
        return Vec::new();
    }
    (0..t.n()).filter(|&u| t.dist(u, v) == s).collect()
}

pub fn private_neighbourhood(t: &Tree, f: &Broadcast, v: Vertex) -> Vec<Vertex> {
    neighbourhood(t, f, v)
        .into_iter()
        .filter(|&u| f.support().all(|w| w == v || !hears(t, f, u, w)))
        .collect()
}

/// Vertices of `N_f(v)` left undominated once `v` is lowered by one.
pub fn private_boundary(t: &Tree, f: &Broadcast, v: Vertex) -> Vec<Vertex> {
    let s = f.strength(v);
    neighbourhood(t, f, v)
        .into_iter()
        .filter(|&u| {
            let by_lowered = s >= 2 && t.dist(u, v) < s;
            let by_other = f.support().any(|w| w != v && hears(t, f, u, w));
            !(by_lowered || by_other)
        })
        .collect()
}

/// `v` covers `xy`: both ends in `N_f(v)`, at least one not on `B_f(v)`.
pub fn covers_edge(t: &Tree, f: &Broadcast, v: Vertex, (x, y): Edge) -> bool {
    let s = f.strength(v);
    if s == 0 {
        return false;
    }
    let (dx, dy) = (t.dist(v, x), t.dist(v, y));
    dx <= s && dy <= s && (dx != s || dy != s)
}

pub fn edge_coverers(t: &Tree, f: &Broadcast, e: Edge) -> Vec<Vertex> {
    f.support().filter(|&v| covers_edge(t, f, v, e)).collect()
}

pub fn uncovered_edges(t: &Tree, f: &Broadcast) -> Vec<Edge> {
    t.edges()
        .iter()
        .copied()
        .filter(|&e| !f.support().any(|v| covers_edge(t, f, v, e)))
        .collect()
}

pub fn is_dominating(t: &Tree, f: &Broadcast) -> bool {
    (0..t.n()).all(|u| f.support().any(|v| hears(t, f, u, v)))
}

/// Every vertex hearing two or more broadcasters is on the boundary of
/// each broadcaster it hears.
pub fn is_bn_independent(t: &Tree, f: &Broadcast) -> bool {
    (0..t.n()).all(|x| {
        let heard = hearers_of(t, f, x);
        heard.len() < 2 || heard.iter().all(|&u| t.dist(x, u) == f.strength(u))
    })
}

/// No edge is covered by more than one broadcaster.
pub fn is_bn_independent_by_edges(t: &Tree, f: &Broadcast) -> bool {
    t.edges()
        .iter()
        .all(|&e| f.support().filter(|&v| covers_edge(t, f, v, e)).count() <= 1)
}

/// No broadcasting vertex hears another broadcasting vertex.
pub fn is_hearing_independent(t: &Tree, f: &Broadcast) -> bool {
    f.support()
        .all(|u| f.support().all(|v| u == v || !hears(t, f, u, v)))
}

pub fn is_independent(t: &Tree, f: &Broadcast, mode: Independence) -> bool {
    match mode {
        Independence::Bn => is_bn_independent(t, f),
        Independence::Hearing => is_hearing_independent(t, f),
    }
}

/// Maximality through the boundary test: dominating, and either a single
/// broadcaster or every broadcaster has a boundary vertex that some other
/// broadcaster also reaches.
pub fn is_maximal_bn_boundary(t: &Tree, f: &Broadcast) -> Result<bool, BroadcastError> {
    if !is_bn_independent(t, f) {
        return Err(BroadcastError::NotBnIndependent);
    }
    if !is_dominating(t, f) {
        return Ok(false);
    }
    if f.support_size() == 1 {
        return Ok(true);
    }
    Ok(f.support().all(|v| {
        let private = private_boundary(t, f, v);
        boundary(t, f, v).iter().any(|u| !private.contains(u))
    }))
}

/// Maximality through the component test: every component of the tree
/// minus its uncovered edges holds at least two broadcasters.
pub fn is_maximal_bn_components(t: &Tree, f: &Broadcast) -> Result<bool, BroadcastError> {
    if !is_bn_independent(t, f) {
        return Err(BroadcastError::NotBnIndependent);
    }
    if f.support_size() < 2 {
        return Err(BroadcastError::NeedTwoBroadcasters);
    }
    let parts = t
        .component_split(&uncovered_edges(t, f))
        .expect("uncovered edges are tree edges");
    Ok(parts
        .iter()
        .all(|c| c.mapping.iter().filter(|&&v| f.strength(v) > 0).count() >= 2))
}

/// Definitional maximality: independent in `mode`, and no unit increase at
/// any vertex stays independent.
pub fn is_maximal_by_extension(t: &Tree, f: &Broadcast, mode: Independence) -> bool {
    if !is_valid(t, f) || !is_independent(t, f, mode) {
        return false;
    }
    if t.n() == 1 {
        return true;
    }
    (0..t.n()).all(|v| {
        f.strength(v) >= t.ecc(v) || !is_independent(t, &f.with(v, f.strength(v) + 1), mode)
    })
}

/// Convenience: bn-independent and maximal.
pub fn is_maximal_bn(t: &Tree, f: &Broadcast) -> bool {
    is_maximal_bn_boundary(t, f).unwrap_or(false)
}

/// Restriction of `f` to a component obtained by deleting uncovered edges.
pub fn restrict(t: &Tree, f: &Broadcast, part: &Component) -> Result<Broadcast, BroadcastError> {
    let n = t.n();
    let mut inside = vec![false; n];
    for &v in &part.mapping {
        if v >= n {
            return Err(BroadcastError::ComponentMismatch);
        }
        inside[v] = true;
    }
    let consistent = part.tree.n() == part.mapping.len()
        && part
            .tree
            .edges()
            .iter()
            .all(|&(a, b)| t.has_edge(part.mapping[a], part.mapping[b]));
    if !consistent {
        return Err(BroadcastError::ComponentMismatch);
    }
    for &(u, v) in t.edges() {
        if inside[u] != inside[v] && f.support().any(|w| covers_edge(t, f, w, (u, v))) {
            return Err(BroadcastError::RemovedCoveredEdge(u, v));
        }
    }
    let strengths = part.mapping.iter().map(|&v| f.strength(v)).collect();
    Broadcast::new(&part.tree, strengths)
}

/// Per-broadcaster sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BroadcasterAudit {
    pub vertex: Vertex,
    pub strength: Strength,
    pub neighbourhood: Vec<Vertex>,
    pub boundary: Vec<Vertex>,
    pub private_neighbourhood: Vec<Vertex>,
    pub private_boundary: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCover {
    pub edge: Edge,
    pub covered_by: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveredComponent {
    pub vertices: Vec<Vertex>,
    pub broadcasters: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BroadcastAudit {
    pub cost: u32,
    pub broadcasters: Vec<BroadcasterAudit>,
    pub edges: Vec<EdgeCover>,
    pub uncovered: Vec<Edge>,
    pub components: Vec<CoveredComponent>,
    /// For each vertex, the broadcasters it hears.
    pub hearers: Vec<Vec<Vertex>>,
}

impl BroadcastAudit {
    pub fn broadcaster(&self, v: Vertex) -> Option<&BroadcasterAudit> {
        self.broadcasters.iter().find(|b| b.vertex == v)
    }

    /// Vertices hearing two or more broadcasters.
    pub fn shared(&self) -> Vec<Vertex> {
        (0..self.hearers.len())
            .filter(|&v| self.hearers[v].len() >= 2)
            .collect()
    }
}

pub fn audit(t: &Tree, f: &Broadcast) -> Result<BroadcastAudit, BroadcastError> {
    validate(t, f)?;
    let broadcasters = f
        .support()
        .map(|v| BroadcasterAudit {
            vertex: v,
            strength: f.strength(v),
            neighbourhood: neighbourhood(t, f, v),
            boundary: boundary(t, f, v),
            private_neighbourhood: private_neighbourhood(t, f, v),
            private_boundary: private_boundary(t, f, v),
        })
        .collect();
    let edges: Vec<EdgeCover> = t
        .edges()
        .iter()
        .map(|&e| EdgeCover {
            edge: e,
            covered_by: edge_coverers(t, f, e),
        })
        .collect();
    let uncovered: Vec<Edge> = edges
        .iter()
        .filter(|c| c.covered_by.is_empty())
        .map(|c| c.edge)
        .collect();
    let components = t
        .component_split(&uncovered)
        .expect("uncovered edges are tree edges")
        .into_iter()
        .map(|c| CoveredComponent {
            broadcasters: c
                .mapping
                .iter()
                .copied()
                .filter(|&v| f.strength(v) > 0)
                .collect(),
            vertices: c.mapping,
        })
        .collect();
    let hearers = (0..t.n()).map(|u| hearers_of(t, f, u)).collect();
    Ok(BroadcastAudit {
        cost: f.cost(),
        broadcasters,
        edges,
        uncovered,
        components,
        hearers,
    })
}

/// Quantities bounding the cost of a broadcast by how much of a path it
/// covers. `touch` are broadcasters whose ball meets the path, `off` the
/// rest; `sigma1` sums the distances of touching broadcasters to the path
/// and `sigma2` the strengths of the off-path ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCoverAccounting {
    pub touch: Vec<Vertex>,
    pub off: Vec<Vertex>,
    pub sigma1: u32,
    pub sigma2: u32,
    pub touch_strength: u32,
    /// Number of path edges covered.
    pub covered: u32,
    pub lower_bound: u32,
    pub cost: u32,
}

impl EdgeCoverAccounting {
    /// `cost >= ceil(b/2) + sigma1 + sigma2` and `b <= 2 (sum_touch f - sigma1)`.
    pub fn holds(&self) -> bool {
        self.cost >= self.lower_bound && self.covered <= 2 * (self.touch_strength - self.sigma1)
    }
}

pub fn edge_cover_accounting(
    t: &Tree,
    f: &Broadcast,
    path: &TreePath,
) -> Result<EdgeCoverAccounting, BroadcastError> {
    if !t.contains_path(path) {
        return Err(BroadcastError::PathNotInTree);
    }
    let (mut touch, mut off) = (Vec::new(), Vec::new());
    let (mut sigma1, mut sigma2, mut touch_strength) = (0, 0, 0);
    for v in f.support() {
        let d = t.dist_to_path(v, path);
        if d <= f.strength(v) {
            touch.push(v);
            sigma1 += d;
            touch_strength += f.strength(v);
        } else {
            off.push(v);
            sigma2 += f.strength(v);
        }
    }
    let covered = path
        .edges()
        .filter(|&e| f.support().any(|v| covers_edge(t, f, v, e)))
        .count() as u32;
    Ok(EdgeCoverAccounting {
        touch,
        off,
        sigma1,
        sigma2,
        touch_strength,
        covered,
        lower_bound: covered.div_ceil(2) + sigma1 + sigma2,
        cost: f.cost(),
    })
}

/// Edges of `path` that `f` leaves uncovered.
pub fn uncovered_on_path(t: &Tree, f: &Broadcast, path: &TreePath) -> Vec<Edge> {
    path.edges()
        .filter(|&e| !f.support().any(|v| covers_edge(t, f, v, e)))
        .map(|(a, b)| normalize(a, b))
        .collect()
}
