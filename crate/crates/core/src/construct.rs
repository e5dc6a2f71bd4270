//! Explicit maximal bn-independent broadcasts: the radial broadcast, the
//! split-set upper bound, and the leaf-by-leaf reduction onto a subtree.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::broadcast::{
    self, boundary, hears, is_bn_independent, is_maximal_bn_boundary, is_maximal_bn_components,
    private_boundary, uncovered_edges, Broadcast, BroadcastError, Strength,
};
use crate::solver::independent_domination_path;
use crate::split::{self, SplitError, SplitSet};
use crate::tree::{Component, Tree, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("tree is radial")]
    RadialTree,
    #[error("edge set is not a maximum split-set")]
    NotMaximumSplitSet,
    #[error("broadcast is not maximal bn-independent")]
    NotMaximal,
    #[error("kept vertices do not induce a subtree")]
    KeepNotSubtree,
    #[error("step {step}: {reason}")]
    InvariantViolated { step: usize, reason: String },
    #[error("step {step}: boundary vertex {vertex} is not private")]
    BoundaryClaimFailed { step: usize, vertex: Vertex },
    #[error(transparent)]
    Broadcast(#[from] BroadcastError),
}

/// Strength `rad` at the smallest-id center.
pub fn radial_broadcast(t: &Tree) -> Broadcast {
    let mut strengths = vec![0; t.n()];
    strengths[t.centers()[0]] = t.radius().max(1);
    Broadcast::from_vec_unchecked(strengths)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperCertificate {
    pub gamma_b: u32,
    pub m: usize,
    /// Indices of the radial subtrees whose center gets one extra unit.
    pub boosted: Vec<usize>,
    pub centers: Vec<Vertex>,
    pub radii: Vec<u32>,
    /// The base broadcast leaves exactly the split edges uncovered.
    pub base_uncovered_is_split: bool,
    pub base_maximal: bool,
    pub bn_independent: bool,
    pub maximal: bool,
    /// Every component of the uncovered-edge forest has two broadcasters.
    pub component_test: bool,
    pub cost: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperConstruction {
    pub base: Broadcast,
    pub broadcast: Broadcast,
    pub certificate: UpperCertificate,
}

/// Rad-strength broadcasts at the radial subtree centers, plus one unit at
/// the subtrees picked by a minimum independent dominating set of the path
/// of subtrees. Costs `gamma_b + ceil((m + 1) / 3)`.
pub fn construct_ibn_upper(t: &Tree, ms: &SplitSet) -> Result<UpperConstruction, ConstructError> {
    if t.n() == 1 || split::max_split_size(t) == 0 {
        return Err(ConstructError::RadialTree);
    }
    let subtrees = split::radial_subtrees(t, ms).map_err(|e| match e {
        SplitError::NotMaximumSplitSet => ConstructError::NotMaximumSplitSet,
        _ => ConstructError::NotMaximumSplitSet,
    })?;
    let m = ms.len();
    let mut base = vec![0; t.n()];
    for s in &subtrees {
        base[s.center] = s.radius;
    }
    let base = Broadcast::from_vec_unchecked(base);
    let (_, boosted) = independent_domination_path(m + 1);
    let mut g = base.strengths().to_vec();
    for &i in &boosted {
        g[subtrees[i].center] += 1;
    }
    let g = Broadcast::new(t, g)?;

    let mut uncovered = uncovered_edges(t, &base);
    uncovered.sort_unstable();
    let mut split_edges = ms.edges.clone();
    split_edges.sort_unstable();
    let gamma_b: u32 = subtrees.iter().map(|s| s.radius).sum();
    let certificate = UpperCertificate {
        gamma_b,
        m,
        boosted,
        centers: subtrees.iter().map(|s| s.center).collect(),
        radii: subtrees.iter().map(|s| s.radius).collect(),
        base_uncovered_is_split: uncovered == split_edges,
        base_maximal: broadcast::is_maximal_bn(t, &base),
        bn_independent: is_bn_independent(t, &g),
        maximal: broadcast::is_maximal_bn(t, &g),
        component_test: is_maximal_bn_components(t, &g).unwrap_or(false),
        cost: g.cost(),
    };
    if !certificate.maximal {
        return Err(ConstructError::InvariantViolated {
            step: 0,
            reason: "constructed broadcast is not maximal".into(),
        });
    }
    Ok(UpperConstruction {
        base,
        broadcast: g,
        certificate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReductionCase {
    /// Deleted leaf did not broadcast.
    Drop = 1,
    /// Strength at least 2 moves to the stem, one lower.
    Shift = 2,
    /// Strength 1 and the stem hears someone else.
    Restrict = 3,
    /// Strength 1 and the stem hears only the leaf.
    Relocate = 4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub deleted: Vertex,
    pub stem: Vertex,
    pub case: u8,
    /// Broadcaster raised by one to rejoin a lonely component.
    pub incremented: Option<Vertex>,
    /// Sole broadcaster lowered to its eccentricity in the smaller tree.
    pub clamped: Option<Vertex>,
    /// Nonzero strengths after the step, in host ids.
    pub strengths: BTreeMap<Vertex, Strength>,
    pub cost: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// The kept subtree, local ids in increasing host order.
    pub target: Component,
    /// Final broadcast on `target.tree`.
    pub final_broadcast: Broadcast,
    pub initial_cost: u32,
}

impl ReductionTrace {
    pub fn final_cost(&self) -> u32 {
        self.final_broadcast.cost()
    }
}

struct Current {
    part: Component,
    /// Strengths in host ids, zero outside the current tree.
    strengths: Vec<Strength>,
}

impl Current {
    fn local(&self) -> Broadcast {
        Broadcast::from_vec_unchecked(
            self.part
                .mapping
                .iter()
                .map(|&v| self.strengths[v])
                .collect(),
        )
    }

    fn loc(&self, v: Vertex) -> Vertex {
        self.part.local(v).expect("vertex is in the current tree")
    }
}

/// Deletes the vertices outside `keep` one leaf at a time, smallest id first,
/// keeping the broadcast maximal bn-independent and never raising its cost.
pub fn subtree_reduce(
    t: &Tree,
    f: &Broadcast,
    keep: &[Vertex],
) -> Result<ReductionTrace, ConstructError> {
    broadcast::validate(t, f)?;
    if !broadcast::is_maximal_bn(t, f) {
        return Err(ConstructError::NotMaximal);
    }
    let target = t
        .induced(keep)
        .map_err(|_| ConstructError::KeepNotSubtree)?;
    let mut in_keep = vec![false; t.n()];
    for &v in &target.mapping {
        in_keep[v] = true;
    }
    let mut cur = Current {
        part: t.induced(&(0..t.n()).collect::<Vec<_>>()).unwrap(),
        strengths: f.strengths().to_vec(),
    };
    let mut steps = Vec::new();
    while cur.part.mapping.len() > target.mapping.len() {
        let step = steps.len() + 1;
        let tr = &cur.part.tree;
        let v = *cur
            .part
            .mapping
            .iter()
            .find(|&&x| !in_keep[x] && tr.degree(cur.loc(x)) == 1)
            .expect("a tree larger than a subtree has a leaf outside it");
        let u = cur.part.original(tr.neighbors(cur.loc(v))[0]);
        let before = cur.local();
        let fv = cur.strengths[v];

        // Move to the smaller tree first, then adjust.
        let mut next = cur.strengths.clone();
        next[v] = 0;
        let case;
        let mut lonely = None;
        if fv == 0 {
            case = ReductionCase::Drop;
        } else if fv >= 2 {
            case = ReductionCase::Shift;
            next[u] = fv - 1;
        } else {
            let lu = cur.loc(u);
            let lv = cur.loc(v);
            let other = before
                .support()
                .find(|&w| w != lv && hears(tr, &before, lu, w));
            match other {
                Some(w) => {
                    case = ReductionCase::Restrict;
                    lonely = Some(cur.part.original(w));
                }
                None => {
                    case = ReductionCase::Relocate;
                    next[u] = 1;
                    lonely = Some(u);
                }
            }
        }

        let alive: Vec<Vertex> = cur
            .part
            .mapping
            .iter()
            .copied()
            .filter(|&x| x != v)
            .collect();
        let part = t.induced(&alive).expect("deleting a leaf keeps a tree");
        let mut nxt = Current {
            part,
            strengths: next,
        };

        let mut incremented = None;
        if let Some(w) = lonely {
            let g = nxt.local();
            let tr = &nxt.part.tree;
            let lw = nxt.loc(w);
            let uncovered = uncovered_edges(tr, &g);
            let comps = tr
                .component_split(&uncovered)
                .expect("uncovered edges belong to the tree");
            let home = comps
                .iter()
                .find(|c| c.mapping.contains(&lw))
                .expect("every vertex lies in a component");
            let casters = home.mapping.iter().filter(|&&x| g.strength(x) > 0).count();
            if casters == 1 && comps.len() > 1 {
                let b = boundary(tr, &g, lw);
                let pb = private_boundary(tr, &g, lw);
                if let Some(&x) = b.iter().find(|x| !pb.contains(x)) {
                    return Err(ConstructError::BoundaryClaimFailed {
                        step,
                        vertex: nxt.part.original(x),
                    });
                }
                nxt.strengths[w] += 1;
                incremented = Some(w);
            }
        }

        // A sole broadcaster may now exceed its eccentricity.
        let mut clamped = None;
        {
            let tr = &nxt.part.tree;
            for i in 0..nxt.part.mapping.len() {
                let x = nxt.part.mapping[i];
                let cap = tr.ecc(i).max(1);
                if nxt.strengths[x] > cap {
                    nxt.strengths[x] = cap;
                    clamped = Some(x);
                }
            }
        }

        let g = nxt.local();
        let tr = &nxt.part.tree;
        let fail = |reason: &str| ConstructError::InvariantViolated {
            step,
            reason: reason.to_string(),
        };
        broadcast::validate(tr, &g).map_err(|e| fail(&e.to_string()))?;
        if !is_bn_independent(tr, &g) {
            return Err(fail("not bn-independent"));
        }
        if !is_maximal_bn_boundary(tr, &g).unwrap_or(false) {
            return Err(fail("not maximal"));
        }
        if g.cost() > before.cost() {
            return Err(fail("cost increased"));
        }
        steps.push(ReductionStep {
            deleted: v,
            stem: u,
            case: case as u8,
            incremented,
            clamped,
            strengths: nxt
                .strengths
                .iter()
                .enumerate()
                .filter(|&(_, &s)| s > 0)
                .map(|(x, &s)| (x, s))
                .collect(),
            cost: g.cost(),
        });
        cur = nxt;
    }
    let final_broadcast = cur.local();
    Ok(ReductionTrace {
        steps,
        target,
        final_broadcast,
        initial_cost: f.cost(),
    })
}
