//! Hand-transcribed trees with known values, checked claim by claim.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use treecast::broadcast::{self, Independence};
use treecast::io::{BroadcastJson, TreeJson};
use treecast::solver::{self, Objective};
use treecast::split::{self, SplitSet};
use treecast::{Broadcast, Tree};

use crate::HarnessError;

const SOURCES: [(&str, &str); 4] = [
    ("split-pair", include_str!("../fixtures/split-pair.json")),
    (
        "caterpillar-m2",
        include_str!("../fixtures/caterpillar-m2.json"),
    ),
    (
        "spider-pair-m1",
        include_str!("../fixtures/spider-pair-m1.json"),
    ),
    ("ih-gap", include_str!("../fixtures/ih-gap.json")),
];

pub fn names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Expectation {
    pub claim: String,
    pub value: Value,
    /// Where the expected value comes from.
    pub note: String,
}

#[derive(Debug, Deserialize)]
struct FixtureFile {
    name: String,
    description: String,
    labels: String,
    tree: TreeJson,
    broadcasts: BTreeMap<String, BroadcastJson>,
    expected: Vec<Expectation>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub labels: String,
    pub tree: Tree,
    pub broadcasts: BTreeMap<String, Broadcast>,
    pub expected: Vec<Expectation>,
}

pub fn load(name: &str) -> Result<Fixture, HarnessError> {
    let (_, src) = SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| HarnessError::UnknownFixture(name.to_string()))?;
    let bad = |reason: String| HarnessError::BadFixture {
        name: name.to_string(),
        reason,
    };
    let raw: FixtureFile = serde_json::from_str(src).map_err(|e| bad(e.to_string()))?;
    let tree = raw.tree.to_tree().map_err(|e| bad(e.to_string()))?;
    let mut broadcasts = BTreeMap::new();
    for (k, b) in &raw.broadcasts {
        let f = b.to_broadcast(&tree).map_err(|e| bad(e.to_string()))?;
        broadcasts.insert(k.clone(), f);
    }
    Ok(Fixture {
        name: raw.name,
        description: raw.description,
        labels: raw.labels,
        tree,
        broadcasts,
        expected: raw.expected,
    })
}

pub fn all() -> Vec<Fixture> {
    names()
        .into_iter()
        .map(|n| load(n).expect("shipped fixtures parse"))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub pass: bool,
    pub claims: Vec<ClaimCheck>,
}

/// Maximum split-sets as sorted edge lists, in sorted order.
fn distinct_split_sets(t: &Tree) -> Vec<SplitSet> {
    let mut sets: Vec<SplitSet> = split::maximum_split_set(t)
        .distinct()
        .into_iter()
        .cloned()
        .collect();
    sets.sort_by_key(|s| s.edge_set());
    sets
}

fn edges_value(edges: impl IntoIterator<Item = (usize, usize)>) -> Value {
    let mut v: Vec<[usize; 2]> = edges.into_iter().map(|(a, b)| [a, b]).collect();
    v.sort_unstable();
    json!(v)
}

/// Whether the uniquely radial hypothesis holds:
/// maximum split-sets of size 1 or 2, all of whose components are uniquely
/// radial.
pub fn unique_radial_hypothesis(t: &Tree) -> bool {
    let sets = distinct_split_sets(t);
    let m = sets.first().map_or(0, |s| s.len());
    (1..=2).contains(&m)
        && sets.iter().all(|ms| {
            ms.segments
                .iter()
                .all(|seg| split::is_uniquely_radial(&seg.component.tree).is_ok_and(|u| u.unique))
        })
}

/// Recomputes the value named by `claim`.
pub fn evaluate(fx: &Fixture, claim: &str, budget: u64) -> Result<Value, HarnessError> {
    let t = &fx.tree;
    let unknown = || HarnessError::UnknownClaim(claim.to_string());
    if let Some((what, name)) = claim.split_once('.') {
        let f = fx.broadcasts.get(name).ok_or_else(unknown)?;
        return Ok(match what {
            "cost" => json!(f.cost()),
            "maximal" => json!(broadcast::is_maximal_bn(t, f)),
            "bn_independent" => json!(broadcast::is_bn_independent(t, f)),
            "dominating" => json!(broadcast::is_dominating(t, f)),
            "hearing_maximal" => json!(broadcast::is_maximal_by_extension(
                t,
                f,
                Independence::Hearing
            )),
            "uncovered" => edges_value(broadcast::uncovered_edges(t, f)),
            "shared" => json!(broadcast::audit(t, f).map_err(|_| unknown())?.shared()),
            _ => return Err(unknown()),
        });
    }
    Ok(match claim {
        "diam" => json!(t.diameter()),
        "rad" => json!(t.radius()),
        "gamma_b" => {
            let formula = split::gamma_b(t).gamma_b;
            let search = solver::brute_gamma_b(t)?.value;
            if formula == search {
                json!(formula)
            } else {
                json!({ "formula": formula, "search": search })
            }
        }
        "i_bn" => json!(solver::solve_ibn(t, budget)?.value),
        "i_h" => json!(solver::solve_ih(t, budget)?.value),
        "m" => json!(split::maximum_split_set(t).m),
        "maximum_split_sets" => Value::Array(
            distinct_split_sets(t)
                .iter()
                .map(|s| edges_value(s.edges.iter().copied()))
                .collect(),
        ),
        "split_radii" => {
            let radii: BTreeSet<Vec<u32>> = distinct_split_sets(t)
                .iter()
                .map(|s| {
                    let mut r: Vec<u32> = split::radial_subtrees(t, s)
                        .expect("maximum split-sets are accepted")
                        .iter()
                        .map(|r| r.radius)
                        .collect();
                    r.sort_unstable();
                    r
                })
                .collect();
            json!(radii)
        }
        "uniquely_radial_subtrees" => json!(distinct_split_sets(t)
            .iter()
            .map(|s| {
                s.segments
                    .iter()
                    .filter(|seg| {
                        split::is_uniquely_radial(&seg.component.tree).is_ok_and(|u| u.unique)
                    })
                    .count()
            })
            .collect::<Vec<_>>()),
        "subtree_optima" => {
            let sets = distinct_split_sets(t);
            let first = sets.first().ok_or_else(unknown)?;
            let mut counts = Vec::new();
            for seg in &first.segments {
                let sub = &seg.component.tree;
                counts.push(
                    solver::enumerate_optimal(sub, Objective::GammaB, split::gamma_b_value(sub))?
                        .len(),
                );
            }
            json!(counts)
        }
        "hypothesis" => json!(unique_radial_hypothesis(t)),
        _ => return Err(unknown()),
    })
}

pub fn verify_fixture(name: &str, budget: u64) -> Result<FixtureReport, HarnessError> {
    let fx = load(name)?;
    let mut claims = Vec::new();
    for e in &fx.expected {
        let actual = evaluate(&fx, &e.claim, budget)?;
        claims.push(ClaimCheck {
            claim: e.claim.clone(),
            pass: actual == e.value,
            expected: e.value.clone(),
            actual,
            note: e.note.clone(),
        });
    }
    Ok(FixtureReport {
        name: fx.name,
        pass: claims.iter().all(|c| c.pass),
        claims,
    })
}
