//! Named structural claims checked over generated corpora.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use treecast::broadcast::{self, covers_edge, edge_cover_accounting, uncovered_edges};
use treecast::construct::{self, construct_ibn_upper, subtree_reduce};
use treecast::solver::{self, enumerate_optimal, solve_ibn, solve_ih, Objective};
use treecast::split::{self, gamma_b_value};
use treecast::{Broadcast, Tree};

use crate::corpus::{self, CorpusSpec, Generator, Instance};
use crate::fixtures::unique_radial_hypothesis;
use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// gamma_b <= i_bn <= rad and i_bn <= ceil(4 gamma_b / 3).
    FourThirdsBound,
    /// i_bn <= gamma_b + ceil((m + 1) / 3), attained by the explicit construction.
    SplitsetBound,
    /// i_bn = gamma_b + 1 when all maximum split-set components are uniquely radial.
    UniqueRadialJoin,
    /// gamma_b never grows on passing to a subtree.
    GammaBMonotone,
    /// i_bn never grows on passing to a subtree, also by explicit reduction.
    IbnMonotone,
    /// Cost lower bounds from the number of covered edges of a path.
    EdgeCover,
    /// i_bn(P_n) = i_h(P_n) = ceil(2n / 5) for n != 3.
    PathFormula,
    /// Lower bounds for optimal broadcasts on spiders covering their short leg.
    SpiderBound,
    /// Paths on 3k vertices have i_bn = ceil(6k / 5) < ceil(4k / 3).
    PathMultiples,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::FourThirdsBound,
        Claim::SplitsetBound,
        Claim::UniqueRadialJoin,
        Claim::GammaBMonotone,
        Claim::IbnMonotone,
        Claim::EdgeCover,
        Claim::PathFormula,
        Claim::SpiderBound,
        Claim::PathMultiples,
    ];

    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    }

    pub fn default_corpus(self, seed: u64) -> CorpusSpec {
        let random = |count, n_min, n_max| Generator::Random {
            count,
            n_min,
            n_max,
        };
        let generator = match self {
            Claim::FourThirdsBound => random(500, 1, 14),
            Claim::SplitsetBound => random(500, 4, 14),
            Claim::UniqueRadialJoin => Generator::UniqueRadialJoins {
                count: 50,
                max_piece: 7,
            },
            Claim::GammaBMonotone => random(200, 2, 20),
            Claim::IbnMonotone => random(150, 2, 14),
            Claim::EdgeCover => random(300, 2, 16),
            Claim::PathFormula => Generator::Paths {
                ns: (2..=15).collect(),
            },
            Claim::SpiderBound => Generator::Spiders {
                rs: vec![3, 4, 5],
                ss: vec![1, 2, 3],
            },
            Claim::PathMultiples => Generator::PathMultiples { ks: vec![4, 5] },
        };
        CorpusSpec { generator, seed }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceVerdict {
    pub id: usize,
    pub label: String,
    pub n: usize,
    /// False when the claim's hypothesis does not hold for this instance.
    pub applicable: bool,
    pub pass: bool,
    pub values: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub claim: Claim,
    pub corpus: CorpusSpec,
    pub checked: usize,
    pub skipped: usize,
    pub failed: usize,
    pub pass: bool,
    pub instances: Vec<InstanceVerdict>,
}

fn instance_rng(seed: u64, id: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (id as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// A connected vertex set grown from a random vertex.
pub fn random_subtree<R: Rng>(t: &Tree, rng: &mut R) -> Vec<usize> {
    let k = rng.gen_range(1..=t.n());
    let mut inside = vec![false; t.n()];
    let start = rng.gen_range(0..t.n());
    inside[start] = true;
    let mut chosen = vec![start];
    while chosen.len() < k {
        let frontier: Vec<usize> = chosen
            .iter()
            .flat_map(|&v| t.neighbors(v).iter().copied())
            .filter(|&u| !inside[u])
            .collect();
        let u = frontier[rng.gen_range(0..frontier.len())];
        inside[u] = true;
        chosen.push(u);
    }
    chosen.sort_unstable();
    chosen
}

struct Check {
    applicable: bool,
    pass: bool,
    values: BTreeMap<String, Value>,
}

impl Check {
    fn new() -> Self {
        Check {
            applicable: true,
            pass: true,
            values: BTreeMap::new(),
        }
    }

    fn set(&mut self, key: &str, v: impl Serialize) {
        self.values.insert(
            key.to_string(),
            serde_json::to_value(v).unwrap_or(Value::Null),
        );
    }

    fn require(&mut self, key: &str, ok: bool) {
        if !ok {
            self.pass = false;
            self.values.insert(format!("failed:{key}"), json!(true));
        }
    }
}

fn check_instance(
    claim: Claim,
    inst: &Instance,
    seed: u64,
    budget: u64,
) -> Result<Check, HarnessError> {
    let t = &inst.tree;
    let mut c = Check::new();
    match claim {
        Claim::FourThirdsBound => {
            let gb = gamma_b_value(t);
            let ibn = solve_ibn(t, budget)?.value;
            let rad = t.radius().max(1);
            c.set("gamma_b", gb);
            c.set("i_bn", ibn);
            c.set("rad", rad);
            c.require("sandwich", gb <= ibn && ibn <= rad);
            c.require("four_thirds", ibn <= (4 * gb).div_ceil(3));
        }
        Claim::SplitsetBound => {
            let all = split::maximum_split_set(t);
            if t.n() == 1 || all.m == 0 {
                c.applicable = false;
                return Ok(c);
            }
            let gb = gamma_b_value(t);
            let bound = gb + (all.m as u32 + 1).div_ceil(3);
            let ibn = solve_ibn(t, budget)?.value;
            c.set("gamma_b", gb);
            c.set("m", all.m);
            c.set("i_bn", ibn);
            c.require("bound", ibn <= bound);
            for ms in all.distinct() {
                let up = construct_ibn_upper(t, ms)?;
                let cert = &up.certificate;
                c.require("construction_cost", up.broadcast.cost() == bound);
                c.require(
                    "construction_certificate",
                    cert.maximal
                        && cert.component_test
                        && cert.base_uncovered_is_split
                        && !cert.base_maximal,
                );
            }
        }
        Claim::UniqueRadialJoin => {
            c.applicable = unique_radial_hypothesis(t);
            if !c.applicable {
                return Ok(c);
            }
            let gb = gamma_b_value(t);
            let ibn = solve_ibn(t, budget)?.value;
            c.set("gamma_b", gb);
            c.set("m", split::max_split_size(t));
            c.set("i_bn", ibn);
            c.require("plus_one", ibn == gb + 1);
        }
        Claim::GammaBMonotone => {
            let keep = random_subtree(t, &mut instance_rng(seed, inst.id));
            let sub = t.induced(&keep).expect("grown sets are connected");
            let (big, small) = (gamma_b_value(t), gamma_b_value(&sub.tree));
            c.set("gamma_b", big);
            c.set("gamma_b_subtree", small);
            c.require("monotone", small <= big);
        }
        Claim::IbnMonotone => {
            let keep = random_subtree(t, &mut instance_rng(seed, inst.id));
            let sub = t.induced(&keep).expect("grown sets are connected");
            let big = solve_ibn(t, budget)?;
            let small = solve_ibn(&sub.tree, budget)?.value;
            c.set("i_bn", big.value);
            c.set("i_bn_subtree", small);
            c.require("monotone", small <= big.value);
            match subtree_reduce(t, &big.witness, &keep) {
                Ok(trace) => {
                    c.set("reduced_cost", trace.final_cost());
                    c.require("reduction_cost", trace.final_cost() <= big.value);
                    c.require(
                        "reduction_maximal",
                        broadcast::is_maximal_bn(&trace.target.tree, &trace.final_broadcast),
                    );
                }
                Err(e) => {
                    c.set("reduction_error", e.to_string());
                    c.require("reduction", false);
                }
            }
        }
        Claim::EdgeCover => {
            let mut witnesses: Vec<Broadcast> = vec![
                solve_ibn(t, budget)?.witness,
                solve_ih(t, budget)?.witness,
                solver::brute_gamma_b(t)?.witness,
                split::gamma_b(t).witness,
                construct::radial_broadcast(t),
            ];
            if let Some(ms) = split::witness_split_set(t) {
                if let Ok(up) = construct_ibn_upper(t, &ms) {
                    witnesses.push(up.base);
                    witnesses.push(up.broadcast);
                }
            }
            let mut triples = 0;
            for f in &witnesses {
                for p in t.diametrical_paths() {
                    let acc =
                        edge_cover_accounting(t, f, &p).expect("diametrical paths lie in the tree");
                    triples += 1;
                    c.require("accounting", acc.holds());
                }
            }
            c.set("triples", triples);
        }
        Claim::PathFormula => {
            let n = inst.params[0];
            let ibn = solve_ibn(t, budget)?.value;
            let ih = solve_ih(t, budget)?.value;
            c.set("i_bn", ibn);
            c.set("i_h", ih);
            if n == 3 {
                c.applicable = false;
                return Ok(c);
            }
            let want = (2 * n as u32).div_ceil(5);
            c.set("formula", want);
            c.require("i_bn", ibn == want);
            c.require("i_h", ih == want);
        }
        Claim::SpiderBound => {
            let (r, s) = (inst.params[0], inst.params[1]);
            let ibn = solve_ibn(t, budget)?.value;
            let z_start = 1 + (r - 1) + r;
            let mut z_edges = vec![(0, z_start)];
            z_edges.extend((z_start..z_start + s - 1).map(|v| (v, v + 1)));
            let mut x_edges = vec![(0, 1)];
            x_edges.extend((1..r - 1).map(|v| (v, v + 1)));
            let bound = ((r + s) as u32).div_ceil(2);
            let mut covering = 0;
            for f in enumerate_optimal(t, Objective::Ibn, ibn)? {
                if !z_edges
                    .iter()
                    .all(|&e| f.support().any(|v| covers_edge(t, &f, v, e)))
                {
                    continue;
                }
                covering += 1;
                c.require("covering_bound", ibn >= bound);
                let u = uncovered_edges(t, &f);
                if x_edges.iter().any(|e| u.contains(e)) {
                    c.require("uncovered_x_bound", ibn > bound);
                }
            }
            c.set("i_bn", ibn);
            c.set("bound", bound);
            c.set("witnesses_covering_short_leg", covering);
        }
        Claim::PathMultiples => {
            let k = inst.params[0] as u32;
            let m = split::maximum_split_set(t).m;
            let gb = gamma_b_value(t);
            let ibn = solve_ibn(t, budget)?.value;
            c.set("m", m);
            c.set("gamma_b", gb);
            c.set("i_bn", ibn);
            c.require("split_size", m as u32 == k - 1);
            c.require("gamma_b", gb == k);
            c.require("i_bn", ibn == (6 * k).div_ceil(5));
            c.require("below_four_thirds", ibn < (4 * k).div_ceil(3));
        }
    }
    Ok(c)
}

pub fn verify_theorem(
    claim: Claim,
    spec: &CorpusSpec,
    budget: u64,
) -> Result<TheoremReport, HarnessError> {
    let instances = corpus::build(spec)?;
    let checks: Vec<Result<Check, HarnessError>> = instances
        .par_iter()
        .map(|inst| check_instance(claim, inst, spec.seed, budget))
        .collect();
    let mut verdicts = Vec::with_capacity(instances.len());
    for (inst, check) in instances.iter().zip(checks) {
        let c = check?;
        verdicts.push(InstanceVerdict {
            id: inst.id,
            label: inst.label.clone(),
            n: inst.tree.n(),
            applicable: c.applicable,
            pass: c.pass,
            values: c.values,
        });
    }
    let skipped = verdicts.iter().filter(|v| !v.applicable).count();
    let failed = verdicts.iter().filter(|v| v.applicable && !v.pass).count();
    Ok(TheoremReport {
        claim,
        corpus: spec.clone(),
        checked: verdicts.len() - skipped,
        skipped,
        failed,
        pass: failed == 0,
        instances: verdicts,
    })
}
