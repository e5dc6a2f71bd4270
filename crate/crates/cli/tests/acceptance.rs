//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use treecast::broadcast::{
    self, edge_cover_accounting, is_maximal_bn, is_maximal_bn_boundary, is_maximal_bn_components,
    is_maximal_by_extension, Independence,
};
use treecast::construct::{construct_ibn_upper, radial_broadcast, subtree_reduce};
use treecast::generate::{path, random_tree, unlabeled_trees};
use treecast::solver::{brute_gamma_b, solve_ibn, solve_ih, DEFAULT_BUDGET};
use treecast::split::{self, gamma_b_value, is_uniquely_radial, maximum_split_set};
use treecast::{Broadcast, Tree};
use treecast_cli::corpus::{self, CorpusSpec, Generator};
use treecast_cli::fixtures;

/// Broadcasts met along the way, replayed by the last two criteria.
#[derive(Default)]
struct Pool {
    /// Trees and broadcasts from the random corpora of criteria 4 and 5.
    accounting: Pairs,
    /// bn-independent broadcasts from criteria 3 to 7.
    independent: Pairs,
}

type Pairs = Vec<(Tree, Broadcast)>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    match failures.first() {
        None => Outcome { pass: true, detail },
        Some(first) => Outcome {
            pass: false,
            detail: format!("{} failures, first: {first}", failures.len()),
        },
    }
}

fn paths() -> Outcome {
    let mut failures = Vec::new();
    for n in (2..=15).filter(|&n| n != 3) {
        let t = path(n);
        let want = (2 * n as u32).div_ceil(5);
        let ibn = solve_ibn(&t, DEFAULT_BUDGET).unwrap().value;
        let ih = solve_ih(&t, DEFAULT_BUDGET).unwrap().value;
        if ibn != want || ih != want {
            failures.push(format!("P_{n}: i_bn {ibn}, i_h {ih}, want {want}"));
        }
    }
    outcome(&failures, "n in 2..=15 except 3".into())
}

fn fixture_values() -> Outcome {
    let wanted = [
        ("split-pair", "gamma_b", json!(4)),
        ("split-pair", "i_bn", json!(5)),
        ("split-pair", "m", json!(1)),
        ("caterpillar-m2", "gamma_b", json!(6)),
        ("caterpillar-m2", "i_bn", json!(6)),
        ("caterpillar-m2", "m", json!(2)),
        ("spider-pair-m1", "gamma_b", json!(6)),
        ("spider-pair-m1", "i_bn", json!(7)),
        ("spider-pair-m1", "m", json!(1)),
        ("ih-gap", "i_bn", json!(8)),
        ("ih-gap", "i_h", json!(9)),
        ("ih-gap", "rad", json!(9)),
    ];
    let mut failures = Vec::new();
    for (name, claim, value) in &wanted {
        let fx = fixtures::load(name).unwrap();
        let got = fixtures::evaluate(&fx, claim, DEFAULT_BUDGET).unwrap();
        if &got != value {
            failures.push(format!("{name} {claim}: {got}, want {value}"));
        }
    }
    let split_pair = fixtures::load("split-pair").unwrap();
    let sets = fixtures::evaluate(&split_pair, "maximum_split_sets", DEFAULT_BUDGET).unwrap();
    let sizes: Vec<usize> = sets
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_array().unwrap().len())
        .collect();
    if sizes != [1, 1] {
        failures.push(format!("split-pair maximum split-set sizes {sizes:?}"));
    }
    for name in fixtures::names() {
        let report = fixtures::verify_fixture(name, DEFAULT_BUDGET).unwrap();
        for c in report.claims.iter().filter(|c| !c.pass) {
            failures.push(format!(
                "{name} {}: {}, want {}",
                c.claim, c.actual, c.expected
            ));
        }
    }
    outcome(
        &failures,
        format!("{} values plus every fixture claim", wanted.len() + 1),
    )
}

fn oracle(pool: &Mutex<Pool>) -> Outcome {
    let trees: Vec<Tree> = (1..=9).flat_map(unlabeled_trees).collect();
    let results: Vec<(Vec<String>, Pairs)> = trees
        .par_iter()
        .map(|t| {
            let mut independent = Vec::new();
            let naive = common::naive_with(t, |s| {
                if s.bn_independent {
                    independent.push(Broadcast::new(t, s.strengths.to_vec()).unwrap());
                }
            });
            let ibn = solve_ibn(t, DEFAULT_BUDGET).unwrap().value;
            let ih = solve_ih(t, DEFAULT_BUDGET).unwrap().value;
            let gb = brute_gamma_b(t).unwrap().value;
            let mut failures = Vec::new();
            if (ibn, ih, gb) != (naive.i_bn, naive.i_h, naive.gamma_b) {
                failures.push(format!(
                    "{:?}: search ({ibn}, {ih}, {gb}), naive ({}, {}, {})",
                    t.edges(),
                    naive.i_bn,
                    naive.i_h,
                    naive.gamma_b
                ));
            }
            let pairs = independent.into_iter().map(|f| (t.clone(), f)).collect();
            (failures, pairs)
        })
        .collect();
    let mut failures = Vec::new();
    let mut p = pool.lock().unwrap();
    for (f, pairs) in results {
        failures.extend(f);
        p.independent.extend(pairs);
    }
    outcome(
        &failures,
        format!("{} trees on up to 9 vertices", trees.len()),
    )
}

fn formula(pool: &Mutex<Pool>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let mut p = pool.lock().unwrap();
    for _ in 0..300 {
        let t = random_tree(rng.gen_range(1..=16), &mut rng);
        let class = split::gamma_b(&t);
        let brute = brute_gamma_b(&t).unwrap();
        if class.gamma_b != brute.value {
            failures.push(format!(
                "{:?}: formula {}, brute {}",
                t.edges(),
                class.gamma_b,
                brute.value
            ));
        }
        p.accounting.push((t.clone(), class.witness));
        p.accounting.push((t, brute.witness));
    }
    outcome(&failures, "300 random trees, n <= 16".into())
}

fn bounds(pool: &Mutex<Pool>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trees: Vec<Tree> = (0..500)
        .map(|_| random_tree(rng.gen_range(1..=14), &mut rng))
        .collect();
    let results: Vec<(Vec<String>, Pairs, Pairs)> = trees
        .par_iter()
        .map(|t| {
            let mut failures = Vec::new();
            let gb = gamma_b_value(t);
            let ibn = solve_ibn(t, DEFAULT_BUDGET).unwrap();
            let ih = solve_ih(t, DEFAULT_BUDGET).unwrap();
            // K_1 has radius 0 but every broadcast on it has cost 1.
            let rad = t.radius().max(1);
            let e = t.edges();
            if !(gb <= ibn.value && ibn.value <= rad) {
                failures.push(format!(
                    "{e:?}: gamma_b {gb}, i_bn {}, rad {rad}",
                    ibn.value
                ));
            }
            if ibn.value > (4 * gb).div_ceil(3) {
                failures.push(format!("{e:?}: i_bn {} over 4/3 bound", ibn.value));
            }
            let mut acc = vec![
                (t.clone(), ibn.witness.clone()),
                (t.clone(), ih.witness.clone()),
                (t.clone(), radial_broadcast(t)),
            ];
            let mut ind = vec![
                (t.clone(), ibn.witness.clone()),
                (t.clone(), radial_broadcast(t)),
            ];
            let all = maximum_split_set(t);
            if all.m > 0 {
                let bound = gb + (all.m as u32 + 1).div_ceil(3);
                if ibn.value > bound {
                    failures.push(format!(
                        "{e:?}: i_bn {} over split-set bound {bound}",
                        ibn.value
                    ));
                }
                for ms in all.distinct() {
                    let up = construct_ibn_upper(t, ms).unwrap();
                    if up.broadcast.cost() != bound || !is_maximal_bn(t, &up.broadcast) {
                        failures.push(format!(
                            "{e:?}: construction cost {}, want {bound}",
                            up.broadcast.cost()
                        ));
                    }
                    acc.push((t.clone(), up.base.clone()));
                    acc.push((t.clone(), up.broadcast.clone()));
                    ind.push((t.clone(), up.base));
                    ind.push((t.clone(), up.broadcast));
                }
            }
            (failures, acc, ind)
        })
        .collect();
    let mut failures = Vec::new();
    let mut p = pool.lock().unwrap();
    for (f, acc, ind) in results {
        failures.extend(f);
        p.accounting.extend(acc);
        p.independent.extend(ind);
    }
    outcome(&failures, "500 random trees, n <= 14".into())
}

fn joins(pool: &Mutex<Pool>) -> Outcome {
    let spec = CorpusSpec {
        generator: Generator::UniqueRadialJoins {
            count: 50,
            max_piece: 7,
        },
        seed: 6,
    };
    let instances = corpus::build(&spec).unwrap();
    let mut failures = Vec::new();
    if instances.len() != 50 {
        failures.push(format!("only {} joins generated", instances.len()));
    }
    let mut p = pool.lock().unwrap();
    for inst in &instances {
        let t = &inst.tree;
        let all = maximum_split_set(t);
        let verified = (1..=2).contains(&all.m)
            && all.distinct().iter().all(|ms| {
                ms.segments
                    .iter()
                    .all(|s| is_uniquely_radial(&s.component.tree).unwrap().unique)
            });
        let gb = gamma_b_value(t);
        let ibn = solve_ibn(t, DEFAULT_BUDGET).unwrap();
        if !verified || ibn.value != gb + 1 {
            failures.push(format!(
                "{}: m {}, verified {verified}, gamma_b {gb}, i_bn {}",
                inst.label, all.m, ibn.value
            ));
        }
        p.independent.push((t.clone(), ibn.witness));
    }
    outcome(
        &failures,
        format!("{} joins of uniquely radial pieces", instances.len()),
    )
}

fn reductions(pool: &Mutex<Pool>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let mut p = pool.lock().unwrap();
    for _ in 0..150 {
        let n = rng.gen_range(2..=16);
        let t = random_tree(n, &mut rng);
        let f = common::random_maximal_bn(&t, &mut rng);
        let keep = common::random_subtree(&t, rng.gen_range(1..=n), &mut rng);
        let e = t.edges();
        let trace = match subtree_reduce(&t, &f, &keep) {
            Ok(tr) => tr,
            Err(err) => {
                failures.push(format!("{e:?} keep {keep:?}: {err}"));
                continue;
            }
        };
        let mut alive: Vec<usize> = (0..n).collect();
        let mut cost = f.cost();
        for step in &trace.steps {
            alive.retain(|&v| v != step.deleted);
            let part = t.induced(&alive).unwrap();
            let local = part
                .mapping
                .iter()
                .map(|v| step.strengths.get(v).copied().unwrap_or(0))
                .collect();
            let g = Broadcast::new(&part.tree, local).unwrap();
            if !is_maximal_bn(&part.tree, &g) || g.cost() > cost {
                failures.push(format!(
                    "{e:?} keep {keep:?}: bad state after deleting {}",
                    step.deleted
                ));
            }
            cost = g.cost();
            p.independent.push((part.tree, g));
        }
        if trace.final_cost() > f.cost() {
            failures.push(format!("{e:?} keep {keep:?}: cost rose"));
        }
        let sub = &trace.target.tree;
        let (big, small) = (
            solve_ibn(&t, DEFAULT_BUDGET).unwrap().value,
            solve_ibn(sub, DEFAULT_BUDGET).unwrap().value,
        );
        if small > big {
            failures.push(format!(
                "{e:?} keep {keep:?}: i_bn {small} on subtree, {big} on tree"
            ));
        }
        p.independent.push((t, f));
    }
    outcome(&failures, "150 random triples, n <= 16".into())
}

fn accounting(pool: &Mutex<Pool>) -> Outcome {
    let p = pool.lock().unwrap();
    let mut failures = Vec::new();
    let mut triples = 0;
    for (t, f) in &p.accounting {
        for path in t.diametrical_paths() {
            triples += 1;
            let acc = edge_cover_accounting(t, f, &path).unwrap();
            if !acc.holds() {
                failures.push(format!("{:?} {:?}: {acc:?}", t.edges(), f.strengths()));
            }
        }
    }
    outcome(&failures, format!("{triples} triples"))
}

fn characterizations(pool: &Mutex<Pool>) -> Outcome {
    let p = pool.lock().unwrap();
    let results: Vec<Option<String>> = p
        .independent
        .par_iter()
        .map(|(t, f)| {
            if !broadcast::is_bn_independent(t, f) {
                return Some(format!(
                    "{:?} {:?}: not bn-independent",
                    t.edges(),
                    f.strengths()
                ));
            }
            let a = is_maximal_bn_boundary(t, f).unwrap();
            let c = is_maximal_by_extension(t, f, Independence::Bn);
            // The component test needs two broadcasters.
            let b = if f.support_size() >= 2 {
                is_maximal_bn_components(t, f).unwrap()
            } else {
                c
            };
            (a != b || b != c).then(|| {
                format!(
                    "{:?} {:?}: boundary {a}, components {b}, extension {c}",
                    t.edges(),
                    f.strengths()
                )
            })
        })
        .collect();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    outcome(&failures, format!("{} broadcasts", p.independent.len()))
}

fn main() -> ExitCode {
    let pool = Mutex::new(Pool::default());
    let criteria: [(&str, &dyn Fn() -> Outcome); 9] = [
        ("path formulas for i_bn and i_h", &paths),
        ("fixture values", &fixture_values),
        ("search agrees with naive enumeration", &|| oracle(&pool)),
        ("split-set formula agrees with brute force", &|| {
            formula(&pool)
        }),
        ("bounds and explicit upper construction", &|| bounds(&pool)),
        ("uniquely radial joins have i_bn = gamma_b + 1", &|| {
            joins(&pool)
        }),
        ("subtree reduction", &|| reductions(&pool)),
        ("edge-cover accounting", &|| accounting(&pool)),
        ("maximality characterizations agree", &|| {
            characterizations(&pool)
        }),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        all &= o.pass;
        println!(
            "{} criterion {}: {name} ({}; {:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
