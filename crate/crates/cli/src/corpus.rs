//! Deterministic families of test trees.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use treecast::generate::{path, random_tree, spider, unlabeled_trees};
use treecast::solver::MAX_VERTICES;
use treecast::split;
use treecast::Tree;

use crate::fixtures::unique_radial_hypothesis;
use crate::HarnessError;

pub const MAX_INSTANCES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    /// Uniform random labeled trees with order in `n_min..=n_max`.
    Random {
        count: usize,
        n_min: usize,
        n_max: usize,
    },
    Paths {
        ns: Vec<usize>,
    },
    /// Paths on `3k` vertices.
    PathMultiples {
        ks: Vec<usize>,
    },
    /// Spiders `S(r - 1, r, s)`.
    Spiders {
        rs: Vec<usize>,
        ss: Vec<usize>,
    },
    /// Two or three uniquely radial pieces joined end to end along
    /// diametrical paths, kept only when the joined tree has a maximum
    /// split-set of size 1 or 2 whose components are all uniquely radial.
    UniqueRadialJoins {
        count: usize,
        max_piece: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub generator: Generator,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub id: usize,
    pub label: String,
    /// Family parameters, e.g. `[n]` for paths or `[r, s]` for spiders.
    pub params: Vec<usize>,
    pub tree: Tree,
}

fn too_large(what: String) -> HarnessError {
    HarnessError::CorpusTooLarge(what)
}

pub fn build(spec: &CorpusSpec) -> Result<Vec<Instance>, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::new();
    let mut push = |label: String, params: Vec<usize>, tree: Tree| {
        out.push(Instance {
            id: out.len(),
            label,
            params,
            tree,
        })
    };
    match &spec.generator {
        Generator::Random {
            count,
            n_min,
            n_max,
        } => {
            if *count > MAX_INSTANCES {
                return Err(too_large(format!("{count} instances")));
            }
            if *n_max > MAX_VERTICES || n_min > n_max || *n_min == 0 {
                return Err(too_large(format!("order range {n_min}..={n_max}")));
            }
            for _ in 0..*count {
                let n = rng.gen_range(*n_min..=*n_max);
                let t = random_tree(n, &mut rng);
                push(format!("random n={n}"), vec![n], t);
            }
        }
        Generator::Paths { ns } => {
            for &n in ns {
                if n == 0 || n > MAX_VERTICES {
                    return Err(too_large(format!("path of order {n}")));
                }
                push(format!("P_{n}"), vec![n], path(n));
            }
        }
        Generator::PathMultiples { ks } => {
            for &k in ks {
                if k == 0 || 3 * k > MAX_VERTICES {
                    return Err(too_large(format!("path of order 3*{k}")));
                }
                push(format!("P_{}", 3 * k), vec![k], path(3 * k));
            }
        }
        Generator::Spiders { rs, ss } => {
            for &r in rs {
                for &s in ss {
                    if r < 2 || s == 0 || 2 * r + s > MAX_VERTICES {
                        return Err(too_large(format!("spider r={r} s={s}")));
                    }
                    push(
                        format!("S({}, {r}, {s})", r - 1),
                        vec![r, s],
                        spider(&[r - 1, r, s]),
                    );
                }
            }
        }
        Generator::UniqueRadialJoins { count, max_piece } => {
            if *count > MAX_INSTANCES || *max_piece > split::UNIQUENESS_CAP {
                return Err(too_large(format!(
                    "{count} joins of pieces up to {max_piece}"
                )));
            }
            for (t, label) in unique_radial_joins(*count, *max_piece, &mut rng) {
                let pieces = label.matches('+').count() + 1;
                push(label, vec![pieces], t);
            }
        }
    }
    Ok(out)
}

/// Uniquely radial trees of even diameter, the building blocks for joins.
pub fn unique_radial_pieces(max_piece: usize) -> Vec<Tree> {
    (3..=max_piece)
        .flat_map(unlabeled_trees)
        .filter(|t| t.diameter() % 2 == 0)
        .filter(|t| split::is_uniquely_radial(t).is_ok_and(|u| u.unique))
        .collect()
}

/// Appends `piece` to `edges`, shifting its ids by `offset`.
fn place(edges: &mut Vec<(usize, usize)>, piece: &Tree, offset: usize) {
    edges.extend(piece.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
}

fn unique_radial_joins<R: Rng>(count: usize, max_piece: usize, rng: &mut R) -> Vec<(Tree, String)> {
    let pool = unique_radial_pieces(max_piece);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    if pool.is_empty() {
        return out;
    }
    let mut attempts = 0;
    while out.len() < count && attempts < count * 500 {
        attempts += 1;
        let pieces = rng.gen_range(2..=3);
        let chosen: Vec<&Tree> = (0..pieces).map(|_| pool.choose(rng).unwrap()).collect();
        // Each piece is entered and left through the two ends of one of its
        // diametrical paths.
        let mut ends = Vec::new();
        for t in &chosen {
            let p = t.diametrical_paths().choose(rng).unwrap().clone();
            let (a, b) = if rng.gen_bool(0.5) {
                (p.first(), p.last())
            } else {
                (p.last(), p.first())
            };
            ends.push((a, b));
        }
        let mut edges = Vec::new();
        let mut offset = 0;
        let mut prev_exit = None;
        for (t, &(entry, exit)) in chosen.iter().zip(&ends) {
            place(&mut edges, t, offset);
            if let Some(x) = prev_exit {
                edges.push((x, entry + offset));
            }
            prev_exit = Some(exit + offset);
            offset += t.n();
        }
        let t = Tree::new(offset, &edges).expect("joining trees by single edges gives a tree");
        if !unique_radial_hypothesis(&t) || !seen.insert(t.canonical_form()) {
            continue;
        }
        let label = chosen
            .iter()
            .map(|p| format!("n{}d{}", p.n(), p.diameter()))
            .collect::<Vec<_>>()
            .join("+");
        out.push((t, label));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_are_deterministic() {
        let spec = CorpusSpec {
            generator: Generator::Random {
                count: 20,
                n_min: 2,
                n_max: 12,
            },
            seed: 9,
        };
        let a = build(&spec).unwrap();
        let b = build(&spec).unwrap();
        assert_eq!(a.len(), 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.tree, y.tree);
        }
    }

    #[test]
    fn rejects_oversized_requests() {
        let spec = CorpusSpec {
            generator: Generator::Random {
                count: 5,
                n_min: 2,
                n_max: 500,
            },
            seed: 0,
        };
        assert!(matches!(build(&spec), Err(HarnessError::CorpusTooLarge(_))));
    }

    #[test]
    fn pieces_include_small_stars() {
        let pool = unique_radial_pieces(5);
        assert!(pool.iter().any(|t| t.n() == 3));
        assert!(pool.iter().all(|t| t.diameter() % 2 == 0));
        // P_5 has a second minimum dominating broadcast.
        let p5 = path(5).canonical_form();
        assert!(!pool.iter().any(|t| t.canonical_form() == p5));
    }
}
