//! Deterministic tree families and seeded random trees.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tree::{Edge, Tree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeKind {
    Path(usize),
    /// Generalized spider: a head of degree k with legs of the given lengths.
    Spider(Vec<usize>),
    /// A spine of `pendants.len()` vertices; spine vertex i gets
    /// `pendants[i]` leaves.
    Caterpillar(Vec<usize>),
    /// Uniform labeled tree decoded from a seeded Prüfer sequence.
    Random {
        n: usize,
        seed: u64,
    },
}

pub fn generate(kind: &TreeKind) -> Result<Tree, GenerateError> {
    let bad = |msg: &str| Err(GenerateError::BadParameters(msg.to_string()));
    match kind {
        TreeKind::Path(n) => {
            if *n == 0 {
                return bad("path needs n >= 1");
            }
            Ok(path(*n))
        }
        TreeKind::Spider(legs) => {
            if legs.len() < 3 {
                return bad("spider needs at least three legs");
            }
            if legs.contains(&0) {
                return bad("spider legs must have positive length");
            }
            Ok(spider(legs))
        }
        TreeKind::Caterpillar(pendants) => {
            if pendants.is_empty() {
                return bad("caterpillar needs a nonempty spine");
            }
            Ok(caterpillar(pendants))
        }
        TreeKind::Random { n, seed } => {
            if *n == 0 {
                return bad("random tree needs n >= 1");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok(random_tree(*n, &mut rng))
        }
    }
}

pub fn path(n: usize) -> Tree {
    let edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
    Tree::new(n, &edges).expect("paths are trees")
}

/// Head is vertex 0; leg i occupies the next `legs[i]` ids, head outward.
pub fn spider(legs: &[usize]) -> Tree {
    let n = 1 + legs.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Tree::new(n, &edges).expect("spiders are trees")
}

pub fn caterpillar(pendants: &[usize]) -> Tree {
    let spine = pendants.len();
    let n = spine + pendants.iter().sum::<usize>();
    let mut edges: Vec<Edge> = (1..spine).map(|i| (i - 1, i)).collect();
    let mut next = spine;
    for (i, &k) in pendants.iter().enumerate() {
        for _ in 0..k {
            edges.push((i, next));
            next += 1;
        }
    }
    Tree::new(n, &edges).expect("caterpillars are trees")
}

pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    match n {
        0 => panic!("random tree needs n >= 1"),
        1 => Tree::new(1, &[]).unwrap(),
        2 => Tree::new(2, &[(0, 1)]).unwrap(),
        _ => {
            let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(&code)
        }
    }
}

/// Decodes a Prüfer sequence of length n - 2 into a tree on n vertices.
pub fn prufer_decode(code: &[usize]) -> Tree {
    let n = code.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in code {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer code always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Tree::new(n, &edges).expect("Prüfer decoding yields a tree")
}

/// One representative per isomorphism class of trees on `n` vertices,
/// sorted by canonical form.
pub fn unlabeled_trees(n: usize) -> Vec<Tree> {
    assert!(n >= 1);
    let mut level: BTreeMap<String, Tree> = BTreeMap::new();
    let k1 = Tree::new(1, &[]).unwrap();
    level.insert(k1.canonical_form(), k1);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..t.n() {
                let mut edges = t.edges().to_vec();
                edges.push((v, size - 1));
                let grown = Tree::new(size, &edges).unwrap();
                next.entry(grown.canonical_form()).or_insert(grown);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        let p = generate(&TreeKind::Path(6)).unwrap();
        assert_eq!((p.n(), p.diameter()), (6, 5));

        let s = generate(&TreeKind::Spider(vec![5, 6, 7])).unwrap();
        assert_eq!(s.n(), 19);
        assert_eq!(s.degree(0), 3);
        assert_eq!(s.diameter(), 13);

        let c = generate(&TreeKind::Caterpillar(vec![1, 0, 2])).unwrap();
        assert_eq!(c.n(), 6);
        assert_eq!(c.degree(2), 3);
    }

    #[test]
    fn bad_parameters() {
        for kind in [
            TreeKind::Path(0),
            TreeKind::Spider(vec![1, 2]),
            TreeKind::Spider(vec![1, 0, 2]),
            TreeKind::Caterpillar(vec![]),
            TreeKind::Random { n: 0, seed: 3 },
        ] {
            assert!(matches!(
                generate(&kind),
                Err(GenerateError::BadParameters(_))
            ));
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = generate(&TreeKind::Random { n: 10, seed: 1 }).unwrap();
        let b = generate(&TreeKind::Random { n: 10, seed: 1 }).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.edges().len(), 9);
    }

    #[test]
    fn prufer_known_code() {
        // Code [3, 3, 3] on 5 vertices is the star centred at 3.
        let t = prufer_decode(&[3, 3, 3]);
        assert_eq!(t.degree(3), 4);
    }

    #[test]
    fn unlabeled_counts() {
        // OEIS A000055.
        let counts: Vec<usize> = (1..=10).map(|n| unlabeled_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }
}
