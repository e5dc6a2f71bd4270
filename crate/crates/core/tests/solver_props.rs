mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treecast::broadcast::{
    covers_edge, is_dominating, is_maximal_bn, is_maximal_by_extension, uncovered_edges,
    Independence,
};
use treecast::generate::{path, random_tree, spider, unlabeled_trees};
use treecast::solver::{
    brute_gamma_b, enumerate_optimal, solve_ibn, solve_ih, Objective, DEFAULT_BUDGET,
};
use treecast::split::{gamma_b_value, max_split_size};
use treecast::Tree;

#[test]
fn search_matches_naive_enumeration() {
    for n in 1..=8 {
        for t in unlabeled_trees(n) {
            let naive = common::naive(&t);
            let ibn = solve_ibn(&t, DEFAULT_BUDGET).unwrap();
            let ih = solve_ih(&t, DEFAULT_BUDGET).unwrap();
            let gb = brute_gamma_b(&t).unwrap();
            assert_eq!(ibn.value, naive.i_bn, "{t:?}");
            assert_eq!(ih.value, naive.i_h, "{t:?}");
            assert_eq!(gb.value, naive.gamma_b, "{t:?}");
            assert_eq!(ibn.witness.strengths(), &naive.i_bn_witness[..]);
            assert_eq!(ih.witness.strengths(), &naive.i_h_witness[..]);
            assert_eq!(gb.witness.strengths(), &naive.gamma_b_witness[..]);
        }
    }
}

fn check_witnesses(t: &Tree) -> (u32, u32) {
    let ibn = solve_ibn(t, DEFAULT_BUDGET).unwrap();
    let ih = solve_ih(t, DEFAULT_BUDGET).unwrap();
    assert!(ibn.optimal && ih.optimal);
    assert_eq!(ibn.witness.cost(), ibn.value);
    assert_eq!(ih.witness.cost(), ih.value);
    assert!(is_maximal_bn(t, &ibn.witness));
    assert!(is_maximal_by_extension(
        t,
        &ih.witness,
        Independence::Hearing
    ));
    let gb = brute_gamma_b(t).unwrap();
    assert!(is_dominating(t, &gb.witness));
    (ibn.value, ih.value)
}

#[test]
fn bounds_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..150 {
        let n = rng.gen_range(1..=14);
        let t = random_tree(n, &mut rng);
        let (ibn, _) = check_witnesses(&t);
        let gb = gamma_b_value(&t);
        let rad = t.radius().max(1);
        assert!(gb <= ibn && ibn <= rad, "{t:?}");
        assert!(ibn <= (4 * gb).div_ceil(3), "{t:?}");
        let m = max_split_size(&t) as u32;
        if n > 1 && m > 0 {
            assert!(ibn <= gb + (m + 1).div_ceil(3), "{t:?}");
        }
    }
}

#[test]
fn ibn_is_monotone_on_subtrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..150 {
        let n = rng.gen_range(2..=14);
        let t = random_tree(n, &mut rng);
        let keep = common::random_subtree(&t, rng.gen_range(1..=n), &mut rng);
        let sub = t.induced(&keep).unwrap();
        let big = solve_ibn(&t, DEFAULT_BUDGET).unwrap().value;
        let small = solve_ibn(&sub.tree, DEFAULT_BUDGET).unwrap().value;
        assert!(small <= big, "{t:?} {keep:?}");
    }
}

#[test]
fn spider_leg_bounds() {
    for r in 3..=5usize {
        for s in 1..=3usize {
            let t = spider(&[r - 1, r, s]);
            let ibn = solve_ibn(&t, DEFAULT_BUDGET).unwrap().value;
            // Leg Z is the last one: head 0, then ids after the first two legs.
            let z_start = 1 + (r - 1) + r;
            let xs: Vec<usize> = (1..r).collect();
            let mut z_edges = vec![(0, z_start)];
            z_edges.extend((z_start..z_start + s - 1).map(|v| (v, v + 1)));
            let mut x_edges = vec![(0, 1)];
            x_edges.extend(xs.windows(2).map(|w| (w[0], w[1])));
            let bound = ((r + s) as u32).div_ceil(2);
            for f in enumerate_optimal(&t, Objective::Ibn, ibn).unwrap() {
                let covers = |e| f.support().any(|v| covers_edge(&t, &f, v, e));
                if z_edges.iter().all(|&e| covers(e)) {
                    assert!(ibn >= bound, "S({}, {r}, {s})", r - 1);
                    let u = uncovered_edges(&t, &f);
                    if x_edges.iter().any(|e| u.contains(e)) {
                        assert!(ibn > bound, "S({}, {r}, {s})", r - 1);
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_is_complete_on_small_trees() {
    for n in 2..=7 {
        for t in unlabeled_trees(n) {
            let naive_ibn = common::naive(&t).i_bn;
            let mut expected = Vec::new();
            common::naive_with(&t, |seen| {
                if seen.bn_maximal && seen.cost <= naive_ibn + 1 {
                    expected.push(seen.strengths.to_vec());
                }
            });
            let got: Vec<Vec<u32>> = enumerate_optimal(&t, Objective::Ibn, naive_ibn + 1)
                .unwrap()
                .iter()
                .map(|f| f.strengths().to_vec())
                .collect();
            assert_eq!(got, expected, "{t:?}");
        }
    }
}

#[test]
fn p5_minimum_dominating_broadcasts() {
    let all = enumerate_optimal(&path(5), Objective::GammaB, 2).unwrap();
    let got: Vec<&[u32]> = all.iter().map(|f| f.strengths()).collect();
    assert_eq!(
        got,
        vec![
            &[0, 0, 2, 0, 0][..],
            &[0, 1, 0, 0, 1],
            &[0, 1, 0, 1, 0],
            &[1, 0, 0, 1, 0],
        ]
    );
}

#[test]
fn path_values() {
    for n in [2usize, 4, 5, 6, 7, 8, 9, 10, 11, 12] {
        let want = (2 * n as u32).div_ceil(5);
        assert_eq!(
            solve_ibn(&path(n), DEFAULT_BUDGET).unwrap().value,
            want,
            "P_{n}"
        );
        assert_eq!(
            solve_ih(&path(n), DEFAULT_BUDGET).unwrap().value,
            want,
            "P_{n}"
        );
    }
    assert_eq!(solve_ibn(&path(3), DEFAULT_BUDGET).unwrap().value, 1);
}
