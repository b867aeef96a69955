//! Shared fixtures: the worked examples and seeded random corpora.
#![allow(dead_code)]

use gkz_core::git_problem::{points_from_i64, weights_from_i64, GitProblem};
use gkz_core::lattice::{int, rat};
use gkz_core::{Int, IntMatrix, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn six_points() -> GitProblem {
    points_from_i64(&[&[1, 0], &[2, 0], &[3, 0], &[1, 1], &[0, 1], &[0, 2]])
}

/// Lift with zero height on (3,0), (0,2) and positive elsewhere.
pub fn six_points_coarse(p: &GitProblem) -> Vec<Rat> {
    lift_point(p, &[1, 1, 0, 1, 1, 0])
}

pub fn five_points() -> GitProblem {
    points_from_i64(&[&[1, 0], &[2, 0], &[3, 1], &[0, 2], &[0, 3]])
}

pub fn four_points() -> GitProblem {
    points_from_i64(&[&[1, 0], &[2, 0], &[3, 1], &[0, 2]])
}

pub fn lift_point(p: &GitProblem, b: &[i64]) -> Vec<Rat> {
    let b: Vec<Rat> = b.iter().map(|&x| rat(x)).collect();
    p.q().mul_vec_rat(&b)
}

pub fn rank_two_cy() -> GitProblem {
    weights_from_i64(2, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1], &[-1, 1], &[0, -1], &[-1, -2]])
}

pub fn rank_three_cy(n: i64) -> GitProblem {
    weights_from_i64(3, &[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-n, 1, 0], &[n - 2, -2, -1]])
}

pub fn flop() -> GitProblem {
    weights_from_i64(1, &[&[1], &[1], &[-1], &[-1]])
}

pub fn iv(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

fn random_columns(rng: &mut ChaCha8Rng, k: usize, n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|_| loop {
            let c: Vec<Int> = (0..k).map(|_| Int::from(rng.gen_range(-3i64..=3))).collect();
            if c.iter().any(|x| *x != Int::from(0)) {
                break c;
            }
        })
        .collect()
}

fn rank_of(k: usize, cols: &[Vec<Int>]) -> usize {
    IntMatrix::from_columns(cols, k).rank()
}

/// Random non-CY problems: k ≤ 3, N ≤ 7, entries in [−3, 3], full rank,
/// no zero column.
pub fn non_cy_corpus(count: usize, seed: u64) -> Vec<GitProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(1..=3usize);
        let n = rng.gen_range(k + 1..=7usize);
        let cols = random_columns(&mut rng, k, n);
        if rank_of(k, &cols) < k {
            continue;
        }
        let p = GitProblem::from_weight_vectors(k, &cols).expect("full rank");
        if !p.is_calabi_yau() {
            out.push(p);
        }
    }
    out
}

/// Random CY problems: N − 1 random columns and their negated sum.
pub fn cy_corpus(count: usize, seed: u64) -> Vec<GitProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(1..=3usize);
        let n = rng.gen_range(k + 1..=7usize);
        let mut cols = random_columns(&mut rng, k, n - 1);
        let last: Vec<Int> = (0..k).map(|r| -cols.iter().map(|c| c[r].clone()).sum::<Int>()).collect();
        if last.iter().all(|x| *x == Int::from(0)) {
            continue;
        }
        cols.push(last);
        if rank_of(k, &cols) < k {
            continue;
        }
        out.push(GitProblem::from_weight_vectors(k, &cols).expect("full rank"));
    }
    out
}
