//! Problems shared by the benchmarks.

use gkz_core::git_problem::{points_from_i64, weights_from_i64};
use gkz_core::{GitProblem, Rat};

pub fn six_points() -> GitProblem {
    points_from_i64(&[&[1, 0], &[2, 0], &[3, 0], &[1, 1], &[0, 1], &[0, 2]])
}

/// A point of the chamber whose lift is zero on (3,0) and (0,2).
pub fn six_points_coarse(p: &GitProblem) -> Vec<Rat> {
    let b: Vec<Rat> = [1, 1, 0, 1, 1, 0].iter().map(|&x| Rat::from_integer(x.into())).collect();
    p.q().mul_vec_rat(&b)
}

pub fn rank_two_cy() -> GitProblem {
    weights_from_i64(2, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1], &[-1, 1], &[0, -1], &[-1, -2]])
}

pub fn rank_three_cy(n: i64) -> GitProblem {
    weights_from_i64(3, &[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-n, 1, 0], &[n - 2, -2, -1]])
}
