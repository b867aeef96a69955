//! Coherent marked subdivisions of Π from a height vector b, with the base
//! point a_{N+1} = 0 lifted to height 0.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gkz_fan::GkzFan;
use crate::git_problem::GitProblem;
use crate::json;
use crate::lattice::{dot_rat, rank_rat, solve_rat, to_rat, Int, Rat};
use crate::polyhedral::{Cone, Polytope, RationalPoint};

/// A cell of T(b) with its marking. `affine` = (c₀, c) with ψ_b(x) = c₀ + c·x
/// on the cell.
#[derive(Clone, Debug)]
pub struct Cell {
    pub polytope: Polytope,
    pub marking: Vec<usize>,
    pub affine: (Rat, Vec<Rat>),
}

#[derive(Clone, Debug)]
pub struct MarkedSubdivision {
    pub cells: Vec<Cell>,
    pub lift: Vec<Rat>,
    /// Index of the base point, equal to N.
    pub base: usize,
    points: Vec<RationalPoint>,
}

impl MarkedSubdivision {
    pub fn uses_base_point(&self) -> bool {
        self.cells.iter().any(|c| c.marking.contains(&self.base))
    }

    /// Cells whose marking contains `at`.
    pub fn cells_marked_by(&self, at: usize) -> Vec<&Cell> {
        self.cells.iter().filter(|c| c.marking.contains(&at)).collect()
    }

    /// ψ_b(x) for x ∈ Π, or None outside Π.
    pub fn psi(&self, x: &[Rat]) -> Option<Rat> {
        if !self.cells.iter().any(|c| c.polytope.contains(x)) {
            return None;
        }
        self.cells.iter().map(|c| &c.affine.0 + dot_rat(&c.affine.1, x)).max()
    }

    /// φ_b(ξ) = min over vertices v of cells of ψ_b(v) + ⟨v, ξ⟩.
    pub fn support_function(&self, xi: &[Rat]) -> Rat {
        self.cells
            .iter()
            .flat_map(|c| c.polytope.vertices.iter().map(move |v| &c.affine.0 + dot_rat(&c.affine.1, v) + dot_rat(v, xi)))
            .min()
            .expect("subdivision has a cell")
    }

    /// Lifted point of marking index i (the base point for i = N).
    pub fn point(&self, i: usize) -> &RationalPoint {
        &self.points[i]
    }

    pub fn total_volume(&self) -> Rat {
        self.cells.iter().map(|c| c.polytope.normalized_volume()).sum()
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                json!({
                    "vertices": c.polytope.vertices.iter().map(|v| json::rats(v)).collect::<Vec<_>>(),
                    "marking": c.marking,
                })
            })
            .collect();
        json!({ "base": self.base, "lift": json::rats(&self.lift), "cells": cells })
    }
}

/// T(b): lower hull of {(aᵢ, bᵢ)} ∪ {(0, 0)} projected to Π.
pub fn regular_subdivision(p: &GitProblem, b: &[Rat]) -> Result<MarkedSubdivision> {
    let n = p.n();
    if b.len() != n {
        return Err(Error::Input(format!("lift has length {}, expected {n}", b.len())));
    }
    let d = p.n_rank();
    let mut points: Vec<RationalPoint> = (0..n).map(|i| to_rat(&p.point(i))).collect();
    points.push(vec![Rat::zero(); d]);
    let mut heights = b.to_vec();
    heights.push(Rat::zero());
    // clear denominators of the heights
    let scale = heights.iter().fold(Int::one(), |acc, h| acc.lcm(h.denom()));
    let gens: Vec<Vec<Int>> = points
        .iter()
        .zip(&heights)
        .map(|(pt, h)| {
            let mut g = vec![Int::one()];
            g.extend(pt.iter().map(|x| x.to_integer() * &scale));
            g.push((h * Rat::from_integer(scale.clone())).to_integer());
            g
        })
        .chain(std::iter::once({
            let mut up = vec![Int::zero(); d + 2];
            up[d + 1] = Int::one();
            up
        }))
        .collect();
    // points are integral so scaling them keeps the hull combinatorics
    let cone = Cone::from_generators(d + 2, &gens);
    let mut cells = Vec::new();
    for f in &cone.facets {
        let fh = &f[d + 1];
        if !fh.is_positive() {
            continue;
        }
        let marking: Vec<usize> = (0..=n)
            .filter(|&i| gens[i].iter().zip(f).map(|(a, b)| a * b).sum::<Int>().is_zero())
            .collect();
        let verts: BTreeSet<RationalPoint> = marking.iter().map(|&i| points[i].clone()).collect();
        let verts: Vec<RationalPoint> = verts.into_iter().collect();
        let polytope = Polytope::convex_hull(&verts);
        // f₀ + s·f_a·x + f_h·s·h = 0 on the facet, so h = −(f₀ + s f_a·x)/(s f_h)
        let s = Rat::from_integer(scale.clone());
        let denom = Rat::from_integer(fh.clone()) * &s;
        let c0 = -Rat::from_integer(f[0].clone()) / &denom;
        let c: Vec<Rat> = f[1..=d].iter().map(|x| -Rat::from_integer(x.clone()) * &s / &denom).collect();
        cells.push(Cell {
            polytope,
            marking,
            affine: (c0, c),
        });
    }
    cells.sort_by(|a, b| a.marking.cmp(&b.marking));
    Ok(MarkedSubdivision {
        cells,
        lift: b.to_vec(),
        base: n,
        points,
    })
}

/// True iff the cells marked by `at` coincide (same polytopes and markings).
pub fn localized_equal(t1: &MarkedSubdivision, t2: &MarkedSubdivision, at: usize) -> bool {
    let key = |t: &MarkedSubdivision| -> Vec<(Vec<RationalPoint>, Vec<usize>)> {
        let mut v: Vec<_> = t
            .cells_marked_by(at)
            .into_iter()
            .map(|c| (c.polytope.vertices.clone(), c.marking.clone()))
            .collect();
        v.sort();
        v
    };
    key(t1) == key(t2)
}

pub fn uses_base_point(t: &MarkedSubdivision) -> bool {
    t.uses_base_point()
}

/// A lift b with Q·b = c supported on the lexicographically first basis.
pub fn least_index_lift(p: &GitProblem, c: &[Rat]) -> Result<Vec<Rat>> {
    let k = p.k();
    if c.len() != k {
        return Err(Error::Input(format!("point has length {}, expected {k}", c.len())));
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for i in 0..p.n() {
        if chosen.len() == k {
            break;
        }
        let mut trial = cols.clone();
        trial.push(to_rat(&p.weight(i)));
        if rank_rat(&trial) == trial.len() {
            cols = trial;
            chosen.push(i);
        }
    }
    let mut b = vec![Rat::zero(); p.n()];
    if k == 0 {
        return Ok(b);
    }
    // rows of Q_B
    let qb: Vec<Vec<Rat>> = (0..k).map(|r| cols.iter().map(|col| col[r].clone()).collect()).collect();
    let x = solve_rat(&qb, c).ok_or_else(|| Error::Internal("weights do not span".into()))?;
    for (j, &i) in chosen.iter().enumerate() {
        b[i] = x[j].clone();
    }
    Ok(b)
}

/// T(b) for a lift of the chamber's sample point. A second lift, shifted by
/// an element of ker Q, must give the same subdivision localized at the base.
pub fn subdivision_of_chamber(fan: &GkzFan, chamber: usize) -> Result<MarkedSubdivision> {
    let p = &fan.problem;
    let c = &fan
        .chambers
        .get(chamber)
        .ok_or_else(|| Error::Query(format!("no chamber {chamber}")))?
        .sample_point;
    subdivision_at(p, c)
}

/// T(b) for a lift of an arbitrary c, checked against a second lift.
pub fn subdivision_at(p: &GitProblem, c: &[Rat]) -> Result<MarkedSubdivision> {
    let b = least_index_lift(p, c)?;
    let t = regular_subdivision(p, &b)?;
    // ker Q_ℝ is spanned by the rows of Ā
    let d = p.n_rank();
    let mut b2 = b.clone();
    for r in 0..d {
        let w = Rat::from_integer(Int::from(r as u64 + 2));
        for (i, x) in b2.iter_mut().enumerate() {
            *x += &w * Rat::from_integer(p.a_bar()[(r, i)].clone());
        }
    }
    let t2 = regular_subdivision(p, &b2)?;
    if !localized_equal(&t, &t2, t.base) {
        return Err(Error::Internal("subdivision depends on the lift".into()));
    }
    Ok(t)
}
