//! Stacky fans of chambers, their volumes, and ranks of minimal phases.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gkz_fan::{build_fan, phase_rank_at, GkzFan};
use crate::git_problem::GitProblem;
use crate::lattice::{to_rat, FgAbelianGroup, Int, Rat};
use crate::polyhedral::{Cone, Polytope, RationalPoint};
use crate::subdivision::subdivision_of_chamber;

/// Stacky fan 𝚺 = (𝖭, Σ, {ãᵢ}) read off the cells of T(b) marked by the base.
#[derive(Clone, Debug)]
pub struct StackyFan {
    pub group: FgAbelianGroup,
    pub cones: Vec<Cone>,
    /// (i, free part of ãᵢ, torsion residues of ãᵢ) for every ray marker.
    pub markers: Vec<(usize, Vec<Int>, Vec<Int>)>,
    /// σ̂ for each cone: conv of 0 and its markers.
    pub simplices: Vec<Polytope>,
    torsion_order: Int,
}

impl StackyFan {
    /// |𝖭_tors| · normalized volume of |𝚺|.
    pub fn volume(&self) -> Int {
        let v: Rat = self.simplices.iter().map(Polytope::normalized_volume).sum();
        assert!(v.is_integer(), "lattice simplices have integral volume");
        v.to_integer() * &self.torsion_order
    }

    pub fn dim(&self) -> usize {
        self.group.free_rank
    }
}

pub fn stacky_fan_of_chamber(fan: &GkzFan, chamber: usize) -> Result<StackyFan> {
    let p = &fan.problem;
    let t = subdivision_of_chamber(fan, chamber)?;
    if !t.uses_base_point() {
        return Err(Error::Query("chamber is empty".into()));
    }
    let d = p.n_rank();
    let mut cones = Vec::new();
    let mut simplices = Vec::new();
    let mut markers = Vec::new();
    for cell in t.cells_marked_by(t.base) {
        let idx: Vec<usize> = cell.marking.iter().copied().filter(|&i| i != t.base).collect();
        let gens: Vec<Vec<Int>> = idx.iter().map(|&i| p.point(i)).collect();
        cones.push(Cone::from_generators(d, &gens));
        let mut pts: Vec<RationalPoint> = gens.iter().map(|g| to_rat(g)).collect();
        pts.push(vec![Rat::zero(); d]);
        simplices.push(Polytope::convex_hull(&pts));
        for &i in &idx {
            if !markers.iter().any(|(j, _, _)| *j == i) {
                markers.push((i, p.point(i), p.torsion_class(i)));
            }
        }
    }
    markers.sort();
    Ok(StackyFan {
        group: p.group().clone(),
        cones,
        markers,
        simplices,
        torsion_order: p.torsion_order(),
    })
}

pub fn stacky_volume(s: &StackyFan) -> Int {
    s.volume()
}

/// rank K₀ of the minimal phase: the stacky volume of a minimal chamber, or
/// 0 when the minimal phase is empty.
pub fn minimal_phase_rank(p: &GitProblem) -> Result<Int> {
    let fan = build_fan(p);
    let Some(c) = fan.minimal_chambers().first().map(|c| c.id) else {
        return Ok(Int::zero());
    };
    Ok(stacky_fan_of_chamber(&fan, c)?.volume())
}

/// Minimal-phase rank by the lexicographic M-side count at −det V.
pub fn minimal_phase_rank_fast(p: &GitProblem) -> Int {
    let c: Vec<Rat> = p.det_v().iter().map(|x| Rat::from_integer(-x)).collect();
    phase_rank_at(p, &c)
}

/// |𝖭_tors| × normalized volume of cone(a) ∖ (conv(a) + cone(a)) for the
/// raw points a in ℤ^d, computed in conv(0, M·a) for M = N+1 and re-checked
/// with 2M.
pub fn region_volume_oracle(d: usize, points: &[Vec<Int>], torsion_order: &Int) -> Result<Int> {
    if points.is_empty() {
        return Ok(torsion_order.clone());
    }
    if d == 0 {
        return Ok(Int::zero());
    }
    let pts: Vec<RationalPoint> = points.iter().map(|a| to_rat(a)).collect();
    let origin = vec![Rat::zero(); d];
    if Polytope::convex_hull(&pts).contains(&origin) {
        return Ok(Int::zero());
    }
    // conv(a) + cone(a) in homogeneous coordinates
    let mut gens: Vec<Vec<Int>> = Vec::new();
    for a in points {
        let mut g = vec![Int::one()];
        g.extend(a.iter().cloned());
        gens.push(g);
        let mut r = vec![Int::zero()];
        r.extend(a.iter().cloned());
        gens.push(r);
    }
    let plus = Cone::from_generators(d + 1, &gens);
    let vol_at = |m: usize| -> Result<Rat> {
        let scaled: Vec<RationalPoint> = std::iter::once(origin.clone())
            .chain(pts.iter().map(|a| a.iter().map(|x| x * Rat::from_integer(Int::from(m as u64))).collect()))
            .collect();
        let outer = Polytope::convex_hull(&scaled);
        if outer.dim() < d {
            return Err(Error::Input("points do not span a full-dimensional cone".into()));
        }
        let mut ineqs = outer.facets.clone();
        ineqs.extend(plus.facets.iter().cloned());
        let inner = match Polytope::from_inequalities(d, &ineqs, &plus.equalities) {
            Some(q) if q.dim() == d => q.normalized_volume(),
            _ => Rat::zero(),
        };
        Ok(outer.normalized_volume() - inner)
    };
    let v1 = vol_at(points.len() + 1)?;
    let v2 = vol_at(2 * (points.len() + 1))?;
    if v1 != v2 {
        return Err(Error::Internal("oracle region not captured at scale N+1".into()));
    }
    assert!(v1.is_integer() && !v1.is_negative());
    Ok(v1.to_integer() * torsion_order)
}

/// Minimal-phase rank of a problem by the region-volume oracle.
pub fn minimal_phase_rank_oracle(p: &GitProblem) -> Result<Int> {
    region_volume_oracle(p.n_rank(), &p.points(), &p.torsion_order())
}
