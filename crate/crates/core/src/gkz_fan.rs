//! The GKZ (secondary) fan of a GIT problem, realized as the chamber complex
//! of the weights: the chamber of a generic c is the intersection of the
//! simplicial cones cone(q_B) over all bases B with c in their interior.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::git_problem::{GitProblem, Subquotient};
use crate::json;
use crate::lattice::{
    dot_int, dot_int_rat, integer_kernel, inverse_rat, primitive_from_rat, primitive_vector, sign_normalize, to_rat,
    Int, IntMatrix, Rat,
};
use crate::polyhedral::{arrangement_cells, Cone, ConeLocation, RationalPoint};

/// A k-subset of weights forming a basis of L^∨_ℚ.
#[derive(Clone, Debug)]
pub struct Basis {
    pub indices: Vec<usize>,
    pub abs_det: Int,
    inverse: Vec<Vec<Rat>>,
}

impl Basis {
    /// Coordinates of c in the basis.
    pub fn coordinates(&self, c: &[Rat]) -> Vec<Rat> {
        self.inverse
            .iter()
            .map(|row| row.iter().zip(c).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn contains_in_interior(&self, c: &[Rat]) -> bool {
        self.coordinates(c).iter().all(Signed::is_positive)
    }

    /// Membership of c + εe₁ + ε²e₂ + … for infinitesimal ε > 0.
    pub fn contains_perturbed(&self, c: &[Rat]) -> bool {
        let x = self.coordinates(c);
        x.iter().zip(&self.inverse).all(|(xj, row)| {
            if !xj.is_zero() {
                return xj.is_positive();
            }
            row.iter().find(|v| !v.is_zero()).is_some_and(Signed::is_positive)
        })
    }

    /// Facet inequalities of cone(q_B), scaled to integers.
    pub fn facet_normals(&self) -> Vec<Vec<Int>> {
        self.inverse
            .iter()
            .map(|row| primitive_from_rat(row).expect("inverse has no zero row"))
            .collect()
    }
}

/// Enumerates all bases of the weight configuration.
pub fn bases_of(p: &GitProblem) -> Vec<Basis> {
    let k = p.k();
    let n = p.n();
    let mut out = Vec::new();
    if k == 0 {
        out.push(Basis {
            indices: Vec::new(),
            abs_det: Int::one(),
            inverse: Vec::new(),
        });
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        let m = p.q().select_columns(&idx);
        let det = m.det();
        if !det.is_zero() {
            let inverse = inverse_rat(&m.to_rat_rows()).expect("nonzero determinant");
            out.push(Basis {
                indices: idx.clone(),
                abs_det: det.abs(),
                inverse,
            });
        }
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Stacky volume of the phase at c + generic infinitesimal perturbation:
/// Σ |det Q_B| over bases whose cone contains the perturbed point.
pub fn phase_rank_at(p: &GitProblem, c: &[Rat]) -> Int {
    bases_of(p)
        .iter()
        .filter(|b| b.contains_perturbed(c))
        .map(|b| b.abs_det.clone())
        .sum()
}

/// True iff c lies on the boundary of no basis cone, i.e. in an open
/// chamber of the fan or in the interior of the empty chamber.
pub fn is_generic(p: &GitProblem, c: &[Rat]) -> bool {
    bases_of(p).iter().all(|b| {
        let x = b.coordinates(c);
        x.iter().any(Signed::is_negative) || x.iter().all(Signed::is_positive)
    })
}

/// Stacky volume of the phase at a generic c; errors on non-generic input.
pub fn phase_rank(p: &GitProblem, c: &[Rat]) -> Result<Int> {
    if !is_generic(p, c) {
        return Err(Error::Internal("stability point is not generic".into()));
    }
    Ok(phase_rank_at(p, c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChamberRef {
    Chamber(usize),
    Empty,
}

impl std::fmt::Display for ChamberRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChamberRef::Chamber(i) => write!(f, "C{i}"),
            ChamberRef::Empty => write!(f, "EMPTY"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Chamber {
    pub id: usize,
    pub sample_point: RationalPoint,
    pub sign_vector: Vec<i8>,
    /// Indices into [`GkzFan::bases`] of the bases containing the chamber.
    pub signature: Vec<usize>,
    /// Closure of the chamber.
    pub cone: Cone,
    pub is_minimal: bool,
    /// Σ |det Q_B| over the signature.
    pub volume: Int,
}

#[derive(Clone, Debug)]
pub struct Wall {
    pub id: usize,
    /// Extreme rays of the wall cone.
    pub generators: Vec<Vec<Int>>,
    /// Primitive conormal, oriented so that ⟨λ, det V⟩ ≥ 0.
    pub lambda: Vec<Int>,
    /// |⟨λ, det V⟩|.
    pub d: Int,
    /// Side where λ > 0.
    pub plus: ChamberRef,
    pub minus: ChamberRef,
    /// Point in the relative interior (sum of generators).
    pub interior_point: RationalPoint,
    /// {i : qᵢ ∈ span W}.
    pub span_indices: Vec<usize>,
}

/// Result of locating a point in the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChamberLocation {
    Chamber(usize),
    Empty,
    /// On a lower-dimensional stratum; lists the chambers whose closure
    /// contains the point and whether it is on the support boundary.
    OnBoundary { chambers: Vec<usize>, support_boundary: bool },
}

/// One wall crossing of a straight-line run.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub wall: usize,
    pub point: RationalPoint,
    pub from: usize,
    pub to: ChamberRef,
}

#[derive(Clone, Debug)]
pub struct Run {
    pub start: RationalPoint,
    pub crossings: Vec<Crossing>,
    pub end: ChamberRef,
    /// Number of perturbations applied before the path became generic.
    pub attempts: usize,
}

#[derive(Debug)]
pub struct GkzFan {
    pub problem: GitProblem,
    pub hyperplanes: Vec<Vec<Int>>,
    pub bases: Vec<Basis>,
    pub chambers: Vec<Chamber>,
    pub walls: Vec<Wall>,
    pub support: Cone,
    pub has_empty_chamber: bool,
}

type FanCache = RwLock<HashMap<IntMatrix, Arc<GkzFan>>>;

fn cache() -> &'static FanCache {
    static CACHE: OnceLock<FanCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Builds (or fetches from the shared cache) the fan of `p`.
pub fn build_fan(p: &GitProblem) -> Arc<GkzFan> {
    if let Some(f) = cache().read().expect("fan cache poisoned").get(p.q()) {
        return f.clone();
    }
    let fan = Arc::new(GkzFan::compute(p));
    cache()
        .write()
        .expect("fan cache poisoned")
        .entry(p.q().clone())
        .or_insert(fan)
        .clone()
}

/// Primitive normals of the hyperplanes spanned by k−1 independent weights.
pub fn candidate_hyperplanes(p: &GitProblem) -> Vec<Vec<Int>> {
    let k = p.k();
    if k == 0 {
        return Vec::new();
    }
    let ws: Vec<usize> = (0..p.n()).filter(|&i| p.weight(i).iter().any(|x| !x.is_zero())).collect();
    let mut out = std::collections::BTreeSet::new();
    let r = k - 1;
    if r > ws.len() {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let rows: Vec<Vec<Int>> = idx.iter().map(|&i| p.weight(ws[i])).collect();
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, k)
        } else {
            IntMatrix::from_rows(&rows).expect("rows")
        };
        let ker = integer_kernel(&m);
        if ker.cols() == 1 {
            let mut v = primitive_vector(&ker.col(0)).expect("nonzero kernel");
            sign_normalize(&mut v);
            out.insert(v);
        }
        let mut i = r;
        loop {
            if i == 0 {
                return out.into_iter().collect();
            }
            i -= 1;
            if idx[i] < ws.len() - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn sum_rays(rays: &[Vec<Int>], k: usize) -> RationalPoint {
    let mut p = vec![Rat::zero(); k];
    for r in rays {
        for (x, y) in p.iter_mut().zip(r) {
            *x += Rat::from_integer(y.clone());
        }
    }
    p
}

impl GkzFan {
    /// Builds the fan without consulting the cache used by [`build_fan`].
    pub fn compute(p: &GitProblem) -> GkzFan {
        let k = p.k();
        let bases = bases_of(p);
        let nonzero: Vec<Vec<Int>> = p.weights().into_iter().filter(|w| w.iter().any(|x| !x.is_zero())).collect();
        let support = Cone::from_generators(k, &nonzero);
        let hyperplanes = candidate_hyperplanes(p);
        if k == 0 {
            let chamber = Chamber {
                id: 0,
                sample_point: Vec::new(),
                sign_vector: Vec::new(),
                signature: vec![0],
                cone: Cone::whole_space(0),
                is_minimal: true,
                volume: Int::one(),
            };
            return GkzFan {
                problem: p.clone(),
                hyperplanes,
                bases,
                chambers: vec![chamber],
                walls: Vec::new(),
                support,
                has_empty_chamber: false,
            };
        }
        let cells = arrangement_cells(&hyperplanes, &support);
        let mut groups: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        for cell in &cells {
            let sig: Vec<usize> = (0..bases.len())
                .filter(|&b| bases[b].contains_in_interior(&cell.sample))
                .collect();
            assert!(!sig.is_empty(), "cell inside the support lies in no basis cone");
            groups.insert(sig, ());
        }
        let neg_det: Vec<Rat> = p.det_v().iter().map(|x| Rat::from_integer(-x)).collect();
        let cy = p.is_calabi_yau();
        let mut chambers: Vec<Chamber> = groups
            .into_keys()
            .map(|sig| {
                let ineqs: Vec<Vec<Int>> = sig.iter().flat_map(|&b| bases[b].facet_normals()).collect();
                let cone = Cone::from_inequalities(k, &ineqs, &[]);
                let sample_point = sum_rays(&cone.rays, k);
                let sign_vector = hyperplanes
                    .iter()
                    .map(|h| {
                        let v = dot_int_rat(h, &sample_point);
                        if v.is_positive() {
                            1
                        } else if v.is_negative() {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect();
                let volume = sig.iter().map(|&b| bases[b].abs_det.clone()).sum();
                let is_minimal = cy || cone.contains(&neg_det);
                Chamber {
                    id: 0,
                    sample_point,
                    sign_vector,
                    signature: sig,
                    cone,
                    is_minimal,
                    volume,
                }
            })
            .collect();
        chambers.sort_by(|a, b| a.cone.rays.cmp(&b.cone.rays));
        for (i, c) in chambers.iter_mut().enumerate() {
            c.id = i;
        }
        let walls = Self::assemble_walls(p, &chambers);
        let has_empty_chamber = !support.is_whole_space();
        GkzFan {
            problem: p.clone(),
            hyperplanes,
            bases,
            chambers,
            walls,
            support,
            has_empty_chamber,
        }
    }

    fn assemble_walls(p: &GitProblem, chambers: &[Chamber]) -> Vec<Wall> {
        let k = p.k();
        let det_v = p.det_v().to_vec();
        let mut seen: BTreeMap<Vec<Vec<Int>>, Wall> = BTreeMap::new();
        for c in chambers {
            for f in &c.cone.facets {
                let gens: Vec<Vec<Int>> = c.cone.rays.iter().filter(|r| dot_int(f, r).is_zero()).cloned().collect();
                if seen.contains_key(&gens) {
                    continue;
                }
                let point = sum_rays(&gens, k);
                let other = chambers.iter().find(|o| {
                    o.id != c.id && o.cone.contains(&point) && o.cone.rays.iter().any(|r| dot_int(f, r).is_negative())
                });
                let other = other.map_or(ChamberRef::Empty, |o| ChamberRef::Chamber(o.id));
                let mut lambda = f.clone();
                let pairing = dot_int(&lambda, &det_v);
                let flip = if pairing.is_zero() {
                    lambda.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative)
                } else {
                    pairing.is_negative()
                };
                let (plus, minus) = if flip {
                    lambda = lambda.iter().map(|x| -x).collect();
                    (other, ChamberRef::Chamber(c.id))
                } else {
                    (ChamberRef::Chamber(c.id), other)
                };
                let d = dot_int(&lambda, &det_v).abs();
                let span_indices = (0..p.n()).filter(|&i| dot_int(&lambda, &p.weight(i)).is_zero()).collect();
                seen.insert(
                    gens.clone(),
                    Wall {
                        id: 0,
                        generators: gens,
                        lambda,
                        d,
                        plus,
                        minus,
                        interior_point: point,
                        span_indices,
                    },
                );
            }
        }
        let mut walls: Vec<Wall> = seen.into_values().collect();
        for (i, w) in walls.iter_mut().enumerate() {
            w.id = i;
        }
        walls
    }

    pub fn k(&self) -> usize {
        self.problem.k()
    }

    pub fn chamber(&self, id: usize) -> &Chamber {
        &self.chambers[id]
    }

    /// Exact classification of a point.
    pub fn chamber_of(&self, c: &[Rat]) -> ChamberLocation {
        match self.support.locate(c) {
            ConeLocation::Outside => return ChamberLocation::Empty,
            ConeLocation::Boundary => {
                let chambers = self.chambers.iter().filter(|ch| ch.cone.contains(c)).map(|ch| ch.id).collect();
                return ChamberLocation::OnBoundary {
                    chambers,
                    support_boundary: true,
                };
            }
            ConeLocation::Interior => {}
        }
        let mut containing = Vec::new();
        for ch in &self.chambers {
            match ch.cone.locate(c) {
                ConeLocation::Interior => return ChamberLocation::Chamber(ch.id),
                ConeLocation::Boundary => containing.push(ch.id),
                ConeLocation::Outside => {}
            }
        }
        ChamberLocation::OnBoundary {
            chambers: containing,
            support_boundary: false,
        }
    }

    /// Chambers whose closure contains −det V (all chambers when CY).
    pub fn minimal_chambers(&self) -> Vec<&Chamber> {
        self.chambers.iter().filter(|c| c.is_minimal).collect()
    }

    /// The wall shared by a chamber facet.
    fn wall_of_facet(&self, chamber: usize, facet: &[Int]) -> usize {
        let c = &self.chambers[chamber];
        let gens: Vec<Vec<Int>> = c.cone.rays.iter().filter(|r| dot_int(facet, r).is_zero()).cloned().collect();
        self.walls
            .iter()
            .find(|w| w.generators == gens)
            .map(|w| w.id)
            .expect("every chamber facet is a wall")
    }

    fn other_side(&self, wall: usize, chamber: usize) -> ChamberRef {
        let w = &self.walls[wall];
        if w.plus == ChamberRef::Chamber(chamber) {
            w.minus
        } else {
            w.plus
        }
    }

    /// Walls crossed moving from the chamber's sample point in direction
    /// −det V until a minimal or the empty chamber is reached.
    pub fn straight_line_run(&self, from: usize) -> Result<Run> {
        self.straight_line_run_from_attempt(from, 0)
    }

    /// Like [`straight_line_run`](Self::straight_line_run), starting the
    /// perturbation schedule at `first_attempt` (0 means unperturbed).
    pub fn straight_line_run_from_attempt(&self, from: usize, first_attempt: usize) -> Result<Run> {
        if self.problem.is_calabi_yau() {
            return Err(Error::Query("no straight-line run for det V = 0".into()));
        }
        let k = self.k();
        let dir: Vec<Rat> = self.problem.det_v().iter().map(|x| Rat::from_integer(-x)).collect();
        let base = self.chambers[from].sample_point.clone();
        let mut attempt = first_attempt;
        loop {
            let start = match perturbed_start(&self.chambers[from].cone, &base, attempt, k) {
                Some(s) => s,
                None => {
                    attempt += 1;
                    continue;
                }
            };
            if let Some(run) = self.trace(from, start, &dir, attempt) {
                return Ok(run);
            }
            attempt += 1;
            if attempt > first_attempt + 64 {
                return Err(Error::Internal("straight-line run stayed degenerate".into()));
            }
        }
    }

    /// Run from an explicit interior point of chamber `from`; errors when the
    /// point is not interior or the ray meets a stratum of codimension ≥ 2.
    pub fn straight_line_run_from_point(&self, from: usize, start: &[Rat]) -> Result<Run> {
        if self.problem.is_calabi_yau() {
            return Err(Error::Query("no straight-line run for det V = 0".into()));
        }
        if self.chambers[from].cone.locate(start) != ConeLocation::Interior {
            return Err(Error::Query("start point is not interior to the chamber".into()));
        }
        let dir: Vec<Rat> = self.problem.det_v().iter().map(|x| Rat::from_integer(-x)).collect();
        self.trace(from, start.to_vec(), &dir, 0)
            .ok_or_else(|| Error::Query("straight line meets a stratum of codimension 2".into()))
    }

    /// Follows the ray; None when it meets a stratum of codimension ≥ 2.
    fn trace(&self, from: usize, start: RationalPoint, dir: &[Rat], attempts: usize) -> Option<Run> {
        let mut current = from;
        let mut x = start.clone();
        let mut crossings = Vec::new();
        loop {
            let ch = &self.chambers[current];
            if ch.is_minimal {
                return Some(Run {
                    start,
                    crossings,
                    end: ChamberRef::Chamber(current),
                    attempts,
                });
            }
            let mut best: Option<(Rat, Vec<&Vec<Int>>)> = None;
            for f in &ch.cone.facets {
                let fv = dot_int_rat(f, dir);
                if !fv.is_negative() {
                    continue;
                }
                let t = -dot_int_rat(f, &x) / fv;
                match &mut best {
                    None => best = Some((t, vec![f])),
                    Some((bt, fs)) => {
                        if t < *bt {
                            *bt = t;
                            *fs = vec![f];
                        } else if t == *bt {
                            fs.push(f);
                        }
                    }
                }
            }
            let Some((t, facets)) = best else {
                return Some(Run {
                    start,
                    crossings,
                    end: ChamberRef::Chamber(current),
                    attempts,
                });
            };
            if facets.len() > 1 || t.is_zero() {
                return None;
            }
            let y: RationalPoint = x.iter().zip(dir).map(|(a, b)| a + &t * b).collect();
            let wall = self.wall_of_facet(current, facets[0]);
            let to = self.other_side(wall, current);
            crossings.push(Crossing {
                wall,
                point: y.clone(),
                from: current,
                to,
            });
            match to {
                ChamberRef::Empty => {
                    return Some(Run {
                        start,
                        crossings,
                        end: ChamberRef::Empty,
                        attempts,
                    })
                }
                ChamberRef::Chamber(next) => {
                    current = next;
                    x = y;
                }
            }
        }
    }

    /// The wall whose relative interior contains c, if any.
    pub fn wall_containing(&self, c: &[Rat]) -> Option<usize> {
        self.walls.iter().map(|w| w.id).find(|&id| {
            let w = &self.walls[id];
            pairing(&w.lambda, c).is_zero()
                && Cone::from_generators(self.k(), &w.generators).locate(c) == ConeLocation::Interior
        })
    }

    /// Codimension-2 cones (keyed by sorted rays) with the walls containing them.
    pub fn codim2_cones(&self) -> Vec<(Vec<Vec<Int>>, Vec<usize>)> {
        let k = self.k();
        if k < 2 {
            return Vec::new();
        }
        let mut map: BTreeMap<Vec<Vec<Int>>, Vec<usize>> = BTreeMap::new();
        for w in &self.walls {
            if k == 2 {
                map.entry(Vec::new()).or_default().push(w.id);
                continue;
            }
            let cone = Cone::from_generators(k, &w.generators);
            for f in &cone.facets {
                let rays: Vec<Vec<Int>> = w.generators.iter().filter(|r| dot_int(f, r).is_zero()).cloned().collect();
                map.entry(rays).or_default().push(w.id);
            }
        }
        map.into_iter()
            .map(|(k, mut v)| {
                v.sort_unstable();
                v.dedup();
                (k, v)
            })
            .collect()
    }

    /// Chamber (or stratum) of a sub-quotient problem's fan containing the
    /// image of this chamber.
    pub fn project_chamber(&self, chamber: usize, sub: &Subquotient) -> Result<(Arc<GkzFan>, ChamberLocation)> {
        let c = sub.map_point(&self.chambers[chamber].sample_point)?;
        let fan = build_fan(&sub.problem);
        let loc = fan.chamber_of(&c);
        Ok((fan, loc))
    }

    pub fn to_json(&self) -> Value {
        let chambers: Vec<Value> = self
            .chambers
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "sample_point": json::rats(&c.sample_point),
                    "rays": json::int_rows(&c.cone.rays),
                    "minimal": c.is_minimal,
                    "volume": json::int(&c.volume),
                })
            })
            .collect();
        let side = |r: ChamberRef| match r {
            ChamberRef::Chamber(i) => Value::from(i),
            ChamberRef::Empty => Value::from("EMPTY"),
        };
        let walls: Vec<Value> = self
            .walls
            .iter()
            .map(|w| {
                json!({
                    "id": w.id,
                    "generators": json::int_rows(&w.generators),
                    "lambda": json::ints(&w.lambda),
                    "d": json::int(&w.d),
                    "plus": side(w.plus),
                    "minus": side(w.minus),
                })
            })
            .collect();
        json!({
            "k": self.k(),
            "chambers": chambers,
            "walls": walls,
            "has_empty_chamber": self.has_empty_chamber,
        })
    }
}

/// Start point for the given perturbation attempt, or None when the
/// perturbation would leave the chamber.
fn perturbed_start(cone: &Cone, base: &[Rat], attempt: usize, k: usize) -> Option<RationalPoint> {
    if attempt == 0 {
        return Some(base.to_vec());
    }
    // εⱼ = 1/101^j along the moment-curve direction (1, j, j², …)
    let j = Int::from(attempt as u64);
    let mut eps = Rat::one();
    for _ in 0..attempt {
        eps /= Rat::from_integer(Int::from(101));
    }
    let mut u = Vec::with_capacity(k);
    let mut pw = Int::one();
    for _ in 0..k {
        u.push(Rat::from_integer(pw.clone()));
        pw *= &j;
    }
    let p: RationalPoint = base.iter().zip(&u).map(|(b, d)| b + &eps * d).collect();
    (cone.locate(&p) == ConeLocation::Interior).then_some(p)
}

/// λ-pairing helper used by callers that hold a wall and a point.
pub fn pairing(lambda: &[Int], c: &[Rat]) -> Rat {
    dot_int_rat(lambda, c)
}

/// Weights as rational vectors (convenience for callers).
pub fn weight_rat(p: &GitProblem, i: usize) -> Vec<Rat> {
    to_rat(&p.weight(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::git_problem::{points_from_i64, weights_from_i64};
    use crate::lattice::{int, rat, rat_frac};

    fn rank_two_cy() -> GitProblem {
        weights_from_i64(2, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1], &[-1, 1], &[0, -1], &[-1, -2]])
    }

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn flop_rank_one() {
        let f = build_fan(&weights_from_i64(1, &[&[1], &[-1]]));
        assert_eq!(f.chambers.len(), 2);
        assert_eq!(f.walls.len(), 1);
        assert_eq!(f.walls[0].lambda, iv(&[1]));
        assert!(!f.has_empty_chamber);
    }

    #[test]
    fn rank_two_cy_fan() {
        let f = build_fan(&rank_two_cy());
        assert_eq!(f.chambers.len(), 5);
        assert_eq!(f.walls.len(), 5);
        let mut gens: Vec<Vec<Int>> = f.walls.iter().map(|w| w.generators[0].clone()).collect();
        gens.sort();
        let mut expect = vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 1]), iv(&[0, -1]), iv(&[-1, -2])];
        expect.sort();
        assert_eq!(gens, expect);
        assert!(f.walls.iter().all(|w| w.d.is_zero()));
        assert_eq!(f.minimal_chambers().len(), 5);
    }

    #[test]
    fn positive_weights_have_empty_chamber() {
        let f = build_fan(&weights_from_i64(1, &[&[1], &[1]]));
        assert_eq!(f.chambers.len(), 1);
        assert!(f.has_empty_chamber);
        assert_eq!(f.chamber_of(&[rat(-1)]), ChamberLocation::Empty);
    }

    #[test]
    fn chamber_of_cases() {
        let f = build_fan(&rank_two_cy());
        match f.chamber_of(&[rat(1), rat_frac(1, 100)]) {
            ChamberLocation::Chamber(id) => {
                let rays = &f.chambers[id].cone.rays;
                assert!(rays.contains(&iv(&[1, 0])) && rays.contains(&iv(&[0, 1])));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(f.chamber_of(&[rat(0), rat(0)]), ChamberLocation::OnBoundary { .. }));
    }

    #[test]
    fn minimal_chamber_of_single_weight_is_empty() {
        let f = build_fan(&weights_from_i64(1, &[&[1]]));
        assert!(f.minimal_chambers().is_empty());
        let run = f.straight_line_run(0).unwrap();
        assert_eq!(run.crossings.len(), 1);
        assert_eq!(run.end, ChamberRef::Empty);
    }

    #[test]
    fn cy_has_no_run() {
        let f = build_fan(&rank_two_cy());
        assert!(f.straight_line_run(0).is_err());
    }

    #[test]
    fn six_points_run_from_coarse_chamber() {
        let p = points_from_i64(&[&[1, 0], &[2, 0], &[3, 0], &[1, 1], &[0, 1], &[0, 2]]);
        let f = build_fan(&p);
        // b vanishing on the vertices (3,0), (0,2) and positive elsewhere
        let b: Vec<Rat> = [1, 1, 0, 1, 1, 0].iter().map(|&x| rat(x)).collect();
        let c = p.q().mul_vec_rat(&b);
        let ChamberLocation::Chamber(coarse) = f.chamber_of(&c) else {
            panic!("coarse point is not generic");
        };
        assert_eq!(f.chambers[coarse].volume, int(6));
        let vols = |run: &Run| -> Vec<Int> {
            let mut v = vec![f.chambers[coarse].volume.clone()];
            v.extend(run.crossings.iter().map(|x| match x.to {
                ChamberRef::Chamber(i) => f.chambers[i].volume.clone(),
                ChamberRef::Empty => Int::zero(),
            }));
            v
        };
        let run = f.straight_line_run(coarse).unwrap();
        assert_eq!(vols(&run), vec![int(6), int(2), int(1)]);
        // a start point whose run loses one unit of volume per wall
        let rays = &f.chambers[coarse].cone.rays;
        let mut start = vec![Rat::zero(); 4];
        for (r, w) in rays.iter().zip([1, 3, 7, 7]) {
            for (s, x) in start.iter_mut().zip(r) {
                *s += Rat::from_integer(x * int(w));
            }
        }
        let run = f.straight_line_run_from_point(coarse, &start).unwrap();
        assert_eq!(run.crossings.len(), 5);
        assert_eq!(vols(&run), (1..=6).rev().map(int).collect::<Vec<_>>());
        assert!(run.crossings.iter().all(|x| f.walls[x.wall].d == int(1)));
        let ChamberRef::Chamber(end) = run.end else { panic!("empty end") };
        assert!(f.chambers[end].is_minimal);
    }

    #[test]
    fn wall_sides_have_opposite_signs() {
        for p in [rank_two_cy(), weights_from_i64(2, &[&[1, 0], &[0, 1], &[1, 1], &[-1, 2]])] {
            let f = build_fan(&p);
            for w in &f.walls {
                if let ChamberRef::Chamber(c) = w.plus {
                    assert!(pairing(&w.lambda, &f.chambers[c].sample_point).is_positive());
                }
                if let ChamberRef::Chamber(c) = w.minus {
                    assert!(pairing(&w.lambda, &f.chambers[c].sample_point).is_negative());
                }
            }
        }
    }

    #[test]
    fn phase_rank_matches_chamber_volume() {
        let p = rank_two_cy();
        let f = build_fan(&p);
        for c in &f.chambers {
            assert_eq!(phase_rank_at(&p, &c.sample_point), c.volume);
        }
    }
}
