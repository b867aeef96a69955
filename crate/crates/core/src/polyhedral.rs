//! Exact polyhedral geometry over the rationals.
//!
//! Conversions between generator and inequality descriptions use the
//! double description method on primitive integer vectors; rational inputs
//! are rescaled first, which does not change any cone.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::lattice::{
    dot_int, dot_int_rat, integer_kernel, primitive_from_rat, primitive_vector, rank_rat, solve_rat, to_rat,
    Int, IntMatrix, Rat,
};

/// Point with exact rational coordinates (always reduced, positive denominators).
pub type RationalPoint = Vec<Rat>;

fn int_rank(rows: &[Vec<Int>]) -> usize {
    let r: Vec<Vec<Rat>> = rows.iter().map(|v| to_rat(v)).collect();
    rank_rat(&r)
}

fn matrix_of(rows: &[Vec<Int>], cols: usize) -> IntMatrix {
    if rows.is_empty() {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(rows).expect("consistent rows")
    }
}

/// Extreme rays of the pointed cone {x ∈ ℚ^d : a·x ≥ 0 for all rows a}.
/// Requires the rows to span ℚ^d.
fn dd_pointed(d: usize, ineqs: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if d == 0 {
        return Vec::new();
    }
    let m = ineqs.len();
    // greedy independent subset for the initial simplicial cone
    let mut basis_idx = Vec::new();
    let mut acc: Vec<Vec<Rat>> = Vec::new();
    for (i, a) in ineqs.iter().enumerate() {
        acc.push(to_rat(a));
        if rank_rat(&acc) == basis_idx.len() + 1 {
            basis_idx.push(i);
        } else {
            acc.pop();
        }
        if basis_idx.len() == d {
            break;
        }
    }
    assert_eq!(basis_idx.len(), d, "inequalities do not span");
    let inv = crate::lattice::inverse_rat(&acc).expect("independent rows");
    let mut rays: Vec<(Vec<Int>, Vec<bool>)> = Vec::new();
    for j in 0..d {
        let col: Vec<Rat> = (0..d).map(|i| inv[i][j].clone()).collect();
        let r = primitive_from_rat(&col).expect("nonzero column");
        let mut tight = vec![false; m];
        for (k, &bi) in basis_idx.iter().enumerate() {
            if k != j {
                tight[bi] = true;
            }
        }
        rays.push((r, tight));
    }
    let processed: Vec<bool> = (0..m).map(|i| basis_idx.contains(&i)).collect();
    let mut processed = processed;
    for i in 0..m {
        if processed[i] {
            continue;
        }
        let a = &ineqs[i];
        let vals: Vec<Int> = rays.iter().map(|(r, _)| dot_int(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        let mut next: Vec<(Vec<Int>, Vec<bool>)> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<bool> = (0..m).map(|t| rays[p].1[t] && rays[n].1[t]).collect();
                let count = common.iter().filter(|&&x| x).count();
                if count + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|o| {
                    o == p || o == n || !(0..m).all(|t| !common[t] || rays[o].1[t])
                });
                if !adjacent {
                    continue;
                }
                let v: Vec<Int> = rays[n]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(x, y)| &vals[p] * x - &vals[n] * y)
                    .collect();
                let v = primitive_vector(&v).expect("adjacent rays are independent");
                let mut tight = common;
                tight[i] = true;
                next.push((v, tight));
            }
        }
        for (j, (r, mut tight)) in rays.into_iter().enumerate() {
            if vals[j].is_zero() {
                tight[i] = true;
                next.push((r, tight));
            } else if vals[j].is_positive() {
                next.push((r, tight));
            }
        }
        rays = next;
        processed[i] = true;
    }
    let set: BTreeSet<Vec<Int>> = rays.into_iter().map(|(r, _)| r).collect();
    set.into_iter().collect()
}

/// Generators of {x : e·x = 0 for e in eqs, a·x ≥ 0 for a in ineqs}:
/// returns (extreme rays of the pointed part, lineality basis).
pub fn h_to_v(d: usize, eqs: &[Vec<Int>], ineqs: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let nonzero_eqs: Vec<Vec<Int>> = eqs.iter().filter(|e| e.iter().any(|x| !x.is_zero())).cloned().collect();
    if !nonzero_eqs.is_empty() {
        let b = integer_kernel(&matrix_of(&nonzero_eqs, d));
        let m = b.cols();
        if m == 0 {
            return (Vec::new(), Vec::new());
        }
        let sub: Vec<Vec<Int>> = ineqs.iter().map(|a| b.transpose().mul_vec(a)).collect();
        let (rays, lin) = h_to_v(m, &[], &sub);
        return (
            canonical_set(rays.iter().map(|r| b.mul_vec(r)).collect()),
            lin.iter().map(|l| b.mul_vec(l)).collect(),
        );
    }
    let ineqs: Vec<Vec<Int>> = ineqs.iter().filter(|a| a.iter().any(|x| !x.is_zero())).cloned().collect();
    let lin = if ineqs.is_empty() {
        IntMatrix::identity(d)
    } else {
        integer_kernel(&matrix_of(&ineqs, d))
    };
    let l = lin.cols();
    if l == d {
        return (Vec::new(), lin.columns());
    }
    let comp = if l == 0 {
        IntMatrix::identity(d)
    } else {
        integer_kernel(&lin.transpose())
    };
    let sub: Vec<Vec<Int>> = ineqs.iter().map(|a| comp.transpose().mul_vec(a)).collect();
    let rays = dd_pointed(comp.cols(), &sub);
    (
        canonical_set(rays.iter().map(|r| comp.mul_vec(r)).collect()),
        lin.columns(),
    )
}

/// Inequality description of cone(gens) + span(lineality): returns
/// (irredundant facet normals, equality basis).
pub fn v_to_h(d: usize, gens: &[Vec<Int>], lineality: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    h_to_v(d, lineality, gens)
}

fn canonical_set(v: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let set: BTreeSet<Vec<Int>> = v.into_iter().collect();
    set.into_iter().collect()
}

/// Where a point sits relative to a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeLocation {
    /// In the relative interior.
    Interior,
    Boundary,
    Outside,
}

/// Polyhedral cone carrying both descriptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub ambient_dim: usize,
    pub generators: Vec<Vec<Int>>,
    /// Extreme rays of the pointed part (orthogonal to the lineality space
    /// only up to the chosen complement).
    pub rays: Vec<Vec<Int>>,
    pub lineality: Vec<Vec<Int>>,
    /// Facet normals: a·x ≥ 0.
    pub facets: Vec<Vec<Int>>,
    /// Basis of the linear forms vanishing on the cone's span.
    pub equalities: Vec<Vec<Int>>,
}

impl Cone {
    pub fn from_generators(d: usize, gens: &[Vec<Int>]) -> Cone {
        let gens: Vec<Vec<Int>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        let (facets, equalities) = v_to_h(d, &gens, &[]);
        let (rays, lineality) = h_to_v(d, &equalities, &facets);
        Cone {
            ambient_dim: d,
            generators: gens,
            rays,
            lineality,
            facets,
            equalities,
        }
    }

    pub fn from_inequalities(d: usize, ineqs: &[Vec<Int>], eqs: &[Vec<Int>]) -> Cone {
        let (rays, lineality) = h_to_v(d, eqs, ineqs);
        let (facets, equalities) = v_to_h(d, &rays, &lineality);
        let mut generators = rays.clone();
        for l in &lineality {
            generators.push(l.clone());
            generators.push(l.iter().map(|x| -x).collect());
        }
        Cone {
            ambient_dim: d,
            generators,
            rays,
            lineality,
            facets,
            equalities,
        }
    }

    pub fn whole_space(d: usize) -> Cone {
        Cone::from_inequalities(d, &[], &[])
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equalities.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn is_whole_space(&self) -> bool {
        self.equalities.is_empty() && self.facets.is_empty()
    }

    pub fn locate(&self, x: &[Rat]) -> ConeLocation {
        if self.equalities.iter().any(|e| !dot_int_rat(e, x).is_zero()) {
            return ConeLocation::Outside;
        }
        let mut boundary = false;
        for f in &self.facets {
            let v = dot_int_rat(f, x);
            if v.is_negative() {
                return ConeLocation::Outside;
            }
            if v.is_zero() {
                boundary = true;
            }
        }
        if boundary {
            ConeLocation::Boundary
        } else {
            ConeLocation::Interior
        }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.locate(x) != ConeLocation::Outside
    }

    /// Sum of the extreme rays; lies in the relative interior.
    pub fn interior_point(&self) -> RationalPoint {
        let mut p = vec![Rat::zero(); self.ambient_dim];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += Rat::from_integer(y.clone());
            }
        }
        p
    }
}

/// Classifies `x` against `cone` by facet signs.
pub fn point_in_cone(x: &[Rat], cone: &Cone) -> ConeLocation {
    cone.locate(x)
}

/// One full-dimensional cell of a central hyperplane arrangement.
#[derive(Clone, Debug)]
pub struct ArrangementCell {
    /// Strict sign (+1/−1) of each hyperplane on the cell, 0 for zero normals.
    pub signs: Vec<i8>,
    pub sample: RationalPoint,
    pub cone: Cone,
}

/// Full-dimensional cells cut out of the full-dimensional cone `within` by
/// the hyperplanes {h·x = 0}, sorted by sign vector.
pub fn arrangement_cells(hyperplanes: &[Vec<Int>], within: &Cone) -> Vec<ArrangementCell> {
    let d = within.ambient_dim;
    assert!(within.is_full_dimensional(), "arrangement region must be full-dimensional");
    // (inequalities, rays, lineality)
    let mut cells: Vec<(Vec<Vec<Int>>, Vec<Vec<Int>>, Vec<Vec<Int>>)> =
        vec![(within.facets.clone(), within.rays.clone(), within.lineality.clone())];
    for h in hyperplanes {
        if h.iter().all(Zero::is_zero) {
            continue;
        }
        let mut next = Vec::with_capacity(cells.len() * 2);
        for (ineqs, rays, lin) in cells {
            let through_lin = lin.iter().any(|l| !dot_int(h, l).is_zero());
            let pos = through_lin || rays.iter().any(|r| dot_int(h, r).is_positive());
            let neg = through_lin || rays.iter().any(|r| dot_int(h, r).is_negative());
            if pos && neg {
                for s in [1i64, -1] {
                    let mut ni = ineqs.clone();
                    ni.push(h.iter().map(|x| x * Int::from(s)).collect());
                    let (r, l) = h_to_v(d, &[], &ni);
                    next.push((ni, r, l));
                }
            } else {
                next.push((ineqs, rays, lin));
            }
        }
        cells = next;
    }
    let mut out: Vec<ArrangementCell> = cells
        .into_iter()
        .map(|(ineqs, _, _)| {
            let cone = Cone::from_inequalities(d, &ineqs, &[]);
            let sample = cone.interior_point();
            let signs = hyperplanes
                .iter()
                .map(|h| {
                    let v = dot_int_rat(h, &sample);
                    if v.is_positive() {
                        1
                    } else if v.is_negative() {
                        -1
                    } else {
                        0
                    }
                })
                .collect();
            ArrangementCell { signs, sample, cone }
        })
        .collect();
    out.sort_by(|a, b| a.signs.cmp(&b.signs));
    out
}

/// Homogenized integer vector (s, s·p) for a rational point p, s > 0.
fn homogenize(p: &[Rat]) -> Vec<Int> {
    let mut v = vec![Rat::one()];
    v.extend(p.iter().cloned());
    primitive_from_rat(&v).expect("homogenized point is nonzero")
}

/// Bounded polytope with vertices and an affine inequality description.
#[derive(Clone, Debug)]
pub struct Polytope {
    pub ambient_dim: usize,
    /// Extreme points, sorted lexicographically.
    pub vertices: Vec<RationalPoint>,
    /// Facets as (b, a) with b + a·x ≥ 0, content-reduced integers.
    pub facets: Vec<Vec<Int>>,
    /// Affine hull as (b, a) with b + a·x = 0.
    pub equalities: Vec<Vec<Int>>,
}

/// A face of a polytope with a supporting affine functional (b, a):
/// b + a·x ≥ 0 on the polytope, with equality exactly on the face.
#[derive(Clone, Debug)]
pub struct PolytopeFace {
    pub vertices: Vec<usize>,
    pub dim: usize,
    pub functional: Vec<Int>,
}

impl Polytope {
    /// Convex hull of finitely many points (at least one).
    pub fn convex_hull(points: &[RationalPoint]) -> Polytope {
        assert!(!points.is_empty(), "convex hull of no points");
        let d = points[0].len();
        let gens: Vec<Vec<Int>> = points.iter().map(|p| homogenize(p)).collect();
        let (facets, equalities) = v_to_h(d + 1, &gens, &[]);
        Self::finish(d, points, facets, equalities)
    }

    /// Polytope {x : b + a·x ≥ 0 for (b, a) in ineqs, = 0 for eqs}; must be bounded.
    pub fn from_inequalities(d: usize, ineqs: &[Vec<Int>], eqs: &[Vec<Int>]) -> Option<Polytope> {
        let mut all = ineqs.to_vec();
        let mut pos = vec![Int::zero(); d + 1];
        pos[0] = Int::one();
        all.push(pos);
        let (rays, lin) = h_to_v(d + 1, eqs, &all);
        assert!(lin.is_empty(), "unbounded polyhedron");
        let pts: Vec<RationalPoint> = rays
            .iter()
            .map(|r| {
                assert!(r[0].is_positive(), "unbounded polyhedron");
                r[1..].iter().map(|x| Rat::new(x.clone(), r[0].clone())).collect()
            })
            .collect();
        if pts.is_empty() {
            return None;
        }
        Some(Self::convex_hull(&pts))
    }

    fn finish(d: usize, points: &[RationalPoint], facets: Vec<Vec<Int>>, equalities: Vec<Vec<Int>>) -> Polytope {
        let eval = |f: &Vec<Int>, p: &RationalPoint| -> Rat { Rat::from_integer(f[0].clone()) + dot_int_rat(&f[1..], p) };
        // drop the facet at infinity of a 0-dimensional hull
        let facets: Vec<Vec<Int>> = facets
            .into_iter()
            .filter(|f| points.iter().any(|p| eval(f, p).is_zero()))
            .collect();
        let mut verts: BTreeSet<RationalPoint> = BTreeSet::new();
        for p in points {
            let tight: Vec<Vec<Int>> = facets.iter().filter(|f| eval(f, p).is_zero()).cloned().collect();
            let mut rows = tight;
            rows.extend(equalities.iter().cloned());
            if int_rank(&rows) == d {
                verts.insert(p.clone());
            }
        }
        Polytope {
            ambient_dim: d,
            vertices: verts.into_iter().collect(),
            facets,
            equalities,
        }
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equalities.len()
    }

    fn eval(f: &[Int], p: &[Rat]) -> Rat {
        Rat::from_integer(f[0].clone()) + dot_int_rat(&f[1..], p)
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        self.equalities.iter().all(|e| Self::eval(e, p).is_zero())
            && self.facets.iter().all(|f| !Self::eval(f, p).is_negative())
    }

    /// Vertex indices tight at each facet.
    pub fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|f| {
                (0..self.vertices.len())
                    .filter(|&i| Self::eval(f, &self.vertices[i]).is_zero())
                    .collect()
            })
            .collect()
    }

    /// All nonempty faces, including the polytope itself (functional 0),
    /// sorted by dimension then vertex set.
    pub fn faces(&self) -> Vec<PolytopeFace> {
        let fsets = self.facet_vertex_sets();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(all);
        let mut frontier: Vec<Vec<usize>> = fsets.clone();
        while let Some(s) = frontier.pop() {
            if s.is_empty() || !sets.insert(s.clone()) {
                continue;
            }
            for f in &fsets {
                let inter: Vec<usize> = s.iter().copied().filter(|i| f.contains(i)).collect();
                if inter.len() < s.len() && !inter.is_empty() && !sets.contains(&inter) {
                    frontier.push(inter);
                }
            }
        }
        let mut faces: Vec<PolytopeFace> = sets
            .into_iter()
            .map(|vs| {
                let mut functional = vec![Int::zero(); self.ambient_dim + 1];
                for (f, fs) in self.facets.iter().zip(&fsets) {
                    if vs.iter().all(|i| fs.contains(i)) && vs.len() < self.vertices.len() {
                        for (x, y) in functional.iter_mut().zip(f) {
                            *x += y;
                        }
                    }
                }
                let dim = self.affine_dim_of(&vs);
                PolytopeFace {
                    vertices: vs,
                    dim,
                    functional,
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces
    }

    fn affine_dim_of(&self, vs: &[usize]) -> usize {
        if vs.is_empty() {
            return 0;
        }
        let v0 = &self.vertices[vs[0]];
        let rows: Vec<Vec<Rat>> = vs[1..]
            .iter()
            .map(|&i| self.vertices[i].iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        rank_rat(&rows)
    }

    /// Pulling triangulation: each simplex is a list of vertex indices.
    /// `pull_max` pulls from the lexicographically largest vertex instead
    /// of the smallest, which gives a second, independent subdivision.
    pub fn triangulate_with(&self, pull_max: bool) -> Vec<Vec<usize>> {
        let faces = self.faces();
        let top: Vec<usize> = (0..self.vertices.len()).collect();
        let dim = self.dim();
        let mut out = Vec::new();
        self.pull(&faces, &top, dim, pull_max, &mut out);
        out
    }

    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        self.triangulate_with(false)
    }

    fn pull(&self, faces: &[PolytopeFace], vs: &[usize], dim: usize, pull_max: bool, out: &mut Vec<Vec<usize>>) {
        if vs.len() == dim + 1 {
            out.push(vs.to_vec());
            return;
        }
        let apex = if pull_max {
            *vs.iter().max_by(|&&a, &&b| self.vertices[a].cmp(&self.vertices[b])).unwrap()
        } else {
            *vs.iter().min_by(|&&a, &&b| self.vertices[a].cmp(&self.vertices[b])).unwrap()
        };
        for f in faces {
            if f.dim + 1 == dim && !f.vertices.contains(&apex) && f.vertices.iter().all(|i| vs.contains(i)) {
                let mut sub = Vec::new();
                self.pull(faces, &f.vertices, dim - 1, pull_max, &mut sub);
                for mut s in sub {
                    s.push(apex);
                    s.sort_unstable();
                    out.push(s);
                }
            }
        }
    }

    /// Basis of the lattice ℤ^d ∩ (direction space of the affine hull).
    pub fn direction_lattice(&self) -> IntMatrix {
        let lin: Vec<Vec<Int>> = self.equalities.iter().map(|e| e[1..].to_vec()).collect();
        if lin.is_empty() {
            return IntMatrix::identity(self.ambient_dim);
        }
        integer_kernel(&matrix_of(&lin, self.ambient_dim))
    }

    /// Normalized volume relative to the intrinsic lattice of the affine hull.
    pub fn normalized_volume(&self) -> Rat {
        self.normalized_volume_wrt(&self.direction_lattice(), false)
    }

    /// Normalized volume relative to the lattice spanned by the columns of
    /// `basis`, which must span the direction space of the affine hull.
    pub fn normalized_volume_wrt(&self, basis: &IntMatrix, pull_max: bool) -> Rat {
        let dim = self.dim();
        assert_eq!(basis.cols(), dim, "lattice basis has wrong rank");
        if dim == 0 {
            return Rat::one();
        }
        let b = basis.to_rat_rows();
        let mut total = Rat::zero();
        for s in self.triangulate_with(pull_max) {
            let v0 = &self.vertices[s[0]];
            let coords: Vec<Vec<Rat>> = s[1..]
                .iter()
                .map(|&i| {
                    let e: Vec<Rat> = self.vertices[i].iter().zip(v0).map(|(a, c)| a - c).collect();
                    solve_rat(&b, &e).expect("edge lies in the lattice span")
                })
                .collect();
            total += crate::lattice::det_rat(&coords).abs();
        }
        total
    }
}

/// Normalized volume of the simplex conv(0, v₁, …, v_d) in ℤ^d: |det|.
pub fn simplex_volume_at_origin(vs: &[Vec<Int>]) -> Int {
    if vs.is_empty() {
        return Int::one();
    }
    matrix_of(vs, vs[0].len()).det().abs()
}
