//! Toric GIT problems: the weight matrix Q, the dual point configuration,
//! faces of Π, minimal faces, relevant subspaces and sub-quotient problems.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    canonical_row_basis, cokernel, dot_int, dot_int_rat, hermite_normal_form, image_basis, int, integer_kernel,
    rank_rat, saturation, smith_normal_form, solve_rat, to_rat, FgAbelianGroup, Int, IntMatrix, Rat,
};
use crate::lp;
use crate::polyhedral::{Cone, Polytope, RationalPoint};

/// A toric GIT problem: k×N weight matrix of full row rank.
///
/// Column i is the weight qᵢ ∈ L^∨ = ℤ^k. The dual side is
/// 𝖭 = ℤ^N / Q^T(ℤ^k); `a_bar` holds the free coordinates of aᵢ = A(eᵢ) and
/// `torsion` the residues of the torsion part.
#[derive(Clone, Debug)]
pub struct GitProblem {
    q: IntMatrix,
    a_bar: IntMatrix,
    group: FgAbelianGroup,
    torsion: Vec<(Vec<Int>, Int)>,
    det_v: Vec<Int>,
}

impl PartialEq for GitProblem {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for GitProblem {}

/// Which configuration a subset test refers to: the points aᵢ or the weights qᵢ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Redundant,
    Saturated,
    PositivelyRedundant,
    ExtremallySaturated,
}

/// Witness for a subset test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Coefficients cᵢ (in the order of the subset) with Σ cᵢ vᵢ = 0.
    Coefficients(Vec<Rat>),
    /// Linear functional l whose zero set among the vectors is the subset.
    Functional(Vec<Rat>),
}

/// A face of Π = conv(0, a₁, …, a_N) through the origin.
#[derive(Clone, Debug)]
pub struct Face {
    /// [N]_F = {i : aᵢ ∈ F}, sorted.
    pub indices: Vec<usize>,
    /// l ≥ 0 on Π with l⁻¹(0) ∩ Π = F.
    pub witness: Vec<Int>,
    pub polytope: Polytope,
}

/// H ⊆ L^∨_ℝ spanned by the weights it contains, paired with a minimal face.
#[derive(Clone, Debug)]
pub struct RelevantSubspace {
    /// [N]_H = {i : qᵢ ∈ H}, sorted.
    pub indices: Vec<usize>,
    pub basis: Vec<Vec<Int>>,
    pub partner_face: Face,
    /// cᵢ ≥ 1 on [N]_H with Σ cᵢ qᵢ = 0.
    pub positive_certificate: Vec<Rat>,
    /// l on L^∨ vanishing exactly on the weights in H.
    pub saturating_functional: Vec<Rat>,
}

/// The problem induced by nested index sets Γ₁ ⊆ Γ₂ on the lattice
/// L_{Γ₂}/L_{Γ₁}, where L_Γ = {l ∈ L : qⱼ(l) = 0 for j ∉ Γ}.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub problem: GitProblem,
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    /// Parent index of each weight of `problem`.
    pub weight_indices: Vec<usize>,
    k2: IntMatrix,
    basis: Vec<Vec<Rat>>,
    change: IntMatrix,
}

impl Subquotient {
    /// Image of c ∈ L^∨_ℝ in the sub-quotient stability space. Fails when c
    /// is not in the subspace the restriction lives on.
    pub fn map_point(&self, c: &[Rat]) -> Result<RationalPoint> {
        let c2 = self.k2.transpose().mul_vec_rat(c);
        if self.basis.is_empty() || self.basis[0].is_empty() {
            if c2.iter().all(Zero::is_zero) {
                return Ok(Vec::new());
            }
            return Err(Error::Query("point does not lie in the restricted subspace".into()));
        }
        let t = solve_rat(&self.basis, &c2)
            .ok_or_else(|| Error::Query("point does not lie in the restricted subspace".into()))?;
        Ok(self.change.mul_vec_rat(&t))
    }
}

fn complement(s: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| !s.contains(i)).collect()
}

fn matrix_rows(rows: &[Vec<Int>], cols: usize) -> IntMatrix {
    if rows.is_empty() {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(rows).expect("consistent rows")
    }
}

/// Integer combination Σ M^j bⱼ of the basis accepted by `ok`, searching
/// M = 1, 2, 3, … . Every condition used here is the nonvanishing of a
/// nonzero polynomial in M, so the search terminates.
fn generic_combination(basis: &[Vec<Int>], ok: impl Fn(&[Int]) -> bool) -> Vec<Int> {
    let len = basis.first().map_or(0, Vec::len);
    let mut m = Int::one();
    loop {
        let mut v = vec![Int::zero(); len];
        let mut p = Int::one();
        for b in basis {
            for (x, y) in v.iter_mut().zip(b) {
                *x += &p * y;
            }
            p *= &m;
        }
        if ok(&v) {
            return v;
        }
        m += 1;
    }
}

fn redundant(vs: &[Vec<Int>], s: &[usize], dim: usize) -> Option<Certificate> {
    if s.is_empty() {
        return Some(Certificate::Coefficients(Vec::new()));
    }
    let cols: Vec<Vec<Int>> = s.iter().map(|&i| vs[i].clone()).collect();
    let m = IntMatrix::from_columns(&cols, dim);
    let ker = integer_kernel(&m).columns();
    if (0..s.len()).any(|p| ker.iter().all(|k| k[p].is_zero())) {
        return None;
    }
    let c = generic_combination(&ker, |v| v.iter().all(|x| !x.is_zero()));
    Some(Certificate::Coefficients(to_rat(&c)))
}

fn saturated(vs: &[Vec<Int>], s: &[usize], dim: usize) -> Option<Certificate> {
    let span: Vec<Vec<Rat>> = s.iter().map(|&i| to_rat(&vs[i])).collect();
    let r = rank_rat(&span);
    for i in 0..vs.len() {
        if s.contains(&i) {
            continue;
        }
        let mut with = span.clone();
        with.push(to_rat(&vs[i]));
        if rank_rat(&with) == r {
            return None;
        }
    }
    let rows: Vec<Vec<Int>> = s.iter().map(|&i| vs[i].clone()).collect();
    let ann = integer_kernel(&matrix_rows(&rows, dim)).columns();
    let outside = complement(s, vs.len());
    let l = generic_combination(&ann, |l| outside.iter().all(|&i| !dot_int(l, &vs[i]).is_zero()));
    let l = if l.is_empty() { vec![Int::zero(); dim] } else { l };
    Some(Certificate::Functional(to_rat(&l)))
}

fn positively_redundant(vs: &[Vec<Int>], s: &[usize], dim: usize) -> Option<Certificate> {
    if s.is_empty() {
        return Some(Certificate::Coefficients(Vec::new()));
    }
    if dim == 0 {
        return Some(Certificate::Coefficients(vec![Rat::one(); s.len()]));
    }
    // c = 1 + y with y ≥ 0
    let a: Vec<Vec<Rat>> = (0..dim)
        .map(|r| s.iter().map(|&i| Rat::from_integer(vs[i][r].clone())).collect())
        .collect();
    let b: Vec<Rat> = a.iter().map(|row| -row.iter().sum::<Rat>()).collect();
    let y = lp::feasible_nonneg(&a, &b)?;
    Some(Certificate::Coefficients(y.into_iter().map(|v| v + Rat::one()).collect()))
}

fn extremally_saturated(vs: &[Vec<Int>], s: &[usize], dim: usize) -> Option<Certificate> {
    let eq: Vec<(Vec<Rat>, Rat)> = s.iter().map(|&i| (to_rat(&vs[i]), Rat::zero())).collect();
    let ge: Vec<(Vec<Rat>, Rat)> = complement(s, vs.len())
        .into_iter()
        .map(|i| (to_rat(&vs[i]), Rat::one()))
        .collect();
    lp::feasible(dim, &eq, &ge).map(Certificate::Functional)
}

impl GitProblem {
    /// Builds a problem from a k×N weight matrix.
    pub fn from_weights(q: IntMatrix) -> Result<GitProblem> {
        if (0..q.cols()).any(|j| q.col(j).iter().all(Zero::is_zero)) {
            return Err(Error::Input("zero weight not supported".into()));
        }
        Self::build(q)
    }

    /// Weights given as a list of column vectors in ℤ^k.
    pub fn from_weight_vectors(k: usize, weights: &[Vec<Int>]) -> Result<GitProblem> {
        if weights.iter().any(|w| w.len() != k) {
            return Err(Error::Input("weights have inconsistent lengths".into()));
        }
        Self::from_weights(IntMatrix::from_columns(weights, k))
    }

    /// Like [`from_weights`](Self::from_weights) but tolerates zero weights,
    /// which arise in sub-quotients and point configurations.
    pub(crate) fn build(q: IntMatrix) -> Result<GitProblem> {
        if q.rank() != q.rows() {
            return Err(Error::Input("coker(Q) not finite: weight matrix is rank-deficient".into()));
        }
        let n = q.cols();
        let k = q.rows();
        let coker = cokernel(&q.transpose());
        let a_bar = if n == k {
            IntMatrix::zeros(0, n)
        } else {
            canonical_row_basis(&coker.free_projection)
        };
        let det_v = q.mul_vec(&vec![Int::one(); n]);
        Ok(GitProblem {
            q,
            a_bar,
            group: coker.group,
            torsion: coker.torsion_projection,
            det_v,
        })
    }

    /// Problem whose dual configuration is the given points aᵢ ∈ ℤ^d:
    /// L = ker(a), Q = L^T. When the points span ℤ^d they are kept as the
    /// coordinates of 𝖭; otherwise canonical coordinates on their span are used.
    pub fn from_points(points: &[Vec<Int>]) -> Result<GitProblem> {
        let d = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::Input("points have inconsistent lengths".into()));
        }
        let pm = IntMatrix::from_columns(points, d);
        let kernel = integer_kernel(&pm);
        let mut p = Self::build(kernel.transpose())?;
        let snf = smith_normal_form(&pm);
        if snf.rank() == d && snf.diagonal().iter().all(|x| x.is_one()) && p.a_bar.rows() == d {
            p.a_bar = pm;
        }
        Ok(p)
    }

    pub fn k(&self) -> usize {
        self.q.rows()
    }

    pub fn n(&self) -> usize {
        self.q.cols()
    }

    /// Rank of 𝖭_free, i.e. N − k.
    pub fn n_rank(&self) -> usize {
        self.n() - self.k()
    }

    pub fn q(&self) -> &IntMatrix {
        &self.q
    }

    pub fn weight(&self, i: usize) -> Vec<Int> {
        self.q.col(i)
    }

    pub fn weights(&self) -> Vec<Vec<Int>> {
        self.q.columns()
    }

    pub fn a_bar(&self) -> &IntMatrix {
        &self.a_bar
    }

    /// Free coordinates of aᵢ.
    pub fn point(&self, i: usize) -> Vec<Int> {
        self.a_bar.col(i)
    }

    pub fn points(&self) -> Vec<Vec<Int>> {
        (0..self.n()).map(|i| self.point(i)).collect()
    }

    /// Torsion residues of ãᵢ.
    pub fn torsion_class(&self, i: usize) -> Vec<Int> {
        self.torsion
            .iter()
            .map(|(row, m)| {
                let v = &row[i] % m;
                if v.is_negative() {
                    v + m
                } else {
                    v
                }
            })
            .collect()
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn torsion_order(&self) -> Int {
        self.group.torsion_order()
    }

    /// det V = Σ qᵢ.
    pub fn det_v(&self) -> &[Int] {
        &self.det_v
    }

    pub fn is_calabi_yau(&self) -> bool {
        self.det_v.iter().all(Zero::is_zero)
    }

    pub fn has_zero_weight(&self) -> bool {
        (0..self.n()).any(|i| self.q.col(i).iter().all(Zero::is_zero))
    }

    /// Appends the weight −det V.
    pub fn associated_cy(&self) -> Result<GitProblem> {
        if self.is_calabi_yau() {
            return Err(Error::Input("already Calabi-Yau".into()));
        }
        let mut cols = self.weights();
        cols.push(self.det_v.iter().map(|x| -x).collect());
        Self::build(IntMatrix::from_columns(&cols, self.k()))
    }

    /// Removes weight i from a Calabi-Yau problem.
    pub fn delete_weight(&self, i: usize) -> Result<GitProblem> {
        if !self.is_calabi_yau() {
            return Err(Error::Input("delete_weight requires a Calabi-Yau problem".into()));
        }
        if self.n() < 2 || i >= self.n() {
            return Err(Error::Input("weight index out of range".into()));
        }
        let idx: Vec<usize> = (0..self.n()).filter(|&j| j != i).collect();
        Self::build(self.q.select_columns(&idx))
    }

    fn side_vectors(&self, side: Side) -> (Vec<Vec<Int>>, usize) {
        match side {
            Side::A => (self.points(), self.n_rank()),
            Side::Q => (self.weights(), self.k()),
        }
    }

    /// Decides a subset property; `Some` carries the certificate.
    pub fn redundancy_test(&self, s: &[usize], side: Side, flavor: Flavor) -> Option<Certificate> {
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        let (vs, dim) = self.side_vectors(side);
        match flavor {
            Flavor::Redundant => redundant(&vs, &s, dim),
            Flavor::Saturated => saturated(&vs, &s, dim),
            Flavor::PositivelyRedundant => positively_redundant(&vs, &s, dim),
            Flavor::ExtremallySaturated => extremally_saturated(&vs, &s, dim),
        }
    }

    /// All faces of Π containing the origin, sorted by (size, indices).
    pub fn faces(&self) -> Vec<Face> {
        let d = self.n_rank();
        let pts = self.points();
        let cone = Cone::from_generators(d, &pts);
        let all: Vec<usize> = (0..self.n()).collect();
        let facet_sets: Vec<Vec<usize>> = cone
            .facets
            .iter()
            .map(|f| all.iter().copied().filter(|&i| dot_int(f, &pts[i]).is_zero()).collect())
            .collect();
        let mut sets: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        let mut frontier = vec![all.clone()];
        while let Some(s) = frontier.pop() {
            if !sets.insert(s.clone()) {
                continue;
            }
            for f in &facet_sets {
                let inter: Vec<usize> = s.iter().copied().filter(|i| f.contains(i)).collect();
                if inter.len() < s.len() && !sets.contains(&inter) {
                    frontier.push(inter);
                }
            }
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|s| {
                let mut witness = vec![Int::zero(); d];
                if s.len() < all.len() {
                    for (f, fs) in cone.facets.iter().zip(&facet_sets) {
                        if s.iter().all(|i| fs.contains(i)) {
                            for (x, y) in witness.iter_mut().zip(f) {
                                *x += y;
                            }
                        }
                    }
                }
                let mut verts: Vec<RationalPoint> = vec![vec![Rat::zero(); d]];
                verts.extend(s.iter().map(|&i| to_rat(&pts[i])));
                Face {
                    polytope: Polytope::convex_hull(&verts),
                    indices: s,
                    witness,
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.indices.len(), &a.indices).cmp(&(b.indices.len(), &b.indices)));
        faces
    }

    /// Faces whose index set is redundant over 𝖭_free ⊗ ℝ, sorted by
    /// (size, indices), which extends the inclusion order.
    pub fn minimal_faces(&self) -> Vec<Face> {
        self.faces()
            .into_iter()
            .filter(|f| self.redundancy_test(&f.indices, Side::A, Flavor::Redundant).is_some())
            .collect()
    }

    /// Relevant subspaces, in the order of their partner minimal faces.
    pub fn relevant_subspaces(&self) -> Vec<RelevantSubspace> {
        self.minimal_faces()
            .into_iter()
            .map(|f| {
                let indices = complement(&f.indices, self.n());
                let basis = self.span_basis(&indices);
                let positive_certificate = match self.redundancy_test(&indices, Side::Q, Flavor::PositivelyRedundant) {
                    Some(Certificate::Coefficients(c)) => c,
                    _ => panic!("minimal face complement is not positively redundant"),
                };
                let saturating_functional = match self.redundancy_test(&indices, Side::Q, Flavor::Saturated) {
                    Some(Certificate::Functional(l)) => l,
                    _ => panic!("minimal face complement is not saturated"),
                };
                RelevantSubspace {
                    indices,
                    basis,
                    partner_face: f,
                    positive_certificate,
                    saturating_functional,
                }
            })
            .collect()
    }

    /// Lattice basis of the span of the given weights.
    pub fn span_basis(&self, indices: &[usize]) -> Vec<Vec<Int>> {
        if indices.is_empty() {
            return Vec::new();
        }
        image_basis(&self.q.select_columns(indices)).columns()
    }

    /// {i : qᵢ ∈ span(vectors)}.
    pub fn indices_in_span(&self, vectors: &[Vec<Rat>]) -> Vec<usize> {
        let r = rank_rat(vectors);
        (0..self.n())
            .filter(|&i| {
                let mut m = vectors.to_vec();
                m.push(to_rat(&self.weight(i)));
                rank_rat(&m) == r
            })
            .collect()
    }

    /// The problem on L_{Γ₂}/L_{Γ₁} with weights indexed by Γ₂ ∖ Γ₁.
    pub fn subquotient(&self, gamma1: &[usize], gamma2: &[usize]) -> Result<Subquotient> {
        let n = self.n();
        let k = self.k();
        let mut g1 = gamma1.to_vec();
        let mut g2 = gamma2.to_vec();
        g1.sort_unstable();
        g1.dedup();
        g2.sort_unstable();
        g2.dedup();
        if g2.iter().any(|&i| i >= n) || !g1.iter().all(|i| g2.contains(i)) {
            return Err(Error::Input("index sets are not nested subsets of [N]".into()));
        }
        let comp2 = complement(&g2, n);
        let k2 = if comp2.is_empty() {
            IntMatrix::identity(k)
        } else {
            let rows: Vec<Vec<Int>> = comp2.iter().map(|&j| self.weight(j)).collect();
            integer_kernel(&matrix_rows(&rows, k))
        };
        let r2 = k2.cols();
        let weight_indices: Vec<usize> = g2.iter().copied().filter(|i| !g1.contains(i)).collect();
        let ws: Vec<Vec<Int>> = weight_indices.iter().map(|&i| k2.transpose().mul_vec(&self.weight(i))).collect();
        let wmat = IntMatrix::from_columns(&ws, r2);
        let img = image_basis(&wmat);
        let basis = if img.cols() == 0 {
            IntMatrix::zeros(r2, 0)
        } else {
            saturation(&img)?
        };
        let r = basis.cols();
        let brat = basis.to_rat_rows();
        let raw_cols: Vec<Vec<Int>> = ws
            .iter()
            .map(|w| {
                if r == 0 {
                    return Vec::new();
                }
                let t = solve_rat(&brat, &to_rat(w)).expect("weight lies in its own span");
                t.into_iter()
                    .map(|x| {
                        assert!(x.is_integer(), "weight outside saturated lattice");
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        let raw = IntMatrix::from_columns(&raw_cols, r);
        let (h, u) = hermite_normal_form(&raw);
        let problem = Self::build(h)?;
        Ok(Subquotient {
            problem,
            gamma1: g1,
            gamma2: g2,
            weight_indices,
            k2,
            basis: brat,
            change: u,
        })
    }

    /// Q_{/H}: weights outside H, stability space L^∨/(L^∨ ∩ H).
    pub fn quotient_by_subspace(&self, h_indices: &[usize]) -> Result<Subquotient> {
        self.subquotient(&[], &complement(h_indices, self.n()))
    }

    /// Q_H: weights inside H, stability space L^∨ ∩ H.
    pub fn restriction_to_subspace(&self, h_indices: &[usize]) -> Result<Subquotient> {
        let all: Vec<usize> = (0..self.n()).collect();
        self.subquotient(&complement(h_indices, self.n()), &all)
    }

    /// A_{F₂/F₁} for faces given by their index sets.
    pub fn face_problem(&self, f1: &[usize], f2: &[usize]) -> Result<Subquotient> {
        self.subquotient(f1, f2)
    }

    /// Checks that Ā·Q^T = 0 and rank Ā = N − k.
    pub fn check_exactness(&self) -> bool {
        let prod = self.a_bar.mul(&self.q.transpose());
        prod.is_zero() && self.a_bar.rank() == self.n_rank()
    }

    /// Evaluates a functional on L^∨ at each weight.
    pub fn evaluate_weights(&self, l: &[Rat]) -> Vec<Rat> {
        (0..self.n()).map(|i| dot_int_rat(&self.weight(i), l)).collect()
    }
}

/// Builds a problem from literal weight columns; panics on invalid input.
pub fn weights_from_i64(k: usize, cols: &[&[i64]]) -> GitProblem {
    let ws: Vec<Vec<Int>> = cols.iter().map(|c| c.iter().map(|&x| int(x)).collect()).collect();
    GitProblem::from_weight_vectors(k, &ws).expect("valid literal problem")
}

/// Builds a problem from literal points; panics on invalid input.
pub fn points_from_i64(pts: &[&[i64]]) -> GitProblem {
    let ps: Vec<Vec<Int>> = pts.iter().map(|c| c.iter().map(|&x| int(x)).collect()).collect();
    GitProblem::from_points(&ps).expect("valid literal points")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn six_points() -> GitProblem {
        points_from_i64(&[&[1, 0], &[2, 0], &[3, 0], &[1, 1], &[0, 1], &[0, 2]])
    }

    fn rank_two_cy() -> GitProblem {
        weights_from_i64(2, &[&[1, 0], &[1, 0], &[0, 1], &[0, 1], &[-1, 1], &[0, -1], &[-1, -2]])
    }

    fn rank_three_cy(n: i64) -> GitProblem {
        weights_from_i64(
            3,
            &[&[1, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-n, 1, 0], &[n - 2, -2, -1]],
        )
    }

    #[test]
    fn construction_examples() {
        let p = rank_two_cy();
        assert!(p.is_calabi_yau());
        assert_eq!(p.group, FgAbelianGroup::free(5));
        assert!(p.check_exactness());
        let p = rank_three_cy(2);
        assert!(p.is_calabi_yau());
        let p = weights_from_i64(1, &[&[1]]);
        assert!(!p.is_calabi_yau());
        assert_eq!(p.n_rank(), 0);
        assert_eq!(p.torsion_order(), int(1));
    }

    #[test]
    fn construction_errors() {
        let e = GitProblem::from_weights(IntMatrix::from_i64(&[&[1, 2], &[2, 4]])).unwrap_err();
        assert!(e.to_string().contains("coker(Q) not finite"));
        let e = GitProblem::from_weights(IntMatrix::from_i64(&[&[1, 0]])).unwrap_err();
        assert!(e.to_string().contains("zero weight"));
    }

    #[test]
    fn points_round_trip() {
        let p = six_points();
        assert_eq!(p.k(), 4);
        assert_eq!(p.point(2), vec![int(3), int(0)]);
        assert!(p.check_exactness());
        assert!(!p.is_calabi_yau());
        let p2 = points_from_i64(&[&[1, 0], &[2, 0], &[3, 1], &[0, 2], &[0, 3]]);
        assert_eq!(p2.k(), 3);
        let triv = points_from_i64(&[&[1, 0], &[0, 1]]);
        assert_eq!(triv.k(), 0);
    }

    #[test]
    fn torsion_example() {
        let p = weights_from_i64(1, &[&[2], &[2]]);
        assert_eq!(p.torsion_order(), int(2));
        assert_eq!(p.group().free_rank, 1);
        // e₁ + e₂ is 2-torsion, nonzero
        let t0 = p.torsion_class(0);
        let t1 = p.torsion_class(1);
        assert_eq!((&t0[0] + &t1[0]) % int(2), int(1));
    }

    #[test]
    fn cy_operations() {
        let p = weights_from_i64(1, &[&[1]]);
        let cy = p.associated_cy().unwrap();
        assert_eq!(cy.q(), &IntMatrix::from_i64(&[&[1, -1]]));
        let p = weights_from_i64(1, &[&[1], &[1]]);
        assert_eq!(p.associated_cy().unwrap().q(), &IntMatrix::from_i64(&[&[1, 1, -2]]));
        assert!(cy.associated_cy().is_err());
        let back = weights_from_i64(1, &[&[1], &[-1]]).delete_weight(1).unwrap();
        assert_eq!(back.q(), &IntMatrix::from_i64(&[&[1]]));
        assert_eq!(six_points().associated_cy().unwrap().n_rank(), 3);
        assert!(six_points().delete_weight(0).is_err());
        let d = rank_two_cy().delete_weight(6).unwrap();
        assert_eq!(d.det_v(), &[int(1), int(2)]);
    }

    #[test]
    fn redundancy_examples() {
        let p = six_points();
        match p.redundancy_test(&[0, 1, 2], Side::A, Flavor::Redundant) {
            Some(Certificate::Coefficients(c)) => {
                let sum: Vec<Rat> = (0..2)
                    .map(|r| (0..3).map(|j| &c[j] * rat([1, 2, 3][j] * [1, 0][r])).sum())
                    .collect();
                assert!(sum.iter().all(Zero::is_zero));
                assert!(c.iter().all(|x| !x.is_zero()));
            }
            other => panic!("unexpected {other:?}"),
        }
        for flavor in [Flavor::Redundant, Flavor::PositivelyRedundant] {
            assert!(p.redundancy_test(&[], Side::A, flavor).is_some());
        }
        match rank_two_cy().redundancy_test(&[2, 3, 5], Side::Q, Flavor::PositivelyRedundant) {
            Some(Certificate::Coefficients(c)) => {
                assert!(c.iter().all(|x| x >= &rat(1)));
                assert_eq!(&c[0] + &c[1] - &c[2], rat(0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minimal_faces_examples() {
        let f = six_points().minimal_faces();
        let sets: Vec<Vec<usize>> = f.iter().map(|f| f.indices.clone()).collect();
        assert_eq!(sets, vec![vec![], vec![4, 5], vec![0, 1, 2], vec![0, 1, 2, 3, 4, 5]]);
        let p2 = points_from_i64(&[&[1, 0], &[2, 0], &[3, 1], &[0, 2], &[0, 3]]);
        let sets: Vec<Vec<usize>> = p2.minimal_faces().iter().map(|f| f.indices.clone()).collect();
        assert_eq!(sets, vec![vec![], vec![0, 1], vec![3, 4], vec![0, 1, 2, 3, 4]]);
        let triv = points_from_i64(&[&[1, 0], &[0, 1]]);
        let sets: Vec<Vec<usize>> = triv.minimal_faces().iter().map(|f| f.indices.clone()).collect();
        assert_eq!(sets, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn relevant_subspaces_examples() {
        let rs = rank_two_cy().relevant_subspaces();
        let sets: Vec<Vec<usize>> = rs.iter().map(|r| r.indices.clone()).collect();
        assert_eq!(sets, vec![(0..7).collect::<Vec<_>>(), vec![2, 3, 5], vec![]]);
        let flop = weights_from_i64(1, &[&[1], &[-1]]);
        assert_eq!(flop.relevant_subspaces().len(), 2);
        // the xy-plane carries walls but no positive relation among its weights
        let p4 = rank_three_cy(2);
        assert!(p4.redundancy_test(&[0, 1, 2, 4], Side::Q, Flavor::PositivelyRedundant).is_none());
        assert!(p4.relevant_subspaces().iter().all(|r| r.indices != vec![0, 1, 2, 4]));
        let xy = p4.restriction_to_subspace(&[0, 1, 2, 4]).unwrap();
        assert_eq!(xy.problem.k(), 2);
    }

    #[test]
    fn subquotient_examples() {
        let p = rank_two_cy();
        let t = p.subquotient(&[1, 2], &[1, 2]).unwrap();
        assert_eq!(t.problem.n(), 0);
        assert_eq!(t.problem.k(), 0);
        let r = p.restriction_to_subspace(&[2, 3, 5]).unwrap();
        assert_eq!(r.problem.q(), &IntMatrix::from_i64(&[&[1, 1, -1]]));
        let q = p.quotient_by_subspace(&[2, 3, 5]).unwrap();
        assert_eq!(q.problem.k(), 1);
        assert_eq!(q.problem.n(), 4);
        let mut w: Vec<Int> = q.problem.q().row(0);
        w.sort();
        assert_eq!(w, vec![int(-1), int(-1), int(1), int(1)]);
        assert!(p.subquotient(&[0, 1], &[1]).is_err());
    }

    #[test]
    fn map_point_restriction() {
        let p = rank_two_cy();
        let r = p.restriction_to_subspace(&[2, 3, 5]).unwrap();
        assert_eq!(r.map_point(&[rat(0), rat(3)]).unwrap(), vec![rat(3)]);
        assert!(r.map_point(&[rat(1), rat(3)]).is_err());
    }
}
