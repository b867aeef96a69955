//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`Int`]) or
//! rationals ([`Rat`]). Smith and Hermite normal forms realize kernels,
//! cokernels (with torsion) and saturations of sublattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| Rat::from_integer(x.clone()) * y)
        .sum()
}

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Int>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("rows have inconsistent lengths".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(&rows).expect("ragged literal matrix")
    }

    /// Matrix with the given vectors as columns; `height` is used when `cols` is empty.
    pub fn from_columns(cols: &[Vec<Int>], height: usize) -> Self {
        let mut m = Self::zeros(height, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), height, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(l, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot_int(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn mul_vec_rat(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot_int_rat(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<Int>> = idx.iter().map(|&j| self.col(j)).collect();
        Self::from_columns(&cols, self.rows)
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m[(r, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        rank_rat(&self.to_rat_rows())
    }

    pub fn to_rat_rows(&self) -> Vec<Vec<Rat>> {
        self.to_rows().iter().map(|r| to_rat(r)).collect()
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        bareiss_det(self.to_rows())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &Int) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &Int) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

fn bareiss_det(mut a: Vec<Vec<Int>>) -> Int {
    let n = a.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// U·M·V = D with U, V unimodular and D diagonal with d₁ | d₂ | … .
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &-&q);
                u.add_row(i, t, &-&q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &-&q);
                v.add_col(j, t, &-&q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move a smaller remainder into the pivot position
                let mut best = (t, t);
                for i in t..rows {
                    if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // divisibility of the trailing block
            let piv = a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&piv)));
            match offender {
                Some(i) => {
                    a.add_row(t, i, &Int::one());
                    u.add_row(t, i, &Int::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SnfResult { u, d: a, v }
}

/// Row-style Hermite normal form: returns (H, U) with U unimodular, H = U·M,
/// H in row echelon form with positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, and zero rows at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[(i, c)].is_zero() && best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            u.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row(i, r, &-&q);
                u.add_row(i, r, &-&q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                h.add_row(i, r, &-&q);
                u.add_row(i, r, &-&q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Canonical basis (HNF rows, zero rows dropped) of the row lattice of `m`.
pub fn canonical_row_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(m);
    let nonzero: Vec<usize> = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).collect();
    let mut out = h.select_rows(&nonzero);
    if nonzero.is_empty() {
        out = IntMatrix::zeros(0, m.cols());
    }
    out
}

/// Finitely generated abelian group ℤ^r ⊕ ⊕ ℤ/dᵢ with d₁ | d₂ | … and dᵢ > 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<Int>,
}

impl FgAbelianGroup {
    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn torsion_order(&self) -> Int {
        self.invariant_factors.iter().product()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 || self.invariant_factors.is_empty() {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// ℤ^rows / image(M), together with canonical coordinates for its elements.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FgAbelianGroup,
    /// Rows of U projecting onto the free part (free_rank × rows of M).
    pub free_projection: IntMatrix,
    /// Rows of U giving torsion residues, paired with their moduli.
    pub torsion_projection: Vec<(Vec<Int>, Int)>,
}

impl Cokernel {
    /// Canonical coordinates of the class of `x`: free part and torsion residues.
    pub fn project(&self, x: &[Int]) -> (Vec<Int>, Vec<Int>) {
        let free = self.free_projection.mul_vec(x);
        let tors = self
            .torsion_projection
            .iter()
            .map(|(row, m)| dot_int(row, x).mod_floor(m))
            .collect();
        (free, tors)
    }
}

pub fn cokernel(m: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let r = snf.rank();
    let free_rows: Vec<usize> = (r..m.rows()).collect();
    let free_projection = if free_rows.is_empty() {
        IntMatrix::zeros(0, m.rows())
    } else {
        snf.u.select_rows(&free_rows)
    };
    let mut torsion_projection = Vec::new();
    let mut factors = Vec::new();
    for (i, d) in diag.iter().enumerate().take(r) {
        if d > &Int::one() {
            torsion_projection.push((snf.u.row(i), d.clone()));
            factors.push(d.clone());
        }
    }
    Cokernel {
        group: FgAbelianGroup {
            free_rank: m.rows() - r,
            invariant_factors: factors,
        },
        free_projection,
        torsion_projection,
    }
}

/// Basis (as columns) of the integer kernel {x : M·x = 0}; always saturated.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let idx: Vec<usize> = (r..m.cols()).collect();
    if idx.is_empty() {
        return IntMatrix::zeros(m.cols(), 0);
    }
    let basis = snf.v.select_columns(&idx);
    canonical_row_basis(&basis.transpose()).transpose()
}

/// Basis of the saturation {v : n·v ∈ colspan(M) for some n ≠ 0} of the
/// lattice spanned by the (independent) columns of `m`.
pub fn saturation(m: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    if r < m.cols() {
        return Err(Error::Input("not a sublattice basis".into()));
    }
    if r == 0 {
        return Ok(IntMatrix::zeros(m.rows(), 0));
    }
    let uinv = unimodular_inverse(&snf.u);
    let idx: Vec<usize> = (0..r).collect();
    Ok(canonical_row_basis(&uinv.select_columns(&idx).transpose()).transpose())
}

/// Basis (columns) of the lattice spanned by the columns of `m`.
pub fn image_basis(m: &IntMatrix) -> IntMatrix {
    let b = canonical_row_basis(&m.transpose());
    b.transpose()
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let inv = inverse_rat(&u.to_rat_rows()).expect("unimodular matrix is invertible");
    let rows: Vec<Vec<Int>> = inv
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.is_integer(), "matrix is not unimodular");
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    let mut out = IntMatrix::from_rows(&rows).expect("square");
    if rows.is_empty() {
        out = IntMatrix::zeros(0, 0);
    }
    out
}

/// v / gcd(v); errors on the zero vector.
pub fn primitive_vector(v: &[Int]) -> Result<Vec<Int>> {
    let g = v.iter().fold(Int::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::Input("primitive vector of zero".into()));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_from_rat(v: &[Rat]) -> Result<Vec<Int>> {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    primitive_vector(&ints)
}

/// Flip sign so that the first nonzero entry is positive.
pub fn sign_normalize(v: &mut [Int]) {
    if let Some(x) = v.iter().find(|x| !x.is_zero()) {
        if x.is_negative() {
            for y in v.iter_mut() {
                *y = -&*y;
            }
        }
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(a: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rat(a: &[Vec<Rat>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

/// Some solution of A·x = b (free variables set to zero), or None.
pub fn solve_rat(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

pub fn inverse_rat(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the rational null space {x : A·x = 0}.
pub fn nullspace_rat(a: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn det_rat(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let v = &f * &m[c][j];
                m[i][j] -= v;
            }
        }
    }
    det
}
