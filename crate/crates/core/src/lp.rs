//! Exact LP feasibility by a phase-one simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::lattice::Rat;

/// Finds x ≥ 0 with A·x = b, or None if infeasible.
pub fn feasible_nonneg(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rat::zero(); n]);
    }
    // tableau columns: n originals, m artificials, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row = vec![Rat::zero(); width];
        for j in 0..n {
            row[j] = if neg { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Rat::one();
        row[width - 1] = if neg { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    // objective row: reduced costs of minimizing the artificial sum
    let mut obj = vec![Rat::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: lowest-index entering column with negative reduced cost
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded is impossible for the phase-one objective
            unreachable!("phase-one objective is bounded below");
        };
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }
    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rat>], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
}

/// Feasibility over free variables: equalities `eq` (a·x = b) and
/// inequalities `ge` (a·x ≥ b). Returns a witness.
pub fn feasible(n: usize, eq: &[(Vec<Rat>, Rat)], ge: &[(Vec<Rat>, Rat)]) -> Option<Vec<Rat>> {
    // x = p − q with p, q ≥ 0; each ge row gets a surplus variable
    let cols = 2 * n + ge.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (row, rhs) in eq {
        let mut r = vec![Rat::zero(); cols];
        for j in 0..n {
            r[j] = row[j].clone();
            r[n + j] = -row[j].clone();
        }
        a.push(r);
        b.push(rhs.clone());
    }
    for (k, (row, rhs)) in ge.iter().enumerate() {
        let mut r = vec![Rat::zero(); cols];
        for j in 0..n {
            r[j] = row[j].clone();
            r[n + j] = -row[j].clone();
        }
        r[2 * n + k] = -Rat::one();
        a.push(r);
        b.push(rhs.clone());
    }
    let sol = feasible_nonneg(&a, &b)?;
    Some((0..n).map(|j| &sol[j] - &sol[n + j]).collect())
}
