//! Multiplicities of the irreducible components Z_{/F} in phases and walls.
//!
//! B-side: the triangular system over minimal faces and its wall-crossing
//! counterpart. A-side: pullback along Coulomb projections plus the rank
//! identity. Faces are always identified by their index sets [N]_F.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gkz_fan::{build_fan, phase_rank, ChamberLocation, ChamberRef, GkzFan, Wall};
use crate::git_problem::GitProblem;
use crate::json;
use crate::lattice::{integer_kernel, smith_normal_form, solve_rat, to_rat, Int, IntMatrix, Rat};
use crate::volumes::minimal_phase_rank_fast;

fn complement(s: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|i| !s.contains(i)).collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|i| b.contains(i))
}

type Memo<T> = RwLock<HashMap<IntMatrix, T>>;

fn face_cache() -> &'static Memo<Arc<Vec<Vec<usize>>>> {
    static C: OnceLock<Memo<Arc<Vec<Vec<usize>>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn rank_cache() -> &'static Memo<Int> {
    static C: OnceLock<Memo<Int>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Index sets of the minimal faces, ordered by (size, indices), which is a
/// linear extension of inclusion.
pub fn minimal_face_sets(p: &GitProblem) -> Arc<Vec<Vec<usize>>> {
    if let Some(f) = face_cache().read().expect("cache").get(p.q()) {
        return f.clone();
    }
    let faces: Vec<Vec<usize>> = p.minimal_faces().into_iter().map(|f| f.indices).collect();
    let faces = Arc::new(faces);
    face_cache().write().expect("cache").insert(p.q().clone(), faces.clone());
    faces
}

/// rank K₀ of the minimal phase, memoized by the weight matrix.
pub fn min_rank(p: &GitProblem) -> Int {
    if let Some(r) = rank_cache().read().expect("cache").get(p.q()) {
        return r.clone();
    }
    let r = minimal_phase_rank_fast(p);
    rank_cache().write().expect("cache").insert(p.q().clone(), r.clone());
    r
}

/// rank([Z_{/F}]): the minimal phase of the Higgs problem A_{/F}.
pub fn face_rank(p: &GitProblem, face: &[usize]) -> Result<Int> {
    let all: Vec<usize> = (0..p.n()).collect();
    Ok(min_rank(&p.subquotient(face, &all)?.problem))
}

/// n_F for every minimal face F, in the order of `faces`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub faces: Vec<Vec<usize>>,
    /// rank([Z_{/F}]) per face.
    pub ranks: Vec<Int>,
    pub entries: Vec<Int>,
    /// rank K₀ of the phase being decomposed.
    pub total: Int,
}

impl MultiplicityTable {
    pub fn entry(&self, face: &[usize]) -> Option<&Int> {
        self.faces.iter().position(|f| f == face).map(|i| &self.entries[i])
    }

    /// Σ n_F · rank([Z_{/F}]).
    pub fn weighted_sum(&self) -> Int {
        self.entries.iter().zip(&self.ranks).map(|(n, r)| n * r).sum()
    }

    /// Nonzero (n_F, rank) pairs, largest contribution first; ties keep the
    /// larger face first.
    fn terms(&self) -> Vec<(&Int, &Int)> {
        let mut t: Vec<(&Int, &Int)> =
            self.entries.iter().zip(&self.ranks).rev().filter(|(n, r)| !n.is_zero() && !r.is_zero()).collect();
        t.sort_by(|a, b| (b.0 * b.1).cmp(&(a.0 * a.1)));
        t
    }

    fn format_ledger(&self, terms: Vec<String>) -> String {
        format!("{} = {}", self.total, if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }

    /// "6 = 2·1 + 2·1 + 1·1 + 1·1" (n_F·rank per term).
    pub fn ledger(&self) -> String {
        self.format_ledger(self.terms().into_iter().map(|(n, r)| format!("{n}·{r}")).collect())
    }

    /// "6 = 2 + 2 + 1 + 1" (n_F·rank evaluated per term).
    pub fn ledger_totals(&self) -> String {
        self.format_ledger(self.terms().into_iter().map(|(n, r)| (n * r).to_string()).collect())
    }

    pub fn to_json(&self) -> Value {
        let faces: Vec<Value> = (0..self.faces.len())
            .map(|i| {
                json!({
                    "id": i,
                    "indices": self.faces[i],
                    "rank": json::int(&self.ranks[i]),
                    "n": json::int(&self.entries[i]),
                })
            })
            .collect();
        json!({ "total": json::int(&self.total), "faces": faces, "ledger": self.ledger() })
    }
}

fn empty_table(p: &GitProblem) -> Result<MultiplicityTable> {
    let faces = minimal_face_sets(p).to_vec();
    let ranks = faces.iter().map(|f| face_rank(p, f)).collect::<Result<Vec<_>>>()?;
    let entries = vec![Int::zero(); faces.len()];
    Ok(MultiplicityTable {
        faces,
        ranks,
        entries,
        total: Int::zero(),
    })
}

/// Solves rank X_{𝚺∩F} = Σ_{F' ⊆ F} n_{F'} rank Z_{F/F'} for the phase at a
/// generic point c.
pub fn solve_recursive(p: &GitProblem, c: &[Rat]) -> Result<MultiplicityTable> {
    let mut table = empty_table(p)?;
    table.total = phase_rank(p, c)?;
    if table.total.is_zero() {
        return Ok(table);
    }
    let faces = table.faces.clone();
    for (j, f) in faces.iter().enumerate() {
        let coulomb = p.subquotient(&[], f)?;
        let lhs = phase_rank(&coulomb.problem, &coulomb.map_point(c)?)?;
        let mut rhs = Int::zero();
        for (i, g) in faces[..j].iter().enumerate() {
            if table.entries[i].is_zero() || !is_subset(g, f) {
                continue;
            }
            rhs += &table.entries[i] * min_rank(&p.subquotient(g, f)?.problem);
        }
        let n = lhs - rhs;
        if n.is_negative() {
            return Err(Error::Internal("recursive system inconsistent".into()));
        }
        table.entries[j] = n;
    }
    Ok(table)
}

/// Solves the system at the sample point of a chamber.
pub fn solve_recursive_chamber(fan: &GkzFan, chamber: usize) -> Result<MultiplicityTable> {
    solve_recursive(&fan.problem, &fan.chambers[chamber].sample_point)
}

/// [X_C : Z_H] for the relevant subspace H paired with `face`, by a
/// straight-line run and recursion into the Higgs problems of the crossed
/// walls.
pub fn run_accumulate(p: &GitProblem, c: &[Rat], face: &[usize]) -> Result<Int> {
    if p.is_calabi_yau() {
        return Err(Error::Query("no straight-line run for det V = 0".into()));
    }
    if !minimal_face_sets(p).iter().any(|f| f == face) {
        return Err(Error::Query(format!("{face:?} is not a minimal face")));
    }
    accumulate(p, c, &complement(face, p.n()))
}

fn accumulate(p: &GitProblem, c: &[Rat], h: &[usize]) -> Result<Int> {
    let fan = build_fan(p);
    let chamber = match fan.chamber_of(c) {
        ChamberLocation::Chamber(id) => id,
        ChamberLocation::Empty => return Ok(Int::zero()),
        ChamberLocation::OnBoundary { .. } => {
            return Err(Error::Internal("stability point is not generic".into()));
        }
    };
    if h.len() == p.n() {
        return Ok(Int::one());
    }
    if p.is_calabi_yau() {
        return Ok(Int::zero());
    }
    let run = fan.straight_line_run(chamber)?;
    let mut total = Int::zero();
    for x in &run.crossings {
        let w = &fan.walls[x.wall];
        if w.d.is_zero() || !is_subset(h, &w.span_indices) {
            continue;
        }
        let sub = p.restriction_to_subspace(&w.span_indices)?;
        let point = sub.map_point(&w.interior_point)?;
        let h_sub: Vec<usize> = (0..sub.weight_indices.len())
            .filter(|&j| h.contains(&sub.weight_indices[j]))
            .collect();
        total += &w.d * accumulate(&sub.problem, &point, &h_sub)?;
    }
    Ok(total)
}

/// The Higgs problem of a wall's span, with the wall's image point.
fn wall_problem(p: &GitProblem, w: &Wall) -> Result<(crate::git_problem::Subquotient, Vec<Rat>)> {
    let sub = p.restriction_to_subspace(&w.span_indices)?;
    let point = sub.map_point(&w.interior_point)?;
    Ok((sub, point))
}

/// n^B_{W,F}: the decomposition of Z_W (phase W of the Higgs problem of
/// span W), re-indexed to the parent's minimal faces.
pub fn wall_multiplicities(p: &GitProblem, w: &Wall) -> Result<MultiplicityTable> {
    let (sub, point) = wall_problem(p, w)?;
    let inner = solve_recursive(&sub.problem, &point)?;
    let mut table = empty_table(p)?;
    table.total = inner.total.clone();
    let outside = complement(&w.span_indices, p.n());
    for (f, n) in inner.faces.iter().zip(&inner.entries) {
        // relevant subspace of the sub-problem, in parent indices
        let h: Vec<usize> = complement(f, sub.weight_indices.len())
            .into_iter()
            .map(|j| sub.weight_indices[j])
            .collect();
        let parent = complement(&h, p.n());
        debug_assert!(is_subset(&outside, &parent));
        let Some(pos) = table.faces.iter().position(|g| *g == parent) else {
            if n.is_zero() {
                continue;
            }
            return Err(Error::Internal(format!("wall face {parent:?} is not a minimal face")));
        };
        table.entries[pos] = n.clone();
    }
    Ok(table)
}

/// Wall × face multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedComplex {
    pub faces: Vec<Vec<usize>>,
    pub face_ranks: Vec<Int>,
    /// rank K₀(Z_W) per wall.
    pub wall_ranks: Vec<Int>,
    /// entries[w][f].
    pub entries: Vec<Vec<Int>>,
}

impl DecoratedComplex {
    pub fn entry(&self, wall: usize, face: &[usize]) -> Int {
        self.faces
            .iter()
            .position(|f| f == face)
            .map_or_else(Int::zero, |j| self.entries[wall][j].clone())
    }

    /// Walls carrying a nonzero entry for `face`, with the entries.
    pub fn support(&self, face: &[usize]) -> Vec<(usize, Int)> {
        (0..self.entries.len())
            .map(|w| (w, self.entry(w, face)))
            .filter(|(_, n)| !n.is_zero())
            .collect()
    }

    /// Σ_F entry(W, F) · rank([Z_{/F}]) for each wall.
    pub fn rank_row_sums(&self) -> Vec<Int> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(&self.face_ranks).map(|(n, r)| n * r).sum())
            .collect()
    }
}

/// ∇^B: wall multiplicities from each wall's own recursive system.
pub fn decorated_complex_b(p: &GitProblem) -> Result<DecoratedComplex> {
    let fan = build_fan(p);
    let faces = minimal_face_sets(p).to_vec();
    let face_ranks = faces.iter().map(|f| face_rank(p, f)).collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::new();
    let mut wall_ranks = Vec::new();
    for w in &fan.walls {
        let t = wall_multiplicities(p, w)?;
        wall_ranks.push(t.total.clone());
        entries.push(t.entries);
    }
    Ok(DecoratedComplex {
        faces,
        face_ranks,
        wall_ranks,
        entries,
    })
}

/// ∇^A: rows for faces Γ ≠ Γ₀ are pulled back from the Coulomb problems
/// Q_Γ; the Γ₀ row is fixed by the rank identity.
pub fn decorated_complex_a(p: &GitProblem) -> Result<DecoratedComplex> {
    let fan = build_fan(p);
    let faces = minimal_face_sets(p).to_vec();
    let face_ranks = faces.iter().map(|f| face_rank(p, f)).collect::<Result<Vec<_>>>()?;
    let gamma0: Vec<usize> = (0..p.n()).filter(|&i| p.weight(i).iter().any(|x| !x.is_zero())).collect();
    let mut entries = vec![vec![Int::zero(); faces.len()]; fan.walls.len()];
    let mut wall_ranks = Vec::with_capacity(fan.walls.len());
    for w in &fan.walls {
        let (sub, point) = wall_problem(p, w)?;
        wall_ranks.push(phase_rank(&sub.problem, &point)?);
    }
    let mut top = None;
    for (j, g) in faces.iter().enumerate() {
        if *g == gamma0 {
            top = Some(j);
            continue;
        }
        let coulomb = p.subquotient(&[], g)?;
        if coulomb.problem.k() == 0 {
            continue;
        }
        let sub_a = decorated_complex_a(&coulomb.problem)?;
        let sub_fan = build_fan(&coulomb.problem);
        // the face Γ is the largest minimal face of Q_Γ
        let all: Vec<usize> = (0..coulomb.problem.n()).collect();
        let Some(col) = sub_a.faces.iter().position(|f| *f == all) else {
            return Err(Error::Internal("Coulomb problem lacks its top face".into()));
        };
        for w in &fan.walls {
            let image = coulomb.map_point(&w.interior_point)?;
            if let Some(v) = sub_fan.wall_containing(&image) {
                entries[w.id][j] = sub_a.entries[v][col].clone();
            }
        }
    }
    if let Some(j) = top {
        for (wid, row) in entries.iter_mut().enumerate() {
            let mut rest = Int::zero();
            for (i, n) in row.iter().enumerate() {
                if i != j {
                    rest += n * &face_ranks[i];
                }
            }
            let n0 = &wall_ranks[wid] - rest;
            if n0.is_negative() {
                return Err(Error::Internal("A-side reconstruction inconsistent".into()));
            }
            row[j] = n0;
        }
    }
    Ok(DecoratedComplex {
        faces,
        face_ranks,
        wall_ranks,
        entries,
    })
}

/// Primitive generator of (Λ ∩ span W)/(Λ ∩ span R) pointing into W, where
/// R is spanned by `ridge` (a set of rays of W).
fn quotient_generator(k: usize, w: &Wall, ridge: &[Vec<Int>]) -> Result<Vec<Int>> {
    let lam = IntMatrix::from_rows(std::slice::from_ref(&w.lambda))?;
    let bw = integer_kernel(&lam);
    let brat = bw.to_rat_rows();
    let coords: Vec<Vec<Rat>> = ridge
        .iter()
        .map(|r| solve_rat(&brat, &to_rat(r)).ok_or_else(|| Error::Internal("ridge outside wall".into())))
        .collect::<Result<_>>()?;
    let m = k - 1;
    // φ on wall coordinates vanishing on the ridge
    let phi = if coords.is_empty() {
        IntMatrix::identity(m)
    } else {
        let scaled: Vec<Vec<Int>> = coords
            .iter()
            .map(|c| crate::lattice::primitive_from_rat(c))
            .collect::<Result<_>>()?;
        integer_kernel(&IntMatrix::from_rows(&scaled)?)
    };
    if phi.cols() != 1 {
        return Err(Error::Internal("ridge does not have codimension one in the wall".into()));
    }
    let phi_row = phi.col(0);
    let snf = smith_normal_form(&IntMatrix::from_rows(std::slice::from_ref(&phi_row))?);
    let t = snf.v.col(0);
    let mut v = bw.mul_vec(&t);
    // orient into W
    let interior: Vec<Rat> = w.interior_point.clone();
    let tw = solve_rat(&brat, &interior).ok_or_else(|| Error::Internal("wall point outside span".into()))?;
    let phi_w: Rat = phi_row.iter().zip(&tw).map(|(a, b)| Rat::from_integer(a.clone()) * b).sum();
    let phi_v: Int = phi_row.iter().zip(&t).map(|(a, b)| a * b).sum();
    if phi_v.abs() != Int::one() {
        return Err(Error::Internal("quotient generator is not primitive".into()));
    }
    if (phi_v.is_positive()) != phi_w.is_positive() {
        v = v.iter().map(|x| -x).collect();
    }
    Ok(v)
}

/// Balancing of the weighted wall complex `weight(W)` at every codim-2 cone.
pub fn check_balancing_weighted(fan: &GkzFan, weight: impl Fn(usize) -> Int) -> Result<bool> {
    let k = fan.k();
    if k < 2 {
        return Ok(true);
    }
    for (ridge, walls) in fan.codim2_cones() {
        let mut sum = vec![Int::zero(); k];
        for &wid in &walls {
            let m = weight(wid);
            if m.is_zero() {
                continue;
            }
            let u = quotient_generator(k, &fan.walls[wid], &ridge)?;
            for (s, x) in sum.iter_mut().zip(&u) {
                *s += &m * x;
            }
        }
        let mut rows: Vec<Vec<Rat>> = ridge.iter().map(|r| to_rat(r)).collect();
        let r0 = crate::lattice::rank_rat(&rows);
        rows.push(to_rat(&sum));
        if crate::lattice::rank_rat(&rows) != r0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Balancing of the face-F component of a decorated complex.
pub fn check_balancing(p: &GitProblem, d: &DecoratedComplex, face: &[usize]) -> Result<bool> {
    let fan = build_fan(p);
    check_balancing_weighted(&fan, |w| d.entry(w, face))
}

/// |det(v, basis of Λ ∩ span W)|.
pub fn tropical_intersection(direction: &[Int], w: &Wall) -> Result<Int> {
    let lam = IntMatrix::from_rows(std::slice::from_ref(&w.lambda))?;
    let bw = integer_kernel(&lam);
    let mut cols = vec![direction.to_vec()];
    cols.extend(bw.columns());
    let det = IntMatrix::from_columns(&cols, direction.len()).det().abs();
    if det.is_zero() {
        return Err(Error::Query("non-transverse".into()));
    }
    Ok(det)
}

#[derive(Clone, Debug)]
pub struct WallReport {
    pub id: usize,
    pub lambda: Vec<Int>,
    pub rank_zw: Int,
    pub a_row: Vec<Int>,
    pub b_row: Vec<Int>,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub faces: Vec<Vec<usize>>,
    pub face_ranks: Vec<Int>,
    pub walls: Vec<WallReport>,
    /// Face components of ∇^B that fail balancing.
    pub unbalanced: Vec<usize>,
    /// Failed pullback checks as (chamber, face).
    pub pullback_failures: Vec<(usize, usize)>,
    pub theorem_holds: bool,
}

impl TheoremReport {
    pub fn to_json(&self) -> Value {
        let row = |r: &[Int]| -> Value {
            let mut m = Map::new();
            for (i, n) in r.iter().enumerate() {
                m.insert(i.to_string(), json::int(n));
            }
            Value::Object(m)
        };
        let walls: Vec<Value> = self
            .walls
            .iter()
            .map(|w| {
                json!({
                    "id": w.id,
                    "lambda": json::ints(&w.lambda),
                    "rank_ZW": json::int(&w.rank_zw),
                    "A_row": row(&w.a_row),
                    "B_row": row(&w.b_row),
                    "match": w.matches,
                })
            })
            .collect();
        let faces: Vec<Value> = self
            .faces
            .iter()
            .zip(&self.face_ranks)
            .enumerate()
            .map(|(i, (f, r))| json!({ "id": i, "indices": f, "rank": json::int(r) }))
            .collect();
        json!({
            "walls": walls,
            "faces": faces,
            "unbalanced_faces": self.unbalanced,
            "pullback_failures": self.pullback_failures,
            "theorem_holds": self.theorem_holds,
        })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, (f, r)) in self.faces.iter().zip(&self.face_ranks).enumerate() {
            let _ = writeln!(s, "face F{i} {f:?} rank {r}");
        }
        for w in &self.walls {
            let fmt = |r: &[Int]| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let _ = writeln!(
                s,
                "wall W{} lambda {:?} rank {}  A [{}]  B [{}]  {}",
                w.id,
                w.lambda.iter().map(ToString::to_string).collect::<Vec<_>>(),
                w.rank_zw,
                fmt(&w.a_row),
                fmt(&w.b_row),
                if w.matches { "ok" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(s, "theorem {}", if self.theorem_holds { "PASS" } else { "FAIL" });
        s
    }
}

/// Compares ∇^A and ∇^B wall by wall, checks balancing of each ∇^B face
/// component and the pullback identity on every chamber.
pub fn verify_theorem(p: &GitProblem) -> Result<TheoremReport> {
    if !p.is_calabi_yau() {
        return Err(Error::Query("verification needs a Calabi-Yau problem".into()));
    }
    let fan = build_fan(p);
    let a = decorated_complex_a(p)?;
    let b = decorated_complex_b(p)?;
    let walls: Vec<WallReport> = fan
        .walls
        .iter()
        .map(|w| WallReport {
            id: w.id,
            lambda: w.lambda.clone(),
            rank_zw: b.wall_ranks[w.id].clone(),
            a_row: a.entries[w.id].clone(),
            b_row: b.entries[w.id].clone(),
            matches: a.entries[w.id] == b.entries[w.id] && a.wall_ranks[w.id] == b.wall_ranks[w.id],
        })
        .collect();
    let mut unbalanced = Vec::new();
    for (j, f) in b.faces.iter().enumerate() {
        if !check_balancing(p, &b, f)? {
            unbalanced.push(j);
        }
    }
    let mut pullback_failures = Vec::new();
    for ch in &fan.chambers {
        let table = solve_recursive(p, &ch.sample_point)?;
        for (j, f) in table.faces.iter().enumerate() {
            let coulomb = p.subquotient(&[], f)?;
            let image = coulomb.map_point(&ch.sample_point)?;
            let down = solve_recursive(&coulomb.problem, &image)?;
            let all: Vec<usize> = (0..coulomb.problem.n()).collect();
            let expected = down.entry(&all).cloned().unwrap_or_else(Int::zero);
            if expected != table.entries[j] {
                pullback_failures.push((ch.id, j));
            }
        }
    }
    let theorem_holds = walls.iter().all(|w| w.matches) && unbalanced.is_empty() && pullback_failures.is_empty();
    Ok(TheoremReport {
        faces: b.faces,
        face_ranks: b.face_ranks,
        walls,
        unbalanced,
        pullback_failures,
        theorem_holds,
    })
}

/// Plus/minus side volumes across a wall: (vol C₊, vol C₋), EMPTY counting 0.
pub fn wall_side_volumes(fan: &GkzFan, w: &Wall) -> (Int, Int) {
    let vol = |r: ChamberRef| match r {
        ChamberRef::Chamber(i) => fan.chambers[i].volume.clone(),
        ChamberRef::Empty => Int::zero(),
    };
    (vol(w.plus), vol(w.minus))
}
