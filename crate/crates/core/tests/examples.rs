mod common;

use std::collections::BTreeSet;

use common::*;
use gkz_core::gkz_fan::{build_fan, phase_rank, ChamberLocation, ChamberRef};
use gkz_core::lattice::int;
use gkz_core::multiplicity::{
    decorated_complex_a, decorated_complex_b, face_rank, minimal_face_sets, run_accumulate, solve_recursive,
    tropical_intersection, verify_theorem, wall_multiplicities, wall_side_volumes,
};
use gkz_core::subdivision::subdivision_of_chamber;
use gkz_core::volumes::{minimal_phase_rank, minimal_phase_rank_fast, minimal_phase_rank_oracle, stacky_fan_of_chamber};
use gkz_core::{Error, Int};

fn terms(t: &gkz_core::multiplicity::MultiplicityTable) -> Vec<Int> {
    let mut v: Vec<Int> = t.entries.iter().zip(&t.ranks).map(|(n, r)| n * r).filter(|x| *x != int(0)).collect();
    v.sort();
    v
}

#[test]
fn six_points_faces_and_ranks() {
    let p = six_points();
    let faces = minimal_face_sets(&p);
    assert_eq!(*faces, vec![vec![], vec![4, 5], vec![0, 1, 2], vec![0, 1, 2, 3, 4, 5]]);
    for f in faces.iter() {
        assert_eq!(face_rank(&p, f).unwrap(), int(1));
    }
    assert_eq!(minimal_phase_rank(&p).unwrap(), int(1));
    assert_eq!(minimal_phase_rank_fast(&p), int(1));
    assert_eq!(minimal_phase_rank_oracle(&p).unwrap(), int(1));
}

#[test]
fn six_points_coarse_chamber() {
    let p = six_points();
    let c = six_points_coarse(&p);
    assert_eq!(phase_rank(&p, &c).unwrap(), int(6));
    let t = solve_recursive(&p, &c).unwrap();
    assert_eq!(t.total, int(6));
    assert_eq!(t.entry(&[0, 1, 2, 3, 4, 5]), Some(&int(2)));
    assert_eq!(t.entry(&[0, 1, 2]), Some(&int(2)));
    assert_eq!(t.entry(&[4, 5]), Some(&int(1)));
    assert_eq!(t.entry(&[]), Some(&int(1)));
    for f in &t.faces {
        assert_eq!(run_accumulate(&p, &c, f).unwrap(), *t.entry(f).unwrap());
    }
}

#[test]
fn six_points_run_through_every_wall() {
    let p = six_points();
    let fan = build_fan(&p);
    let ChamberLocation::Chamber(start) = fan.chamber_of(&six_points_coarse(&p)) else {
        panic!("coarse point is generic");
    };
    let mut from = vec![gkz_core::Rat::from_integer(int(0)); 4];
    for (r, w) in fan.chamber(start).cone.rays.iter().zip([1, 3, 7, 7]) {
        for (s, x) in from.iter_mut().zip(r) {
            *s += gkz_core::Rat::from_integer(x * int(w));
        }
    }
    let run = fan.straight_line_run_from_point(start, &from).unwrap();
    assert_eq!(run.crossings.len(), 5);
    let mut vol = fan.chamber(start).volume.clone();
    for x in &run.crossings {
        assert_eq!(fan.walls[x.wall].d, int(1));
        let w = &fan.walls[x.wall];
        let (plus, minus) = wall_side_volumes(&fan, w);
        let diff = plus - minus;
        assert_eq!(diff, &w.d * wall_multiplicities(&p, w).unwrap().total);
        assert_eq!(diff, int(1));
        vol = match x.to {
            ChamberRef::Chamber(c) => fan.chamber(c).volume.clone(),
            ChamberRef::Empty => int(0),
        };
    }
    assert_eq!(vol, int(1));
}

#[test]
fn five_points_with_a5() {
    let p = five_points();
    let t = solve_recursive(&p, &lift_point(&p, &[1, 0, 1, 0, 1])).unwrap();
    assert_eq!(t.total, int(4));
    assert_eq!(terms(&t), vec![int(1), int(1), int(2)]);
    assert_eq!(t.ledger_totals(), "4 = 2 + 1 + 1");
}

/// Deleting a₅ leaves the recursion with three terms; the two-term split
/// 4 = 2 + 2 is not produced by the minimal faces of this configuration.
#[test]
fn five_points_without_a5() {
    let p = four_points();
    assert_eq!(*minimal_face_sets(&p), vec![vec![], vec![0, 1], vec![0, 1, 2, 3]]);
    let c = lift_point(&p, &[1, 0, 1, 0]);
    let t = solve_recursive(&p, &c).unwrap();
    assert_eq!(t.total, int(4));
    assert_eq!(t.entries, vec![int(1), int(1), int(1)]);
    assert_eq!(t.ranks, vec![int(2), int(1), int(1)]);
    assert_eq!(t.ledger_totals(), "4 = 2 + 1 + 1");
    for f in &t.faces {
        assert_eq!(run_accumulate(&p, &c, f).unwrap(), *t.entry(f).unwrap());
    }
}

#[test]
fn five_points_run_is_stable_under_perturbation() {
    let p = five_points();
    let fan = build_fan(&p);
    let start = fan.chambers.iter().max_by_key(|c| c.volume.clone()).unwrap().id;
    let min = minimal_phase_rank(&p).unwrap();
    for attempt in 0..10 {
        let run = fan.straight_line_run_from_attempt(start, attempt).unwrap();
        let end = match run.end {
            ChamberRef::Chamber(c) => {
                assert!(fan.chamber(c).is_minimal);
                fan.chamber(c).volume.clone()
            }
            ChamberRef::Empty => int(0),
        };
        assert_eq!(end, min);
        let drop: Int = run
            .crossings
            .iter()
            .map(|x| {
                let w = &fan.walls[x.wall];
                &w.d * wall_multiplicities(&p, w).unwrap().total
            })
            .sum();
        assert_eq!(fan.chamber(start).volume.clone() - drop, end);
    }
}

#[test]
fn rank_two_cy_figure() {
    let p = rank_two_cy();
    let fan = build_fan(&p);
    assert_eq!(fan.chambers.len(), 5);
    assert_eq!(fan.walls.len(), 5);
    let b = decorated_complex_b(&p).unwrap();
    assert_eq!(b, decorated_complex_a(&p).unwrap());
    let ray = |w: usize| fan.walls[w].generators[0].clone();
    let sorted = |face: &[usize]| {
        let mut v: Vec<_> = b.support(face).into_iter().map(|(w, n)| (ray(w), n)).collect();
        v.sort();
        v
    };
    let mut top = vec![(iv(&[1, 0]), int(2)), (iv(&[0, 1]), int(1)), (iv(&[-1, 1]), int(1)), (iv(&[-1, -2]), int(1))];
    top.sort();
    assert_eq!(sorted(&[0, 1, 2, 3, 4, 5, 6]), top);
    let mut mid = vec![(iv(&[0, 1]), int(1)), (iv(&[0, -1]), int(1))];
    mid.sort();
    assert_eq!(sorted(&[0, 1, 4, 6]), mid);
    assert!(sorted(&[]).is_empty());
    let report = verify_theorem(&p).unwrap();
    assert!(report.theorem_holds);
    assert!(report.unbalanced.is_empty());
    assert!(report.pullback_failures.is_empty());
}

#[test]
fn rank_two_cy_chambers_have_distinct_subdivisions() {
    let p = rank_two_cy();
    let fan = build_fan(&p);
    let mut seen = BTreeSet::new();
    for c in &fan.chambers {
        let t = subdivision_of_chamber(&fan, c.id).unwrap();
        let mut cells: Vec<Vec<usize>> = t.cells.iter().map(|x| x.marking.clone()).collect();
        cells.sort();
        assert!(seen.insert(cells), "chamber {} repeats a subdivision", c.id);
        assert_eq!(t.uses_base_point(), c.volume > int(0));
        if t.uses_base_point() {
            assert_eq!(stacky_fan_of_chamber(&fan, c.id).unwrap().volume(), c.volume);
        }
    }
    assert_eq!(seen.len(), 5);
}

#[test]
fn rank_two_cy_projection_to_coulomb_problem() {
    let p = rank_two_cy();
    let fan = build_fan(&p);
    let face = vec![0, 1, 4, 6];
    let h: Vec<usize> = (0..7).filter(|i| !face.contains(i)).collect();
    let sub = p.quotient_by_subspace(&h).unwrap();
    assert_eq!(sub.problem.k(), 1);
    for c in &fan.chambers {
        let (down, loc) = fan.project_chamber(c.id, &sub).unwrap();
        let table = solve_recursive(&p, &c.sample_point).unwrap();
        let expect = table.entry(&face).cloned().unwrap();
        let got = match loc {
            ChamberLocation::Chamber(d) => solve_recursive(&sub.problem, &down.chamber(d).sample_point)
                .unwrap()
                .entry(&[0, 1, 2, 3])
                .cloned()
                .unwrap(),
            ChamberLocation::Empty => int(0),
            ChamberLocation::OnBoundary { .. } => panic!("sample point maps onto a wall"),
        };
        assert_eq!(got, expect, "chamber {}", c.id);
    }
}

fn named_walls(n: i64) -> (gkz_core::git_problem::GitProblem, [usize; 3]) {
    let p = rank_three_cy(n);
    let fan = build_fan(&p);
    let find = |a: [i64; 3], b: [i64; 3]| {
        let mut g = vec![iv(&a), iv(&b)];
        g.sort();
        fan.walls.iter().position(|w| w.generators == g).expect("wall present")
    };
    let w1 = find([0, 1, 0], [-n, 1, 0]);
    let w2 = find([1, 0, 0], [0, 1, 0]);
    let w3 = find([0, 1, 0], [n - 2, -2, -1]);
    (p, [w1, w2, w3])
}

#[test]
fn rank_three_cy_wall_multiplicities() {
    for n in [2i64, 3, 4] {
        let (p, [w1, w2, w3]) = named_walls(n);
        let fan = build_fan(&p);
        assert_eq!(fan.chambers.len(), 6);
        assert_eq!(fan.walls.len(), 9);
        let all: Vec<usize> = (0..6).collect();
        let m1 = wall_multiplicities(&p, &fan.walls[w1]).unwrap();
        let m2 = wall_multiplicities(&p, &fan.walls[w2]).unwrap();
        let m3 = wall_multiplicities(&p, &fan.walls[w3]).unwrap();
        assert_eq!(m1.entry(&all), Some(&int(n + 2)));
        assert_eq!(m1.total, int(n + 2));
        assert_eq!(m2.entry(&all), Some(&int(4)));
        assert_eq!(m3.total, int(1));
        let report = verify_theorem(&p).unwrap();
        assert!(report.theorem_holds, "n = {n}");
    }
}

#[test]
fn rank_three_cy_tropical_intersection() {
    let dir = iv(&[0, 0, 1]);
    for n in [3i64, 4] {
        let (p, [w1, w2, w3]) = named_walls(n);
        let fan = build_fan(&p);
        let i1 = tropical_intersection(&dir, &fan.walls[w1]).unwrap();
        let i2 = tropical_intersection(&dir, &fan.walls[w2]).unwrap();
        let i3 = tropical_intersection(&dir, &fan.walls[w3]).unwrap();
        assert_eq!(i3, int(n - 2));
        assert_eq!(i1 * int(n + 2), i2 * int(4) + i3 * int(1));
    }
    let (p, [_, _, w3]) = named_walls(2);
    let fan = build_fan(&p);
    assert!(matches!(tropical_intersection(&dir, &fan.walls[w3]), Err(Error::Query(_))));
}

#[test]
fn rank_three_cy_point_component_is_not_constant() {
    let (p, [w1, w2, _]) = named_walls(3);
    let b = decorated_complex_b(&p).unwrap();
    let all: Vec<usize> = (0..6).collect();
    assert_eq!(b.entry(w1, &all), int(5));
    assert_eq!(b.entry(w2, &all), int(4));
}

#[test]
fn flop() {
    let p = common::flop();
    let fan = build_fan(&p);
    assert_eq!(fan.chambers.len(), 2);
    assert_eq!(fan.walls.len(), 1);
    let w = &fan.walls[0];
    assert_eq!(w.d, int(0));
    let (plus, minus) = wall_side_volumes(&fan, w);
    assert_eq!(plus, minus);
    assert_eq!(plus, int(2));
    let t = wall_multiplicities(&p, w).unwrap();
    assert_eq!(t.total, int(1));
    assert!(verify_theorem(&p).unwrap().theorem_holds);
}

#[test]
fn run_rejects_calabi_yau_input() {
    let p = rank_two_cy();
    let c = build_fan(&p).chambers[0].sample_point.clone();
    assert!(run_accumulate(&p, &c, &[]).is_err());
}

#[test]
fn verify_rejects_non_calabi_yau_input() {
    assert!(matches!(verify_theorem(&six_points()), Err(Error::Query(_))));
}
