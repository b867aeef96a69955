//! Subcommand implementations. Each returns the human-readable text and the
//! JSON document for `--json`.

use std::fmt::Write;

use gkz_core::gkz_fan::{build_fan, ChamberLocation, ChamberRef, GkzFan};
use gkz_core::multiplicity::{
    face_rank, minimal_face_sets, run_accumulate, solve_recursive, tropical_intersection, verify_theorem,
    wall_multiplicities, wall_side_volumes, MultiplicityTable,
};
use gkz_core::{json, Error, GitProblem, Int, Rat};
use serde_json::{json, Map, Value};

use crate::input::{parse_int_vector, parse_point};
use crate::plot;
use crate::CliError;

pub struct Report {
    pub text: String,
    pub json: Value,
    /// 0, or 1 when a verification came out false.
    pub status: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, status: 0 }
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn side(r: ChamberRef) -> String {
    r.to_string()
}

fn fmt_ints(v: &[Int]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn fmt_rats(v: &[Rat]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn fmt_face(f: &[usize]) -> String {
    format!("{{{}}}", f.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

pub fn census(fan: &GkzFan) -> String {
    let mut s = plural(fan.chambers.len(), "chamber");
    if fan.has_empty_chamber {
        s.push_str(", empty chamber present");
    } else {
        let _ = write!(s, ", {}", plural(fan.walls.len(), "wall"));
    }
    s
}

pub fn fan(p: &GitProblem, plot_slice: Option<&str>) -> Result<(Report, Option<Value>), CliError> {
    let fan = build_fan(p);
    let mut text = census(&fan);
    text.push('\n');
    if fan.has_empty_chamber {
        let bounding = fan.walls.iter().filter(|w| w.plus == ChamberRef::Empty || w.minus == ChamberRef::Empty).count();
        let _ = writeln!(text, "{}, {bounding} bounding the empty chamber", plural(fan.walls.len(), "wall"));
    }
    for c in &fan.chambers {
        let rays: Vec<String> = c.cone.rays.iter().map(|r| fmt_ints(r)).collect();
        let _ = writeln!(
            text,
            "C{}  volume {}{}  sample {}  rays {}",
            c.id,
            c.volume,
            if c.is_minimal { " (minimal)" } else { "" },
            fmt_rats(&c.sample_point),
            rays.join(" ")
        );
    }
    for w in &fan.walls {
        let mut gens: Vec<String> = w.generators.iter().map(|r| fmt_ints(r)).collect();
        if gens.is_empty() {
            gens.push("{0}".into());
        }
        let _ = writeln!(
            text,
            "W{}  {} | {}  lambda {}  d {}  cone {}",
            w.id,
            side(w.plus),
            side(w.minus),
            fmt_ints(&w.lambda),
            w.d,
            gens.join(" ")
        );
    }
    let mut doc = fan.to_json();
    doc["census"] = Value::from(census(&fan));
    let plot = match plot_slice {
        Some(s) => Some(plot::plot_data(p, &fan, s)?),
        None => None,
    };
    Ok((Report::ok(text, doc), plot))
}

pub fn faces(p: &GitProblem) -> Result<Report, CliError> {
    let faces = minimal_face_sets(p);
    let all: Vec<usize> = (0..p.n()).collect();
    let mut text = format!("{}\n", plural(faces.len(), "minimal face"));
    let mut out = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        let rank = face_rank(p, f)?;
        let coulomb = p.subquotient(&[], f)?;
        let higgs = p.subquotient(f, &all)?;
        let _ = writeln!(
            text,
            "F{i} {}  rank {}  Coulomb k={} N={}  Higgs k={} N={}",
            fmt_face(f),
            rank,
            coulomb.problem.k(),
            coulomb.problem.n(),
            higgs.problem.k(),
            higgs.problem.n()
        );
        out.push(json!({
            "id": i,
            "indices": f,
            "rank": json::int(&rank),
            "coulomb": { "k": coulomb.problem.k(), "n": coulomb.problem.n() },
            "higgs": { "k": higgs.problem.k(), "n": higgs.problem.n() },
        }));
    }
    Ok(Report::ok(text, json!({ "faces": out })))
}

/// Locates a user-supplied point in a nonempty chamber.
fn locate(fan: &GkzFan, c: &[Rat]) -> Result<usize, CliError> {
    match fan.chamber_of(c) {
        ChamberLocation::Chamber(id) => Ok(id),
        ChamberLocation::Empty => Err(CliError::query("point lies in the empty chamber")),
        ChamberLocation::OnBoundary { .. } => Err(CliError::query("point lies on a stratum boundary")),
    }
}

fn table_text(t: &MultiplicityTable) -> String {
    let mut s = String::new();
    for ((f, r), n) in t.faces.iter().zip(&t.ranks).zip(&t.entries) {
        let _ = writeln!(s, "  {}  rank {}  n {}", fmt_face(f), r, n);
    }
    s
}

pub fn sod(p: &GitProblem, chamber: &str) -> Result<Report, CliError> {
    let c = parse_point(chamber, p.k())?;
    let fan = build_fan(p);
    let id = locate(&fan, &c)?;
    let t = solve_recursive(p, &c)?;
    let mut text = format!("chamber C{id}, volume {}\n", fan.chamber(id).volume);
    text.push_str(&table_text(&t));
    let _ = writeln!(text, "{}", t.ledger());
    let _ = writeln!(text, "{}", t.ledger_totals());
    let mut doc = t.to_json();
    doc["chamber"] = Value::from(id);
    doc["ledger_totals"] = Value::from(t.ledger_totals());
    Ok(Report::ok(text, doc))
}

fn row_map(t: &MultiplicityTable, faces: &[Vec<usize>]) -> Value {
    let mut m = Map::new();
    for (i, f) in faces.iter().enumerate() {
        if let Some(n) = t.entry(f) {
            m.insert(i.to_string(), json::int(n));
        }
    }
    Value::Object(m)
}

pub fn walls(p: &GitProblem) -> Result<Report, CliError> {
    let fan = build_fan(p);
    let faces = minimal_face_sets(p);
    let mut text = format!("{}\n", plural(fan.walls.len(), "wall"));
    let mut out = Vec::new();
    for w in &fan.walls {
        let t = wall_multiplicities(p, w)?;
        let (vp, vm) = wall_side_volumes(&fan, w);
        let row: Vec<String> = faces
            .iter()
            .enumerate()
            .filter_map(|(i, f)| t.entry(f).filter(|n| **n != Int::from(0)).map(|n| format!("F{i}:{n}")))
            .collect();
        let _ = writeln!(
            text,
            "W{}  {} ({vp}) | {} ({vm})  d {}  rank Z_W {}  [{}]",
            w.id,
            side(w.plus),
            side(w.minus),
            w.d,
            t.total,
            row.join(" ")
        );
        out.push(json!({
            "id": w.id,
            "generators": json::int_rows(&w.generators),
            "lambda": json::ints(&w.lambda),
            "d": json::int(&w.d),
            "plus": side(w.plus),
            "minus": side(w.minus),
            "volumes": [json::int(&vp), json::int(&vm)],
            "rank_ZW": json::int(&t.total),
            "row": row_map(&t, &faces),
        }));
    }
    Ok(Report::ok(text, json!({ "walls": out })))
}

pub fn run(p: &GitProblem, chamber: &str) -> Result<Report, CliError> {
    if p.is_calabi_yau() {
        return Err(CliError::query("runs need a non-Calabi–Yau problem (det V ≠ 0)"));
    }
    let c = parse_point(chamber, p.k())?;
    let fan = build_fan(p);
    let id = locate(&fan, &c)?;
    let run = fan.straight_line_run_from_point(id, &c)?;
    let vol = |r: ChamberRef| match r {
        ChamberRef::Chamber(i) => fan.chamber(i).volume.clone(),
        ChamberRef::Empty => Int::from(0),
    };
    let mut text = format!("start C{id}, volume {}\n", fan.chamber(id).volume);
    let mut steps = Vec::new();
    for x in &run.crossings {
        let w = &fan.walls[x.wall];
        let z = wall_multiplicities(p, w)?.total;
        let _ = writeln!(
            text,
            "  cross W{} at {}  d {}  rank Z_W {}  -> {} (volume {})",
            w.id,
            fmt_rats(&x.point),
            w.d,
            z,
            x.to,
            vol(x.to)
        );
        steps.push(json!({
            "wall": w.id,
            "point": json::rats(&x.point),
            "d": json::int(&w.d),
            "rank_ZW": json::int(&z),
            "to": side(x.to),
            "volume": json::int(&vol(x.to)),
        }));
    }
    let _ = writeln!(text, "end {}", run.end);
    let faces = minimal_face_sets(p);
    let mut acc = Map::new();
    for (i, f) in faces.iter().enumerate() {
        let n = run_accumulate(p, &c, f)?;
        let _ = writeln!(text, "  F{i} {}  n {}", fmt_face(f), n);
        acc.insert(i.to_string(), json::int(&n));
    }
    Ok(Report::ok(
        text,
        json!({
            "start": id,
            "crossings": steps,
            "end": side(run.end),
            "perturbations": run.attempts,
            "accumulated": acc,
        }),
    ))
}

pub fn tropical(p: &GitProblem, direction: &str, wall: Option<usize>) -> Result<Report, CliError> {
    let v = parse_int_vector(direction, p.k())?;
    let fan = build_fan(p);
    let ids: Vec<usize> = match wall {
        Some(i) if i < fan.walls.len() => vec![i],
        Some(i) => return Err(CliError::query(format!("no wall W{i}"))),
        None => (0..fan.walls.len()).collect(),
    };
    let mut text = String::new();
    let mut out = Vec::new();
    for i in ids {
        let w = &fan.walls[i];
        let z = wall_multiplicities(p, w)?.total;
        match tropical_intersection(&v, w) {
            Ok(m) => {
                let _ = writeln!(text, "W{i}  intersection {m}  rank Z_W {z}  product {}", &m * &z);
                out.push(json!({ "wall": i, "intersection": json::int(&m), "rank_ZW": json::int(&z), "transverse": true }));
            }
            Err(Error::Query(_)) => {
                let _ = writeln!(text, "W{i}  non-transverse");
                out.push(json!({ "wall": i, "rank_ZW": json::int(&z), "transverse": false }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report::ok(text, json!({ "direction": json::ints(&v), "walls": out })))
}

pub fn verify(p: &GitProblem) -> Result<Report, CliError> {
    if !p.is_calabi_yau() {
        return Err(CliError::input("verify requires a Calabi–Yau problem (Σqᵢ = 0)"));
    }
    let r = verify_theorem(p)?;
    let mut text = r.render();
    let sums: Vec<String> = r
        .walls
        .iter()
        .map(|w| {
            let s: Int = w.b_row.iter().zip(&r.face_ranks).map(|(n, k)| n * k).sum();
            format!("W{}: {s}", w.id)
        })
        .collect();
    let _ = writeln!(text, "wall ledger: {}", sums.join(", "));
    Ok(Report {
        text,
        json: r.to_json(),
        status: if r.theorem_holds { 0 } else { 1 },
    })
}

pub fn export(p: &GitProblem, name: Option<&str>) -> Result<Report, CliError> {
    let fan = build_fan(p);
    let faces = faces(p)?;
    let walls = walls(p)?;
    let mut tables = Vec::new();
    for c in &fan.chambers {
        let mut t = solve_recursive(p, &c.sample_point)?.to_json();
        t["chamber"] = Value::from(c.id);
        tables.push(t);
    }
    let doc = json!({
        "name": name,
        "problem": {
            "weights": json::int_rows(&p.weights()),
            "points": json::int_rows(&p.points()),
            "torsion_order": json::int(&p.torsion_order()),
            "calabi_yau": p.is_calabi_yau(),
        },
        "fan": fan.to_json(),
        "faces": faces.json["faces"],
        "walls": walls.json["walls"],
        "chamber_tables": tables,
    });
    let text = format!("{}; {} minimal faces\n", census(&fan), minimal_face_sets(p).len());
    Ok(Report::ok(text, doc))
}
