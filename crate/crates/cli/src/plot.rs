//! Plot data for fans: k = 2 rays, or a planar slice of a k = 3 fan.

use gkz_core::gkz_fan::GkzFan;
use gkz_core::lattice::{dot_rat, to_rat};
use gkz_core::multiplicity::{minimal_face_sets, wall_multiplicities};
use gkz_core::{json, GitProblem, Rat};
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::input::parse_slice;
use crate::CliError;

fn floats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::from(x.to_f64().unwrap_or(f64::NAN))).collect())
}

fn labels(p: &GitProblem, fan: &GkzFan, w: usize) -> Result<Value, CliError> {
    let wall = &fan.walls[w];
    let t = wall_multiplicities(p, wall)?;
    let mut row = Map::new();
    for (i, f) in minimal_face_sets(p).iter().enumerate() {
        if let Some(n) = t.entry(f).filter(|n| !n.is_zero()) {
            row.insert(i.to_string(), json::int(n));
        }
    }
    Ok(json!({
        "wall": w,
        "d": json::int(&wall.d),
        "rank_ZW": json::int(&t.total),
        "multiplicities": row,
        "text": format!("W{w}: {}", t.total),
    }))
}

/// `slice` is required for k = 3 and ignored otherwise.
pub fn plot_data(p: &GitProblem, fan: &GkzFan, slice: &str) -> Result<Value, CliError> {
    match fan.k() {
        2 => {
            let mut segments = Vec::new();
            for w in &fan.walls {
                let ray = to_rat(&w.generators[0]);
                segments.push(json!({
                    "from": [0.0, 0.0],
                    "to": floats(&ray),
                    "label": labels(p, fan, w.id)?,
                }));
            }
            Ok(json!({ "k": 2, "segments": segments }))
        }
        3 => {
            let (a, d) = parse_slice(slice)?;
            if !d.is_positive() {
                return Err(CliError::input("slice needs d > 0 to cut the fan in a bounded picture"));
            }
            let mut segments = Vec::new();
            let mut rays = Vec::new();
            let mut missed = Vec::new();
            for w in &fan.walls {
                let r: Vec<Vec<Rat>> = w.generators.iter().map(|g| to_rat(g)).collect();
                let h: Vec<Rat> = r.iter().map(|x| dot_rat(&a, x)).collect();
                let hit = |i: usize| -> Vec<Rat> { r[i].iter().map(|x| x * &d / &h[i]).collect() };
                let pos: Vec<usize> = (0..r.len()).filter(|&i| h[i].is_positive()).collect();
                match (r.len(), pos.as_slice()) {
                    (2, [0, 1]) => segments.push(json!({
                        "from": floats(&hit(0)),
                        "to": floats(&hit(1)),
                        "label": labels(p, fan, w.id)?,
                    })),
                    (2, [i]) => {
                        let o = 1 - i;
                        let dir: Vec<Rat> = r[o].iter().zip(&r[*i]).map(|(x, y)| x - y * &h[o] / &h[*i]).collect();
                        rays.push(json!({
                            "from": floats(&hit(*i)),
                            "direction": floats(&dir),
                            "label": labels(p, fan, w.id)?,
                        }));
                    }
                    _ => missed.push(w.id),
                }
            }
            Ok(json!({
                "k": 3,
                "slice": { "normal": json::rats(&a), "offset": json::rat(&d) },
                "segments": segments,
                "rays": rays,
                "walls_missing_slice": missed,
            }))
        }
        k => Err(CliError::query(format!("plot data is available for k = 2 or 3, not k = {k}"))),
    }
}
