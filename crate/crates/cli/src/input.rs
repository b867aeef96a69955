//! Problem files and small argument parsers.

use std::path::Path;

use gkz_core::{GitProblem, Int, Rat};
use num_bigint::BigInt;
use serde_json::Value;

use crate::CliError;

/// A parsed problem file: exactly one of "weights" or "points", plus an
/// optional "name".
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub name: Option<String>,
    pub kind: Kind,
    pub rows: Vec<Vec<Int>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Weights,
    Points,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
        let v: Value = serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed problem file: {e}")))?;
        let Value::Object(map) = v else {
            return Err(CliError::input("problem file must be a JSON object"));
        };
        for key in map.keys() {
            if !matches!(key.as_str(), "weights" | "points" | "name") {
                return Err(CliError::input(format!("unknown key \"{key}\" in problem file")));
            }
        }
        let name = match map.get("name") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(CliError::input("\"name\" must be a string")),
        };
        let (kind, raw) = match (map.get("weights"), map.get("points")) {
            (Some(w), None) => (Kind::Weights, w),
            (None, Some(p)) => (Kind::Points, p),
            (Some(_), Some(_)) => return Err(CliError::input("problem file must contain exactly one of \"weights\" and \"points\"")),
            (None, None) => return Err(CliError::input("problem file needs a \"weights\" or \"points\" key")),
        };
        let Value::Array(list) = raw else {
            return Err(CliError::input("expected a list of integer vectors"));
        };
        let rows = list.iter().map(int_row).collect::<Result<Vec<_>, _>>()?;
        if rows.is_empty() {
            return Err(CliError::input("empty problem"));
        }
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(CliError::input("inconsistent row lengths"));
        }
        Ok(ProblemFile { name, kind, rows })
    }

    pub fn read(path: Option<&Path>) -> Result<ProblemFile, CliError> {
        let text = match path {
            Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", p.display())))?,
            _ => std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::input(format!("cannot read stdin: {e}")))?,
        };
        Self::parse(&text)
    }

    pub fn problem(&self) -> Result<GitProblem, CliError> {
        match self.kind {
            Kind::Weights => Ok(GitProblem::from_weight_vectors(self.rows[0].len(), &self.rows)?),
            Kind::Points => Ok(GitProblem::from_points(&self.rows)?),
        }
    }
}

fn int_row(v: &Value) -> Result<Vec<Int>, CliError> {
    let Value::Array(items) = v else {
        return Err(CliError::input("expected a list of integer vectors"));
    };
    items
        .iter()
        .map(|x| match x {
            Value::Number(n) => n
                .as_i64()
                .map(Int::from)
                .or_else(|| n.as_u64().map(Int::from))
                .ok_or_else(|| CliError::input(format!("non-integer entry {n}"))),
            Value::String(s) => s.parse::<BigInt>().map_err(|_| CliError::input(format!("non-integer entry \"{s}\""))),
            other => Err(CliError::input(format!("non-integer entry {other}"))),
        })
        .collect()
}

/// "c₁,…,c_k" with integer or p/q entries.
pub fn parse_point(s: &str, k: usize) -> Result<Vec<Rat>, CliError> {
    let v: Vec<Rat> = s
        .split(',')
        .map(|t| t.trim().parse::<Rat>().map_err(|_| CliError::input(format!("bad coordinate \"{}\"", t.trim()))))
        .collect::<Result<_, _>>()?;
    if v.len() != k {
        return Err(CliError::input(format!("expected {k} coordinates, got {}", v.len())));
    }
    Ok(v)
}

pub fn parse_int_vector(s: &str, k: usize) -> Result<Vec<Int>, CliError> {
    let v: Vec<Int> = s
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| CliError::input(format!("bad integer \"{}\"", t.trim()))))
        .collect::<Result<_, _>>()?;
    if v.len() != k {
        return Err(CliError::input(format!("expected {k} entries, got {}", v.len())));
    }
    Ok(v)
}

/// Plane "ax+by+cz=d" as ([a, b, c], d).
pub fn parse_slice(s: &str) -> Result<(Vec<Rat>, Rat), CliError> {
    let bad = || CliError::input(format!("bad slice \"{s}\"; expected the form ax+by+cz=d"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (lhs, rhs) = compact.split_once('=').ok_or_else(bad)?;
    let d = rhs.parse::<Rat>().map_err(|_| bad())?;
    let mut coef = vec![Rat::from_integer(Int::from(0)); 3];
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in lhs.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    if terms.is_empty() {
        return Err(bad());
    }
    for t in terms {
        let var = t.chars().last().ok_or_else(bad)?;
        let slot = match var {
            'x' => 0,
            'y' => 1,
            'z' => 2,
            _ => return Err(bad()),
        };
        let c = match &t[..t.len() - 1] {
            "" | "+" => Rat::from_integer(Int::from(1)),
            "-" => Rat::from_integer(Int::from(-1)),
            num => num.trim_end_matches('*').parse::<Rat>().map_err(|_| bad())?,
        };
        coef[slot] += c;
    }
    Ok((coef, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_keys_rejected() {
        let e = ProblemFile::parse(r#"{"weights": [[1]], "points": [[1]]}"#).unwrap_err();
        assert_eq!(e.code, 2);
    }

    #[test]
    fn floats_rejected() {
        assert!(ProblemFile::parse(r#"{"weights": [[1.5], [-1]]}"#).is_err());
    }

    #[test]
    fn big_entries_as_strings() {
        let f = ProblemFile::parse(r#"{"weights": [["100000000000000000000"], [-1]], "name": "big"}"#).unwrap();
        assert_eq!(f.rows[0][0].to_string(), "100000000000000000000");
        assert_eq!(f.name.as_deref(), Some("big"));
    }

    #[test]
    fn slice_forms() {
        let (a, d) = parse_slice("x + 2y - z = 3").unwrap();
        assert_eq!(a, vec![Rat::from_integer(1.into()), Rat::from_integer(2.into()), Rat::from_integer((-1).into())]);
        assert_eq!(d, Rat::from_integer(3.into()));
        assert!(parse_slice("x+w=1").is_err());
        assert_eq!(parse_slice("1/2z=1").unwrap().0[2], Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn points_with_fractions() {
        let c = parse_point("1/2, -3", 2).unwrap();
        assert_eq!(c[0], Rat::new(1.into(), 2.into()));
        assert!(parse_point("1,2", 3).is_err());
    }
}
