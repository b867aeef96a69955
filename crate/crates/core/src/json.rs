//! Conversions of exact numbers into JSON values.
//!
//! Integers that fit in i64 become JSON numbers, larger ones become decimal
//! strings. Rationals become numbers when integral and "p/q" strings otherwise.

use num_traits::ToPrimitive;
use serde_json::Value;

use crate::lattice::{Int, Rat};

pub fn int(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn ints(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn rat(x: &Rat) -> Value {
    if x.is_integer() {
        int(&x.to_integer())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn int_rows(rows: &[Vec<Int>]) -> Value {
    Value::Array(rows.iter().map(|r| ints(r)).collect())
}
