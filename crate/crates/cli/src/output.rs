//! JSON values and aligned text for the library types. Rationals are
//! always strings (`"p/q"` or `"p"`), indices are 1-based integers.

use aybe_core::jmatrix::BlockedJ;
use aybe_core::tensor::Tensor;
use aybe_core::{Rational, SquareMatrix};
use serde_json::{json, Map, Value};

pub fn rational(x: &Rational) -> Value {
    Value::String(x.to_string())
}

/// `{"n": N, "coeffs": [[i, j, k, l, "p/q"], ...]}`, keys sorted, zeros omitted.
pub fn tensor<const K: usize>(t: &Tensor<K>) -> Value {
    let coeffs: Vec<Value> = t
        .iter()
        .map(|(key, c)| {
            let mut row: Vec<Value> = key.iter().map(|&i| json!(i)).collect();
            row.push(rational(c));
            Value::Array(row)
        })
        .collect();
    json!({ "n": t.n(), "coeffs": coeffs })
}

pub fn blocked_j(j: &BlockedJ) -> Value {
    let ones: Vec<Value> = j.ones().into_iter().map(|(a, b)| json!([a, b])).collect();
    json!({ "n": j.size(), "split": j.split(), "ones": ones })
}

pub fn matrix_rows(m: &SquareMatrix) -> Value {
    let n = m.n();
    let rows: Vec<Value> = (1..=n)
        .map(|i| Value::Array((1..=n).map(|j| rational(m.get(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

/// A named point as a JSON object.
pub fn point(p: &[(&'static str, Rational)]) -> Value {
    let mut m = Map::new();
    for (name, x) in p {
        m.insert((*name).into(), rational(x));
    }
    Value::Object(m)
}

pub fn point_text(p: &[(&'static str, Rational)]) -> String {
    p.iter().map(|(name, x)| format!("{name}={x}")).collect::<Vec<_>>().join(" ")
}

/// Rows padded to the widest cell of each column; numbers right-aligned.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

pub fn tensor_text<const K: usize>(t: &Tensor<K>) -> String {
    const NAMES: [&str; 6] = ["i", "j", "k", "l", "p", "q"];
    let mut header: Vec<&str> = NAMES[..K].to_vec();
    header.push("value");
    let rows: Vec<Vec<String>> = t
        .iter()
        .map(|(key, c)| key.iter().map(|i| i.to_string()).chain([c.to_string()]).collect())
        .collect();
    columns(&header, &rows)
}

pub fn matrix_text(m: &SquareMatrix) -> String {
    let n = m.n();
    let rows: Vec<Vec<String>> = (1..=n).map(|i| (1..=n).map(|j| m.get(i, j).to_string()).collect()).collect();
    let header: Vec<String> = (1..=n).map(|j| j.to_string()).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    columns(&header, &rows)
}
