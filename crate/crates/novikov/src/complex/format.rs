//! Matrix document format and human-readable grid rendering.
//!
//! ```text
//! {
//!   "m": 3,
//!   "indices": [0, 1, 2],
//!   "entries": [
//!     {"row": 1, "col": 2, "poly": [[0, -1], [1, 1]]}
//!   ]
//! }
//! ```
//!
//! `poly` lists `[exponent, coefficient]` pairs with strictly increasing
//! exponents and nonzero coefficients. Entries of intermediate sweep matrices
//! may be genuine series; they carry an extra `den` field in the same shape
//! holding the unit denominator.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::Value;

use super::{FilteredComplex, IndexPartition, NovikovMatrix};
use crate::error::{Error, Result};
use crate::{Poly, Scalar};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| perr(format!("{what} must be a nonnegative integer, got {v}")))
}

fn parse_poly(v: &Value, what: &str) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| {
        perr(format!(
            "{what}: expected an array of [exponent, coefficient]"
        ))
    })?;
    if arr.is_empty() {
        return Err(perr(format!(
            "{what}: empty polynomial (omit zero entries)"
        )));
    }
    let mut terms = Vec::with_capacity(arr.len());
    let mut last: Option<i64> = None;
    for pair in arr {
        let pair = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| perr(format!("{what}: term {pair} is not a pair")))?;
        let e = pair[0]
            .as_i64()
            .ok_or_else(|| perr(format!("{what}: exponent {} is not an integer", pair[0])))?;
        let c: BigInt = match &pair[1] {
            Value::Number(n) => n
                .to_string()
                .parse()
                .map_err(|_| perr(format!("{what}: coefficient {n} is not an integer")))?,
            other => return Err(perr(format!("{what}: coefficient {other} is not a number"))),
        };
        if last.is_some_and(|l| l >= e) {
            return Err(perr(format!("{what}: exponents must strictly increase")));
        }
        if c == BigInt::from(0) {
            return Err(perr(format!("{what}: zero coefficient at exponent {e}")));
        }
        last = Some(e);
        terms.push((e, c));
    }
    Ok(Poly::from_terms(terms))
}

/// Parses a matrix document into a structurally valid complex.
///
/// Syntax problems are [`Error::Parse`]; a well-formed document describing
/// an impossible complex is [`Error::Structure`]. Δ² = 0 is not checked here.
pub fn parse_complex(text: &str) -> Result<FilteredComplex> {
    let doc: Value = serde_json::from_str(text).map_err(|e| perr(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| perr("document must be an object"))?;
    let m = as_usize(obj.get("m").ok_or_else(|| perr("missing field m"))?, "m")?;
    let indices = obj
        .get("indices")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("missing array field indices"))?;
    let indices: Vec<u8> = indices
        .iter()
        .map(|v| {
            let k = as_usize(v, "index")?;
            u8::try_from(k).map_err(|_| Error::Structure(format!("index {k} is not in {{0,1,2}}")))
        })
        .collect::<Result<_>>()?;
    if indices.len() != m {
        return Err(Error::Structure(format!(
            "m = {m} but {} indices were given",
            indices.len()
        )));
    }
    let partition = IndexPartition::new(indices)?;
    let entries = match obj.get("entries") {
        None => Vec::new(),
        Some(v) => v
            .as_array()
            .cloned()
            .ok_or_else(|| perr("entries must be an array"))?,
    };
    let mut matrix = NovikovMatrix::zeros(m);
    let mut seen = BTreeSet::new();
    for e in &entries {
        let rec = e
            .as_object()
            .ok_or_else(|| perr(format!("entry {e} is not an object")))?;
        let row = as_usize(
            rec.get("row").ok_or_else(|| perr("entry without row"))?,
            "row",
        )?;
        let col = as_usize(
            rec.get("col").ok_or_else(|| perr("entry without col"))?,
            "col",
        )?;
        let what = format!("entry ({row},{col})");
        let num = parse_poly(
            rec.get("poly")
                .ok_or_else(|| perr(format!("{what}: missing poly")))?,
            &what,
        )?;
        let value = match rec.get("den") {
            None => Scalar::from_poly(num),
            Some(d) => Scalar::new(num, parse_poly(d, &what)?)
                .map_err(|err| perr(format!("{what}: {err}")))?,
        };
        if !(1..=m).contains(&row) || !(1..=m).contains(&col) {
            return Err(Error::Structure(format!(
                "{what} lies outside the {m}×{m} matrix"
            )));
        }
        if !seen.insert((row, col)) {
            return Err(perr(format!("duplicate {what}")));
        }
        if row >= col {
            return Err(Error::Structure(format!(
                "{what} is on or below the diagonal"
            )));
        }
        matrix.set(row, col, value);
    }
    FilteredComplex::new(matrix, partition)
}

fn write_poly(out: &mut String, p: &Poly) {
    out.push('[');
    for (n, (e, c)) in p.terms().enumerate() {
        if n > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "[{e}, {c}]");
    }
    out.push(']');
}

/// Entry records of a matrix, one per line, in row-major order.
pub fn render_matrix_entries(a: &NovikovMatrix, indent: &str) -> String {
    let mut out = String::from("[");
    for (n, ((i, j), v)) in a.entries().enumerate() {
        out.push_str(if n == 0 { "\n" } else { ",\n" });
        let _ = write!(out, "{indent}  {{\"row\": {i}, \"col\": {j}, \"poly\": ");
        write_poly(&mut out, v.numerator());
        if !v.is_polynomial() {
            out.push_str(", \"den\": ");
            write_poly(&mut out, v.denominator());
        }
        out.push('}');
    }
    if a.nnz() > 0 {
        let _ = write!(out, "\n{indent}");
    }
    out.push(']');
    out
}

/// Serializes a complex in the matrix document format.
pub fn render_complex(c: &FilteredComplex) -> String {
    let idx: Vec<String> = c
        .partition()
        .as_slice()
        .iter()
        .map(|k| k.to_string())
        .collect();
    format!(
        "{{\n  \"m\": {},\n  \"indices\": [{}],\n  \"entries\": {}\n}}\n",
        c.m(),
        idx.join(", "),
        render_matrix_entries(c.matrix(), "  ")
    )
}

/// Aligned grid of a matrix; zero entries print as `.` and series are
/// expanded to `truncate` terms.
#[allow(clippy::needless_range_loop)]
pub fn render_grid(a: &NovikovMatrix, labels: &[String], truncate: usize) -> String {
    let m = a.m();
    let cell = |i: usize, j: usize| match a.get(i, j) {
        None => ".".to_string(),
        Some(v) => v.series_string(truncate),
    };
    let mut cells = vec![vec![String::new(); m + 1]; m + 1];
    for j in 1..=m {
        cells[0][j] = labels[j - 1].clone();
        cells[j][0] = labels[j - 1].clone();
        for i in 1..=m {
            cells[i][j] = cell(i, j);
        }
    }
    let widths: Vec<usize> = (0..=m)
        .map(|j| {
            (0..=m)
                .map(|i| cells[i][j].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, s)| format!("{s:>w$}", w = widths[j]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
