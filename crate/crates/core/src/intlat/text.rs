//! Plain-text matrix files:
//!
//! ```text
//! # scale 1/2
//! 3 3
//! 1 -2 3
//! -2 3 1
//! 3 1 -2
//! ```
//!
//! The scale header is optional. Other lines starting with `#` and blank lines
//! are ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::lattice::Lattice;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

pub fn write_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_lattice(lat: &Lattice) -> String {
    let mut out = String::new();
    if !lat.scale().is_one() {
        out.push_str(&format!("# scale {}/{}\n", lat.scale().numer(), lat.scale().denom()));
    }
    out.push_str(&write_matrix(lat.generator()));
    out
}

/// Parses a matrix and its optional scale header.
pub fn parse_matrix(text: &str) -> Result<(IntMatrix, BigRational)> {
    let mut scale = BigRational::one();
    let mut dims: Option<(usize, usize)> = None;
    let mut data = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(s) = rest.trim().strip_prefix("scale") {
                if dims.is_some() {
                    return Err(Error::parse(lineno, "scale header must precede the matrix"));
                }
                scale = parse_rational(s.trim())
                    .ok_or_else(|| Error::parse(lineno, format!("bad scale '{}'", s.trim())))?;
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match dims {
            None => {
                if fields.len() != 2 {
                    return Err(Error::parse(lineno, "expected a dimension line 'rows cols'"));
                }
                let r: usize = fields[0].parse().map_err(|_| Error::parse(lineno, "bad row count"))?;
                let c: usize = fields[1].parse().map_err(|_| Error::parse(lineno, "bad column count"))?;
                if r == 0 || c == 0 {
                    return Err(Error::parse(lineno, "dimensions must be positive"));
                }
                dims = Some((r, c));
            }
            Some((r, c)) => {
                if data.len() == r * c {
                    return Err(Error::parse(lineno, "more rows than declared"));
                }
                if fields.len() != c {
                    return Err(Error::parse(lineno, format!("expected {} entries, found {}", c, fields.len())));
                }
                for f in fields {
                    let v: BigInt = f.parse().map_err(|_| Error::parse(lineno, format!("bad integer '{}'", f)))?;
                    data.push(v);
                }
            }
        }
    }
    let (r, c) = dims.ok_or_else(|| Error::parse(last_line.max(1), "missing dimension line"))?;
    if data.len() != r * c {
        return Err(Error::parse(last_line, format!("expected {} rows, found {}", r, data.len() / c)));
    }
    Ok((IntMatrix::new(r, c, data)?, scale))
}

pub fn parse_lattice(text: &str) -> Result<Lattice> {
    let (m, scale) = parse_matrix(text)?;
    Lattice::with_scale(m, scale)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if q == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(p, q))
}

/// One point per line, space-separated.
pub fn parse_points(text: &str) -> Result<Vec<Vec<i64>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|f| f.parse::<i64>().map_err(|_| Error::parse(i + 1, format!("bad integer '{}'", f))))
                .collect()
        })
        .collect()
}

/// Points sorted lexicographically, one per line.
pub fn write_points<'a>(points: impl IntoIterator<Item = &'a Vec<i64>>) -> String {
    let mut pts: Vec<&Vec<i64>> = points.into_iter().collect();
    pts.sort();
    let mut out = String::new();
    for p in pts {
        let line: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
