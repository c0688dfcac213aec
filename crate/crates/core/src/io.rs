//! Point-set text files: one point per line, coordinates separated by
//! whitespace, `#` starts a comment.

use std::fmt::Write as _;

use crate::adjacency::PointSet;
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

/// Parses a point set. The first data line fixes the dimension; `expected`
/// additionally pins it.
pub fn parse_points(text: &str, expected: Option<usize>) -> Result<(usize, PointSet)> {
    let mut dim = expected;
    let mut out = PointSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let coords: Vec<i32> = body
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| Error::Parse { line, message: format!("not an integer: {t:?}") }))
            .collect::<Result<_>>()?;
        match dim {
            None if coords.len() < 2 => {
                return Err(Error::Parse {
                    line,
                    message: format!("dimension must be at least 2, got {}", coords.len()),
                })
            }
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(Error::Parse { line, message: format!("expected {d} coordinates, found {}", coords.len()) })
            }
            Some(_) => {}
        }
        out.insert(LatticePoint(coords));
    }
    match dim {
        Some(d) => Ok((d, out)),
        None => Err(Error::Parse { line: 0, message: "no points and no dimension given".into() }),
    }
}

pub fn write_points(points: &PointSet) -> String {
    let mut out = String::new();
    for p in points {
        let coords: Vec<String> = p.0.iter().map(i32::to_string).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    out
}
