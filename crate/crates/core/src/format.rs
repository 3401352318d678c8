//! Plain-text polytope files.
//!
//! ```text
//! # comment lines start with '#'
//! 4 3
//! 1 0 0
//! 0 1 0
//! 0 0 1
//! -1 -1 -1
//! ```
//!
//! The first data line is `<vertex count> <dimension>`, followed by one
//! whitespace-separated vertex per line. Blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linear::IntVector;
use crate::polytope::{convex_hull, LatticePolytope};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses the vertex list of a polytope file. Line numbers in errors are
/// 1-based.
pub fn parse_points(text: &str) -> Result<Vec<IntVector>> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = data.next().ok_or_else(|| parse_err(1, "missing header line \"<count> <dim>\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(hline, "header must be \"<count> <dim>\""));
    }
    let count: usize = fields[0]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad vertex count {:?}", fields[0])))?;
    let dim: usize = fields[1]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad dimension {:?}", fields[1])))?;
    if dim == 0 {
        return Err(parse_err(hline, "dimension must be positive"));
    }

    let mut points = Vec::with_capacity(count);
    let mut last = hline;
    for (lineno, line) in data {
        last = lineno;
        if points.len() == count {
            return Err(parse_err(lineno, format!("expected {count} vertices, found more")));
        }
        let coords = line
            .split_whitespace()
            .map(|t| t.parse::<BigInt>().map_err(|_| parse_err(lineno, format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dim {
            return Err(parse_err(lineno, format!("expected {dim} coordinates, found {}", coords.len())));
        }
        points.push(IntVector::new(coords));
    }
    if points.len() != count {
        return Err(parse_err(last, format!("expected {count} vertices, found {}", points.len())));
    }
    Ok(points)
}

/// Parses a polytope file and takes the convex hull of its points.
pub fn parse_polytope(text: &str) -> Result<LatticePolytope> {
    convex_hull(&parse_points(text)?)
}

pub fn read_polytope(path: &Path) -> Result<LatticePolytope> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_polytope(&text)
}

/// Renders the vertices of `p` in the file format, with an optional comment.
pub fn write_polytope(p: &LatticePolytope, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    let _ = writeln!(out, "{} {}", p.n_vertices(), p.dim());
    for v in p.vertices() {
        let row: Vec<String> = v.coords().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
