//! Plain-text graph format.
//!
//! ```text
//! n m
//! u v
//! ...
//! ```
//!
//! The header gives the vertex and edge counts, followed by exactly `m`
//! edge lines. Loops are written `v v`; repeated lines are parallel edges,
//! so the format is lossless for multigraphs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{MultiGraph, Vertex};
use crate::error::{Error, Result};

pub fn write_graph(g: &MultiGraph) -> String {
    let mut s = String::with_capacity(16 + 12 * g.edge_count());
    writeln!(s, "{} {}", g.n(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

fn two_numbers(line: &str, lineno: usize) -> Result<(u64, u64)> {
    let mut it = line.split_ascii_whitespace();
    let mut next = || -> Result<u64> {
        let tok = it
            .next()
            .ok_or_else(|| Error::parse(lineno, "expected two integers"))?;
        tok.parse::<u64>()
            .map_err(|e| Error::parse(lineno, format!("bad integer {tok:?}: {e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::parse(lineno, "trailing tokens"));
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty input"))?;
    let (n, m) = two_numbers(header, lineno)?;
    if n > u32::MAX as u64 {
        return Err(Error::parse(lineno, format!("vertex count {n} too large")));
    }
    let mut g = MultiGraph::empty(n as usize);
    let mut seen = 0u64;
    for (lineno, line) in lines {
        if line.is_empty() {
            continue;
        }
        if seen == m {
            return Err(Error::parse(lineno, format!("more than the declared {m} edges")));
        }
        let (u, v) = two_numbers(line, lineno)?;
        if u >= n || v >= n {
            return Err(Error::parse(lineno, format!("vertex out of range 0..{n}")));
        }
        g.push_unchecked(u as Vertex, v as Vertex);
        seen += 1;
    }
    if seen != m {
        return Err(Error::parse(
            text.lines().count(),
            format!("declared {m} edges, found {seen}"),
        ));
    }
    Ok(g)
}

pub fn read_graph(path: &Path) -> Result<MultiGraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_graph(&text)
}

pub fn save_graph(path: &Path, g: &MultiGraph) -> Result<()> {
    fs::write(path, write_graph(g)).map_err(|e| Error::io(path, e))
}
