//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! `u < v`, 0-indexed and sorted.

use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

pub fn write_edge_list(g: &Graph, mut w: impl Write) -> Result<()> {
    let edges = g.edges();
    writeln!(w, "{} {}", g.vertex_count(), edges.len())?;
    for (u, v) in edges {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse { line: lineno, msg: format!("missing {what}") })?
            .parse()
            .map_err(|e| Error::Parse { line: lineno, msg: format!("bad {what}: {e}") })
    };
    let pair = (next("first field")?, next("second field")?);
    if it.next().is_some() {
        return Err(Error::Parse { line: lineno, msg: "trailing fields".into() });
    }
    Ok(pair)
}

pub fn read_edge_list(r: impl BufRead) -> Result<Graph> {
    let mut lines = r
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let (n, m) = parse_pair(&header?, hl)?;
    let mut g = Graph::try_new(n)?;
    let mut seen = 0usize;
    for (lineno, line) in lines {
        let (u, v) = parse_pair(&line?, lineno)?;
        if u >= n || v >= n {
            return Err(Error::Parse { line: lineno, msg: format!("vertex out of range 0..{n}") });
        }
        if u == v {
            return Err(Error::Parse { line: lineno, msg: format!("loop at {u}") });
        }
        if g.has_edge(u, v) {
            return Err(Error::Parse { line: lineno, msg: format!("duplicate edge {u} {v}") });
        }
        g.add_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse { line: hl, msg: format!("header declares {m} edges, found {seen}") });
    }
    Ok(g)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    read_edge_list(text.as_bytes())
}
