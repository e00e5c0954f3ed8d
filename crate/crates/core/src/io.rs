//! Plain-text graph files.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v        (m lines, 0-based ids)
//! ```
//!
//! Output edges are written with `u < v` in ascending lexicographic order.
//! Input accepts either orientation and duplicate lines; the header edge count
//! must match the number of edge lines.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path)?;
    parse_graph(BufReader::new(file), path)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_graph_to(g, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn write_graph_to<W: Write>(g: &Graph, out: &mut W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    let mut edges: Vec<_> = g.edges().collect();
    if !g.is_canonical() {
        edges.sort_unstable();
    }
    for (u, v) in edges {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Parses the text format. `origin` only labels error messages.
pub fn parse_graph<R: BufRead>(reader: R, origin: &Path) -> Result<Graph> {
    let err = |line: usize, message: String| Error::Parse {
        path: PathBuf::from(origin),
        line,
        message,
    };

    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(
                lineno,
                format!("expected two fields, found {}", fields.len()),
            ));
        }
        match header {
            None => {
                let n = parse_field(fields[0], "n").map_err(|m| err(lineno, m))?;
                let m = parse_field(fields[1], "m").map_err(|m| err(lineno, m))?;
                header = Some((n, m));
            }
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(err(
                        lineno,
                        format!("header declares {m} edges but more edge lines follow"),
                    ));
                }
                let u = parse_field(fields[0], "").map_err(|m| err(lineno, m))?;
                let v = parse_field(fields[1], "").map_err(|m| err(lineno, m))?;
                if u >= n || v >= n {
                    return Err(err(
                        lineno,
                        format!("edge ({u}, {v}) out of range for n={n}"),
                    ));
                }
                if u == v {
                    return Err(err(lineno, format!("self-loop on vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| err(last_line.max(1), "missing header line".into()))?;
    if edges.len() != m {
        return Err(err(
            last_line.max(1),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edge_list(n, edges)
}

// Accepts "42" and, for header fields, "n=42" / "m=42".
fn parse_field(field: &str, key: &str) -> std::result::Result<usize, String> {
    let digits = if key.is_empty() {
        field
    } else {
        field
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .unwrap_or(field)
    };
    digits
        .parse::<usize>()
        .map_err(|_| format!("invalid integer {field:?}"))
}
