//! DIMACS edge files and coloring files.
//!
//! * Graph: `p edge V E` followed by one `e u v` line per edge (1-based,
//!   `u < v`, lexicographic). `c` lines are comments.
//! * Coloring, JSON: `{"k":K,"colors":[c_1,...,c_V]}` with 1-based colors.
//! * Coloring, solution lines: one `s v c` line per vertex, 1-based.

use serde::{Deserialize, Serialize};

use super::{Coloring, Graph};
use crate::error::{Error, Result};

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

fn field(tokens: &[&str], at: usize, line: usize) -> Result<usize> {
    match tokens.get(at) {
        Some(t) => t
            .parse()
            .or_else(|_| parse_err(line, format!("expected an integer, found {t:?}"))),
        None => parse_err(line, "missing field"),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return parse_err(line, "duplicate problem line");
                }
                if !matches!(tokens.get(1).copied(), Some("edge" | "col")) {
                    return parse_err(line, "expected `p edge V E`");
                }
                header = Some((field(&tokens, 2, line)?, field(&tokens, 3, line)?));
            }
            Some("e") => {
                let Some((nv, _)) = header else {
                    return parse_err(line, "edge before problem line");
                };
                let (u, v) = (field(&tokens, 1, line)?, field(&tokens, 2, line)?);
                if u == 0 || v == 0 || u > nv || v > nv {
                    return parse_err(line, format!("vertex out of range 1..={nv}"));
                }
                if u == v {
                    return parse_err(line, format!("loop at vertex {u}"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return parse_err(line, format!("unknown line type {other:?}")),
        }
    }
    let Some((nv, ne)) = header else {
        return parse_err(text.lines().count().max(1), "missing problem line");
    };
    if edges.len() != ne {
        return parse_err(
            text.lines().count(),
            format!("header declares {ne} edges, found {}", edges.len()),
        );
    }
    Graph::from_edges(nv, edges)
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    k: usize,
    colors: Vec<usize>,
}

pub fn write_coloring_json(c: &Coloring) -> String {
    let doc = ColoringJson {
        k: c.k(),
        colors: c.assignment().iter().map(|&x| x + 1).collect(),
    };
    serde_json::to_string(&doc).expect("plain integers always serialize")
}

pub fn write_coloring_lines(c: &Coloring) -> String {
    c.assignment()
        .iter()
        .enumerate()
        .map(|(v, &x)| format!("s {} {}\n", v + 1, x + 1))
        .collect()
}

/// Parses either coloring format, chosen by the first non-blank character.
///
/// For solution lines the color count is `k` when given, otherwise the
/// largest color used.
pub fn parse_coloring(text: &str, k: Option<usize>) -> Result<Coloring> {
    if text.trim_start().starts_with('{') {
        parse_coloring_json(text)
    } else {
        parse_coloring_lines(text, k)
    }
}

fn parse_coloring_json(text: &str) -> Result<Coloring> {
    let doc: ColoringJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    if doc.k == 0 {
        return parse_err(1, "k must be positive");
    }
    if let Some(pos) = doc.colors.iter().position(|&c| c == 0 || c > doc.k) {
        return parse_err(
            1,
            format!("vertex {} has color {} outside 1..={}", pos + 1, doc.colors[pos], doc.k),
        );
    }
    Coloring::new(doc.colors.iter().map(|&c| c - 1).collect(), doc.k)
}

fn parse_coloring_lines(text: &str, k: Option<usize>) -> Result<Coloring> {
    let mut colors: Vec<Option<usize>> = Vec::new();
    let mut last = 0;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        last = line;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => {}
            Some("s") => {
                let (v, c) = (field(&tokens, 1, line)?, field(&tokens, 2, line)?);
                if v == 0 || c == 0 {
                    return parse_err(line, "vertices and colors are 1-based");
                }
                if colors.len() < v {
                    colors.resize(v, None);
                }
                if colors[v - 1].replace(c - 1).is_some() {
                    return parse_err(line, format!("vertex {v} colored twice"));
                }
            }
            Some(other) => return parse_err(line, format!("unknown line type {other:?}")),
        }
    }
    if let Some(missing) = colors.iter().position(Option::is_none) {
        return parse_err(last, format!("vertex {} has no color", missing + 1));
    }
    let assignment: Vec<usize> = colors.into_iter().flatten().collect();
    let used = assignment.iter().max().map_or(0, |&c| c + 1);
    let k = k.unwrap_or(used);
    if used > k {
        return parse_err(last, format!("color {used} exceeds k={k}"));
    }
    Coloring::new(assignment, k.max(1))
}
