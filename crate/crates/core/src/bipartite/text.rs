//! The `BGF` graph text format:
//!
//! ```text
//! BGF <n> <k>
//! <n characters '0'/'1'>   (n lines; line i is the adjacency of c_i)
//! ```
//!
//! `<k>` is the common degree, or `-` for an irregular graph.

use super::graph::MAX_SIDE;
use super::{BipartiteGraph, GraphError};

pub fn write_graph(g: &BipartiteGraph) -> String {
    let k = g.degree().map_or_else(|| "-".to_string(), |k| k.to_string());
    let mut out = format!("BGF {} {}\n", g.n(), k);
    for &r in g.rows() {
        for j in 0..g.n() {
            out.push(if r >> j & 1 == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

fn small_uint(tok: &str, line: usize) -> Result<usize, GraphError> {
    if tok.is_empty() || tok.len() > 2 || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(line, format!("bad integer {tok:?}")));
    }
    Ok(tok.parse().expect("validated digits"))
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph, GraphError> {
    if !text.is_ascii() || text.contains('\r') {
        return Err(err(1, "input must be ASCII with LF line endings"));
    }
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let header: Vec<&str> = lines.next().unwrap_or("").split(' ').collect();
    if header.len() != 3 || header[0] != "BGF" {
        return Err(err(1, "expected header \"BGF <n> <k>\""));
    }
    let n = small_uint(header[1], 1)?;
    if n == 0 || n > MAX_SIDE {
        return Err(err(1, format!("side size {n} outside 1..={MAX_SIDE}")));
    }
    let k = if header[2] == "-" { None } else { Some(small_uint(header[2], 1)?) };
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if rows.len() == n {
            return Err(err(lineno, "more rows than declared"));
        }
        if line.len() != n || !line.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(err(lineno, format!("expected {n} characters of 0/1")));
        }
        rows.push(line.bytes().enumerate().fold(0u32, |acc, (j, b)| acc | ((b - b'0') as u32) << j));
    }
    if rows.len() != n {
        return Err(err(rows.len() + 2, format!("expected {n} rows, got {}", rows.len())));
    }
    let g = BipartiteGraph::from_rows(n, rows)?;
    if g.degree() != k {
        return Err(err(1, format!("declared degree {:?} but graph has {:?}", k, g.degree())));
    }
    Ok(g)
}
