//! The `LR` text format:
//!
//! ```text
//! LR <k> <n>
//! <n space-separated symbols>   (k lines)
//! ```
//!
//! ASCII, LF line endings, no trailing spaces. The final LF is optional on input.

use super::{LatinError, LatinRectangle};

pub fn write_rectangle(l: &LatinRectangle) -> String {
    let mut out = format!("LR {} {}\n", l.rows_count(), l.order());
    for row in l.rows() {
        let line: Vec<String> = row.iter().map(|s| s.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> LatinError {
    LatinError::Parse { line, message: message.into() }
}

fn parse_uint(tok: &str, line: usize) -> Result<usize, LatinError> {
    if tok.is_empty() || tok.len() > 6 || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("expected an unsigned integer, got {tok:?}")));
    }
    tok.parse().map_err(|_| parse_err(line, format!("bad integer {tok:?}")))
}

/// Splits on single spaces, rejecting empty fields (double or trailing spaces).
fn fields(line: &str, lineno: usize) -> Result<Vec<&str>, LatinError> {
    let f: Vec<&str> = line.split(' ').collect();
    if f.iter().any(|t| t.is_empty()) {
        return Err(parse_err(lineno, "fields must be separated by single spaces"));
    }
    Ok(f)
}

pub fn parse_rectangle(text: &str) -> Result<LatinRectangle, LatinError> {
    if !text.is_ascii() {
        return Err(parse_err(1, "input must be ASCII"));
    }
    if text.contains('\r') {
        return Err(parse_err(1, "CR characters are not allowed"));
    }
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or("");
    let h = fields(header, 1)?;
    if h.len() != 3 || h[0] != "LR" {
        return Err(parse_err(1, "expected header \"LR <k> <n>\""));
    }
    let k = parse_uint(h[1], 1)?;
    let n = parse_uint(h[2], 1)?;
    if k == 0 || n == 0 || k > n || n > super::rectangle::MAX_ORDER {
        return Err(LatinError::ShapeInvalid(format!("k = {k}, n = {n}")));
    }
    let mut rows = Vec::with_capacity(k);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if rows.len() == k {
            return Err(parse_err(lineno, "more rows than declared"));
        }
        let toks = fields(line, lineno)?;
        if toks.len() != n {
            return Err(parse_err(lineno, format!("expected {n} symbols, got {}", toks.len())));
        }
        rows.push(toks.iter().map(|t| parse_uint(t, lineno)).collect::<Result<Vec<_>, _>>()?);
    }
    if rows.len() != k {
        return Err(parse_err(rows.len() + 2, format!("expected {k} rows, got {}", rows.len())));
    }
    LatinRectangle::new(&rows)
}
