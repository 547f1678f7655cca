//! The `.gcg` text format.
//!
//! ```text
//! # optional comment lines
//! n k
//! c(0,1) c(0,2) ... c(0,n-1)
//! c(1,2) ... c(1,n-1)
//! ...
//! c(n-2,n-1)
//! ```
//!
//! Blank lines are ignored. Encoding always emits the header and rows with
//! single spaces and a trailing LF, no comments.

use thiserror::Error;

use crate::graph::{ColorId, ColoredCompleteGraph, GraphBuilder, GraphError, MAX_COLORS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcgError {
    #[error("line {line}: not valid UTF-8")]
    Encoding { line: usize },
    #[error("line {line}: malformed header, expected `n k` with n >= 1 and 1 <= k <= {MAX_COLORS}")]
    Header { line: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: `{token}` is not a color")]
    Token { line: usize, token: String },
    #[error("line {line}: color {color} out of range 1..={k}")]
    ColorOutOfRange { line: usize, color: usize, k: usize },
    #[error("line {line}: row for vertex {row} has {found} colors, expected {expected}")]
    RowLength {
        line: usize,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} data rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("line {line}: data beyond the last row would assign an edge twice")]
    DuplicateAssignment { line: usize },
}

pub fn decode_gcg(text: &[u8]) -> Result<ColoredCompleteGraph, GcgError> {
    let mut header: Option<(usize, usize)> = None;
    let mut builder: Option<GraphBuilder> = None;
    let mut row = 0usize;
    for (idx, raw) in text.split(|&b| b == b'\n').enumerate() {
        let line = idx + 1;
        let s = std::str::from_utf8(raw).map_err(|_| GcgError::Encoding { line })?;
        let s = s.strip_suffix('\r').unwrap_or(s);
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((n, k)) = header else {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                [n, k] => n.parse::<usize>().ok().zip(k.parse::<usize>().ok()),
                _ => None,
            };
            let (n, k) = parsed
                .filter(|&(n, k)| n >= 1 && (1..=MAX_COLORS).contains(&k))
                .ok_or(GcgError::Header { line })?;
            header = Some((n, k));
            builder = Some(GraphBuilder::new(n, k).map_err(|_| GcgError::Header { line })?);
            continue;
        };
        if row + 1 >= n {
            return Err(GcgError::DuplicateAssignment { line });
        }
        let b = builder.as_mut().expect("builder exists once header is read");
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let expected = n - 1 - row;
        if tokens.len() != expected {
            return Err(GcgError::RowLength {
                line,
                row,
                expected,
                found: tokens.len(),
            });
        }
        for (offset, tok) in tokens.iter().enumerate() {
            let value: usize = tok.parse().map_err(|_| GcgError::Token {
                line,
                token: tok.to_string(),
            })?;
            let c = ColorId::new(value)
                .filter(|c| c.get() <= k)
                .ok_or(GcgError::ColorOutOfRange {
                    line,
                    color: value,
                    k,
                })?;
            b.assign(row, row + 1 + offset, c).map_err(|e| match e {
                GraphError::DuplicateAssignment(..) => GcgError::DuplicateAssignment { line },
                _ => GcgError::ColorOutOfRange {
                    line,
                    color: value,
                    k,
                },
            })?;
        }
        row += 1;
    }
    let (n, _) = header.ok_or(GcgError::MissingHeader)?;
    if row + 1 < n {
        return Err(GcgError::MissingRows {
            expected: n - 1,
            found: row,
        });
    }
    Ok(builder
        .expect("header seen")
        .build()
        .expect("all rows present means all pairs colored"))
}

pub fn encode_gcg(g: &ColoredCompleteGraph) -> Vec<u8> {
    let mut out = format!("{} {}\n", g.n(), g.k());
    for u in 0..g.n().saturating_sub(1) {
        let row: Vec<String> = (u + 1..g.n()).map(|v| g.color(u, v).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

/// Canonical encoding preceded by `# ` comment lines.
pub fn encode_gcg_with_comments(g: &ColoredCompleteGraph, comments: &[String]) -> Vec<u8> {
    let mut out = Vec::new();
    for c in comments {
        for line in c.lines() {
            out.extend_from_slice(b"# ");
            out.extend_from_slice(line.as_bytes());
            out.push(b'\n');
        }
    }
    out.extend(encode_gcg(g));
    out
}
