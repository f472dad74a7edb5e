//! Text formats for sequences and colorings.
//!
//! Sequences are one line of 1-based integers separated by whitespace; words
//! over `a, b, c` may be written as letters, with or without spaces.
//! Colorings are a header `k h palette` followed by one `vertex color` line
//! per edge in vertex order, or the JSON object
//! `{"k", "h", "palette", "colors"}`. Blank lines and `#` comments are
//! skipped in both text formats.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sequences::Sequence;
use crate::trees::{EdgeColoring, TreeShape};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let mut lines = content_lines(text);
    let Some((line, body)) = lines.next() else {
        return Err(parse_err(1, "no sequence found"));
    };
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "expected a single line"));
    }
    let letters = body
        .chars()
        .all(|c| matches!(c, 'a' | 'b' | 'c') || c.is_whitespace());
    let symbols: Vec<u32> = if letters {
        body.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c as u32 - 'a' as u32 + 1)
            .collect()
    } else {
        body.split_whitespace()
            .map(|tok| match tok.parse::<u32>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(parse_err(
                    line,
                    format!("invalid symbol '{tok}', expected a positive integer"),
                )),
            })
            .collect::<Result<_>>()?
    };
    Sequence::from_one_based(&symbols)
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

/// Reads a coloring in either the text or the JSON form.
pub fn parse_coloring(text: &str) -> Result<EdgeColoring> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()));
    }
    let mut lines = content_lines(text);
    let Some((hline, header)) = lines.next() else {
        return Err(parse_err(1, "missing header 'k h palette'"));
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_err(
            hline,
            format!("header '{header}' should be 'k h palette'"),
        ));
    }
    let k = parse_usize(hline, fields[0], "k")?;
    let h = parse_usize(hline, fields[1], "h")?;
    let palette = parse_usize(hline, fields[2], "palette")?;
    let palette = u32::try_from(palette).map_err(|_| parse_err(hline, "palette too large"))?;
    let shape = TreeShape::new(k, h).map_err(|e| parse_err(hline, e.to_string()))?;

    let mut colors = Vec::new();
    let mut last_line = hline;
    for (line, body) in lines {
        last_line = line;
        let expected = colors.len() + 2;
        if expected > shape.vertex_count() {
            return Err(parse_err(
                line,
                format!("T_({k},{h}) has only {} edges", shape.edge_count()),
            ));
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(
                line,
                format!("expected 'vertex color', got '{body}'"),
            ));
        }
        let v = parse_usize(line, toks[0], "vertex")?;
        if v != expected {
            return Err(parse_err(
                line,
                format!("expected vertex {expected}, got '{}'", toks[0]),
            ));
        }
        let c = parse_usize(line, toks[1], "color")?;
        if c == 0 || c > palette as usize {
            return Err(parse_err(
                line,
                format!("color '{}' outside 1..={palette}", toks[1]),
            ));
        }
        colors.push(c as u32);
    }
    if colors.len() != shape.edge_count() {
        return Err(parse_err(
            last_line,
            format!(
                "header promises {} edges, found {}",
                shape.edge_count(),
                colors.len()
            ),
        ));
    }
    EdgeColoring::new(shape, palette, &colors)
}

pub fn coloring_to_text(coloring: &EdgeColoring) -> String {
    let shape = coloring.shape();
    let mut out = format!("{} {} {}\n", shape.k(), shape.h(), coloring.palette());
    for v in 2..=shape.vertex_count() {
        let _ = writeln!(out, "{v} {}", coloring.color(v));
    }
    out
}

pub fn coloring_to_json(coloring: &EdgeColoring) -> String {
    serde_json::to_string(coloring).expect("colorings serialize")
}
