//! The `leibniz v1` text format.
//!
//! ```text
//! leibniz v1
//! dim 3
//! names e1 e2 e3
//! # [e1,e1] = e2
//! c 1 1 2 1
//! c 2 1 3 1
//! ```
//!
//! Indices are one-based. Unlisted constants are zero.

use std::collections::HashSet;
use std::fmt::Write;

use leibniz_core::rational::{format_rational, parse_rational};
use leibniz_core::AlgebraTable;

pub const HEADER: &str = "leibniz v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// A table together with non-fatal remarks about its text.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub table: AlgebraTable,
    pub warnings: Vec<String>,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn index(token: &str, dim: usize, line: usize) -> Result<usize, ParseError> {
    let i: usize = token.parse().map_err(|_| err(line, format!("bad index `{token}`")))?;
    if i == 0 || i > dim {
        return Err(err(line, format!("index {i} outside 1..={dim}")));
    }
    Ok(i - 1)
}

pub fn parse_table(text: &str) -> Result<Parsed, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, other)) => return Err(err(n, format!("expected `{HEADER}`, found `{other}`"))),
        None => return Err(err(1, format!("missing `{HEADER}` header"))),
    }
    let dim = match lines.next() {
        Some((n, l)) => {
            let mut words = l.split_whitespace();
            match (words.next(), words.next(), words.next()) {
                (Some("dim"), Some(d), None) => d.parse::<usize>().map_err(|_| err(n, format!("bad dimension `{d}`")))?,
                _ => return Err(err(n, "expected `dim <n>`")),
            }
        }
        None => return Err(err(1, "missing `dim` line")),
    };

    let mut table = AlgebraTable::zero(dim);
    let mut names = None;
    let mut seen = HashSet::new();
    let mut warnings = Vec::new();
    for (n, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words[0] {
            "names" => {
                if names.is_some() || !seen.is_empty() {
                    return Err(err(n, "`names` must appear once, before the constants"));
                }
                if words.len() - 1 != dim {
                    return Err(err(n, format!("expected {dim} names, found {}", words.len() - 1)));
                }
                names = Some(words[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>());
            }
            "c" => {
                if words.len() != 5 {
                    return Err(err(n, "expected `c <i> <j> <k> <rational>`"));
                }
                let (i, j, k) = (index(words[1], dim, n)?, index(words[2], dim, n)?, index(words[3], dim, n)?);
                if !seen.insert((i, j, k)) {
                    return Err(err(n, format!("duplicate entry for ({} {} {})", i + 1, j + 1, k + 1)));
                }
                let parsed = parse_rational(words[4]).map_err(|e| err(n, e.to_string()))?;
                if !parsed.canonical {
                    warnings.push(format!(
                        "line {n}: `{}` normalized to `{}`",
                        words[4],
                        format_rational(&parsed.value)
                    ));
                }
                table.set(i, j, k, parsed.value);
            }
            other => return Err(err(n, format!("unknown directive `{other}`"))),
        }
    }
    if let Some(names) = names {
        table = table.with_names(names).expect("name count checked");
    }
    Ok(Parsed { table, warnings })
}

/// Canonical text: entries in lexicographic `(i, j, k)` order, zeros
/// omitted.
pub fn serialize(t: &AlgebraTable) -> String {
    let mut out = format!("{HEADER}\ndim {}\n", t.dim());
    if let Some(names) = t.names() {
        if t.dim() > 0 {
            writeln!(out, "names {}", names.join(" ")).unwrap();
        }
    }
    for (i, j, k, c) in t.nonzero_entries() {
        writeln!(out, "c {} {} {} {}", i + 1, j + 1, k + 1, format_rational(c)).unwrap();
    }
    out
}
