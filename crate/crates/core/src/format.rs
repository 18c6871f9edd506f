//! Plain-text formats for instances, assignments, graphs and string lists.
//!
//! Instance files:
//!
//! ```text
//! # comment
//! semantics: nonerasing
//! deletions: 2
//! eq: a b c a b | A B
//! eq: a b | A * *
//! ```
//!
//! Assignment files hold one `BLOCK = symbols` line per block; jokers are
//! written `*1`, `*2`, ... in the order they occur.

use std::fmt::Write as _;

use thiserror::Error;

use crate::assignment::Assignment;
use crate::reductions::{Graph, GraphError};
use crate::symbol::SymbolString;
use crate::system::{is_block_name, ModelError, Semantics, Slot, System, SystemBuilder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: empty target")]
    EmptyTarget { line: usize },
    #[error("line {line}: empty pattern")]
    EmptyPattern { line: usize },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Strips a trailing `#` comment.
fn content(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

/// Whitespace-separated tokens of `s` with their 1-based column, offset by `base`.
fn tokens(s: &str, base: usize) -> impl Iterator<Item = (usize, &str)> {
    s.split_whitespace().map(move |tok| {
        let byte = tok.as_ptr() as usize - s.as_ptr() as usize;
        (base + s[..byte].chars().count() + 1, tok)
    })
}

pub fn parse_instance(text: &str) -> Result<System, ParseError> {
    let mut b = SystemBuilder::new();
    let mut seen_equation = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        let trimmed = body.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - trimmed.len();
        let Some((key, rest)) = trimmed.split_once(':') else {
            return Err(syntax(line, indent + 1, "expected `key: value`"));
        };
        let value_col = indent + key.chars().count() + 1;
        match key.trim() {
            "semantics" if !seen_equation => {
                let semantics = match rest.trim() {
                    "nonerasing" => Semantics::NonErasing,
                    "allowempty" => Semantics::AllowEmpty,
                    other => {
                        return Err(syntax(
                            line,
                            value_col + 1,
                            format!("unknown semantics {other:?}"),
                        ))
                    }
                };
                b.set_semantics(semantics);
            }
            "deletions" if !seen_equation => {
                let d = rest.trim().parse::<usize>().map_err(|_| {
                    syntax(
                        line,
                        value_col + 1,
                        "deletions must be a non-negative integer",
                    )
                })?;
                b.set_deletion_budget(Some(d));
            }
            "semantics" | "deletions" => {
                return Err(syntax(
                    line,
                    indent + 1,
                    "directives must precede equations",
                ));
            }
            "eq" => {
                seen_equation = true;
                let Some((target, pattern)) = rest.split_once('|') else {
                    return Err(syntax(line, value_col + 1, "expected `target | pattern`"));
                };
                let pattern_col = value_col + target.chars().count() + 1;
                let target: Vec<_> = target.split_whitespace().map(|t| b.symbol(t)).collect();
                let mut slots = Vec::new();
                for (col, tok) in tokens(pattern, pattern_col) {
                    if tok == "*" {
                        slots.push(Slot::Joker);
                    } else if is_block_name(tok) {
                        slots.push(Slot::Named(b.block(tok)));
                    } else {
                        return Err(syntax(line, col, format!("bad block name {tok:?}")));
                    }
                }
                b.equation(target, slots).map_err(|e| match e {
                    ModelError::EmptyTarget(_) => ParseError::EmptyTarget { line },
                    _ => ParseError::EmptyPattern { line },
                })?;
            }
            other => {
                return Err(syntax(
                    line,
                    indent + 1,
                    format!("unknown directive {other:?}"),
                ));
            }
        }
    }
    Ok(b.build())
}

pub fn render_instance(system: &System) -> String {
    let mut out = String::new();
    writeln!(out, "semantics: {}", system.semantics()).unwrap();
    if let Some(d) = system.deletion_budget() {
        writeln!(out, "deletions: {d}").unwrap();
    }
    for eq in system.equations() {
        writeln!(
            out,
            "eq: {} | {}",
            system.render_string(&eq.target),
            system.render_pattern(&eq.pattern)
        )
        .unwrap();
    }
    out
}

pub fn parse_assignment(text: &str, system: &System) -> Result<Assignment, ParseError> {
    let mut a = Assignment::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        if body.trim().is_empty() {
            continue;
        }
        let Some((name, value)) = body.split_once('=') else {
            return Err(syntax(line, 1, "expected `BLOCK = symbols`"));
        };
        let block = system
            .resolve_label(name.trim())
            .ok_or_else(|| syntax(line, 1, format!("unknown block {:?}", name.trim())))?;
        let base = name.chars().count() + 1;
        let mut s = SymbolString::new();
        for (col, tok) in tokens(value, base) {
            let sym = system.symbols().lookup(tok).ok_or_else(|| {
                syntax(
                    line,
                    col,
                    format!("symbol {tok:?} does not occur in the instance"),
                )
            })?;
            s.push(sym);
        }
        if a.insert(block, s).is_some() {
            return Err(syntax(
                line,
                1,
                format!("block {:?} assigned twice", name.trim()),
            ));
        }
    }
    Ok(a)
}

/// One `BLOCK = symbols` line per assigned block, in first-occurrence order.
pub fn render_assignment(system: &System, assignment: &Assignment) -> String {
    let mut out = String::new();
    for (block, value) in assignment.ordered(system) {
        let label = system.block_label(block);
        if value.is_empty() {
            writeln!(out, "{label} =").unwrap();
        } else {
            writeln!(out, "{label} = {}", system.render_string(value)).unwrap();
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `n m [colors]`, then `m` lines `s t` with 1-based vertices, then a line of
/// `n` colors when the header names a color count.
pub fn parse_graph(text: &str) -> Result<Graph, GraphParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, content(l).trim()))
        .filter(|(_, l)| !l.is_empty());
    let bad = |line: usize, message: &str| GraphParseError::Syntax {
        line,
        message: message.to_string(),
    };
    let numbers = |line: usize, l: &str| -> Result<Vec<usize>, GraphParseError> {
        l.split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| bad(line, "expected non-negative integers"))
            })
            .collect()
    };

    let (line, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
    let header = numbers(line, header)?;
    let (n, m, colors) = match header[..] {
        [n, m] => (n, m, None),
        [n, m, k] => (n, m, Some(k)),
        _ => return Err(bad(line, "header must be `n m [colors]`")),
    };
    let mut g = Graph::new(n);
    for _ in 0..m {
        let (line, l) = lines
            .next()
            .ok_or_else(|| bad(line, "fewer edge lines than announced"))?;
        match numbers(line, l)?[..] {
            [s, t] if s >= 1 && t >= 1 => g.add_edge(s - 1, t - 1)?,
            _ => return Err(bad(line, "edge must be `s t` with 1-based vertices")),
        }
    }
    if let Some(k) = colors {
        let (line, l) = lines
            .next()
            .ok_or_else(|| bad(line, "missing color line"))?;
        let c = numbers(line, l)?;
        if let Some(&bad_color) = c.iter().find(|&&x| x > k) {
            return Err(bad(
                line,
                &format!("color {bad_color} exceeds the announced {k}"),
            ));
        }
        g.set_coloring(c)?;
    }
    if let Some((line, _)) = lines.next() {
        return Err(bad(line, "unexpected trailing content"));
    }
    Ok(g)
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = String::new();
    match g.coloring() {
        Some(c) => writeln!(
            out,
            "{} {} {}",
            g.n(),
            g.m(),
            c.iter().max().copied().unwrap_or(0)
        )
        .unwrap(),
        None => writeln!(out, "{} {}", g.n(), g.m()).unwrap(),
    }
    for &(s, t) in g.edges() {
        writeln!(out, "{} {}", s + 1, t + 1).unwrap();
    }
    if let Some(c) = g.coloring() {
        let line: Vec<String> = c.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

/// One string per line. A line containing whitespace is split into tokens;
/// otherwise each character is a symbol.
pub fn parse_strings(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| content(l).trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            if l.contains(char::is_whitespace) {
                l.split_whitespace().map(String::from).collect()
            } else {
                l.chars().map(String::from).collect()
            }
        })
        .collect()
}
