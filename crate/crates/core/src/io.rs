//! Text formats for graphs and cycle certificates.
//!
//! Edge list: a header `n m` followed by `m` lines `u v` with `u < v`.
//! Certificate: a header `L c` followed by `c` lines of space-separated vertex ids.

use std::fmt::Write as _;

use thiserror::Error;

use crate::decomposition::CycleDecomposition;
use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("header promised {expected} records, found {found}")]
    Count { expected: usize, found: usize },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| syntax(line, format!("bad integer `{t}`"))))
        .collect()
}

/// Non-empty lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let h = numbers(hl, header)?;
    let [n, m] = h[..] else {
        return Err(syntax(hl, "header must be `n m`"));
    };
    if n > MAX_VERTICES {
        return Err(ParseError::Graph {
            line: hl,
            source: GraphError::TooLarge(n),
        });
    }
    let mut g = Graph::new(n);
    let mut found = 0;
    for (ln, l) in lines {
        let e = numbers(ln, l)?;
        let [u, v] = e[..] else {
            return Err(syntax(ln, "edge line must be `u v`"));
        };
        g.try_add_edge(u, v)
            .map_err(|source| ParseError::Graph { line: ln, source })?;
        found += 1;
    }
    if found != m {
        return Err(ParseError::Count { expected: m, found });
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = String::with_capacity(16 + 12 * g.edge_count());
    let _ = writeln!(s, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_certificate(text: &str) -> Result<CycleDecomposition, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let h = numbers(hl, header)?;
    let [len, count] = h[..] else {
        return Err(syntax(hl, "header must be `L c`"));
    };
    let mut cycles = Vec::with_capacity(count);
    for (ln, l) in lines {
        let c = numbers(ln, l)?;
        if c.len() != len {
            return Err(syntax(ln, format!("cycle has {} vertices, expected {len}", c.len())));
        }
        cycles.push(c);
    }
    if cycles.len() != count {
        return Err(ParseError::Count {
            expected: count,
            found: cycles.len(),
        });
    }
    Ok(CycleDecomposition {
        cycle_length: len,
        cycles,
    })
}

pub fn write_certificate(d: &CycleDecomposition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", d.cycle_length, d.cycles.len());
    for c in &d.cycles {
        let line: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip_is_exact() {
        let text = "4 3\n0 1\n1 2\n2 3\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(write_edge_list(&g), text);
    }

    #[test]
    fn certificate_round_trip_is_exact() {
        let text = "4 2\n0 1 2 3\n4 5 6 7\n";
        let d = parse_certificate(text).unwrap();
        assert_eq!(write_certificate(&d), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            parse_edge_list("3 1\n0 0\n"),
            Err(ParseError::Graph { line: 2, source: GraphError::SelfLoop(0) })
        ));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(ParseError::Count { .. })));
        assert!(matches!(parse_edge_list("3 x\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_certificate("4 1\n0 1 2\n"), Err(ParseError::Syntax { line: 2, .. })));
    }
}
