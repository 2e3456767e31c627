//! Text form of nonexistence certificates.
//!
//! ```text
//! parity L
//! witness v1 v2 ...
//! hub                      (optional shape, followed by lines `a ...`, `b ...`, `c ...`)
//! blowup                   (optional shape, followed by lines `part ...`)
//! ```
//!
//! ```text
//! count L
//! components e1 e2 ...
//! ```
//!
//! Vertex sets are sized by the graph they are checked against.

use std::fmt::Write as _;

use cycledecomp::oracle::{CountCertificate, ParityCertificate, ParityShape};
use cycledecomp::VertexSet;

pub enum Nonexistence {
    Parity(ParityCertificate),
    Count(CountCertificate),
}

fn ids(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn line(key: &str, rest: &str) -> String {
    if rest.is_empty() {
        format!("{key}\n")
    } else {
        format!("{key} {rest}\n")
    }
}

pub fn write_parity(c: &ParityCertificate) -> String {
    let mut s = format!("parity {}\n", c.cycle_length);
    s += &line("witness", &ids(&c.witness));
    match &c.shape {
        Some(ParityShape::HubAndCliques { a, b, c }) => {
            s += "hub\n";
            s += &line("a", &ids(a));
            s += &line("b", &ids(b));
            s += &line("c", &ids(c));
        }
        Some(ParityShape::CycleBlowup { parts }) => {
            s += "blowup\n";
            for p in parts {
                s += &line("part", &ids(p));
            }
        }
        None => {}
    }
    s
}

pub fn write_count(c: &CountCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "count {}", c.cycle_length);
    let counts: Vec<String> = c.component_edge_counts.iter().map(|e| e.to_string()).collect();
    s += &line("components", &counts.join(" "));
    s
}

/// True when the text starts like a nonexistence certificate rather than a cycle list.
pub fn is_nonexistence(text: &str) -> bool {
    let first = text.split_whitespace().next();
    matches!(first, Some("parity" | "count"))
}

fn numbers(tokens: &[&str]) -> Result<Vec<usize>, String> {
    tokens
        .iter()
        .map(|t| t.parse::<usize>().map_err(|_| format!("bad integer `{t}`")))
        .collect()
}

fn set(n: usize, tokens: &[&str]) -> Result<VertexSet, String> {
    let vs = numbers(tokens)?;
    if let Some(&v) = vs.iter().find(|&&v| v >= n) {
        return Err(format!("vertex {v} out of range for {n} vertices"));
    }
    Ok(VertexSet::from_iter(n, vs))
}

pub fn parse(text: &str, n: usize) -> Result<Nonexistence, String> {
    let lines: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .filter(|l| !l.is_empty())
        .collect();
    let Some(header) = lines.first() else {
        return Err("empty certificate".into());
    };
    let len = match header.as_slice() {
        [_, l] => l.parse::<usize>().map_err(|_| format!("bad cycle length `{l}`"))?,
        _ => return Err("header must be `parity L` or `count L`".into()),
    };
    match header[0] {
        "count" => {
            let [row] = &lines[1..] else {
                return Err("count certificate needs exactly one `components` line".into());
            };
            if row[0] != "components" {
                return Err(format!("expected `components`, found `{}`", row[0]));
            }
            Ok(Nonexistence::Count(CountCertificate {
                cycle_length: len,
                component_edge_counts: numbers(&row[1..])?,
            }))
        }
        "parity" => {
            let witness = match lines.get(1) {
                Some(row) if row[0] == "witness" => set(n, &row[1..])?,
                _ => return Err("second line must be `witness ...`".into()),
            };
            let rest = &lines[2..];
            let shape = match rest.first().map(|r| r[0]) {
                None => None,
                Some("hub") => {
                    let keyed = |i: usize, key: &str| -> Result<VertexSet, String> {
                        match rest.get(i) {
                            Some(r) if r[0] == key => set(n, &r[1..]),
                            _ => Err(format!("hub shape needs a `{key}` line")),
                        }
                    };
                    if rest.len() != 4 {
                        return Err("hub shape needs exactly the lines `a`, `b`, `c`".into());
                    }
                    Some(ParityShape::HubAndCliques {
                        a: keyed(1, "a")?,
                        b: keyed(2, "b")?,
                        c: keyed(3, "c")?,
                    })
                }
                Some("blowup") => {
                    let parts = rest[1..]
                        .iter()
                        .map(|r| match r[0] {
                            "part" => set(n, &r[1..]),
                            other => Err(format!("expected `part`, found `{other}`")),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(ParityShape::CycleBlowup { parts })
                }
                Some(other) => return Err(format!("unknown shape `{other}`")),
            };
            Ok(Nonexistence::Parity(ParityCertificate {
                cycle_length: len,
                witness,
                shape,
            }))
        }
        other => Err(format!("unknown certificate kind `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_round_trip() {
        let out = cycledecomp::generators::gen_c4_extremal(1).unwrap();
        let cert = out.parity.unwrap();
        let text = write_parity(&cert);
        let Nonexistence::Parity(back) = parse(&text, out.graph.n()).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(back, cert);
    }

    #[test]
    fn count_round_trip() {
        let c = CountCertificate {
            cycle_length: 4,
            component_edge_counts: vec![10, 10],
        };
        let Nonexistence::Count(back) = parse(&write_count(&c), 10).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_out_of_range_vertices() {
        assert!(parse("parity 4\nwitness 0 12\n", 10).is_err());
    }
}
