//! Plain-text graph format.
//!
//! ```text
//! # comment
//! n m weighted|unweighted
//! u v [w]
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{Edge, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line `n m weighted|unweighted`")]
    MissingHeader,
    #[error("header declares {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn field<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

impl Graph {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let mut toks = header.split_whitespace();
        let n: usize = field(toks.next(), hline, "vertex count")?;
        let m: usize = field(toks.next(), hline, "edge count")?;
        let weighted = match toks.next() {
            Some("weighted") => true,
            Some("unweighted") => false,
            Some(other) => return Err(syntax(hline, format!("unknown flag `{other}`"))),
            None => return Err(syntax(hline, "missing weighted/unweighted flag")),
        };
        if toks.next().is_some() {
            return Err(syntax(hline, "trailing tokens in header"));
        }

        let mut edges = Vec::with_capacity(m);
        let mut edge_lines = Vec::with_capacity(m);
        for (line, body) in lines {
            let mut toks = body.split_whitespace();
            let u: usize = field(toks.next(), line, "endpoint")?;
            let v: usize = field(toks.next(), line, "endpoint")?;
            let w: f64 = if weighted {
                field(toks.next(), line, "weight")?
            } else {
                1.0
            };
            if toks.next().is_some() {
                return Err(syntax(line, "trailing tokens in edge line"));
            }
            edges.push(Edge { u, v, w });
            edge_lines.push(line);
        }
        if edges.len() != m {
            return Err(ParseError::EdgeCount {
                expected: m,
                found: edges.len(),
            });
        }

        // Validate edge by edge so errors carry the offending line.
        let mut keys = std::collections::HashSet::with_capacity(m);
        for (e, &line) in edges.iter().zip(&edge_lines) {
            if let Err(source) = Graph::new(n, vec![*e]) {
                return Err(ParseError::Graph { line, source });
            }
            let (a, b) = e.key();
            if !keys.insert((a, b)) {
                return Err(ParseError::Graph {
                    line,
                    source: GraphError::ParallelEdge(a, b),
                });
            }
        }
        Graph::new(n, edges).map_err(|source| ParseError::Graph {
            line: hline,
            source,
        })
    }

    /// Serializes in the text format; weights use shortest round-trip formatting.
    pub fn to_text(&self) -> String {
        let weighted = !self.is_unweighted();
        let mut out = String::new();
        let flag = if weighted { "weighted" } else { "unweighted" };
        let _ = writeln!(out, "{} {} {}", self.n(), self.m(), flag);
        for e in self.edges() {
            if weighted {
                let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
            } else {
                let _ = writeln!(out, "{} {}", e.u, e.v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g =
            Graph::parse("# triangle\n3 3 weighted\n0 1 1\n1 2 1 # inline\n\n0 2 2.5\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g.edge(2).w, 2.5);
    }

    #[test]
    fn unweighted_round_trip() {
        let g = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let text = g.to_text();
        assert!(text.starts_with("4 3 unweighted\n"));
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = Graph::parse("2 1 weighted\n0 x 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }), "{err}");

        let err = Graph::parse("3 2 unweighted\n0 1\n# c\n2 2\n").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Graph {
                    line: 4,
                    source: GraphError::SelfLoop(2)
                }
            ),
            "{err}"
        );

        assert_eq!(
            Graph::parse("3 2 unweighted\n0 1\n").unwrap_err(),
            ParseError::EdgeCount {
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            Graph::parse("# only\n").unwrap_err(),
            ParseError::MissingHeader
        );
    }

    #[test]
    fn parallel_edges_rejected() {
        assert!(matches!(
            Graph::parse("2 2 unweighted\n0 1\n1 0\n"),
            Err(ParseError::Graph {
                line: 3,
                source: GraphError::ParallelEdge(0, 1),
            })
        ));
    }
}
