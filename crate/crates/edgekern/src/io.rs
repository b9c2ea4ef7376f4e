//! Plain-text graph files.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v      (m lines, 0 <= u, v < n, u != v, no duplicates)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::Path;

use edgekern_core::{EdgeSet, Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line \"n m\"")]
    MissingHeader,
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn two_numbers(line: usize, text: &str) -> Result<(usize, usize), FormatError> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize, FormatError> {
        let tok = it.next().ok_or_else(|| syntax(line, "expected two integers"))?;
        tok.parse()
            .map_err(|_| syntax(line, format!("not a non-negative integer: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if let Some(extra) = it.next() {
        return Err(syntax(line, format!("unexpected token {extra:?}")));
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let (n, m) = two_numbers(hline, header)?;
    let mut g = Graph::new(n);
    let mut found = 0;
    for (line, text) in lines {
        let (u, v) = two_numbers(line, text)?;
        found += 1;
        if found > m {
            continue;
        }
        let err = |source| FormatError::Graph { line, source };
        if u >= n || v >= n {
            return Err(err(GraphError::VertexOutOfRange { u, v, n }));
        }
        if u == v {
            return Err(err(GraphError::SelfLoop { vertex: u }));
        }
        if !g.add_edge(u, v).map_err(err)? {
            return Err(err(GraphError::DuplicateEdge {
                u: u.min(v),
                v: u.max(v),
            }));
        }
    }
    if found != m {
        return Err(FormatError::EdgeCount { expected: m, found });
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    write_graph_with_comments(g, &[])
}

pub fn write_graph_with_comments(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// One `u v` line per edge, preceded by a comment.
pub fn write_edge_list(edges: &EdgeSet, comment: &str) -> String {
    let mut out = format!("# {comment}\n");
    for (u, v) in edges.iter() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads a graph from `path`, or from standard input when `path` is `-`.
pub fn read_graph(path: &str) -> Result<Graph, ReadError> {
    read_graph_and_seed(path).map(|(g, _)| g)
}

/// Like `read_graph`, also returning the value of a `# seed = N` comment as
/// written by the generator.
pub fn read_graph_and_seed(path: &str) -> Result<(Graph, Option<u64>), ReadError> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|source| ReadError::Io {
            path: "<stdin>".into(),
            source,
        })?;
        s
    } else {
        fs::read_to_string(Path::new(path)).map_err(|source| ReadError::Io {
            path: path.into(),
            source,
        })?
    };
    let g = parse_graph(&text).map_err(|source| ReadError::Format {
        path: path.into(),
        source,
    })?;
    Ok((g, seed_comment(&text)))
}

/// The first `# seed = N` comment of a graph file.
pub fn seed_comment(text: &str) -> Option<u64> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .filter_map(|c| c.trim().strip_prefix("seed"))
        .filter_map(|c| c.trim().strip_prefix('='))
        .find_map(|v| v.trim().parse().ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let p3 = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(p3, Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap());
        assert_eq!(parse_graph("1 0\n").unwrap(), Graph::new(1));
        let g = parse_graph("# comment\n\n2 1\n# inside\n1 0\n").unwrap();
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_graph("2 1\n0 0\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: self-loop at vertex 0");
        let e = parse_graph("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(e.to_string().starts_with("line 3: duplicate edge"));
        let e = parse_graph("3 1\n0 3\n").unwrap_err();
        assert!(e.to_string().starts_with("line 2: pair (0, 3)"));
        let e = parse_graph("3\n").unwrap_err();
        assert_eq!(e.to_string(), "line 1: expected two integers");
        let e = parse_graph("3 x\n").unwrap_err();
        assert!(e.to_string().starts_with("line 1: not a non-negative integer"));
        assert!(matches!(
            parse_graph("3 2\n0 1\n"),
            Err(FormatError::EdgeCount { expected: 2, found: 1 })
        ));
        assert!(matches!(
            parse_graph("3 0\n0 1\n"),
            Err(FormatError::EdgeCount { expected: 0, found: 1 })
        ));
        assert!(matches!(parse_graph("# only\n"), Err(FormatError::MissingHeader)));
    }

    #[test]
    fn round_trips() {
        let g = Graph::from_edges(5, &[(0, 4), (1, 2), (3, 4)]).unwrap();
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let text = write_graph_with_comments(&g, &["k = 2".into()]);
        assert!(text.starts_with("# k = 2\n5 3\n"));
    }

    #[test]
    fn finds_seed_comments() {
        assert_eq!(seed_comment("# problem = tp-add\n# seed = 42\n1 0\n"), Some(42));
        assert_eq!(seed_comment("#seed=7\n1 0\n"), Some(7));
        assert_eq!(seed_comment("1 0\n# seed = x\n"), None);
    }
}
