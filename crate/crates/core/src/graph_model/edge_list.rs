//! Plain-text edge lists: a `N M` header line followed by `M` lines `u v`,
//! vertices 1-indexed.

use std::fmt::Write as _;

use super::SimpleGraph;
use crate::error::{Error, Result};

pub fn format(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = String::with_capacity(16 + edges.len() * 12);
    let _ = writeln!(out, "{} {}", n, edges.len());
    for &(u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn format_graph(g: &SimpleGraph) -> String {
    format(g.n(), g.edges())
}

/// Parses the header and edge lines. Blank lines and lines starting with
/// `#` are ignored.
pub fn parse(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("missing `N M` header".into()))?;
    let (n, m) = pair(header, 1)?;
    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        edges.push(pair(line, idx + 1)?);
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok((n, edges))
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let (n, edges) = parse(text)?;
    SimpleGraph::new(n, edges)
}

fn pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse(format!("line {lineno}: expected two integers, got `{line}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = SimpleGraph::new(5, [(1, 2), (4, 5), (2, 3)]).unwrap();
        let text = format_graph(&g);
        assert_eq!(text, "5 3\n1 2\n2 3\n4 5\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn errors() {
        assert!(parse("").is_err());
        assert!(parse("3 2\n1 2\n").is_err());
        assert!(parse("3 1\n1 x\n").is_err());
        assert!(parse("3 1\n1 2 3\n").is_err());
        assert!(parse_graph("3 1\n1 1\n").is_err());
        assert_eq!(parse("# comment\n3 1\n\n1 2\n").unwrap(), (3, vec![(1, 2)]));
    }
}
