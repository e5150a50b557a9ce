//! Graph ingestion: DIMACS edge format and plain edge lists, plus the
//! canonical serialization used for round-tripping.

use crate::graph::{Graph, GraphError};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphFormat {
    DimacsEdge,
    EdgeList,
}

/// A parsed graph plus the original vertex labels (dense internal ids are
/// an implementation detail; human-facing output uses labels).
#[derive(Clone, Debug)]
pub struct GraphDocument {
    pub graph: Graph,
    pub labels: Vec<String>,
    pub format: GraphFormat,
}

impl GraphDocument {
    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed problem header (expected 'p edge <n> <m>')")]
    MalformedHeader { line: usize },
    #[error("line {line}: duplicate problem header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: edge before problem header")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed edge (expected 'e <u> <v>')")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {id} out of range 1..={n}")]
    VertexOutOfRange { line: usize, id: i64, n: u32 },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("line {line}: self-loop")]
    SelfLoop { line: usize },
    #[error("line {line}: unrecognized line")]
    UnknownLine { line: usize },
    #[error("header declared {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: u32, found: u32 },
    #[error("line {line}: expected two whitespace-separated labels")]
    MalformedPair { line: usize },
    #[error("input contains no graph")]
    EmptyInput,
}

/// Parse either DIMACS edge format (detected by a leading 'c' or 'p'
/// line) or a whitespace edge list with arbitrary labels.
pub fn parse_graph(text: &str) -> Result<GraphDocument, ParseError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or(ParseError::EmptyInput)?;
    if first.starts_with('c') || first.starts_with('p') {
        parse_dimacs(text)
    } else {
        parse_edge_list(text)
    }
}

fn parse_dimacs(text: &str) -> Result<GraphDocument, ParseError> {
    let mut header: Option<(u32, u32)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen: HashMap<(u32, u32), usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        if let Some(rest) = l.strip_prefix('p') {
            if header.is_some() {
                return Err(ParseError::DuplicateHeader { line });
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "edge" {
                return Err(ParseError::MalformedHeader { line });
            }
            let n: u32 = toks[1].parse().map_err(|_| ParseError::MalformedHeader { line })?;
            let m: u32 = toks[2].parse().map_err(|_| ParseError::MalformedHeader { line })?;
            header = Some((n, m));
            continue;
        }
        if let Some(rest) = l.strip_prefix('e') {
            let Some((n, _)) = header else {
                return Err(ParseError::EdgeBeforeHeader { line });
            };
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(ParseError::MalformedEdge { line });
            }
            let u: i64 = toks[0].parse().map_err(|_| ParseError::MalformedEdge { line })?;
            let v: i64 = toks[1].parse().map_err(|_| ParseError::MalformedEdge { line })?;
            for id in [u, v] {
                if id < 1 || id > n as i64 {
                    return Err(ParseError::VertexOutOfRange { line, id, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line });
            }
            let (a, b) = ((u - 1) as u32, (v - 1) as u32);
            let key = (a.min(b), a.max(b));
            if seen.insert(key, line).is_some() {
                return Err(ParseError::DuplicateEdge { line });
            }
            edges.push(key);
            continue;
        }
        return Err(ParseError::UnknownLine { line });
    }

    let (n, m) = header.ok_or(ParseError::EmptyInput)?;
    if edges.len() as u32 != m {
        return Err(ParseError::EdgeCountMismatch { declared: m, found: edges.len() as u32 });
    }
    let graph = Graph::from_edges(n, &edges).map_err(graph_bug)?;
    Ok(GraphDocument {
        graph,
        labels: (1..=n).map(|i| i.to_string()).collect(),
        format: GraphFormat::DimacsEdge,
    })
}

fn parse_edge_list(text: &str) -> Result<GraphDocument, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen: HashMap<(u32, u32), usize> = HashMap::new();

    let intern = |name: &str, labels: &mut Vec<String>, index: &mut HashMap<String, u32>| {
        *index.entry(name.to_string()).or_insert_with(|| {
            labels.push(name.to_string());
            labels.len() as u32 - 1
        })
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(ParseError::MalformedPair { line });
        }
        if toks[0] == toks[1] {
            return Err(ParseError::SelfLoop { line });
        }
        let a = intern(toks[0], &mut labels, &mut index);
        let b = intern(toks[1], &mut labels, &mut index);
        let key = (a.min(b), a.max(b));
        if seen.insert(key, line).is_some() {
            return Err(ParseError::DuplicateEdge { line });
        }
        edges.push(key);
    }
    if labels.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let graph = Graph::from_edges(labels.len() as u32, &edges).map_err(graph_bug);
    Ok(GraphDocument {
        graph: graph?,
        labels,
        format: GraphFormat::EdgeList,
    })
}

fn graph_bug(e: GraphError) -> ParseError {
    // Range, loop and duplicate problems are rejected with line numbers
    // before construction; anything surviving is a bug.
    unreachable!("validated edges rejected by graph construction: {e}")
}

/// Canonical DIMACS serialization: 1-based dense ids, edges sorted.
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_triangle() {
        let doc = parse_graph("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(doc.format, GraphFormat::DimacsEdge);
        assert_eq!(doc.graph.vertex_count(), 3);
        assert_eq!(doc.graph.edge_count(), 3);
        assert!(doc.graph.has_edge(0, 2));
        assert_eq!(doc.label(0), "1");
    }

    #[test]
    fn edge_list_keeps_labels() {
        let doc = parse_graph("a b\nb c\n").unwrap();
        assert_eq!(doc.format, GraphFormat::EdgeList);
        assert_eq!(doc.labels, vec!["a", "b", "c"]);
        assert_eq!(doc.graph.edge_count(), 2);
        assert!(doc.graph.has_edge(0, 1));
        assert!(doc.graph.has_edge(1, 2));
        assert!(!doc.graph.has_edge(0, 2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_graph("p edge 3 1\ne 1 4\n").unwrap_err(),
            ParseError::VertexOutOfRange { line: 2, id: 4, n: 3 }
        );
        assert_eq!(
            parse_graph("p edge 3 2\ne 1 2\ne 2 1\n").unwrap_err(),
            ParseError::DuplicateEdge { line: 3 }
        );
        assert_eq!(
            parse_graph("p edge 3 1\ne 2 2\n").unwrap_err(),
            ParseError::SelfLoop { line: 2 }
        );
        assert_eq!(
            parse_graph("p edge 3 5\ne 1 2\n").unwrap_err(),
            ParseError::EdgeCountMismatch { declared: 5, found: 1 }
        );
        assert_eq!(
            parse_graph("a b\nc\n").unwrap_err(),
            ParseError::MalformedPair { line: 2 }
        );
        assert_eq!(
            parse_graph("p edge x 3\n").unwrap_err(),
            ParseError::MalformedHeader { line: 1 }
        );
        assert_eq!(parse_graph("  \n\n").unwrap_err(), ParseError::EmptyInput);
    }

    #[test]
    fn dimacs_roundtrip_identical() {
        let text = "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n";
        let doc = parse_graph(text).unwrap();
        let out = to_dimacs(&doc.graph);
        let doc2 = parse_graph(&out).unwrap();
        assert_eq!(doc.graph.edges(), doc2.graph.edges());
        assert_eq!(doc.graph.vertex_count(), doc2.graph.vertex_count());
        assert_eq!(out, to_dimacs(&doc2.graph));
    }
}
