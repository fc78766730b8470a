//! Graph files: a line-oriented text format and a JSON equivalent.
//!
//! ```text
//! # comments and blank lines are ignored
//! 4 5
//! 0: 1 2 3
//! 1: 2 0
//! 2: 3 0 1
//! 3: 0 2
//! outer: 0 1 2 3
//! ```
//!
//! The header gives vertex and edge counts, each `v:` line lists the
//! neighbors of `v` counterclockwise, and the optional `outer:` line names
//! the outer face by its boundary walk.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane_graph::{GraphError, PlaneGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The structured form of a graph file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphData {
    pub n: usize,
    pub rotation: Vec<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<Vec<VertexId>>,
}

impl GraphData {
    pub fn from_graph(g: &PlaneGraph) -> Self {
        GraphData { n: g.rotations().len(), rotation: g.rotations().to_vec(), outer: Some(g.outer_face().boundary.clone()) }
    }

    pub fn into_graph(self) -> Result<PlaneGraph, ParseError> {
        if self.rotation.len() != self.n {
            return Err(ParseError::Json(format!("n = {} but {} rotations given", self.n, self.rotation.len())));
        }
        Ok(PlaneGraph::build(self.rotation, self.outer.as_deref())?)
    }
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse_graph(text: &str) -> Result<PlaneGraph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

pub fn parse_graph_json(text: &str) -> Result<PlaneGraph, ParseError> {
    let data: GraphData = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    data.into_graph()
}

fn numbers(s: &str, line: usize) -> Result<Vec<usize>, ParseError> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| ParseError::Syntax { line, msg: format!("expected a vertex number, found `{t}`") }))
        .collect()
}

pub fn parse_graph_text(text: &str) -> Result<PlaneGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(ParseError::Syntax { line: 1, msg: "missing `n m` header".into() })?;
    let nm = numbers(header, hl)?;
    let [n, m] = nm[..] else {
        return Err(ParseError::Syntax { line: hl, msg: "header must be `n m`".into() });
    };
    let mut rotation: Vec<Option<Vec<VertexId>>> = vec![None; n];
    let mut outer = None;
    for (ln, l) in lines {
        let (head, rest) = l
            .split_once(':')
            .ok_or(ParseError::Syntax { line: ln, msg: "expected `v: neighbors` or `outer: walk`".into() })?;
        let nbrs = numbers(rest, ln)?;
        if let Some(&bad) = nbrs.iter().find(|&&u| u >= n) {
            return Err(ParseError::Syntax { line: ln, msg: format!("vertex {bad} out of range 0..{n}") });
        }
        if head.trim() == "outer" {
            if outer.replace(nbrs).is_some() {
                return Err(ParseError::Syntax { line: ln, msg: "repeated `outer:` line".into() });
            }
            continue;
        }
        let v: usize = head
            .trim()
            .parse()
            .map_err(|_| ParseError::Syntax { line: ln, msg: format!("bad vertex label `{}`", head.trim()) })?;
        if v >= n {
            return Err(ParseError::Syntax { line: ln, msg: format!("vertex {v} out of range 0..{n}") });
        }
        if rotation[v].replace(nbrs).is_some() {
            return Err(ParseError::Syntax { line: ln, msg: format!("vertex {v} listed twice") });
        }
    }
    let rotation: Vec<Vec<VertexId>> = rotation.into_iter().map(Option::unwrap_or_default).collect();
    let degree_sum: usize = rotation.iter().map(Vec::len).sum();
    if degree_sum != 2 * m {
        return Err(ParseError::Syntax { line: hl, msg: format!("header says {m} edges, rotations give {}/2", degree_sum) });
    }
    Ok(PlaneGraph::build(rotation, outer.as_deref())?)
}

pub fn graph_to_text(g: &PlaneGraph) -> String {
    let mut out = format!("{} {}\n", g.rotations().len(), g.edge_count());
    for (v, rot) in g.rotations().iter().enumerate() {
        out.push_str(&format!("{v}:"));
        for u in rot {
            out.push_str(&format!(" {u}"));
        }
        out.push('\n');
    }
    out.push_str("outer:");
    for v in &g.outer_face().boundary {
        out.push_str(&format!(" {v}"));
    }
    out.push('\n');
    out
}

pub fn graph_to_json(g: &PlaneGraph) -> String {
    serde_json::to_string(&GraphData::from_graph(g)).expect("graph data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::hex_patch;
    use crate::reducibility::{build_gadget, GadgetId};

    const SQUARE_WITH_DIAGONAL: &str = "\
# a 4-cycle with one chord
4 5
0: 1 2 3
1: 2 0
2: 3 0 1
3: 0 2
outer: 0 1 2 3
";

    #[test]
    fn parses_the_text_format() {
        let g = parse_graph(SQUARE_WITH_DIAGONAL).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.face_count(), 3);
        assert_eq!(g.outer_face().degree(), 4);
        assert!(!g.outer_defaulted());
    }

    #[test]
    fn outer_line_is_optional() {
        let text: String = SQUARE_WITH_DIAGONAL.lines().filter(|l| !l.starts_with("outer")).collect::<Vec<_>>().join("\n");
        let g = parse_graph(&text).unwrap();
        assert!(g.outer_defaulted());
        assert_eq!(g.outer_face().degree(), 4);
    }

    #[test]
    fn both_formats_round_trip() {
        let mut graphs = vec![hex_patch(2, 3), parse_graph(SQUARE_WITH_DIAGONAL).unwrap()];
        graphs.extend(GadgetId::all().into_iter().map(|id| build_gadget(id).unwrap().host));
        for g in graphs {
            assert_eq!(parse_graph(&graph_to_text(&g)).unwrap(), g);
            assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g);
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_graph("3 3\n0: 1 2\n1: 2 x\n").unwrap_err();
        assert_eq!(e, ParseError::Syntax { line: 3, msg: "expected a vertex number, found `x`".into() });
        assert!(matches!(parse_graph("3 2\n0: 1 2\n1: 2 0\n2: 0 1\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse_graph("2 1\n0: 5\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(
            parse_graph("3 2\n0: 1\n1: 0 2\n2: 0\n"),
            Err(ParseError::Graph(GraphError::NonSymmetric(..)))
        ));
        assert!(matches!(parse_graph("{\"n\": 2}"), Err(ParseError::Json(_))));
    }
}
