//! Graph file formats: a JSON document, standard graph6, and graph6 with a
//! `;L=<bits>` suffix marking looped vertices.

use std::fmt;
use std::str::FromStr;

use isomat_core::graph::{GraphError, LoopedSimpleGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Graph6,
    G6Loops,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "graph6" => Ok(Format::Graph6),
            "g6loops" => Ok(Format::G6Loops),
            other => Err(format!("unknown format {other:?}; expected json, graph6 or g6loops")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Graph6 => "graph6",
            Format::G6Loops => "g6loops",
        })
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("graph6 error at column {column}: {message}")]
    Graph6 { column: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn g6_error(column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Graph6 {
        column,
        message: message.into(),
    }
}

/// `{"n": 3, "edges": [[0, 1], [1, 2]], "loops": [], "name": "P3"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub loops: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GraphDocument {
    pub fn from_graph(g: &LoopedSimpleGraph) -> Self {
        Self {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            loops: g.looped_vertices(),
            name: None,
        }
    }

    /// Rejects out-of-range vertices, self edges, and duplicate edges or loops.
    pub fn to_graph(&self) -> Result<LoopedSimpleGraph, FormatError> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let mut loops = self.loops.clone();
        loops.sort_unstable();
        if let Some(w) = loops.windows(2).find(|w| w[0] == w[1]) {
            return Err(FormatError::Json {
                line: 0,
                column: 0,
                message: format!("vertex {} is listed as looped twice", w[0]),
            });
        }
        Ok(LoopedSimpleGraph::new(self.n, &edges, &loops)?)
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<LoopedSimpleGraph, FormatError> {
    match format {
        Format::Json => {
            let doc: GraphDocument = serde_json::from_str(text).map_err(|e| FormatError::Json {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            doc.to_graph()
        }
        Format::Graph6 => parse_graph6(text.trim()),
        Format::G6Loops => {
            let text = text.trim();
            let Some((body, loops)) = text.split_once(";L=") else {
                return Err(g6_error(text.len() + 1, "missing ;L=<bits> suffix"));
            };
            let g = parse_graph6(body)?;
            if loops.len() != g.n() {
                return Err(g6_error(body.len() + 4, format!("expected {} loop bits, got {}", g.n(), loops.len())));
            }
            let mut looped = Vec::new();
            for (i, c) in loops.chars().enumerate() {
                match c {
                    '1' => looped.push(i),
                    '0' => {}
                    _ => return Err(g6_error(body.len() + 4 + i, format!("loop bit {c:?} is not 0 or 1"))),
                }
            }
            let edges = g.edges();
            Ok(LoopedSimpleGraph::new(g.n(), &edges, &looped)?)
        }
    }
}

fn parse_graph6(text: &str) -> Result<LoopedSimpleGraph, FormatError> {
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(i) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(g6_error(i + 1, format!("byte {:?} outside the graph6 range", bytes[i] as char)));
    }
    let (n, start) = match bytes {
        [] => return Err(g6_error(1, "empty input")),
        [126, 126, ..] => return Err(g6_error(1, "graphs this large are not supported")),
        [126, a, b, c, ..] => {
            let n = [a, b, c].iter().fold(0usize, |acc, &&x| acc << 6 | usize::from(x - 63));
            (n, 4)
        }
        [126, ..] => return Err(g6_error(1, "truncated vertex count")),
        [first, ..] => (usize::from(first - 63), 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    let body = &bytes[start..];
    if body.len() != needed {
        return Err(g6_error(start + 1, format!("expected {needed} edge bytes for {n} vertices, got {}", body.len())));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(LoopedSimpleGraph::new(n, &edges, &[])?)
}

/// Standard graph6 of the underlying loopless graph.
pub fn to_graph6(g: &LoopedSimpleGraph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([n >> 12, n >> 6 & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.is_adjacent(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let v = chunk.iter().enumerate().fold(0u8, |acc, (k, &b)| acc | u8::from(b) << (5 - k));
        out.push(v + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn to_g6loops(g: &LoopedSimpleGraph) -> String {
    let loops: String = (0..g.n()).map(|v| if g.is_looped(v) { '1' } else { '0' }).collect();
    format!("{};L={loops}", to_graph6(g))
}

pub fn emit_graph(g: &LoopedSimpleGraph, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(&GraphDocument::from_graph(g)).expect("documents serialize"),
        Format::Graph6 => to_graph6(g),
        Format::G6Loops => to_g6loops(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_examples() {
        let p3 = parse_graph(r#"{"n":3,"edges":[[0,1],[1,2]],"loops":[]}"#, Format::Json).unwrap();
        assert_eq!(p3, LoopedSimpleGraph::path(3));
        let k1 = parse_graph(r#"{"n":1,"edges":[],"loops":[0]}"#, Format::Json).unwrap();
        assert!(k1.is_looped(0));
        assert!(parse_graph(r#"{"n":3,"edges":[],"loops":[5]}"#, Format::Json).is_err());
        assert!(parse_graph(r#"{"n":3,"edges":[[0,1],[1,0]],"loops":[]}"#, Format::Json).is_err());
        assert!(parse_graph(r#"{"n":2,"loops":[1,1]}"#, Format::Json).is_err());
        match parse_graph("{\n  \"n\": 3,\n  \"edges\": [[0,1]\n", Format::Json) {
            Err(FormatError::Json { line, .. }) => assert!(line >= 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graph6_known_strings() {
        // P3 with edges 0-1 and 1-2: bits x01 x02 x12 = 1 0 1
        assert_eq!(to_graph6(&LoopedSimpleGraph::path(3)), "Bg");
        assert_eq!(parse_graph("Bg", Format::Graph6).unwrap(), LoopedSimpleGraph::path(3));
        assert_eq!(to_graph6(&LoopedSimpleGraph::complete(4)), "C~");
        assert_eq!(to_graph6(&LoopedSimpleGraph::empty(0)), "?");
        assert!(parse_graph("Bgg", Format::Graph6).is_err());
        assert!(parse_graph("", Format::Graph6).is_err());
        assert_eq!(parse_graph(">>graph6<<Bg", Format::Graph6).unwrap(), LoopedSimpleGraph::path(3));
    }

    #[test]
    fn g6loops_examples() {
        let g = LoopedSimpleGraph::new(3, &[(0, 1), (1, 2)], &[2]).unwrap();
        assert_eq!(to_g6loops(&g), "Bg;L=001");
        assert_eq!(parse_graph("Bg;L=001", Format::G6Loops).unwrap(), g);
        assert!(parse_graph("Bg;L=01", Format::G6Loops).is_err());
        assert!(parse_graph("Bg;L=0a1", Format::G6Loops).is_err());
        assert!(parse_graph("Bg", Format::G6Loops).is_err());
    }

    #[test]
    fn round_trips() {
        for n in 0..=4 {
            for g in LoopedSimpleGraph::all(n) {
                for f in [Format::Json, Format::G6Loops] {
                    assert_eq!(parse_graph(&emit_graph(&g, f), f).unwrap(), g);
                }
                let simple = parse_graph(&to_graph6(&g), Format::Graph6).unwrap();
                assert_eq!(simple.edges(), g.edges());
            }
        }
        let big = LoopedSimpleGraph::cycle(64);
        assert_eq!(parse_graph(&to_graph6(&big), Format::Graph6).unwrap(), big);
    }
}
