//! Finite graph ingestion: a JSON object `{"n": 5, "edges": [[0, 1], ...]}`
//! and a whitespace edge list whose first line holds `n`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FiniteGraph;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn from_json(text: &str) -> Result<FiniteGraph> {
    let file: GraphFile = serde_json::from_str(text)?;
    let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
    FiniteGraph::from_edges(file.n, &edges)
}

pub fn to_json(g: &FiniteGraph) -> String {
    let file = GraphFile {
        n: g.order(),
        edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
    };
    serde_json::to_string(&file).expect("graph file serializes")
}

pub fn from_edge_list(text: &str) -> Result<FiniteGraph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, first) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let n: usize = first.parse().map_err(|_| {
        Error::Parse(format!(
            "first line must be the vertex count, got {first:?}"
        ))
    })?;
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed = match fields.as_slice() {
            [a, b] => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
            _ => None,
        };
        let edge = parsed.ok_or_else(|| {
            Error::Parse(format!(
                "line {}: expected \"a b\", got {line:?}",
                lineno + 1
            ))
        })?;
        edges.push(edge);
    }
    FiniteGraph::from_edges(n, &edges)
}

pub fn to_edge_list(g: &FiniteGraph) -> String {
    let mut out = format!("{}\n", g.order());
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Loads a graph file, choosing the format by extension (`.json` or text).
pub fn load(path: &Path) -> Result<FiniteGraph> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e == "json") {
        from_json(&text)
    } else {
        from_edge_list(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let g = from_json(r#"{"n": 4, "edges": [[0,1],[1,2],[2,3],[3,0]]}"#).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn json_rejects_duplicates_and_range() {
        assert!(from_json(r#"{"n": 2, "edges": [[0,1],[1,0]]}"#).is_err());
        assert!(from_json(r#"{"n": 2, "edges": [[0,5]]}"#).is_err());
        assert!(from_json(r#"{"n": 2}"#).is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let g = from_edge_list("3\n0 1\n# comment\n1 2\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert!(from_edge_list("3\n0 1\n0 1\n1 2\n").is_err());
        assert!(from_edge_list("3\n0 1\n1 3\n").is_err());
        assert!(from_edge_list("3\n0 1 2\n").is_err());
        assert!(from_edge_list("").is_err());
    }
}
