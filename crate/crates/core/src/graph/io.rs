//! JSON, DOT and DIMACS `.col` encodings of [`Graph`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, Label};
use crate::error::{Error, Result};

/// Wire form: `{"n": .., "edges": [[u, v], ..], "labels": [..]}` with `u <= v`
/// and edges in lexicographic order. Labels are their rendered strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g
                .labels()
                .map(|ls| ls.iter().map(ToString::to_string).collect()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(j.n, &edges)?;
        match j.labels {
            Some(ls) => g.with_labels(ls.into_iter().map(Label::Text).collect()),
            None => Ok(g),
        }
    }
}

/// A graph read from DIMACS, with the comment lines it carried.
#[derive(Clone, Debug)]
pub struct ParsedDimacs {
    pub graph: Graph,
    pub comments: Vec<String>,
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph json")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(s)?;
        Graph::try_from(j)
    }

    /// Undirected DOT; labels become node `label` attributes.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {} {{", dot_id(name));
        for v in 0..self.order() {
            match self.label(v) {
                Some(l) => {
                    let text = l.to_string().replace('\\', "\\\\").replace('"', "\\\"");
                    let _ = writeln!(out, "  {v} [label=\"{text}\"];");
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// DIMACS `.col` text with 1-based vertices.
    pub fn to_dimacs(&self, comment: Option<&str>) -> String {
        let edges = self.edges();
        let mut out = String::new();
        if let Some(c) = comment {
            for line in c.lines() {
                let _ = writeln!(out, "c {line}");
            }
        }
        let _ = writeln!(out, "p edge {} {}", self.order(), edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<ParsedDimacs> {
        let mut graph: Option<Graph> = None;
        let mut comments = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let mut parts = line.split_whitespace();
            let bad = || Error::Parse(format!("line {}: {raw:?}", lineno + 1));
            match parts.next() {
                None => {}
                Some("c") => comments.push(line[1..].trim().to_string()),
                Some("p") => {
                    if graph.is_some() {
                        return Err(bad());
                    }
                    let kind = parts.next().ok_or_else(bad)?;
                    if kind != "edge" && kind != "col" {
                        return Err(bad());
                    }
                    let n: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                    graph = Some(Graph::empty(n));
                }
                Some("e") => {
                    let g = graph.as_mut().ok_or_else(bad)?;
                    let mut vert = || -> Result<usize> {
                        let x: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
                        x.checked_sub(1).ok_or_else(bad)
                    };
                    let (u, v) = (vert()?, vert()?);
                    g.add_edge(u, v)?;
                }
                Some(_) => return Err(bad()),
            }
        }
        let graph = graph.ok_or_else(|| Error::Parse("missing problem line".into()))?;
        Ok(ParsedDimacs { graph, comments })
    }
}

fn dot_id(name: &str) -> String {
    if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('"', "\\\""))
    }
}

#[cfg(test)]
mod tests {
    use crate::graph::{complete_graph, kneser_graph, Graph};

    #[test]
    fn json_shape() {
        let g = Graph::from_edges(3, &[(2, 1), (0, 0)]).unwrap();
        assert_eq!(g.to_json(), r#"{"n":3,"edges":[[0,0],[1,2]]}"#);
    }

    #[test]
    fn json_round_trip_keeps_rendered_labels() {
        let g = kneser_graph(5, 2).unwrap();
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(back.edges(), g.edges());
        let a: Vec<String> = back.labels().unwrap().iter().map(|l| l.to_string()).collect();
        let b: Vec<String> = g.labels().unwrap().iter().map(|l| l.to_string()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn dimacs_header_and_round_trip() {
        let g = kneser_graph(5, 2).unwrap();
        let text = g.to_dimacs(Some("K(5,2)"));
        assert!(text.contains("\np edge 10 15\n"));
        let parsed = Graph::from_dimacs(&text).unwrap();
        assert_eq!(parsed.graph.edges(), g.edges());
        assert_eq!(parsed.comments, vec!["K(5,2)".to_string()]);
    }

    #[test]
    fn dimacs_rejects_garbage() {
        assert!(Graph::from_dimacs("e 1 2\n").is_err());
        assert!(Graph::from_dimacs("p edge 2 1\ne 0 1\n").is_err());
        assert!(Graph::from_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(Graph::from_dimacs("x\n").is_err());
    }

    #[test]
    fn dot_lists_nodes_and_edges() {
        let dot = complete_graph(3).to_dot("K3");
        assert!(dot.starts_with("graph K3 {"));
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
