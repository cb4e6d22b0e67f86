//! Graph and coloring serialization plus test-family generators.

pub mod edge_list;
pub mod generate;
pub mod graph6;

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use edge_list::{encode_edge_list, parse_edge_list, EdgeListError};
pub use generate::{generate, Family, FamilyName, GenerateError};
pub use graph6::{encode_graph6, parse_graph6, Graph6Error};

use crate::graph::Graph;
use crate::verify::PackingColoring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "g6" | "graph6" => Ok(GraphFormat::Graph6),
            "edges" | "edge-list" | "edgelist" => Ok(GraphFormat::EdgeList),
            _ => Err(format!("unknown graph format {s:?} (expected g6 or edges)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
    #[error(transparent)]
    EdgeList(#[from] EdgeListError),
    #[error("no graph in input")]
    NoGraph,
}

/// Guesses the format from the first meaningful line: two integers mean an edge list.
pub fn sniff_format(text: &str) -> GraphFormat {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l) if l.split_whitespace().all(|t| t.parse::<usize>().is_ok()) => {
            GraphFormat::EdgeList
        }
        _ => GraphFormat::Graph6,
    }
}

/// Reads every graph in `text`: one per non-empty line for graph6, a single graph
/// for an edge list. Line numbers are 1-based.
pub fn read_graphs(text: &str, format: Option<GraphFormat>) -> Result<Vec<Graph>, InputError> {
    match format.unwrap_or_else(|| sniff_format(text)) {
        GraphFormat::EdgeList => Ok(vec![parse_edge_list(text)?]),
        GraphFormat::Graph6 => {
            let graphs = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(i, l)| {
                    parse_graph6(l.trim().as_bytes()).map_err(|source| InputError::Graph6 {
                        line: i + 1,
                        source,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if graphs.is_empty() {
                return Err(InputError::NoGraph);
            }
            Ok(graphs)
        }
    }
}

pub fn encode_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => encode_graph6(g) + "\n",
        GraphFormat::EdgeList => encode_edge_list(g),
    }
}

/// A coloring, optionally carrying its graph so the pair can travel through one pipe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(flatten)]
    pub coloring: PackingColoring,
}

impl ColoringDocument {
    pub fn bare(coloring: PackingColoring) -> Self {
        Self {
            graph6: None,
            coloring,
        }
    }

    pub fn with_graph(g: &Graph, coloring: PackingColoring) -> Self {
        Self {
            graph6: Some(encode_graph6(g)),
            coloring,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring documents serialize")
    }

    pub fn graph(&self) -> Option<Result<Graph, Graph6Error>> {
        self.graph6.as_ref().map(|s| parse_graph6(s.as_bytes()))
    }
}

/// Reads a stream of whitespace-separated JSON coloring documents.
pub fn read_colorings(text: &str) -> Result<Vec<ColoringDocument>, serde_json::Error> {
    serde_json::Deserializer::from_str(text)
        .into_iter::<ColoringDocument>()
        .collect()
}
