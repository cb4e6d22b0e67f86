//! Plain-text edge lists: one `u v` pair per line (0-based), `#` comments, and an
//! optional leading `n m` header.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn pair(line: usize, text: &str) -> Result<(usize, usize), EdgeListError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let err = |message: String| EdgeListError::Parse { line, message };
    match fields.as_slice() {
        [a, b] => Ok((
            a.parse().map_err(|_| err(format!("bad integer {a:?}")))?,
            b.parse().map_err(|_| err(format!("bad integer {b:?}")))?,
        )),
        _ => Err(err(format!(
            "expected two integers, found {:?}",
            text.trim()
        ))),
    }
}

/// Parses an edge list.
///
/// The first line is read as an `n m` header when exactly `m` lines follow and
/// every endpoint is below `n`; otherwise it is an edge and `n` is one more than
/// the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if !content.is_empty() {
            rows.push(pair(i + 1, content)?);
        }
    }
    let Some(&(n, m)) = rows.first() else {
        return Ok(Graph::empty(0));
    };
    let rest = &rows[1..];
    let is_header = rest.len() == m && rest.iter().all(|&(u, v)| u < n && v < n);
    if is_header {
        return Ok(Graph::new(n, rest.iter().copied())?);
    }
    let n = rows.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Ok(Graph::new(n, rows)?)
}

/// Header line `n m`, then the edges in ascending order.
pub fn encode_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_edges() {
        let p3 = parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(p3, Graph::new(3, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(encode_edge_list(&p3), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn duplicate_edge() {
        assert_eq!(
            parse_edge_list("2 2\n0 1\n0 1\n"),
            Err(EdgeListError::Graph(GraphError::DuplicateEdge(0, 1)))
        );
    }

    #[test]
    fn empty_graphs() {
        assert_eq!(parse_edge_list("0 0\n").unwrap(), Graph::empty(0));
        assert_eq!(parse_edge_list("").unwrap(), Graph::empty(0));
        assert_eq!(parse_edge_list("4 0\n").unwrap(), Graph::empty(4));
    }

    #[test]
    fn headerless_with_comments() {
        let g = parse_edge_list("# path\n0 1 # first\n1 2\n").unwrap();
        assert_eq!(g, Graph::new(3, [(0, 1), (1, 2)]).unwrap());
    }

    #[test]
    fn bad_lines() {
        assert_eq!(
            parse_edge_list("0 1\n1 x\n"),
            Err(EdgeListError::Parse {
                line: 2,
                message: "bad integer \"x\"".into()
            })
        );
        assert!(matches!(
            parse_edge_list("0 1 2\n"),
            Err(EdgeListError::Parse { line: 1, .. })
        ));
    }
}
