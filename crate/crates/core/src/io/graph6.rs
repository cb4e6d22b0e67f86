//! graph6: a size header followed by the upper adjacency triangle, column by
//! column, packed six bits per printable byte (value + 63).

use thiserror::Error;

use crate::graph::Graph;

const BIAS: u8 = 63;
const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 size header")]
    MalformedHeader,
    #[error("graph6 body has {found} bytes, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("non-zero padding or trailing data in graph6 body")]
    TrailingBits,
    #[error("byte {0:#04x} is not a graph6 character")]
    BadChar(u8),
}

fn sixes(bytes: &[u8]) -> Result<Vec<u8>, Graph6Error> {
    bytes
        .iter()
        .map(|&b| {
            if (BIAS..=BIAS + 63).contains(&b) {
                Ok(b - BIAS)
            } else {
                Err(Graph6Error::BadChar(b))
            }
        })
        .collect()
}

fn parse_size(bytes: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    let first = *bytes.first().ok_or(Graph6Error::MalformedHeader)?;
    if first != 126 {
        return Ok((usize::from(sixes(&[first])?[0]), &bytes[1..]));
    }
    let (width, start) = if bytes.get(1) == Some(&126) {
        (6, 2)
    } else {
        (3, 1)
    };
    let digits = bytes
        .get(start..start + width)
        .ok_or(Graph6Error::MalformedHeader)?;
    let n = sixes(digits)?
        .into_iter()
        .fold(0u64, |acc, d| (acc << 6) | u64::from(d));
    // sizes must use the shortest encoding
    let minimum = if width == 3 { 63 } else { 258_048 };
    if n < minimum {
        return Err(Graph6Error::MalformedHeader);
    }
    Ok((n as usize, &bytes[start + width..]))
}

/// Parses one graph6 line; an optional `>>graph6<<` prefix and trailing newline are ignored.
pub fn parse_graph6(line: &[u8]) -> Result<Graph, Graph6Error> {
    let mut line = line.strip_prefix(HEADER).unwrap_or(line);
    while let [rest @ .., b'\n' | b'\r'] = line {
        line = rest;
    }
    let (n, body) = parse_size(line)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() > expected {
        return Err(Graph6Error::TrailingBits);
    }
    if body.len() < expected {
        return Err(Graph6Error::WrongLength {
            expected,
            found: body.len(),
        });
    }
    let body = sixes(body)?;
    let bit = |k: usize| (body[k / 6] >> (5 - k % 6)) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(Graph6Error::TrailingBits);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 bits describe a simple graph"))
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else {
        let width = if n < 258_048 { 3 } else { 6 };
        out.push(126);
        if width == 6 {
            out.push(126);
        }
        out.extend((0..width).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + BIAS));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}
