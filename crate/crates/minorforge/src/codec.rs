//! Bit-exact graph6 short form and a plain edge-list text format.
//!
//! graph6 short form: byte 0 is `63 + n` (n ≤ 62); then the upper-triangle
//! edge bits x(0,1), x(0,2), x(1,2), x(0,3), … packed six per byte MSB-first,
//! each payload byte offset by 63, final byte zero-padded. Encoding is of the
//! labeled graph as-is; no relabeling ever happens, so decode(encode(g)) = g
//! and encode(decode(s)) = s byte for byte.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;

/// Number of payload bytes for a graph on `n` vertices.
fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(1 + payload_len(n));
    out.push(OFFSET + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(OFFSET + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses a graph6 short-form string. Leading/trailing ASCII whitespace is
/// tolerated; anything else is rejected with the offending byte offset
/// (relative to the trimmed text).
pub fn from_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    let fail = |offset: usize, reason: &str| Error::Graph6Parse {
        offset,
        reason: reason.to_string(),
    };
    if bytes.is_empty() {
        return Err(fail(0, "empty input"));
    }
    let b0 = bytes[0];
    if !(OFFSET..=126).contains(&b0) {
        return Err(fail(0, &format!("invalid byte {b0} (must be 63..=126)")));
    }
    let n = (b0 - OFFSET) as usize;
    if n > MAX_VERTICES {
        return Err(fail(0, &format!("declared n = {n} exceeds {MAX_VERTICES}")));
    }
    for (idx, &b) in bytes[1..].iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(fail(
                idx + 1,
                &format!("invalid byte {b} (must be 63..=126)"),
            ));
        }
    }
    let expect = payload_len(n);
    if bytes.len() != 1 + expect {
        return Err(fail(
            bytes.len().min(1 + expect),
            &format!(
                "bad length: n = {n} needs {} bytes, got {}",
                1 + expect,
                bytes.len()
            ),
        ));
    }
    let mut g = Graph::empty(n)?;
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut bit = 0usize;
    let mut pairs = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    for (idx, &b) in bytes[1..].iter().enumerate() {
        let offset = idx + 1;
        let chunk = b - OFFSET;
        for k in (0..6).rev() {
            let set = chunk >> k & 1 == 1;
            if bit < total_bits {
                if set {
                    let (i, j) = pairs.next().unwrap();
                    g.add_edge(i, j)?;
                } else {
                    pairs.next();
                }
            } else if set {
                return Err(fail(offset, "nonzero padding bits"));
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Renders the edge-list text format: first line `n m`, then one `u v` line
/// per edge, ascending.
pub fn to_edge_list_text(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses the edge-list text format. `#` starts a comment (full line or
/// trailing); blank lines are ignored. The header line `n m` must be followed
/// by exactly `m` edge lines `u v`, 0-indexed.
pub fn from_edge_list_text(text: &str) -> Result<Graph> {
    let fail = |line: usize, reason: String| Error::EdgeListParse { line, reason };
    let mut header: Option<(usize, usize)> = None;
    let mut g: Option<Graph> = None;
    let mut edges_seen = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(fail(
                line_no,
                format!("expected two integers, got {:?}", content),
            ));
        }
        let a: usize = fields[0]
            .parse()
            .map_err(|_| fail(line_no, format!("bad integer {:?}", fields[0])))?;
        let b: usize = fields[1]
            .parse()
            .map_err(|_| fail(line_no, format!("bad integer {:?}", fields[1])))?;
        match (&header, &mut g) {
            (None, _) => {
                header = Some((a, b));
                g = Some(Graph::empty(a).map_err(|e| fail(line_no, e.to_string()))?);
            }
            (Some((_, m)), Some(graph)) => {
                if edges_seen == *m {
                    return Err(fail(line_no, format!("more than {m} edge lines")));
                }
                graph
                    .add_edge(a, b)
                    .map_err(|e| fail(line_no, e.to_string()))?;
                edges_seen += 1;
            }
            _ => unreachable!(),
        }
    }
    match (header, g) {
        (Some((_, m)), Some(graph)) => {
            if edges_seen != m {
                return Err(fail(
                    text.lines().count(),
                    format!("header promised {m} edges, found {edges_seen}"),
                ));
            }
            Ok(graph)
        }
        _ => Err(fail(1, "missing 'n m' header line".to_string())),
    }
}
