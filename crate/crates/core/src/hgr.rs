//! Plain-text hypergraph files.
//!
//! ```text
//! # comment
//! hgr <r> <n> <m>
//! <v_1> … <v_r>          (m edge lines, 1-based ids, any order)
//! partition <c_1> … <c_n> (optional, classes in 1..=r)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. [`write_hgr`]
//! emits the canonical form: sorted vertices, edges in lexicographic
//! order, single spaces, trailing newline.
//!
//! Swap traces produced by rewiring use a sibling format:
//!
//! ```text
//! trace <r> <count>
//! - <removed edge> + <inserted edge> <spread|band>
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::hypergraph::{
    Edge, EdgeTrace, HypergraphError, Partition, SwapPhase, SwapRecord, UniformHypergraph, Vertex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HgrError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("edge count mismatch: header declares {declared}, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        source: HypergraphError,
    },
    #[error("{0}")]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HgrDocument {
    pub hypergraph: UniformHypergraph,
    pub partition: Option<Partition>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn malformed(line: usize, message: impl Into<String>) -> HgrError {
    HgrError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_numbers<N: std::str::FromStr>(line: usize, tokens: &[&str]) -> Result<Vec<N>, HgrError> {
    tokens
        .iter()
        .map(|t| {
            t.parse()
                .map_err(|_| malformed(line, format!("expected a nonnegative integer, got {t:?}")))
        })
        .collect()
}

pub fn parse_hgr(text: &str) -> Result<HgrDocument, HgrError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(HgrError::MissingHeader)?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "hgr" {
        return Err(malformed(header_line, "expected header `hgr <r> <n> <m>`"));
    }
    let dims: Vec<usize> = parse_numbers(header_line, &tokens[1..])?;
    let (r, n, m) = (dims[0], dims[1], dims[2]);
    UniformHypergraph::empty(r, n).map_err(|source| HgrError::Invalid {
        line: header_line,
        source,
    })?;

    let mut edges: Vec<Vec<Vertex>> = Vec::new();
    let mut edge_lines = Vec::new();
    let mut partition_line = None;
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if partition_line.is_some() {
            return Err(malformed(line, "unexpected content after the partition line"));
        }
        if tokens[0] == "partition" {
            partition_line = Some((line, tokens));
            continue;
        }
        let edge: Vec<Vertex> = parse_numbers(line, &tokens)?;
        if edge.len() != r {
            return Err(malformed(
                line,
                format!("edge has {} vertices, expected {r}", edge.len()),
            ));
        }
        edges.push(edge);
        edge_lines.push(line);
    }
    if edges.len() != m {
        return Err(HgrError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    let hypergraph = UniformHypergraph::build(r, n, &edges).map_err(|source| {
        let index = match &source {
            HypergraphError::WrongCardinality { index, .. }
            | HypergraphError::RepeatedVertex { index, .. }
            | HypergraphError::VertexOutOfRange { index, .. } => Some(*index),
            HypergraphError::DuplicateEdge { edge } => edges
                .iter()
                .rposition(|e| Edge::new(e.clone()) == *edge),
            _ => None,
        };
        match index {
            Some(i) => HgrError::Invalid {
                line: edge_lines[i],
                source,
            },
            None => HgrError::Hypergraph(source),
        }
    })?;

    let partition = partition_line
        .map(|(line, tokens)| {
            let p = partition_from_tokens(line, &tokens[1..], r, n)?;
            hypergraph
                .check_partition(&p)
                .map_err(|source| HgrError::Invalid { line, source })?;
            Ok::<_, HgrError>(p)
        })
        .transpose()?;
    Ok(HgrDocument {
        hypergraph,
        partition,
    })
}

fn partition_from_tokens(
    line: usize,
    tokens: &[&str],
    r: usize,
    n: usize,
) -> Result<Partition, HgrError> {
    let classes: Vec<usize> = parse_numbers(line, tokens)?;
    if classes.len() != n {
        return Err(HgrError::Invalid {
            line,
            source: HypergraphError::PartitionLength {
                got: classes.len(),
                expected: n,
            },
        });
    }
    Partition::new(r, classes).map_err(|source| HgrError::Invalid { line, source })
}

/// Reads a standalone partition file: a single `partition …` line, with
/// the usual comments allowed. Not checked against any hypergraph.
pub fn parse_partition_line(text: &str, r: usize, n: usize) -> Result<Partition, HgrError> {
    let mut lines = content_lines(text);
    let (line, content) = lines
        .next()
        .ok_or_else(|| malformed(1, "expected a `partition` line"))?;
    let tokens: Vec<&str> = content.split_whitespace().collect();
    if tokens[0] != "partition" {
        return Err(malformed(line, "expected a `partition` line"));
    }
    if let Some((extra, _)) = lines.next() {
        return Err(malformed(extra, "unexpected content after the partition line"));
    }
    partition_from_tokens(line, &tokens[1..], r, n)
}

fn push_vertices(out: &mut String, vs: &[Vertex]) {
    for (k, v) in vs.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
}

pub fn write_hgr(h: &UniformHypergraph, partition: Option<&Partition>) -> String {
    let mut out = format!(
        "hgr {} {} {}\n",
        h.rank(),
        h.vertex_count(),
        h.edge_count()
    );
    for e in h.edges() {
        push_vertices(&mut out, e.vertices());
        out.push('\n');
    }
    if let Some(p) = partition {
        out.push_str("partition");
        for c in p.class_of() {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

pub fn write_trace(rank: usize, trace: &EdgeTrace) -> String {
    let mut out = format!("trace {} {}\n", rank, trace.len());
    for s in &trace.swaps {
        out.push_str("- ");
        push_vertices(&mut out, s.removed.vertices());
        out.push_str(" + ");
        push_vertices(&mut out, s.inserted.vertices());
        out.push_str(match s.phase {
            SwapPhase::Spread => " spread\n",
            SwapPhase::Band => " band\n",
        });
    }
    out
}

pub fn parse_trace(text: &str) -> Result<(usize, EdgeTrace), HgrError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(HgrError::MissingHeader)?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 || tokens[0] != "trace" {
        return Err(malformed(header_line, "expected header `trace <r> <count>`"));
    }
    let dims: Vec<usize> = parse_numbers(header_line, &tokens[1..])?;
    let (r, count) = (dims[0], dims[1]);
    let mut trace = EdgeTrace::default();
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 * r + 3 || tokens[0] != "-" || tokens[r + 1] != "+" {
            return Err(malformed(line, "expected `- <edge> + <edge> <phase>`"));
        }
        let removed: Vec<Vertex> = parse_numbers(line, &tokens[1..=r])?;
        let inserted: Vec<Vertex> = parse_numbers(line, &tokens[r + 2..=2 * r + 1])?;
        let phase = match tokens[2 * r + 2] {
            "spread" => SwapPhase::Spread,
            "band" => SwapPhase::Band,
            other => return Err(malformed(line, format!("unknown phase {other:?}"))),
        };
        trace.swaps.push(SwapRecord {
            removed: Edge::new(removed),
            inserted: Edge::new(inserted),
            phase,
        });
    }
    if trace.len() != count {
        return Err(HgrError::EdgeCountMismatch {
            declared: count,
            found: trace.len(),
        });
    }
    Ok((r, trace))
}
