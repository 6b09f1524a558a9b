//! Line-oriented text formats.
//!
//! Graph files: `# comment` lines, one `root <vertex>` line, then
//! `edge <id> <tail> <head>` lines. Vertices are implied by mention, so
//! isolated non-root vertices are not representable. Edge-subset files carry
//! one edge id per line. Blank lines and `#` comments are accepted anywhere
//! on input; output never emits them.

use std::collections::BTreeSet;

use super::{build_graph, EdgeRecord, EdgeSet, RootedDigraph, Subdigraph};
use crate::error::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the graph file format. Errors carry 1-based line numbers.
pub fn parse_graph(text: &str) -> Result<RootedDigraph> {
    let mut root: Option<(usize, String)> = None;
    let mut records: Vec<EdgeRecord> = Vec::new();
    let mut seen_ids: BTreeSet<String> = BTreeSet::new();
    let mut vertices: BTreeSet<String> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "root" => {
                if tokens.len() != 2 {
                    return Err(parse_error(lineno, "expected `root <vertex>`"));
                }
                if root.is_some() {
                    return Err(parse_error(lineno, "duplicate root line"));
                }
                vertices.insert(tokens[1].to_string());
                root = Some((lineno, tokens[1].to_string()));
            }
            "edge" => {
                if tokens.len() != 4 {
                    return Err(parse_error(lineno, "expected `edge <id> <tail> <head>`"));
                }
                let (id, tail, head) = (tokens[1], tokens[2], tokens[3]);
                let root_name = match &root {
                    Some((_, name)) => name.as_str(),
                    None => {
                        return Err(parse_error(lineno, "edge line before the root line"));
                    }
                };
                if !seen_ids.insert(id.to_string()) {
                    return Err(parse_error(lineno, format!("duplicate edge id `{id}`")));
                }
                if tail == head {
                    return Err(parse_error(lineno, format!("edge `{id}` is a loop")));
                }
                if head == root_name {
                    return Err(parse_error(
                        lineno,
                        format!("edge `{id}` points into the root"),
                    ));
                }
                vertices.insert(tail.to_string());
                vertices.insert(head.to_string());
                records.push(EdgeRecord::new(id, tail, head));
            }
            other => {
                return Err(parse_error(lineno, format!("unknown directive `{other}`")));
            }
        }
    }

    let (_, root_name) =
        root.ok_or_else(|| parse_error(text.lines().count() + 1, "missing root line"))?;
    let vertices: Vec<String> = vertices.into_iter().collect();
    build_graph(&vertices, &root_name, &records)
}

/// Serializes a graph: one root line, then edges ascending by id.
pub fn serialize_graph(d: &RootedDigraph) -> String {
    let mut out = String::new();
    out.push_str("root ");
    out.push_str(d.vertex_name(d.root()));
    out.push('\n');
    for e in d.edges() {
        let rec = d.edge_record(e);
        out.push_str(&format!("edge {} {} {}\n", rec.id, rec.tail, rec.head));
    }
    out
}

/// Parses an edge-subset (or precedence) file: one id per line, order kept.
pub fn parse_edge_ids(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.split_whitespace().count() != 1 {
            return Err(parse_error(idx + 1, "expected a single edge id"));
        }
        out.push(line.to_string());
    }
    Ok(out)
}

/// Serializes an edge set: one id per line, ascending by id.
pub fn serialize_edge_names<S: Subdigraph>(d: &S, edges: &EdgeSet) -> String {
    let mut out = String::new();
    for &e in edges {
        out.push_str(d.host().edge_name(e));
        out.push('\n');
    }
    out
}
