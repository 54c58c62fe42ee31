//! Instance files.
//!
//! Two formats are supported:
//!
//! * JSON: `{"n": 4, "edges": [[1, 2, 1.0], [1, 3, -1.0]]}`
//! * text: one `i j a` triple per line; `#` starts a comment and blank
//!   lines are ignored. An optional `n <count>` line fixes the vertex count,
//!   otherwise it is the largest endpoint seen.
//!
//! Weights are written with the shortest decimal that parses back to the
//! same `f64`, so both formats round-trip exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SignedWeightedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFormat {
    Json,
    Text,
}

impl InstanceFormat {
    /// `.json` is JSON, anything else is the text edge list.
    pub fn from_path(path: &Path) -> InstanceFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => InstanceFormat::Json,
            _ => InstanceFormat::Text,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonInstance {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

pub fn to_json(g: &SignedWeightedGraph) -> String {
    let doc = JsonInstance {
        n: g.n(),
        edges: g.edges().iter().map(|e| (e.i, e.j, e.weight)).collect(),
    };
    serde_json::to_string(&doc).expect("instance serialization cannot fail")
}

pub fn from_json(s: &str) -> Result<SignedWeightedGraph> {
    let doc: JsonInstance = serde_json::from_str(s)?;
    SignedWeightedGraph::new(doc.n, doc.edges)
}

pub fn to_text(g: &SignedWeightedGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        writeln!(out, "{} {} {:?}", e.i, e.j, e.weight).unwrap();
    }
    out
}

pub fn from_text(s: &str) -> Result<SignedWeightedGraph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::input(format!("line {}: cannot parse {raw:?}", lineno + 1));
        match fields.as_slice() {
            ["n", count] => n = Some(count.parse::<usize>().map_err(|_| bad())?),
            [i, j, a] => edges.push((
                i.parse::<usize>().map_err(|_| bad())?,
                j.parse::<usize>().map_err(|_| bad())?,
                a.parse::<f64>().map_err(|_| bad())?,
            )),
            _ => return Err(bad()),
        }
    }
    let n = match n {
        Some(n) => n,
        None => edges
            .iter()
            .map(|&(i, j, _)| i.max(j))
            .max()
            .ok_or_else(|| Error::input("edge list is empty and has no `n` line"))?,
    };
    SignedWeightedGraph::new(n, edges)
}

pub fn read_instance(path: &Path) -> Result<SignedWeightedGraph> {
    let s = fs::read_to_string(path)?;
    match InstanceFormat::from_path(path) {
        InstanceFormat::Json => from_json(&s),
        InstanceFormat::Text => from_text(&s),
    }
}

pub fn write_instance(g: &SignedWeightedGraph, path: &Path) -> Result<()> {
    let s = match InstanceFormat::from_path(path) {
        InstanceFormat::Json => to_json(g) + "\n",
        InstanceFormat::Text => to_text(g),
    };
    fs::write(path, s)?;
    Ok(())
}
