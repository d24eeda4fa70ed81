//! Text format for graphs and JSON format for group actions.
//!
//! A graph file looks like
//!
//! ```text
//! # a directed triangle
//! graph directed loops=0 n=3
//! e 0 1
//! e 1 2
//! e 2 0
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphKind};
use crate::perm::{PermAction, Permutation};
use crate::symmetrize::SetFamily;
use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn header_field<'a>(tok: Option<&'a str>, key: &str, line: usize) -> Result<&'a str> {
    tok.and_then(|t| t.strip_prefix(key)).and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected `{key}=<value>` in header")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(GraphKind, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap_or_default();
        match (head, header) {
            ("graph", None) => {
                let directed = match toks.next() {
                    Some("directed") => true,
                    Some("undirected") => false,
                    other => return Err(parse_err(line, format!("expected directed|undirected, got {other:?}"))),
                };
                let loops_allowed = match header_field(toks.next(), "loops", line)? {
                    "0" => false,
                    "1" => true,
                    v => return Err(parse_err(line, format!("loops must be 0 or 1, got `{v}`"))),
                };
                let n = header_field(toks.next(), "n", line)?
                    .parse()
                    .map_err(|e| parse_err(line, format!("bad vertex count: {e}")))?;
                header = Some((GraphKind { directed, loops_allowed }, n));
            }
            ("graph", Some(_)) => return Err(parse_err(line, "duplicate header")),
            ("e", Some((_, n))) => {
                let mut vertex = || -> Result<usize> {
                    let v: usize = toks
                        .next()
                        .ok_or_else(|| parse_err(line, "edge needs two endpoints"))?
                        .parse()
                        .map_err(|e| parse_err(line, format!("bad vertex id: {e}")))?;
                    if v >= n {
                        return Err(parse_err(line, format!("vertex {v} out of range for n={n}")));
                    }
                    Ok(v)
                };
                let (u, v) = (vertex()?, vertex()?);
                edges.push((u, v));
            }
            ("e", None) => return Err(parse_err(line, "edge before header")),
            (other, _) => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (kind, n) = header.ok_or_else(|| parse_err(0, "missing `graph` header"))?;
    Graph::new(kind, n, &edges).map_err(|e| parse_err(0, e.to_string()))
}

/// Canonical form: sorted edge lines, undirected pairs as `min max`.
pub fn serialize_graph(g: &Graph) -> String {
    let kind = g.kind();
    let mut out = format!(
        "graph {} loops={} n={}\n",
        if kind.directed { "directed" } else { "undirected" },
        kind.loops_allowed as u8,
        g.vertex_count()
    );
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// A group action on `0..points`, a family on the same points and a
/// transversal of it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub points: usize,
    #[serde(default)]
    pub generators: Vec<Vec<usize>>,
    #[serde(default)]
    pub family: Vec<Vec<usize>>,
    #[serde(default)]
    pub transversal: Vec<usize>,
}

impl ActionFile {
    pub fn from_json(text: &str) -> Result<ActionFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn action(&self) -> Result<PermAction> {
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if g.len() != self.points {
                    return Err(Error::Format(format!("generators[{i}] has {} images, expected {}", g.len(), self.points)));
                }
                Permutation::new(g.clone()).map_err(|e| Error::Format(format!("generators[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PermAction::new(self.points, gens)
    }

    pub fn family(&self) -> Result<SetFamily> {
        for (i, set) in self.family.iter().enumerate() {
            if let Some(&p) = set.iter().find(|&&p| p >= self.points) {
                return Err(Error::Format(format!("family[{i}] contains {p}, out of range for points={}", self.points)));
            }
        }
        SetFamily::new(self.family.iter().cloned()).map_err(|e| Error::Format(format!("family: {e}")))
    }

    /// Sorted and deduplicated.
    pub fn transversal(&self) -> Result<Vec<usize>> {
        if let Some(&p) = self.transversal.iter().find(|&&p| p >= self.points) {
            return Err(Error::Format(format!("transversal contains {p}, out of range for points={}", self.points)));
        }
        let mut x = self.transversal.clone();
        x.sort_unstable();
        x.dedup();
        Ok(x)
    }
}
