//! JSON and DOT formats.
//!
//! Trees are `{"n": 6, "edges": [[0, 1], ...]}`; broadcasts are
//! `{"strengths": {"2": 3}}` with zero strengths omitted; vertex sets are
//! plain arrays.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::broadcast::{covers_edge, Broadcast, BroadcastError, Strength};
use crate::tree::{Tree, TreeError, Vertex};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Broadcast(#[from] BroadcastError),
    #[error("bad vertex id {0:?}")]
    BadVertexId(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
}

impl From<&Tree> for TreeJson {
    fn from(t: &Tree) -> Self {
        TreeJson {
            n: t.n(),
            edges: t.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TreeJson {
    pub fn to_tree(&self) -> Result<Tree, TreeError> {
        let edges: Vec<(Vertex, Vertex)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Tree::new(self.n, &edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BroadcastJson {
    pub strengths: BTreeMap<String, Strength>,
}

impl From<&Broadcast> for BroadcastJson {
    fn from(f: &Broadcast) -> Self {
        BroadcastJson {
            strengths: f
                .to_map()
                .into_iter()
                .map(|(v, s)| (v.to_string(), s))
                .collect(),
        }
    }
}

impl BroadcastJson {
    pub fn to_map(&self) -> Result<BTreeMap<Vertex, Strength>, IoError> {
        self.strengths
            .iter()
            .map(|(k, &s)| {
                k.parse::<Vertex>()
                    .map(|v| (v, s))
                    .map_err(|_| IoError::BadVertexId(k.clone()))
            })
            .collect()
    }

    pub fn to_broadcast(&self, t: &Tree) -> Result<Broadcast, IoError> {
        Ok(Broadcast::from_map(t, &self.to_map()?)?)
    }
}

pub fn parse_tree(json: &str) -> Result<Tree, IoError> {
    let raw: TreeJson = serde_json::from_str(json)?;
    Ok(raw.to_tree()?)
}

pub fn tree_to_json(t: &Tree) -> String {
    serde_json::to_string(&TreeJson::from(t)).expect("tree JSON serializes")
}

pub fn parse_broadcast(t: &Tree, json: &str) -> Result<Broadcast, IoError> {
    let raw: BroadcastJson = serde_json::from_str(json)?;
    raw.to_broadcast(t)
}

pub fn broadcast_to_json(f: &Broadcast) -> String {
    serde_json::to_string(&BroadcastJson::from(f)).expect("broadcast JSON serializes")
}

pub fn parse_vertex_set(json: &str) -> Result<Vec<Vertex>, IoError> {
    Ok(serde_json::from_str(json)?)
}

/// Graphviz rendering. Broadcasting vertices are labelled `v:strength`,
/// covered edges solid and uncovered ones dashed.
pub fn to_dot(t: &Tree, f: Option<&Broadcast>) -> String {
    let mut out = String::from("graph tree {\n  node [shape=circle];\n");
    for v in 0..t.n() {
        match f.map(|f| f.strength(v)).filter(|&s| s > 0) {
            Some(s) => writeln!(out, "  {v} [label=\"{v}:{s}\", style=bold];").unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for &(u, v) in t.edges() {
        let covered = f.is_none_or(|f| f.support().any(|w| covers_edge(t, f, w, (u, v))));
        if covered {
            writeln!(out, "  {u} -- {v};").unwrap();
        } else {
            writeln!(out, "  {u} -- {v} [style=dashed];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
