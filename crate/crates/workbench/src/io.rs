//! Instance files: one JSON schema serves both games and networks.
//!
//! ```json
//! {
//!   "vertices": [{"id": 0, "owner": "max"}, {"id": 1, "owner": "terminal", "payoff": 2.5}],
//!   "arcs": [{"tail": 0, "head": 1}, {"tail": 0, "head": 1, "capacity": 4.0}],
//!   "start": 0,
//!   "source": 0, "sink": 1,
//!   "budget": {"0": 1}
//! }
//! ```
//!
//! Games need `owner` (and `payoff` on terminals); networks need `capacity`
//! on every arc plus `source` and `sink`. Saving a loaded instance
//! reproduces it byte-identically on canonical (validated) forms.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use srg_core::game::{Srg, VertexKind};
use srg_core::interdiction::Network;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error in field `{field}`: {detail}")]
    Schema { field: String, detail: String },
}

fn schema(field: &str, detail: impl Into<String>) -> IoError {
    IoError::Schema { field: field.into(), detail: detail.into() }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub owner: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payoff: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArcDoc {
    pub tail: usize,
    pub head: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity: Option<f64>,
}

/// On-disk instance document.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct Document {
    #[serde(default)]
    pub vertices: Vec<VertexDoc>,
    #[serde(default)]
    pub arcs: Vec<ArcDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sink: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<BTreeMap<String, u32>>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Interprets the document as a game. Ids must be dense 0..n in order.
    pub fn to_srg(&self) -> Result<Srg, IoError> {
        let mut kinds = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(schema("vertices.id", format!("expected dense id {i}, got {}", v.id)));
            }
            let owner = v.owner.as_deref().ok_or_else(|| {
                schema("vertices.owner", format!("vertex {i} needs an owner for a game"))
            })?;
            let kind = match owner {
                "max" => VertexKind::Max,
                "min" => VertexKind::Min,
                "terminal" => {
                    let p = v.payoff.ok_or_else(|| {
                        schema("vertices.payoff", format!("terminal {i} needs a payoff"))
                    })?;
                    VertexKind::Terminal(p)
                }
                other => {
                    return Err(schema(
                        "vertices.owner",
                        format!("vertex {i}: unknown owner `{other}`"),
                    ))
                }
            };
            if matches!(kind, VertexKind::Max | VertexKind::Min) && v.payoff.is_some() {
                return Err(schema(
                    "vertices.payoff",
                    format!("non-terminal {i} must not carry a payoff"),
                ));
            }
            kinds.push(kind);
        }
        let arcs = self.arcs.iter().map(|a| (a.tail, a.head)).collect();
        Ok(Srg::new(kinds, arcs, self.start))
    }

    /// Interprets the document as a network. Vertices may omit `owner`.
    pub fn to_network(&self) -> Result<Network, IoError> {
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(schema("vertices.id", format!("expected dense id {i}, got {}", v.id)));
            }
        }
        let n = self.vertices.len();
        let mut arcs = Vec::with_capacity(self.arcs.len());
        for (i, a) in self.arcs.iter().enumerate() {
            let cap = a.capacity.ok_or_else(|| {
                schema("arcs.capacity", format!("arc {i} needs a capacity for a network"))
            })?;
            arcs.push((a.tail, a.head, cap));
        }
        let source = self.source.ok_or_else(|| schema("source", "networks need a source"))?;
        let sink = self.sink.ok_or_else(|| schema("sink", "networks need a sink"))?;
        let mut budgets = vec![0u32; n];
        if let Some(map) = &self.budget {
            for (key, &k) in map {
                let v: usize = key
                    .parse()
                    .map_err(|_| schema("budget", format!("bad vertex id `{key}`")))?;
                if v >= n {
                    return Err(schema("budget", format!("vertex {v} out of range")));
                }
                budgets[v] = k;
            }
        }
        Ok(Network::new(n, arcs, budgets, source, sink))
    }

    pub fn from_srg(game: &Srg) -> Document {
        let mut vertices = Vec::new();
        for v in game.vertex_ids() {
            let (owner, payoff) = match game.kind(v).unwrap() {
                VertexKind::Max => ("max", None),
                VertexKind::Min => ("min", None),
                VertexKind::Terminal(p) => ("terminal", Some(p)),
            };
            vertices.push(VertexDoc { id: v, owner: Some(owner.into()), payoff });
        }
        let arcs = game
            .arcs()
            .iter()
            .map(|a| ArcDoc { tail: a.tail, head: a.head, capacity: None })
            .collect();
        Document { vertices, arcs, start: game.start(), ..Default::default() }
    }

    pub fn from_network(net: &Network) -> Document {
        let vertices = (0..net.vertex_count())
            .map(|id| VertexDoc { id, owner: None, payoff: None })
            .collect();
        let arcs = net
            .arcs()
            .iter()
            .map(|a| ArcDoc { tail: a.tail, head: a.head, capacity: Some(a.capacity) })
            .collect();
        let budget: BTreeMap<String, u32> = (0..net.vertex_count())
            .filter(|&v| net.budget(v) > 0)
            .map(|v| (v.to_string(), net.budget(v)))
            .collect();
        Document {
            vertices,
            arcs,
            start: None,
            source: Some(net.source()),
            sink: Some(net.sink()),
            budget: if budget.is_empty() { None } else { Some(budget) },
        }
    }
}

pub fn load_srg(path: &Path) -> Result<Srg, IoError> {
    Document::parse(&fs::read_to_string(path)?)?.to_srg()
}

pub fn save_srg(game: &Srg, path: &Path) -> Result<(), IoError> {
    Ok(fs::write(path, Document::from_srg(game).to_json())?)
}

pub fn load_network(path: &Path) -> Result<Network, IoError> {
    Document::parse(&fs::read_to_string(path)?)?.to_network()
}

pub fn save_network(net: &Network, path: &Path) -> Result<(), IoError> {
    Ok(fs::write(path, Document::from_network(net).to_json())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn game_round_trip() {
        let g = Srg::new(
            vec![VertexKind::Max, VertexKind::Min, VertexKind::Terminal(-2.5)],
            vec![(0, 1), (1, 2), (0, 2)],
            Some(0),
        )
        .validate()
        .unwrap();
        let doc = Document::from_srg(&g);
        let text = doc.to_json();
        let back = Document::parse(&text).unwrap().to_srg().unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn network_round_trip() {
        let net = Network::new(
            3,
            vec![(0, 1, 10.0), (1, 2, 4.0), (1, 2, 6.0)],
            vec![0, 1, 0],
            0,
            2,
        )
        .validate()
        .unwrap();
        let doc = Document::from_network(&net);
        let back = Document::parse(&doc.to_json()).unwrap().to_network().unwrap();
        assert_eq!(back.validate().unwrap(), net);
    }

    #[test]
    fn parse_error_carries_position() {
        let err = Document::parse("{\n  \"vertices\": [,]\n}").unwrap_err();
        match err {
            IoError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn schema_error_names_the_field() {
        let text = r#"{"vertices": [{"id": 0, "owner": "emperor"}], "arcs": []}"#;
        let err = Document::parse(text).unwrap().to_srg().unwrap_err();
        match err {
            IoError::Schema { field, .. } => assert_eq!(field, "vertices.owner"),
            other => panic!("expected schema error, got {other:?}"),
        }
        let text = r#"{"vertices": [{"id": 0, "owner": "terminal"}], "arcs": []}"#;
        let err = Document::parse(text).unwrap().to_srg().unwrap_err();
        match err {
            IoError::Schema { field, .. } => assert_eq!(field, "vertices.payoff"),
            other => panic!("expected schema error, got {other:?}"),
        }
        let text = r#"{"vertices": [{"id": 0}], "arcs": [{"tail": 0, "head": 0}]}"#;
        let err = Document::parse(text).unwrap().to_network().unwrap_err();
        match err {
            IoError::Schema { field, .. } => assert_eq!(field, "arcs.capacity"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }
}
