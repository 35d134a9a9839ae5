//! JSON documents for matroids and the plain edge-list graph format.
//!
//! ```json
//! {"type": "uniform", "labels": ["a", "b", "c"], "payload": {"rank": 2}}
//! ```
//!
//! Column payloads carry `field` and `rows` (entries as exact strings);
//! graphic payloads carry `edges`; circuit payloads carry `circuits` as
//! label lists. An optional `ordering` lists the labels in a chosen order.

use serde::{Deserialize, Serialize};

use super::{Backend, ElementSet, Matroid};
use crate::error::{Error, Result};
use crate::linalg::{AnyMatrix, FieldTag};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload", rename_all = "lowercase")]
pub enum Payload {
    Column { field: FieldTag, rows: Vec<Vec<String>> },
    Graphic { edges: Vec<(String, String)> },
    Uniform { rank: usize },
    Circuits { circuits: Vec<Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatroidDoc {
    #[serde(flatten)]
    pub payload: Payload,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl MatroidDoc {
    pub fn from_matroid(m: &Matroid) -> MatroidDoc {
        let labels = m.labels().to_vec();
        let payload = match m.backend() {
            Backend::Column(a) => Payload::Column {
                field: a.tag(),
                rows: a.to_strings(),
            },
            Backend::Graphic(edges) => Payload::Graphic {
                edges: edges.clone(),
            },
            Backend::Uniform { rank } => Payload::Uniform { rank: *rank },
            Backend::CircuitList(cs) => Payload::Circuits {
                circuits: cs
                    .iter()
                    .map(|c| c.iter().map(|i| labels[i].clone()).collect())
                    .collect(),
            },
        };
        MatroidDoc {
            payload,
            labels,
            ordering: None,
            name: None,
        }
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        let labels = self.labels.clone();
        match &self.payload {
            Payload::Column { field, rows } => {
                let m = if rows.is_empty() {
                    let text = format!("0 {} {}", labels.len(), field);
                    text.parse::<AnyMatrix>()?
                } else {
                    AnyMatrix::from_strings(*field, rows)?
                };
                Matroid::from_matrix_with_labels(m, labels)
            }
            Payload::Graphic { edges } => Matroid::from_graph_with_labels(edges.clone(), labels),
            Payload::Uniform { rank } => Matroid::uniform_with_labels(*rank, labels),
            Payload::Circuits { circuits } => {
                let idx = |l: &String| {
                    labels
                        .iter()
                        .position(|x| x == l)
                        .ok_or_else(|| Error::UnknownLabel(l.clone()))
                };
                let cs = circuits
                    .iter()
                    .map(|c| c.iter().map(idx).collect::<Result<ElementSet>>())
                    .collect::<Result<Vec<_>>>()?;
                Matroid::from_circuits(labels, cs)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn parse(s: &str) -> Result<MatroidDoc> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Serializes a matroid, optionally with an ordering of its labels.
pub fn to_json(m: &Matroid, ordering: Option<&[String]>) -> String {
    let mut doc = MatroidDoc::from_matroid(m);
    doc.ordering = ordering.map(<[String]>::to_vec);
    doc.to_json()
}

/// Parses a matroid document, returning the optional ordering alongside.
pub fn from_json(s: &str) -> Result<(Matroid, Option<Vec<String>>)> {
    let doc = MatroidDoc::parse(s)?;
    Ok((doc.to_matroid()?, doc.ordering))
}

/// Parses "u v" (optionally "u v label") lines; `#` starts a comment.
/// Returns the edges and, if every line carried one, the edge labels.
pub fn parse_edge_list(text: &str) -> Result<(Vec<(String, String)>, Option<Vec<String>>)> {
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let t: Vec<&str> = line.split_whitespace().collect();
        match t.len() {
            2 => edges.push((t[0].to_string(), t[1].to_string())),
            3 => {
                edges.push((t[0].to_string(), t[1].to_string()));
                labels.push(t[2].to_string());
            }
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected `u v [label]`",
                    ln + 1
                )))
            }
        }
    }
    let labels = if labels.is_empty() {
        None
    } else if labels.len() == edges.len() {
        Some(labels)
    } else {
        return Err(Error::Parse("edge labels given on only some lines".into()));
    };
    Ok((edges, labels))
}

/// Builds the cycle matroid of an edge-list text.
pub fn graph_from_edge_list(text: &str) -> Result<Matroid> {
    let (edges, labels) = parse_edge_list(text)?;
    match labels {
        Some(l) => Matroid::from_graph_with_labels(edges, l),
        None => Matroid::from_graph(edges),
    }
}
