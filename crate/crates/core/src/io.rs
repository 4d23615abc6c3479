//! JSON interchange and Graphviz export.
//!
//! A poset travels as `{"n": 4, "covers": [[0, 2], [0, 3], [1, 2], [1, 3]]}`
//! where `[i, j]` means `j` covers `i`; an optional `"labels"` array names
//! the elements.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arithmetic::ExponentPoset;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::refinement::RefinementWitness;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl PosetDocument {
    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetDocument {
            n: p.len(),
            covers: p.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: None,
        }
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return Err(Error::Parse(format!("{} labels for {} elements", labels.len(), self.n)));
            }
        }
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|&[a, b]| (a, b)).collect();
        FinitePoset::from_covers(self.n, &covers)
    }
}

/// An exponent poset: the underlying poset document plus one table per
/// element, `maps[f][x]` being `f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentDocument {
    #[serde(flatten)]
    pub poset: PosetDocument,
    pub maps: Vec<Vec<usize>>,
}

impl ExponentDocument {
    pub fn from_exponent(ex: &ExponentPoset) -> Self {
        ExponentDocument {
            poset: PosetDocument::from_poset(&ex.poset),
            maps: (0..ex.len()).map(|f| ex.maps.map(f).table).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    #[serde(rename = "E")]
    pub e: PosetDocument,
    #[serde(rename = "X")]
    pub x: PosetDocument,
    #[serde(rename = "Y")]
    pub y: PosetDocument,
    #[serde(rename = "Z")]
    pub z: PosetDocument,
    pub iso_a: Vec<usize>,
    pub iso_b: Vec<usize>,
    pub iso_c: Vec<usize>,
    pub iso_d: Vec<usize>,
}

impl WitnessDocument {
    pub fn from_witness(w: &RefinementWitness) -> Self {
        WitnessDocument {
            e: PosetDocument::from_poset(&w.e),
            x: PosetDocument::from_poset(&w.x),
            y: PosetDocument::from_poset(&w.y),
            z: PosetDocument::from_poset(&w.z),
            iso_a: w.iso_a.clone(),
            iso_b: w.iso_b.clone(),
            iso_c: w.iso_c.clone(),
            iso_d: w.iso_d.clone(),
        }
    }

    pub fn to_witness(&self) -> Result<RefinementWitness> {
        Ok(RefinementWitness {
            e: self.e.to_poset()?,
            x: self.x.to_poset()?,
            y: self.y.to_poset()?,
            z: self.z.to_poset()?,
            iso_a: self.iso_a.clone(),
            iso_b: self.iso_b.clone(),
            iso_c: self.iso_c.clone(),
            iso_d: self.iso_d.clone(),
        })
    }
}

pub fn parse_document(text: &str) -> Result<PosetDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    parse_document(text)?.to_poset()
}

pub fn emit_poset(p: &FinitePoset) -> String {
    serde_json::to_string(&PosetDocument::from_poset(p)).expect("documents always serialize")
}

/// Hasse diagram in DOT, lower element first on every edge, drawn bottom
/// to top. Nodes are labeled by index unless `labels` is given.
pub fn to_dot(p: &FinitePoset, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for i in 0..p.len() {
        let label = labels.and_then(|l| l.get(i)).cloned().unwrap_or_else(|| i.to_string());
        let _ = writeln!(out, "  {i} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  {a} -> {b};");
    }
    out.push_str("}\n");
    out
}

/// Labels for exponent elements: each map's table, e.g. `"(0,2)"`.
pub fn map_labels(ex: &ExponentPoset) -> Vec<String> {
    (0..ex.len())
        .map(|f| {
            let cells: Vec<String> = ex.table(f).iter().map(u32::to_string).collect();
            format!("({})", cells.join(","))
        })
        .collect()
}
