//! JSON model files.
//!
//! ```json
//! {
//!   "num_vertices": 2,
//!   "num_edges": 2,
//!   "num_faces": 2,
//!   "ve": [[0, 0], [0, 1], [1, 0], [1, 1]],
//!   "ef": [[0, 0], [0, 1], [1, 0], [1, 1]],
//!   "vf": [[0, 0], [0, 1], [1, 0], [1, 1]]
//! }
//! ```
//!
//! Pair lists are written in lexicographic order, so equal structures give
//! byte-identical files.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::structure::{IncidenceStructure, Relation, SortTriple};

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("malformed model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{relation} entry {position} has {len} indices, expected 2")]
    DimensionMismatch { relation: Relation, position: usize, len: usize },
    #[error("{relation} pair [{row}, {col}] out of range for {rows} x {cols}")]
    OutOfRange { relation: Relation, row: usize, col: usize, rows: usize, cols: usize },
    #[error("{relation} pair [{row}, {col}] listed twice")]
    DuplicatePair { relation: Relation, row: usize, col: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    num_vertices: usize,
    num_edges: usize,
    num_faces: usize,
    ve: Vec<Vec<usize>>,
    ef: Vec<Vec<usize>>,
    vf: Vec<Vec<usize>>,
}

pub fn serialize_model(s: &IncidenceStructure) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"num_vertices\": {},", s.num_vertices());
    let _ = writeln!(out, "  \"num_edges\": {},", s.num_edges());
    let _ = writeln!(out, "  \"num_faces\": {},", s.num_faces());
    for (k, relation) in Relation::ALL.into_iter().enumerate() {
        let pairs: Vec<String> = s.matrix(relation).pairs().iter().map(|(r, c)| format!("[{r}, {c}]")).collect();
        let sep = if k + 1 < Relation::ALL.len() { "," } else { "" };
        let _ = writeln!(out, "  \"{}\": [{}]{sep}", relation.name(), pairs.join(", "));
    }
    out.push_str("}\n");
    out
}

pub fn parse_model(text: &str) -> Result<IncidenceStructure, ModelFileError> {
    let raw: RawModel = serde_json::from_str(text)?;
    let triple = SortTriple::new(raw.num_vertices, raw.num_edges, raw.num_faces);
    let mut s = IncidenceStructure::empty(triple);
    for (relation, entries) in [(Relation::VE, &raw.ve), (Relation::EF, &raw.ef), (Relation::VF, &raw.vf)] {
        let (rs, cs) = relation.sorts();
        let (rows, cols) = (triple.count(rs), triple.count(cs));
        let mut seen = BTreeSet::new();
        for (position, entry) in entries.iter().enumerate() {
            let &[row, col] = entry.as_slice() else {
                return Err(ModelFileError::DimensionMismatch { relation, position, len: entry.len() });
            };
            if row >= rows || col >= cols {
                return Err(ModelFileError::OutOfRange { relation, row, col, rows, cols });
            }
            if !seen.insert((row, col)) {
                return Err(ModelFileError::DuplicatePair { relation, row, col });
            }
            s.matrix_mut(relation).set(row, col, true);
        }
    }
    Ok(s)
}
