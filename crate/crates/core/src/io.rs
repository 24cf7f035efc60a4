//! JSON schema for systems:
//!
//! ```json
//! {"d": 3, "k": [2, 2], "blocks": [[[[0, 0], [1, 0], [0, 0]], [[0, 0], [0, 0], [1, 0]]], ...]}
//! ```
//!
//! Each block is a row-major list of rows and each entry is `[re, im]`.
//! Finite doubles round-trip bit for bit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::linalg::{c, ComplexMatrix};
use crate::system::{ReconstructionSystem, Signature};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(#[from] Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub d: usize,
    pub k: Vec<usize>,
    pub blocks: Vec<Vec<Vec<[f64; 2]>>>,
}

impl From<&ReconstructionSystem> for SystemFile {
    fn from(v: &ReconstructionSystem) -> Self {
        let blocks = v
            .blocks()
            .iter()
            .map(|b| {
                (0..b.nrows())
                    .map(|i| (0..b.ncols()).map(|j| [b[(i, j)].re, b[(i, j)].im]).collect())
                    .collect()
            })
            .collect();
        Self { d: v.d(), k: v.k().to_vec(), blocks }
    }
}

impl TryFrom<SystemFile> for ReconstructionSystem {
    type Error = Error;

    fn try_from(file: SystemFile) -> Result<Self, Error> {
        let signature = Signature::new(file.k, file.d)?;
        if file.blocks.len() != signature.m() {
            return Err(Error::Shape(format!(
                "\"k\" lists {} blocks but \"blocks\" has {}",
                signature.m(),
                file.blocks.len()
            )));
        }
        let mut blocks = Vec::with_capacity(signature.m());
        for (i, rows) in file.blocks.iter().enumerate() {
            let ki = signature.k()[i];
            if rows.len() != ki {
                return Err(Error::Shape(format!("block {} has {} rows, expected {ki}", i + 1, rows.len())));
            }
            if let Some(r) = rows.iter().position(|row| row.len() != signature.d()) {
                return Err(Error::Shape(format!(
                    "block {} row {} has {} entries, expected {}",
                    i + 1,
                    r + 1,
                    rows[r].len(),
                    signature.d()
                )));
            }
            blocks.push(ComplexMatrix::from_fn(ki, signature.d(), |r, col| {
                let [re, im] = rows[r][col];
                c(re, im)
            }));
        }
        ReconstructionSystem::with_signature(signature, blocks)
    }
}

pub fn to_json(v: &ReconstructionSystem) -> String {
    serde_json::to_string(&SystemFile::from(v)).expect("finite doubles always serialize")
}

pub fn to_json_value(v: &ReconstructionSystem) -> serde_json::Value {
    serde_json::to_value(SystemFile::from(v)).expect("finite doubles always serialize")
}

pub fn from_json(text: &str) -> Result<ReconstructionSystem, SchemaError> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| SchemaError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(ReconstructionSystem::try_from(file)?)
}
