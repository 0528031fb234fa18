//! JSON documents read and written by the command-line tool.

use std::fs;
use std::path::Path;

use effectkit::{FpParam, Matrix, C64};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Square complex matrix as `{"n": 2, "rows": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &Matrix) -> Self {
        let n = m.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self { n, rows }
    }

    /// Checks shape and finiteness. Hermiticity is left to the consumer.
    pub fn to_matrix(&self) -> Result<Matrix, CliError> {
        if self.n == 0 {
            return Err(CliError::Usage("matrix must have n >= 1".into()));
        }
        if self.rows.len() != self.n {
            return Err(CliError::Usage(format!(
                "expected {} rows, found {}",
                self.n,
                self.rows.len()
            )));
        }
        let mut data = Vec::with_capacity(self.n * self.n);
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.n {
                return Err(CliError::Usage(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    self.n
                )));
            }
            for &[re, im] in row {
                if !(re.is_finite() && im.is_finite()) {
                    return Err(CliError::Usage(format!("row {i} has a non-finite entry")));
                }
                data.push(C64::new(re, im));
            }
        }
        Matrix::from_vec(self.n, data).map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// Ray file: `{"n": 2, "vector": [[re, im], ...]}`. Need not be normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayDocument {
    pub n: usize,
    pub vector: Vec<[f64; 2]>,
}

impl RayDocument {
    pub fn to_vector(&self) -> Result<Vec<C64>, CliError> {
        if self.vector.len() != self.n || self.n == 0 {
            return Err(CliError::Usage(format!(
                "ray declares n = {} but has {} entries",
                self.n,
                self.vector.len()
            )));
        }
        self.vector
            .iter()
            .map(|&[re, im]| {
                if re.is_finite() && im.is_finite() {
                    Ok(C64::new(re, im))
                } else {
                    Err(CliError::Usage("ray has a non-finite entry".into()))
                }
            })
            .collect()
    }
}

/// Map file: `{"U": MatrixDocument, "conjugate": bool, "p": number}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    #[serde(rename = "U")]
    pub u: MatrixDocument,
    pub conjugate: bool,
    pub p: f64,
}

impl MapDocument {
    pub fn to_automorphism(&self) -> Result<effectkit::EffectAutomorphism, CliError> {
        let u = self.u.to_matrix()?;
        let p = FpParam::new(self.p).map_err(|e| CliError::Usage(e.to_string()))?;
        effectkit::EffectAutomorphism::new(u, self.conjugate, p)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}
