//! JSON state files.
//!
//! ```json
//! {"dims": [2, 2], "pure": [[0, 0], [0.7071, 0], [-0.7071, 0], [0, 0]]}
//! {"dims": [2], "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs; matrices are row-major.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::CMatrix;
use crate::qstate::{self, DensityMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

/// Reasons a state file cannot be turned into a density matrix.
#[derive(Debug, thiserror::Error)]
pub enum StateFileError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

fn c(pair: &[f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

impl StateFile {
    pub fn from_json(text: &str) -> std::result::Result<Self, StateFileError> {
        let file: StateFile = serde_json::from_str(text).map_err(|e| StateFileError::Parse(e.to_string()))?;
        match (&file.pure, &file.matrix) {
            (Some(_), None) | (None, Some(_)) => Ok(file),
            _ => Err(StateFileError::Parse(
                "exactly one of \"pure\" or \"matrix\" must be present".into(),
            )),
        }
    }

    /// Full matrix form of a density matrix.
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let rows = (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|col| [m[(r, col)].re, m[(r, col)].im]).collect())
            .collect();
        StateFile {
            dims: rho.dims().to_vec(),
            pure: None,
            matrix: Some(rows),
        }
    }

    pub fn to_density(&self) -> std::result::Result<DensityMatrix, StateFileError> {
        if let Some(amps) = &self.pure {
            let amps: Vec<Complex64> = amps.iter().map(c).collect();
            return Ok(qstate::from_pure(&amps, &self.dims)?);
        }
        let rows = self.matrix.as_ref().expect("checked in from_json");
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: bad.len() }.into());
        }
        let m = CMatrix::from_fn(n, n, |r, col| c(&rows[r][col]));
        Ok(qstate::validate(m, &self.dims)?)
    }
}

/// Parses and validates a state file in one step.
pub fn read_state(text: &str) -> std::result::Result<DensityMatrix, StateFileError> {
    StateFile::from_json(text)?.to_density()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_and_matrix_forms() {
        let rho = read_state(r#"{"dims":[2,2],"pure":[[0,0],[1,0],[-1,0],[0,0]]}"#).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        let text = serde_json::to_string(&StateFile::from_density(&rho)).unwrap();
        let back = read_state(&text).unwrap();
        assert!(crate::linalg::max_abs_diff(back.matrix(), rho.matrix()) < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(read_state("{"), Err(StateFileError::Parse(_))));
        assert!(matches!(read_state(r#"{"dims":[2]}"#), Err(StateFileError::Parse(_))));
        assert!(matches!(
            read_state(r#"{"dims":[2],"pure":[[1,0],[0,0]],"matrix":[]}"#),
            Err(StateFileError::Parse(_))
        ));
        let not_psd = r#"{"dims":[2],"matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]}"#;
        assert!(matches!(
            read_state(not_psd),
            Err(StateFileError::Invalid(Error::NotPsd { .. }))
        ));
        let ragged = r#"{"dims":[2],"matrix":[[[1,0],[0,0]],[[0,0]]]}"#;
        assert!(matches!(read_state(ragged), Err(StateFileError::Invalid(Error::NotSquare { .. }))));
    }
}
