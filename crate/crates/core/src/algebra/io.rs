//! JSON interchange format for algebra definitions.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{AlgebraDef, Element, InverseRule};
use crate::error::{Error, Result};

/// On-disk form of an [`AlgebraDef`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    /// `dim³` values, `c[i][j][k]` row-major.
    pub structure_constants: Vec<f64>,
    pub unity: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_rep: Option<Vec<Vec<Vec<f64>>>>,
    pub inverse_rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one_norm_sq: Option<f64>,
}

impl From<&AlgebraDef> for AlgebraFile {
    fn from(a: &AlgebraDef) -> Self {
        AlgebraFile {
            name: Some(a.name().to_string()),
            dim: a.dim(),
            structure_constants: a.structure_constants().to_vec(),
            unity: a.unity().iter().copied().collect(),
            matrix_rep: a.matrix_rep().map(|rep| rep.iter().map(matrix_rows).collect()),
            inverse_rule: a.inverse_rule().to_string(),
            one_norm_sq: a.one_norm_sq_override(),
        }
    }
}

impl TryFrom<AlgebraFile> for AlgebraDef {
    type Error = Error;

    fn try_from(f: AlgebraFile) -> Result<Self> {
        let rule: InverseRule = f.inverse_rule.parse()?;
        let rep = match f.matrix_rep {
            None => None,
            Some(mats) => Some(mats.iter().map(|m| rows_matrix(m)).collect::<Result<Vec<_>>>()?),
        };
        AlgebraDef::new(
            f.name.unwrap_or_else(|| "custom".to_string()),
            f.dim,
            f.structure_constants,
            Element::from_vec(f.unity),
            rep,
            rule,
            f.one_norm_sq,
        )
    }
}

impl AlgebraDef {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraFile::from(self)).expect("algebra serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        f.try_into()
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// Row-major nested vectors of a matrix.
pub fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// Matrix from row-major nested vectors; rows must share a length.
pub fn rows_matrix(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    Ok(DMatrix::from_fn(r, c, |i, j| rows[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lookup;

    #[test]
    fn json_round_trip() {
        for id in ["C", "A13", "ipsg(2,1)", "O"] {
            let a = lookup(id).unwrap();
            let back = AlgebraDef::from_json(&a.to_json()).unwrap();
            assert_eq!(a, back, "{id}");
        }
    }

    #[test]
    fn minimal_file_parses() {
        let text = r#"{"dim":1,"structure_constants":[1.0],"unity":[1.0],"inverse_rule":"associative_solve","one_norm_sq":1.0}"#;
        let a = AlgebraDef::from_json(text).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.one_norm_sq().unwrap(), 1.0);
    }

    #[test]
    fn wrong_constant_count_is_rejected() {
        let text = r#"{"dim":2,"structure_constants":[1.0],"unity":[1.0,0.0],"inverse_rule":"associative_solve"}"#;
        assert!(matches!(AlgebraDef::from_json(text), Err(Error::DimensionMismatch { .. })));
    }
}
