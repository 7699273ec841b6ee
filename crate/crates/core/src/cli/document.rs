//! JSON operator documents.
//!
//! ```json
//! {"label": "flip", "matrix": [[[0.5, 0.0], ...], ...]}
//! {"label": "wp", "pauli": {"a": [0, 0, 0], "b": [0, 0, 0], "T": [[1, 0, 0], [0, 1, 0], [0, 0, -0.6]]}}
//! ```
//!
//! Complex entries are `[re, im]` pairs. A file holds one document or an
//! array of them.

use nalgebra::{Matrix3, Matrix4, Vector3};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::linalg::C64;
use crate::pauli::{reconstruct, PauliForm, TwoQubitOperator};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliDocument {
    pub a: [f64; 3],
    pub b: [f64; 3],
    #[serde(rename = "T")]
    pub t: [[f64; 3]; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<[[[f64; 2]; 4]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<PauliDocument>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(Box<OperatorDocument>),
    Many(Vec<OperatorDocument>),
}

/// Parses a single document or an array; schema violations are parse
/// errors (exit code 2).
pub fn parse_documents(text: &str) -> Result<Vec<OperatorDocument>, CliError> {
    let docs = match serde_json::from_str::<OneOrMany>(text) {
        Ok(OneOrMany::One(d)) => vec![*d],
        Ok(OneOrMany::Many(v)) => v,
        Err(e) => return Err(CliError::parse(format!("invalid operator document: {e}"))),
    };
    for (i, d) in docs.iter().enumerate() {
        if d.matrix.is_some() == d.pauli.is_some() {
            return Err(CliError::parse(format!(
                "document {i}: exactly one of \"matrix\" or \"pauli\" must be given"
            )));
        }
    }
    Ok(docs)
}

impl OperatorDocument {
    pub fn from_operator(label: impl Into<String>, op: &TwoQubitOperator) -> Self {
        let m = op.matrix();
        Self {
            label: Some(label.into()),
            matrix: Some(std::array::from_fn(|r| {
                std::array::from_fn(|c| [clean(m[(r, c)].re), clean(m[(r, c)].im)])
            })),
            pauli: None,
        }
    }

    /// Validates Hermiticity and unit trace (or normalizes by the trace).
    pub fn to_operator(
        &self,
        normalize: bool,
        tolerance: f64,
    ) -> Result<TwoQubitOperator, CliError> {
        let m = if let Some(rows) = &self.matrix {
            Matrix4::from_fn(|r, c| C64::new(rows[r][c][0], rows[r][c][1]))
        } else if let Some(p) = &self.pauli {
            let form = PauliForm::new(
                Vector3::from(p.a),
                Vector3::from(p.b),
                Matrix3::from_fn(|r, c| p.t[r][c]),
            );
            *reconstruct(&form).matrix()
        } else {
            return Err(CliError::parse(
                "document has neither \"matrix\" nor \"pauli\"",
            ));
        };
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CliError::validation("operator has non-finite entries"));
        }
        let op = if normalize {
            TwoQubitOperator::normalize_with_tolerance(m, tolerance)
        } else {
            TwoQubitOperator::with_tolerance(m, tolerance, tolerance)
        };
        op.map_err(|e| CliError::validation(format!("{}: {e}", self.display_label())))
    }

    pub fn display_label(&self) -> &str {
        self.label.as_deref().unwrap_or("<unlabelled>")
    }
}

/// Drops signed zeros so printed documents are stable.
fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::flip_witness;

    #[test]
    fn matrix_round_trip() {
        let doc = OperatorDocument::from_operator("flip", &flip_witness());
        let text = serde_json::to_string(&doc).unwrap();
        let back = parse_documents(&text).unwrap();
        assert_eq!(back, vec![doc.clone()]);
        let op = back[0].to_operator(false, 1e-10).unwrap();
        assert_eq!(op, flip_witness());
    }

    #[test]
    fn pauli_form_and_arrays() {
        let text = r#"[{"pauli": {"a": [0,0,0], "b": [0,0,0], "T": [[1,0,0],[0,1,0],[0,0,1]]}},
                       {"label": "mm", "pauli": {"a": [0,0,0], "b": [0,0,0], "T": [[0,0,0],[0,0,0],[0,0,0]]}}]"#;
        let docs = parse_documents(text).unwrap();
        assert_eq!(docs.len(), 2);
        assert!(
            docs[0]
                .to_operator(false, 1e-10)
                .unwrap()
                .frobenius_distance(&flip_witness())
                < 1e-15
        );
    }

    #[test]
    fn schema_errors_are_parse_errors() {
        assert_eq!(parse_documents("{not json").unwrap_err().code, 2);
        assert_eq!(parse_documents(r#"{"label": "x"}"#).unwrap_err().code, 2);
        assert_eq!(parse_documents(r#"{"bogus": 1}"#).unwrap_err().code, 2);
    }

    #[test]
    fn validation_errors() {
        let mut rows = [[[0.0; 2]; 4]; 4];
        rows[0][0] = [2.0, 0.0];
        let doc = OperatorDocument {
            label: None,
            matrix: Some(rows),
            pauli: None,
        };
        assert_eq!(doc.to_operator(false, 1e-10).unwrap_err().code, 3);
        assert!(doc.to_operator(true, 1e-10).is_ok());
        rows[0][1] = [0.3, 0.0];
        let doc = OperatorDocument {
            label: None,
            matrix: Some(rows),
            pauli: None,
        };
        assert_eq!(doc.to_operator(true, 1e-10).unwrap_err().code, 3);
    }
}
