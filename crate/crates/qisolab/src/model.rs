//! Matrix models: assignments of generator labels to square matrices.
//!
//! Models come either from the built-in catalog ([`crate::presets`]) or from
//! JSON files of the form
//!
//! ```json
//! {
//!   "root_order": 8,
//!   "dim": 2,
//!   "assign": {
//!     "A": [["0", "1/2 z(8,1) + 1/2 z(8,7)"], ["1/2 z(8,1) + 1/2 z(8,7)", "0"]]
//!   }
//! }
//! ```
//!
//! with every entry a scalar literal (`p/q`, `z(N,k)`, sums/products).

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::cyclotomic::{ArithError, CyclotomicScalar};
use crate::matrix::Matrix;
use crate::parse::{parse_scalar, ParseError};

#[derive(Debug, Clone)]
pub struct MatrixModel {
    pub name: String,
    /// Common cyclotomic order of all entries.
    pub root_order: u32,
    /// All assigned matrices are `dim x dim`.
    pub dim: usize,
    pub assign: BTreeMap<String, Matrix>,
}

#[derive(Debug)]
pub enum ModelError {
    Json(String),
    Scalar(ParseError),
    Arith(ArithError),
    Shape { label: String, expected: usize, rows: usize, cols: usize },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Json(e) => write!(f, "invalid model file: {e}"),
            ModelError::Scalar(e) => write!(f, "invalid model entry: {e}"),
            ModelError::Arith(e) => write!(f, "{e}"),
            ModelError::Shape { label, expected, rows, cols } => write!(
                f,
                "matrix for `{label}` must be {expected}x{expected}, got {rows}x{cols}"
            ),
        }
    }
}

impl std::error::Error for ModelError {}

impl From<ParseError> for ModelError {
    fn from(e: ParseError) -> Self {
        ModelError::Scalar(e)
    }
}

impl From<ArithError> for ModelError {
    fn from(e: ArithError) -> Self {
        ModelError::Arith(e)
    }
}

#[derive(Deserialize)]
struct RawModel {
    root_order: u32,
    dim: usize,
    assign: BTreeMap<String, Vec<Vec<String>>>,
}

impl MatrixModel {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        MatrixModel {
            name: name.into(),
            root_order: 1,
            dim,
            assign: BTreeMap::new(),
        }
    }

    pub fn assign(&mut self, label: impl Into<String>, m: Matrix) -> Result<(), ModelError> {
        let label = label.into();
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(ModelError::Shape {
                label,
                expected: self.dim,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        self.assign.insert(label, m);
        self.root_order = self
            .assign
            .values()
            .map(|m| m.entry(0, 0).order())
            .fold(1u32, num_integer::lcm);
        Ok(())
    }

    pub fn matrix(&self, label: &str) -> Option<&Matrix> {
        self.assign.get(label)
    }

    /// Loads a model from its JSON file format.
    pub fn from_json_str(name: impl Into<String>, text: &str) -> Result<Self, ModelError> {
        let raw: RawModel =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        let mut model = MatrixModel::new(name, raw.dim);
        for (label, rows) in raw.assign {
            if rows.len() != raw.dim || rows.iter().any(|r| r.len() != raw.dim) {
                return Err(ModelError::Shape {
                    label,
                    expected: raw.dim,
                    rows: rows.len(),
                    cols: rows.first().map_or(0, Vec::len),
                });
            }
            let mut entries = Vec::with_capacity(raw.dim * raw.dim);
            for row in &rows {
                for cell in row {
                    entries.push(parse_scalar(cell)?);
                }
            }
            let m = Matrix::new(raw.dim, raw.dim, entries)?;
            model.assign(label, m)?;
        }
        // The declared root order must be compatible with the parsed entries.
        if model.root_order != 1 && !raw.root_order.is_multiple_of(model.root_order) {
            return Err(ModelError::Json(format!(
                "declared root_order {} is not a multiple of the entries' order {}",
                raw.root_order, model.root_order
            )));
        }
        model.root_order = raw.root_order.max(model.root_order);
        Ok(model)
    }

    /// Doubles the model block-diagonally: every matrix `M` becomes
    /// `M (+) M`.  Used by the real-structure extension.
    pub fn doubled(&self) -> MatrixModel {
        let mut out = MatrixModel::new(format!("{} (doubled)", self.name), 2 * self.dim);
        for (label, m) in &self.assign {
            out.assign(label.clone(), m.direct_sum(m)).expect("doubling preserves shape");
        }
        out
    }

    /// The scalar unit `q = I (+) (-I)` in the doubled dimension.
    pub fn grading_unit(dim: usize) -> Matrix {
        let id = Matrix::identity(dim);
        id.direct_sum(&-&id)
    }

    pub fn scalar_model(name: impl Into<String>, assign: &[(&str, CyclotomicScalar)]) -> Self {
        let mut m = MatrixModel::new(name, 1);
        for (label, s) in assign {
            m.assign(
                *label,
                Matrix::new(1, 1, vec![s.clone()]).expect("1x1 matrix"),
            )
            .expect("1x1 matrices always fit");
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "root_order": 8,
            "dim": 2,
            "assign": {
                "A": [["0", "1/2 z(8,1) + 1/2 z(8,7)"],
                      ["1/2 z(8,1) + 1/2 z(8,7)", "0"]]
            }
        }"#;
        let model = MatrixModel::from_json_str("pauli-x", text).unwrap();
        let a = model.matrix("A").unwrap();
        let expected = crate::matrix::pauli(1)
            .scale(&crate::cyclotomic::inv_sqrt2())
            .unwrap();
        assert_eq!(*a, expected);
        assert_eq!(model.root_order, 8);
    }

    #[test]
    fn shape_errors_are_reported() {
        let text = r#"{"root_order": 1, "dim": 2, "assign": {"A": [["1"]]}}"#;
        let err = MatrixModel::from_json_str("bad", text).unwrap_err();
        assert!(matches!(err, ModelError::Shape { .. }));
    }

    #[test]
    fn doubled_model_and_grading_unit() {
        let model =
            MatrixModel::scalar_model("m", &[("A", crate::cyclotomic::imaginary_unit())]);
        let d = model.doubled();
        assert_eq!(d.dim, 2);
        let q = MatrixModel::grading_unit(1);
        let a = d.matrix("A").unwrap();
        // q commutes with every doubled matrix.
        assert_eq!(q.mul(a).unwrap(), a.mul(&q).unwrap());
        assert_eq!(q.mul(&q).unwrap(), Matrix::identity(2));
        // The trivial unit q = I satisfies the same commutation conditions
        // vacuously.
        let trivial = Matrix::identity(2);
        let f = trivial.classify();
        assert!(f.is_self_adjoint && f.is_unitary);
        assert_eq!(trivial.mul(a).unwrap(), a.mul(&trivial).unwrap());
    }
}
