//! JSON documents for curvature operators and their decompositions.

use nalgebra::{Matrix3, Matrix6};
use serde::{Deserialize, Serialize};

use crate::curvature::{CurvatureDecomposition, CurvatureOperator, Tolerances, TraceFree3};
use crate::error::{Error, Result};

/// Tag of the adapted basis `f1⁺, f2⁺, f3⁺, f1⁻, f2⁻, f3⁻`.
pub const BASIS_TAG: &str = "f-plus-minus-v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorDocument {
    pub basis: String,
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub w_plus: [[f64; 3]; 3],
    pub w_minus: [[f64; 3]; 3],
    pub mixed: [[f64; 3]; 3],
    pub scalar: f64,
}

fn rows3(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

fn matrix3(rows: &[[f64; 3]; 3]) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| rows[i][j])
}

impl From<&CurvatureOperator> for OperatorDocument {
    fn from(r: &CurvatureOperator) -> Self {
        let m = r.matrix();
        OperatorDocument {
            basis: BASIS_TAG.to_owned(),
            matrix: (0..6).map(|i| (0..6).map(|j| m[(i, j)]).collect()).collect(),
        }
    }
}

impl OperatorDocument {
    pub fn to_operator(&self, tol: &Tolerances) -> Result<CurvatureOperator> {
        if self.basis != BASIS_TAG {
            return Err(Error::InvalidParameter(format!(
                "unsupported basis `{}` (expected `{BASIS_TAG}`)",
                self.basis
            )));
        }
        if self.matrix.len() != 6 || self.matrix.iter().any(|r| r.len() != 6) {
            return Err(Error::InvalidParameter("operator matrix must be 6x6".into()));
        }
        if self.matrix.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("operator matrix has non-finite entries".into()));
        }
        CurvatureOperator::with_tolerances(Matrix6::from_fn(|i, j| self.matrix[i][j]), tol)
    }
}

impl From<&CurvatureDecomposition> for DecompositionDocument {
    fn from(d: &CurvatureDecomposition) -> Self {
        DecompositionDocument {
            w_plus: rows3(d.w_plus.matrix()),
            w_minus: rows3(d.w_minus.matrix()),
            mixed: rows3(&d.mixed),
            scalar: d.scalar,
        }
    }
}

impl DecompositionDocument {
    pub fn to_decomposition(&self) -> Result<CurvatureDecomposition> {
        let w = |rows: &[[f64; 3]; 3]| -> Result<TraceFree3> {
            let m = matrix3(rows);
            if (m - m.transpose()).amax() > Tolerances::default().symmetry * m.amax().max(1.0) {
                return Err(Error::InvalidParameter("Weyl blocks must be symmetric".into()));
            }
            TraceFree3::new(m)
        };
        Ok(CurvatureDecomposition {
            w_plus: w(&self.w_plus)?,
            w_minus: w(&self.w_minus)?,
            mixed: matrix3(&self.mixed),
            scalar: self.scalar,
        })
    }
}

pub fn read_operator(json: &str, tol: &Tolerances) -> Result<CurvatureOperator> {
    serde_json::from_str::<OperatorDocument>(json)?.to_operator(tol)
}

pub fn write_operator(r: &CurvatureOperator) -> String {
    serde_json::to_string_pretty(&OperatorDocument::from(r)).expect("plain data serializes")
}

pub fn read_decomposition(json: &str) -> Result<CurvatureDecomposition> {
    serde_json::from_str::<DecompositionDocument>(json)?.to_decomposition()
}

pub fn write_decomposition(d: &CurvatureDecomposition) -> String {
    serde_json::to_string_pretty(&DecompositionDocument::from(d)).expect("plain data serializes")
}
