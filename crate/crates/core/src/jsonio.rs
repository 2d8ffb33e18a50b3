//! JSON encodings for matrices and vectors shared by the export formats.
//!
//! Complex numbers are encoded as `[re, im]` pairs; matrices as row-major
//! flat lists (with dimensions carried alongside) or as nested rows for
//! small gate blocks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};

pub type Pair = [f64; 2];

/// Row-major flat encoding of a matrix.
pub fn flat_from_matrix(m: &CMatrix) -> Vec<Pair> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            out.push([m[(r, c)].re, m[(r, c)].im]);
        }
    }
    out
}

pub fn matrix_from_flat(rows: usize, cols: usize, data: &[Pair]) -> Result<CMatrix> {
    if data.len() != rows * cols {
        return Err(Error::DimMismatch(format!(
            "expected {} entries for a {}x{} matrix, got {}",
            rows * cols,
            rows,
            cols,
            data.len()
        )));
    }
    Ok(CMatrix::from_fn(rows, cols, |r, c| {
        let p = data[r * cols + c];
        Complex64::new(p[0], p[1])
    }))
}

/// Nested-rows encoding, used for small gate blocks.
pub fn rows_from_matrix(m: &CMatrix) -> Vec<Vec<Pair>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

pub fn matrix_from_rows(rows: &[Vec<Pair>]) -> Result<CMatrix> {
    let nr = rows.len();
    let nc = rows.first().map(|r| r.len()).unwrap_or(0);
    if nr == 0 || nc == 0 || rows.iter().any(|r| r.len() != nc) {
        return Err(Error::DimMismatch("ragged or empty matrix rows".into()));
    }
    Ok(CMatrix::from_fn(nr, nc, |r, c| {
        Complex64::new(rows[r][c][0], rows[r][c][1])
    }))
}

pub fn pairs_from_vector(v: &CVector) -> Vec<Pair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn vector_from_pairs(data: &[Pair]) -> CVector {
    CVector::from_iterator(data.len(), data.iter().map(|p| Complex64::new(p[0], p[1])))
}

/// A matrix together with its shape, for standalone exports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Pair>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        Self {
            rows: m.nrows(),
            cols: m.ncols(),
            data: flat_from_matrix(m),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        matrix_from_flat(self.rows, self.cols, &self.data)
    }
}
