//! Dense square complex matrices and the handful of operations the rest of
//! the crate needs on them.
//!
//! Indices are zero-based throughout the API; labels and reports print
//! them one-based, matching the usual `E_12` notation.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense `n x n` complex matrix. Group elements, algebra elements and
/// representation matrices all share this type.
pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn zeros(n: usize) -> CMatrix {
    CMatrix::zeros(n, n)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// `E_ij`: a single unit entry at row `i`, column `j`.
pub fn elementary(n: usize, i: usize, j: usize) -> Result<CMatrix> {
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange { dim: n, row: i, col: j });
    }
    let mut m = zeros(n);
    m[(i, j)] = real(1.0);
    Ok(m)
}

/// Diagonal projector `T_j`.
pub fn diagonal_unit(n: usize, j: usize) -> Result<CMatrix> {
    elementary(n, j, j)
}

pub fn from_real_diagonal(d: &[f64]) -> CMatrix {
    let n = d.len();
    CMatrix::from_fn(n, n, |r, c| if r == c { real(d[r]) } else { real(0.0) })
}

/// `diag(e^{i theta_1}, ..., e^{i theta_N})`.
pub fn torus_element(theta: &[f64]) -> CMatrix {
    let n = theta.len();
    CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::from_polar(1.0, theta[r])
        } else {
            real(0.0)
        }
    })
}

pub fn check_same_dim(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { left: a.nrows(), right: b.nrows() });
    }
    Ok(())
}

/// `VW - WV`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    check_same_dim(a, b)?;
    Ok(bracket(a, b))
}

/// Unchecked commutator for internal use where dimensions are known.
pub(crate) fn bracket(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// The bi-invariant inner product `g(V, W) = -Tr(VW)`. Real whenever both
/// arguments are skew-hermitian.
pub fn trace_metric(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    check_same_dim(a, b)?;
    Ok(metric(a, b))
}

pub(crate) fn metric(a: &CMatrix, b: &CMatrix) -> Complex64 {
    // Tr(AB) without forming the product.
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..n {
        for k in 0..n {
            acc += a[(r, k)] * b[(k, r)];
        }
    }
    -acc
}

/// Largest entry modulus.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `max |(M^dagger M - I)_ij|`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_diff(&(m.adjoint() * m), &identity(n))
}

pub fn skew_hermitian_defect(m: &CMatrix) -> f64 {
    max_norm(&(m + m.adjoint()))
}

pub fn hermitian_defect(m: &CMatrix) -> f64 {
    max_norm(&(m - m.adjoint()))
}

pub fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if r != c {
                worst = worst.max(m[(r, c)].norm());
            }
        }
    }
    worst
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Kronecker product `A (x) B`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Matrix exponential.
pub fn expm(m: &CMatrix) -> CMatrix {
    m.clone().exp()
}

/// Serialized matrix: `{ "dim": n, "rows": [[[re, im], ...], ...] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        MatrixJson { dim: m.nrows(), rows: rows_of(m) }
    }

    /// Validates shape and finiteness.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let m = matrix_from_rows(&self.rows)?;
        if m.nrows() != self.dim {
            return Err(Error::InvalidMatrix(format!(
                "declared dim {} but found {} rows",
                self.dim,
                m.nrows()
            )));
        }
        Ok(m)
    }
}

pub fn rows_of(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

pub fn matrix_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidMatrix("empty matrix".into()));
    }
    if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(Error::InvalidMatrix(format!(
            "row {} has {} entries, expected {n}",
            r + 1,
            row.len()
        )));
    }
    let m = CMatrix::from_fn(n, n, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1]));
    if !is_finite(&m) {
        return Err(Error::InvalidMatrix("non-finite entry".into()));
    }
    Ok(m)
}
