//! Dense complex matrices and the handful of decompositions the rest of the
//! crate needs.
//!
//! Matrices are `nalgebra` dynamic matrices over `Complex64`. Flattening to a
//! vector is always row-major: entry `(i, j)` of an `r x c` matrix lands at
//! position `i * c + j`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A dense complex matrix (row-major when flattened or serialized).
pub type DenseMatrix = DMatrix<C64>;

/// A dense complex column vector.
pub type DenseVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Builds a matrix from row-major rows.
pub fn from_rows(rows: &[&[C64]]) -> DenseMatrix {
    let r = rows.len();
    let cols = rows.first().map_or(0, |row| row.len());
    DenseMatrix::from_fn(r, cols, |i, j| rows[i][j])
}

pub fn identity(n: usize) -> DenseMatrix {
    DenseMatrix::identity(n, n)
}

/// Embeds a real matrix.
pub fn complexify(m: &DMatrix<f64>) -> DenseMatrix {
    m.map(re)
}

pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a.kronecker(b)
}

/// `ab + ba`.
pub fn anticommutator(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a * b + b * a
}

/// Frobenius norm.
pub fn frobenius(m: &DenseMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry modulus.
pub fn max_abs(m: &DenseMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// True when every entry is exactly zero.
pub fn is_exact_zero(m: &DenseMatrix) -> bool {
    m.iter().all(|z| z.re == 0.0 && z.im == 0.0)
}

/// True when `m` equals `s * I` with no rounding.
pub fn is_exact_scalar(m: &DenseMatrix, s: C64) -> bool {
    m.is_square()
        && m.iter().enumerate().all(|(k, z)| {
            let (j, i) = (k / m.nrows(), k % m.nrows());
            let want = if i == j { s } else { ZERO };
            *z == want
        })
}

pub fn inverse(m: &DenseMatrix) -> Result<DenseMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "cannot invert a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let inv = m.clone().try_inverse().ok_or(Error::Singular)?;
    if inv.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Singular);
    }
    Ok(inv)
}

/// Row-major flattening.
pub fn vec_row_major(m: &DenseMatrix) -> DenseVector {
    let (r, cols) = m.shape();
    DenseVector::from_fn(r * cols, |k, _| m[(k / cols, k % cols)])
}

/// Inverse of [`vec_row_major`].
pub fn unvec_row_major(v: &DenseVector, rows: usize, cols: usize) -> DenseMatrix {
    assert_eq!(v.len(), rows * cols, "vector length does not match shape");
    DenseMatrix::from_fn(rows, cols, |i, j| v[i * cols + j])
}

/// Result of Gauss-Jordan elimination with full pivoting.
struct Elimination {
    rank: usize,
    reduced: DenseMatrix,
    col_perm: Vec<usize>,
}

/// Reduces `m` with full pivoting. Elimination stops once the largest
/// remaining entry falls below `rel_tol` times the first (largest) pivot.
fn eliminate(m: &DenseMatrix, rel_tol: f64) -> Elimination {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut first_pivot = 0.0;
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best = (k, k, 0.0);
        for i in k..rows {
            for j in k..cols {
                let v = a[(i, j)].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if k == 0 {
            first_pivot = best.2;
        }
        if best.2 == 0.0 || best.2 <= rel_tol * first_pivot {
            break;
        }
        a.swap_rows(k, best.0);
        a.swap_columns(k, best.1);
        col_perm.swap(k, best.1);
        let pivot = a[(k, k)];
        for j in 0..cols {
            a[(k, j)] /= pivot;
        }
        for i in 0..rows {
            if i != k {
                let f = a[(i, k)];
                if f != ZERO {
                    for j in 0..cols {
                        let t = a[(k, j)];
                        a[(i, j)] -= f * t;
                    }
                }
            }
        }
        rank += 1;
    }
    Elimination {
        rank,
        reduced: a,
        col_perm,
    }
}

/// Numerical rank by full-pivot elimination.
pub fn rank(m: &DenseMatrix, rel_tol: f64) -> usize {
    eliminate(m, rel_tol).rank
}

/// Basis of the right null space, one vector per free column.
pub fn null_space(m: &DenseMatrix, rel_tol: f64) -> Vec<DenseVector> {
    let cols = m.ncols();
    let e = eliminate(m, rel_tol);
    let r = e.rank;
    (r..cols)
        .map(|free| {
            let mut x = DenseVector::zeros(cols);
            x[e.col_perm[free]] = ONE;
            for p in 0..r {
                x[e.col_perm[p]] = -e.reduced[(p, free)];
            }
            x
        })
        .collect()
}

/// Singular value decomposition with singular values sorted non-increasing.
///
/// Returns `(u, sigma, v)` with `m = u * diag(sigma) * v^H`; columns of `u`
/// belonging to zero singular values are zero. Uses one-sided
/// Jacobi rotations on the columns; nalgebra's complex bidiagonal SVD can
/// return a factorization that does not reconstruct its input.
pub fn svd_sorted(m: &DenseMatrix) -> (DenseMatrix, Vec<f64>, DenseMatrix) {
    let (rows, cols) = m.shape();
    let mut w = m.clone();
    let mut v = DenseMatrix::identity(cols, cols);
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate column q by the phase of gamma, then apply a real
                // Jacobi rotation to the pair.
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for mat in [&mut w, &mut v] {
                    for i in 0..mat.nrows() {
                        let a = mat[(i, p)];
                        let b = mat[(i, q)] * phase;
                        mat[(i, p)] = a * c - b * s;
                        mat[(i, q)] = a * s + b * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..cols).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let k = rows.min(cols);
    let sigma: Vec<f64> = order.iter().take(k).map(|&j| norms[j]).collect();
    let u = DenseMatrix::from_fn(rows, k, |i, j| {
        let n = norms[order[j]];
        if n > 0.0 {
            w[(i, order[j])] / n
        } else {
            ZERO
        }
    });
    let v_sorted = DenseMatrix::from_fn(cols, k, |i, j| v[(i, order[j])]);
    (u, sigma, v_sorted)
}

/// Serialized form of a dense matrix: `{"rows", "cols", "re", "im"}` with
/// row-major entry lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&DenseMatrix> for DenseMatrixJson {
    fn from(m: &DenseMatrix) -> Self {
        let v = vec_row_major(m);
        DenseMatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<DenseMatrixJson> for DenseMatrix {
    type Error = Error;

    fn try_from(j: DenseMatrixJson) -> Result<Self> {
        let n = j.rows * j.cols;
        if j.re.len() != n || j.im.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {n} entries, got re={} im={}",
                j.rows,
                j.cols,
                j.re.len(),
                j.im.len()
            )));
        }
        let v = DenseVector::from_fn(n, |k, _| c(j.re[k], j.im[k]));
        Ok(unvec_row_major(&v, j.rows, j.cols))
    }
}

pub fn matrix_to_json(m: &DenseMatrix) -> serde_json::Value {
    serde_json::to_value(DenseMatrixJson::from(m)).expect("matrix serializes")
}

pub fn matrix_from_json_str(s: &str) -> Result<DenseMatrix> {
    let j: DenseMatrixJson = serde_json::from_str(s)?;
    DenseMatrix::try_from(j)
}
