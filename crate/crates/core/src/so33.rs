//! The action of GL(4) on two-forms in the basis that diagonalizes the
//! Plucker quadratic form `p01 p23 + p02 p31 + p03 p12`, and the resulting
//! two-to-one map from SL(4) onto a group preserving a form of signature
//! (3, 3).

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{basis_order, FormIndex, MetricTensor, NonhomogeneousForm};
use crate::gl4::{form_action, LinearMap4};
use crate::linalg::{complexify, re, DenseMatrixJson, ONE, ZERO};

/// `J = diag(1, 1, 1, -1, -1, -1)`.
pub fn j_matrix() -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 1.0, -1.0, -1.0, -1.0]))
}

/// Antisymmetric coefficients `p^{jk}` of a two-form `sum_{j<k} p^{jk} dx_j ^ dx_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoFormCoords {
    pub p: [[f64; 4]; 4],
}

impl TwoFormCoords {
    /// From `(p01, p02, p03, p12, p13, p23)`.
    pub fn new(p01: f64, p02: f64, p03: f64, p12: f64, p13: f64, p23: f64) -> Self {
        let mut p = [[0.0; 4]; 4];
        for (j, k, v) in [(0, 1, p01), (0, 2, p02), (0, 3, p03), (1, 2, p12), (1, 3, p13), (2, 3, p23)] {
            p[j][k] = v;
            p[k][j] = -v;
        }
        TwoFormCoords { p }
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.p[j][k]
    }

    /// `p01 p23 + p02 p31 + p03 p12`.
    pub fn plucker(&self) -> f64 {
        self.get(0, 1) * self.get(2, 3) + self.get(0, 2) * self.get(3, 1) + self.get(0, 3) * self.get(1, 2)
    }

    pub fn to_form(&self) -> NonhomogeneousForm {
        let mut f = NonhomogeneousForm::zero();
        for j in 0..4 {
            for k in j + 1..4 {
                f.set((1 << j) | (1 << k), re(self.p[j][k]));
            }
        }
        f
    }

    /// Grade-two real parts of a form.
    pub fn from_form(f: &NonhomogeneousForm) -> Self {
        let c = |j: usize, k: usize| f.coeff((1 << j) | (1 << k)).re;
        Self::new(c(0, 1), c(0, 2), c(0, 3), c(1, 2), c(1, 3), c(2, 3))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.p
            .iter()
            .flatten()
            .zip(other.p.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Coordinates `q_1..q_6` of a two-form in the basis `eta_1..eta_6`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QCoords {
    pub q: [f64; 6],
}

impl QCoords {
    /// `q1^2 + q2^2 + q3^2 - q4^2 - q5^2 - q6^2`.
    pub fn quadratic(&self) -> f64 {
        let q = &self.q;
        q[0] * q[0] + q[1] * q[1] + q[2] * q[2] - q[3] * q[3] - q[4] * q[4] - q[5] * q[5]
    }
}

/// `q_1 = (p01 + p23)/2`, `q_2 = (p02 + p31)/2`, `q_3 = (p03 + p12)/2`, and
/// `q_4..q_6` with the second terms subtracted.
pub fn p_to_q(p: &TwoFormCoords) -> QCoords {
    let (a, b, c) = (p.get(0, 1), p.get(0, 2), p.get(0, 3));
    let (x, y, z) = (p.get(2, 3), p.get(3, 1), p.get(1, 2));
    QCoords {
        q: [(a + x) / 2.0, (b + y) / 2.0, (c + z) / 2.0, (a - x) / 2.0, (b - y) / 2.0, (c - z) / 2.0],
    }
}

pub fn q_to_p(q: &QCoords) -> TwoFormCoords {
    let q = &q.q;
    let p01 = q[0] + q[3];
    let p23 = q[0] - q[3];
    let p02 = q[1] + q[4];
    let p31 = q[1] - q[4];
    let p03 = q[2] + q[5];
    let p12 = q[2] - q[5];
    TwoFormCoords::new(p01, p02, p03, p12, -p31, p23)
}

/// `eta_1 = dx01 + dx23`, `eta_2 = dx02 + dx31`, `eta_3 = dx03 + dx12`, and
/// `eta_4..eta_6` with the second terms subtracted.
pub fn eta_basis() -> [NonhomogeneousForm; 6] {
    let pairs = [(0b0011u8, 0b1100u8, 1.0), (0b0101, 0b1010, -1.0), (0b1001, 0b0110, 1.0)];
    std::array::from_fn(|i| {
        let (a, b, sb) = pairs[i % 3];
        let sign = if i < 3 { 1.0 } else { -1.0 };
        NonhomogeneousForm::from_terms(&[(a, ONE), (b, re(sign * sb))])
    })
}

/// Positions of the six two-forms in the canonical sixteen basis.
fn grade_two_positions() -> Vec<usize> {
    basis_order()
        .iter()
        .filter(|m| m.count_ones() == 2)
        .map(|&m| FormIndex(m).position())
        .collect()
}

/// Columns are the `eta_i` over `dx01, dx02, dx03, dx12, dx13, dx23`.
pub fn eta_matrix() -> DMatrix<f64> {
    let pos = grade_two_positions();
    let eta = eta_basis();
    DMatrix::from_fn(6, 6, |r, c| eta[c].coeffs[pos[r]].re)
}

/// Gram matrix of the eta basis under the symmetric bilinear form whose
/// quadratic form is the Plucker value.
pub fn eta_gram() -> DMatrix<f64> {
    let eta = eta_basis();
    let q = |f: &NonhomogeneousForm| TwoFormCoords::from_form(f).plucker();
    DMatrix::from_fn(6, 6, |i, j| {
        (q(&eta[i].add(&eta[j])) - q(&eta[i]) - q(&eta[j])) / 2.0
    })
}

/// Gram matrix of the eta basis under `eta_i ^ eta_j = B_ij vol`.
pub fn eta_wedge_gram() -> DMatrix<f64> {
    let eta = eta_basis();
    DMatrix::from_fn(6, 6, |i, j| eta[i].wedge(&eta[j]).coeff(0b1111).re)
}

/// The two-form action of a 4x4 map in the eta basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SixMap {
    pub matrix: DMatrix<f64>,
    pub det: f64,
    /// `||M^T J M - det(G) J||_F`.
    pub form_residual: f64,
}

impl Serialize for SixMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SixMap", 3)?;
        st.serialize_field("matrix", &DenseMatrixJson::from(&complexify(&self.matrix)))?;
        st.serialize_field("det", &self.det)?;
        st.serialize_field("form_residual", &self.form_residual)?;
        st.end()
    }
}

/// `M = E^-1 C_2(G) E` where `C_2` is the grade-two block of the form
/// action and `E` holds the eta basis; `E^-1 = E^T / 2`.
pub fn induced_six_map(g: &LinearMap4) -> SixMap {
    let fa = form_action(g);
    let pos = grade_two_positions();
    let c2 = DMatrix::from_fn(6, 6, |r, c| fa[(pos[r], pos[c])].re);
    let e = eta_matrix();
    let matrix = e.transpose() * c2 * &e / 2.0;
    let j = j_matrix();
    let det = g.det();
    let form_residual = (matrix.transpose() * &j * &matrix - &j * det).norm();
    SixMap { matrix, det, form_residual }
}

/// Factor by which `lambda I` scales each grade `0..=4`, checked to be a
/// multiple of the identity on that grade.
pub fn dilation_grade_check(lambda: f64) -> Result<[f64; 5]> {
    if lambda <= 0.0 {
        return Err(Error::OutOfRange(format!("lambda = {lambda} must be positive")));
    }
    let g = LinearMap4::new(nalgebra::Matrix4::identity() * lambda)?;
    let fa = form_action(&g);
    let order = basis_order();
    let mut factors = [0.0; 5];
    for k in 0..=4 {
        let idx: Vec<usize> = (0..16).filter(|&p| order[p].count_ones() as usize == k).collect();
        let f = fa[(idx[0], idx[0])];
        for &r in &idx {
            for c in 0..16 {
                let want = if c == r { f } else { ZERO };
                if fa[(r, c)] != want {
                    return Err(Error::RelationCheck(format!("grade {k} is not scaled uniformly")));
                }
            }
        }
        factors[k] = f.re;
    }
    Ok(factors)
}

/// The Hodge star restricted to two-forms, in the eta basis.
pub fn hodge_on_eta(g: &MetricTensor) -> Result<DMatrix<f64>> {
    let eta = eta_basis();
    let e = eta_matrix();
    let pos = grade_two_positions();
    let mut m = DMatrix::zeros(6, 6);
    for (c, f) in eta.iter().enumerate() {
        let s = crate::exterior::hodge_star(f, g)?;
        let v = nalgebra::DVector::from_fn(6, |r, _| s.coeffs[pos[r]].re);
        m.set_column(c, &(e.transpose() * v / 2.0));
    }
    Ok(m)
}
