//! The GL(4) action on the sixteen-dimensional spaces of forms and of 4x4
//! matrices, spin representations of Lorentz maps, and operator-Schmidt
//! factorization.
//!
//! Conventions:
//!
//! - A 4x4 matrix `A` acts on column vectors. On forms it substitutes
//!   `dx_j -> sum_k A_kj dx_k`, so [`form_action`] is a homomorphism.
//! - Maps on `M(4, C)` ([`LinearMap16`]) act on the row-major flattening of
//!   the matrix, so `Psi -> X Psi Y` has matrix `X (x) Y^T`.
//! - Spin elements satisfy `S gamma^k S^-1 = sum_j L_jk gamma^j`.

use nalgebra::{DMatrix, Matrix4};
use serde::Serialize;

use crate::blade::{self, Parity, Signature};
use crate::error::{Error, Result};
use crate::exterior::{basis_order, FormIndex, NonhomogeneousForm, OperatorMatrix16};
use crate::linalg::{
    complexify, frobenius, identity, inverse, kron, max_abs, rank, re, svd_sorted,
    unvec_row_major, vec_row_major, DenseMatrix, DenseMatrixJson, DenseVector, C64, ZERO,
};
use crate::matrix_rep::{
    dirac_momentum_matrix, pauli_matrices, plane_wave_solutions, GammaRep, Momentum4, RepLabel,
    MINKOWSKI,
};

/// Tolerance on `||A g A^T - g||` for the isometry flag.
pub const ISOMETRY_TOL: f64 = 1e-9;

/// An invertible real 4x4 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap4 {
    a: Matrix4<f64>,
    inv: Matrix4<f64>,
    det: f64,
}

impl LinearMap4 {
    pub fn new(a: Matrix4<f64>) -> Result<Self> {
        let det = a.determinant();
        let inv = a.try_inverse().ok_or(Error::Singular)?;
        let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if det == 0.0 || det.abs() <= 1e-14 * scale.powi(4) || inv.iter().any(|x| !x.is_finite()) {
            return Err(Error::Singular);
        }
        Ok(LinearMap4 { a, inv, det })
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Result<Self> {
        Self::new(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn from_dmatrix(m: &DMatrix<f64>) -> Result<Self> {
        if m.shape() != (4, 4) {
            return Err(Error::DimensionMismatch(format!("expected 4x4, got {}x{}", m.nrows(), m.ncols())));
        }
        Self::new(Matrix4::from_fn(|i, j| m[(i, j)]))
    }

    pub fn identity() -> Self {
        Self::new(Matrix4::identity()).expect("identity is invertible")
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.a
    }

    pub fn inverse(&self) -> &Matrix4<f64> {
        &self.inv
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(4, 4, |i, j| self.a[(i, j)])
    }

    pub fn compose(&self, other: &LinearMap4) -> Result<LinearMap4> {
        Self::new(self.a * other.a)
    }

    pub fn neg(&self) -> LinearMap4 {
        LinearMap4 { a: -self.a, inv: -self.inv, det: self.det }
    }

    /// `||A g A^T - g||_F` for a diagonal metric.
    pub fn isometry_defect(&self, diag: &[f64; 4]) -> f64 {
        let g = Matrix4::from_diagonal(&nalgebra::Vector4::from_column_slice(diag));
        (self.a * g * self.a.transpose() - g).norm()
    }

    /// `||A^T g A - g||_F` for a diagonal metric.
    pub fn dual_isometry_defect(&self, diag: &[f64; 4]) -> f64 {
        let g = Matrix4::from_diagonal(&nalgebra::Vector4::from_column_slice(diag));
        (self.a.transpose() * g * self.a - g).norm()
    }

    pub fn is_isometry(&self, diag: &[f64; 4]) -> bool {
        self.isometry_defect(diag) <= ISOMETRY_TOL
    }

    pub fn condition_number(&self) -> f64 {
        let s = self.a.singular_values();
        s.max() / s.min()
    }
}

/// `diag(1, -1, -1, -1)`.
pub fn minkowski_diag() -> [f64; 4] {
    MINKOWSKI
}

/// Rotation by `phi` in the `(i, j)` plane: `a_ii = a_jj = cos`,
/// `a_ij = sin`, `a_ji = -sin`.
pub fn rotation(i: usize, j: usize, phi: f64) -> LinearMap4 {
    let mut a = Matrix4::identity();
    let (s, c) = phi.sin_cos();
    a[(i, i)] = c;
    a[(j, j)] = c;
    a[(i, j)] = s;
    a[(j, i)] = -s;
    LinearMap4::new(a).expect("rotation is invertible")
}

/// Boost with rapidity `v` mixing `t` with spatial axis `k`.
pub fn boost(k: usize, v: f64) -> LinearMap4 {
    let mut a = Matrix4::identity();
    a[(0, 0)] = v.cosh();
    a[(k, k)] = v.cosh();
    a[(0, k)] = v.sinh();
    a[(k, 0)] = v.sinh();
    LinearMap4::new(a).expect("boost is invertible")
}

/// A map on `M(4, C)` over the row-major entries, or on forms over the
/// canonical basis, depending on context.
pub type LinearMap16 = DenseMatrix;

/// A 4x4 complex matrix state.
pub type MatrixState = DenseMatrix;

fn det_minor(a: &Matrix4<f64>, rows: &[usize], cols: &[usize]) -> f64 {
    let k = rows.len();
    if k == 0 {
        return 1.0;
    }
    DMatrix::from_fn(k, k, |i, j| a[(rows[i], cols[j])]).determinant()
}

fn compound_action(a: &Matrix4<f64>) -> OperatorMatrix16 {
    let order = basis_order();
    let mut m = DenseMatrix::zeros(16, 16);
    for (col, &cj) in order.iter().enumerate() {
        for (row, &rk) in order.iter().enumerate() {
            if rk.count_ones() == cj.count_ones() {
                let v = det_minor(a, &FormIndex(rk).indices(), &FormIndex(cj).indices());
                m[(row, col)] = re(v);
            }
        }
    }
    m
}

/// Action on forms by `dx_j -> sum_k A_kj dx_k`: on grade `k` the entry
/// for `(dx_K, dx_J)` is the minor `det A[K, J]`.
pub fn form_action(a: &LinearMap4) -> OperatorMatrix16 {
    compound_action(a.matrix())
}

/// Action on form components when the basis is substituted by `A`: the
/// inverse transpose of [`form_action`].
pub fn form_component_action(a: &LinearMap4) -> OperatorMatrix16 {
    compound_action(&a.inverse().transpose())
}

/// Change of basis between ordered gamma products and form basis elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Chevalley {
    /// Column `J` is the row-major flattening of the gamma product `Gamma_J`.
    pub products: DenseMatrix,
    /// Inverse of `products`: maps a flattened matrix to form coefficients.
    pub to_forms: DenseMatrix,
}

impl Chevalley {
    /// Form coefficients of a 4x4 matrix.
    pub fn form_of(&self, psi: &MatrixState) -> NonhomogeneousForm {
        NonhomogeneousForm::from_vector(&(&self.to_forms * vec_row_major(psi))).expect("16 entries")
    }

    /// The matrix with the given form coefficients.
    pub fn matrix_of(&self, f: &NonhomogeneousForm) -> MatrixState {
        unvec_row_major(&(&self.products * f.to_vector()), 4, 4)
    }
}

/// Identifies `gamma^{i1} ... gamma^{ik}` (ascending) with
/// `dx_{i1} ^ ... ^ dx_{ik}`.
pub fn chevalley_map(rep: &GammaRep) -> Result<Chevalley> {
    let mut products = DenseMatrix::zeros(16, 16);
    for (col, &mask) in basis_order().iter().enumerate() {
        products.set_column(col, &vec_row_major(&rep.product(mask)));
    }
    if rank(&products, 1e-9) != 16 {
        return Err(Error::RelationCheck("gamma products are linearly dependent".into()));
    }
    let to_forms = inverse(&products)?;
    Ok(Chevalley { products, to_forms })
}

/// `G_M = E^-1 G_Lambda E` acting on row-major `vec(Psi)`.
pub fn induced_matrix_action(g: &LinearMap4, rep: &GammaRep) -> Result<LinearMap16> {
    let ch = chevalley_map(rep)?;
    Ok(&ch.products * form_action(g) * &ch.to_forms)
}

/// Re-expresses a map on `vec(Psi)` in the form basis.
pub fn to_form_basis(map: &LinearMap16, rep: &GammaRep) -> Result<OperatorMatrix16> {
    let ch = chevalley_map(rep)?;
    Ok(&ch.to_forms * map * &ch.products)
}

/// Applies a map on `vec(Psi)` to a 4x4 matrix.
pub fn apply16(map: &LinearMap16, psi: &MatrixState) -> MatrixState {
    unvec_row_major(&(map * vec_row_major(psi)), 4, 4)
}

/// A 4x4 spin matrix, meaningful up to sign.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinElement {
    pub matrix: DenseMatrix,
    pub label: RepLabel,
}

/// Matrix of `Psi -> S Psi S^-1`.
pub fn spin_conjugation_action(s: &SpinElement) -> Result<LinearMap16> {
    let inv = inverse(&s.matrix)?;
    Ok(kron(&s.matrix, &inv.transpose()))
}

/// Maps a multivector over the Minkowski signature into the matrices of
/// `rep`, sending blades to ordered gamma products.
pub fn multivector_to_matrix(h: &blade::Multivector, rep: &GammaRep) -> DenseMatrix {
    h.terms()
        .fold(DenseMatrix::zeros(4, 4), |acc, (b, z)| acc + rep.product(b.mask()) * z)
}

/// `S` with `S gamma^k S^-1 = sum_j L_jk gamma^j`, from the spin lift of
/// `L` over `diag(1, -1, -1, -1)`.
pub fn lorentz_spin_rep(l: &LinearMap4, rep: &GammaRep) -> Result<SpinElement> {
    let defect = l.isometry_defect(&MINKOWSKI);
    if defect > ISOMETRY_TOL {
        return Err(Error::NotIsometry { residual: defect });
    }
    let lift = blade::spin_lift(&l.to_dmatrix(), &Signature::minkowski())?;
    Ok(SpinElement {
        matrix: multivector_to_matrix(&lift.h, rep),
        label: rep.label(),
    })
}

/// Largest `||S gamma^k S^-1 - sum_j L_jk gamma^j||_F` over `k`.
pub fn spin_rep_residual(s: &SpinElement, l: &LinearMap4, rep: &GammaRep) -> Result<f64> {
    let inv = inverse(&s.matrix)?;
    let mut worst = 0.0f64;
    for k in 0..4 {
        let lhs = &s.matrix * rep.gamma(k) * &inv;
        let rhs = (0..4).fold(DenseMatrix::zeros(4, 4), |acc, j| {
            acc + rep.gamma(j) * re(l.matrix()[(j, k)])
        });
        worst = worst.max(frobenius(&(lhs - rhs)));
    }
    Ok(worst)
}

/// `max_{j,k} ||G_M(gamma^j) G_M(gamma^k) - G_M(gamma^j gamma^k)||_F`.
pub fn covariance_residual(g: &LinearMap4, rep: &GammaRep) -> Result<f64> {
    let gm = induced_matrix_action(g, rep)?;
    let img: Vec<_> = (0..4).map(|k| apply16(&gm, rep.gamma(k))).collect();
    let mut worst = 0.0f64;
    for j in 0..4 {
        for k in 0..4 {
            let prod = apply16(&gm, &(rep.gamma(j) * rep.gamma(k)));
            worst = worst.max(frobenius(&(&img[j] * &img[k] - prod)));
        }
    }
    Ok(worst)
}

/// Form coefficients of `G_M(gamma^j) G_M(gamma^k) - G_M(gamma^j gamma^k)`.
pub fn covariance_defect_form(g: &LinearMap4, rep: &GammaRep, j: usize, k: usize) -> Result<NonhomogeneousForm> {
    let ch = chevalley_map(rep)?;
    let gm = &ch.products * form_action(g) * &ch.to_forms;
    let diff = apply16(&gm, rep.gamma(j)) * apply16(&gm, rep.gamma(k))
        - apply16(&gm, &(rep.gamma(j) * rep.gamma(k)));
    Ok(ch.form_of(&diff))
}

/// Scalar and bivector coefficients of `G_M(gamma^i) G_M(gamma^j)` for
/// `G_M(gamma^i) = a_11 gamma^i + a_12 gamma^j` and
/// `G_M(gamma^j) = a_21 gamma^i + a_22 gamma^j`, computed through the
/// induced action.
pub fn plane_product_coefficients(i: usize, j: usize, a: [[f64; 2]; 2], rep: &GammaRep) -> Result<(C64, C64)> {
    let mut m = Matrix4::identity();
    // Column convention: G_M(gamma^c) = sum_r G_rc gamma^r.
    m[(i, i)] = a[0][0];
    m[(j, i)] = a[0][1];
    m[(i, j)] = a[1][0];
    m[(j, j)] = a[1][1];
    let g = LinearMap4::new(m)?;
    let ch = chevalley_map(rep)?;
    let gm = &ch.products * form_action(&g) * &ch.to_forms;
    let prod = apply16(&gm, rep.gamma(i)) * apply16(&gm, rep.gamma(j));
    let f = ch.form_of(&prod);
    Ok((f.coeff(0), f.coeff((1 << i) | (1 << j))))
}

fn det2(s: &DenseMatrix) -> C64 {
    s[(0, 0)] * s[(1, 1)] - s[(0, 1)] * s[(1, 0)]
}

fn check_unit_det(s: &DenseMatrix) -> Result<()> {
    if s.shape() != (2, 2) {
        return Err(Error::DimensionMismatch("two-spinor map must be 2x2".into()));
    }
    let d = det2(s);
    if (d - re(1.0)).norm() > 1e-10 * frobenius(s).powi(2).max(1.0) {
        return Err(Error::DeterminantNotOne(format!("{d}")));
    }
    Ok(())
}

fn hermitian_of(x: &[f64; 4]) -> DenseMatrix {
    let s = pauli_matrices();
    identity(2) * re(x[0]) + &s[0] * re(x[1]) + &s[1] * re(x[2]) + &s[2] * re(x[3])
}

/// The Lorentz matrix of `X -> S X S^H` with `X = t + x sigma_x + y sigma_y
/// + z sigma_z`, acting on `(t, x, y, z)` columns.
pub fn two_spinor_action(s: &DenseMatrix) -> Result<LinearMap4> {
    check_unit_det(s)?;
    let sig = pauli_matrices();
    let mut l = Matrix4::zeros();
    for col in 0..4 {
        let mut x = [0.0; 4];
        x[col] = 1.0;
        let img = s * hermitian_of(&x) * s.adjoint();
        l[(0, col)] = img.trace().re / 2.0;
        for k in 0..3 {
            l[(k + 1, col)] = (&img * &sig[k]).trace().re / 2.0;
        }
    }
    LinearMap4::new(l)
}

/// True for `det L = 1` and `L_00 >= 1` (within `tol`).
pub fn is_proper_orthochronous(l: &LinearMap4, tol: f64) -> bool {
    (l.det() - 1.0).abs() <= tol && l.matrix()[(0, 0)] >= 1.0 - tol
}

/// `diag((S^H)^-1, S)`, which realizes [`two_spinor_action`] by conjugating
/// `sum x_k gamma^k` in the Weyl representation.
pub fn embed_two_spinor(s: &DenseMatrix) -> Result<SpinElement> {
    check_unit_det(s)?;
    let upper = inverse(&s.adjoint())?;
    let mut m = DenseMatrix::zeros(4, 4);
    m.view_mut((0, 0), (2, 2)).copy_from(&upper);
    m.view_mut((2, 2), (2, 2)).copy_from(s);
    Ok(SpinElement { matrix: m, label: RepLabel::Weyl })
}

/// One term `weight * (Psi -> left Psi right)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtTerm {
    pub weight: f64,
    #[serde(serialize_with = "ser_matrix")]
    pub left: DenseMatrix,
    #[serde(serialize_with = "ser_matrix")]
    pub right: DenseMatrix,
}

fn ser_matrix<S: serde::Serializer>(m: &DenseMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    DenseMatrixJson::from(m).serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtDecomposition {
    pub terms: Vec<SchmidtTerm>,
    /// All singular values of the realigned matrix, non-increasing.
    pub spectrum: Vec<f64>,
    /// `max |sum of terms - Gm| / max(1, max |Gm|)`.
    pub residual: f64,
}

/// Relative cut below which singular values do not count as terms.
pub const SCHMIDT_REL_TOL: f64 = 1e-9;

/// Reconstruction tolerance for [`operator_schmidt`].
pub const SCHMIDT_RESIDUAL_TOL: f64 = 1e-9;

/// Writes a map on `vec(Psi)` as `sum_J w_J (Psi -> L_J Psi R_J)` via the
/// singular values of the realigned matrix
/// `R[(a, c), (d, b)] = Gm[(a, b), (c, d)]`.
pub fn operator_schmidt(gm: &LinearMap16) -> Result<SchmidtDecomposition> {
    if gm.shape() != (16, 16) {
        return Err(Error::DimensionMismatch(format!("expected 16x16, got {}x{}", gm.nrows(), gm.ncols())));
    }
    let mut realigned = DenseMatrix::zeros(16, 16);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    realigned[(a * 4 + c, d * 4 + b)] = gm[(a * 4 + b, c * 4 + d)];
                }
            }
        }
    }
    let (u, sigma, v) = svd_sorted(&realigned);
    let top = sigma.first().copied().unwrap_or(0.0);
    let mut terms = Vec::new();
    for (jx, &w) in sigma.iter().enumerate() {
        if top == 0.0 || w <= SCHMIDT_REL_TOL * top {
            break;
        }
        let left = DenseMatrix::from_fn(4, 4, |a, c| u[(a * 4 + c, jx)]);
        let right = DenseMatrix::from_fn(4, 4, |d, b| v[(d * 4 + b, jx)].conj());
        terms.push(SchmidtTerm { weight: w, left, right });
    }
    let recon = terms.iter().fold(DenseMatrix::zeros(16, 16), |acc, t| {
        acc + kron(&t.left, &t.right.transpose()) * re(t.weight)
    });
    let residual = max_abs(&(recon - gm)) / max_abs(gm).max(1.0);
    if residual > SCHMIDT_RESIDUAL_TOL {
        return Err(Error::Reconstruction(residual));
    }
    Ok(SchmidtDecomposition { terms, spectrum: sigma, residual })
}

/// `Psi = psi alpha^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorPair {
    pub psi: DenseVector,
    pub alpha: DenseVector,
}

/// Factors a rank-one matrix with `|psi| = 1` and the first nonzero
/// component of `psi` real positive.
pub fn rank_one_factor(m: &MatrixState) -> Result<SpinorPair> {
    let (u, sigma, _) = svd_sorted(m);
    let top = sigma.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Err(Error::ZeroVector);
    }
    let numerical_rank = sigma.iter().filter(|&&s| s > SCHMIDT_REL_TOL * top).count();
    if numerical_rank != 1 {
        return Err(Error::NotRankOne { rank: numerical_rank });
    }
    let mut psi = u.column(0).into_owned();
    let big = psi.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lead = psi
        .iter()
        .copied()
        .find(|z| z.norm() > 1e-12 * big)
        .ok_or(Error::ZeroVector)?;
    psi *= lead.conj() / lead.norm();
    psi /= re(psi.norm());
    let alpha = DenseVector::from_fn(m.ncols(), |j, _| {
        (0..m.nrows()).fold(ZERO, |acc, i| acc + psi[i].conj() * m[(i, j)])
    });
    Ok(SpinorPair { psi, alpha })
}

/// `||L (psi alpha^T) R - (L psi)(R^T alpha)^T||_F`.
pub fn product_structure_check(l: &DenseMatrix, r: &DenseMatrix, psi: &DenseVector, alpha: &DenseVector) -> f64 {
    let lhs = l * (psi * alpha.transpose()) * r;
    let rhs = (l * psi) * (r.transpose() * alpha).transpose();
    frobenius(&(lhs - rhs))
}

/// `Psi = u alpha^T` with `u` the first plane-wave solution for `p`.
pub fn matrix_dirac_solution(p: &Momentum4, mass: f64, alpha: &DenseVector, rep: &GammaRep) -> Result<MatrixState> {
    if alpha.len() != 4 {
        return Err(Error::DimensionMismatch("alpha has four components".into()));
    }
    if alpha.iter().all(|z| *z == ZERO) {
        return Err(Error::ZeroVector);
    }
    let u = plane_wave_solutions(p, mass, rep)?.remove(0);
    Ok(&u * alpha.transpose())
}

/// `||(sum p_k gamma^k - m) Psi||_F`.
pub fn matrix_dirac_residual(p: &Momentum4, mass: f64, psi: &MatrixState, rep: &GammaRep) -> f64 {
    frobenius(&((dirac_momentum_matrix(p, rep) - identity(4) * re(mass)) * psi))
}

/// Indices of columns holding a nonzero entry.
pub fn column_support(m: &MatrixState) -> Vec<usize> {
    (0..m.ncols())
        .filter(|&j| m.column(j).iter().any(|z| *z != ZERO))
        .collect()
}

/// Parity of the spin lift of `l` over the Minkowski signature.
pub fn lift_parity(l: &LinearMap4) -> Result<Parity> {
    Ok(blade::spin_lift(&l.to_dmatrix(), &Signature::minkowski())?.parity)
}

/// The real matrix embedded as complex.
pub fn complex_of(l: &LinearMap4) -> DenseMatrix {
    complexify(&l.to_dmatrix())
}
