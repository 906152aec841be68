//! Clifford and Grassmann algebras over basis blades with a diagonal
//! signature.
//!
//! A [`Signature`] stores the square of every generator directly:
//! `e_k * e_k = diag[k]`. Entries are `+1`, `-1` or `0`; the all-zero
//! signature is the Grassmann (exterior) algebra. Callers that work with the
//! `e_k e_j + e_j e_k = -2 g_kj` convention pass the negated metric.
//!
//! ```
//! use kahlerkit::blade::{Multivector, Signature};
//!
//! let sig = Signature::minkowski();
//! let e1 = Multivector::basis_vector(1);
//! let e2 = Multivector::basis_vector(2);
//! let lhs = (&e1 + &e2).geometric_product(&e2, &sig).unwrap();
//! // (e1 + e2) e2 = e1 e2 + e2^2 = -1 + e1 e2
//! assert_eq!(lhs.scalar_part(), (-1.0).into());
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{C64, ONE, ZERO};

/// Largest supported generator count.
pub const MAX_GENERATORS: usize = 6;

/// Diagonal signature of a Clifford algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SignatureJson", into = "SignatureJson")]
pub struct Signature {
    diag: Vec<i8>,
}

#[derive(Serialize, Deserialize)]
struct SignatureJson {
    diag: Vec<i8>,
}

impl TryFrom<SignatureJson> for Signature {
    type Error = Error;
    fn try_from(j: SignatureJson) -> Result<Self> {
        Signature::new(j.diag)
    }
}

impl From<Signature> for SignatureJson {
    fn from(s: Signature) -> Self {
        SignatureJson { diag: s.diag }
    }
}

impl Signature {
    pub fn new(diag: Vec<i8>) -> Result<Self> {
        if diag.is_empty() || diag.len() > MAX_GENERATORS {
            return Err(Error::InvalidSignature(format!(
                "need 1..={MAX_GENERATORS} generators, got {}",
                diag.len()
            )));
        }
        if let Some(bad) = diag.iter().find(|d| !matches!(d, -1..=1)) {
            return Err(Error::InvalidSignature(format!("entry {bad} not in {{-1, 0, 1}}")));
        }
        Ok(Signature { diag })
    }

    /// `diag(1, -1, -1, -1)`: generators square like gamma matrices.
    pub fn minkowski() -> Self {
        Signature { diag: vec![1, -1, -1, -1] }
    }

    pub fn euclidean(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn grassmann(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[i8] {
        &self.diag
    }

    pub fn square(&self, k: usize) -> f64 {
        f64::from(self.diag[k])
    }

    pub fn is_degenerate(&self) -> bool {
        self.diag.contains(&0)
    }

    /// `g(x, y) = sum diag[k] x_k y_k`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        self.diag
            .iter()
            .zip(x.iter().zip(y))
            .map(|(&d, (a, b))| f64::from(d) * a * b)
            .sum()
    }

    /// The signature as a diagonal real matrix.
    pub fn metric_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n(), self.n(), |i, j| if i == j { self.square(i) } else { 0.0 })
    }

    fn check_blade(&self, b: Blade) -> Result<()> {
        match b.indices().into_iter().find(|&i| i >= self.n()) {
            Some(index) => Err(Error::BladeIndexOutOfRange { index, n: self.n() }),
            None => Ok(()),
        }
    }
}

/// A basis blade `e_{i1} e_{i2} ... e_{ik}` with `i1 < i2 < ... < ik`, stored
/// as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonCanonicalBlade(indices.to_vec()));
        }
        let mut mask = 0u8;
        for &i in indices {
            if i >= 8 {
                return Err(Error::BladeIndexOutOfRange { index: i, n: MAX_GENERATORS });
            }
            mask |= 1 << i;
        }
        Ok(Blade(mask))
    }

    pub fn from_mask(mask: u8) -> Self {
        Blade(mask)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..8).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    /// Sign from reordering the concatenation `self ++ other` into ascending
    /// order, ignoring repeated factors.
    pub fn reorder_sign(self, other: Blade) -> f64 {
        let mut swaps = 0;
        let mut a = self.0 >> 1;
        while a != 0 {
            swaps += (a & other.0).count_ones();
            a >>= 1;
        }
        if swaps % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Product of two blades as `(coefficient, blade)` given the squares of
    /// the generators. A zero coefficient means the product vanishes.
    pub fn product(self, other: Blade, squares: &[i8]) -> (f64, Blade) {
        let mut coeff = self.reorder_sign(other);
        let common = self.0 & other.0;
        for (k, &d) in squares.iter().enumerate() {
            if common & (1 << k) != 0 {
                coeff *= f64::from(d);
            }
        }
        (coeff, Blade(self.0 ^ other.0))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// The three grade-based (anti-)involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// `(-1)^k` on grade `k`.
    GradeInvolution,
    /// `(-1)^(k(k-1)/2)` on grade `k`.
    Reversion,
    /// Composition of the two: `(-1)^(k(k+1)/2)`.
    CliffordConjugation,
}

impl Involution {
    pub fn sign(self, grade: usize) -> f64 {
        let exponent = match self {
            Involution::GradeInvolution => grade,
            Involution::Reversion => grade * grade.saturating_sub(1) / 2,
            Involution::CliffordConjugation => grade * (grade + 1) / 2,
        };
        if exponent % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Sparse element of a Clifford algebra: blade -> nonzero complex
/// coefficient.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Multivector {
    terms: BTreeMap<Blade, C64>,
}

impl Multivector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(s: impl Into<C64>) -> Self {
        Self::from_terms([(Blade::SCALAR, s.into())])
    }

    pub fn one() -> Self {
        Self::scalar(ONE)
    }

    pub fn blade(b: Blade, coeff: impl Into<C64>) -> Self {
        Self::from_terms([(b, coeff.into())])
    }

    pub fn basis_vector(k: usize) -> Self {
        Self::blade(Blade(1 << k), ONE)
    }

    /// `iota(v) = sum v_k e_k`.
    pub fn vector(components: &[f64]) -> Self {
        Self::from_terms(
            components
                .iter()
                .enumerate()
                .map(|(k, &v)| (Blade(1 << k), C64::from(v))),
        )
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Blade, C64)>) -> Self {
        let mut out = Self::zero();
        for (b, z) in terms {
            out.add_term(b, z);
        }
        out
    }

    fn add_term(&mut self, b: Blade, z: C64) {
        if z == ZERO {
            return;
        }
        let entry = self.terms.entry(b).or_insert(ZERO);
        *entry += z;
        if *entry == ZERO {
            self.terms.remove(&b);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, C64)> + '_ {
        self.terms.iter().map(|(&b, &z)| (b, z))
    }

    pub fn coefficient(&self, b: Blade) -> C64 {
        self.terms.get(&b).copied().unwrap_or(ZERO)
    }

    pub fn scalar_part(&self) -> C64 {
        self.coefficient(Blade::SCALAR)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_grade(&self) -> Option<usize> {
        self.terms.keys().map(|b| b.grade()).max()
    }

    /// True when only grade `k` is present (the zero element counts).
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|b| b.grade() == k)
    }

    /// Components of a grade-1 element, padded to `n`.
    pub fn vector_components(&self, n: usize) -> Result<Vec<C64>> {
        if !self.is_homogeneous(1) {
            return Err(Error::NotAVector);
        }
        let mut out = vec![ZERO; n];
        for (b, z) in self.terms() {
            let k = b.indices()[0];
            if k >= n {
                return Err(Error::BladeIndexOutOfRange { index: k, n });
            }
            out[k] = z;
        }
        Ok(out)
    }

    pub fn scale(&self, s: impl Into<C64>) -> Self {
        let s = s.into();
        Self::from_terms(self.terms().map(|(b, z)| (b, z * s)))
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Clifford product under `sig`.
    pub fn geometric_product(&self, other: &Self, sig: &Signature) -> Result<Self> {
        for b in self.terms.keys().chain(other.terms.keys()) {
            sig.check_blade(*b)?;
        }
        Ok(self.product_with(other, sig.diag()))
    }

    fn product_with(&self, other: &Self, squares: &[i8]) -> Self {
        let mut out = Self::zero();
        for (&a, &x) in &self.terms {
            for (&b, &y) in &other.terms {
                let (s, blade) = a.product(b, squares);
                if s != 0.0 {
                    out.add_term(blade, x * y * s);
                }
            }
        }
        out
    }

    /// Exterior product: the Clifford product with every generator squaring
    /// to zero.
    pub fn wedge(&self, other: &Self) -> Self {
        self.product_with(other, &[0; 8])
    }

    pub fn grade_project(&self, k: usize, sig: &Signature) -> Result<Self> {
        if k > sig.n() {
            return Err(Error::GradeOutOfRange { k, n: sig.n() });
        }
        Ok(self.grade_part(k))
    }

    fn grade_part(&self, k: usize) -> Self {
        Self::from_terms(self.terms().filter(|(b, _)| b.grade() == k))
    }

    pub fn involute(&self, kind: Involution) -> Self {
        Self::from_terms(self.terms().map(|(b, z)| (b, z * kind.sign(b.grade()))))
    }

    pub fn reverse(&self) -> Self {
        self.involute(Involution::Reversion)
    }

    /// Inverse of a versor-like element `x` with `x * rev(x)` a nonzero
    /// scalar.
    pub fn versor_inverse(&self, sig: &Signature) -> Result<Self> {
        let rev = self.reverse();
        let norm = self.geometric_product(&rev, sig)?;
        let s = norm.scalar_part();
        let rest = &norm - &Self::scalar(s);
        if s.norm() == 0.0 || rest.max_abs() > 1e-9 * s.norm() {
            return Err(Error::NullVector);
        }
        Ok(rev.scale(s.inv()))
    }

    /// `h x h^-1` for an invertible versor `h`.
    pub fn conjugate(&self, x: &Self, sig: &Signature) -> Result<Self> {
        let inv = self.versor_inverse(sig)?;
        self.geometric_product(x, sig)?.geometric_product(&inv, sig)
    }

    /// Drops coefficients below `tol` in modulus.
    pub fn prune(&self, tol: f64) -> Self {
        Self::from_terms(self.terms().filter(|(_, z)| z.norm() > tol))
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (b, z) in rhs.terms() {
            out.add_term(b, z);
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (b, z) in rhs.terms() {
            out.add_term(b, -z);
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(b, z)| {
                if z.im == 0.0 {
                    format!("{}*{b}", z.re)
                } else {
                    format!("({}{:+}i)*{b}", z.re, z.im)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    blade: Vec<usize>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct MultivectorJson {
    terms: Vec<TermJson>,
}

impl Serialize for Multivector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultivectorJson {
            terms: self
                .terms()
                .map(|(b, z)| TermJson { blade: b.indices(), re: z.re, im: z.im })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MultivectorJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let b = Blade::from_indices(&t.blade).map_err(serde::de::Error::custom)?;
            terms.push((b, C64::new(t.re, t.im)));
        }
        Ok(Multivector::from_terms(terms))
    }
}

/// The reflection `x - 2 g(x, v) / g(v) v` written in the algebra.
///
/// The sandwich `v x v^-1` equals the negative of that map in either sign
/// convention for the signature, so the result is `-v x v^-1`.
pub fn reflect(v: &Multivector, x: &Multivector, sig: &Signature) -> Result<Multivector> {
    if !v.is_homogeneous(1) || !x.is_homogeneous(1) || v.is_zero() {
        return Err(Error::NotAVector);
    }
    let vv = v.geometric_product(v, sig)?.scalar_part();
    if vv.norm() == 0.0 {
        return Err(Error::NullVector);
    }
    let v_inv = v.scale(vv.inv());
    let sandwich = v.geometric_product(x, sig)?.geometric_product(&v_inv, sig)?;
    // v x v is a vector; rounding can leave tiny trivector residue for
    // complex inputs, which grade projection removes.
    Ok(-&sandwich.grade_part(1))
}

/// The componentwise reflection formula on real vectors.
pub fn reflect_components(v: &[f64], x: &[f64], sig: &Signature) -> Result<Vec<f64>> {
    let gv = sig.bilinear(v, v);
    if gv == 0.0 {
        return Err(Error::NullVector);
    }
    let f = 2.0 * sig.bilinear(x, v) / gv;
    Ok(x.iter().zip(v).map(|(xi, vi)| xi - f * vi).collect())
}

/// `A g A^T`.
pub fn metric_transform(a: &DMatrix<f64>, g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !a.is_square() || !g.is_square() || a.nrows() != g.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "A is {}x{}, g is {}x{}",
            a.nrows(),
            a.ncols(),
            g.nrows(),
            g.ncols()
        )));
    }
    Ok(a * g * a.transpose())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A versor implementing an isometry by conjugation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinLift {
    pub h: Multivector,
    pub parity: Parity,
}

/// Tolerance on `||A g A^T - g||` accepted by [`spin_lift`].
pub const ISOMETRY_TOL: f64 = 1e-9;

/// Finds `h` with `h iota(v) h^-1 = iota(A v)` for an isometry `A` of the
/// signature, as a product of unit reflection vectors.
///
/// Each column is straightened in turn: with `u = M e_k` already orthogonal
/// to the fixed directions, the reflection along `u - e_k` maps `u` onto
/// `e_k`. When that difference is null the pair of reflections along
/// `u + e_k` and `e_k` is used instead; both differences cannot be null at
/// once because their squares sum to `4 g(e_k)`.
///
/// Odd isometries in an even dimension are lifted by appending the
/// pseudoscalar, which anticommutes with vectors; odd dimensions have no
/// conjugation lift for them and fail.
pub fn spin_lift(a: &DMatrix<f64>, sig: &Signature) -> Result<SpinLift> {
    let n = sig.n();
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, signature has {n} generators",
            a.nrows(),
            a.ncols()
        )));
    }
    if sig.is_degenerate() {
        return Err(Error::LiftFailed("degenerate signature has null directions".into()));
    }
    let g = sig.metric_matrix();
    let residual = (metric_transform(a, &g)? - &g).norm();
    if residual > ISOMETRY_TOL {
        return Err(Error::NotIsometry { residual });
    }

    let scale_tol = 1e-12 * a.iter().fold(1.0f64, |m, x| m.max(x.abs())).powi(2);
    let mut m = a.clone();
    let mut reflectors: Vec<Vec<f64>> = Vec::new();
    for k in 0..n {
        let u: Vec<f64> = m.column(k).iter().copied().collect();
        let mut ek = vec![0.0; n];
        ek[k] = 1.0;
        let diff: Vec<f64> = u.iter().zip(&ek).map(|(x, y)| x - y).collect();
        if diff.iter().all(|d| d.abs() <= 1e-14) {
            continue;
        }
        let sum: Vec<f64> = u.iter().zip(&ek).map(|(x, y)| x + y).collect();
        let g_diff = sig.bilinear(&diff, &diff);
        let g_sum = sig.bilinear(&sum, &sum);
        let step: Vec<Vec<f64>> = if g_diff.abs() >= g_sum.abs() && g_diff.abs() > scale_tol {
            vec![diff]
        } else if g_sum.abs() > scale_tol {
            vec![sum, ek]
        } else {
            return Err(Error::LiftFailed(format!("both pivots null at column {k}")));
        };
        for w in step {
            apply_reflection(&mut m, &w, sig);
            reflectors.push(w);
        }
    }
    let id_residual = (&m - DMatrix::<f64>::identity(n, n)).norm();
    if id_residual > 1e-7 * (1.0 + a.norm()) {
        return Err(Error::LiftFailed(format!("reduction residual {id_residual:.3e}")));
    }

    // A = R_1 R_2 ... R_m, each R_w(x) = -w x w^-1.
    let mut h = Multivector::one();
    for w in &reflectors {
        let gw = sig.bilinear(w, w).abs().sqrt();
        let unit: Vec<f64> = w.iter().map(|x| x / gw).collect();
        h = h.geometric_product(&Multivector::vector(&unit), sig)?;
    }
    let parity = if reflectors.len().is_multiple_of(2) { Parity::Even } else { Parity::Odd };
    if parity == Parity::Odd {
        if n % 2 == 1 {
            return Err(Error::LiftFailed(
                "odd isometry has no conjugation lift in odd dimension".into(),
            ));
        }
        let pseudo = Multivector::blade(Blade::from_mask(((1u16 << n) - 1) as u8), ONE);
        h = h.geometric_product(&pseudo, sig)?;
    }
    Ok(SpinLift { h: h.prune(1e-15), parity })
}

fn apply_reflection(m: &mut DMatrix<f64>, w: &[f64], sig: &Signature) {
    let gw = sig.bilinear(w, w);
    for col in 0..m.ncols() {
        let x: Vec<f64> = m.column(col).iter().copied().collect();
        let f = 2.0 * sig.bilinear(&x, w) / gw;
        for (row, wr) in w.iter().enumerate() {
            m[(row, col)] -= f * wr;
        }
    }
}

/// Largest deviation of `h e_k h^-1` from `A e_k` over the basis vectors.
pub fn conjugation_residual(h: &Multivector, a: &DMatrix<f64>, sig: &Signature) -> Result<f64> {
    let n = sig.n();
    let mut worst = 0.0f64;
    for k in 0..n {
        let image = h.conjugate(&Multivector::basis_vector(k), sig)?;
        let col: Vec<f64> = a.column(k).iter().copied().collect();
        let diff = &image - &Multivector::vector(&col);
        worst = worst.max(diff.max_abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: usize) -> Multivector {
        Multivector::basis_vector(k)
    }

    fn bl(ix: &[usize]) -> Blade {
        Blade::from_indices(ix).unwrap()
    }

    #[test]
    fn generator_squares_follow_signature() {
        let sig = Signature::minkowski();
        assert_eq!(e(0).geometric_product(&e(0), &sig).unwrap(), Multivector::one());
        assert_eq!(
            e(1).geometric_product(&e(1), &sig).unwrap(),
            Multivector::scalar(-1.0)
        );
    }

    #[test]
    fn distinct_generators_anticommute() {
        let sig = Signature::minkowski();
        let e12 = Multivector::blade(bl(&[1, 2]), 1.0);
        assert_eq!(e(1).geometric_product(&e(2), &sig).unwrap(), e12);
        assert_eq!(e(2).geometric_product(&e(1), &sig).unwrap(), -&e12);
    }

    #[test]
    fn bilinear_expansion_example() {
        let sig = Signature::minkowski();
        let p = (&e(1) + &e(2)).geometric_product(&e(2), &sig).unwrap();
        let want = &Multivector::scalar(-1.0) + &Multivector::blade(bl(&[1, 2]), 1.0);
        assert_eq!(p, want);
        assert_eq!(p.grade_project(0, &sig).unwrap(), Multivector::scalar(-1.0));
    }

    #[test]
    fn index_outside_signature_is_rejected() {
        let sig = Signature::euclidean(2).unwrap();
        let err = e(3).geometric_product(&e(0), &sig).unwrap_err();
        assert!(matches!(err, Error::BladeIndexOutOfRange { index: 3, n: 2 }));
    }

    #[test]
    fn wedge_examples() {
        assert!(e(1).wedge(&e(1)).is_zero());
        assert_eq!(e(1).wedge(&e(2)), Multivector::blade(bl(&[1, 2]), 1.0));
        assert_eq!((&e(1) + &e(2)).wedge(&e(2)), Multivector::blade(bl(&[1, 2]), 1.0));
    }

    #[test]
    fn grade_projection_examples() {
        let sig = Signature::euclidean(3).unwrap();
        let a = &(&Multivector::one() + &e(1)) + &Multivector::blade(bl(&[1, 2]), 1.0);
        assert_eq!(a.grade_project(1, &sig).unwrap(), e(1));
        let s = Multivector::scalar(3.0);
        assert_eq!(s.grade_project(0, &sig).unwrap(), s);
        assert!(matches!(
            a.grade_project(4, &sig),
            Err(Error::GradeOutOfRange { k: 4, n: 3 })
        ));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(e(1).involute(Involution::CliffordConjugation), -&e(1));
        let e12 = Multivector::blade(bl(&[1, 2]), 1.0);
        assert_eq!(e12.involute(Involution::Reversion), -&e12);
        let e123 = Multivector::blade(bl(&[1, 2, 3]), 1.0);
        assert_eq!(e123.involute(Involution::GradeInvolution), -&e123);
    }

    #[test]
    fn clifford_conjugation_composes_the_others() {
        for k in 0..=6 {
            assert_eq!(
                Involution::CliffordConjugation.sign(k),
                Involution::Reversion.sign(k) * Involution::GradeInvolution.sign(k)
            );
        }
    }

    #[test]
    fn reflection_examples() {
        let sig = Signature::euclidean(3).unwrap();
        assert_eq!(reflect(&e(1), &e(1), &sig).unwrap(), -&e(1));
        assert_eq!(reflect(&e(1), &e(2), &sig).unwrap(), e(2));
        let v = &e(1) + &e(2);
        assert_eq!(reflect(&v, &e(1), &sig).unwrap(), -&e(2));
    }

    #[test]
    fn reflection_along_null_vector_fails() {
        let sig = Signature::minkowski();
        let v = &e(0) + &e(1);
        assert!(matches!(reflect(&v, &e(2), &sig), Err(Error::NullVector)));
    }

    #[test]
    fn identity_lifts_to_one() {
        let sig = Signature::minkowski();
        let lift = spin_lift(&DMatrix::identity(4, 4), &sig).unwrap();
        assert_eq!(lift.h, Multivector::one());
        assert_eq!(lift.parity, Parity::Even);
    }

    #[test]
    fn non_isometry_is_rejected() {
        let sig = Signature::minkowski();
        let mut a = DMatrix::<f64>::identity(4, 4);
        a[(1, 2)] = 1.0;
        assert!(matches!(spin_lift(&a, &sig), Err(Error::NotIsometry { .. })));
    }

    #[test]
    fn time_reflection_is_odd() {
        let sig = Signature::minkowski();
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, 1.0, 1.0, 1.0]));
        let lift = spin_lift(&a, &sig).unwrap();
        assert_eq!(lift.parity, Parity::Odd);
        assert!(conjugation_residual(&lift.h, &a, &sig).unwrap() < 1e-12);
    }

    #[test]
    fn odd_dimension_odd_isometry_fails() {
        let sig = Signature::euclidean(3).unwrap();
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, 1.0, 1.0]));
        assert!(matches!(spin_lift(&a, &sig), Err(Error::LiftFailed(_))));
    }

    #[test]
    fn metric_transform_examples() {
        let g = Signature::minkowski().metric_matrix();
        assert_eq!(metric_transform(&DMatrix::identity(4, 4), &g).unwrap(), g);
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1.0, 1.0, 1.0]));
        let want = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, -1.0, -1.0, -1.0]));
        assert_eq!(metric_transform(&a, &g).unwrap(), want);
        assert!(metric_transform(&DMatrix::identity(3, 3), &g).is_err());
    }

    #[test]
    fn json_round_trip_and_schema() {
        let m = &Multivector::scalar(C64::new(1.0, 2.0)) + &Multivector::blade(bl(&[0, 3]), -1.0);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"blade":[],"re":1.0,"im":2.0},{"blade":[0,3],"re":-1.0,"im":0.0}]}"#
        );
        let back: Multivector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let sig: Signature = serde_json::from_str(r#"{"diag":[1,-1,0]}"#).unwrap();
        assert_eq!(sig.diag(), &[1, -1, 0]);
        assert!(serde_json::from_str::<Signature>(r#"{"diag":[2]}"#).is_err());
    }
}
