//! Exterior forms on four coordinates `x_0..x_3`.
//!
//! Every sixteen-component object in the crate uses one basis order: by
//! grade, then lexicographically by index list,
//!
//! ```text
//! 1, dx0, dx1, dx2, dx3, dx01, dx02, dx03, dx12, dx13, dx23,
//! dx012, dx013, dx023, dx123, dx0123
//! ```
//!
//! A [`MetricTensor`] is always the metric on one-forms. The volume form is
//! the unit top form `dx0 ^ dx1 ^ dx2 ^ dx3` with no density factor.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::linalg::{re, DenseMatrix, C64, ONE, ZERO};

/// Number of coordinates.
pub const DIM: usize = 4;

/// Mask of the volume form.
pub const TOP: u8 = 0b1111;

/// A basis form `dx_{i1} ^ ... ^ dx_{ik}`, ascending, as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormIndex(pub u8);

impl FormIndex {
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let b = Blade::from_indices(indices)?;
        if b.mask() > TOP {
            return Err(Error::BladeIndexOutOfRange { index: indices[indices.len() - 1], n: DIM });
        }
        Ok(FormIndex(b.mask()))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..DIM).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn complement(self) -> FormIndex {
        FormIndex(TOP & !self.0)
    }

    /// Position in the canonical sixteen-element basis.
    pub fn position(self) -> usize {
        basis_positions()[self.0 as usize]
    }
}

/// The sixteen masks in canonical order.
pub fn basis_order() -> &'static [u8; 16] {
    static ORDER: OnceLock<[u8; 16]> = OnceLock::new();
    ORDER.get_or_init(|| {
        let mut masks: Vec<u8> = (0..16).collect();
        masks.sort_by_key(|&m| (m.count_ones(), FormIndex(m).indices()));
        masks.try_into().expect("sixteen masks")
    })
}

fn basis_positions() -> &'static [usize; 16] {
    static POS: OnceLock<[usize; 16]> = OnceLock::new();
    POS.get_or_init(|| {
        let mut pos = [0; 16];
        for (p, &m) in basis_order().iter().enumerate() {
            pos[m as usize] = p;
        }
        pos
    })
}

/// Sign of `dx_a ^ dx_b` relative to the ascending form, zero if they share
/// an index.
pub fn wedge_sign(a: u8, b: u8) -> f64 {
    if a & b != 0 {
        0.0
    } else {
        Blade::from_mask(a).reorder_sign(Blade::from_mask(b))
    }
}

/// A dense mixed-grade form with sixteen complex coefficients in the
/// canonical basis order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonhomogeneousForm {
    pub coeffs: [C64; 16],
}

impl Default for NonhomogeneousForm {
    fn default() -> Self {
        Self::zero()
    }
}

impl NonhomogeneousForm {
    pub fn zero() -> Self {
        NonhomogeneousForm { coeffs: [ZERO; 16] }
    }

    pub fn basis(mask: u8) -> Self {
        let mut f = Self::zero();
        f.coeffs[FormIndex(mask).position()] = ONE;
        f
    }

    pub fn from_terms(terms: &[(u8, C64)]) -> Self {
        let mut f = Self::zero();
        for &(m, z) in terms {
            f.coeffs[FormIndex(m).position()] += z;
        }
        f
    }

    pub fn from_vector(v: &nalgebra::DVector<C64>) -> Result<Self> {
        if v.len() != 16 {
            return Err(Error::DimensionMismatch(format!("form needs 16 entries, got {}", v.len())));
        }
        let mut f = Self::zero();
        f.coeffs.copy_from_slice(v.as_slice());
        Ok(f)
    }

    pub fn to_vector(&self) -> nalgebra::DVector<C64> {
        nalgebra::DVector::from_column_slice(&self.coeffs)
    }

    pub fn coeff(&self, mask: u8) -> C64 {
        self.coeffs[FormIndex(mask).position()]
    }

    pub fn set(&mut self, mask: u8, z: C64) {
        self.coeffs[FormIndex(mask).position()] = z;
    }

    /// `(mask, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (u8, C64)> + '_ {
        basis_order().iter().map(|&m| (m, self.coeff(m)))
    }

    pub fn grade_part(&self, k: usize) -> Self {
        let mut f = Self::zero();
        for (m, z) in self.terms().filter(|(m, _)| m.count_ones() as usize == k) {
            f.set(m, z);
        }
        f
    }

    pub fn scale(&self, s: C64) -> Self {
        NonhomogeneousForm { coeffs: self.coeffs.map(|z| z * s) }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut f = *self;
        for (a, b) in f.coeffs.iter_mut().zip(other.coeffs) {
            *a += b;
        }
        f
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|z| *z == ZERO)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.terms().filter(|(_, z)| *z != ZERO) {
            for (b, y) in other.terms().filter(|(_, z)| *z != ZERO) {
                let s = wedge_sign(a, b);
                if s != 0.0 {
                    let p = FormIndex(a | b).position();
                    out.coeffs[p] += x * y * s;
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct FormTermJson {
    mask: Vec<usize>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    coeffs: Vec<FormTermJson>,
}

impl Serialize for NonhomogeneousForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormJson {
            coeffs: self
                .terms()
                .filter(|(_, z)| *z != ZERO)
                .map(|(m, z)| FormTermJson { mask: FormIndex(m).indices(), re: z.re, im: z.im })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NonhomogeneousForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FormJson::deserialize(d)?;
        let mut f = NonhomogeneousForm::zero();
        for t in j.coeffs {
            let ix = FormIndex::from_indices(&t.mask).map_err(serde::de::Error::custom)?;
            let p = ix.position();
            f.coeffs[p] += C64::new(t.re, t.im);
        }
        Ok(f)
    }
}

/// A dense covariant tensor of rank `s` on four dimensions, stored
/// row-major: component `(i1, ..., is)` sits at `sum i_a 4^(s-1-a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    rank: usize,
    data: Vec<C64>,
}

impl Tensor {
    pub fn zeros(rank: usize) -> Result<Self> {
        if rank > DIM {
            return Err(Error::OutOfRange(format!("tensor rank {rank} exceeds {DIM}")));
        }
        Ok(Tensor { rank, data: vec![ZERO; DIM.pow(rank as u32)] })
    }

    pub fn from_data(rank: usize, data: Vec<C64>) -> Result<Self> {
        let t = Self::zeros(rank)?;
        if data.len() != t.data.len() {
            return Err(Error::DimensionMismatch(format!(
                "rank {rank} tensor needs {} entries, got {}",
                t.data.len(),
                data.len()
            )));
        }
        Ok(Tensor { rank, data })
    }

    /// `e^{i1} (x) ... (x) e^{is}`.
    pub fn basis(indices: &[usize]) -> Result<Self> {
        let mut t = Self::zeros(indices.len())?;
        let k = t.offset(indices);
        t.data[k] = ONE;
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    fn offset(&self, ix: &[usize]) -> usize {
        ix.iter().fold(0, |acc, &i| acc * DIM + i)
    }

    fn multi_index(&self, mut k: usize) -> Vec<usize> {
        let mut ix = vec![0; self.rank];
        for slot in ix.iter_mut().rev() {
            *slot = k % DIM;
            k /= DIM;
        }
        ix
    }

    pub fn get(&self, ix: &[usize]) -> C64 {
        self.data[self.offset(ix)]
    }

    pub fn tensor_product(&self, other: &Tensor) -> Result<Tensor> {
        let rank = self.rank + other.rank;
        let mut out = Tensor::zeros(rank)?;
        let n = other.data.len();
        for (i, a) in self.data.iter().enumerate() {
            for (j, b) in other.data.iter().enumerate() {
                out.data[i * n + j] = a * b;
            }
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from antisymmetry under swapping two slots.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for k in 0..self.data.len() {
            let ix = self.multi_index(k);
            for a in 0..self.rank {
                for b in a + 1..self.rank {
                    let mut sw = ix.clone();
                    sw.swap(a, b);
                    worst = worst.max((self.data[k] + self.get(&sw)).norm());
                }
            }
        }
        worst
    }
}

fn permutations(s: usize) -> Vec<(Vec<usize>, f64)> {
    if s == 0 {
        return vec![(vec![], 1.0)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(s - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, s - 1);
            // Inserting the largest element at `pos` adds `len - pos`
            // inversions.
            let flips = perm.len() - pos;
            out.push((p, if flips % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

/// `A T (v_1..v_s) = 1/s! sum_pi sign(pi) T(v_pi(1)..v_pi(s))`.
pub fn alternate(t: &Tensor) -> Result<Tensor> {
    let s = t.rank;
    if s > DIM {
        return Err(Error::OutOfRange(format!("tensor rank {s} exceeds {DIM}")));
    }
    let perms = permutations(s);
    let norm = 1.0 / perms.len() as f64;
    let mut out = Tensor::zeros(s)?;
    for k in 0..t.data.len() {
        let ix = t.multi_index(k);
        let mut acc = ZERO;
        for (p, sign) in &perms {
            let permuted: Vec<usize> = p.iter().map(|&i| ix[i]).collect();
            acc += t.get(&permuted) * sign;
        }
        out.data[k] = acc * norm;
    }
    Ok(out)
}

/// The grade-`k` part of a form as an antisymmetric tensor, identifying
/// `dx_I` with `A(e^{i1} (x) ... (x) e^{ik})`.
pub fn form_to_tensor(f: &NonhomogeneousForm, k: usize) -> Result<Tensor> {
    let mut out = Tensor::zeros(k)?;
    for (m, z) in f.grade_part(k).terms().filter(|(_, z)| *z != ZERO) {
        let a = alternate(&Tensor::basis(&FormIndex(m).indices())?)?;
        for (o, x) in out.data.iter_mut().zip(a.data) {
            *o += z * x;
        }
    }
    Ok(out)
}

/// Inverse of [`form_to_tensor`] on antisymmetric tensors.
pub fn tensor_to_form(t: &Tensor) -> NonhomogeneousForm {
    let fact: f64 = (1..=t.rank).map(|x| x as f64).product();
    let mut f = NonhomogeneousForm::zero();
    for &m in basis_order().iter().filter(|m| m.count_ones() as usize == t.rank) {
        f.set(m, t.get(&FormIndex(m).indices()) * fact);
    }
    f
}

/// `omega ^ theta` computed as `A(omega (x) theta)` on homogeneous parts.
pub fn wedge_via_tensors(omega: &NonhomogeneousForm, theta: &NonhomogeneousForm) -> Result<NonhomogeneousForm> {
    let mut out = NonhomogeneousForm::zero();
    for r in 0..=DIM {
        for s in 0..=DIM - r {
            let a = form_to_tensor(omega, r)?;
            let b = form_to_tensor(theta, s)?;
            out = out.add(&tensor_to_form(&alternate(&a.tensor_product(&b)?)?));
        }
    }
    Ok(out)
}

/// Symmetric metric on one-forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricTensor {
    entries: [[f64; 4]; 4],
    degenerate_allowed: bool,
}

impl MetricTensor {
    pub fn new(entries: [[f64; 4]; 4], degenerate_allowed: bool) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidSignature(format!("g[{i}][{j}] != g[{j}][{i}]")));
                }
            }
        }
        let g = MetricTensor { entries, degenerate_allowed };
        if !degenerate_allowed && g.is_degenerate() {
            return Err(Error::DegenerateMetric);
        }
        Ok(g)
    }

    pub fn diagonal(d: [f64; 4]) -> Result<Self> {
        let mut e = [[0.0; 4]; 4];
        for k in 0..4 {
            e[k][k] = d[k];
        }
        Self::new(e, d.contains(&0.0))
    }

    pub fn minkowski() -> Self {
        Self::diagonal([1.0, -1.0, -1.0, -1.0]).expect("valid metric")
    }

    pub fn euclidean() -> Self {
        Self::diagonal([1.0; 4]).expect("valid metric")
    }

    /// The degenerate metric `g = 0`.
    pub fn zero() -> Self {
        MetricTensor { entries: [[0.0; 4]; 4], degenerate_allowed: true }
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn matrix(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.entries[i][j])
    }

    pub fn det(&self) -> f64 {
        self.matrix().determinant()
    }

    pub fn is_degenerate(&self) -> bool {
        let scale = self.entries.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
        scale == 0.0 || self.det().abs() <= 1e-12 * scale.powi(4)
    }

    /// `sum g_ij k_i k_j`.
    pub fn quadratic(&self, k: &[f64; 4]) -> f64 {
        (0..4).map(|i| (0..4).map(|j| self.entries[i][j] * k[i] * k[j]).sum::<f64>()).sum()
    }

    /// `Some(diag)` when the metric is diagonal with entries `+-1`.
    pub fn unit_diagonal(&self) -> Option<[f64; 4]> {
        let mut d = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                let v = self.entries[i][j];
                if i == j {
                    if v.abs() != 1.0 {
                        return None;
                    }
                    d[i] = v;
                } else if v != 0.0 {
                    return None;
                }
            }
        }
        Some(d)
    }
}

/// Gram determinant `det <dx_{a_i}, dx_{b_j}>` for two basis forms.
fn gram(a: u8, b: u8, g: &MetricTensor) -> f64 {
    let ia = FormIndex(a).indices();
    let ib = FormIndex(b).indices();
    if ia.len() != ib.len() {
        return 0.0;
    }
    let k = ia.len();
    if k == 0 {
        return 1.0;
    }
    let m = nalgebra::DMatrix::from_fn(k, k, |i, j| g.get(ia[i], ib[j]));
    m.determinant()
}

/// Bilinear metric on forms: Gram determinants on equal grades, zero
/// across grades.
pub fn form_inner(omega: &NonhomogeneousForm, theta: &NonhomogeneousForm, g: &MetricTensor) -> Result<C64> {
    if g.is_degenerate() {
        return Err(Error::DegenerateMetric);
    }
    let mut acc = ZERO;
    for (a, x) in omega.terms().filter(|(_, z)| *z != ZERO) {
        for (b, y) in theta.terms().filter(|(_, z)| *z != ZERO) {
            if a.count_ones() == b.count_ones() {
                acc += x * y * gram(a, b, g);
            }
        }
    }
    Ok(acc)
}

/// The form with `omega ^ *theta = <omega, theta> vol` for every `omega`.
pub fn hodge_star(theta: &NonhomogeneousForm, g: &MetricTensor) -> Result<NonhomogeneousForm> {
    if g.is_degenerate() {
        return Err(Error::DegenerateMetric);
    }
    let mut out = NonhomogeneousForm::zero();
    for &i in basis_order() {
        let inner = form_inner(&NonhomogeneousForm::basis(i), theta, g)?;
        if inner != ZERO {
            let c = FormIndex(i).complement().0;
            let p = FormIndex(c).position();
            out.coeffs[p] += inner * wedge_sign(i, c);
        }
    }
    Ok(out)
}

/// The sign of `**` on each grade, or an error if some grade mixes signs.
pub fn double_star_signs(g: &MetricTensor) -> Result<[f64; 5]> {
    let mut signs = [0.0; 5];
    for k in 0..=DIM {
        let mut sign = None;
        for &m in basis_order().iter().filter(|m| m.count_ones() as usize == k) {
            let f = NonhomogeneousForm::basis(m);
            let ss = hodge_star(&hodge_star(&f, g)?, g)?;
            let ratio = ss.coeff(m);
            let rest = ss.sub(&f.scale(ratio)).max_abs();
            if ratio.im != 0.0 || rest != 0.0 || ratio.re.abs() != ratio.re.abs().round() {
                return Err(Error::RelationCheck(format!("** is not a multiple of the identity on {m:04b}")));
            }
            match sign {
                None => sign = Some(ratio.re),
                Some(s) if s != ratio.re => {
                    return Err(Error::RelationCheck(format!("** mixes signs on grade {k}")))
                }
                _ => {}
            }
        }
        signs[k] = sign.unwrap_or(0.0);
    }
    Ok(signs)
}

/// A 16x16 complex matrix over the canonical form basis; column `j` is the
/// image of basis element `j`.
pub type OperatorMatrix16 = DenseMatrix;

fn operator_from_fn(f: impl Fn(u8) -> NonhomogeneousForm) -> OperatorMatrix16 {
    let mut m = DenseMatrix::zeros(16, 16);
    for (col, &mask) in basis_order().iter().enumerate() {
        let img = f(mask);
        for row in 0..16 {
            m[(row, col)] = img.coeffs[row];
        }
    }
    m
}

/// Matrix of `theta -> omega ^ theta`.
pub fn left_wedge_matrix(omega: &NonhomogeneousForm) -> OperatorMatrix16 {
    operator_from_fn(|m| omega.wedge(&NonhomogeneousForm::basis(m)))
}

/// Contraction of basis form `mask` with index `i` through `g`.
fn contract(i: usize, mask: u8, g: &MetricTensor) -> NonhomogeneousForm {
    let mut out = NonhomogeneousForm::zero();
    for (p, &j) in FormIndex(mask).indices().iter().enumerate() {
        let gij = g.get(i, j);
        if gij != 0.0 {
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            let rest = mask & !(1 << j);
            let pos = FormIndex(rest).position();
            out.coeffs[pos] += re(sign * gij);
        }
    }
    out
}

/// The raising operators `delta_i` and lowering operators `delta_i*`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaOps {
    pub delta: [OperatorMatrix16; 4],
    pub delta_star: [OperatorMatrix16; 4],
}

/// `delta_i` is left multiplication by `dx_i`; `delta_i*` removes each
/// factor `dx_{j_p}` with sign `(-1)^(p-1)` and weight `g_{i j_p}`.
pub fn delta_ops(g: &MetricTensor) -> DeltaOps {
    let delta = std::array::from_fn(|i| left_wedge_matrix(&NonhomogeneousForm::basis(1 << i)));
    let delta_star = std::array::from_fn(|i| operator_from_fn(|m| contract(i, m, g)));
    DeltaOps { delta, delta_star }
}

/// `delta_i - delta_i*`.
pub fn gamma_check_ops(g: &MetricTensor) -> [OperatorMatrix16; 4] {
    let d = delta_ops(g);
    std::array::from_fn(|i| &d.delta[i] - &d.delta_star[i])
}

fn combine(ops: &[OperatorMatrix16; 4], k: &[f64; 4]) -> OperatorMatrix16 {
    (0..4).fold(DenseMatrix::zeros(16, 16), |acc, i| acc + &ops[i] * re(k[i]))
}

/// `sum_i k_i (delta_i - delta_i*)`.
pub fn dirac_kahler_symbol(k: &[f64; 4], g: &MetricTensor) -> OperatorMatrix16 {
    combine(&gamma_check_ops(g), k)
}

/// `delta(k) delta*(k) + delta*(k) delta(k)` with `delta(k) = sum k_i delta_i`.
pub fn laplace_beltrami_symbol(k: &[f64; 4], g: &MetricTensor) -> OperatorMatrix16 {
    let d = delta_ops(g);
    let up = combine(&d.delta, k);
    let down = combine(&d.delta_star, k);
    &up * &down + &down * &up
}

/// Exponents of `x_0..x_3` in a monomial.
pub type Exponents = [u32; 4];

/// A form whose coefficients are polynomials in `x_0..x_3`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PolyForm {
    terms: BTreeMap<u8, BTreeMap<Exponents, C64>>,
}

impl PolyForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff * x^exps * dx_mask`.
    pub fn monomial(mask: u8, exps: Exponents, coeff: impl Into<C64>) -> Self {
        let mut f = Self::zero();
        f.add_term(mask, exps, coeff.into());
        f
    }

    pub fn add_term(&mut self, mask: u8, exps: Exponents, z: C64) {
        if z == ZERO {
            return;
        }
        let poly = self.terms.entry(mask).or_default();
        let e = poly.entry(exps).or_insert(ZERO);
        *e += z;
        if *e == ZERO {
            poly.remove(&exps);
            if poly.is_empty() {
                self.terms.remove(&mask);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, Exponents, C64)> + '_ {
        self.terms
            .iter()
            .flat_map(|(&m, p)| p.iter().map(move |(&e, &z)| (m, e, z)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, e, z) in other.terms() {
            out.add_term(m, e, z);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = Self::zero();
        for (m, e, z) in self.terms() {
            out.add_term(m, e, z * s);
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.terms().map(|(_, _, z)| z.norm()).fold(0.0, f64::max)
    }

    pub fn grade_part(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (m, e, z) in self.terms().filter(|(m, _, _)| m.count_ones() as usize == k) {
            out.add_term(m, e, z);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ea, x) in self.terms() {
            for (b, eb, y) in other.terms() {
                let s = wedge_sign(a, b);
                if s != 0.0 {
                    let e = std::array::from_fn(|i| ea[i] + eb[i]);
                    out.add_term(a | b, e, x * y * s);
                }
            }
        }
        out
    }

    /// Partial derivative of every coefficient by `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, mut e, z) in self.terms() {
            if e[i] > 0 {
                let n = e[i];
                e[i] -= 1;
                out.add_term(m, e, z * f64::from(n));
            }
        }
        out
    }

    /// Applies a constant operator to the form part of every monomial.
    pub fn map_forms(&self, op: impl Fn(&NonhomogeneousForm) -> NonhomogeneousForm) -> Self {
        let mut out = Self::zero();
        for (m, e, z) in self.terms() {
            let img = op(&NonhomogeneousForm::basis(m));
            for (mm, zz) in img.terms().filter(|(_, w)| *w != ZERO) {
                out.add_term(mm, e, z * zz);
            }
        }
        out
    }

    /// Value at a point.
    pub fn evaluate(&self, x: &[f64; 4]) -> NonhomogeneousForm {
        let mut f = NonhomogeneousForm::zero();
        for (m, e, z) in self.terms() {
            let v: f64 = (0..4).map(|i| x[i].powi(e[i] as i32)).product();
            let p = FormIndex(m).position();
            f.coeffs[p] += z * v;
        }
        f
    }
}

/// `d(f dx_J) = sum_i (d_i f) dx_i ^ dx_J`.
pub fn exterior_d(omega: &PolyForm) -> PolyForm {
    let mut out = PolyForm::zero();
    for i in 0..DIM {
        let dxi = PolyForm::monomial(1 << i, [0; 4], ONE);
        out = out.add(&dxi.wedge(&omega.partial(i)));
    }
    out
}

/// `sum_i delta_i* (d_i omega)`, the contraction form of the codifferential.
pub fn algebraic_codifferential(omega: &PolyForm, g: &MetricTensor) -> PolyForm {
    let mut out = PolyForm::zero();
    for i in 0..DIM {
        out = out.add(&omega.partial(i).map_forms(|f| apply_contraction(i, f, g)));
    }
    out
}

fn apply_contraction(i: usize, f: &NonhomogeneousForm, g: &MetricTensor) -> NonhomogeneousForm {
    let mut out = NonhomogeneousForm::zero();
    for (m, z) in f.terms().filter(|(_, z)| *z != ZERO) {
        out = out.add(&contract(i, m, g).scale(z));
    }
    out
}

/// `(-1)^(n(p+1)+1) * d *` with `n = 4`, which is `-* d *` on every grade.
///
/// Only constant diagonal metrics with entries `+-1` are accepted.
pub fn hodge_codifferential(omega: &PolyForm, g: &MetricTensor) -> Result<PolyForm> {
    if g.unit_diagonal().is_none() {
        return Err(Error::UnsupportedMetric);
    }
    let star = |f: &NonhomogeneousForm| hodge_star(f, g).expect("nondegenerate");
    let inner = exterior_d(&omega.map_forms(star));
    Ok(inner.map_forms(star).scale(-ONE))
}

/// Ratio of [`hodge_codifferential`] to [`algebraic_codifferential`] on
/// each grade `p = 1..=4` (index 0 is unused and set to 1), measured on
/// linear monomials.
pub fn codifferential_sign_table(g: &MetricTensor) -> Result<[f64; 5]> {
    let mut table = [1.0; 5];
    for p in 1..=DIM {
        let mut sign = None;
        for &m in basis_order().iter().filter(|m| m.count_ones() as usize == p) {
            for i in FormIndex(m).indices() {
                let mut e = [0; 4];
                e[i] = 1;
                let f = PolyForm::monomial(m, e, ONE);
                let h = hodge_codifferential(&f, g)?;
                let a = algebraic_codifferential(&f, g);
                let s = if h == a {
                    1.0
                } else if h == a.scale(-ONE) {
                    -1.0
                } else {
                    return Err(Error::RelationCheck(format!("codifferentials disagree on grade {p}")));
                };
                match sign {
                    None => sign = Some(s),
                    Some(t) if t != s => {
                        return Err(Error::RelationCheck(format!("mixed codifferential sign on grade {p}")))
                    }
                    _ => {}
                }
            }
        }
        table[p] = sign.unwrap_or(1.0);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dx(i: usize) -> NonhomogeneousForm {
        NonhomogeneousForm::basis(1 << i)
    }

    #[test]
    fn basis_order_is_grade_then_lexicographic() {
        let listed: Vec<Vec<usize>> = basis_order().iter().map(|&m| FormIndex(m).indices()).collect();
        assert_eq!(listed[0], Vec::<usize>::new());
        assert_eq!(listed[5], vec![0, 1]);
        assert_eq!(listed[7], vec![0, 3]);
        assert_eq!(listed[8], vec![1, 2]);
        assert_eq!(listed[11], vec![0, 1, 2]);
        assert_eq!(listed[15], vec![0, 1, 2, 3]);
    }

    #[test]
    fn alternation_examples() {
        let mut sym = Tensor::zeros(2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                sym.data[i * 4 + j] = re((i + j) as f64);
            }
        }
        assert!(alternate(&sym).unwrap().data().iter().all(|z| *z == ZERO));
        let e01 = Tensor::basis(&[0, 1]).unwrap();
        let a = alternate(&e01).unwrap();
        assert_eq!(a.get(&[0, 1]), re(0.5));
        assert_eq!(a.get(&[1, 0]), re(-0.5));
        assert_eq!(alternate(&a).unwrap(), a);
        assert!(Tensor::zeros(5).is_err());
    }

    #[test]
    fn wedge_examples() {
        let d01 = dx(0).wedge(&dx(1));
        assert_eq!(d01, dx(1).wedge(&dx(0)).scale(-ONE));
        assert!(dx(0).wedge(&dx(0)).is_zero());
        let lhs = dx(0).add(&dx(1)).wedge(&dx(2).add(&dx(3)));
        let want = NonhomogeneousForm::from_terms(&[
            (0b0101, ONE),
            (0b1001, ONE),
            (0b0110, ONE),
            (0b1010, ONE),
        ]);
        assert_eq!(lhs, want);
    }

    #[test]
    fn tensor_route_matches_wedge() {
        let a = dx(0).add(&NonhomogeneousForm::basis(0b0110).scale(re(2.0)));
        let b = dx(3).add(&NonhomogeneousForm::basis(0)).scale(re(-1.5));
        assert!(wedge_via_tensors(&a, &b).unwrap().sub(&a.wedge(&b)).max_abs() < 1e-14);
    }

    #[test]
    fn inner_examples() {
        let g = MetricTensor::minkowski();
        assert_eq!(form_inner(&dx(0), &dx(0), &g).unwrap(), ONE);
        let d01 = NonhomogeneousForm::basis(0b0011);
        assert_eq!(form_inner(&d01, &d01, &g).unwrap(), -ONE);
        assert_eq!(form_inner(&dx(0), &NonhomogeneousForm::basis(0b0110), &g).unwrap(), ZERO);
        assert!(matches!(form_inner(&dx(0), &dx(0), &MetricTensor::zero()), Err(Error::DegenerateMetric)));
    }

    #[test]
    fn hodge_examples() {
        let e = MetricTensor::euclidean();
        let star = hodge_star(&NonhomogeneousForm::basis(0b0011), &e).unwrap();
        assert_eq!(star, NonhomogeneousForm::basis(0b1100));
        assert_eq!(double_star_signs(&e).unwrap(), [1.0, -1.0, 1.0, -1.0, 1.0]);
        assert_eq!(double_star_signs(&MetricTensor::minkowski()).unwrap(), [-1.0, 1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn delta_examples() {
        let g = MetricTensor::minkowski();
        let d = delta_ops(&g);
        let one = NonhomogeneousForm::basis(0).to_vector();
        assert_eq!(&d.delta[0] * &one, dx(0).to_vector());
        assert_eq!(&d.delta_star[0] * dx(0).to_vector(), one);
        for i in 0..4 {
            assert!((&d.delta_star[i] * &one).iter().all(|z| *z == ZERO));
        }
    }

    #[test]
    fn gamma_check_examples() {
        let g = MetricTensor::minkowski();
        let gc = gamma_check_ops(&g);
        assert_eq!(&gc[0] * &gc[0], -DenseMatrix::identity(16, 16));
        let z = gamma_check_ops(&MetricTensor::zero());
        assert_eq!(z[2], delta_ops(&MetricTensor::zero()).delta[2]);
        assert!((&z[2] * &z[2]).iter().all(|w| *w == ZERO));
        let mut e = [[0.0; 4]; 4];
        e[0][1] = 0.5;
        e[1][0] = 0.5;
        let g = MetricTensor::new(e, true).unwrap();
        let gc = gamma_check_ops(&g);
        assert_eq!(&gc[0] * &gc[1] + &gc[1] * &gc[0], -DenseMatrix::identity(16, 16));
    }

    #[test]
    fn symbol_examples() {
        let g = MetricTensor::minkowski();
        let k = [1.0, 0.0, 0.0, 0.0];
        let dk = dirac_kahler_symbol(&k, &g);
        assert_eq!(&dk * &dk, -DenseMatrix::identity(16, 16));
        assert_eq!(laplace_beltrami_symbol(&k, &g), DenseMatrix::identity(16, 16));
        let null = [1.0, 1.0, 0.0, 0.0];
        let dn = dirac_kahler_symbol(&null, &g);
        assert!((&dn * &dn).iter().all(|z| *z == ZERO));
        assert!(laplace_beltrami_symbol(&[0.3, 1.0, 2.0, -1.0], &MetricTensor::zero())
            .iter()
            .all(|z| *z == ZERO));
    }

    #[test]
    fn exterior_d_examples() {
        let x0 = PolyForm::monomial(0, [1, 0, 0, 0], ONE);
        assert_eq!(exterior_d(&x0), PolyForm::monomial(0b0001, [0; 4], ONE));
        let f = PolyForm::monomial(0b0010, [1, 0, 0, 0], ONE);
        assert_eq!(exterior_d(&f), PolyForm::monomial(0b0011, [0; 4], ONE));
        let h = PolyForm::monomial(0b0100, [1, 1, 0, 0], ONE);
        assert!(exterior_d(&exterior_d(&h)).is_zero());
    }

    #[test]
    fn codifferential_examples() {
        let e = MetricTensor::euclidean();
        let s = PolyForm::monomial(0, [2, 1, 0, 0], ONE);
        assert!(hodge_codifferential(&s, &e).unwrap().is_zero());
        let f = PolyForm::monomial(0b0001, [1, 0, 0, 0], ONE);
        let table = codifferential_sign_table(&e).unwrap();
        assert_eq!(
            hodge_codifferential(&f, &e).unwrap(),
            PolyForm::monomial(0, [0; 4], table[1])
        );
        assert_eq!(algebraic_codifferential(&f, &e), PolyForm::monomial(0, [0; 4], ONE));
        // x0^2: (d*d + dd*) f = -2 with the Hodge sign, the component
        // Laplacian up to that sign.
        let sq = PolyForm::monomial(0, [2, 0, 0, 0], ONE);
        let lap = hodge_codifferential(&exterior_d(&sq), &e)
            .unwrap()
            .add(&exterior_d(&hodge_codifferential(&sq, &e).unwrap()));
        assert_eq!(lap, PolyForm::monomial(0, [0; 4], 2.0 * table[1]));
        let mut nd = [[0.0; 4]; 4];
        nd[0][0] = 1.0;
        nd[1][1] = 1.0;
        nd[2][2] = 2.0;
        nd[3][3] = 1.0;
        let bad = MetricTensor::new(nd, false).unwrap();
        assert!(matches!(hodge_codifferential(&f, &bad), Err(Error::UnsupportedMetric)));
    }

    #[test]
    fn codifferential_sign_tables() {
        assert_eq!(codifferential_sign_table(&MetricTensor::euclidean()).unwrap(), [1.0, -1.0, -1.0, -1.0, -1.0]);
        let m = codifferential_sign_table(&MetricTensor::minkowski()).unwrap();
        assert!(m.iter().all(|s| s.abs() == 1.0));
    }

    #[test]
    fn form_json_round_trip() {
        let f = NonhomogeneousForm::from_terms(&[(0, re(1.0)), (0b1010, C64::new(0.0, -2.0))]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"coeffs":[{"mask":[],"re":1.0,"im":0.0},{"mask":[1,3],"re":0.0,"im":-2.0}]}"#);
        let back: NonhomogeneousForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
