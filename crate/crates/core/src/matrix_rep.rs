//! Matrix representations: Pauli matrices, tensor-product generators,
//! Jordan-Wigner operators, gamma matrices and momentum-space Dirac
//! solutions.
//!
//! All gamma representations satisfy
//! `gamma^j gamma^k + gamma^k gamma^j = 2 g_jk` with `g = diag(1, -1, -1, -1)`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    anticommutator, frobenius, from_rows, identity, inverse, is_exact_scalar, is_exact_zero,
    kron, null_space, re, DenseMatrix, DenseVector, C64, I, ONE, ZERO,
};

/// Diagonal of the Minkowski metric used by every gamma representation.
pub const MINKOWSKI: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// `[sigma_x, sigma_y, sigma_z]`.
pub fn pauli_matrices() -> [DenseMatrix; 3] {
    [
        from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        from_rows(&[&[ZERO, -I], &[I, ZERO]]),
        from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
    ]
}

fn kron_all(factors: &[DenseMatrix]) -> DenseMatrix {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| kron(&acc, f))
}

/// A list of equally sized square matrices with the squares they are meant
/// to have.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub mats: Vec<DenseMatrix>,
    pub target_diag: Vec<f64>,
}

impl GeneratorSet {
    pub fn new(mats: Vec<DenseMatrix>, target_diag: Vec<f64>) -> Result<Self> {
        if mats.len() != target_diag.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices, {} target squares",
                mats.len(),
                target_diag.len()
            )));
        }
        if let Some(first) = mats.first() {
            let n = first.nrows();
            if mats.iter().any(|m| m.nrows() != n || m.ncols() != n) {
                return Err(Error::DimensionMismatch("generators must be square and equal-sized".into()));
            }
        }
        Ok(GeneratorSet { mats, target_diag })
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.mats.first().map_or(0, |m| m.nrows())
    }

    /// True when `{e_j, e_k} = 2 target_diag[k] delta_jk` holds with no
    /// rounding.
    pub fn relations_exact(&self) -> bool {
        let n = self.len();
        (0..n).all(|j| {
            (j..n).all(|k| {
                let ac = anticommutator(&self.mats[j], &self.mats[k]);
                if j == k {
                    is_exact_scalar(&ac, re(2.0 * self.target_diag[k]))
                } else {
                    is_exact_zero(&ac)
                }
            })
        })
    }

    /// Largest Frobenius deviation of an anticommutator from its target.
    pub fn relations_residual(&self) -> f64 {
        let n = self.len();
        let id = identity(self.dim());
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in j..n {
                let ac = anticommutator(&self.mats[j], &self.mats[k]);
                let want = if j == k { &id * re(2.0 * self.target_diag[k]) } else { &id * ZERO };
                worst = worst.max(frobenius(&(ac - want)));
            }
        }
        worst
    }
}

fn check_m(m: usize) -> Result<()> {
    if (1..=3).contains(&m) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("m = {m}, expected 1..=3")))
    }
}

/// `2m` anticommuting generators of size `2^m` squaring to the identity.
///
/// Pair `k` is `1^(m-k-1) (x) s (x) sigma_z^k` with `s = sigma_x, sigma_y`,
/// emitted in order `k = 0, 1, ...`. With `odd_extra` the generator
/// `sigma_z^m` is appended, giving `2m + 1` generators.
pub fn euclid_generators(m: usize, odd_extra: bool) -> Result<GeneratorSet> {
    check_m(m)?;
    let [sx, sy, sz] = pauli_matrices();
    let one = identity(2);
    let build = |k: usize, s: &DenseMatrix| {
        let mut factors = vec![one.clone(); m - k - 1];
        factors.push(s.clone());
        factors.extend(std::iter::repeat_n(sz.clone(), k));
        kron_all(&factors)
    };
    let mut mats = Vec::with_capacity(2 * m + 1);
    for k in 0..m {
        mats.push(build(k, &sx));
        mats.push(build(k, &sy));
    }
    if odd_extra {
        mats.push(kron_all(&vec![sz; m]));
    }
    let n = mats.len();
    GeneratorSet::new(mats, vec![1.0; n])
}

/// Annihilation and creation operators from the Jordan-Wigner construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CarOperators {
    pub annihilators: GeneratorSet,
    pub creators: GeneratorSet,
}

impl CarOperators {
    /// `{a_j, a_k}` and `{a_j+, a_k+}` vanish with no rounding.
    pub fn nilpotent_relations_exact(&self) -> bool {
        let pairs = |set: &GeneratorSet| {
            (0..set.len()).all(|j| {
                (j..set.len()).all(|k| is_exact_zero(&anticommutator(&set.mats[j], &set.mats[k])))
            })
        };
        pairs(&self.annihilators) && pairs(&self.creators)
    }

    /// The constant `c` in `{a_j, a_k+} = c delta_jk`, or `None` when the
    /// mixed anticommutators are not all exactly of that form.
    pub fn measured_constant(&self) -> Option<C64> {
        let a = &self.annihilators.mats;
        let b = &self.creators.mats;
        let c0 = anticommutator(&a[0], &b[0])[(0, 0)];
        for j in 0..a.len() {
            for k in 0..b.len() {
                let ac = anticommutator(&a[j], &b[k]);
                let ok = if j == k { is_exact_scalar(&ac, c0) } else { is_exact_zero(&ac) };
                if !ok {
                    return None;
                }
            }
        }
        Some(c0)
    }
}

/// `a_k = 1^(m-k-1) (x) a (x) sigma_z^k` with `a = [[0, 1], [0, 0]]`, and
/// `a_k+` built the same way from the transpose of `a`.
pub fn jordan_wigner(m: usize) -> Result<CarOperators> {
    check_m(m)?;
    let sz = pauli_matrices()[2].clone();
    let one = identity(2);
    let a = from_rows(&[&[ZERO, ONE], &[ZERO, ZERO]]);
    let a_plus = a.transpose();
    let build = |k: usize, s: &DenseMatrix| {
        let mut factors = vec![one.clone(); m - k - 1];
        factors.push(s.clone());
        factors.extend(std::iter::repeat_n(sz.clone(), k));
        kron_all(&factors)
    };
    let ann: Vec<_> = (0..m).map(|k| build(k, &a)).collect();
    let cre: Vec<_> = (0..m).map(|k| build(k, &a_plus)).collect();
    Ok(CarOperators {
        annihilators: GeneratorSet::new(ann, vec![0.0; m])?,
        creators: GeneratorSet::new(cre, vec![0.0; m])?,
    })
}

/// `a_j = (e_j + i e_(m+j)) / 2` and `a_j* = (e_j - i e_(m+j)) / 2` for
/// `j = 0..m` (zero-based, pairing generator `j` with generator `m + j`).
pub fn isotropic_generators(gens: &GeneratorSet, m: usize) -> Result<CarOperators> {
    if gens.len() < 2 * m || m == 0 {
        return Err(Error::DimensionMismatch(format!(
            "need 2m = {} generators, got {}",
            2 * m,
            gens.len()
        )));
    }
    let pair = GeneratorSet::new(gens.mats[..2 * m].to_vec(), gens.target_diag[..2 * m].to_vec())?;
    if pair.target_diag.iter().any(|&d| d != 1.0) || !pair.relations_exact() {
        return Err(Error::RelationCheck(
            "input generators do not satisfy {e_j, e_k} = 2 delta_jk".into(),
        ));
    }
    let half = re(0.5);
    let ann = (0..m)
        .map(|j| (&gens.mats[j] + &gens.mats[m + j] * I) * half)
        .collect();
    let cre = (0..m)
        .map(|j| (&gens.mats[j] - &gens.mats[m + j] * I) * half)
        .collect();
    Ok(CarOperators {
        annihilators: GeneratorSet::new(ann, vec![0.0; m])?,
        creators: GeneratorSet::new(cre, vec![0.0; m])?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepLabel {
    Weyl,
    Standard,
    Custom,
}

/// Four 4x4 gamma matrices satisfying the Minkowski Clifford relations.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRep {
    gammas: [DenseMatrix; 4],
    label: RepLabel,
}

/// Tolerance on the relation residual accepted by [`GammaRep::new`].
pub const GAMMA_TOL: f64 = 1e-10;

impl GammaRep {
    pub fn new(gammas: [DenseMatrix; 4], label: RepLabel) -> Result<Self> {
        if gammas.iter().any(|g| g.nrows() != 4 || g.ncols() != 4) {
            return Err(Error::DimensionMismatch("gamma matrices must be 4x4".into()));
        }
        let rep = GammaRep { gammas, label };
        let residual = rep.relations_residual();
        let scale = rep.gammas.iter().map(frobenius).fold(1.0, f64::max).powi(2);
        if residual > GAMMA_TOL * scale {
            return Err(Error::RelationCheck(format!(
                "gamma relation residual {residual:.3e}"
            )));
        }
        Ok(rep)
    }

    pub fn gammas(&self) -> &[DenseMatrix; 4] {
        &self.gammas
    }

    pub fn gamma(&self, k: usize) -> &DenseMatrix {
        &self.gammas[k]
    }

    pub fn label(&self) -> RepLabel {
        self.label
    }

    pub fn generator_set(&self) -> GeneratorSet {
        GeneratorSet {
            mats: self.gammas.to_vec(),
            target_diag: MINKOWSKI.to_vec(),
        }
    }

    pub fn relations_residual(&self) -> f64 {
        self.generator_set().relations_residual()
    }

    /// Ordered product `gamma^(i1) ... gamma^(ik)` over the set bits of
    /// `mask`, ascending; the empty product is the identity.
    pub fn product(&self, mask: u8) -> DenseMatrix {
        (0..4)
            .filter(|k| mask & (1 << k) != 0)
            .fold(identity(4), |acc, k| acc * &self.gammas[k])
    }
}

/// The Weyl (chiral) or standard (Dirac) representation.
pub fn gamma_rep(label: RepLabel) -> Result<GammaRep> {
    let [s1, s2, s3] = pauli_matrices();
    let z = DenseMatrix::zeros(2, 2);
    let one = identity(2);
    let block = |a: &DenseMatrix, b: &DenseMatrix, cc: &DenseMatrix, d: &DenseMatrix| {
        let mut m = DenseMatrix::zeros(4, 4);
        m.view_mut((0, 0), (2, 2)).copy_from(a);
        m.view_mut((0, 2), (2, 2)).copy_from(b);
        m.view_mut((2, 0), (2, 2)).copy_from(cc);
        m.view_mut((2, 2), (2, 2)).copy_from(d);
        m
    };
    let gammas = match label {
        RepLabel::Weyl => [
            block(&z, &one, &one, &z),
            block(&z, &-&s1, &s1, &z),
            block(&z, &-&s2, &s2, &z),
            block(&z, &-&s3, &s3, &z),
        ],
        RepLabel::Standard => [
            block(&one, &z, &z, &-&one),
            block(&z, &s1, &-&s1, &z),
            block(&z, &s2, &-&s2, &z),
            block(&z, &s3, &-&s3, &z),
        ],
        RepLabel::Custom => {
            return Err(Error::OutOfRange("custom representations are built with GammaRep::new".into()))
        }
    };
    GammaRep::new(gammas, label)
}

/// `gamma^k -> B gamma^k B^-1`.
pub fn change_rep(rep: &GammaRep, b: &DenseMatrix) -> Result<GammaRep> {
    let b_inv = inverse(b)?;
    let gammas = rep.gammas.clone().map(|g| b * g * &b_inv);
    GammaRep::new(gammas, RepLabel::Custom)
}

/// Solves `B gamma_from^k = gamma_to^k B` for all `k`. The solution space is
/// one-dimensional; the representative has Frobenius norm 2 and its first
/// significant entry (row-major) real positive.
pub fn intertwiner(from: &GammaRep, to: &GammaRep) -> Result<DenseMatrix> {
    // Row-major vec(X B Y) = (X (x) Y^T) vec(B).
    let id = identity(4);
    let mut system = DenseMatrix::zeros(64, 16);
    for k in 0..4 {
        let block = kron(&id, &from.gammas[k].transpose()) - kron(&to.gammas[k], &id);
        system.view_mut((16 * k, 0), (16, 16)).copy_from(&block);
    }
    let ns = null_space(&system, 1e-9);
    if ns.len() != 1 {
        return Err(Error::RelationCheck(format!(
            "intertwiner space has dimension {}",
            ns.len()
        )));
    }
    let b = DenseMatrix::from_fn(4, 4, |i, j| ns[0][i * 4 + j]);
    let big = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = ns[0]
        .iter()
        .copied()
        .find(|z| z.norm() > 0.5 * big)
        .ok_or(Error::Singular)?;
    let phase = pivot.conj() / pivot.norm();
    let scale = re(2.0 / frobenius(&b));
    Ok(b * (phase * scale))
}

/// Conjugator taking the Weyl representation to the standard one, solved
/// once from the intertwining equations.
pub fn weyl_to_standard() -> &'static DenseMatrix {
    static CACHE: OnceLock<DenseMatrix> = OnceLock::new();
    CACHE.get_or_init(|| {
        let weyl = gamma_rep(RepLabel::Weyl).expect("weyl rep is valid");
        let standard = gamma_rep(RepLabel::Standard).expect("standard rep is valid");
        intertwiner(&weyl, &standard).expect("weyl and standard reps are equivalent")
    })
}

/// Four-momentum `(p_0, p_1, p_2, p_3)` in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Momentum4 {
    pub p: [f64; 4],
}

impl Momentum4 {
    pub fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        Momentum4 { p: [p0, p1, p2, p3] }
    }

    /// `p_0^2 - p_1^2 - p_2^2 - p_3^2`.
    pub fn minkowski_square(&self) -> f64 {
        self.p.iter().zip(MINKOWSKI).map(|(x, g)| g * x * x).sum()
    }

    /// On-shell momentum with spatial part `(p1, p2, p3)` and positive
    /// energy.
    pub fn on_shell(mass: f64, p1: f64, p2: f64, p3: f64) -> Self {
        Self::new((mass * mass + p1 * p1 + p2 * p2 + p3 * p3).sqrt(), p1, p2, p3)
    }
}

/// `sum_k p_k gamma^k`.
pub fn dirac_momentum_matrix(p: &Momentum4, rep: &GammaRep) -> DenseMatrix {
    (0..4).fold(DenseMatrix::zeros(4, 4), |acc, k| acc + rep.gamma(k) * re(p.p[k]))
}

/// Relative tolerance on `|g(p, p) - m^2|`.
pub const MASS_SHELL_TOL: f64 = 1e-9;

fn mass_shell_defect(p: &Momentum4, mass: f64) -> Result<()> {
    let defect = (p.minkowski_square() - mass * mass).abs();
    let scale = p.p.iter().map(|x| x * x).sum::<f64>().max(mass * mass).max(1.0);
    if defect > MASS_SHELL_TOL * scale {
        Err(Error::OffShell { defect })
    } else {
        Ok(())
    }
}

/// Orthonormal basis of the kernel of `sum p_k gamma^k - m`.
pub fn plane_wave_solutions(p: &Momentum4, mass: f64, rep: &GammaRep) -> Result<Vec<DenseVector>> {
    if mass <= 0.0 {
        return Err(Error::OutOfRange(format!("mass {mass} must be positive")));
    }
    mass_shell_defect(p, mass)?;
    let op = dirac_momentum_matrix(p, rep) - identity(4) * re(mass);
    let raw = null_space(&op, 1e-9);
    if raw.len() != 2 {
        return Err(Error::RelationCheck(format!(
            "kernel has dimension {}, expected 2",
            raw.len()
        )));
    }
    Ok(gram_schmidt(raw))
}

fn gram_schmidt(vs: Vec<DenseVector>) -> Vec<DenseVector> {
    let mut out: Vec<DenseVector> = Vec::with_capacity(vs.len());
    for mut v in vs {
        for u in &out {
            let proj = u.dotc(&v);
            v -= u * proj;
        }
        let n = v.norm();
        out.push(v / re(n));
    }
    out
}

/// Residuals of the two-spinor system and of the four-component equation
/// for `psi = (eta, xi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PauliResiduals {
    /// `|(p_0 + sigma.p) eta - m xi|`.
    pub first: f64,
    /// `|(p_0 - sigma.p) xi - m eta|`.
    pub second: f64,
    /// `|(sum p_k gamma^k - m) psi|` in the Weyl representation.
    pub dirac: f64,
}

pub fn pauli_system_check(p: &Momentum4, mass: f64, eta: &DenseVector, xi: &DenseVector) -> Result<PauliResiduals> {
    if eta.len() != 2 || xi.len() != 2 {
        return Err(Error::DimensionMismatch("Pauli spinors have two components".into()));
    }
    let sigma = pauli_matrices();
    let sp = (0..3).fold(DenseMatrix::zeros(2, 2), |acc, k| acc + &sigma[k] * re(p.p[k + 1]));
    let p0 = identity(2) * re(p.p[0]);
    let r1 = (&p0 + &sp) * eta - xi * re(mass);
    let r2 = (&p0 - &sp) * xi - eta * re(mass);
    let weyl = gamma_rep(RepLabel::Weyl)?;
    let psi = DenseVector::from_iterator(4, eta.iter().chain(xi.iter()).copied());
    let r = (dirac_momentum_matrix(p, &weyl) - identity(4) * re(mass)) * psi;
    Ok(PauliResiduals {
        first: r1.norm(),
        second: r2.norm(),
        dirac: r.norm(),
    })
}

/// Shorthand for a complex column vector.
pub fn cvec(entries: &[C64]) -> DenseVector {
    DenseVector::from_column_slice(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs};

    #[test]
    fn pauli_examples() {
        let [sx, sy, sz] = pauli_matrices();
        assert_eq!(&sx * &sx, identity(2));
        assert_eq!(&sx * &sy, &sz * I);
        assert_eq!(sz, from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]));
    }

    #[test]
    fn euclid_generator_examples() {
        let [sx, sy, sz] = pauli_matrices();
        let g1 = euclid_generators(1, false).unwrap();
        assert_eq!(g1.mats, vec![sx.clone(), sy.clone()]);
        let g2 = euclid_generators(2, false).unwrap();
        assert_eq!(g2.mats[2], kron(&sx, &sz));
        for m in 1..=3 {
            for odd in [false, true] {
                let g = euclid_generators(m, odd).unwrap();
                assert_eq!(g.len(), 2 * m + usize::from(odd));
                assert_eq!(g.dim(), 1 << m);
                assert!(g.relations_exact());
            }
        }
        assert!(euclid_generators(0, false).is_err());
        assert!(euclid_generators(4, false).is_err());
    }

    #[test]
    fn jordan_wigner_examples() {
        let car = jordan_wigner(1).unwrap();
        assert_eq!(car.annihilators.mats[0], from_rows(&[&[ZERO, ONE], &[ZERO, ZERO]]));
        assert!(is_exact_zero(&(&car.annihilators.mats[0] * &car.annihilators.mats[0])));
        for m in 1..=3 {
            let car = jordan_wigner(m).unwrap();
            assert!(car.nilpotent_relations_exact());
            assert_eq!(car.measured_constant(), Some(ONE));
        }
    }

    #[test]
    fn isotropic_examples() {
        let g = euclid_generators(1, false).unwrap();
        let car = isotropic_generators(&g, 1).unwrap();
        assert_eq!(car.annihilators.mats[0], from_rows(&[&[ZERO, ONE], &[ZERO, ZERO]]));
        for m in 1..=3 {
            let car = isotropic_generators(&euclid_generators(m, false).unwrap(), m).unwrap();
            assert!(car.nilpotent_relations_exact());
            assert_eq!(car.measured_constant(), Some(ONE));
        }
    }

    #[test]
    fn isotropic_rejects_bad_input() {
        let bad = GeneratorSet::new(vec![identity(2), identity(2)], vec![1.0, 1.0]).unwrap();
        assert!(matches!(isotropic_generators(&bad, 1), Err(Error::RelationCheck(_))));
    }

    #[test]
    fn gamma_rep_examples() {
        let w = gamma_rep(RepLabel::Weyl).unwrap();
        let s = gamma_rep(RepLabel::Standard).unwrap();
        let z = ZERO;
        assert_eq!(
            *w.gamma(0),
            from_rows(&[&[z, z, ONE, z], &[z, z, z, ONE], &[ONE, z, z, z], &[z, ONE, z, z]])
        );
        assert_eq!(
            *s.gamma(0),
            DenseMatrix::from_diagonal(&cvec(&[ONE, ONE, -ONE, -ONE]))
        );
        for rep in [&w, &s] {
            assert_eq!(rep.gamma(1) * rep.gamma(1), -identity(4));
            assert!(rep.generator_set().relations_exact());
        }
    }

    #[test]
    fn weyl_to_standard_matches_block_candidate() {
        let h = re(std::f64::consts::FRAC_1_SQRT_2);
        let candidate = from_rows(&[
            &[h, ZERO, h, ZERO],
            &[ZERO, h, ZERO, h],
            &[h, ZERO, -h, ZERO],
            &[ZERO, h, ZERO, -h],
        ]);
        let w = gamma_rep(RepLabel::Weyl).unwrap();
        let s = gamma_rep(RepLabel::Standard).unwrap();
        let mapped = change_rep(&w, &candidate).unwrap();
        for k in 0..4 {
            assert!(max_abs(&(mapped.gamma(k) - s.gamma(k))) < 1e-15);
        }
        let solved = weyl_to_standard();
        assert!(max_abs(&(solved - &candidate)) < 1e-12);
    }

    #[test]
    fn change_rep_identity_and_singular() {
        let w = gamma_rep(RepLabel::Weyl).unwrap();
        let same = change_rep(&w, &identity(4)).unwrap();
        assert_eq!(same.gammas(), w.gammas());
        assert!(matches!(change_rep(&w, &DenseMatrix::zeros(4, 4)), Err(Error::Singular)));
    }

    #[test]
    fn momentum_matrix_examples() {
        let w = gamma_rep(RepLabel::Weyl).unwrap();
        let m = 1.5;
        assert_eq!(dirac_momentum_matrix(&Momentum4::new(m, 0.0, 0.0, 0.0), &w), w.gamma(0) * re(m));
        let null = Momentum4::new(1.0, 0.0, 0.6, 0.8);
        let d = dirac_momentum_matrix(&null, &w);
        assert!(max_abs(&(&d * &d)) < 1e-15);
    }

    #[test]
    fn plane_wave_examples() {
        let w = gamma_rep(RepLabel::Weyl).unwrap();
        let m = 2.0;
        let rest = plane_wave_solutions(&Momentum4::new(m, 0.0, 0.0, 0.0), m, &w).unwrap();
        assert_eq!(rest.len(), 2);
        for u in &rest {
            assert!((u[0] - u[2]).norm() < 1e-12 && (u[1] - u[3]).norm() < 1e-12);
        }
        let p = Momentum4::new((m * m + 1.0f64).sqrt(), 1.0, 0.0, 0.0);
        let sols = plane_wave_solutions(&p, m, &w).unwrap();
        assert_eq!(sols.len(), 2);
        let op = dirac_momentum_matrix(&p, &w) - identity(4) * re(m);
        for u in &sols {
            assert!((&op * u).norm() < 1e-10);
        }
        assert!(matches!(
            plane_wave_solutions(&Momentum4::new(m, m, 0.0, 0.0), m, &w),
            Err(Error::OffShell { .. })
        ));
    }

    #[test]
    fn pauli_system_examples() {
        let w = gamma_rep(RepLabel::Weyl).unwrap();
        let m = 1.0;
        let p = Momentum4::new(m, 0.0, 0.0, 0.0);
        for u in plane_wave_solutions(&p, m, &w).unwrap() {
            let eta = cvec(&[u[0], u[1]]);
            let xi = cvec(&[u[2], u[3]]);
            let r = pauli_system_check(&p, m, &eta, &xi).unwrap();
            assert!(r.first < 1e-12 && r.second < 1e-12);
        }
        let p = Momentum4::on_shell(1.0, 0.3, -0.2, 0.5);
        let eta = cvec(&[c(0.1, 0.4), c(-1.0, 0.2)]);
        let xi = cvec(&[c(0.7, 0.0), c(0.3, -0.5)]);
        let r = pauli_system_check(&p, m, &eta, &xi).unwrap();
        assert!(r.first > 0.0 && r.second > 0.0);
        assert!((r.dirac - r.first.hypot(r.second)).abs() < 1e-12);
        // Massless: eta in the kernel of p_0 + sigma.p, xi = 0.
        let p = Momentum4::new(1.0, 0.0, 0.0, -1.0);
        let eta = cvec(&[ONE, ZERO]);
        let r = pauli_system_check(&p, 0.0, &eta, &cvec(&[ZERO, ZERO])).unwrap();
        assert_eq!(r.first, 0.0);
    }
}
