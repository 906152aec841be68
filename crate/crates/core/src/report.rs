//! Verification suites and report rendering for the command line.
//!
//! A suite runs a fixed list of checks. Each check records a residual, the
//! tolerance it is compared against and the comparison used. Random inputs
//! come from [`crate::sampling::stream`], keyed by the check id, so a
//! [`RunConfig`] fully determines the report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::blade::{self, Multivector, Signature};
use crate::error::{Error, Result};
use crate::exterior::{
    basis_order, delta_ops, dirac_kahler_symbol, double_star_signs, exterior_d, form_inner,
    gamma_check_ops, hodge_star, laplace_beltrami_symbol, MetricTensor, NonhomogeneousForm,
};
use crate::gl4::{
    self, covariance_defect_form, covariance_residual, embed_two_spinor,
    induced_matrix_action, lorentz_spin_rep, operator_schmidt, plane_product_coefficients,
    spin_conjugation_action, spin_rep_residual, two_spinor_action, LinearMap4,
    SpinElement,
};
use crate::linalg::{anticommutator, c, identity, max_abs, rank, re, DenseMatrix, C64};
use crate::matrix_rep::{
    change_rep, dirac_momentum_matrix, euclid_generators, gamma_rep, jordan_wigner,
    pauli_system_check, plane_wave_solutions, weyl_to_standard, GammaRep, Momentum4, RepLabel,
    MINKOWSKI,
};
use crate::sampling::{self, stream};
use crate::schwarzschild as sch;
use crate::so33;

/// Suite names accepted by [`verify`].
pub const SUITES: [&str; 7] = ["clifford", "matrixrep", "exterior", "covariance", "so33", "schwarzschild", "all"];

/// Output format of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::UnknownName { kind: "format", name: other.to_string() }),
        }
    }
}

/// Number of random samples drawn by the sampled checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleCounts {
    /// Lorentz maps, non-isometries, unit-determinant maps, SL(2, C) maps.
    pub groups: usize,
    /// Metrics, momenta, multivectors and similar cheap draws.
    pub points: usize,
    /// Polynomial forms for `d^2 = 0`.
    pub polyforms: usize,
    /// Radii per Schwarzschild chain.
    pub radii: usize,
}

impl Default for SampleCounts {
    fn default() -> Self {
        SampleCounts { groups: 25, points: 100, polyforms: 50, radii: 100 }
    }
}

/// Settings shared by every suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Per check id replacement tolerances.
    pub tolerances: BTreeMap<String, f64>,
    pub format: Format,
    pub samples: SampleCounts,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: sampling::DEFAULT_SEED,
            tolerances: BTreeMap::new(),
            format: Format::Text,
            samples: SampleCounts::default(),
        }
    }
}

/// How a residual is compared with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = "<")]
    Below,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Comparison {
    fn holds(self, residual: f64, tol: f64) -> bool {
        match self {
            Comparison::Below => residual < tol,
            Comparison::AtMost => residual <= tol,
            Comparison::Above => residual > tol,
            Comparison::AtLeast => residual >= tol,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Comparison::Below => "<",
            Comparison::AtMost => "<=",
            Comparison::Above => ">",
            Comparison::AtLeast => ">=",
        }
    }
}

/// One verified property.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub pass: bool,
    pub residual: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The outcome of one suite run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

struct Collector<'a> {
    cfg: &'a RunConfig,
    checks: BTreeMap<String, Check>,
}

impl<'a> Collector<'a> {
    fn new(cfg: &'a RunConfig) -> Self {
        Collector { cfg, checks: BTreeMap::new() }
    }

    fn rng(&self, id: &str) -> rand_chacha::ChaCha8Rng {
        stream(self.cfg.seed, id)
    }

    fn record(&mut self, id: &str, anchor: &str, cmp: Comparison, tol: f64, outcome: Result<f64>) {
        let tol = self.cfg.tolerances.get(id).copied().unwrap_or(tol);
        let (residual, note) = match outcome {
            Ok(r) => (r, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        let pass = note.is_none() && cmp.holds(residual, tol);
        let check = Check { id: id.to_string(), anchor: anchor.to_string(), pass, residual, comparison: cmp, tolerance: tol, note };
        self.checks.insert(id.to_string(), check);
    }

    fn below(&mut self, id: &str, anchor: &str, tol: f64, outcome: Result<f64>) {
        self.record(id, anchor, Comparison::Below, tol, outcome);
    }

    fn exact(&mut self, id: &str, anchor: &str, outcome: Result<f64>) {
        self.record(id, anchor, Comparison::AtMost, 0.0, outcome);
    }

    fn above(&mut self, id: &str, anchor: &str, tol: f64, outcome: Result<f64>) {
        self.record(id, anchor, Comparison::Above, tol, outcome);
    }

    fn at_least(&mut self, id: &str, anchor: &str, tol: f64, outcome: Result<f64>) {
        self.record(id, anchor, Comparison::AtLeast, tol, outcome);
    }

    fn finish(self, suite: &str) -> SuiteResult {
        let checks: Vec<Check> = self.checks.into_values().collect();
        SuiteResult { suite: suite.to_string(), seed: self.cfg.seed, pass: checks.iter().all(|c| c.pass), checks }
    }
}

fn max_over<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> Result<f64>) -> Result<f64> {
    // f64::max drops NaN, which would hide a broken sample.
    items.into_iter().try_fold(0.0f64, |m, x| {
        let r = f(x)?;
        Ok(if r.is_nan() || m.is_nan() { f64::NAN } else { m.max(r) })
    })
}

fn min_over<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> Result<f64>) -> Result<f64> {
    items.into_iter().try_fold(f64::INFINITY, |m, x| {
        let r = f(x)?;
        Ok(if r.is_nan() || m.is_nan() { f64::NAN } else { m.min(r) })
    })
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn weyl() -> Result<GammaRep> {
    gamma_rep(RepLabel::Weyl)
}

/// The unit shear sending `gamma^1 -> gamma^1 + gamma^2`.
pub fn shear() -> LinearMap4 {
    LinearMap4::from_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
    .expect("invertible")
}

fn clifford(col: &mut Collector) {
    let n = col.cfg.samples.points;

    let mut rng = col.rng("clifford.anticommutator");
    let sigs: Vec<Signature> = (0..20).map(|i| sampling::signature(&mut rng, 1 + i % blade::MAX_GENERATORS)).collect();
    col.exact(
        "clifford.anticommutator",
        "generator relations e_k e_j + e_j e_k = 2 g_kj",
        max_over(&sigs, |sig| {
            let mut worst = 0.0f64;
            for k in 0..sig.n() {
                for j in 0..sig.n() {
                    let (ek, ej) = (Multivector::basis_vector(k), Multivector::basis_vector(j));
                    let ac = &ek.geometric_product(&ej, sig)? + &ej.geometric_product(&ek, sig)?;
                    let want = if j == k { 2.0 * sig.square(k) } else { 0.0 };
                    worst = worst.max((&ac - &Multivector::scalar(want)).max_abs());
                }
            }
            Ok(worst)
        }),
    );

    let mut rng = col.rng("clifford.associativity");
    let triples: Vec<_> = (0..n)
        .map(|_| {
            let sig = sampling::signature(&mut rng, 4);
            let a = sampling::multivector(&mut rng, 4, 4);
            let b = sampling::multivector(&mut rng, 4, 4);
            let d = sampling::multivector(&mut rng, 4, 4);
            (sig, a, b, d)
        })
        .collect();
    col.below(
        "clifford.associativity",
        "associative algebra generated by the e_k",
        1e-12,
        max_over(&triples, |(sig, a, b, d)| {
            let l = a.geometric_product(b, sig)?.geometric_product(d, sig)?;
            let r = a.geometric_product(&b.geometric_product(d, sig)?, sig)?;
            Ok((&l - &r).max_abs())
        }),
    );
    col.below(
        "clifford.reversion",
        "reversion is an antiautomorphism",
        1e-12,
        max_over(&triples, |(sig, a, b, _)| {
            let l = a.geometric_product(b, sig)?.reverse();
            let r = b.reverse().geometric_product(&a.reverse(), sig)?;
            Ok((&l - &r).max_abs())
        }),
    );
    col.exact(
        "clifford.grade_sum",
        "grading of the algebra by subsets",
        max_over(&triples, |(sig, a, _, _)| {
            let mut sum = Multivector::zero();
            for k in 0..=4 {
                sum = &sum + &a.grade_project(k, sig)?;
            }
            Ok((&sum - a).max_abs())
        }),
    );

    let mut rng = col.rng("clifford.reflect");
    let sig = Signature::minkowski();
    let mut pairs = Vec::new();
    while pairs.len() < n {
        let v = sampling::vector(&mut rng, 4);
        let x = sampling::vector(&mut rng, 4);
        if sig.bilinear(&v, &v).abs() > 0.1 {
            pairs.push((v, x));
        }
    }
    col.below(
        "clifford.reflect",
        "reflection x - 2 g(x, v)/g(v) v",
        1e-12,
        max_over(&pairs, |(v, x)| {
            let img = blade::reflect(&Multivector::vector(v), &Multivector::vector(x), &sig)?;
            let want = blade::reflect_components(v, x, &sig)?;
            Ok((&img - &Multivector::vector(&want)).max_abs())
        }),
    );
    col.below(
        "clifford.reflect_involution",
        "reflection x - 2 g(x, v)/g(v) v",
        1e-12,
        max_over(&pairs, |(v, x)| {
            let once = blade::reflect_components(v, x, &sig)?;
            let twice = blade::reflect_components(v, &once, &sig)?;
            let scale = once.iter().fold(1.0f64, |m, a| m.max(a.abs()));
            Ok(twice.iter().zip(x).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())) / scale)
        }),
    );

    let mut rng = col.rng("clifford.spin_lift");
    let ls: Vec<LinearMap4> = (0..col.cfg.samples.groups).map(|_| sampling::lorentz(&mut rng)).collect();
    col.below(
        "clifford.spin_lift",
        "for any isometry A exists element h",
        1e-9,
        max_over(&ls, |l| {
            let a = l.to_dmatrix();
            let lift = blade::spin_lift(&a, &sig)?;
            let plus = blade::conjugation_residual(&lift.h, &a, &sig)?;
            let minus = blade::conjugation_residual(&lift.h.scale(-1.0), &a, &sig)?;
            Ok(plus.max(minus))
        }),
    );

    let mut rng = col.rng("clifford.grassmann");
    let g4 = Signature::grassmann(4).expect("valid");
    let pairs: Vec<_> = (0..n).map(|_| (sampling::multivector(&mut rng, 4, 4), sampling::multivector(&mut rng, 4, 4))).collect();
    col.exact(
        "clifford.grassmann",
        "degenerate quadratic form gives the Grassmann algebra",
        max_over(&pairs, |(a, b)| Ok((&a.geometric_product(b, &g4)? - &a.wedge(b)).max_abs())),
    );
}

fn matrixrep(col: &mut Collector) {
    col.exact(
        "matrixrep.euclid_relations",
        "complex generator representations",
        max_over(1..=3, |m| {
            let even = euclid_generators(m, false)?;
            let odd = euclid_generators(m, true)?;
            Ok(flag(even.relations_exact() && odd.relations_exact()))
        }),
    );
    col.exact(
        "matrixrep.car_nilpotent",
        "anticommutation relations of isotropic generators",
        max_over(1..=3, |m| Ok(flag(jordan_wigner(m)?.nilpotent_relations_exact()))),
    );
    col.exact(
        "matrixrep.car_constant",
        "anticommutation relations of isotropic generators",
        max_over(1..=3, |m| {
            let c0 = jordan_wigner(m)?.measured_constant().ok_or_else(|| Error::RelationCheck("no uniform constant".into()))?;
            Ok((c0 - re(1.0)).norm())
        }),
    );
    col.exact(
        "matrixrep.products_independent",
        "are complex Clifford algebras",
        weyl().map(|rep| {
            let mut m = DenseMatrix::zeros(16, 16);
            for (col_ix, &mask) in basis_order().iter().enumerate() {
                m.set_column(col_ix, &crate::linalg::vec_row_major(&rep.product(mask)));
            }
            (16 - rank(&m, 1e-9)) as f64
        }),
    );
    col.below(
        "matrixrep.gamma_relations",
        "the Dirac matrices",
        1e-10,
        max_over([RepLabel::Weyl, RepLabel::Standard], |l| Ok(gamma_rep(l)?.relations_residual())),
    );
    col.below(
        "matrixrep.change_rep",
        "saves the same quadratic form",
        1e-10,
        (|| {
            let w = weyl()?;
            let s = gamma_rep(RepLabel::Standard)?;
            let moved = change_rep(&w, weyl_to_standard())?;
            let diff = (0..4).fold(0.0f64, |m, k| m.max(max_abs(&(moved.gamma(k) - s.gamma(k)))));
            Ok(diff.max(moved.relations_residual()))
        })(),
    );

    let mut rng = col.rng("matrixrep.momentum_square");
    let ps: Vec<Momentum4> = (0..col.cfg.samples.points)
        .map(|_| {
            let v = sampling::four_vector(&mut rng);
            Momentum4::new(v[0], v[1], v[2], v[3])
        })
        .collect();
    col.below(
        "matrixrep.momentum_square",
        "factorization of the Klein-Gordon operator",
        1e-11,
        weyl().and_then(|rep| {
            max_over(&ps, |p| {
                let d = dirac_momentum_matrix(p, &rep);
                Ok(max_abs(&(&d * &d - identity(4) * re(p.minkowski_square()))))
            })
        }),
    );

    let mut rng = col.rng("matrixrep.plane_waves");
    let shells: Vec<(Momentum4, f64)> = (0..col.cfg.samples.groups)
        .map(|_| {
            let v = sampling::four_vector(&mut rng);
            let m = 0.5 + v[0].abs();
            (Momentum4::on_shell(m, v[1], v[2], v[3]), m)
        })
        .collect();
    col.below(
        "matrixrep.plane_waves",
        "the Dirac equation in momentum space",
        1e-10,
        weyl().and_then(|rep| {
            max_over(&shells, |(p, m)| {
                let sols = plane_wave_solutions(p, *m, &rep)?;
                let op = dirac_momentum_matrix(p, &rep) - identity(4) * re(*m);
                Ok(sols.iter().fold(0.0f64, |w, u| w.max((&op * u).norm())))
            })
        }),
    );
    col.below(
        "matrixrep.pauli_system",
        "two-component spinor equations",
        1e-10,
        weyl().and_then(|rep| {
            max_over(&shells, |(p, m)| {
                let u = plane_wave_solutions(p, *m, &rep)?.remove(0);
                let eta = u.rows(0, 2).into_owned();
                let xi = u.rows(2, 2).into_owned();
                let r = pauli_system_check(p, *m, &eta, &xi)?;
                Ok(r.first.max(r.second).max(r.dirac))
            })
        }),
    );
}

fn anticommutator_defect(ops: &[DenseMatrix; 4], g: &MetricTensor) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let ac = anticommutator(&ops[i], &ops[j]) + identity(16) * re(2.0 * g.get(i, j));
            worst = worst.max(max_abs(&ac));
        }
    }
    worst
}

/// Largest `|<omega, theta> Omega - omega ^ *theta|` over basis pairs of
/// equal grade.
pub fn hodge_relation_residual(g: &MetricTensor) -> Result<f64> {
    let mut worst = 0.0f64;
    for &a in basis_order() {
        for &b in basis_order().iter().filter(|b| b.count_ones() == a.count_ones()) {
            let (w, t) = (NonhomogeneousForm::basis(a), NonhomogeneousForm::basis(b));
            let lhs = w.wedge(&hodge_star(&t, g)?);
            let rhs = NonhomogeneousForm::basis(0b1111).scale(form_inner(&w, &t, g)?);
            worst = worst.max(lhs.sub(&rhs).max_abs());
        }
    }
    Ok(worst)
}

/// `**` per grade for the Minkowski metric, as measured.
pub const MINKOWSKI_DOUBLE_STAR: [f64; 5] = [-1.0, 1.0, -1.0, 1.0, -1.0];

fn off_grade(m: &DenseMatrix) -> f64 {
    let order = basis_order();
    let mut worst = 0.0f64;
    for r in 0..16 {
        for c in 0..16 {
            if order[r].count_ones() != order[c].count_ones() {
                worst = worst.max(m[(r, c)].norm());
            }
        }
    }
    worst
}

fn exterior(col: &mut Collector) {
    let n = col.cfg.samples.points;
    let mut rng = col.rng("exterior.gamma_check");
    let gs: Vec<MetricTensor> = (0..n).map(|_| sampling::symmetric_metric(&mut rng)).collect();
    col.below(
        "exterior.gamma_check",
        "Let us consider n operators",
        1e-10,
        max_over(&gs, |g| Ok(anticommutator_defect(&gamma_check_ops(g), g))),
    );
    col.exact(
        "exterior.grassmann_degenerate",
        "degenerate quadratic form gives the Grassmann algebra",
        (|| {
            let g = MetricTensor::zero();
            let ops = gamma_check_ops(&g);
            let d = delta_ops(&g);
            Ok((0..4).fold(0.0f64, |m, i| m.max(max_abs(&(&ops[i] * &ops[i]))).max(max_abs(&(&ops[i] - &d.delta[i])))))
        })(),
    );
    col.below(
        "exterior.grassmann_subalgebras",
        "generate Grassmann subalgebras",
        1e-12,
        max_over(&gs, |g| {
            let d = delta_ops(g);
            let mut worst = 0.0f64;
            for i in 0..4 {
                for j in 0..4 {
                    worst = worst.max(max_abs(&anticommutator(&d.delta[i], &d.delta[j])));
                    worst = worst.max(max_abs(&anticommutator(&d.delta_star[i], &d.delta_star[j])));
                }
            }
            Ok(worst)
        }),
    );

    let mut rng = col.rng("exterior.dirac_kahler_square");
    let kg: Vec<([f64; 4], MetricTensor)> =
        (0..n).map(|_| (sampling::four_vector(&mut rng), sampling::symmetric_metric(&mut rng))).collect();
    col.below(
        "exterior.dirac_kahler_square",
        "factorization of the Klein-Gordon operator",
        1e-10,
        max_over(&kg, |(k, g)| {
            let d = dirac_kahler_symbol(k, g);
            Ok(max_abs(&(&d * &d + identity(16) * re(g.quadratic(k)))))
        }),
    );
    col.below(
        "exterior.laplace_factorization",
        "the Laplace-Beltrami operator",
        1e-10,
        max_over(&kg, |(k, g)| {
            let d = dirac_kahler_symbol(k, g);
            Ok(max_abs(&(laplace_beltrami_symbol(k, g) + &d * &d)))
        }),
    );
    col.below(
        "exterior.laplace_grade",
        "does not respect the order p of a form",
        1e-10,
        max_over(&kg, |(k, g)| Ok(off_grade(&laplace_beltrami_symbol(k, g)))),
    );
    col.above(
        "exterior.dirac_kahler_mixes_grades",
        "does not respect the order p of a form",
        1e-3,
        min_over(&kg, |(k, g)| Ok(off_grade(&dirac_kahler_symbol(k, g)))),
    );

    let mut rng = col.rng("exterior.d_squared");
    let forms: Vec<_> = (0..col.cfg.samples.polyforms).map(|_| sampling::polyform(&mut rng, 3)).collect();
    col.exact(
        "exterior.d_squared",
        "exterior derivative",
        max_over(&forms, |f| Ok(exterior_d(&exterior_d(f)).max_abs())),
    );
    col.below(
        "exterior.hodge_relation",
        "(volume form)",
        1e-12,
        hodge_relation_residual(&MetricTensor::euclidean())
            .and_then(|e| Ok(e.max(hodge_relation_residual(&MetricTensor::minkowski())?))),
    );
    col.exact(
        "exterior.double_star_euclidean",
        "Hodge star",
        double_star_signs(&MetricTensor::euclidean()).map(|s| {
            (0..5).fold(0.0f64, |m, p| {
                let want = if (p * (4 - p)) % 2 == 0 { 1.0 } else { -1.0 };
                m.max((s[p] - want).abs())
            })
        }),
    );
    col.exact(
        "exterior.double_star_minkowski",
        "Hodge star",
        double_star_signs(&MetricTensor::minkowski())
            .map(|s| s.iter().zip(MINKOWSKI_DOUBLE_STAR).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))),
    );
}

fn lorentz_samples(col: &Collector, id: &str) -> Vec<LinearMap4> {
    let mut rng = col.rng(id);
    (0..col.cfg.samples.groups).map(|_| sampling::lorentz(&mut rng)).collect()
}

/// `(scalar, bivector)` predicted for `G_M(gamma^i) G_M(gamma^j)` from the
/// plane coefficients and the Minkowski squares.
pub fn plane_product_prediction(i: usize, j: usize, a: [[f64; 2]; 2]) -> (f64, f64) {
    let (gi, gj) = (MINKOWSKI[i], MINKOWSKI[j]);
    (a[0][0] * a[1][0] * gi + a[0][1] * a[1][1] * gj, a[0][0] * a[1][1] - a[0][1] * a[1][0])
}

/// Worked planes: a rotation in (1, 2), a boost in (0, 1) and the unit
/// shear in (1, 2).
pub fn worked_planes() -> [(&'static str, usize, usize, [[f64; 2]; 2]); 3] {
    let (phi, v): (f64, f64) = (0.7, 0.6);
    [
        ("rotation", 1, 2, [[phi.cos(), phi.sin()], [-phi.sin(), phi.cos()]]),
        ("boost", 0, 1, [[v.cosh(), v.sinh()], [v.sinh(), v.cosh()]]),
        ("shear", 1, 2, [[1.0, 1.0], [0.0, 1.0]]),
    ]
}

fn covariance(col: &mut Collector) {
    let rep = match weyl() {
        Ok(r) => r,
        Err(e) => {
            col.exact("covariance.setup", "plumbing", Err(e));
            return;
        }
    };

    let mut rng = col.rng("covariance.functoriality");
    let pairs: Vec<_> = (0..col.cfg.samples.groups)
        .map(|_| (sampling::invertible(&mut rng), sampling::invertible(&mut rng)))
        .collect();
    col.below(
        "covariance.functoriality",
        "induced transformation of matrices",
        1e-8,
        max_over(&pairs, |(a, b)| {
            let ab = induced_matrix_action(&a.compose(b)?, &rep)?;
            Ok(max_abs(&(ab - induced_matrix_action(a, &rep)? * induced_matrix_action(b, &rep)?)))
        }),
    );

    let ls = lorentz_samples(col, "covariance.lorentz");
    col.below(
        "covariance.lorentz",
        "only isometries always respect the subspaces",
        1e-9,
        max_over(&ls, |l| covariance_residual(l, &rep)),
    );
    let mut rng = col.rng("covariance.non_isometry");
    let gs: Vec<_> = (0..col.cfg.samples.groups).map(|_| sampling::non_isometry(&mut rng)).collect();
    col.above(
        "covariance.non_isometry",
        "only isometries always respect the subspaces",
        1e-3,
        min_over(&gs, |g| covariance_residual(g, &rep)),
    );
    col.at_least(
        "covariance.shear",
        "only isometries always respect the subspaces",
        1.0,
        covariance_residual(&shear(), &rep),
    );
    for (name, i, j, a) in worked_planes() {
        col.below(
            &format!("covariance.worked_{name}"),
            "additional terms from lower grades",
            1e-12,
            plane_product_coefficients(i, j, a, &rep).map(|(s, b)| {
                let (ws, wb) = plane_product_prediction(i, j, a);
                (s - re(ws)).norm().max((b - re(wb)).norm())
            }),
        );
    }
    col.below(
        "covariance.leakage_grade",
        "additional terms from lower grades",
        1e-12,
        max_over(worked_planes(), |(_, i, j, a)| {
            let mut m = nalgebra::Matrix4::identity();
            m[(i, i)] = a[0][0];
            m[(j, i)] = a[0][1];
            m[(i, j)] = a[1][0];
            m[(j, j)] = a[1][1];
            let f = covariance_defect_form(&LinearMap4::new(m)?, &rep, i, j)?;
            Ok(f.sub(&f.grade_part(0)).max_abs())
        }),
    );

    let ls = lorentz_samples(col, "covariance.spin");
    col.below(
        "covariance.spin_rep",
        "to write the same transformation",
        1e-9,
        max_over(&ls, |l| spin_rep_residual(&lorentz_spin_rep(l, &rep)?, l, &rep)),
    );
    col.below(
        "covariance.spin_conjugation",
        "induced transformation equals spin conjugation",
        1e-8,
        max_over(&ls, |l| {
            let s = lorentz_spin_rep(l, &rep)?;
            Ok(max_abs(&(spin_conjugation_action(&s)? - induced_matrix_action(l, &rep)?)))
        }),
    );

    col.exact(
        "covariance.schmidt_lorentz_terms",
        "only one term",
        max_over(&ls, |l| {
            let d = operator_schmidt(&induced_matrix_action(l, &rep)?)?;
            Ok((d.terms.len() as f64 - 1.0).abs())
        }),
    );
    col.below(
        "covariance.schmidt_lorentz_second_weight",
        "only one term",
        1e-9,
        max_over(&ls, |l| {
            let d = operator_schmidt(&induced_matrix_action(l, &rep)?)?;
            Ok(d.spectrum[1] / d.spectrum[0])
        }),
    );
    col.at_least(
        "covariance.schmidt_shear_terms",
        "necessary to use the general sum",
        2.0,
        induced_matrix_action(&shear(), &rep).and_then(|m| Ok(operator_schmidt(&m)?.terms.len() as f64)),
    );
    col.below(
        "covariance.schmidt_reconstruction",
        "necessary to use the general sum",
        1e-9,
        induced_matrix_action(&shear(), &rep).and_then(|sh| {
            let r = operator_schmidt(&sh)?.residual;
            Ok(r.max(max_over(&ls, |l| Ok(operator_schmidt(&induced_matrix_action(l, &rep)?)?.residual))?))
        }),
    );
    col.exact(
        "covariance.schmidt_invariance",
        "necessary to use the general sum",
        induced_matrix_action(&shear(), &rep).and_then(|sh| {
            let base = operator_schmidt(&sh)?.terms.len();
            max_over(&ls, |l| {
                let lm = induced_matrix_action(l, &rep)?;
                let s = lorentz_spin_rep(l, &rep)?;
                let flipped = SpinElement { matrix: -&s.matrix, label: s.label };
                let left = operator_schmidt(&(&lm * &sh))?.terms.len();
                let right = operator_schmidt(&(&sh * &lm))?.terms.len();
                let sign = operator_schmidt(&(spin_conjugation_action(&flipped)? * &sh))?.terms.len();
                Ok([left, right, sign].iter().map(|&k| (k as f64 - base as f64).abs()).fold(0.0, f64::max))
            })
        }),
    );

    let mut rng = col.rng("covariance.two_spinor");
    let ss: Vec<DenseMatrix> = (0..col.cfg.samples.groups).map(|_| sampling::sl2c(&mut rng)).collect();
    col.below(
        "covariance.two_spinor_det",
        "unimodular maps preserve the determinant",
        1e-10,
        max_over(&ss, |s| {
            let l = two_spinor_action(s)?;
            let x = [0.3, -1.1, 0.7, 2.0];
            let y = l.matrix() * nalgebra::Vector4::from(x);
            let q = |v: &[f64]| v[0] * v[0] - v[1] * v[1] - v[2] * v[2] - v[3] * v[3];
            Ok((q(&x) - q(y.as_slice())).abs() + l.isometry_defect(&MINKOWSKI))
        }),
    );
    col.exact(
        "covariance.two_spinor_component",
        "unimodular maps preserve the determinant",
        max_over(&ss, |s| Ok(flag(gl4::is_proper_orthochronous(&two_spinor_action(s)?, 1e-9)))),
    );
    col.below(
        "covariance.two_spinor_embedding",
        "to write the same transformation",
        1e-8,
        max_over(&ss, |s| spin_rep_residual(&embed_two_spinor(s)?, &two_spinor_action(s)?, &rep)),
    );

    let mut rng = col.rng("covariance.matrix_dirac");
    let cases: Vec<(Momentum4, f64, crate::linalg::DenseVector)> = (0..col.cfg.samples.groups)
        .map(|_| {
            let v = sampling::four_vector(&mut rng);
            let w = sampling::four_vector(&mut rng);
            let m = 0.5 + v[0].abs();
            let mut alpha = crate::linalg::DenseVector::from_fn(4, |k, _| c(w[k], v[k]));
            alpha[3] = c(0.0, 0.0);
            (Momentum4::on_shell(m, v[1], v[2], v[3]), m, alpha)
        })
        .collect();
    col.below(
        "covariance.matrix_dirac",
        "matrix form of the Dirac equation",
        1e-10,
        max_over(&cases, |(p, m, alpha)| {
            let psi = gl4::matrix_dirac_solution(p, *m, alpha, &rep)?;
            Ok(gl4::matrix_dirac_residual(p, *m, &psi, &rep))
        }),
    );
    col.exact(
        "covariance.left_ideal",
        "left ideals of the matrix algebra",
        max_over(&cases, |(p, m, alpha)| {
            let psi = gl4::matrix_dirac_solution(p, *m, alpha, &rep)?;
            let x = DenseMatrix::from_fn(4, 4, |i, j| c(1.0 + i as f64, j as f64 - 1.5));
            let inside = gl4::column_support(&(x * &psi)).iter().all(|k| gl4::column_support(&psi).contains(k));
            Ok(flag(inside))
        }),
    );
    col.below(
        "covariance.product_structure",
        "matrix form of the Dirac equation",
        1e-10,
        max_over(&cases, |(p, m, alpha)| {
            let psi = gl4::matrix_dirac_solution(p, *m, alpha, &rep)?;
            let pair = gl4::rank_one_factor(&psi)?;
            let l = dirac_momentum_matrix(p, &rep);
            let r = DenseMatrix::from_fn(4, 4, |i, j| c(i as f64 - j as f64, 0.5));
            let recon = &pair.psi * pair.alpha.transpose();
            Ok(gl4::product_structure_check(&l, &r, &pair.psi, &pair.alpha).max(max_abs(&(recon - &psi))))
        }),
    );
}

fn so33_suite(col: &mut Collector) {
    let j = so33::j_matrix();
    let mut rng = col.rng("so33.kernel");
    let gs: Vec<LinearMap4> = (0..col.cfg.samples.groups).map(|_| sampling::invertible(&mut rng)).collect();
    col.exact(
        "so33.kernel",
        "two-to-one covering",
        max_over(&gs, |g| Ok((so33::induced_six_map(g).matrix - so33::induced_six_map(&g.neg()).matrix).amax())),
    );
    col.below(
        "so33.homomorphism",
        "two-to-one covering",
        1e-9,
        max_over(gs.windows(2), |w| {
            let ab = so33::induced_six_map(&w[0].compose(&w[1])?).matrix;
            let prod = so33::induced_six_map(&w[0]).matrix * so33::induced_six_map(&w[1]).matrix;
            Ok((ab - prod).amax())
        }),
    );
    let mut rng = col.rng("so33.form_preservation");
    let us: Vec<LinearMap4> = (0..col.cfg.samples.groups).map(|_| sampling::unit_det(&mut rng)).collect();
    col.below(
        "so33.form_preservation",
        "the Hodge duality defines a metric",
        1e-9,
        max_over(&us, |g| {
            let m = so33::induced_six_map(g).matrix;
            Ok((m.transpose() * &j * &m - &j).amax())
        }),
    );
    col.exact(
        "so33.time_reflection",
        "the Hodge duality defines a metric",
        LinearMap4::from_rows([[-1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]])
            .map(|t| {
                let m = so33::induced_six_map(&t).matrix;
                (m.transpose() * &j * &m + &j).amax()
            }),
    );
    col.exact(
        "so33.dilation",
        "dilations act by powers of lambda",
        so33::dilation_grade_check(2.0)
            .map(|f| f.iter().zip([1.0, 2.0, 4.0, 8.0, 16.0]).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))),
    );
    col.exact("so33.eta_gram", "the Hodge duality defines a metric", Ok((so33::eta_gram() - &j).amax()));
    col.exact(
        "so33.hodge_euclidean",
        "the Hodge duality defines a metric",
        so33::hodge_on_eta(&MetricTensor::euclidean()).map(|h| (h - &j).amax()),
    );
    col.exact(
        "so33.hodge_minkowski",
        "the Hodge duality defines a metric",
        so33::hodge_on_eta(&MetricTensor::minkowski()).map(|h| {
            let square = &h * &h + DMatrix::identity(6, 6) * (-MINKOWSKI_DOUBLE_STAR[2]);
            let mut diag_blocks = 0.0f64;
            for r in 0..6 {
                for c in 0..6 {
                    if (r < 3) == (c < 3) {
                        diag_blocks = diag_blocks.max(h[(r, c)].abs());
                    }
                }
            }
            square.amax().max(diag_blocks)
        }),
    );
}

/// Radii for the chain checks: `n` log-spaced points in `[1.01, 1e3]`.
pub fn chain_radii(n: usize) -> Vec<f64> {
    sch::log_spaced(1.01, 1e3, n)
}

/// Sample points for a chain's source chart at the given radii.
pub fn chain_points(t: &sch::ChartTransform, radii: &[f64]) -> Vec<sch::Point> {
    radii
        .iter()
        .map(|&r| {
            let radial = if t.source == "lchart" { (2.0 * r - 1.0).sqrt() } else { r };
            [0.3, radial, 1.1, 0.2]
        })
        .collect()
}

/// Largest pullback residual of a chain over `radii`.
pub fn chain_residual(t: &sch::ChartTransform, radii: &[f64]) -> Result<f64> {
    let src = sch::chart(t.source)?;
    let tgt = sch::chart(t.target)?;
    sch::pullback_check(&src, &tgt, t, &chain_points(t, radii))
}

/// Largest analytic-versus-central-difference Jacobian mismatch of a chain.
pub fn chain_jacobian_residual(t: &sch::ChartTransform, radii: &[f64]) -> Result<f64> {
    max_over(chain_points(t, radii), |x| sch::jacobian_fd_residual(t, &x, 1e-6))
}

/// Largest central-difference mismatch of `d tau/dr` and `dR/dr`.
pub fn tau_r_derivative_residual(radii: &[f64]) -> Result<f64> {
    let h = 1e-6;
    max_over(radii, |&r| {
        let (tp, rp) = sch::tau_r(0.0, r + h)?;
        let (tm, rm) = sch::tau_r(0.0, r - h)?;
        let a = ((tp - tm) / (2.0 * h) - sch::dtau_dr(r)).abs() / sch::dtau_dr(r).abs().max(1.0);
        let b = ((rp - rm) / (2.0 * h) - sch::d_r_dr(r)).abs() / sch::d_r_dr(r).abs().max(1.0);
        Ok(a.max(b))
    })
}

/// Largest `|r - r(tau, R(tau, r))|` on the outer branch.
pub fn sync_roundtrip_residual(radii: &[f64]) -> Result<f64> {
    max_over(radii, |&r| {
        let big = sch::synchronous_r(0.4, r)?;
        Ok((sch::r_from_synchronous(0.4, big, sch::Branch::Outer)? - r).abs())
    })
}

/// Largest relative mismatch between solved and closed-form mixed slopes.
pub fn mixed_slope_residual(radii: &[f64]) -> Result<f64> {
    let mixed = sch::chart("mixed")?;
    max_over(radii, |&r| {
        let s = sch::radial_null_slopes(&mixed, r)?;
        let (kp, km) = sch::mixed_closed_form_slopes(r);
        Ok(((s.k_plus - kp).abs() / kp.abs().max(1.0)).max((s.k_minus - km).abs() / km.abs().max(1.0)))
    })
}

fn schwarzschild(col: &mut Collector) {
    let radii = chain_radii(col.cfg.samples.radii);
    for t in sch::chains() {
        let id = format!("schwarzschild.pullback.{}_{}", t.source, t.target);
        col.below(&id, "coordinate transformations of the metric", 1e-9, chain_residual(&t, &radii));
        let id = format!("schwarzschild.jacobian.{}_{}", t.source, t.target);
        col.below(&id, "coordinate transformations of the metric", 1e-6, chain_jacobian_residual(&t, &radii));
    }
    col.below(
        "schwarzschild.wormhole_minus",
        "direction of proper time axis in the second region is opposite",
        1e-9,
        (|| {
            let t = sch::l_to_wormhole_minus();
            let pts: Vec<sch::Point> = chain_points(&sch::l_to_wormhole_plus(), &radii)
                .into_iter()
                .map(|mut x| {
                    x[1] = -x[1];
                    x
                })
                .collect();
            sch::pullback_check(&sch::chart("lchart")?, &sch::chart("wormhole-")?, &t, &pts)
        })(),
    );
    col.exact(
        "schwarzschild.l_origin",
        "direction of proper time axis in the second region is opposite",
        sch::metric_l(0.0, std::f64::consts::FRAC_PI_2).map(|g| {
            let want = [-1.0, 0.0, 0.0, -0.25];
            [g[(0, 0)], g[(0, 1)], g[(1, 1)], g[(2, 2)]].iter().zip(want).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
        }),
    );
    col.below(
        "schwarzschild.tau_r_derivatives",
        "to make the metric regular at the horizon",
        1e-6,
        tau_r_derivative_residual(&sch::log_spaced(1.05, 1e3, 50)),
    );
    col.below("schwarzschild.sync_roundtrip", "synchronous coordinates", 1e-10, sync_roundtrip_residual(&radii));
    col.below("schwarzschild.null_slopes", "Light cones", 1e-10, mixed_slope_residual(&radii));
    col.below(
        "schwarzschild.null_condition",
        "Light cones",
        1e-10,
        max_over(sch::CHART_NAMES, |name| {
            let (lo, hi) = if matches!(name, "polar" | "synchronous") { (1.01, 1e3) } else { (0.55, 1e3) };
            max_over(sch::lightcone(name, lo, hi, 40)?, |s| {
                let scale = 1.0 + s.k_plus.abs().powi(2).max(s.k_minus.abs().powi(2));
                Ok(s.residual / if scale.is_finite() { scale } else { 1.0 })
            })
        }),
    );
    col.exact(
        "schwarzschild.horizon_root",
        "Light cones",
        (|| {
            let s = sch::radial_null_slopes(&sch::chart("mixed")?, 1.0)?;
            Ok(flag(s.k_plus == 0.0 && s.k_minus.is_infinite()))
        })(),
    );
    col.above(
        "schwarzschild.horizon_tilt",
        "Light cones",
        1e5,
        (|| {
            let s = sch::radial_null_slopes(&sch::chart("mixed")?, 1.0 + 1e-6)?;
            Ok(s.k_minus.abs() / s.k_plus.abs().max(1e-300))
        })(),
    );
    let mut rng = col.rng("schwarzschild.rotated_frame");
    let rs: Vec<f64> = (0..col.cfg.samples.points)
        .map(|_| {
            use rand::Rng;
            0.5 + rng.random_range(0.0..10.0f64).exp() - 1.0
        })
        .collect();
    col.below(
        "schwarzschild.rotated_frame",
        "rotation of the frame",
        1e-12,
        max_over(&rs, |&r| {
            let th = sch::theta_of_r(r)?;
            let trig = (th.sin() - 1.0 / (2.0 * r).sqrt()).abs() + (th.cos() - (2.0 * r - 1.0).sqrt() / (2.0 * r).sqrt()).abs();
            Ok(sch::rotated_frame_check(r)?.max(trig))
        }),
    );
    col.below(
        "schwarzschild.family",
        "the family of embeddings",
        1e-9,
        (|| {
            let (a, b) = sch::family_transform(&sch::FRFunction::unit(), 2.0, 3.0)?;
            let want = 1.0 + 2f64.ln();
            let (p, q) = sch::family_transform(&sch::FRFunction::skew(), 2.0, 3.0)?;
            let (t3, r3) = sch::tau_r(0.0, 3.0)?;
            let (t2, r2) = sch::tau_r(0.0, 2.0)?;
            Ok([(a - want).abs(), (b - want).abs(), (p + t3 - t2).abs(), (q - r3 + r2).abs()]
                .into_iter()
                .fold(0.0, f64::max))
        })(),
    );
}

/// Runs a suite by name.
pub fn verify(suite: &str, cfg: &RunConfig) -> Result<SuiteResult> {
    let mut col = Collector::new(cfg);
    match suite {
        "clifford" => clifford(&mut col),
        "matrixrep" => matrixrep(&mut col),
        "exterior" => exterior(&mut col),
        "covariance" => covariance(&mut col),
        "so33" => so33_suite(&mut col),
        "schwarzschild" => schwarzschild(&mut col),
        "all" => {
            clifford(&mut col);
            matrixrep(&mut col);
            exterior(&mut col);
            covariance(&mut col);
            so33_suite(&mut col);
            schwarzschild(&mut col);
        }
        other => return Err(Error::UnknownName { kind: "suite", name: other.to_string() }),
    }
    Ok(col.finish(suite))
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.3e}")
    } else {
        format!("{x}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders a suite result in the requested format.
pub fn render(result: &SuiteResult, format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(result)?;
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("suite,id,anchor,status,residual,comparison,tolerance\n");
            for c in &result.checks {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{:e},{},{:e}",
                    result.suite,
                    c.id,
                    csv_field(&c.anchor),
                    if c.pass { "pass" } else { "fail" },
                    c.residual,
                    c.comparison.symbol(),
                    c.tolerance
                );
            }
        }
        Format::Text => {
            for c in &result.checks {
                let _ = write!(
                    out,
                    "{} {:<48} {:>10} {} {:<10} [{}]",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    num(c.residual),
                    c.comparison.symbol(),
                    num(c.tolerance),
                    c.anchor
                );
                if let Some(n) = &c.note {
                    let _ = write!(out, " ({n})");
                }
                out.push('\n');
            }
            let failed = result.failures().count();
            let _ = writeln!(
                out,
                "suite {}: {} checks, {} failed, seed {}",
                result.suite,
                result.checks.len(),
                failed,
                result.seed
            );
        }
    }
    Ok(out)
}

/// Renders light-cone rows.
pub fn render_lightcone(rows: &[sch::NullSlopes], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(rows)?;
            out.push('\n');
        }
        Format::Csv | Format::Text => {
            out.push_str("chart,r,k_plus,k_minus\n");
            for s in rows {
                let _ = writeln!(out, "{},{:e},{:e},{:e}", s.chart, s.r, s.k_plus, s.k_minus);
            }
        }
    }
    Ok(out)
}

/// Names accepted by [`table`].
pub const TABLES: [&str; 5] = ["worked-examples", "double-star", "codifferential", "dilation", "car"];

/// Data behind the worked examples and measured sign conventions.
pub fn table(name: &str) -> Result<serde_json::Value> {
    use serde_json::json;
    let value = match name {
        "worked-examples" => {
            let rep = weyl()?;
            let rows: Vec<_> = worked_planes()
                .into_iter()
                .map(|(label, i, j, a)| {
                    let (s, b) = plane_product_coefficients(i, j, a, &rep)?;
                    let (ws, wb) = plane_product_prediction(i, j, a);
                    Ok(json!({
                        "map": label, "plane": [i, j], "coefficients": a,
                        "scalar": s.re, "bivector": b.re,
                        "predicted_scalar": ws, "predicted_bivector": wb,
                    }))
                })
                .collect::<Result<_>>()?;
            json!(rows)
        }
        "double-star" => json!({
            "euclidean": double_star_signs(&MetricTensor::euclidean())?,
            "minkowski": double_star_signs(&MetricTensor::minkowski())?,
        }),
        "codifferential" => json!({
            "euclidean": crate::exterior::codifferential_sign_table(&MetricTensor::euclidean())?,
            "minkowski": crate::exterior::codifferential_sign_table(&MetricTensor::minkowski())?,
        }),
        "dilation" => json!({ "lambda": 2.0, "factors": so33::dilation_grade_check(2.0)? }),
        "car" => {
            let rows: Vec<_> = (1..=3)
                .map(|m| {
                    let c0: Option<C64> = jordan_wigner(m)?.measured_constant();
                    Ok(json!({ "m": m, "constant": c0.map(|z| z.re) }))
                })
                .collect::<Result<_>>()?;
            json!(rows)
        }
        other => return Err(Error::UnknownName { kind: "table", name: other.to_string() }),
    };
    Ok(value)
}

/// Renders a table value.
pub fn render_table(name: &str, value: &serde_json::Value, format: Format) -> Result<String> {
    let mut out = match format {
        Format::Json | Format::Text => serde_json::to_string_pretty(value)?,
        Format::Csv => {
            let mut s = String::from("table,key,value\n");
            if let Some(obj) = value.as_object() {
                for (k, v) in obj {
                    let _ = writeln!(s, "{name},{k},{}", csv_field(&v.to_string()));
                }
            } else if let Some(arr) = value.as_array() {
                for (k, v) in arr.iter().enumerate() {
                    let _ = writeln!(s, "{name},{k},{}", csv_field(&v.to_string()));
                }
            }
            s.pop();
            s
        }
    };
    out.push('\n');
    Ok(out)
}

/// Schmidt decomposition of a map read from JSON: a 16x16 map on
/// `vec(Psi)` or a 4x4 matrix lifted through the Weyl representation.
pub fn schmidt_from_json(text: &str) -> Result<gl4::SchmidtDecomposition> {
    let m = crate::linalg::matrix_from_json_str(text)?;
    let gm = match m.shape() {
        (16, 16) => m,
        (4, 4) => {
            if m.iter().any(|z| z.im != 0.0) {
                return Err(Error::DimensionMismatch("a 4x4 input must be real".into()));
            }
            let g = LinearMap4::from_dmatrix(&m.map(|z| z.re))?;
            induced_matrix_action(&g, &weyl()?)?
        }
        (r, c) => return Err(Error::DimensionMismatch(format!("expected 16x16 or 4x4, got {r}x{c}"))),
    };
    operator_schmidt(&gm)
}

/// The spin lift of a Lorentz matrix read from JSON.
#[derive(Debug, Clone, Serialize)]
pub struct SpinLiftReport {
    pub h: Multivector,
    pub parity: blade::Parity,
    pub residual: f64,
}

pub fn spinlift_from_json(text: &str) -> Result<SpinLiftReport> {
    let m = crate::linalg::matrix_from_json_str(text)?;
    if m.shape() != (4, 4) || m.iter().any(|z| z.im != 0.0) {
        return Err(Error::DimensionMismatch("expected a real 4x4 matrix".into()));
    }
    let a = m.map(|z| z.re);
    let sig = Signature::minkowski();
    let lift = blade::spin_lift(&a, &sig)?;
    let residual = blade::conjugation_residual(&lift.h, &a, &sig)?;
    Ok(SpinLiftReport { h: lift.h.prune(1e-15), parity: lift.parity, residual })
}

/// Exit status for a suite: 0 when every check passes, 1 otherwise.
pub fn exit_code(result: &SuiteResult) -> i32 {
    if result.pass {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_with_default_seed() {
        let cfg = RunConfig::default();
        for suite in SUITES.iter().filter(|s| **s != "all") {
            let r = verify(suite, &cfg).unwrap();
            let failed: Vec<_> = r.failures().map(|c| (c.id.clone(), c.residual, c.note.clone())).collect();
            assert!(failed.is_empty(), "{suite}: {failed:?}");
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(verify("bogus", &RunConfig::default()).is_err());
    }

    #[test]
    fn overrides_change_verdicts() {
        let mut cfg = RunConfig::default();
        cfg.tolerances.insert("so33.dilation".into(), -1.0);
        let r = verify("so33", &cfg).unwrap();
        assert!(!r.check("so33.dilation").unwrap().pass);
    }
}
