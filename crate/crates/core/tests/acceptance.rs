//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line. The process fails on any failure not listed as
//! a known gap.

use std::process::{Command, ExitCode};

use kahlerkit::blade::{self, Multivector, Signature};
use kahlerkit::exterior::{
    basis_order, dirac_kahler_symbol, double_star_signs, exterior_d, form_inner, gamma_check_ops,
    hodge_star, laplace_beltrami_symbol, MetricTensor, NonhomogeneousForm,
};
use kahlerkit::gl4::{
    column_support, covariance_residual, embed_two_spinor, induced_matrix_action,
    is_proper_orthochronous, lorentz_spin_rep, matrix_dirac_residual, matrix_dirac_solution,
    operator_schmidt, plane_product_coefficients, spin_conjugation_action, spin_rep_residual,
    two_spinor_action, LinearMap4,
};
use kahlerkit::linalg::{anticommutator, c, identity, max_abs, re, DenseMatrix, DenseVector, C64};
use kahlerkit::matrix_rep::{
    dirac_momentum_matrix, euclid_generators, gamma_rep, jordan_wigner, plane_wave_solutions,
    pauli_matrices, Momentum4, RepLabel,
};
use kahlerkit::report::{plane_product_prediction, shear};
use kahlerkit::sampling::{self, stream, DEFAULT_SEED};
use kahlerkit::schwarzschild as sch;
use kahlerkit::so33;
use rand_chacha::ChaCha8Rng;

/// One measured quantity inside a criterion.
struct Item {
    what: String,
    value: f64,
    ok: bool,
    gap: Option<&'static str>,
}

fn below(what: &str, value: f64, tol: f64) -> Item {
    Item { what: format!("{what} = {value:.3e} < {tol:.0e}"), value, ok: value < tol, gap: None }
}

fn above(what: &str, value: f64, tol: f64) -> Item {
    Item { what: format!("{what} = {value:.3e} > {tol:.0e}"), value, ok: value > tol, gap: None }
}

fn exact(what: &str, value: f64) -> Item {
    Item { what: format!("{what} = {value:e} (exact)"), value, ok: value == 0.0, gap: None }
}

fn holds(what: &str, ok: bool) -> Item {
    Item { what: format!("{what}: {}", if ok { "yes" } else { "no" }), value: if ok { 0.0 } else { 1.0 }, ok, gap: None }
}

fn rng(n: u32) -> ChaCha8Rng {
    stream(DEFAULT_SEED, &format!("acceptance.c{n}"))
}

fn weyl() -> kahlerkit::matrix_rep::GammaRep {
    gamma_rep(RepLabel::Weyl).expect("Weyl representation")
}

fn lorentz_set(n: u32) -> Vec<LinearMap4> {
    let mut r = rng(n);
    (0..25).map(|_| sampling::lorentz(&mut r)).collect()
}

fn fmax(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

fn fmin(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.min(x) })
}

fn c1() -> Vec<Item> {
    let gens_ok = (1..=3).all(|m| {
        euclid_generators(m, false).unwrap().relations_exact() && euclid_generators(m, true).unwrap().relations_exact()
    });
    let mut r = rng(1);
    let worst = fmax((0..20).map(|i| {
        let sig = sampling::signature(&mut r, 1 + i % blade::MAX_GENERATORS);
        let mut w = 0.0f64;
        for k in 0..sig.n() {
            for j in 0..sig.n() {
                let (ek, ej) = (Multivector::basis_vector(k), Multivector::basis_vector(j));
                let ac = &ek.geometric_product(&ej, &sig).unwrap() + &ej.geometric_product(&ek, &sig).unwrap();
                let want = if k == j { 2.0 * sig.square(k) } else { 0.0 };
                w = w.max((&ac - &Multivector::scalar(want)).max_abs());
            }
        }
        w
    }));
    vec![holds("matrix generators m = 1..3 with odd extension exact", gens_ok), exact("blade anticommutator defect, 20 signatures", worst)]
}

fn c2() -> Vec<Item> {
    let ops: Vec<_> = (1..=3).map(|m| jordan_wigner(m).unwrap()).collect();
    let nil = ops.iter().all(|o| o.nilpotent_relations_exact());
    let consts: Vec<Option<C64>> = ops.iter().map(|o| o.measured_constant()).collect();
    let uniform = consts.iter().all(|k| k.is_some() && *k == consts[0]);
    let shown = consts[0].map(|z| z.re).unwrap_or(f64::NAN);
    vec![
        holds("{a_j, a_k} = {a_j+, a_k+} = 0 exactly for m <= 3", nil),
        holds(&format!("{{a_j, a_k+}} = c delta_jk I with one measured c = {shown}"), uniform),
    ]
}

fn c3() -> Vec<Item> {
    let mut r = rng(3);
    let worst = fmax((0..100).map(|_| {
        let g = sampling::symmetric_metric(&mut r);
        let ops = gamma_check_ops(&g);
        let mut w = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                w = w.max(max_abs(&(anticommutator(&ops[i], &ops[j]) + identity(16) * re(2.0 * g.get(i, j)))));
            }
        }
        w
    }));
    let zero = gamma_check_ops(&MetricTensor::zero());
    let nil = fmax((0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| max_abs(&anticommutator(&zero[i], &zero[j]))));
    vec![below("anticommutator residual, 100 metrics", worst, 1e-10), exact("Grassmann nilpotency at g = 0", nil)]
}

fn c4() -> Vec<Item> {
    let mut r = rng(4);
    let mut sq = 0.0f64;
    let mut lap = 0.0f64;
    for _ in 0..100 {
        let k = sampling::four_vector(&mut r);
        let g = sampling::symmetric_metric(&mut r);
        let d = dirac_kahler_symbol(&k, &g);
        let d2 = &d * &d;
        sq = sq.max(max_abs(&(&d2 + identity(16) * re(g.quadratic(&k)))));
        lap = lap.max(max_abs(&(laplace_beltrami_symbol(&k, &g) + &d2)));
    }
    let rep = weyl();
    let mom = fmax((0..100).map(|_| {
        let v = sampling::four_vector(&mut r);
        let p = Momentum4::new(v[0], v[1], v[2], v[3]);
        let m = dirac_momentum_matrix(&p, &rep);
        max_abs(&(&m * &m - identity(4) * re(p.minkowski_square())))
    }));
    vec![
        below("D(k)^2 + g(k,k) I", sq, 1e-10),
        below("Delta(k) + D(k)^2", lap, 1e-10),
        below("(p.gamma)^2 - g(p,p) I", mom, 1e-11),
    ]
}

fn hodge_defect(g: &MetricTensor) -> f64 {
    let vol = NonhomogeneousForm::basis(0b1111);
    let mut w = 0.0f64;
    for &a in basis_order() {
        for &b in basis_order() {
            let (x, y) = (NonhomogeneousForm::basis(a), NonhomogeneousForm::basis(b));
            let top = x.wedge(&hodge_star(&y, g).unwrap()).grade_part(4);
            let want = vol.scale(form_inner(&x, &y, g).unwrap());
            w = w.max(top.sub(&want).max_abs());
        }
    }
    w
}

fn c5() -> Vec<Item> {
    let mut r = rng(5);
    let d2 = fmax((0..50).map(|_| exterior_d(&exterior_d(&sampling::polyform(&mut r, 3))).max_abs()));
    let signs = double_star_signs(&MetricTensor::euclidean()).unwrap();
    let law = fmax((0..5).map(|p| (signs[p] - if (p * (4 - p)) % 2 == 0 { 1.0 } else { -1.0 }).abs()));
    vec![
        exact("d(d omega), 50 polynomial forms", d2),
        below("Hodge relation, 256 Euclidean pairs", hodge_defect(&MetricTensor::euclidean()), 1e-12),
        below("Hodge relation, 256 Minkowski pairs", hodge_defect(&MetricTensor::minkowski()), 1e-12),
        exact("Euclidean ** vs (-1)^(p(4-p))", law),
    ]
}

fn c6() -> Vec<Item> {
    let rep = weyl();
    let lor = fmax(lorentz_set(6).iter().map(|l| covariance_residual(l, &rep).unwrap()));
    let mut r = rng(60);
    let non = fmin((0..25).map(|_| covariance_residual(&sampling::non_isometry(&mut r), &rep).unwrap()));
    let (phi, v): (f64, f64) = (0.7, 0.6);
    let rot = [[phi.cos(), phi.sin()], [-phi.sin(), phi.cos()]];
    let bst = [[v.cosh(), v.sinh()], [v.sinh(), v.cosh()]];
    let sh = [[1.0, 1.0], [0.0, 1.0]];
    let (rs, rb) = plane_product_coefficients(1, 2, rot, &rep).unwrap();
    let (bs, bb) = plane_product_coefficients(0, 1, bst, &rep).unwrap();
    let (ss, sb) = plane_product_coefficients(1, 2, sh, &rep).unwrap();
    let formula = fmax([
        (rb - re(plane_product_prediction(1, 2, rot).1)).norm(),
        (bb - re(plane_product_prediction(0, 1, bst).1)).norm(),
        (sb - re(plane_product_prediction(1, 2, sh).1)).norm(),
    ]);
    vec![
        below("residual over 25 Lorentz maps", lor, 1e-9),
        above("min residual over 25 non-isometries", non, 1e-3),
        exact("rotation scalar leakage", rs.norm()),
        exact("boost scalar leakage", bs.norm()),
        exact("shear scalar coefficient + 1", (ss - re(-1.0)).norm()),
        below("bivector coefficients vs formula", formula, 1e-12),
    ]
}

fn c7() -> Vec<Item> {
    let rep = weyl();
    let sig = Signature::minkowski();
    let ls = lorentz_set(7);
    let lift = fmax(ls.iter().map(|l| {
        let a = l.to_dmatrix();
        let h = blade::spin_lift(&a, &sig).unwrap().h;
        blade::conjugation_residual(&h, &a, &sig).unwrap().max(blade::conjugation_residual(&h.scale(-1.0), &a, &sig).unwrap())
    }));
    let routes = fmax(ls.iter().map(|l| spin_rep_residual(&lorentz_spin_rep(l, &rep).unwrap(), l, &rep).unwrap()));
    let conj = fmax(ls.iter().map(|l| {
        let s = lorentz_spin_rep(l, &rep).unwrap();
        max_abs(&(spin_conjugation_action(&s).unwrap() - induced_matrix_action(l, &rep).unwrap()))
    }));
    vec![
        below("spin_lift conjugation residual", lift, 1e-9),
        below("S gamma^k S^-1 vs sum_j L_jk gamma^j", routes, 1e-9),
        below("spin conjugation vs induced action", conj, 1e-8),
    ]
}

fn c8() -> Vec<Item> {
    let rep = weyl();
    let ds: Vec<_> = lorentz_set(8).iter().map(|l| operator_schmidt(&induced_matrix_action(l, &rep).unwrap()).unwrap()).collect();
    let one = ds.iter().all(|d| d.terms.len() == 1);
    let second = fmax(ds.iter().map(|d| d.spectrum[1] / d.spectrum[0]));
    let sh = operator_schmidt(&induced_matrix_action(&shear(), &rep).unwrap()).unwrap();
    let recon = fmax(ds.iter().map(|d| d.residual).chain([sh.residual]));
    vec![
        holds("Lorentz-induced maps have one term", one),
        below("relative second weight", second, 1e-9),
        holds(&format!("shear has {} >= 2 terms", sh.terms.len()), sh.terms.len() >= 2),
        below("reconstruction residual", recon, 1e-9),
    ]
}

fn c9() -> Vec<Item> {
    let j = so33::j_matrix();
    let mut r = rng(9);
    let gs: Vec<LinearMap4> = (0..25).map(|_| sampling::unit_det(&mut r)).collect();
    let form = fmax(gs.iter().map(|g| {
        let m = so33::induced_six_map(g).matrix;
        (m.transpose() * &j * &m - &j).amax()
    }));
    let kernel = fmax(gs.iter().map(|g| (so33::induced_six_map(g).matrix - so33::induced_six_map(&g.neg()).matrix).amax()));
    let t = LinearMap4::from_rows([[-1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]).unwrap();
    let mt = so33::induced_six_map(&t).matrix;
    let dil = so33::dilation_grade_check(2.0).unwrap();
    vec![
        below("M^T J M - J, 25 unit-determinant maps", form, 1e-9),
        exact("M(G) - M(-G)", kernel),
        exact("time reflection M^T J M + J", (mt.transpose() * &j * &mt + &j).amax()),
        holds(&format!("dilation factors {dil:?} = [1, 2, 4, 8, 16]"), dil == [1.0, 2.0, 4.0, 8.0, 16.0]),
    ]
}

fn hermitian(x: &[f64; 4]) -> DenseMatrix {
    let s = pauli_matrices();
    identity(2) * re(x[0]) + &s[0] * re(x[1]) + &s[1] * re(x[2]) + &s[2] * re(x[3])
}

fn det2(m: &DenseMatrix) -> C64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

fn c10() -> Vec<Item> {
    let rep = weyl();
    let mut r = rng(10);
    let mut det = 0.0f64;
    let mut proper = true;
    let mut route = 0.0f64;
    for _ in 0..25 {
        let s = sampling::sl2c(&mut r);
        let x = sampling::four_vector(&mut r);
        let m = hermitian(&x);
        let img = &s * &m * s.adjoint();
        det = det.max((det2(&img) - det2(&m)).norm());
        let l = two_spinor_action(&s).unwrap();
        proper &= is_proper_orthochronous(&l, 1e-9);
        route = route.max(spin_rep_residual(&embed_two_spinor(&s).unwrap(), &l, &rep).unwrap());
    }
    vec![
        below("det X preservation", det, 1e-10),
        holds("all maps proper orthochronous", proper),
        below("two-spinor vs 4x4 embedding route", route, 1e-8),
    ]
}

fn c11() -> Vec<Item> {
    let rep = weyl();
    let mut r = rng(11);
    let mut dim_ok = true;
    let mut dirac = 0.0f64;
    let mut matrix = 0.0f64;
    let mut ideal = true;
    for _ in 0..25 {
        let v = sampling::four_vector(&mut r);
        let w = sampling::four_vector(&mut r);
        let m = 0.5 + v[0].abs();
        let p = Momentum4::on_shell(m, v[1], v[2], v[3]);
        match plane_wave_solutions(&p, m, &rep) {
            Ok(sols) => {
                dim_ok &= sols.len() == 2;
                let op = dirac_momentum_matrix(&p, &rep) - identity(4) * re(m);
                dirac = fmax(sols.iter().map(|u| (&op * u).norm()).chain([dirac]));
            }
            Err(_) => dim_ok = false,
        }
        let mut alpha = DenseVector::from_fn(4, |k, _| c(w[k], v[k]));
        alpha[1] = c(0.0, 0.0);
        let psi = matrix_dirac_solution(&p, m, &alpha, &rep).unwrap();
        matrix = matrix.max(matrix_dirac_residual(&p, m, &psi, &rep));
        let x = DenseMatrix::from_fn(4, 4, |i, j| c(w[i] - v[j], (i * j) as f64));
        let support = column_support(&psi);
        ideal &= column_support(&(x * &psi)).iter().all(|k| support.contains(k));
    }
    vec![
        holds("on-shell null space has dimension 2", dim_ok),
        below("Dirac residual", dirac, 1e-10),
        below("matrix equation residual for u alpha^T", matrix, 1e-10),
        holds("left-ideal column support closed", ideal),
    ]
}

fn c12() -> Vec<Item> {
    let radii = sch::log_spaced(1.01, 1e3, 100);
    let mut items: Vec<Item> = sch::chains()
        .iter()
        .map(|t| {
            let src = sch::chart(t.source).unwrap();
            let tgt = sch::chart(t.target).unwrap();
            let pts: Vec<sch::Point> = radii
                .iter()
                .map(|&r| [0.3, if t.source == "lchart" { (2.0 * r - 1.0).sqrt() } else { r }, 1.1, 0.2])
                .collect();
            below(&format!("pullback {} -> {}", t.source, t.target), sch::pullback_check(&src, &tgt, t, &pts).unwrap(), 1e-9)
        })
        .collect();
    let h = 1e-6;
    let deriv = fmax(sch::log_spaced(1.05, 1e3, 50).into_iter().chain([3.0]).map(|r| {
        let (tp, rp) = sch::tau_r(0.0, r + h).unwrap();
        let (tm, rm) = sch::tau_r(0.0, r - h).unwrap();
        let u = (2.0 * r - 1.0).sqrt();
        let a = ((tp - tm) / (2.0 * h) + u / (r - 1.0)).abs() / (u / (r - 1.0)).max(1.0);
        let b = ((rp - rm) / (2.0 * h) - r * r / ((r - 1.0) * u)).abs() / (r * r / ((r - 1.0) * u)).max(1.0);
        a.max(b)
    }));
    items.push(below("tau and R derivative identities", deriv, 1e-6));
    let mut rr = rng(12);
    let trip = fmax((0..50).map(|_| {
        use rand::Rng;
        let r = 1.01 + rr.random_range(0.0..(1e3f64 - 1.01).ln()).exp() - 1.0;
        let big = sch::synchronous_r(0.4, r).unwrap();
        (sch::r_from_synchronous(0.4, big, sch::Branch::Outer).unwrap() - r).abs()
    }));
    items.push(below("synchronous r recovery", trip, 1e-10));
    let mixed = sch::chart("mixed").unwrap();
    let slopes = fmax(radii.iter().map(|&r| {
        let s = sch::radial_null_slopes(&mixed, r).unwrap();
        let u = (2.0 * r - 1.0).sqrt();
        (s.k_plus - (r - u) / (r - 1.0)).abs().max((s.k_minus + (r + u) / (r - 1.0)).abs())
    }));
    items.push(below("mixed null slopes vs closed forms", slopes, 1e-10));
    let far = sch::radial_null_slopes(&mixed, 1e3).unwrap();
    let mut tail = below("|k+ - 1|, |k- + 1| at r = 1e3", (far.k_plus - 1.0).abs().max((far.k_minus + 1.0).abs()), 1e-2);
    tail.gap = Some("the closed forms give 1 - sqrt(2/r) + O(1/r); 1e-2 needs r near 2e4");
    items.push(tail);
    let g = sch::metric_l(0.0, std::f64::consts::FRAC_PI_2).unwrap();
    let origin = fmax([(g[(0, 0)] + 1.0).abs(), g[(0, 1)].abs(), g[(1, 1)].abs(), (g[(2, 2)] + 0.25).abs(), (g[(3, 3)] + 0.25).abs()]);
    items.push(exact("l-chart components at l = 0", origin));
    items
}

fn c13() -> Vec<Item> {
    let dir = tempfile::tempdir().expect("temp dir");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_kahlerkit"))
            .args(["verify", "all", "--seed", "7", "--format", "json", "--out"])
            .arg(&out)
            .status()
            .expect("run kahlerkit");
        (status.code(), std::fs::read(&out).unwrap_or_default())
    };
    let (c1, a) = run("a.json");
    let (c2, b) = run("b.json");
    vec![
        holds("both runs produced a report", !a.is_empty() && c1.is_some() && c2.is_some()),
        holds("reports are byte-identical", a == b),
    ]
}

type Criterion = (&'static str, fn() -> Vec<Item>);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("Clifford relations", c1),
        ("CAR suite", c2),
        ("gamma-check anticommutators", c3),
        ("Klein-Gordon factorization", c4),
        ("d^2 = 0, Hodge relation, Euclidean **", c5),
        ("covariance dichotomy and worked examples", c6),
        ("spin machinery", c7),
        ("operator-Schmidt terms", c8),
        ("SO(3,3) cover", c9),
        ("two-spinor route", c10),
        ("Dirac solutions", c11),
        ("Schwarzschild charts", c12),
        ("determinism", c13),
    ];
    let mut failed = 0;
    let mut unexpected = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let items = f();
        let good = |i: &Item| i.ok && !i.value.is_nan();
        let ok = items.iter().all(good);
        println!("criterion {:>2} {}: {}", k + 1, if ok { "PASS" } else { "FAIL" }, name);
        for i in &items {
            println!("    [{}] {}", if good(i) { "ok" } else { "FAIL" }, i.what);
            if let (false, Some(why)) = (good(i), i.gap) {
                println!("        known gap: {why}");
            }
        }
        failed += usize::from(!ok);
        unexpected += items.iter().filter(|i| !good(i) && i.gap.is_none()).count();
    }
    println!("acceptance: {} of 13 criteria pass", 13 - failed);
    // Known gaps are reported as FAIL above but do not fail the target.
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
