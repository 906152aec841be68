use kahlerkit::blade::{Multivector, Signature};
use kahlerkit::exterior::{double_star_signs, exterior_d, hodge_star, MetricTensor, NonhomogeneousForm};
use kahlerkit::gl4::{form_action, induced_matrix_action, LinearMap4};
use kahlerkit::linalg::{c, max_abs};
use kahlerkit::matrix_rep::{gamma_rep, RepLabel};
use kahlerkit::sampling::{self, stream};
use kahlerkit::schwarzschild as sch;
use kahlerkit::so33::{induced_six_map, p_to_q, q_to_p, TwoFormCoords};
use proptest::prelude::*;

fn signature() -> impl Strategy<Value = Signature> {
    prop::collection::vec(prop::sample::select(vec![1i8, -1, 0]), 1..=6).prop_map(|d| Signature::new(d).unwrap())
}

fn map4(seed: u64) -> LinearMap4 {
    sampling::invertible(&mut stream(seed, "map4"))
}

fn form() -> impl Strategy<Value = NonhomogeneousForm> {
    prop::collection::vec(-5i32..=5, 16).prop_map(|v| {
        let terms: Vec<_> = v.iter().enumerate().map(|(m, &x)| (m as u8, c(x as f64, 0.0))).collect();
        NonhomogeneousForm::from_terms(&terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn geometric_product_is_associative(sig in signature(), seed in any::<u64>()) {
        let mut rng = stream(seed, "assoc");
        let n = sig.n();
        let (a, b, x) = (
            sampling::multivector(&mut rng, n, 6),
            sampling::multivector(&mut rng, n, 6),
            sampling::multivector(&mut rng, n, 6),
        );
        let left = a.geometric_product(&b, &sig)?.geometric_product(&x, &sig)?;
        let right = a.geometric_product(&b.geometric_product(&x, &sig)?, &sig)?;
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reversion_reverses_products(sig in signature(), seed in any::<u64>()) {
        let mut rng = stream(seed, "rev");
        let a = sampling::multivector(&mut rng, sig.n(), 6);
        let b = sampling::multivector(&mut rng, sig.n(), 6);
        let lhs = a.geometric_product(&b, &sig)?.reverse();
        let rhs = b.reverse().geometric_product(&a.reverse(), &sig)?;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vectors_square_to_their_norm(sig in signature(), seed in any::<u64>()) {
        let x = sampling::vector(&mut stream(seed, "vec"), sig.n());
        let v = Multivector::vector(&x);
        let sq = v.geometric_product(&v, &sig)?;
        prop_assert!((&sq - &Multivector::scalar(sig.bilinear(&x, &x))).max_abs() < 1e-12);
    }

    #[test]
    fn q_coordinates_round_trip(p in prop::array::uniform6(-10.0f64..10.0)) {
        let p = TwoFormCoords::new(p[0], p[1], p[2], p[3], p[4], p[5]);
        prop_assert!(q_to_p(&p_to_q(&p)).max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>()) {
        let w = sampling::polyform(&mut stream(seed, "d2"), 4);
        prop_assert!(exterior_d(&exterior_d(&w)).is_zero());
    }

    #[test]
    fn double_star_is_a_grade_sign(w in form()) {
        for g in [MetricTensor::euclidean(), MetricTensor::minkowski()] {
            let signs = double_star_signs(&g)?;
            let twice = hodge_star(&hodge_star(&w, &g)?, &g)?;
            for (p, &s) in signs.iter().enumerate() {
                let want = w.grade_part(p).scale(c(s, 0.0));
                prop_assert!(twice.grade_part(p).sub(&want).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn induced_actions_compose(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (map4(s1), map4(s2));
        let ab = a.compose(&b)?;
        let forms = form_action(&ab) - form_action(&a) * form_action(&b);
        prop_assert!(max_abs(&forms) < 1e-8);
        let rep = gamma_rep(RepLabel::Weyl)?;
        let mats = induced_matrix_action(&ab, &rep)? - induced_matrix_action(&a, &rep)? * induced_matrix_action(&b, &rep)?;
        prop_assert!(max_abs(&mats) < 1e-8);
    }

    #[test]
    fn six_map_is_a_homomorphism_with_sign_kernel(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (a, b) = (map4(s1), map4(s2));
        let m = |g: &LinearMap4| induced_six_map(g).matrix;
        prop_assert_eq!(m(&a), m(&a.neg()));
        let defect = (m(&a.compose(&b)?) - m(&a) * m(&b)).amax();
        prop_assert!(defect < 1e-9 * (1.0 + m(&a).amax() * m(&b).amax()));
    }

    #[test]
    fn polar_slopes_follow_the_closed_form(r in 1.01f64..1e3) {
        let s = sch::radial_null_slopes(&sch::chart("polar")?, r)?;
        let k = r / (r - 1.0);
        prop_assert!((s.k_plus - k).abs() < 1e-12 * k);
        prop_assert!((s.k_minus + k).abs() < 1e-12 * k);
    }

    #[test]
    fn chain_pullbacks_hold_off_the_grid(r in 1.01f64..1e3, t in -5.0f64..5.0) {
        for tr in sch::chains() {
            let src = sch::chart(tr.source)?;
            let tgt = sch::chart(tr.target)?;
            let x = if tr.source == "lchart" { (2.0 * r - 1.0).sqrt() } else { r };
            prop_assert!(sch::pullback_check(&src, &tgt, &tr, &[[t, x, 0.9, 0.1]])? < 1e-8);
        }
    }
}
