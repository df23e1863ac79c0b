mod common;

use common::*;
use momentcone::basis::{Chart, FunctionSystem, Point, Polynomial};
use momentcone::decompose::{membership, reduce, signed_decompose, GroundSet};
use momentcone::exactla::{
    independent_columns, kernel, lp_solve, modular, rref, solve, Direction, Echelon, LpProblem,
    Matrix, Sense, VarBound,
};
use momentcone::facial::{atom_set, face, v_set};
use momentcone::io;
use momentcone::momentmap::{jacobian, moments, AtomicMeasure, MomentSequence};
use momentcone::Scalar;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=12, -20i64..=20, 1i64..=12)
        .prop_map(|(a, b, c, d)| &Scalar::ratio(a, b) + &(&Scalar::ratio(c, d) * &Scalar::sqrt2()))
}

fn small_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            Matrix::from_rows(
                v.chunks(c)
                    .map(|row| row.iter().map(|&x| Scalar::from_int(x)).collect())
                    .collect(),
            )
        })
    })
}

fn sqrt2_matrix() -> impl Strategy<Value = Matrix> {
    (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| {
        proptest::collection::vec(scalar(), r * c)
            .prop_map(move |v| Matrix::from_rows(v.chunks(c).map(|row| row.to_vec()).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn order_agrees_with_floats_when_far_apart(a in scalar(), b in scalar()) {
        let (fa, fb) = (a.to_f64(), b.to_f64());
        if (fa - fb).abs() > 1e-6 {
            prop_assert_eq!(a < b, fa < fb);
        }
        prop_assert_eq!(a.signum(), (&a - &Scalar::zero()).signum());
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a.clone());
        let json = serde_json::to_string(&a).unwrap();
        let back: Scalar = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rank_nullity(m in small_matrix(5)) {
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rank_nullity_over_sqrt2(m in sqrt2_matrix()) {
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn modular_rank_is_a_lower_bound(m in small_matrix(6)) {
        let r = modular::rank_mod_p(&m).unwrap();
        prop_assert!(r <= m.rank());
    }

    #[test]
    fn echelon_matches_rank(m in small_matrix(5)) {
        let mut e = Echelon::new();
        for row in m.row_vectors() {
            e.insert(&row);
        }
        prop_assert_eq!(e.rank(), m.rank());
    }

    #[test]
    fn rref_is_idempotent(m in sqrt2_matrix()) {
        let (r, piv) = rref(&m);
        let (r2, piv2) = rref(&r);
        prop_assert_eq!(r, r2);
        prop_assert_eq!(piv.len(), m.rank());
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn solve_returns_a_solution(m in small_matrix(4), x in proptest::collection::vec(-5i64..=5, 4)) {
        let x: Vec<Scalar> = x.iter().take(m.cols()).map(|&v| Scalar::from_int(v)).collect();
        prop_assume!(x.len() == m.cols());
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn lp_certificates_verify(
        m in small_matrix(4),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let senses = [Sense::Le, Sense::Eq, Sense::Ge];
        let lp = LpProblem::new(
            if rng.gen_bool(0.5) { Direction::Maximize } else { Direction::Minimize },
            (0..m.cols()).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect(),
            m.clone(),
            (0..m.rows()).map(|_| Scalar::from_int(rng.gen_range(-4..=4))).collect(),
            (0..m.rows()).map(|_| senses[rng.gen_range(0..3)]).collect(),
            (0..m.cols()).map(|_| if rng.gen_bool(0.6) { VarBound::NonNegative } else { VarBound::Free }).collect(),
        );
        let r = lp_solve(&lp);
        prop_assert!(r.verify(&lp).is_ok());
    }

    #[test]
    fn reduction_keeps_moments(seed in any::<u64>(), family in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let a = random_family(&mut rng, family);
        let extra = rng.gen_range(0..4);
        let pts = distinct_points(&mut rng, a.n(), a.size() + extra, 6);
        let mu = random_measure(&mut rng, &pts);
        let r = reduce(&a, &mu).unwrap();
        let rank = momentcone::momentmap::evaluation_matrix(&a, &pts).unwrap().rank();
        prop_assert!(r.len() <= rank);
        prop_assert!(r.masses().iter().all(Scalar::is_positive));
        prop_assert!(r.points().iter().all(|p| pts.contains(p)));
        prop_assert_eq!(moments_direct(&a, &r), moments_direct(&a, &mu));
    }

    #[test]
    fn membership_certificates_verify(seed in any::<u64>(), family in 0usize..3, inside in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_family(&mut rng, family);
        let pts = distinct_points(&mut rng, a.n(), a.size() + 1, 5);
        let x = GroundSet::new(pts.clone()).unwrap();
        let s = if inside {
            moments(&a, &random_measure(&mut rng, &pts[..2])).unwrap()
        } else {
            MomentSequence::from_values((0..a.size()).map(|_| random_rational(&mut rng, 5)).collect())
        };
        let cert = membership(&a, &x, &s).unwrap();
        prop_assert!(cert.verify(&a, &x, s.values()).is_ok());
        if inside {
            prop_assert!(cert.is_member());
        }
    }

    #[test]
    fn signed_decomposition_reproduces(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = FunctionSystem::affine(2, 2).unwrap();
        let pts = distinct_points(&mut rng, 2, 9, 4);
        let x = GroundSet::new(pts).unwrap();
        let s = MomentSequence::from_values((0..a.size()).map(|_| random_rational(&mut rng, 5)).collect());
        match signed_decompose(&a, &s, &x) {
            Ok(mu) => {
                prop_assert!(mu.len() <= a.size());
                let got = moments(&a, &mu).unwrap();
                prop_assert_eq!(got.values(), s.values());
            }
            Err(momentcone::Error::InsufficientSpan { rank, .. }) => prop_assert!(rank < a.size()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn face_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let a = FunctionSystem::affine(1, rng.gen_range(2..=4)).unwrap();
        let pts = distinct_points(&mut rng, 1, 6, 6);
        let x = GroundSet::new(pts.clone()).unwrap();
        let support: Vec<Point> = pts.iter().take(rng.gen_range(1..=4)).cloned().collect();
        let s = moments(&a, &random_measure(&mut rng, &support)).unwrap();
        let f = face(&a, &x, &s).unwrap();
        prop_assert_eq!(f.face_dimension + f.gamma, a.size());
        prop_assert!(f.w.iter().all(|i| f.v.contains(i)));
        let w = atom_set(&a, &x, &s).unwrap();
        prop_assert_eq!(&w, &f.w);
        for p in &support {
            prop_assert!(w.contains(&x.index_of(p).unwrap()));
        }
        // On a finite ground set the cone is polyhedral and V = W.
        prop_assert_eq!(v_set(&a, &x, &s).unwrap().v, w);
    }

    #[test]
    fn jacobian_rank_is_bounded(seed in any::<u64>(), k in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = FunctionSystem::affine(2, 2).unwrap();
        let pts = distinct_points(&mut rng, 2, k, 5);
        let j = jacobian(&a, &AtomicMeasure::unit(&pts)).unwrap();
        prop_assert_eq!(j.cols(), 3 * k);
        prop_assert!(j.rank() <= a.size().min(3 * k));
    }

    #[test]
    fn polynomial_coefficients_round_trip(coeffs in proptest::collection::vec(-5i64..=5, 10), x in -4i64..=4, y in -4i64..=4) {
        let a = FunctionSystem::affine(2, 3).unwrap();
        let c: Vec<Scalar> = coeffs.iter().map(|&v| Scalar::from_int(v)).collect();
        let p = Polynomial::from_coefficients(&a, &c).unwrap();
        prop_assert_eq!(p.coefficients(&a).unwrap(), c.clone());
        let pt = Point::affine_i64(&[x, y]);
        prop_assert_eq!(p.eval(pt.coords()), a.evaluate(&c, &pt).unwrap());
    }

    #[test]
    fn measure_json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = distinct_points(&mut rng, 3, 4, 9);
        let mu = AtomicMeasure::signed(pts.into_iter().map(|p| (random_rational(&mut rng, 20), p)).collect());
        let back = io::read_measure(&io::write_measure(&mu), Chart::Affine).unwrap();
        prop_assert_eq!(back.atoms(), mu.atoms());
    }

    #[test]
    fn independent_columns_span(m in small_matrix(5)) {
        let cols = independent_columns(&m);
        prop_assert_eq!(cols.len(), m.rank());
        prop_assert_eq!(m.select_columns(&cols).rank(), m.rank());
    }
}
