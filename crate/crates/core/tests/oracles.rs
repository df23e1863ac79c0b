//! Library results against independent computations.

mod common;

use common::*;
use momentcone::basis::{binomial, FunctionSystem, MonomialOrder, Point};
use momentcone::catalog::{self, Space};
use momentcone::decompose::GroundSet;
use momentcone::exactla::{det, modular, Matrix};
use momentcone::facial::{atom_set, core_variety, face_dimension, psp_check, PspOutcome};
use momentcone::momentmap::{evaluation_matrix, moments, na_formula};
use momentcone::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn grid_ranks_match_counting_oracle() {
    for n in 1..=4usize {
        for d in 1..=4u32 {
            for primed in [false, true] {
                let b = if primed { d + 1 } else { d };
                let Ok(row) = catalog::table2(n, d, primed, 700) else {
                    continue;
                };
                assert_eq!(
                    row.rank,
                    grid_rank_oracle(n, b, d),
                    "n={n} d={d} primed={primed}"
                );
                assert_eq!(row.m, pascal(n as u64 + 2 * d as u64, n as u64) as u64);
            }
        }
    }
}

#[test]
fn modular_grid_rank_equals_exact_rank_on_small_cells() {
    for (n, d, primed) in [
        (2, 2, true),
        (2, 3, false),
        (3, 2, true),
        (2, 4, true),
        (3, 3, false),
    ] {
        let row = catalog::table2(n, d, primed, 1000).unwrap();
        let nm = if primed {
            catalog::frak_q(n, d)
        } else {
            catalog::frak_p(n, d)
        }
        .unwrap();
        let exact = evaluation_matrix(&nm.system, &nm.zeros).unwrap().rank() as u64;
        assert_eq!(row.rank, exact, "n={n} d={d} primed={primed}");
    }
}

#[test]
fn grid_polynomials_vanish_and_stay_nonnegative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, d) in [(1, 3), (2, 2), (2, 3), (3, 2)] {
        for nm in [
            catalog::frak_p(n, d).unwrap(),
            catalog::frak_q(n, d).unwrap(),
        ] {
            assert!(nm.zeros_verified().unwrap(), "{}", nm.name);
            assert!(
                !nm.sample_minimum(&mut rng, 200).unwrap().is_negative(),
                "{}",
                nm.name
            );
        }
    }
}

#[test]
fn harris_basis_evaluation_matches_direct_sum() {
    let h = catalog::harris();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let c: Vec<Scalar> = (0..3).map(|_| random_rational(&mut rng, 7)).collect();
        let Ok(p) = Point::projective(c.clone()) else {
            continue;
        };
        let lead = c.iter().find(|v| !v.is_zero()).unwrap().pow(10);
        let direct = harris_direct(&c[0], &c[1], &c[2]);
        assert_eq!(&h.eval(&p).unwrap() * &lead, direct);
        assert!(!direct.is_negative());
    }
}

#[test]
fn moments_match_direct_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for family in 0..30 {
        let a = random_family(&mut rng, family);
        let pts = distinct_points(&mut rng, a.n(), 4, 5);
        let mu = random_measure(&mut rng, &pts);
        assert_eq!(
            moments(&a, &mu).unwrap().values(),
            moments_direct(&a, &mu).as_slice()
        );
    }
}

#[test]
fn bareiss_determinant_matches_permutation_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for size in 1..=5 {
        for _ in 0..6 {
            let rows: Vec<Vec<Scalar>> = (0..size)
                .map(|_| {
                    (0..size)
                        .map(|_| {
                            &random_rational(&mut rng, 5)
                                + &(&random_rational(&mut rng, 3) * &Scalar::sqrt2())
                        })
                        .collect()
                })
                .collect();
            assert_eq!(det(&Matrix::from_rows(rows.clone())), leibniz_det(&rows));
        }
    }
}

#[test]
fn modular_reduction_respects_sqrt2() {
    let two = modular::scalar_mod(&Scalar::from_int(2)).unwrap();
    let r = modular::scalar_mod(&Scalar::sqrt2()).unwrap();
    assert_eq!(modular::mul_mod(r, r), two);
}

#[test]
fn na_formula_is_the_dimension_count_away_from_exceptions() {
    let exceptions = [(4, 3), (2, 4), (3, 4), (4, 4)];
    for n in 1..=6u64 {
        for d in 3..=6u64 {
            if exceptions.contains(&(n, d)) {
                assert!(na_formula(n, d) > (pascal(n + d, n) as u64).div_ceil(n + 1));
                continue;
            }
            let m = pascal(n + d, n) as u64;
            assert_eq!(na_formula(n, d), m.div_ceil(n + 1), "n={n} d={d}");
        }
        assert_eq!(na_formula(n, 2), n + 1);
    }
}

#[test]
fn binomials_agree() {
    for n in 0..40u64 {
        for k in 0..=n {
            assert_eq!(binomial(n, k) as u128, pascal(n, k));
        }
    }
}

#[test]
fn flat_extension_counts_from_definitions() {
    for (n, d, atoms) in [(2u64, 2u32, 10u64), (3, 2, 30), (5, 7, 7678), (2, 3, 5)] {
        let f = catalog::flat_extension_counts(n, d, atoms);
        let have = pascal(n + 2 * d as u64, n);
        let needed = pascal(n + f.upper_degree as u64 / 2, n);
        if f.upper_added > 0 {
            assert!(needed > atoms as u128);
            assert!(pascal(n + f.upper_degree as u64 / 2 - 1, n) <= atoms as u128);
            assert_eq!(
                f.upper_added as u128,
                pascal(n + f.upper_degree as u64, n) - have
            );
        }
    }
}

#[test]
fn pythagoras_bound_from_exponent_sums() {
    let a = FunctionSystem::gapped(&[0, 1, 3, 7]).unwrap();
    let mut sums: Vec<u32> = Vec::new();
    for x in [0, 1, 3, 7] {
        for y in [0, 1, 3, 7] {
            if !sums.contains(&(x + y)) {
                sums.push(x + y);
            }
        }
    }
    assert_eq!(sums.len(), 10);
    assert_eq!(catalog::square_dimension(&a).unwrap(), 10);
    assert_eq!(catalog::pythagoras_lower(&a).unwrap(), 3);
    let full = FunctionSystem::affine(2, 2).unwrap();
    assert_eq!(catalog::square_dimension(&full).unwrap(), 15);
}

#[test]
fn plane_bounds() {
    let b = catalog::cara_bounds(2, 10, Space::Projective, 0).unwrap();
    assert_eq!(b.m, 66);
    assert_eq!(b.lower, Some(22));
    assert_eq!(b.upper, Some(32));
    let c = catalog::cara_bounds(3, 2, Space::Cube, 4096).unwrap();
    assert_eq!(c.lower, Some(7));
    assert_eq!(c.upper, Some(9));
    let aff = catalog::cara_bounds(3, 8, Space::Affine, 4096).unwrap();
    assert_eq!(aff.lower, Some(63));
}

#[test]
fn listed_b26_order_starts_with_the_pure_x_power() {
    let a = FunctionSystem::projective_ordered(2, 6, MonomialOrder::ListedB26).unwrap();
    let e = a.exponents().unwrap();
    assert_eq!(e.len(), 28);
    assert_eq!(e[0], vec![6, 0, 0]);
    assert_eq!(e[6], vec![0, 6, 0]);
    assert_eq!(e[27], vec![0, 0, 6]);
}

#[test]
fn separating_functionals_are_nonnegative_deltas() {
    let a = FunctionSystem::affine(1, 4).unwrap();
    let pts = [-2, -1, 0, 1, 3].map(|v| Point::affine_i64(&[v])).to_vec();
    let x = GroundSet::new(pts.clone()).unwrap();
    let chosen = vec![pts[1].clone(), pts[3].clone()];
    match psp_check(&a, &x, &chosen).unwrap() {
        PspOutcome::Feasible { functionals } => {
            for (i, p) in functionals.iter().enumerate() {
                for y in &pts {
                    let v = a.evaluate(p, y).unwrap();
                    assert!(!v.is_negative());
                    if let Some(j) = chosen.iter().position(|c| c == y) {
                        assert_eq!(v, Scalar::from_int((i == j) as i64));
                    }
                }
            }
        }
        PspOutcome::Infeasible { .. } => {
            panic!("interior points of a degree-4 line admit nonnegative deltas")
        }
    }
}

#[test]
fn core_variety_is_the_atom_set_on_finite_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..25 {
        let a = FunctionSystem::affine(rng.gen_range(1..=2), 2).unwrap();
        let pts = distinct_points(&mut rng, a.n(), 7, 4);
        let x = GroundSet::new(pts.clone()).unwrap();
        let k = rng.gen_range(1..=3);
        let s = moments(&a, &random_measure(&mut rng, &pts[..k])).unwrap();
        let w = atom_set(&a, &x, &s).unwrap();
        let core = core_variety(&a, &x, s.values()).unwrap();
        assert_eq!(core.set, w);
        let support: Vec<Point> = w.iter().map(|&i| pts[i].clone()).collect();
        let rank = evaluation_matrix(&a, &support).unwrap().rank();
        assert_eq!(face_dimension(&a, &support).unwrap(), rank);
    }
}
