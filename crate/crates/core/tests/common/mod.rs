//! Shared data, oracles and generators for the integration tests.
#![allow(dead_code)]

use momentcone::basis::{FunctionSystem, Point};
use momentcone::decompose::GroundSet;
use momentcone::momentmap::{AtomicMeasure, MomentSequence};
use momentcone::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

/// Printed rank profile along the Harris zeros.
pub const HARRIS_RANKS: [usize; 30] = [
    3, 6, 9, 12, 15, 18, 21, 24, 27, 30, 33, 36, 39, 42, 45, 48, 51, 54, 57, 60, 62, 63, 65, 65,
    65, 65, 65, 65, 65, 65,
];

/// One printed row of the grid rank table. `primed` holds `(|Z'|, rank', w'%, z'%)`, absent for `--` entries.
pub struct PrintedCell {
    pub n: usize,
    pub d: u32,
    pub m: u64,
    pub zeros: u64,
    pub rank: u64,
    pub w: &'static str,
    pub z: &'static str,
    pub primed: Option<(u64, u64, &'static str, &'static str)>,
}

pub const GRID_CELLS: &[PrintedCell] = &[
    PrintedCell {
        n: 3,
        d: 1,
        m: 10,
        zeros: 1,
        rank: 1,
        w: "10.0",
        z: "100.0",
        primed: Some((8, 7, "70.0", "87.5")),
    },
    PrintedCell {
        n: 3,
        d: 2,
        m: 35,
        zeros: 8,
        rank: 8,
        w: "22.9",
        z: "100.0",
        primed: Some((27, 23, "65.7", "85.2")),
    },
    PrintedCell {
        n: 3,
        d: 3,
        m: 84,
        zeros: 27,
        rank: 27,
        w: "32.1",
        z: "100.0",
        primed: Some((64, 54, "64.3", "84.4")),
    },
    PrintedCell {
        n: 3,
        d: 4,
        m: 165,
        zeros: 64,
        rank: 63,
        w: "38.2",
        z: "98.4",
        primed: Some((125, 105, "63.6", "84.0")),
    },
    PrintedCell {
        n: 3,
        d: 5,
        m: 286,
        zeros: 125,
        rank: 121,
        w: "42.3",
        z: "96.8",
        primed: Some((216, 181, "63.3", "83.8")),
    },
    PrintedCell {
        n: 3,
        d: 6,
        m: 455,
        zeros: 216,
        rank: 206,
        w: "45.3",
        z: "95.4",
        primed: Some((343, 287, "63.1", "83.7")),
    },
    PrintedCell {
        n: 3,
        d: 7,
        m: 680,
        zeros: 343,
        rank: 323,
        w: "47.5",
        z: "94.2",
        primed: Some((512, 428, "62.9", "83.6")),
    },
    PrintedCell {
        n: 3,
        d: 8,
        m: 969,
        zeros: 512,
        rank: 477,
        w: "49.2",
        z: "93.2",
        primed: Some((729, 609, "62.8", "83.5")),
    },
    PrintedCell {
        n: 3,
        d: 9,
        m: 1330,
        zeros: 729,
        rank: 673,
        w: "50.6",
        z: "92.3",
        primed: Some((1000, 835, "62.8", "83.5")),
    },
    PrintedCell {
        n: 3,
        d: 10,
        m: 1771,
        zeros: 1000,
        rank: 916,
        w: "51.7",
        z: "91.6",
        primed: Some((1331, 1111, "62.7", "83.5")),
    },
    PrintedCell {
        n: 3,
        d: 11,
        m: 2300,
        zeros: 1331,
        rank: 1211,
        w: "52.7",
        z: "91.0",
        primed: Some((1728, 1442, "62.7", "83.4")),
    },
    PrintedCell {
        n: 3,
        d: 12,
        m: 2925,
        zeros: 1728,
        rank: 1563,
        w: "53.4",
        z: "90.5",
        primed: Some((2197, 1833, "62.7", "83.4")),
    },
    PrintedCell {
        n: 3,
        d: 13,
        m: 3654,
        zeros: 2197,
        rank: 1977,
        w: "54.1",
        z: "90.0",
        primed: Some((2744, 2289, "62.6", "83.4")),
    },
    PrintedCell {
        n: 3,
        d: 14,
        m: 4495,
        zeros: 2744,
        rank: 2458,
        w: "54.7",
        z: "89.6",
        primed: Some((3375, 2815, "62.6", "83.4")),
    },
    PrintedCell {
        n: 3,
        d: 15,
        m: 5456,
        zeros: 3375,
        rank: 3011,
        w: "55.2",
        z: "89.2",
        primed: Some((4096, 3416, "62.6", "83.4")),
    },
    PrintedCell {
        n: 4,
        d: 1,
        m: 15,
        zeros: 1,
        rank: 1,
        w: "6.6",
        z: "100.0",
        primed: Some((16, 11, "73.3", "68.8")),
    },
    PrintedCell {
        n: 4,
        d: 2,
        m: 70,
        zeros: 16,
        rank: 16,
        w: "22.9",
        z: "100.0",
        primed: Some((81, 50, "71.4", "61.7")),
    },
    PrintedCell {
        n: 4,
        d: 3,
        m: 210,
        zeros: 81,
        rank: 76,
        w: "36.2",
        z: "93.8",
        primed: Some((256, 150, "71.4", "58.6")),
    },
    PrintedCell {
        n: 4,
        d: 4,
        m: 495,
        zeros: 256,
        rank: 221,
        w: "44.6",
        z: "86.3",
        primed: Some((625, 355, "71.7", "56.8")),
    },
    PrintedCell {
        n: 4,
        d: 5,
        m: 1001,
        zeros: 625,
        rank: 503,
        w: "50.2",
        z: "80.5",
        primed: Some((1296, 721, "72.0", "55.6")),
    },
    PrintedCell {
        n: 4,
        d: 6,
        m: 1820,
        zeros: 1296,
        rank: 986,
        w: "54.2",
        z: "76.1",
        primed: Some((2401, 1316, "72.3", "54.8")),
    },
    PrintedCell {
        n: 4,
        d: 7,
        m: 3060,
        zeros: 2401,
        rank: 1746,
        w: "57.1",
        z: "72.7",
        primed: Some((4096, 2220, "72.5", "54.2")),
    },
    PrintedCell {
        n: 4,
        d: 8,
        m: 4845,
        zeros: 4096,
        rank: 2871,
        w: "59.3",
        z: "70.1",
        primed: Some((6561, 3525, "72.8", "53.7")),
    },
    PrintedCell {
        n: 5,
        d: 1,
        m: 21,
        zeros: 1,
        rank: 1,
        w: "4.7",
        z: "100.0",
        primed: Some((32, 16, "76.2", "50.0")),
    },
    PrintedCell {
        n: 5,
        d: 2,
        m: 126,
        zeros: 32,
        rank: 31,
        w: "24.6",
        z: "96.9",
        primed: Some((243, 96, "76.2", "39.5")),
    },
    PrintedCell {
        n: 5,
        d: 3,
        m: 462,
        zeros: 243,
        rank: 192,
        w: "41.6",
        z: "79.0",
        primed: Some((1024, 357, "77.3", "34.9")),
    },
    PrintedCell {
        n: 5,
        d: 4,
        m: 1287,
        zeros: 1024,
        rank: 667,
        w: "51.8",
        z: "65.1",
        primed: Some((3125, 1007, "78.2", "32.2")),
    },
    PrintedCell {
        n: 5,
        d: 5,
        m: 3003,
        zeros: 3125,
        rank: 1753,
        w: "58.4",
        z: "56.1",
        primed: Some((7776, 2373, "79.0", "30.5")),
    },
    PrintedCell {
        n: 5,
        d: 6,
        m: 6188,
        zeros: 7776,
        rank: 3888,
        w: "62.8",
        z: "50.0",
        primed: None,
    },
    PrintedCell {
        n: 5,
        d: 7,
        m: 11628,
        zeros: 16807,
        rank: 7678,
        w: "66.0",
        z: "45.7",
        primed: None,
    },
    PrintedCell {
        n: 6,
        d: 1,
        m: 28,
        zeros: 1,
        rank: 1,
        w: "3.6",
        z: "100.0",
        primed: Some((64, 22, "78.6", "34.4")),
    },
    PrintedCell {
        n: 6,
        d: 2,
        m: 210,
        zeros: 64,
        rank: 57,
        w: "27.1",
        z: "89.1",
        primed: Some((729, 168, "80.0", "23.0")),
    },
    PrintedCell {
        n: 6,
        d: 3,
        m: 924,
        zeros: 729,
        rank: 435,
        w: "47.1",
        z: "59.7",
        primed: Some((4096, 756, "81.8", "18.5")),
    },
    PrintedCell {
        n: 6,
        d: 4,
        m: 3003,
        zeros: 4096,
        rank: 1758,
        w: "58.5",
        z: "42.9",
        primed: Some((15625, 2499, "83.2", "16.0")),
    },
    PrintedCell {
        n: 6,
        d: 5,
        m: 8008,
        zeros: 15625,
        rank: 5251,
        w: "65.6",
        z: "33.6",
        primed: None,
    },
    PrintedCell {
        n: 7,
        d: 1,
        m: 36,
        zeros: 1,
        rank: 1,
        w: "2.2",
        z: "100.0",
        primed: Some((128, 29, "80.6", "22.7")),
    },
    PrintedCell {
        n: 7,
        d: 2,
        m: 330,
        zeros: 128,
        rank: 99,
        w: "30.0",
        z: "77.3",
        primed: Some((2187, 274, "83.0", "12.5")),
    },
    PrintedCell {
        n: 7,
        d: 3,
        m: 1716,
        zeros: 2187,
        rank: 897,
        w: "52.3",
        z: "41.0",
        primed: Some((16384, 1464, "85.3", "8.9")),
    },
    PrintedCell {
        n: 7,
        d: 4,
        m: 6435,
        zeros: 16384,
        rank: 4146,
        w: "64.4",
        z: "25.3",
        primed: None,
    },
    PrintedCell {
        n: 8,
        d: 1,
        m: 45,
        zeros: 1,
        rank: 1,
        w: "2.2",
        z: "100.0",
        primed: Some((256, 37, "82.2", "14.5")),
    },
    PrintedCell {
        n: 8,
        d: 2,
        m: 495,
        zeros: 256,
        rank: 163,
        w: "32.9",
        z: "63.7",
        primed: Some((6561, 423, "85.5", "6.4")),
    },
    PrintedCell {
        n: 8,
        d: 3,
        m: 3003,
        zeros: 6561,
        rank: 1711,
        w: "57.0",
        z: "26.1",
        primed: None,
    },
    PrintedCell {
        n: 9,
        d: 1,
        m: 55,
        zeros: 1,
        rank: 1,
        w: "1.8",
        z: "100.0",
        primed: Some((512, 46, "83.6", "9.0")),
    },
    PrintedCell {
        n: 9,
        d: 2,
        m: 715,
        zeros: 512,
        rank: 256,
        w: "35.8",
        z: "50.0",
        primed: Some((19683, 625, "87.4", "3.2")),
    },
    PrintedCell {
        n: 9,
        d: 3,
        m: 5005,
        zeros: 19683,
        rank: 3061,
        w: "61.2",
        z: "15.6",
        primed: None,
    },
    PrintedCell {
        n: 10,
        d: 1,
        m: 66,
        zeros: 1,
        rank: 1,
        w: "1.5",
        z: "100.0",
        primed: Some((1024, 56, "84.8", "5.5")),
    },
    PrintedCell {
        n: 10,
        d: 2,
        m: 1001,
        zeros: 1024,
        rank: 386,
        w: "38.6",
        z: "37.7",
        primed: Some((59049, 891, "89.0", "1.5")),
    },
];

/// Printed percentages that disagree with the printed `rank / m` of the same row.
pub const PERCENT_ERRATA: [(usize, u32, &str); 3] = [(4, 1, "w"), (5, 1, "w"), (7, 1, "w")];

/// `#{α ∈ {0, …, b−1}ⁿ : |α| ≤ 2d}`: the rank of the grid `{0, …, b−1}ⁿ` under `A_{n,2d}`.
///
/// The grid is unisolvent for the span of `{x^α : α_i < b}`, so the rank is the
/// number of those monomials that survive the degree cap.
pub fn grid_rank_oracle(n: usize, b: u32, d: u32) -> u64 {
    fn count(n: usize, b: u32, budget: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (0..b.min(budget + 1))
            .map(|a| count(n - 1, b, budget - a))
            .sum()
    }
    count(n, b, 2 * d)
}

/// `C(n, k)` by Pascal's rule over u128.
pub fn pascal(n: u64, k: u64) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k as usize).copied().unwrap_or(0)
}

/// Determinant by permutation expansion.
pub fn leibniz_det(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Scalar::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        let mut t = Scalar::one();
        for (i, &j) in p.iter().enumerate() {
            t = &t * &rows[i][j];
        }
        if inv % 2 == 1 {
            t = -t;
        }
        total = &total + &t;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

/// `h` evaluated term by term from its five symmetric orbits.
pub fn harris_direct(x: &Scalar, y: &Scalar, z: &Scalar) -> Scalar {
    let v = [x, y, z];
    let mono = |e: [u32; 3]| &(&v[0].pow(e[0]) * &v[1].pow(e[1])) * &v[2].pow(e[2]);
    let mut total = Scalar::zero();
    for i in 0..=10u32 {
        for j in 0..=10 - i {
            let k = 10 - i - j;
            let mut s = [i, j, k];
            s.sort_unstable_by(|a, b| b.cmp(a));
            let c = match s {
                [10, 0, 0] => 16,
                [8, 2, 0] => -36,
                [6, 4, 0] => 20,
                [6, 2, 2] => 57,
                [4, 4, 2] => -38,
                _ => 0,
            };
            if c != 0 {
                total = &total + &(&Scalar::from_int(c) * &mono([i, j, k]));
            }
        }
    }
    total
}

pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    Scalar::ratio(
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=bound.max(1)),
    )
}

pub fn random_positive<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(1..=bound), rng.gen_range(1..=bound))
}

/// `k` distinct affine points with integer coordinates in `[-bound, bound]`.
pub fn distinct_points<R: Rng>(rng: &mut R, dim: usize, k: usize, bound: i64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    while out.len() < k {
        let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
        let p = Point::affine_i64(&c);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

pub fn random_measure<R: Rng>(rng: &mut R, points: &[Point]) -> AtomicMeasure {
    AtomicMeasure::new(
        points
            .iter()
            .map(|p| (random_positive(rng, 9), p.clone()))
            .collect(),
    )
    .unwrap()
}

/// Random system from one of the families used by the property suites.
pub fn random_family<R: Rng>(rng: &mut R, family: usize) -> FunctionSystem {
    match family % 3 {
        0 => FunctionSystem::affine(1, rng.gen_range(1..=6)).unwrap(),
        1 => FunctionSystem::affine(2, rng.gen_range(1..=3)).unwrap(),
        _ => {
            let mut pool: Vec<u32> = (1..=9).collect();
            pool.shuffle(rng);
            let mut e = vec![0];
            e.extend_from_slice(&pool[..rng.gen_range(1..=4)]);
            e.sort_unstable();
            FunctionSystem::gapped(&e).unwrap()
        }
    }
}

pub fn dim_of(a: &FunctionSystem) -> usize {
    a.n()
}

/// Moments computed straight from the monomial exponents.
pub fn moments_direct(a: &FunctionSystem, mu: &AtomicMeasure) -> Vec<Scalar> {
    let exps = a.exponents().expect("monomial system");
    exps.iter()
        .map(|e| {
            mu.atoms()
                .iter()
                .map(|(c, x)| {
                    let v = x
                        .coords()
                        .iter()
                        .zip(e)
                        .fold(Scalar::one(), |acc, (xi, &k)| &acc * &xi.pow(k));
                    c * &v
                })
                .sum()
        })
        .collect()
}

pub fn ground(points: Vec<Point>) -> GroundSet {
    GroundSet::new(points).unwrap()
}

pub fn sequence(values: Vec<Scalar>) -> MomentSequence {
    MomentSequence::from_values(values)
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
