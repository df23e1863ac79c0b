//! Rank modulo a prime.
//!
//! The reduction ℤ[√2] → 𝔽_p is a ring map, so every minor that survives
//! modulo `p` is nonzero over ℚ(√2). The rank modulo `p` is therefore a
//! certified lower bound for the exact rank, and full rank modulo `p`
//! certifies full rank.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::matrix::Matrix;
use super::scalar::Scalar;

/// The Mersenne prime 2³¹ − 1.
pub const P: u64 = (1 << 31) - 1;

/// `√2 mod P`: since 2³¹ ≡ 1, we have 2 ≡ 2³² = (2¹⁶)².
const SQRT2: u64 = 1 << 16;

#[inline(always)]
fn reduce(x: u64) -> u64 {
    let t = (x & P) + (x >> 31);
    let t = (t & P) + (t >> 31);
    if t >= P {
        t - P
    } else {
        t
    }
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = reduce(acc * b);
        }
        b = reduce(b * b);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(x: u64) -> u64 {
    debug_assert!(!x.is_multiple_of(P));
    pow_mod(x, P - 2)
}

pub fn mul_mod(a: u64, b: u64) -> u64 {
    reduce(a * b)
}

pub fn add_mod(a: u64, b: u64) -> u64 {
    reduce(a + b)
}

/// Reduces an integer modulo `P`.
pub fn int_mod(n: &BigInt) -> u64 {
    let r = n % BigInt::from(P);
    let r = if r < BigInt::zero() {
        r + BigInt::from(P)
    } else {
        r
    };
    r.to_u64().expect("residue fits")
}

pub fn i64_mod(n: i64) -> u64 {
    n.rem_euclid(P as i64) as u64
}

/// Image of a scalar in 𝔽_P, or `None` if a denominator vanishes there.
pub fn scalar_mod(x: &Scalar) -> Option<u64> {
    let part = |q: &num_rational::BigRational| -> Option<u64> {
        let d = int_mod(q.denom());
        if d == 0 {
            return None;
        }
        Some(mul_mod(int_mod(q.numer()), inv_mod(d)))
    };
    let a = part(x.rational_part())?;
    if x.is_rational() {
        return Some(a);
    }
    let b = part(x.sqrt2_part())?;
    Some(add_mod(a, mul_mod(b, SQRT2)))
}

/// Dense matrix over 𝔽_P.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ModMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_matrix(m: &Matrix) -> Option<Self> {
        let data = m
            .entries()
            .iter()
            .map(|x| scalar_mod(x).map(|v| v as u32))
            .collect::<Option<Vec<u32>>>()?;
        Some(ModMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < P);
        self.data[i * self.cols + j] = v as u32;
    }

    /// Rank over 𝔽_P by Gaussian elimination. Consumes the matrix.
    pub fn rank(mut self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let a = &mut self.data;
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    a.swap(p * cols + j, r * cols + j);
                }
            }
            let (top, rest) = a.split_at_mut((r + 1) * cols);
            let prow = &mut top[r * cols..];
            let inv = inv_mod(prow[c] as u64);
            for x in prow[c..].iter_mut() {
                *x = reduce(*x as u64 * inv) as u32;
            }
            let prow = &prow[c..];
            for row in rest.chunks_exact_mut(cols) {
                let f = row[c] as u64;
                if f == 0 {
                    continue;
                }
                let nf = P - f;
                for (x, &y) in row[c..].iter_mut().zip(prow) {
                    *x = reduce(*x as u64 + nf * y as u64) as u32;
                }
            }
            r += 1;
        }
        r
    }
}

/// Rank modulo `P`, or `None` if some denominator is divisible by `P`.
pub fn rank_mod_p(m: &Matrix) -> Option<usize> {
    ModMatrix::from_matrix(m).map(ModMatrix::rank)
}
