//! Fraction-free (Bareiss) elimination over ℤ and ℤ[√2].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::Scalar;

/// The operations Bareiss elimination needs from an integral domain.
pub(crate) trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, rhs: &Self) -> Self;
    /// Bit size, used to pick the cheapest pivot.
    fn size(&self) -> u64;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)));
        self / rhs
    }
    fn size(&self) -> u64 {
        self.bits()
    }
}

/// `a + b√2` with integer `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Zsqrt2 {
    a: BigInt,
    b: BigInt,
}

impl Zsqrt2 {
    pub(crate) fn new(a: BigInt, b: BigInt) -> Self {
        Zsqrt2 { a, b }
    }

    pub(crate) fn to_scalar(&self) -> Scalar {
        Scalar::new(
            BigRational::from_integer(self.a.clone()),
            BigRational::from_integer(self.b.clone()),
        )
    }
}

impl Ring for Zsqrt2 {
    fn zero() -> Self {
        Zsqrt2 {
            a: <BigInt as Zero>::zero(),
            b: <BigInt as Zero>::zero(),
        }
    }
    fn one() -> Self {
        Zsqrt2 {
            a: <BigInt as One>::one(),
            b: <BigInt as Zero>::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if Zero::is_zero(&self.b) && Zero::is_zero(&rhs.b) {
            return Zsqrt2 {
                a: &self.a * &rhs.a,
                b: <BigInt as Zero>::zero(),
            };
        }
        Zsqrt2 {
            a: &self.a * &rhs.a + ((&self.b * &rhs.b) << 1),
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Zsqrt2 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        if Zero::is_zero(&rhs.b) {
            return Zsqrt2 {
                a: &self.a / &rhs.a,
                b: &self.b / &rhs.a,
            };
        }
        // x / y = x·ȳ / N(y)
        let norm = &rhs.a * &rhs.a - ((&rhs.b * &rhs.b) << 1);
        let conj = Zsqrt2 {
            a: rhs.a.clone(),
            b: -rhs.b.clone(),
        };
        let t = self.mul(&conj);
        debug_assert!(Zero::is_zero(&(&t.a % &norm)) && Zero::is_zero(&(&t.b % &norm)));
        Zsqrt2 {
            a: t.a / &norm,
            b: t.b / norm,
        }
    }
    fn size(&self) -> u64 {
        self.a.bits().max(self.b.bits())
    }
}

pub(crate) struct Elimination<R> {
    pub rank: usize,
    /// Parity of the row permutation, ±1.
    pub sign: i32,
    /// Last pivot; for a full-rank square matrix this is the determinant.
    pub last_pivot: R,
}

/// Fraction-free row echelon reduction of `rows` (each of length `cols`).
pub(crate) fn eliminate<R: Ring>(mut rows: Vec<Vec<R>>, cols: usize) -> Elimination<R> {
    let n = rows.len();
    let mut prev = R::one();
    let mut r = 0;
    let mut sign = 1;
    for c in 0..cols {
        if r == n {
            break;
        }
        let pivot = (r..n)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].size());
        let Some(p) = pivot else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            sign = -sign;
        }
        let (top, rest) = rows.split_at_mut(r + 1);
        let prow = &top[r];
        let pv = &prow[c];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in (c + 1)..cols {
                let scaled = pv.mul(&row[j]);
                let v = if f.is_zero() || prow[j].is_zero() {
                    scaled
                } else {
                    scaled.sub(&f.mul(&prow[j]))
                };
                row[j] = if v.is_zero() { v } else { v.exact_div(&prev) };
            }
            row[c] = R::zero();
        }
        prev = rows[r][c].clone();
        r += 1;
    }
    Elimination {
        rank: r,
        sign,
        last_pivot: prev,
    }
}
