//! Dense matrices over ℚ(√2) with exact rank, determinant, kernel and solve.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::bareiss::{self, Zsqrt2};
use super::scalar::Scalar;

/// Row-major dense matrix of [`Scalar`] entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a matrix from columns. Panics if the columns have different lengths.
    pub fn from_columns(columns: &[Vec<Scalar>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| super::dot(self.row(i), v)).collect()
    }

    /// `vᵀ·M`.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Scalar::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(i)) {
                if !x.is_zero() {
                    *o += &(vi * x);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(Scalar::is_rational)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

enum IntegralRows {
    Rational(Vec<Vec<BigInt>>),
    Quadratic(Vec<Vec<Zsqrt2>>),
}

/// Scales every row by the lcm of its denominators. Returns the integral rows and the scale factors.
fn integral_rows(m: &Matrix) -> (IntegralRows, Vec<BigInt>) {
    let scales: Vec<BigInt> = (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()))
        })
        .collect();
    let scaled = |x: &Scalar, s: &BigInt, part: fn(&Scalar) -> &num_rational::BigRational| {
        let q = part(x);
        q.numer() * (s / q.denom())
    };
    if m.is_rational() {
        let rows = (0..m.rows)
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|x| scaled(x, &scales[i], Scalar::rational_part))
                    .collect()
            })
            .collect();
        (IntegralRows::Rational(rows), scales)
    } else {
        let rows = (0..m.rows)
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|x| {
                        Zsqrt2::new(
                            scaled(x, &scales[i], Scalar::rational_part),
                            scaled(x, &scales[i], Scalar::sqrt2_part),
                        )
                    })
                    .collect()
            })
            .collect();
        (IntegralRows::Quadratic(rows), scales)
    }
}

/// Rank of `m`, computed by Bareiss elimination over ℤ or ℤ[√2].
pub fn rank(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match integral_rows(m).0 {
        IntegralRows::Rational(rows) => bareiss::eliminate(rows, m.cols).rank,
        IntegralRows::Quadratic(rows) => bareiss::eliminate(rows, m.cols).rank,
    }
}

/// Determinant of a square matrix. Panics if `m` is not square.
pub fn det(m: &Matrix) -> Scalar {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    if m.rows == 0 {
        return Scalar::one();
    }
    let (rows, scales) = integral_rows(m);
    let d = match rows {
        IntegralRows::Rational(rows) => {
            let e = bareiss::eliminate(rows, m.cols);
            if e.rank < m.rows {
                return Scalar::zero();
            }
            let v = Scalar::from_bigint(e.last_pivot);
            if e.sign < 0 {
                -v
            } else {
                v
            }
        }
        IntegralRows::Quadratic(rows) => {
            let e = bareiss::eliminate(rows, m.cols);
            if e.rank < m.rows {
                return Scalar::zero();
            }
            let v = e.last_pivot.to_scalar();
            if e.sign < 0 {
                -v
            } else {
                v
            }
        }
    };
    let scale = scales.into_iter().fold(BigInt::one(), |a, b| a * b);
    &d / &Scalar::from_bigint(scale)
}

/// Reduced row echelon form over ℚ(√2) and the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        for j in c..a.cols {
            let v = a.get(r, j);
            if !v.is_zero() {
                let nv = v * &inv;
                a.set(r, j, nv);
            }
        }
        let pivot_row: Vec<Scalar> = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for (j, pj) in pivot_row.iter().enumerate().skip(c) {
                if pj.is_zero() {
                    continue;
                }
                let nv = a.get(i, j) - &(&f * pj);
                a.set(i, j, nv);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of `{x : Mx = 0}`, each vector integral with content 1 and first nonzero entry positive.
pub fn kernel(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..m.cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[f] = Scalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(i, f);
        }
        basis.push(normalize_integral(&v));
    }
    basis
}

/// One solution of `Mx = b` with free variables set to zero, or `None` if inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows, "right-hand side length mismatch");
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for (i, bi) in b.iter().enumerate() {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, bi.clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, m.cols).clone();
    }
    Some(x)
}

/// Indices of a maximal set of linearly independent rows, chosen greedily from the top.
pub fn independent_rows(m: &Matrix) -> Vec<usize> {
    rref(&m.transpose()).1
}

/// Indices of a maximal set of linearly independent columns, chosen greedily from the left.
pub fn independent_columns(m: &Matrix) -> Vec<usize> {
    rref(m).1
}

/// Scales a nonzero vector to integer components with content 1 and a positive first entry.
pub fn normalize_integral(v: &[Scalar]) -> Vec<Scalar> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
    let parts: Vec<(BigInt, BigInt)> = v
        .iter()
        .map(|x| {
            let a = x.rational_part();
            let b = x.sqrt2_part();
            (
                a.numer() * (&den / a.denom()),
                b.numer() * (&den / b.denom()),
            )
        })
        .collect();
    let content = parts
        .iter()
        .fold(BigInt::zero(), |g, (a, b)| g.gcd(a).gcd(b));
    let content = if first.is_negative() {
        -content
    } else {
        content
    };
    parts
        .into_iter()
        .map(|(a, b)| {
            Scalar::new(
                num_rational::BigRational::from_integer(a / &content),
                num_rational::BigRational::from_integer(b / &content),
            )
        })
        .collect()
}

/// True if `u` is a scalar multiple of `v` (both nonzero).
pub fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let Some(k) = v.iter().position(|x| !x.is_zero()) else {
        return u.iter().all(Scalar::is_zero);
    };
    if u[k].is_zero() {
        return false;
    }
    let f = &u[k] / &v[k];
    u.iter().zip(v).all(|(a, b)| *a == &f * b)
}

/// Row echelon basis of a growing span, for rank after each insertion.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span. Returns true if the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        // Each stored row is zero at the pivots of the rows stored before it.
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        let Some(k) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[k].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push(v);
        self.pivots.push(k);
        true
    }
}
