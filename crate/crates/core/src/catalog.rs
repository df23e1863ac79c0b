//! Named polynomials, example systems, table generators and counting bounds.

use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::basis::{
    binomial, grlex_exponents, CustomFunction, FunctionSystem, MonomialOrder, Point, Polynomial,
};
use crate::decompose::{Ambient, GroundSet};
use crate::error::{Error, Result};
use crate::exactla::modular::{self, ModMatrix};
use crate::exactla::{kernel, Echelon, Matrix, Scalar};
use crate::momentmap::{jacobian, na_formula, AtomicMeasure, MomentSequence};

/// Default cap on the zero grid size in [`table2`].
pub const DEFAULT_BUDGET: u64 = 4096;

/// Where a named polynomial is known to be nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Nonnegativity {
    /// All of ℝⁿ or ℙⁿ.
    Everywhere,
    /// The cube `[0, side]ⁿ`.
    Cube { side: u32 },
}

/// A polynomial over a monomial system with its declared zero set.
#[derive(Clone, Debug)]
pub struct NamedPolynomial {
    pub name: String,
    pub system: FunctionSystem,
    pub coefficients: Vec<Scalar>,
    pub zeros: Vec<Point>,
    pub nonnegative_on: Nonnegativity,
}

impl NamedPolynomial {
    pub fn eval(&self, x: &Point) -> Result<Scalar> {
        self.system.evaluate(&self.coefficients, x)
    }

    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_coefficients(&self.system, &self.coefficients).expect("monomial system")
    }

    /// True if the polynomial vanishes at every declared zero.
    pub fn zeros_verified(&self) -> Result<bool> {
        for z in &self.zeros {
            if !self.eval(z)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Evaluates at `count` random rational points of the nonnegativity domain
    /// and returns the smallest value seen. A sanity check, not a certificate.
    pub fn sample_minimum<R: Rng>(&self, rng: &mut R, count: usize) -> Result<Scalar> {
        let mut min: Option<Scalar> = None;
        for _ in 0..count {
            let x = match self.nonnegative_on {
                Nonnegativity::Everywhere => self.system.random_point(rng, 1000)?,
                Nonnegativity::Cube { side } => {
                    let coords = (0..self.system.coords_len())
                        .map(|_| Scalar::ratio(rng.gen_range(0..=1000 * side as i64), 1000))
                        .collect();
                    Point::new(self.system.chart(), coords)?
                }
            };
            let v = self.eval(&x)?;
            if min.as_ref().is_none_or(|m| v < *m) {
                min = Some(v);
            }
        }
        min.ok_or_else(|| Error::InvalidInput("no samples requested".into()))
    }
}

/// Sum of the monomials in the orbit of `pattern` under coordinate permutations.
fn orbit_sum(pattern: [u32; 3], c: i64) -> Polynomial {
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Polynomial::zero();
    for p in perms {
        let e = vec![pattern[p[0]], pattern[p[1]], pattern[p[2]]];
        if seen.insert(e.clone()) {
            out = out.add(&Polynomial::term(e, Scalar::from_int(c)));
        }
    }
    out
}

/// The 30 projective zeros of the Harris polynomial, in the listing order used throughout the crate.
pub fn harris_zeros() -> Vec<Point> {
    let h = Scalar::ratio(1, 2);
    let r = Scalar::sqrt2();
    let one = Scalar::one();
    let zero = Scalar::zero();
    let neg = |x: &Scalar| -x;
    let mut raw: Vec<[Scalar; 3]> = vec![
        [one.clone(), one.clone(), zero.clone()],
        [one.clone(), neg(&one), zero.clone()],
        [one.clone(), zero.clone(), one.clone()],
        [one.clone(), zero.clone(), neg(&one)],
        [zero.clone(), one.clone(), one.clone()],
        [zero.clone(), one.clone(), neg(&one)],
    ];
    for t in [&h, &r] {
        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            raw.push([one.clone(), Scalar::from_int(a), &Scalar::from_int(b) * t]);
        }
        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            raw.push([one.clone(), &Scalar::from_int(a) * t, Scalar::from_int(b)]);
        }
        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            raw.push([t.clone(), Scalar::from_int(a), Scalar::from_int(b)]);
        }
    }
    raw.into_iter()
        .map(|c| Point::projective(c.to_vec()).expect("nonzero"))
        .collect()
}

/// The Harris form of degree 10 on ℙ², over `B_{2,10}` in graded order.
pub fn harris() -> NamedPolynomial {
    let system = FunctionSystem::projective(2, 10).expect("valid system");
    let poly = orbit_sum([10, 0, 0], 16)
        .add(&orbit_sum([8, 2, 0], -36))
        .add(&orbit_sum([6, 4, 0], 20))
        .add(&orbit_sum([6, 2, 2], 57))
        .add(&orbit_sum([4, 4, 2], -38));
    let coefficients = poly.coefficients(&system).expect("degree 10 terms");
    NamedPolynomial {
        name: "harris".into(),
        system,
        coefficients,
        zeros: harris_zeros(),
        nonnegative_on: Nonnegativity::Everywhere,
    }
}

/// The Harris zeros as a ground set in the open ambient ℙ².
pub fn harris_ground_set() -> GroundSet {
    GroundSet::new(harris_zeros())
        .expect("distinct zeros")
        .with_ambient(Ambient::Open)
}

/// `Σ_{i<k} s_A(z_i)` over `B_{2,10}`.
pub fn harris_sequence(k: usize) -> Result<MomentSequence> {
    let system = FunctionSystem::projective(2, 10)?;
    let zs = harris_zeros();
    crate::momentmap::moments(&system, &AtomicMeasure::unit(&zs[..k]))
}

/// Rank of `DS_{k,B_{2,10}}(𝟙, {z_1, …, z_k})` for `k = 1, …, 30`.
pub fn table1() -> Result<Vec<usize>> {
    let system = FunctionSystem::projective(2, 10)?;
    let mut span = Echelon::new();
    let mut out = Vec::with_capacity(30);
    for z in harris_zeros() {
        let d = system.partials(&z)?;
        for j in 0..d.cols() {
            span.insert(&d.column(j));
        }
        out.push(span.rank());
    }
    Ok(out)
}

/// Successive differences of a rank row, starting from 0.
pub fn increments(ranks: &[usize]) -> Vec<usize> {
    let mut prev = 0;
    ranks
        .iter()
        .map(|&r| {
            let d = r - prev;
            prev = r;
            d
        })
        .collect()
}

/// All points of `{lo, …, hi}ⁿ`, last coordinate varying fastest.
pub fn integer_grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn univariate_in(len: usize, j: usize, roots: impl Iterator<Item = i64>) -> Polynomial {
    let x = Polynomial::var(len, j);
    roots.fold(Polynomial::constant(len, Scalar::one()), |acc, r| {
        acc.mul(&x.sub(&Polynomial::constant(len, Scalar::from_int(r))))
    })
}

/// `𝔭 = Σ_i ∏_{j<d} (x_i − j)²` over `A_{n,2d}`, with zeros `{0, …, d−1}ⁿ`.
pub fn frak_p(n: usize, d: u32) -> Result<NamedPolynomial> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("n and d must be at least 1".into()));
    }
    let system = FunctionSystem::affine(n, 2 * d)?;
    let poly = (0..n).fold(Polynomial::zero(), |acc, i| {
        acc.add(&univariate_in(n, i, 0..d as i64).pow(2))
    });
    let zeros = integer_grid(n, 0, d as i64 - 1)
        .iter()
        .map(|p| Point::affine_i64(p))
        .collect();
    Ok(NamedPolynomial {
        name: format!("p_{n}_{d}"),
        coefficients: poly.coefficients(&system)?,
        system,
        zeros,
        nonnegative_on: Nonnegativity::Everywhere,
    })
}

/// `𝔮 = Σ_i x_i ∏_{0<j<d} (x_i − j)² (d − x_i)` over `A_{n,2d}`, with zeros `{0, …, d}ⁿ`.
pub fn frak_q(n: usize, d: u32) -> Result<NamedPolynomial> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("n and d must be at least 1".into()));
    }
    let system = FunctionSystem::affine(n, 2 * d)?;
    let poly = (0..n).fold(Polynomial::zero(), |acc, i| {
        let xi = Polynomial::var(n, i);
        let inner = univariate_in(n, i, 1..d as i64).pow(2);
        let right = Polynomial::constant(n, Scalar::from_int(d as i64)).sub(&xi);
        acc.add(&xi.mul(&inner).mul(&right))
    });
    let zeros = integer_grid(n, 0, d as i64)
        .iter()
        .map(|p| Point::affine_i64(p))
        .collect();
    Ok(NamedPolynomial {
        name: format!("q_{n}_{d}"),
        coefficients: poly.coefficients(&system)?,
        system,
        zeros,
        nonnegative_on: Nonnegativity::Cube { side: d },
    })
}

/// One cell of the grid rank table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub d: u32,
    pub primed: bool,
    /// `|A_{n,2d}|`.
    pub m: u64,
    /// Size of the zero grid.
    pub zeros: u64,
    /// Rank of the curve points of the grid.
    pub rank: u64,
}

impl TableRow {
    /// `𝔴 = rank / m`.
    pub fn w(&self) -> BigRational {
        BigRational::new(self.rank.into(), self.m.into())
    }

    /// `𝔷 = rank / |Z|`.
    pub fn z(&self) -> BigRational {
        BigRational::new(self.rank.into(), self.zeros.into())
    }

    /// `n,d,m,|Z|,rank,rank/m,rank/|Z|` with unreduced fractions.
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}/{},{}/{}",
            self.n, self.d, self.m, self.zeros, self.rank, self.rank, self.m, self.rank, self.zeros
        )
    }

    pub fn w_percent(&self) -> String {
        percent(self.rank, self.m)
    }

    pub fn z_percent(&self) -> String {
        percent(self.rank, self.zeros)
    }
}

/// `100·num/den` rounded half up to one decimal.
pub fn percent(num: u64, den: u64) -> String {
    let tenths = (num as u128 * 2000 + den as u128) / (2 * den as u128);
    format!("{}.{}", tenths / 10, tenths % 10)
}

/// Rank of `{s_{A_{n,2d}}(x) : x ∈ Z}` for the zero grid of `𝔭`, or of `𝔮` when `primed`.
///
/// The rank is computed modulo the prime [`modular::P`] from the integer grid,
/// which is a lower bound for the rational rank and equal to it unless `P`
/// divides every maximal nonzero minor.
pub fn table2(n: usize, d: u32, primed: bool, budget: u64) -> Result<TableRow> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("n and d must be at least 1".into()));
    }
    let side = if primed { d + 1 } else { d } as u64;
    let size = (side as u128).pow(n as u32);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded {
            size: size.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    let exps = grlex_exponents(n, 2 * d);
    let grid = integer_grid(n, 0, side as i64 - 1);
    let deg = 2 * d as usize;
    let powers: Vec<Vec<u64>> = (0..side)
        .map(|x| {
            let mut row = vec![1u64; deg + 1];
            for k in 1..=deg {
                row[k] = modular::mul_mod(row[k - 1], x);
            }
            row
        })
        .collect();
    let mut mat = ModMatrix::zeros(exps.len(), grid.len());
    for (j, p) in grid.iter().enumerate() {
        for (i, e) in exps.iter().enumerate() {
            let v = e.iter().zip(p).fold(1u64, |acc, (&k, &x)| {
                modular::mul_mod(acc, powers[x as usize][k as usize])
            });
            mat.set(i, j, v);
        }
    }
    let rank = mat.rank() as u64;
    Ok(TableRow {
        n,
        d,
        primed,
        m: exps.len() as u64,
        zeros: grid.len() as u64,
        rank,
    })
}

/// `𝔯'_{n,2} = C(n+2, 2) − n`.
pub fn r_prime_n2(n: u64) -> u64 {
    binomial(n + 2, 2) - n
}

/// Sizes involved in extending the moment matrix of an `A_{n,2d}` sequence to a flat one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatExtension {
    /// Side of the moment matrix of the given moments, `C(n+d, n)`.
    pub matrix_size: u64,
    /// Smallest side that can hold the atoms, `C(n+e, n) ≥ atoms + 1`.
    pub needed_size: u64,
    pub lower_degree: u32,
    pub upper_degree: u32,
    /// Added moments to reach degree `lower_degree`.
    pub lower_added: u64,
    /// Added moments to reach degree `upper_degree`.
    pub upper_added: u64,
}

pub fn flat_extension_counts(n: u64, d: u32, required_atoms: u64) -> FlatExtension {
    let matrix_size = binomial(n + d as u64, n);
    let have = binomial(n + 2 * d as u64, n);
    if matrix_size > required_atoms {
        return FlatExtension {
            matrix_size,
            needed_size: matrix_size,
            lower_degree: 2 * d,
            upper_degree: 2 * d,
            lower_added: 0,
            upper_added: 0,
        };
    }
    let mut e = d;
    while binomial(n + e as u64, n) < required_atoms + 1 {
        e += 1;
    }
    let lower_degree = (2 * (e - 1)).max(2 * d);
    let upper_degree = 2 * e;
    FlatExtension {
        matrix_size,
        needed_size: binomial(n + e as u64, n),
        lower_degree,
        upper_degree,
        lower_added: binomial(n + lower_degree as u64, n) - have,
        upper_added: binomial(n + upper_degree as u64, n) - have,
    }
}

/// `⌈dim lin A² / |A|⌉`, a lower bound for the Pythagoras number of `A²`.
pub fn pythagoras_lower(a: &FunctionSystem) -> Result<u64> {
    let exps = a
        .exponents()
        .ok_or_else(|| Error::InvalidInput("Pythagoras bound needs a monomial system".into()))?;
    let mut sums = std::collections::BTreeSet::new();
    for (i, e) in exps.iter().enumerate() {
        for f in &exps[i..] {
            sums.insert(e.iter().zip(f).map(|(x, y)| x + y).collect::<Vec<u32>>());
        }
    }
    let m = exps.len() as u64;
    Ok((sums.len() as u64).div_ceil(m))
}

/// `dim lin A²` for a monomial system.
pub fn square_dimension(a: &FunctionSystem) -> Result<usize> {
    let exps = a
        .exponents()
        .ok_or_else(|| Error::InvalidInput("needs a monomial system".into()))?;
    let mut sums = std::collections::BTreeSet::new();
    for e in exps {
        for f in exps {
            sums.insert(e.iter().zip(f).map(|(x, y)| x + y).collect::<Vec<u32>>());
        }
    }
    Ok(sums.len())
}

/// A system from the catalog of regular and singular sequences, with its atoms.
#[derive(Clone, Debug)]
pub struct ExampleSystem {
    pub name: &'static str,
    pub system: FunctionSystem,
    /// Atoms of the unit-mass measure the example studies.
    pub points: Vec<Point>,
    /// Whether the Carathéodory number equals `N_A`.
    pub cara_equals_na: bool,
    /// Whether interior points are exactly the regular sequences.
    pub interior_iff_regular: bool,
}

impl ExampleSystem {
    pub fn measure(&self) -> AtomicMeasure {
        AtomicMeasure::unit(&self.points)
    }

    /// `DS_{k,A}(𝟙, X)`.
    pub fn jacobian(&self) -> Result<Matrix> {
        jacobian(&self.system, &self.measure())
    }

    /// Basis of `ker DS_{k,A}(𝟙, X)ᵀ`: functions in `lin A` singular at every atom.
    pub fn singular_functionals(&self) -> Result<Vec<Vec<Scalar>>> {
        Ok(kernel(&self.jacobian()?.transpose()))
    }
}

pub fn complete_one_dim(d: u32) -> Result<ExampleSystem> {
    Ok(ExampleSystem {
        name: "complete-one-dim",
        system: FunctionSystem::affine(1, d)?,
        points: Vec::new(),
        cara_equals_na: true,
        interior_iff_regular: true,
    })
}

/// `{1, x², x³, x⁵, x⁶}` with atoms 1 and 2: a singular interior sequence.
pub fn inter_singular() -> ExampleSystem {
    ExampleSystem {
        name: "inter-singular",
        system: FunctionSystem::gapped(&[0, 2, 3, 5, 6]).expect("valid"),
        points: vec![Point::affine_i64(&[1]), Point::affine_i64(&[2])],
        cara_equals_na: true,
        interior_iff_regular: false,
    }
}

/// `{1, x, x², x⁶}` with atoms 1 and 2.
pub fn boundary_singular() -> ExampleSystem {
    ExampleSystem {
        name: "boundary-singular",
        system: FunctionSystem::gapped(&[0, 1, 2, 6]).expect("valid"),
        points: vec![Point::affine_i64(&[1]), Point::affine_i64(&[2])],
        cara_equals_na: false,
        interior_iff_regular: true,
    }
}

/// Closed form of `det DS_{2,{1,x,x²,x⁶}}(𝟙, (x, y))`: `2(x−y)⁴(x+y)(2x²+xy+2y²)`.
pub fn boundary_singular_det(x: &Scalar, y: &Scalar) -> Scalar {
    let two = Scalar::from_int(2);
    let diff = x - y;
    let q = &(x + y) * &(&(&(&two * &(x * x)) + &(x * y)) + &(&two * &(y * y)));
    &(&two * &diff.pow(4)) * &q
}

/// `B_{2,6}` in its listing order with ten projective atoms of rank 27.
pub fn inter_singular_multi() -> ExampleSystem {
    let pts: [[i64; 3]; 10] = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, 0, 1],
        [0, 1, 1],
        [1, -1, 0],
        [1, 0, -1],
        [1, 1, 1],
        [1, -1, 1],
    ];
    ExampleSystem {
        name: "inter-singular-multi",
        system: FunctionSystem::projective_ordered(2, 6, MonomialOrder::ListedB26).expect("valid"),
        points: pts
            .iter()
            .map(|p| Point::projective_i64(p).expect("nonzero"))
            .collect(),
        cara_equals_na: false,
        interior_iff_regular: false,
    }
}

/// The four systems of the regular/singular classification.
pub fn example_systems() -> Vec<ExampleSystem> {
    vec![
        complete_one_dim(4).expect("valid"),
        inter_singular(),
        boundary_singular(),
        inter_singular_multi(),
    ]
}

/// `f_α(x) = 0` for `x ≤ 0` and `x^α` for `x > 0`.
pub fn f_alpha(alpha: u32) -> CustomFunction {
    CustomFunction::new(
        format!("f{alpha}"),
        Arc::new(move |c: &[Scalar]| {
            if c[0].is_positive() {
                c[0].pow(alpha)
            } else {
                Scalar::zero()
            }
        }),
    )
}

/// The system `{1, x, f_α}` on ℝ, a sequence with two atoms and the point whose mass is maximized.
#[derive(Clone, Debug)]
pub struct KappaExample {
    pub system: FunctionSystem,
    pub ground: GroundSet,
    pub sequence: MomentSequence,
    pub point: Point,
    /// A minimizer of the dual problem on ℝ, when one is known (`α = 1`).
    pub attaining: Option<Vec<Scalar>>,
}

pub fn kappa_not_attained(alpha: u32) -> Result<KappaExample> {
    if alpha == 0 {
        return Err(Error::InvalidInput("alpha must be at least 1".into()));
    }
    let one = CustomFunction::new("1", Arc::new(|_: &[Scalar]| Scalar::one()));
    let x = CustomFunction::new("x", Arc::new(|c: &[Scalar]| c[0].clone()));
    let system = FunctionSystem::custom(1, vec![one, x, f_alpha(alpha)], None)?;
    let ground = GroundSet::new(
        [-2, 0, 1]
            .iter()
            .map(|&v| Point::affine_i64(&[v]))
            .collect(),
    )?;
    let sequence = MomentSequence::new(&system, [2, -2, 0].map(Scalar::from_int).to_vec())?;
    let attaining = (alpha == 1).then(|| vec![Scalar::zero(), Scalar::ratio(-1, 2), Scalar::one()]);
    Ok(KappaExample {
        system,
        ground,
        sequence,
        point: Point::affine_i64(&[-2]),
        attaining,
    })
}

/// The space a Carathéodory bound refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    /// `B_{n,degree}` on ℙⁿ.
    Projective,
    /// `A_{n,degree}` on ℝⁿ.
    Affine,
    /// `A_{n,degree}` on the unit cube.
    Cube,
    /// `A_{1,degree}` on ℝ.
    Line,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub kind: BoundKind,
    pub value: u64,
    pub source: &'static str,
}

/// Known Carathéodory bounds for one system, with the strongest of each kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaraBounds {
    pub n: usize,
    pub degree: u32,
    pub space: Space,
    pub m: u64,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub bounds: Vec<Bound>,
}

/// Collects the Carathéodory bounds that apply to the given system.
/// Grid rank lower bounds are computed only for cells within `budget`.
pub fn cara_bounds(n: usize, degree: u32, space: Space, budget: u64) -> Result<CaraBounds> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let nn = n as u64;
    let deg = degree as u64;
    let m = binomial(nn + deg, nn);
    let mut bounds = Vec::new();
    let mut push = |kind, value, source| {
        bounds.push(Bound {
            kind,
            value,
            source,
        })
    };
    match space {
        Space::Line => {
            if n != 1 {
                return Err(Error::InvalidInput("the line case needs n = 1".into()));
            }
            let v = (deg + 1).div_ceil(2);
            push(BoundKind::Lower, v, "univariate: ceil((d+1)/2)");
            push(BoundKind::Upper, v, "univariate: ceil((d+1)/2)");
        }
        Space::Projective => {
            if !degree.is_multiple_of(2) {
                return Err(Error::InvalidInput(
                    "projective bounds need an even degree".into(),
                ));
            }
            let d = deg / 2;
            push(
                BoundKind::Lower,
                na_formula(nn, deg),
                "N_A from the dimension count",
            );
            push(BoundKind::Upper, m - nn, "projective: C(n+2d,n) - n");
            if n == 2 && d >= 5 {
                push(
                    BoundKind::Upper,
                    3 * d * (d - 1) / 2 + 2,
                    "plane curves: 3/2 d(d-1) + 2",
                );
            }
        }
        Space::Affine => {
            push(
                BoundKind::Lower,
                na_formula(nn, deg),
                "N_A from the dimension count",
            );
            if degree.is_multiple_of(2) && degree > 0 {
                if let Ok(row) = table2(n, degree / 2, false, budget) {
                    push(BoundKind::Lower, row.rank, "rank on the zero grid of p");
                }
            }
            push(BoundKind::Upper, m - 1, "connected curve: m - 1");
            if n == 2 && degree % 2 == 1 {
                let d = deg.div_ceil(2);
                push(
                    BoundKind::Upper,
                    3 * d * (d - 1) / 2 + 1,
                    "plane, odd degree: 3/2 d(d-1) + 1",
                );
            }
        }
        Space::Cube => {
            if degree == 2 {
                push(
                    BoundKind::Lower,
                    r_prime_n2(nn),
                    "cube, degree 2: C(n+2,2) - n",
                );
            }
            if degree.is_multiple_of(2) && degree > 0 {
                if let Ok(row) = table2(n, degree / 2, true, budget) {
                    push(BoundKind::Lower, row.rank, "rank on the zero grid of q");
                }
            }
            push(BoundKind::Upper, m - 1, "connected curve: m - 1");
        }
    }
    let lower = bounds
        .iter()
        .filter(|b| b.kind == BoundKind::Lower)
        .map(|b| b.value)
        .max();
    let upper = bounds
        .iter()
        .filter(|b| b.kind == BoundKind::Upper)
        .map(|b| b.value)
        .min();
    Ok(CaraBounds {
        n,
        degree,
        space,
        m,
        lower,
        upper,
        bounds,
    })
}
