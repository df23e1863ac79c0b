//! Function systems, points and the moment curve.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{dot, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Affine,
    Projective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    #[serde(alias = "affine")]
    AffineMonomial,
    #[serde(alias = "projective")]
    ProjectiveMonomial,
    #[serde(rename = "gapped-1d", alias = "gapped")]
    Gapped1d,
    Custom,
}

/// Order of a monomial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Ascending total degree, lexicographically descending inside a degree.
    #[serde(rename = "grlex")]
    Grlex,
    /// The listing of `B_{2,6}` by ascending degree in the last variable, then
    /// descending degree in the first.
    #[serde(rename = "listed-b26")]
    ListedB26,
    /// Caller-supplied order.
    #[serde(rename = "given")]
    Given,
}

/// A point of ℝⁿ or a normalized representative of a point of ℙⁿ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<Scalar>,
    chart: Chart,
}

impl Point {
    pub fn affine(coords: Vec<Scalar>) -> Self {
        Point {
            coords,
            chart: Chart::Affine,
        }
    }

    pub fn affine_i64(coords: &[i64]) -> Self {
        Point::affine(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    /// Projective point, scaled so that its first nonzero coordinate is 1.
    pub fn projective(coords: Vec<Scalar>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::InvalidInput(
                "projective point with all coordinates zero".into(),
            ));
        };
        let coords = if lead.is_one() {
            coords
        } else {
            let inv = lead.inv().expect("nonzero");
            coords.iter().map(|c| c * &inv).collect()
        };
        Ok(Point {
            coords,
            chart: Chart::Projective,
        })
    }

    pub fn projective_i64(coords: &[i64]) -> Result<Self> {
        Point::projective(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn new(chart: Chart, coords: Vec<Scalar>) -> Result<Self> {
        match chart {
            Chart::Affine => Ok(Point::affine(coords)),
            Chart::Projective => Point::projective(coords),
        }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// `n` for ℝⁿ or ℙⁿ.
    pub fn dim(&self) -> usize {
        match self.chart {
            Chart::Affine => self.coords.len(),
            Chart::Projective => self.coords.len() - 1,
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.to_strings();
        match self.chart {
            Chart::Affine => write!(f, "({})", c.join(", ")),
            Chart::Projective => write!(f, "[{}]", c.join(" : ")),
        }
    }
}

pub type EvalFn = Arc<dyn Fn(&[Scalar]) -> Scalar + Send + Sync>;
pub type GradFn = Arc<dyn Fn(&[Scalar]) -> Vec<Scalar> + Send + Sync>;
pub type DomainFn = Arc<dyn Fn(&[Scalar]) -> bool + Send + Sync>;

/// A function given by closures.
#[derive(Clone)]
pub struct CustomFunction {
    pub name: String,
    pub eval: EvalFn,
    /// Gradient in the `n` affine coordinates, if the function is differentiable.
    pub grad: Option<GradFn>,
}

impl CustomFunction {
    pub fn new(name: impl Into<String>, eval: EvalFn) -> Self {
        CustomFunction {
            name: name.into(),
            eval,
            grad: None,
        }
    }

    pub fn with_gradient(mut self, grad: GradFn) -> Self {
        self.grad = Some(grad);
        self
    }
}

#[derive(Clone)]
enum Functions {
    Monomials(Vec<Vec<u32>>),
    Custom {
        funcs: Vec<CustomFunction>,
        domain: Option<DomainFn>,
    },
}

/// An ordered, linearly independent list of functions `A = {a_1, …, a_m}`.
#[derive(Clone)]
pub struct FunctionSystem {
    kind: SystemKind,
    chart: Chart,
    n: usize,
    degree: Option<u32>,
    order: MonomialOrder,
    funcs: Functions,
}

impl fmt::Debug for FunctionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSystem")
            .field("kind", &self.kind)
            .field("n", &self.n)
            .field("degree", &self.degree)
            .field("size", &self.size())
            .finish()
    }
}

/// All exponent vectors of length `len` and total degree `k`, lexicographically descending.
fn exponents_of_degree(len: usize, k: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    if len == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in exponents_of_degree(len - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Exponents of `A_{n,d}` in graded lexicographic order.
pub fn grlex_exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| exponents_of_degree(n, k)).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

impl FunctionSystem {
    /// `A_{n,d}`: all monomials of degree at most `d` in `n` variables.
    pub fn affine(n: usize, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        Ok(FunctionSystem {
            kind: SystemKind::AffineMonomial,
            chart: Chart::Affine,
            n,
            degree: Some(d),
            order: MonomialOrder::Grlex,
            funcs: Functions::Monomials(grlex_exponents(n, d)),
        })
    }

    /// `B_{n,d}`: all forms of degree exactly `d` in `n + 1` variables.
    pub fn projective(n: usize, d: u32) -> Result<Self> {
        FunctionSystem::projective_ordered(n, d, MonomialOrder::Grlex)
    }

    pub fn projective_ordered(n: usize, d: u32, order: MonomialOrder) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        let mut exps = exponents_of_degree(n + 1, d);
        match order {
            MonomialOrder::Grlex => {}
            MonomialOrder::ListedB26 => {
                if (n, d) != (2, 6) {
                    return Err(Error::InvalidInput(
                        "order listed-b26 needs n = 2, d = 6".into(),
                    ));
                }
                exps.sort_by(|a, b| a[2].cmp(&b[2]).then(b[0].cmp(&a[0])));
            }
            MonomialOrder::Given => {
                return Err(Error::InvalidInput(
                    "order `given` needs an exponent list".into(),
                ))
            }
        }
        Ok(FunctionSystem {
            kind: SystemKind::ProjectiveMonomial,
            chart: Chart::Projective,
            n,
            degree: Some(d),
            order,
            funcs: Functions::Monomials(exps),
        })
    }

    /// Univariate monomials `{x^e : e ∈ exponents}` in the given order.
    pub fn gapped(exponents: &[u32]) -> Result<Self> {
        let sys = FunctionSystem::monomials(
            Chart::Affine,
            1,
            exponents.iter().map(|&e| vec![e]).collect(),
        )?;
        Ok(FunctionSystem {
            kind: SystemKind::Gapped1d,
            ..sys
        })
    }

    /// An explicit list of monomials, kept in the given order.
    pub fn monomials(chart: Chart, n: usize, exponents: Vec<Vec<u32>>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptySystem);
        }
        let len = match chart {
            Chart::Affine => n,
            Chart::Projective => n + 1,
        };
        let mut seen = std::collections::HashSet::new();
        for e in &exponents {
            if e.len() != len {
                return Err(Error::InvalidInput(format!(
                    "exponent {e:?} has length {}, expected {len}",
                    e.len()
                )));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::DuplicateExponent(e.clone()));
            }
        }
        let degrees: Vec<u32> = exponents.iter().map(|e| e.iter().sum()).collect();
        let max = *degrees.iter().max().expect("nonempty");
        if chart == Chart::Projective && degrees.iter().any(|&d| d != max) {
            return Err(Error::InvalidInput(
                "projective monomials must share one degree".into(),
            ));
        }
        let kind = match (chart, n) {
            (Chart::Projective, _) => SystemKind::ProjectiveMonomial,
            (Chart::Affine, 1) => SystemKind::Gapped1d,
            (Chart::Affine, _) => SystemKind::AffineMonomial,
        };
        Ok(FunctionSystem {
            kind,
            chart,
            n,
            degree: Some(max),
            order: MonomialOrder::Given,
            funcs: Functions::Monomials(exponents),
        })
    }

    /// Functions given by closures on an affine domain of dimension `n`.
    pub fn custom(n: usize, funcs: Vec<CustomFunction>, domain: Option<DomainFn>) -> Result<Self> {
        if funcs.is_empty() {
            return Err(Error::EmptySystem);
        }
        Ok(FunctionSystem {
            kind: SystemKind::Custom,
            chart: Chart::Affine,
            n,
            degree: None,
            order: MonomialOrder::Given,
            funcs: Functions::Custom { funcs, domain },
        })
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// `m = |A|`.
    pub fn size(&self) -> usize {
        match &self.funcs {
            Functions::Monomials(e) => e.len(),
            Functions::Custom { funcs, .. } => funcs.len(),
        }
    }

    /// Number of coordinates of a point: `n`, or `n + 1` for projective systems.
    pub fn coords_len(&self) -> usize {
        match self.chart {
            Chart::Affine => self.n,
            Chart::Projective => self.n + 1,
        }
    }

    pub fn exponents(&self) -> Option<&[Vec<u32>]> {
        match &self.funcs {
            Functions::Monomials(e) => Some(e),
            Functions::Custom { .. } => None,
        }
    }

    pub fn is_differentiable(&self) -> bool {
        match &self.funcs {
            Functions::Monomials(_) => true,
            Functions::Custom { funcs, .. } => funcs.iter().all(|f| f.grad.is_some()),
        }
    }

    /// Human-readable names of the functions, e.g. `x1^2*x2`.
    pub fn function_names(&self) -> Vec<String> {
        match &self.funcs {
            Functions::Monomials(exps) => {
                exps.iter().map(|e| monomial_name(e, self.chart)).collect()
            }
            Functions::Custom { funcs, .. } => funcs.iter().map(|f| f.name.clone()).collect(),
        }
    }

    /// Position of a monomial in the basis.
    pub fn index_of(&self, exponent: &[u32]) -> Option<usize> {
        self.exponents()?
            .iter()
            .position(|e| e.as_slice() == exponent)
    }

    pub fn check_point(&self, x: &Point) -> Result<()> {
        if x.chart() != self.chart {
            return Err(Error::ChartMismatch(format!(
                "system is {:?}, point is {:?}",
                self.chart,
                x.chart()
            )));
        }
        if x.coords().len() != self.coords_len() {
            return Err(Error::ChartMismatch(format!(
                "point has {} coordinates, system needs {}",
                x.coords().len(),
                self.coords_len()
            )));
        }
        if let Functions::Custom {
            domain: Some(dom), ..
        } = &self.funcs
        {
            if !dom(x.coords()) {
                return Err(Error::DomainViolation(format!("{x:?}")));
            }
        }
        Ok(())
    }

    /// The moment curve `s_A(x) = (a_1(x), …, a_m(x))`.
    pub fn moment_curve(&self, x: &Point) -> Result<Vec<Scalar>> {
        self.check_point(x)?;
        Ok(self.eval_raw(x.coords()))
    }

    /// Evaluates every function at raw coordinates, without chart checks or normalization.
    pub fn eval_raw(&self, coords: &[Scalar]) -> Vec<Scalar> {
        match &self.funcs {
            Functions::Monomials(exps) => {
                let powers = power_table(coords, exps);
                exps.iter().map(|e| monomial_value(&powers, e)).collect()
            }
            Functions::Custom { funcs, .. } => funcs.iter().map(|f| (f.eval)(coords)).collect(),
        }
    }

    /// Value of `p = Σ coeffs_i a_i` at `x`.
    pub fn evaluate(&self, coeffs: &[Scalar], x: &Point) -> Result<Scalar> {
        self.check_coeffs(coeffs)?;
        Ok(dot(coeffs, &self.moment_curve(x)?))
    }

    /// Value of `p = Σ coeffs_i a_i` at raw coordinates.
    pub fn evaluate_raw(&self, coeffs: &[Scalar], coords: &[Scalar]) -> Scalar {
        dot(coeffs, &self.eval_raw(coords))
    }

    fn check_coeffs(&self, coeffs: &[Scalar]) -> Result<()> {
        if coeffs.len() != self.size() {
            return Err(Error::InvalidInput(format!(
                "coefficient vector has length {}, system has {}",
                coeffs.len(),
                self.size()
            )));
        }
        Ok(())
    }

    /// `m × n` matrix of `∂_j a_i(x)`; projective systems differentiate in all `n + 1` coordinates.
    pub fn partials(&self, x: &Point) -> Result<Matrix> {
        self.check_point(x)?;
        self.partials_raw(x.coords())
    }

    pub fn partials_raw(&self, coords: &[Scalar]) -> Result<Matrix> {
        let m = self.size();
        let k = coords.len();
        let mut out = Matrix::zeros(m, k);
        match &self.funcs {
            Functions::Monomials(exps) => {
                let powers = power_table(coords, exps);
                for (i, e) in exps.iter().enumerate() {
                    for j in 0..k {
                        if e[j] == 0 {
                            continue;
                        }
                        let mut d = e.clone();
                        d[j] -= 1;
                        let v = &Scalar::from_int(e[j] as i64) * &monomial_value(&powers, &d);
                        out.set(i, j, v);
                    }
                }
            }
            Functions::Custom { funcs, .. } => {
                for (i, f) in funcs.iter().enumerate() {
                    let g = f.grad.as_ref().ok_or(Error::NotDifferentiable)?;
                    let row = g(coords);
                    if row.len() != k {
                        return Err(Error::InvalidInput(format!(
                            "gradient of {} has length {}",
                            f.name,
                            row.len()
                        )));
                    }
                    for (j, v) in row.into_iter().enumerate() {
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Gradient of `p = Σ coeffs_i a_i` at `x`.
    pub fn gradient(&self, coeffs: &[Scalar], x: &Point) -> Result<Vec<Scalar>> {
        self.check_coeffs(coeffs)?;
        Ok(self.partials(x)?.vec_mul(coeffs))
    }

    /// Checks linear independence by the rank of evaluations at `m` random
    /// rational points, retrying up to three times.
    pub fn validate_independence<R: Rng>(&self, rng: &mut R) -> Result<bool> {
        let m = self.size();
        for _ in 0..3 {
            let mut rows = Vec::with_capacity(m);
            for _ in 0..m {
                let x = self.random_point(rng, 1000)?;
                rows.push(self.moment_curve(&x)?);
            }
            if Matrix::from_rows(rows).rank() == m {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// A random rational point with numerators in `[-bound, bound]` and small denominators.
    pub fn random_point<R: Rng>(&self, rng: &mut R, bound: i64) -> Result<Point> {
        for _ in 0..1000 {
            let coords: Vec<Scalar> = (0..self.coords_len())
                .map(|_| Scalar::ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=7)))
                .collect();
            let p = match Point::new(self.chart, coords) {
                Ok(p) => p,
                Err(_) => continue,
            };
            if self.check_point(&p).is_ok() {
                return Ok(p);
            }
        }
        Err(Error::InvalidInput(
            "could not sample a point in the domain".into(),
        ))
    }
}

fn power_table(coords: &[Scalar], exps: &[Vec<u32>]) -> Vec<Vec<Scalar>> {
    coords
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let max = exps.iter().map(|e| e[j]).max().unwrap_or(0) as usize;
            let mut p = Vec::with_capacity(max + 1);
            p.push(Scalar::one());
            for k in 1..=max {
                let next = &p[k - 1] * c;
                p.push(next);
            }
            p
        })
        .collect()
}

fn monomial_value(powers: &[Vec<Scalar>], e: &[u32]) -> Scalar {
    let mut acc = Scalar::one();
    for (j, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        let p = &powers[j][k as usize];
        if p.is_zero() {
            return Scalar::zero();
        }
        acc = &acc * p;
    }
    acc
}

fn monomial_name(e: &[u32], chart: Chart) -> String {
    let offset = match chart {
        Chart::Affine => 1,
        Chart::Projective => 0,
    };
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(j, &k)| {
            if k == 1 {
                format!("x{}", j + offset)
            } else {
                format!("x{}^{k}", j + offset)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Sparse polynomial with exponent-vector keys.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(len: usize, c: Scalar) -> Self {
        Polynomial::term(vec![0; len], c)
    }

    pub fn term(exponent: Vec<u32>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Polynomial { terms }
    }

    /// The coordinate `x_j` in `len` variables.
    pub fn var(len: usize, j: usize) -> Self {
        let mut e = vec![0; len];
        e[j] = 1;
        Polynomial::term(e, Scalar::one())
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.remove(e).map_or_else(|| c.clone(), |x| &x + c);
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        Polynomial { terms }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out = out.add(&Polynomial::term(e, c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let len = self.terms.keys().next().map_or(0, Vec::len);
        (0..k).fold(Polynomial::constant(len, Scalar::one()), |acc, _| {
            acc.mul(self)
        })
    }

    pub fn eval(&self, coords: &[Scalar]) -> Scalar {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(coords)
                    .fold(c.clone(), |acc, (&k, x)| &acc * &x.pow(k))
            })
            .sum()
    }

    /// Coordinates in the basis of a monomial system.
    pub fn coefficients(&self, system: &FunctionSystem) -> Result<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); system.size()];
        for (e, c) in &self.terms {
            let i = system.index_of(e).ok_or_else(|| {
                Error::InvalidInput(format!("monomial {e:?} is not in the system"))
            })?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    /// The polynomial with the given coordinates in a monomial system.
    pub fn from_coefficients(system: &FunctionSystem, coeffs: &[Scalar]) -> Result<Polynomial> {
        let exps = system
            .exponents()
            .ok_or_else(|| Error::InvalidInput("not a monomial system".into()))?;
        let mut terms = BTreeMap::new();
        for (e, c) in exps.iter().zip(coeffs) {
            if !c.is_zero() {
                terms.insert(e.clone(), c.clone());
            }
        }
        Ok(Polynomial { terms })
    }
}
