//! Atomic measures, the moment map `S_{k,A}` and its Jacobian.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::{binomial, Chart, FunctionSystem, Point};
use crate::error::{Error, Result};
use crate::exactla::{dot, modular, Matrix, Scalar};

/// A finite measure `Σ c_i δ_{x_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicMeasure {
    atoms: Vec<(Scalar, Point)>,
    signed: bool,
}

fn merge(atoms: Vec<(Scalar, Point)>) -> Vec<(Scalar, Point)> {
    let mut out: Vec<(Scalar, Point)> = Vec::with_capacity(atoms.len());
    for (c, x) in atoms {
        match out.iter_mut().find(|(_, y)| *y == x) {
            Some((d, _)) => *d += &c,
            None => out.push((c, x)),
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out
}

impl AtomicMeasure {
    /// Positive measure. Atoms at equal points are merged; a nonpositive mass is an error.
    pub fn new(atoms: Vec<(Scalar, Point)>) -> Result<Self> {
        if let Some((c, x)) = atoms.iter().find(|(c, _)| !c.is_positive()) {
            return Err(Error::InvalidInput(format!(
                "mass {c} at {x:?} is not positive"
            )));
        }
        Ok(AtomicMeasure {
            atoms: merge(atoms),
            signed: false,
        })
    }

    /// Signed measure; atoms at equal points are merged and zero masses dropped.
    pub fn signed(atoms: Vec<(Scalar, Point)>) -> Self {
        AtomicMeasure {
            atoms: merge(atoms),
            signed: true,
        }
    }

    /// Unit masses at the given points.
    pub fn unit(points: &[Point]) -> Self {
        AtomicMeasure::new(points.iter().map(|x| (Scalar::one(), x.clone())).collect())
            .expect("unit masses are positive")
    }

    /// Positive measure from pairs; panics on a nonpositive mass.
    pub fn from_pairs(atoms: Vec<(Scalar, Point)>) -> Self {
        AtomicMeasure::new(atoms).expect("masses must be positive")
    }

    pub fn empty() -> Self {
        AtomicMeasure {
            atoms: Vec::new(),
            signed: false,
        }
    }

    pub fn atoms(&self) -> &[(Scalar, Point)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn masses(&self) -> Vec<Scalar> {
        self.atoms.iter().map(|(c, _)| c.clone()).collect()
    }

    pub fn points(&self) -> Vec<Point> {
        self.atoms.iter().map(|(_, x)| x.clone()).collect()
    }

    /// Sum of two measures.
    pub fn add(&self, other: &AtomicMeasure) -> AtomicMeasure {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        AtomicMeasure {
            atoms: merge(atoms),
            signed: self.signed || other.signed,
        }
    }

    /// All masses multiplied by `c`.
    pub fn scale(&self, c: &Scalar) -> AtomicMeasure {
        let atoms = self.atoms.iter().map(|(m, x)| (m * c, x.clone())).collect();
        AtomicMeasure {
            atoms: merge(atoms),
            signed: self.signed || c.is_negative(),
        }
    }
}

/// A moment vector `s ∈ ℝᵐ`; also stands for the Riesz functional `L_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    values: Vec<Scalar>,
}

impl MomentSequence {
    pub fn new(system: &FunctionSystem, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != system.size() {
            return Err(Error::InvalidInput(format!(
                "sequence has length {}, system has {}",
                values.len(),
                system.size()
            )));
        }
        Ok(MomentSequence { values })
    }

    pub fn from_values(values: Vec<Scalar>) -> Self {
        MomentSequence { values }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `L_s(p) = ⟨coeff(p), s⟩`.
    pub fn riesz(&self, coeffs: &[Scalar]) -> Scalar {
        dot(coeffs, &self.values)
    }

    pub fn add(&self, other: &MomentSequence) -> MomentSequence {
        MomentSequence {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &MomentSequence) -> MomentSequence {
        MomentSequence {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(|x| x.to_string()).collect()
    }
}

/// `S_{k,A}(C, X) = Σ c_i s_A(x_i)`.
pub fn moments(a: &FunctionSystem, mu: &AtomicMeasure) -> Result<MomentSequence> {
    let mut s = vec![Scalar::zero(); a.size()];
    for (c, x) in mu.atoms() {
        for (si, v) in s.iter_mut().zip(a.moment_curve(x)?) {
            if !v.is_zero() {
                *si += &(c * &v);
            }
        }
    }
    Ok(MomentSequence { values: s })
}

/// Matrix whose columns are `s_A(x)` for the given points.
pub fn evaluation_matrix(a: &FunctionSystem, points: &[Point]) -> Result<Matrix> {
    let cols = points
        .iter()
        .map(|x| a.moment_curve(x))
        .collect::<Result<Vec<_>>>()?;
    if cols.is_empty() {
        return Ok(Matrix::zeros(a.size(), 0));
    }
    Ok(Matrix::from_columns(&cols))
}

/// The total derivative `DS_{k,A}(C, X)`.
///
/// Affine systems give the columns `s_A(x_i), c_i ∂_1 s_A(x_i), …, c_i ∂_n s_A(x_i)`
/// per atom. Projective systems give `c_i ∂_j s_A(x_i)` for the `n + 1`
/// homogeneous coordinates; by Euler's identity these span `s_A(x_i)`.
pub fn jacobian(a: &FunctionSystem, mu: &AtomicMeasure) -> Result<Matrix> {
    if !a.is_differentiable() {
        return Err(Error::NotDifferentiable);
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for (c, x) in mu.atoms() {
        let d = a.partials(x)?;
        if a.chart() == Chart::Affine {
            cols.push(a.moment_curve(x)?);
        }
        for j in 0..d.cols() {
            cols.push(d.column(j).iter().map(|v| c * v).collect());
        }
    }
    if cols.is_empty() {
        return Ok(Matrix::zeros(a.size(), 0));
    }
    Ok(Matrix::from_columns(&cols))
}

pub fn jacobian_rank(a: &FunctionSystem, mu: &AtomicMeasure) -> Result<usize> {
    Ok(jacobian(a, mu)?.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regularity {
    Regular,
    Singular,
}

/// Regular iff the Jacobian has full rank `m`.
pub fn classify(a: &FunctionSystem, mu: &AtomicMeasure) -> Result<Regularity> {
    let j = jacobian(a, mu)?;
    if j.cols() >= a.size() && modular::rank_mod_p(&j) == Some(a.size()) {
        return Ok(Regularity::Regular);
    }
    Ok(if j.rank() == a.size() {
        Regularity::Regular
    } else {
        Regularity::Singular
    })
}

/// Result of [`estimate_na`].
#[derive(Clone, Debug)]
pub struct NaEstimate {
    /// Smallest `k` at which a sampled Jacobian reached rank `m`.
    pub k: usize,
    /// Unit-mass measure whose Jacobian has rank `m`; it proves `N_A ≤ k`.
    pub witness: AtomicMeasure,
    /// Failed samples below `k`.
    pub failed_trials: usize,
}

pub const SAMPLE_BOUND: i64 = 50;

fn trial_rng(seed: u64, k: usize, trial: usize) -> ChaCha8Rng {
    let mix = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((k as u64) << 32) ^ trial as u64;
    ChaCha8Rng::seed_from_u64(mix)
}

/// `k` distinct points with integer coordinates in `[-B, B]`.
pub fn sample_points<R: Rng>(a: &FunctionSystem, k: usize, rng: &mut R) -> Result<Vec<Point>> {
    let mut pts: Vec<Point> = Vec::with_capacity(k);
    let mut attempts = 0;
    while pts.len() < k {
        attempts += 1;
        if attempts > 100 * (k + 10) {
            return Err(Error::InvalidInput(
                "could not sample enough distinct points".into(),
            ));
        }
        let coords: Vec<Scalar> = (0..a.coords_len())
            .map(|_| Scalar::from_int(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
            .collect();
        let Ok(x) = Point::new(a.chart(), coords) else {
            continue;
        };
        if a.check_point(&x).is_err() || pts.contains(&x) {
            continue;
        }
        pts.push(x);
    }
    Ok(pts)
}

fn full_rank(j: &Matrix, m: usize) -> bool {
    if j.cols() < m {
        return false;
    }
    modular::rank_mod_p(j) == Some(m) || j.rank() == m
}

/// Randomized search for `N_A`: the smallest `k` for which some sampled
/// `(𝟙, X)` gives a Jacobian of rank `m`.
///
/// The witness proves `N_A ≤ k`. Below `k`, all `max_trials` samples failed,
/// which is evidence but not proof that `N_A > k − 1`. The search starts at
/// `⌈m / (n + 1)⌉`, below which the Jacobian has fewer than `m` columns.
pub fn estimate_na(a: &FunctionSystem, seed: u64, max_trials: usize) -> Result<NaEstimate> {
    if !a.is_differentiable() {
        return Err(Error::NotDifferentiable);
    }
    let m = a.size();
    let per_atom = a.n() + 1;
    let start = m.div_ceil(per_atom).max(1);
    let mut failed = 0;
    for k in start..=m {
        for trial in 0..max_trials.max(1) {
            let mut rng = trial_rng(seed, k, trial);
            let pts = sample_points(a, k, &mut rng)?;
            let mu = AtomicMeasure::unit(&pts);
            if full_rank(&jacobian(a, &mu)?, m) {
                return Ok(NaEstimate {
                    k,
                    witness: mu,
                    failed_trials: failed,
                });
            }
            failed += 1;
        }
    }
    Err(Error::InvalidInput(
        "no sampled Jacobian reached full rank".into(),
    ))
}

/// Closed form for `N_{A_{n,d}}` (and `N_{B_{n,d}}`), including the five exceptional cases.
pub fn na_formula(n: u64, d: u64) -> u64 {
    match (n, d) {
        (_, 2) => n + 1,
        (4, 3) => 8,
        (2, 4) => 6,
        (3, 4) => 10,
        (4, 4) => 15,
        _ => binomial(n + d, n).div_ceil(n + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dirac_and_sum() {
        let a = FunctionSystem::affine(1, 2).unwrap();
        let mu = AtomicMeasure::unit(&[Point::affine_i64(&[0]), Point::affine_i64(&[-2])]);
        assert_eq!(moments(&a, &mu).unwrap().to_strings(), ["2", "-2", "4"]);
    }

    #[test]
    fn merges_duplicate_atoms() {
        let x = Point::affine_i64(&[1]);
        let mu = AtomicMeasure::new(vec![(Scalar::one(), x.clone()), (Scalar::one(), x)]).unwrap();
        assert_eq!(mu.len(), 1);
        assert_eq!(mu.masses(), [Scalar::from_int(2)]);
        assert!(AtomicMeasure::new(vec![(Scalar::zero(), Point::affine_i64(&[0]))]).is_err());
    }

    #[test]
    fn one_atom_jacobian() {
        let a = FunctionSystem::affine(1, 1).unwrap();
        let c = Scalar::ratio(3, 2);
        let mu = AtomicMeasure::new(vec![(c.clone(), Point::affine_i64(&[5]))]).unwrap();
        let j = jacobian(&a, &mu).unwrap();
        assert_eq!(
            j,
            Matrix::from_rows(vec![
                vec![Scalar::one(), Scalar::zero()],
                vec![Scalar::from_int(5), c]
            ])
        );
    }

    #[test]
    fn formula_values() {
        assert_eq!(na_formula(2, 3), 4);
        assert_eq!(na_formula(4, 3), 8);
        assert_eq!(na_formula(5, 2), 6);
        assert_eq!(na_formula(1, 3), 2);
    }

    #[test]
    fn small_estimates() {
        assert_eq!(
            estimate_na(&FunctionSystem::affine(1, 3).unwrap(), 1, 25)
                .unwrap()
                .k,
            2
        );
        assert_eq!(
            estimate_na(&FunctionSystem::affine(2, 2).unwrap(), 1, 25)
                .unwrap()
                .k,
            3
        );
    }
}
