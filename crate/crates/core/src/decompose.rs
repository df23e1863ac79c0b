//! Richter reduction, signed decompositions, cone membership and minimal atom counts.

use serde::{Deserialize, Serialize};

use crate::basis::{Chart, FunctionSystem, Point};
use crate::error::{Error, Result};
use crate::exactla::{
    dot, independent_columns, independent_rows, kernel, lp_solve, solve, LpProblem, Matrix, Scalar,
    Sense, VarBound,
};
use crate::momentmap::{evaluation_matrix, moments, AtomicMeasure, MomentSequence};

/// How the ground set sits in the space the cone lives on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// The cone is generated by the finite set itself.
    #[default]
    Discrete,
    /// The points sit in an open ambient set (ℝⁿ or ℙⁿ) on which the relevant
    /// functions are nonnegative, so a zero of such a function is a critical
    /// point. Used by [`crate::facial::v_set`] and [`crate::facial::core_variety`].
    Open,
}

/// A finite, duplicate-free set of points in one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    points: Vec<Point>,
    ambient: Ambient,
}

impl GroundSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidInput("empty ground set".into()));
        };
        let chart = first.chart();
        let dim = first.coords().len();
        let mut out: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if p.chart() != chart || p.coords().len() != dim {
                return Err(Error::ChartMismatch(
                    "ground set mixes charts or dimensions".into(),
                ));
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(GroundSet {
            points: out,
            ambient: Ambient::Discrete,
        })
    }

    pub fn with_ambient(mut self, ambient: Ambient) -> Self {
        self.ambient = ambient;
        self
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn chart(&self) -> Chart {
        self.points[0].chart()
    }

    pub fn index_of(&self, x: &Point) -> Option<usize> {
        self.points.iter().position(|p| p == x)
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.index_of(x).is_some()
    }

    /// The sub-ground-set at the given indices, keeping the ambient flag.
    pub fn subset(&self, idx: &[usize]) -> GroundSet {
        GroundSet {
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            ambient: self.ambient,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NonMember,
}

/// Answer of [`membership`] with its certificate.
#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub verdict: Verdict,
    /// Representing measure on the ground set, for members.
    pub measure: Option<AtomicMeasure>,
    /// Coefficients of `p ∈ lin A` with `p ≥ 0` on the ground set and `L_s(p) < 0`, for non-members.
    pub separator: Option<Vec<Scalar>>,
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    /// Exact re-check of the certificate.
    pub fn verify(
        &self,
        a: &FunctionSystem,
        x: &GroundSet,
        s: &[Scalar],
    ) -> std::result::Result<(), String> {
        match self.verdict {
            Verdict::Member => {
                let mu = self.measure.as_ref().ok_or("missing measure")?;
                if mu
                    .atoms()
                    .iter()
                    .any(|(c, p)| !c.is_positive() || !x.contains(p))
                {
                    return Err(
                        "measure has a nonpositive mass or an atom off the ground set".into(),
                    );
                }
                let got = moments(a, mu).map_err(|e| e.to_string())?;
                if got.values() != s {
                    return Err("measure does not reproduce the sequence".into());
                }
                Ok(())
            }
            Verdict::NonMember => {
                let p = self.separator.as_ref().ok_or("missing separator")?;
                for y in x.points() {
                    let v = a.evaluate(p, y).map_err(|e| e.to_string())?;
                    if v.is_negative() {
                        return Err(format!("separator is negative at {y:?}"));
                    }
                }
                if !dot(p, s).is_negative() {
                    return Err("separator does not separate".into());
                }
                Ok(())
            }
        }
    }
}

pub(crate) enum ConeAnswer {
    /// Nonnegative weights on the generator columns.
    Inside(Vec<Scalar>),
    /// `y` with `yᵀ g ≥ 0` for every generator `g` and `yᵀ s < 0`.
    Outside(Vec<Scalar>),
}

/// Decides whether `s` lies in the cone spanned by the columns of `gens`.
pub(crate) fn cone_feasibility(gens: &Matrix, s: &[Scalar]) -> ConeAnswer {
    let m = gens.rows();
    if gens.cols() == 0 {
        return match s.iter().position(|v| !v.is_zero()) {
            None => ConeAnswer::Inside(Vec::new()),
            Some(i) => {
                let mut y = vec![Scalar::zero(); m];
                y[i] = if s[i].is_positive() {
                    Scalar::from_int(-1)
                } else {
                    Scalar::one()
                };
                ConeAnswer::Outside(y)
            }
        };
    }
    // Keep an independent set of rows of [gens | s]; the others follow from them.
    let mut rows = gens.row_vectors();
    for (r, v) in rows.iter_mut().zip(s) {
        r.push(v.clone());
    }
    let aug = Matrix::from_rows(rows);
    let keep = independent_rows(&aug);
    let sub = gens.select_rows(&keep);
    let rhs: Vec<Scalar> = keep.iter().map(|&i| s[i].clone()).collect();
    let p = LpProblem::feasibility(
        sub,
        rhs,
        vec![Sense::Eq; keep.len()],
        vec![VarBound::NonNegative; gens.cols()],
    );
    let r = lp_solve(&p);
    if r.is_optimal() {
        ConeAnswer::Inside(r.primal.expect("optimal has primal"))
    } else {
        let f = r.farkas.expect("infeasible has Farkas vector");
        let mut y = vec![Scalar::zero(); m];
        for (k, &i) in keep.iter().enumerate() {
            y[i] = f[k].clone();
        }
        ConeAnswer::Outside(y)
    }
}

/// Constructive Richter reduction: returns a measure with the same moments,
/// support inside the original support, strictly positive masses and at most
/// `rank{s_A(x_i)}` atoms.
pub fn reduce(a: &FunctionSystem, mu: &AtomicMeasure) -> Result<AtomicMeasure> {
    if mu.is_signed() && mu.atoms().iter().any(|(c, _)| !c.is_positive()) {
        return Err(Error::InvalidInput(
            "reduction needs a positive measure".into(),
        ));
    }
    let mut masses = mu.masses();
    let mut points = mu.points();
    loop {
        let e = evaluation_matrix(a, &points)?;
        let ker = kernel(&e);
        let Some(w) = ker.first() else {
            break;
        };
        // Largest t with c - t·w ≥ 0, for w and for -w.
        let step = |sign: i32| -> Option<Scalar> {
            masses
                .iter()
                .zip(w)
                .filter(|(_, wi)| wi.signum() == sign)
                .map(|(c, wi)| (c / wi).abs())
                .min()
        };
        let (t, dir) = match (step(1), step(-1)) {
            (Some(tp), Some(tn)) => {
                if tp <= tn {
                    (tp, Scalar::one())
                } else {
                    (tn, Scalar::from_int(-1))
                }
            }
            (Some(tp), None) => (tp, Scalar::one()),
            (None, Some(tn)) => (tn, Scalar::from_int(-1)),
            (None, None) => unreachable!("kernel vector is nonzero"),
        };
        let td = &t * &dir;
        let mut next_m = Vec::with_capacity(masses.len());
        let mut next_p = Vec::with_capacity(points.len());
        for ((c, wi), x) in masses.iter().zip(w).zip(&points) {
            let v = c - &(&td * wi);
            debug_assert!(!v.is_negative());
            if v.is_positive() {
                next_m.push(v);
                next_p.push(x.clone());
            }
        }
        debug_assert!(next_m.len() < masses.len());
        masses = next_m;
        points = next_p;
    }
    AtomicMeasure::new(masses.into_iter().zip(points).collect())
}

/// A signed measure with at most `m` atoms on the ground set representing `s`.
pub fn signed_decompose(
    a: &FunctionSystem,
    s: &MomentSequence,
    x: &GroundSet,
) -> Result<AtomicMeasure> {
    let m = a.size();
    let e = evaluation_matrix(a, x.points())?;
    let cols = independent_columns(&e);
    if cols.len() < m {
        return Err(Error::InsufficientSpan {
            rank: cols.len(),
            needed: m,
        });
    }
    let sub = e.select_columns(&cols);
    let c = solve(&sub, s.values()).expect("square invertible system");
    let atoms = c
        .into_iter()
        .zip(&cols)
        .map(|(ci, &j)| (ci, x.points()[j].clone()))
        .collect();
    Ok(AtomicMeasure::signed(atoms))
}

/// Exact membership of `s` in `cone{s_A(x) : x ∈ X}`, with a certificate either way.
pub fn membership(
    a: &FunctionSystem,
    x: &GroundSet,
    s: &MomentSequence,
) -> Result<MembershipCertificate> {
    if s.len() != a.size() {
        return Err(Error::InvalidInput(
            "sequence length does not match the system".into(),
        ));
    }
    let e = evaluation_matrix(a, x.points())?;
    let cert = match cone_feasibility(&e, s.values()) {
        ConeAnswer::Inside(lambda) => {
            let atoms: Vec<(Scalar, Point)> = lambda
                .into_iter()
                .zip(x.points())
                .filter(|(c, _)| c.is_positive())
                .map(|(c, p)| (c, p.clone()))
                .collect();
            let mu = reduce(a, &AtomicMeasure::new(atoms)?)?;
            MembershipCertificate {
                verdict: Verdict::Member,
                measure: Some(mu),
                separator: None,
            }
        }
        ConeAnswer::Outside(y) => MembershipCertificate {
            verdict: Verdict::NonMember,
            measure: None,
            separator: Some(y),
        },
    };
    if let Err(e) = cert.verify(a, x, s.values()) {
        panic!("membership certificate failed verification: {e}");
    }
    Ok(cert)
}

/// Largest ground set [`min_atoms`] accepts.
pub const MIN_ATOMS_LIMIT: usize = 25;

/// Next `k`-subset of `0..n` in colex order.
fn next_colex(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { n };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, v) in c.iter_mut().enumerate().take(i) {
                *v = j;
            }
            return true;
        }
    }
    false
}

/// Smallest number of ground-set atoms representing `s`, with one such measure.
pub fn min_atoms_with_witness(
    a: &FunctionSystem,
    x: &GroundSet,
    s: &MomentSequence,
) -> Result<(usize, AtomicMeasure)> {
    if x.len() > MIN_ATOMS_LIMIT {
        return Err(Error::GroundSetTooLarge {
            size: x.len(),
            limit: MIN_ATOMS_LIMIT,
        });
    }
    let cert = membership(a, x, s)?;
    if !cert.is_member() {
        return Err(Error::NonMember);
    }
    if s.values().iter().all(Scalar::is_zero) {
        return Ok((0, AtomicMeasure::empty()));
    }
    let e = evaluation_matrix(a, x.points())?;
    let n = x.len();
    for k in 1..=n {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            let sub = e.select_columns(&c);
            if let ConeAnswer::Inside(lambda) = cone_feasibility(&sub, s.values()) {
                let atoms = lambda
                    .into_iter()
                    .zip(&c)
                    .filter(|(l, _)| l.is_positive())
                    .map(|(l, &i)| (l, x.points()[i].clone()))
                    .collect();
                return Ok((k, AtomicMeasure::new(atoms)?));
            }
            if !next_colex(&mut c, n) {
                break;
            }
        }
    }
    unreachable!("membership guarantees a representing subset")
}

/// Carathéodory number of `s` relative to the ground set.
pub fn min_atoms(a: &FunctionSystem, x: &GroundSet, s: &MomentSequence) -> Result<usize> {
    min_atoms_with_witness(a, x, s).map(|(k, _)| k)
}

/// Rank of `{s_A(x) : x ∈ X}`.
pub fn cara_countable(a: &FunctionSystem, x: &GroundSet) -> Result<usize> {
    Ok(evaluation_matrix(a, x.points())?.rank())
}
