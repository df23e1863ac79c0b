//! Facial invariants of the moment cone relative to a finite ground set.
//!
//! Subsets of the ground set are reported as sorted index lists into
//! [`GroundSet::points`].

use serde::Serialize;

use crate::basis::{FunctionSystem, Point};
use crate::decompose::{membership, Ambient, GroundSet};
use crate::error::{Error, Result};
use crate::exactla::{
    dot, independent_columns, independent_rows, kernel, lp_solve, modular, Direction, LpProblem,
    LpStatus, Matrix, Scalar, Sense, VarBound,
};
use crate::momentmap::{evaluation_matrix, MomentSequence};

/// `W(s)`, `V(s)` and the face dimension of `s` on a ground set.
#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    pub w: Vec<usize>,
    pub v: Vec<usize>,
    pub face_dimension: usize,
    pub gamma: usize,
    /// Coefficients of `p ≥ 0` on the ground set with `L_s(p) = 0` and `Z(p) ∩ X = V`.
    pub p: Vec<Scalar>,
}

/// Maximal mass of `s` at a point and its dual value.
#[derive(Clone, Debug, Serialize)]
pub struct MaxMassReport {
    pub rho: Scalar,
    pub kappa: Scalar,
    /// Minimizer of `L_s(p)` over `p ≥ 0` on the ground set with `p(x) = 1`.
    pub p_star: Option<Vec<Scalar>>,
    /// `s - ρ s_A(x)`.
    pub residual: Vec<Scalar>,
    pub attained: bool,
    pub x_in_w_residual: bool,
    pub x_in_v_residual: bool,
}

/// `V(s)` with a functional realizing it.
#[derive(Clone, Debug, Serialize)]
pub struct VSet {
    pub v: Vec<usize>,
    pub p: Vec<Scalar>,
}

/// Result of [`core_variety`]. `trace[k]` is `V_k`, starting with `V_0 = X`.
#[derive(Clone, Debug, Serialize)]
pub struct CoreVariety {
    pub set: Vec<usize>,
    pub iterations: usize,
    pub trace: Vec<Vec<usize>>,
}

/// Result of [`psp_check`].
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PspOutcome {
    /// `p_i` with `p_i ≥ 0` on the ground set and `p_i(x_j) = δ_ij`.
    Feasible { functionals: Vec<Vec<Scalar>> },
    /// The first index with no such `p_i`, with the Farkas vector over the ground set rows.
    Infeasible { index: usize, farkas: Vec<Scalar> },
}

fn curve_rows(a: &FunctionSystem, points: &[Point]) -> Result<Vec<Vec<Scalar>>> {
    points.iter().map(|x| a.moment_curve(x)).collect()
}

fn require_member(a: &FunctionSystem, x: &GroundSet, s: &MomentSequence) -> Result<()> {
    if membership(a, x, s)?.is_member() {
        Ok(())
    } else {
        Err(Error::NonMember)
    }
}

/// `max c` subject to `c s_A(x_target) + Σ λ_y s_A(y) = s`, `c, λ ≥ 0`.
/// Returns the status and, when optimal, `c` and `λ`.
struct MassLp {
    gens: Matrix,
    rhs: Vec<Scalar>,
}

impl MassLp {
    fn new(e: &Matrix, s: &[Scalar]) -> Self {
        let mut rows = e.row_vectors();
        for (r, v) in rows.iter_mut().zip(s) {
            r.push(v.clone());
        }
        let keep = independent_rows(&Matrix::from_rows(rows));
        MassLp {
            gens: e.select_rows(&keep),
            rhs: keep.iter().map(|&i| s[i].clone()).collect(),
        }
    }

    fn solve(&self, target: usize) -> (LpStatus, Option<(Scalar, Vec<Scalar>)>) {
        let k = self.gens.cols();
        let mut rows = self.gens.row_vectors();
        for r in rows.iter_mut() {
            r.insert(0, r[target].clone());
        }
        let cols = k + 1;
        let mut obj = vec![Scalar::zero(); cols];
        obj[0] = Scalar::one();
        let n = self.rhs.len();
        let constraints = if n == 0 {
            Matrix::zeros(0, cols)
        } else {
            Matrix::from_rows(rows)
        };
        let p = LpProblem::new(
            Direction::Maximize,
            obj,
            constraints,
            self.rhs.clone(),
            vec![Sense::Eq; n],
            vec![VarBound::NonNegative; cols],
        );
        let r = lp_solve(&p);
        match r.status {
            LpStatus::Optimal => {
                let mut x = r.primal.expect("optimal has primal");
                let c = x.remove(0);
                (LpStatus::Optimal, Some((c, x)))
            }
            LpStatus::Unbounded => {
                let x = r.primal.expect("unbounded has a feasible point");
                (LpStatus::Unbounded, Some((Scalar::zero(), x[1..].to_vec())))
            }
            LpStatus::Infeasible => (LpStatus::Infeasible, None),
        }
    }
}

/// `W(s)` on `X`: the points carrying positive mass in some representing measure.
pub fn atom_set(a: &FunctionSystem, x: &GroundSet, s: &MomentSequence) -> Result<Vec<usize>> {
    require_member(a, x, s)?;
    let e = evaluation_matrix(a, x.points())?;
    let lp = MassLp::new(&e, s.values());
    let k = x.len();
    let mut atom = vec![false; k];
    let mut decided = vec![false; k];
    for t in 0..k {
        if decided[t] {
            continue;
        }
        let (status, sol) = lp.solve(t);
        let (c, lambda) = sol.expect("member sequence has a feasible measure");
        for (y, l) in lambda.iter().enumerate() {
            if l.is_positive() {
                atom[y] = true;
                decided[y] = true;
            }
        }
        atom[t] = atom[t] || status == LpStatus::Unbounded || c.is_positive();
        decided[t] = true;
    }
    Ok((0..k).filter(|&i| atom[i]).collect())
}

/// Common zeros within `ground` of all `p` with `p ≥ 0` on `ground` and `ℓ(p) = 0`,
/// plus a functional attaining them. With `open`, `p` must also have a critical
/// point at each of its zeros, iterated to a fixpoint.
fn common_zeros(
    a: &FunctionSystem,
    ground: &[Point],
    ell: &[Scalar],
    open: bool,
) -> Result<(Vec<usize>, Vec<Scalar>)> {
    let e = curve_rows(a, ground)?;
    let mut eq_rows = vec![ell.to_vec()];
    let mut with_gradient = vec![false; ground.len()];
    loop {
        let (zeros, p) = zeros_once(&e, &eq_rows, a.size());
        if !open {
            return Ok((zeros, p));
        }
        let fresh: Vec<usize> = zeros
            .iter()
            .copied()
            .filter(|&i| !with_gradient[i])
            .collect();
        if fresh.is_empty() {
            return Ok((zeros, p));
        }
        for i in fresh {
            with_gradient[i] = true;
            let d = a.partials(&ground[i])?;
            eq_rows.extend((0..d.cols()).map(|j| d.column(j)));
        }
    }
}

fn zeros_once(e: &[Vec<Scalar>], eq_rows: &[Vec<Scalar>], m: usize) -> (Vec<usize>, Vec<Scalar>) {
    let k = e.len();
    let all: Vec<usize> = (0..k).collect();
    let basis = kernel(&Matrix::from_rows(eq_rows.to_vec()));
    if basis.is_empty() {
        return (all, vec![Scalar::zero(); m]);
    }
    // Values of the basis functionals on the ground set.
    let values = Matrix::from_rows(
        e.iter()
            .map(|row| basis.iter().map(|b| dot(row, b)).collect())
            .collect(),
    );
    let cols = independent_columns(&values);
    if cols.is_empty() {
        return (all, vec![Scalar::zero(); m]);
    }
    let c = values.select_columns(&cols);
    let r = cols.len();
    let mut rows = c.row_vectors();
    let total: Vec<Scalar> = (0..r)
        .map(|j| (0..k).map(|i| c.get(i, j).clone()).sum())
        .collect();
    rows.push(total);
    let mut senses = vec![Sense::Ge; k];
    senses.push(Sense::Eq);
    let mut rhs = vec![Scalar::zero(); k];
    rhs.push(Scalar::one());
    let constraints = Matrix::from_rows(rows);

    let mut positive = vec![false; k];
    let mut optimizers: Vec<Vec<Scalar>> = Vec::new();
    for t in 0..k {
        if positive[t] {
            continue;
        }
        let p = LpProblem::new(
            Direction::Maximize,
            c.row(t).to_vec(),
            constraints.clone(),
            rhs.clone(),
            senses.clone(),
            vec![VarBound::Free; r],
        );
        let res = lp_solve(&p);
        if res.is_infeasible() {
            // No nonzero p ≥ 0 on the ground set, so every admissible p vanishes there.
            return (all, vec![Scalar::zero(); m]);
        }
        let u = res.primal.expect("bounded by the normalization");
        if res.value.as_ref().is_some_and(Scalar::is_positive) {
            let vals = c.mul_vec(&u);
            for (i, v) in vals.iter().enumerate() {
                if v.is_positive() {
                    positive[i] = true;
                }
            }
            optimizers.push(u);
        }
    }
    let count = Scalar::from_int(optimizers.len() as i64);
    let mut u = vec![Scalar::zero(); r];
    for opt in &optimizers {
        for (ui, oi) in u.iter_mut().zip(opt) {
            *ui += oi;
        }
    }
    let mut p = vec![Scalar::zero(); m];
    if !optimizers.is_empty() {
        for (j, &col) in cols.iter().enumerate() {
            let w = &u[j] / &count;
            if w.is_zero() {
                continue;
            }
            for (pi, bi) in p.iter_mut().zip(&basis[col]) {
                *pi += &(&w * bi);
            }
        }
    }
    ((0..k).filter(|&i| !positive[i]).collect(), p)
}

/// `V(s)` on `X` with a representative `p ∈ N(s)` such that `Z(p) ∩ X = V(s)`.
///
/// With [`Ambient::Open`] the admissible `p` also vanish to second order at
/// their zeros, which is necessary for nonnegativity on the whole space.
pub fn v_set(a: &FunctionSystem, x: &GroundSet, s: &MomentSequence) -> Result<VSet> {
    require_member(a, x, s)?;
    let (v, p) = common_zeros(a, x.points(), s.values(), x.ambient() == Ambient::Open)?;
    Ok(VSet { v, p })
}

/// The core variety of a functional given by its values `L(a_i)`.
///
/// Each step keeps the common zeros of the `p` with `L(p) = 0` that are
/// nonnegative on the previous set. The first step respects the ground set's
/// ambient flag; later steps are relative to the finite previous set.
pub fn core_variety(a: &FunctionSystem, x: &GroundSet, ell: &[Scalar]) -> Result<CoreVariety> {
    if ell.len() != a.size() {
        return Err(Error::InvalidInput(
            "functional length does not match the system".into(),
        ));
    }
    let mut current: Vec<usize> = (0..x.len()).collect();
    let mut trace = vec![current.clone()];
    let mut step = 0;
    loop {
        step += 1;
        let pts: Vec<Point> = current.iter().map(|&i| x.points()[i].clone()).collect();
        let open = step == 1 && x.ambient() == Ambient::Open;
        let (zeros, _) = common_zeros(a, &pts, ell, open)?;
        let next: Vec<usize> = zeros.into_iter().map(|j| current[j]).collect();
        let stable = next == current && (step > 1 || !open);
        if stable {
            return Ok(CoreVariety {
                set: next,
                iterations: step - 1,
                trace,
            });
        }
        trace.push(next.clone());
        if next.is_empty() {
            return Ok(CoreVariety {
                set: next,
                iterations: step,
                trace,
            });
        }
        current = next;
    }
}

/// `D_s`: rank of the curve points of the support.
pub fn face_dimension(a: &FunctionSystem, support: &[Point]) -> Result<usize> {
    if support.is_empty() {
        return Err(Error::InvalidInput("empty support".into()));
    }
    let e = evaluation_matrix(a, support)?;
    if modular::rank_mod_p(&e) == Some(e.rows().min(e.cols())) {
        return Ok(e.rows().min(e.cols()));
    }
    Ok(e.rank())
}

/// Basis of `Γ = {f ∈ lin A : f = 0 on the support}` and its dimension `γ`.
pub fn gamma_space(a: &FunctionSystem, support: &[Point]) -> Result<(Vec<Vec<Scalar>>, usize)> {
    if support.is_empty() {
        return Err(Error::InvalidInput("empty support".into()));
    }
    let e = Matrix::from_rows(curve_rows(a, support)?);
    let basis = kernel(&e);
    let gamma = basis.len();
    assert_eq!(gamma + e.rank(), a.size(), "rank-nullity");
    Ok((basis, gamma))
}

/// `W(s)`, `V(s)`, `D_s`, `γ_s` and a representative of `N(s)`, with all invariants checked.
pub fn face(a: &FunctionSystem, x: &GroundSet, s: &MomentSequence) -> Result<FaceReport> {
    let w = atom_set(a, x, s)?;
    let VSet { v, p } = v_set(a, x, s)?;
    let m = a.size();
    let face_dimension = if w.is_empty() {
        0
    } else {
        face_dimension(a, x.subset(&w).points())?
    };
    let gamma = m - face_dimension;
    assert!(w.iter().all(|i| v.contains(i)), "W(s) must lie in V(s)");
    for (i, y) in x.points().iter().enumerate() {
        let val = a.evaluate(&p, y)?;
        assert!(
            !val.is_negative(),
            "representative is negative on the ground set"
        );
        assert_eq!(val.is_zero(), v.contains(&i), "Z(p) must cut out V(s)");
    }
    assert!(
        dot(&p, s.values()).is_zero(),
        "representative must annihilate s"
    );
    Ok(FaceReport {
        w,
        v,
        face_dimension,
        gamma,
        p,
    })
}

/// Checks that some `e ∈ lin A` satisfies `e ≥ 1` on the ground set.
pub fn is_pointed(a: &FunctionSystem, x: &GroundSet) -> Result<bool> {
    let values = Matrix::from_rows(curve_rows(a, x.points())?);
    let cols = independent_columns(&values);
    if cols.is_empty() {
        return Ok(false);
    }
    let c = values.select_columns(&cols);
    let p = LpProblem::feasibility(
        c,
        vec![Scalar::one(); x.len()],
        vec![Sense::Ge; x.len()],
        vec![VarBound::Free; cols.len()],
    );
    Ok(lp_solve(&p).is_optimal())
}

/// `max p(x)` over `p ≥ 0` on the ground set with `L(p) = 0` and `Σ p(y) = 1`,
/// positive exactly when `x ∉ V`.
fn separated_from_v(
    a: &FunctionSystem,
    x: &GroundSet,
    ell: &[Scalar],
    target: usize,
) -> Result<bool> {
    let e = curve_rows(a, x.points())?;
    let (zeros, _) = zeros_once(&e, &[ell.to_vec()], a.size());
    Ok(!zeros.contains(&target))
}

/// `ρ_s(x)` by the primal LP and `κ_s(x)` by the dual LP, on a finite ground set.
pub fn max_mass(
    a: &FunctionSystem,
    x: &GroundSet,
    s: &MomentSequence,
    point: &Point,
) -> Result<MaxMassReport> {
    let target = x
        .index_of(point)
        .ok_or_else(|| Error::InvalidInput("point is not in the ground set".into()))?;
    require_member(a, x, s)?;
    if !is_pointed(a, x)? {
        return Err(Error::UnpointedCone);
    }
    let e = evaluation_matrix(a, x.points())?;
    let (status, sol) = MassLp::new(&e, s.values()).solve(target);
    assert_eq!(status, LpStatus::Optimal, "a pointed cone bounds the mass");
    let rho = sol.expect("optimal").0;

    // κ: min L_s(p) over p ≥ 0 on X, p(x) = 1, with p restricted to independent columns.
    let values = Matrix::from_rows(curve_rows(a, x.points())?);
    let mut stacked = values.clone();
    stacked.push_row(s.values().to_vec());
    let cols = independent_columns(&stacked);
    let c = values.select_columns(&cols);
    let mut rows = c.row_vectors();
    rows.push(c.row(target).to_vec());
    let k = x.len();
    let mut senses = vec![Sense::Ge; k];
    senses.push(Sense::Eq);
    let mut rhs = vec![Scalar::zero(); k];
    rhs.push(Scalar::one());
    let obj: Vec<Scalar> = cols.iter().map(|&j| s.values()[j].clone()).collect();
    let lp = LpProblem::new(
        Direction::Minimize,
        obj,
        Matrix::from_rows(rows),
        rhs,
        senses,
        vec![VarBound::Free; cols.len()],
    );
    let res = lp_solve(&lp);
    assert!(res.is_optimal(), "dual LP is feasible and bounded below");
    let kappa = res.value.clone().expect("optimal value");
    let mut p_star = vec![Scalar::zero(); a.size()];
    for (&j, v) in cols.iter().zip(res.primal.expect("optimal primal")) {
        p_star[j] = v;
    }

    let curve = a.moment_curve(point)?;
    let residual: Vec<Scalar> = s
        .values()
        .iter()
        .zip(&curve)
        .map(|(si, ci)| si - &(&rho * ci))
        .collect();
    let residual_seq = MomentSequence::from_values(residual.clone());
    let w_res = atom_set(a, x, &residual_seq)?;
    let x_in_w_residual = w_res.contains(&target);
    let x_in_v_residual = !separated_from_v(a, x, &residual, target)?;
    Ok(MaxMassReport {
        rho,
        kappa,
        p_star: Some(p_star),
        residual,
        attained: true,
        x_in_w_residual,
        x_in_v_residual,
    })
}

/// Positive separation: for each listed point, a `p ≥ 0` on the ground set that is 1 there and 0 at the others.
pub fn psp_check(a: &FunctionSystem, x: &GroundSet, points: &[Point]) -> Result<PspOutcome> {
    let idx: Vec<usize> = points
        .iter()
        .map(|p| {
            x.index_of(p)
                .ok_or_else(|| Error::InvalidInput("point is not in the ground set".into()))
        })
        .collect::<Result<_>>()?;
    let values = Matrix::from_rows(curve_rows(a, x.points())?);
    let cols = independent_columns(&values);
    let c = values.select_columns(&cols);
    let k = x.len();
    let mut functionals = Vec::with_capacity(idx.len());
    for (i, &xi) in idx.iter().enumerate() {
        let mut senses = vec![Sense::Ge; k];
        let mut rhs = vec![Scalar::zero(); k];
        for &xj in &idx {
            senses[xj] = Sense::Eq;
        }
        rhs[xi] = Scalar::one();
        let lp = LpProblem::feasibility(c.clone(), rhs, senses, vec![VarBound::Free; cols.len()]);
        let res = lp_solve(&lp);
        if !res.is_optimal() {
            return Ok(PspOutcome::Infeasible {
                index: i,
                farkas: res.farkas.expect("Farkas vector"),
            });
        }
        let mut p = vec![Scalar::zero(); a.size()];
        for (&j, v) in cols.iter().zip(res.primal.expect("primal")) {
            p[j] = v;
        }
        functionals.push(p);
    }
    Ok(PspOutcome::Feasible { functionals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentmap::{moments, AtomicMeasure};

    fn line(xs: &[i64]) -> GroundSet {
        GroundSet::new(xs.iter().map(|&v| Point::affine_i64(&[v])).collect()).unwrap()
    }

    fn seq(a: &FunctionSystem, pts: &[Point]) -> MomentSequence {
        moments(a, &AtomicMeasure::unit(pts)).unwrap()
    }

    #[test]
    fn independent_points() {
        let a = FunctionSystem::affine(1, 2).unwrap();
        let x = line(&[0, 1, 2]);
        let s = seq(&a, &x.points()[..1]);
        let r = face(&a, &x, &s).unwrap();
        assert_eq!(r.w, [0]);
        assert_eq!(r.v, [0]);
        assert_eq!((r.face_dimension, r.gamma), (1, 2));
        let full = face(&a, &x, &seq(&a, x.points())).unwrap();
        assert_eq!(full.v, [0, 1, 2]);
        assert!(full.p.iter().all(Scalar::is_zero));
    }

    #[test]
    fn extremal_sequence_on_dependent_points() {
        // Endpoint masses have the largest variance on [0, 3], so no inner point can carry mass.
        let a = FunctionSystem::affine(1, 2).unwrap();
        let x = line(&[0, 1, 2, 3]);
        let s = seq(&a, &[Point::affine_i64(&[0]), Point::affine_i64(&[3])]);
        let r = face(&a, &x, &s).unwrap();
        assert_eq!(r.w, [0, 3]);
        assert_eq!(r.v, [0, 3]);
        assert_eq!(r.face_dimension, 2);
        let mid = seq(&a, &[Point::affine_i64(&[0]), Point::affine_i64(&[2])]);
        assert_eq!(atom_set(&a, &x, &mid).unwrap(), [0, 1, 2, 3]);
    }

    #[test]
    fn gamma_of_origin() {
        let a = FunctionSystem::affine(1, 2).unwrap();
        let (basis, gamma) = gamma_space(&a, &[Point::affine_i64(&[0])]).unwrap();
        assert_eq!(gamma, 2);
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn core_variety_of_positive_kernel() {
        let a = FunctionSystem::affine(1, 2).unwrap();
        let x = line(&[-1, 0, 1]);
        let ell = [-1, 0, 2].map(Scalar::from_int);
        let cv = core_variety(&a, &x, &ell).unwrap();
        assert!(cv.set.is_empty());
        assert_eq!(cv.iterations, 1);
    }

    #[test]
    fn max_mass_of_double_atom() {
        let a = FunctionSystem::affine(1, 2).unwrap();
        let x = line(&[0, 1, 2]);
        let mu = AtomicMeasure::new(vec![
            (Scalar::from_int(2), Point::affine_i64(&[0])),
            (Scalar::one(), Point::affine_i64(&[2])),
        ])
        .unwrap();
        let s = moments(&a, &mu).unwrap();
        let r = max_mass(&a, &x, &s, &Point::affine_i64(&[0])).unwrap();
        assert_eq!(r.rho, Scalar::from_int(2));
        assert_eq!(r.kappa, r.rho);
        assert!(!r.x_in_w_residual && !r.x_in_v_residual);
    }

    #[test]
    fn psp_on_three_points() {
        let a = FunctionSystem::affine(1, 4).unwrap();
        let x = line(&[0, 1, 2, 3]);
        let pts = x.points()[..3].to_vec();
        match psp_check(&a, &x, &pts).unwrap() {
            PspOutcome::Feasible { functionals } => assert_eq!(functionals.len(), 3),
            PspOutcome::Infeasible { .. } => panic!("squares of Lagrange polynomials separate"),
        }
    }
}
