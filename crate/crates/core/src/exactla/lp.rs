//! Exact two-phase simplex with Bland's rule and checkable certificates.

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::{dot, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Maximize,
    Minimize,
}

/// `optimize cᵀx` subject to `A x (senses) b` and per-variable bounds.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub direction: Direction,
    pub objective: Vec<Scalar>,
    pub constraints: Matrix,
    pub rhs: Vec<Scalar>,
    pub senses: Vec<Sense>,
    pub bounds: Vec<VarBound>,
}

impl LpProblem {
    /// Panics if the dimensions disagree.
    pub fn new(
        direction: Direction,
        objective: Vec<Scalar>,
        constraints: Matrix,
        rhs: Vec<Scalar>,
        senses: Vec<Sense>,
        bounds: Vec<VarBound>,
    ) -> Self {
        assert_eq!(objective.len(), constraints.cols(), "objective length");
        assert_eq!(bounds.len(), constraints.cols(), "bounds length");
        assert_eq!(rhs.len(), constraints.rows(), "rhs length");
        assert_eq!(senses.len(), constraints.rows(), "senses length");
        LpProblem {
            direction,
            objective,
            constraints,
            rhs,
            senses,
            bounds,
        }
    }

    /// Pure feasibility problem (zero objective).
    pub fn feasibility(
        constraints: Matrix,
        rhs: Vec<Scalar>,
        senses: Vec<Sense>,
        bounds: Vec<VarBound>,
    ) -> Self {
        let n = constraints.cols();
        LpProblem::new(
            Direction::Maximize,
            vec![Scalar::zero(); n],
            constraints,
            rhs,
            senses,
            bounds,
        )
    }

    pub fn num_vars(&self) -> usize {
        self.constraints.cols()
    }

    pub fn num_rows(&self) -> usize {
        self.constraints.rows()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of [`lp_solve`].
///
/// * `Optimal`: `primal`, `dual` and `value` are set and satisfy strong duality.
/// * `Infeasible`: `farkas` holds `y` with the row signs of a maximization dual,
///   `Aᵀy ≥ 0` (`= 0` on free variables) and `bᵀy < 0`.
/// * `Unbounded`: `primal` is feasible and `ray` improves the objective without bound.
#[derive(Clone, Debug, Serialize)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: Option<Scalar>,
    pub primal: Option<Vec<Scalar>>,
    pub dual: Option<Vec<Scalar>>,
    pub farkas: Option<Vec<Scalar>>,
    pub ray: Option<Vec<Scalar>>,
}

impl LpResult {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn is_infeasible(&self) -> bool {
        self.status == LpStatus::Infeasible
    }

    /// Re-checks the certificate against `p` by exact substitution.
    pub fn verify(&self, p: &LpProblem) -> Result<(), String> {
        match self.status {
            LpStatus::Optimal => {
                let x = self.primal.as_ref().ok_or("missing primal")?;
                let y = self.dual.as_ref().ok_or("missing dual")?;
                let v = self.value.as_ref().ok_or("missing value")?;
                check_primal(p, x)?;
                check_dual(p, y)?;
                let cx = dot(&p.objective, x);
                let by = dot(&p.rhs, y);
                if &cx != v || &by != v {
                    return Err(format!("duality gap: cx = {cx}, by = {by}, value = {v}"));
                }
                Ok(())
            }
            LpStatus::Infeasible => {
                let y = self.farkas.as_ref().ok_or("missing Farkas vector")?;
                check_row_signs(p, y, Direction::Maximize)?;
                let aty = p.constraints.vec_mul(y);
                for (j, (v, b)) in aty.iter().zip(&p.bounds).enumerate() {
                    let ok = match b {
                        VarBound::NonNegative => !v.is_negative(),
                        VarBound::Free => v.is_zero(),
                    };
                    if !ok {
                        return Err(format!("Farkas column {j} has value {v}"));
                    }
                }
                let by = dot(&p.rhs, y);
                if !by.is_negative() {
                    return Err(format!("Farkas value {by} is not negative"));
                }
                Ok(())
            }
            LpStatus::Unbounded => {
                let x = self.primal.as_ref().ok_or("missing primal")?;
                let d = self.ray.as_ref().ok_or("missing ray")?;
                check_primal(p, x)?;
                let ad = p.constraints.mul_vec(d);
                for (i, (v, s)) in ad.iter().zip(&p.senses).enumerate() {
                    let ok = match s {
                        Sense::Le => !v.is_positive(),
                        Sense::Ge => !v.is_negative(),
                        Sense::Eq => v.is_zero(),
                    };
                    if !ok {
                        return Err(format!("ray violates row {i}"));
                    }
                }
                for (j, (v, b)) in d.iter().zip(&p.bounds).enumerate() {
                    if *b == VarBound::NonNegative && v.is_negative() {
                        return Err(format!("ray negative in variable {j}"));
                    }
                }
                let cd = dot(&p.objective, d);
                let improving = match p.direction {
                    Direction::Maximize => cd.is_positive(),
                    Direction::Minimize => cd.is_negative(),
                };
                if !improving {
                    return Err(format!("ray objective slope {cd}"));
                }
                Ok(())
            }
        }
    }
}

fn check_primal(p: &LpProblem, x: &[Scalar]) -> Result<(), String> {
    if x.len() != p.num_vars() {
        return Err("primal length".into());
    }
    for (j, (v, b)) in x.iter().zip(&p.bounds).enumerate() {
        if *b == VarBound::NonNegative && v.is_negative() {
            return Err(format!("variable {j} = {v} is negative"));
        }
    }
    let ax = p.constraints.mul_vec(x);
    for (i, ((v, s), b)) in ax.iter().zip(&p.senses).zip(&p.rhs).enumerate() {
        let ok = match s {
            Sense::Le => v <= b,
            Sense::Ge => v >= b,
            Sense::Eq => v == b,
        };
        if !ok {
            return Err(format!("row {i}: {v} {s:?} {b} fails"));
        }
    }
    Ok(())
}

fn check_row_signs(p: &LpProblem, y: &[Scalar], dir: Direction) -> Result<(), String> {
    if y.len() != p.num_rows() {
        return Err("dual length".into());
    }
    for (i, (v, s)) in y.iter().zip(&p.senses).enumerate() {
        let ok = match (s, dir) {
            (Sense::Eq, _) => true,
            (Sense::Le, Direction::Maximize) | (Sense::Ge, Direction::Minimize) => !v.is_negative(),
            (Sense::Ge, Direction::Maximize) | (Sense::Le, Direction::Minimize) => !v.is_positive(),
        };
        if !ok {
            return Err(format!("dual {i} = {v} has the wrong sign for {s:?}"));
        }
    }
    Ok(())
}

fn check_dual(p: &LpProblem, y: &[Scalar]) -> Result<(), String> {
    check_row_signs(p, y, p.direction)?;
    let aty = p.constraints.vec_mul(y);
    for (j, ((v, c), b)) in aty.iter().zip(&p.objective).zip(&p.bounds).enumerate() {
        let ok = match (b, p.direction) {
            (VarBound::Free, _) => v == c,
            (VarBound::NonNegative, Direction::Maximize) => v >= c,
            (VarBound::NonNegative, Direction::Minimize) => v <= c,
        };
        if !ok {
            return Err(format!("dual constraint {j}: {v} vs {c}"));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Column {
    Plus(usize),
    Minus(usize),
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    obj: Vec<Scalar>,
    basis: Vec<usize>,
    kinds: Vec<Column>,
    width: usize,
}

enum Outcome {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Scalar {
        &self.rows[i][self.width]
    }

    fn load_objective(&mut self, cost: &[Scalar]) {
        let mut obj: Vec<Scalar> = cost.iter().map(|c| -c).collect();
        obj.push(Scalar::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in obj.iter_mut().zip(&self.rows[i]) {
                if !t.is_zero() {
                    *o += &(cb * t);
                }
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let prow = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !prow[j].is_zero()).collect();
        let eliminate = |row: &mut Vec<Scalar>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let d = &f * &prow[j];
                row[j] -= &d;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Maximizes with Bland's rule over the columns marked `allowed`.
    fn run(&mut self, allowed: &[bool]) -> Outcome {
        loop {
            let entering = (0..self.width).find(|&j| allowed[j] && self.obj[j].is_negative());
            let Some(c) = entering else {
                return Outcome::Optimal;
            };
            let mut best: Option<(usize, Scalar)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((k, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*k]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Outcome::Unbounded(c),
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn solution(&self) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); self.width];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs(i).clone();
        }
        x
    }
}

/// Solves `p` exactly. The returned certificate is verified before returning;
/// a failed verification is a bug and panics.
pub fn lp_solve(p: &LpProblem) -> LpResult {
    let res = solve_unchecked(p);
    if let Err(e) = res.verify(p) {
        panic!("LP certificate failed verification: {e}");
    }
    res
}

fn solve_unchecked(p: &LpProblem) -> LpResult {
    let m = p.num_rows();
    let n = p.num_vars();

    let mut kinds = Vec::new();
    let mut plus_col = vec![0; n];
    let mut minus_col = vec![None; n];
    for j in 0..n {
        plus_col[j] = kinds.len();
        kinds.push(Column::Plus(j));
        if p.bounds[j] == VarBound::Free {
            minus_col[j] = Some(kinds.len());
            kinds.push(Column::Minus(j));
        }
    }

    // Flip rows so every right-hand side is nonnegative.
    let flip: Vec<bool> = p.rhs.iter().map(Scalar::is_negative).collect();
    let senses: Vec<Sense> = p
        .senses
        .iter()
        .zip(&flip)
        .map(|(s, &f)| match (s, f) {
            (Sense::Le, true) => Sense::Ge,
            (Sense::Ge, true) => Sense::Le,
            (s, _) => *s,
        })
        .collect();

    let mut slack_col = vec![None; m];
    let mut art_col = vec![None; m];
    for i in 0..m {
        match senses[i] {
            Sense::Le => {
                slack_col[i] = Some(kinds.len());
                kinds.push(Column::Slack);
            }
            Sense::Ge => {
                slack_col[i] = Some(kinds.len());
                kinds.push(Column::Slack);
                art_col[i] = Some(kinds.len());
                kinds.push(Column::Artificial);
            }
            Sense::Eq => {
                art_col[i] = Some(kinds.len());
                kinds.push(Column::Artificial);
            }
        }
    }
    let width = kinds.len();

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut init_col = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Scalar::zero(); width + 1];
        for j in 0..n {
            let a = p.constraints.get(i, j);
            if a.is_zero() {
                continue;
            }
            let a = if flip[i] { -a } else { a.clone() };
            if let Some(mc) = minus_col[j] {
                row[mc] = -&a;
            }
            row[plus_col[j]] = a;
        }
        match senses[i] {
            Sense::Le => row[slack_col[i].unwrap()] = Scalar::one(),
            Sense::Ge => {
                row[slack_col[i].unwrap()] = Scalar::from_int(-1);
                row[art_col[i].unwrap()] = Scalar::one();
            }
            Sense::Eq => row[art_col[i].unwrap()] = Scalar::one(),
        }
        row[width] = if flip[i] {
            -&p.rhs[i]
        } else {
            p.rhs[i].clone()
        };
        let b = art_col[i].or(slack_col[i]).unwrap();
        basis.push(b);
        init_col.push(b);
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis,
        kinds: kinds.clone(),
        width,
    };
    let flip_sign = |i: usize, u: Scalar| if flip[i] { -u } else { u };

    // Phase 1: maximize minus the sum of artificials.
    if art_col.iter().any(Option::is_some) {
        let cost: Vec<Scalar> = kinds
            .iter()
            .map(|k| {
                if *k == Column::Artificial {
                    Scalar::from_int(-1)
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        t.load_objective(&cost);
        let all = vec![true; width];
        match t.run(&all) {
            Outcome::Optimal => {}
            Outcome::Unbounded(_) => unreachable!("phase 1 is bounded"),
        }
        if t.obj[width].is_negative() {
            let farkas: Vec<Scalar> = (0..m)
                .map(|i| flip_sign(i, &t.obj[init_col[i]] + &cost[init_col[i]]))
                .collect();
            return LpResult {
                status: LpStatus::Infeasible,
                value: None,
                primal: None,
                dual: None,
                farkas: Some(farkas),
                ray: None,
            };
        }
        // Drive basic artificials out where possible.
        for i in 0..m {
            if t.kinds[t.basis[i]] != Column::Artificial {
                continue;
            }
            if let Some(j) =
                (0..width).find(|&j| t.kinds[j] != Column::Artificial && !t.rows[i][j].is_zero())
            {
                t.pivot(i, j);
            }
        }
    }

    // Phase 2.
    let sign = match p.direction {
        Direction::Maximize => Scalar::one(),
        Direction::Minimize => Scalar::from_int(-1),
    };
    let mut cost = vec![Scalar::zero(); width];
    for j in 0..n {
        let c = &sign * &p.objective[j];
        if let Some(mc) = minus_col[j] {
            cost[mc] = -&c;
        }
        cost[plus_col[j]] = c;
    }
    t.load_objective(&cost);
    let allowed: Vec<bool> = t.kinds.iter().map(|k| *k != Column::Artificial).collect();
    let outcome = t.run(&allowed);

    let to_original = |v: &[Scalar]| -> Vec<Scalar> {
        (0..n)
            .map(|j| match minus_col[j] {
                Some(mc) => &v[plus_col[j]] - &v[mc],
                None => v[plus_col[j]].clone(),
            })
            .collect()
    };
    let x = to_original(&t.solution());

    match outcome {
        Outcome::Optimal => {
            let dual: Vec<Scalar> = (0..m)
                .map(|i| {
                    let u = flip_sign(i, &t.obj[init_col[i]] + &cost[init_col[i]]);
                    &sign * &u
                })
                .collect();
            let value = dot(&p.objective, &x);
            LpResult {
                status: LpStatus::Optimal,
                value: Some(value),
                primal: Some(x),
                dual: Some(dual),
                farkas: None,
                ray: None,
            }
        }
        Outcome::Unbounded(c) => {
            let mut d = vec![Scalar::zero(); width];
            d[c] = Scalar::one();
            for (i, &b) in t.basis.iter().enumerate() {
                if !t.rows[i][c].is_zero() {
                    d[b] = -&t.rows[i][c];
                }
            }
            LpResult {
                status: LpStatus::Unbounded,
                value: None,
                primal: Some(x),
                dual: None,
                farkas: None,
                ray: Some(to_original(&d)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn max_with_upper_bound() {
        let p = LpProblem::new(
            Direction::Maximize,
            vec![s(1)],
            Matrix::from_i64(&[&[1]]),
            vec![s(1)],
            vec![Sense::Le],
            vec![VarBound::NonNegative],
        );
        let r = lp_solve(&p);
        assert!(r.is_optimal());
        assert_eq!(r.value, Some(s(1)));
    }

    #[test]
    fn infeasible_box() {
        let p = LpProblem::feasibility(
            Matrix::from_i64(&[&[1], &[1]]),
            vec![s(1), s(0)],
            vec![Sense::Ge, Sense::Le],
            vec![VarBound::Free],
        );
        let r = lp_solve(&p);
        assert!(r.is_infeasible());
        assert!(r.farkas.is_some());
    }

    #[test]
    fn unbounded_ray() {
        let p = LpProblem::new(
            Direction::Maximize,
            vec![s(1), s(1)],
            Matrix::from_i64(&[&[1, -1]]),
            vec![s(2)],
            vec![Sense::Le],
            vec![VarBound::NonNegative, VarBound::NonNegative],
        );
        let r = lp_solve(&p);
        assert_eq!(r.status, LpStatus::Unbounded);
    }

    #[test]
    fn minimize_with_free_variables() {
        // min 2x + y  s.t. x + y = 3, x - y >= -1, x >= 0, y free
        let p = LpProblem::new(
            Direction::Minimize,
            vec![s(2), s(1)],
            Matrix::from_i64(&[&[1, 1], &[1, -1]]),
            vec![s(3), s(-1)],
            vec![Sense::Eq, Sense::Ge],
            vec![VarBound::NonNegative, VarBound::Free],
        );
        let r = lp_solve(&p);
        assert!(r.is_optimal());
        assert_eq!(r.value, Some(s(4)));
        assert_eq!(r.primal, Some(vec![s(1), s(2)]));
    }
}
