//! Exact arithmetic over ℚ(√2), dense linear algebra and linear programming.

mod bareiss;
pub mod lp;
pub mod matrix;
pub mod modular;
pub mod scalar;

pub use lp::{lp_solve, Direction, LpProblem, LpResult, LpStatus, Sense, VarBound};
pub use matrix::{
    det, independent_columns, independent_rows, kernel, normalize_integral, proportional, rank,
    rref, solve, Echelon, Matrix,
};
pub use scalar::{dot, Scalar};
