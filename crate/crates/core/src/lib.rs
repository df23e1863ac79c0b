//! Exact computations on truncated moment cones.
//!
//! The crate works over the field ℚ(√2) with no floating point in any
//! decision. It covers moment curves and moment maps with their Jacobians,
//! atomic decompositions and cone membership on finite ground sets, facial
//! invariants such as the set of atoms and the core variety, and the counting
//! bounds for Carathéodory numbers.
//!
//! ```
//! use momentcone::basis::{FunctionSystem, Point};
//! use momentcone::momentmap::{moments, AtomicMeasure};
//!
//! let a = FunctionSystem::affine(1, 2).unwrap();
//! let mu = AtomicMeasure::from_pairs(vec![
//!     (1.into(), Point::affine_i64(&[0])),
//!     (1.into(), Point::affine_i64(&[-2])),
//! ]);
//! let s = moments(&a, &mu).unwrap();
//! assert_eq!(s.to_strings(), ["2", "-2", "4"]);
//! ```

pub mod basis;
pub mod catalog;
pub mod decompose;
pub mod error;
pub mod exactla;
pub mod facial;
pub mod io;
pub mod momentmap;

pub use error::{Error, Result};
pub use exactla::{Matrix, Scalar};
