//! Exact symbolic exterior calculus on Lie algebroids.
//!
//! A Lie algebroid is given over a single global chart by an anchor matrix and
//! structure functions, all exact-rational polynomials. On top of that data the
//! crate builds the graded algebras of multivectors and forms, the algebroid
//! exterior derivative, Lie derivatives, the Schouten–Nijenhuis bracket, and the
//! Poisson constructions that come out of them (cotangent algebroid, Koszul
//! bracket, Lichnerowicz differential, linear Poisson structure on the dual).
//!
//! Every identity is decided exactly: coefficients are arbitrary precision
//! rationals, so a residual either is the zero polynomial or it is not.

pub mod algebroid;
pub mod calculus;
pub mod dualpoisson;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod poisson;

pub use algebroid::{Algebroid, AxiomReport};
pub use calculus::{Blade, GradedElement, Operator, Variance};
pub use dualpoisson::DualPoisson;
pub use error::{Error, Result};
pub use expr::{Chart, Expr, Rational};
pub use poisson::{PoissonReport, PoissonStructure};
