//! Graded algebras of multivectors and forms over an algebroid, and the
//! operators acting on them.

mod derivative;
mod graded;
mod operator;
mod reconstruct;
mod schouten;

pub use graded::{interior_product, pairing, Blade, GradedElement, Variance, MAX_RANK};
pub use operator::Operator;
pub use reconstruct::delta_reconstruct;
