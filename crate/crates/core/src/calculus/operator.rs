//! Graded endomorphisms of the form algebra.
//!
//! An [`Operator`] is a finite sum of homogeneous pieces, so the graded
//! bracket extends bilinearly to inhomogeneous operators such as `L(P)` for
//! a mixed-degree `P`.

use std::fmt;
use std::sync::Arc;

use super::graded::{interior_product, parity, GradedElement};
use crate::error::Result;

type Apply = Arc<dyn Fn(&GradedElement) -> Result<GradedElement> + Send + Sync>;

#[derive(Clone)]
struct Piece {
    degree: i32,
    apply: Apply,
}

#[derive(Clone)]
pub struct Operator {
    pieces: Vec<Piece>,
}

impl Operator {
    /// A homogeneous operator of the given degree.
    pub fn new<F>(degree: i32, apply: F) -> Operator
    where
        F: Fn(&GradedElement) -> Result<GradedElement> + Send + Sync + 'static,
    {
        Operator {
            pieces: vec![Piece {
                degree,
                apply: Arc::new(apply),
            }],
        }
    }

    pub fn zero() -> Operator {
        Operator { pieces: Vec::new() }
    }

    /// `i(P)`; each homogeneous part of `P` contributes a piece of degree `-p`.
    pub fn interior(p: &GradedElement) -> Operator {
        let mut out = Operator::zero();
        for (deg, part) in p.homogeneous_parts() {
            out.pieces.push(Piece {
                degree: -(deg as i32),
                apply: Arc::new(move |eta| interior_product(&part, eta)),
            });
        }
        out
    }

    /// The degree when the operator is homogeneous (the zero operator has
    /// none).
    pub fn degree(&self) -> Option<i32> {
        let first = self.pieces.first()?.degree;
        self.pieces
            .iter()
            .all(|p| p.degree == first)
            .then_some(first)
    }

    /// Degrees of the homogeneous pieces, ascending and deduplicated.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.pieces.iter().map(|p| p.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn apply(&self, eta: &GradedElement) -> Result<GradedElement> {
        let mut out = GradedElement::zero(eta.variance(), eta.rank());
        for piece in &self.pieces {
            out = out.try_add(&(piece.apply)(eta)?)?;
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator) -> Operator {
        let mut out = Operator::zero();
        for f in &self.pieces {
            for g in &other.pieces {
                let (fa, ga) = (f.apply.clone(), g.apply.clone());
                out.pieces.push(Piece {
                    degree: f.degree + g.degree,
                    apply: Arc::new(move |eta| fa(&ga(eta)?)),
                });
            }
        }
        out
    }

    pub fn add(&self, other: &Operator) -> Operator {
        let mut out = self.clone();
        out.pieces.extend(other.pieces.iter().cloned());
        out
    }

    pub fn scale_int(&self, c: i64) -> Operator {
        Operator {
            pieces: self
                .pieces
                .iter()
                .map(|p| {
                    let f = p.apply.clone();
                    Piece {
                        degree: p.degree,
                        apply: Arc::new(move |eta| Ok(f(eta)?.scale_int(c))),
                    }
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Operator {
        self.scale_int(-1)
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        self.add(&other.neg())
    }

    /// Graded bracket `[f, g] = f∘g − (−1)^{deg f · deg g} g∘f`, extended
    /// bilinearly over homogeneous pieces.
    pub fn graded_commutator(&self, other: &Operator) -> Operator {
        let mut out = Operator::zero();
        for f in &self.pieces {
            for g in &other.pieces {
                let f = Operator {
                    pieces: vec![f.clone()],
                };
                let g = Operator {
                    pieces: vec![g.clone()],
                };
                let s = parity(i64::from(f.pieces[0].degree) * i64::from(g.pieces[0].degree));
                out = out.add(&f.compose(&g).sub(&g.compose(&f).scale_int(s as i64)));
            }
        }
        out
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operator")
            .field("degrees", &self.degrees())
            .finish()
    }
}
