//! The linear Poisson structure on the dual bundle `E*`.
//!
//! The total space of `E*` gets the chart `x^1, …, x^n, ξ_1, …, ξ_k` with the
//! fiber coordinates named `xi1, …, xik`. The bivector is fixed by the
//! generator brackets
//! `{ξ_a, ξ_b} = Σ_c C^c_ab ξ_c`, `{ξ_a, x^i} = ρ^i_a`, `{x^i, x^j} = 0`,
//! so that `{Φ_X, Φ_Y} = Φ_{{X,Y}}` for the fiberwise-linear functions
//! `Φ_X = Σ_a X^a ξ_a`.

use std::collections::BTreeMap;

use crate::algebroid::Algebroid;
use crate::calculus::{GradedElement, Variance};
use crate::error::{Error, Result};
use crate::expr::{Chart, Expr};
use crate::poisson::PoissonStructure;

pub const FIBER_PREFIX: &str = "xi";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPoisson {
    base_dim: usize,
    rank: usize,
    structure: PoissonStructure,
}

/// Base chart followed by `xi1, …, xik`; a name collision is an error.
pub fn dual_chart(base: &Chart, rank: usize) -> Result<Chart> {
    base.extend((1..=rank).map(|a| format!("{FIBER_PREFIX}{a}")))
}

impl DualPoisson {
    /// Builds the dual bivector of a verified algebroid and checks it.
    pub fn new(algebroid: &Algebroid) -> Result<DualPoisson> {
        if !algebroid.is_verified() {
            return Err(Error::Unverified(
                "algebroid used for the dual Poisson structure".into(),
            ));
        }
        let dual = DualPoisson::unchecked(algebroid)?;
        let structure = dual
            .structure
            .clone()
            .verify()
            .map_err(|report| Error::Rejected {
                probe: "[L,L]".into(),
                residual: report.residual.render(dual.chart()),
            })?;
        Ok(DualPoisson { structure, ..dual })
    }

    /// Builds the dual bivector without requiring or checking the axioms,
    /// validating only that it reproduces the generator brackets.
    pub fn unchecked(algebroid: &Algebroid) -> Result<DualPoisson> {
        let n = algebroid.dim();
        let k = algebroid.rank();
        let chart = dual_chart(algebroid.chart(), k)?;
        let mut entries = BTreeMap::new();
        for a in 0..k {
            for i in 0..n {
                let r = algebroid.anchor(a, i);
                if !r.is_zero() {
                    entries.insert((i, n + a), -r);
                }
            }
            for b in a + 1..k {
                let mut f = Expr::zero();
                for c in 0..k {
                    f += algebroid.structure(c, a, b) * &Expr::var(n + c);
                }
                if !f.is_zero() {
                    entries.insert((n + a, n + b), f);
                }
            }
        }
        let dual = DualPoisson {
            base_dim: n,
            rank: k,
            structure: PoissonStructure::from_entries(chart, &entries)?,
        };
        dual.check_generators(algebroid)?;
        Ok(dual)
    }

    fn check_generators(&self, algebroid: &Algebroid) -> Result<()> {
        let (n, k) = (self.base_dim, self.rank);
        let x = Expr::var;
        let xi = |a: usize| Expr::var(n + a);
        let chart = self.chart();
        let fail = |h1: &Expr, h2: &Expr, residual: Expr| Error::Rejected {
            probe: format!("{{{}, {}}}", h1.to_string_in(chart), h2.to_string_in(chart)),
            residual: residual.to_string_in(chart),
        };
        for i in 0..n {
            for j in i + 1..n {
                let r = self.bracket(&x(i), &x(j))?;
                if !r.is_zero() {
                    return Err(fail(&x(i), &x(j), r));
                }
            }
        }
        for a in 0..k {
            for i in 0..n {
                let r = self.bracket(&xi(a), &x(i))? - algebroid.anchor(a, i);
                if !r.is_zero() {
                    return Err(fail(&xi(a), &x(i), r));
                }
            }
            for b in a + 1..k {
                let mut r = self.bracket(&xi(a), &xi(b))?;
                for c in 0..k {
                    r -= algebroid.structure(c, a, b) * &xi(c);
                }
                if !r.is_zero() {
                    return Err(fail(&xi(a), &xi(b), r));
                }
            }
        }
        Ok(())
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn chart(&self) -> &Chart {
        self.structure.chart()
    }

    pub fn structure(&self) -> &PoissonStructure {
        &self.structure
    }

    pub fn into_structure(self) -> PoissonStructure {
        self.structure
    }

    pub fn bracket(&self, f: &Expr, g: &Expr) -> Result<Expr> {
        self.structure.poisson_bracket(f, g)
    }

    /// `Φ_X = Σ_a X^a ξ_a`.
    pub fn phi(&self, x: &GradedElement) -> Result<Expr> {
        if x.variance() != Variance::Multivector
            || x.rank() != self.rank
            || x.degrees().iter().any(|&p| p != 1)
            || x.width() > self.base_dim
        {
            return Err(Error::Mismatch(
                "Φ expects a section of the algebroid".into(),
            ));
        }
        Ok(x.terms()
            .map(|(b, f)| f * &Expr::var(self.base_dim + b.indices()[0]))
            .sum())
    }

    /// `f ∘ π`: base functions are functions of the leading coordinates.
    pub fn pullback(&self, f: &Expr) -> Result<Expr> {
        if f.width() > self.base_dim {
            return Err(Error::Mismatch(
                "pullback expects a function on the base".into(),
            ));
        }
        Ok(f.clone())
    }

    /// Liouville field `Z = Σ_a ξ_a ∂/∂ξ_a`.
    pub fn liouville(&self) -> GradedElement {
        let n = self.base_dim;
        let mut comps = vec![Expr::zero(); n + self.rank];
        for (a, c) in comps.iter_mut().enumerate().skip(n) {
            *c = Expr::var(a);
        }
        GradedElement::section(comps)
    }

    /// `[Z, Λ] + Λ`, zero exactly when `Λ` is homogeneous of degree −1.
    pub fn homogeneity_check(&self) -> GradedElement {
        let tangent = self.structure.tangent();
        let lambda = self.structure.bivector();
        tangent
            .schouten_bracket(&self.liouville(), lambda)
            .and_then(|r| r.try_add(lambda))
            .expect("elements of the same tangent algebroid")
    }

    /// Residuals `{h1∘ᵗρ, h2∘ᵗρ}_{T*M} − {h1, h2}∘ᵗρ` for every pair of
    /// generators `h1, h2` of the dual chart, keyed by chart positions with
    /// `h1` before `h2`. `T*M` carries the dual structure of the tangent
    /// algebroid on the same base chart and `ᵗρ(x, ζ) = (x, ξ_a = Σ_i ρ^i_a ζ_i)`.
    pub fn transpose_anchor_check(
        &self,
        algebroid: &Algebroid,
    ) -> Result<BTreeMap<(usize, usize), Expr>> {
        let (n, k) = (self.base_dim, self.rank);
        if algebroid.dim() != n
            || algebroid.rank() != k
            || algebroid.chart().names() != &self.chart().names()[..n]
        {
            return Err(Error::Mismatch(
                "algebroid does not match the dual structure".into(),
            ));
        }
        let cotangent = DualPoisson::unchecked(&Algebroid::tangent_on(algebroid.chart().clone()))?;
        let mut images: Vec<Expr> = (0..n).map(Expr::var).collect();
        for a in 0..k {
            images.push(
                (0..n)
                    .map(|i| algebroid.anchor(a, i) * &Expr::var(n + i))
                    .sum(),
            );
        }
        let mut out = BTreeMap::new();
        for h1 in 0..n + k {
            for h2 in h1 + 1..n + k {
                let lhs = cotangent.bracket(&images[h1], &images[h2])?;
                let rhs = self
                    .bracket(&Expr::var(h1), &Expr::var(h2))?
                    .substitute(&images);
                out.insert((h1, h2), lhs - rhs);
            }
        }
        Ok(out)
    }
}
