//! Poisson bivectors on a chart and the structures they induce.
//!
//! A bivector `Λ = Σ_{i<j} Λ^{ij} ∂_i ∧ ∂_j` lives in the multivector algebra
//! of the tangent algebroid of the chart. Forms on the chart are forms of the
//! same tangent algebroid, with basis `dx^i`.

use std::collections::BTreeMap;

use crate::algebroid::{Algebroid, StructureTable};
use crate::calculus::{Blade, GradedElement, Variance};
use crate::error::{Error, Result};
use crate::expr::{Chart, Expr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    chart: Chart,
    bivector: GradedElement,
    verified: bool,
}

/// Outcome of the Poisson condition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonReport {
    /// `[Λ, Λ]`.
    pub residual: GradedElement,
    /// `(i, j, k) → {{x^i,x^j},x^k} + {{x^j,x^k},x^i} + {{x^k,x^i},x^j}` for `i<j<k`.
    pub jacobi_defects: BTreeMap<(usize, usize, usize), Expr>,
    pub passed: bool,
}

impl PoissonStructure {
    /// Wraps a bivector on the tangent algebroid of `chart`, unverified.
    pub fn new(chart: Chart, bivector: GradedElement) -> Result<PoissonStructure> {
        let tangent = Algebroid::tangent_on(chart.clone());
        tangent.check_element(&bivector, Variance::Multivector)?;
        if bivector.degrees().iter().any(|&p| p != 2) {
            return Err(Error::Degree {
                expected: "2".into(),
                found: format!("{:?}", bivector.degrees()),
            });
        }
        Ok(PoissonStructure {
            chart,
            bivector,
            verified: false,
        })
    }

    /// From entries `Λ^{ij}` keyed `(i, j)` with `i < j`.
    pub fn from_entries(
        chart: Chart,
        entries: &BTreeMap<(usize, usize), Expr>,
    ) -> Result<PoissonStructure> {
        let n = chart.dim();
        let mut bivector = GradedElement::zero(Variance::Multivector, n);
        for (&(i, j), f) in entries {
            let key = || format!("L[{}][{}]", i + 1, j + 1);
            if i >= j {
                return Err(Error::IndexOutOfRange(format!(
                    "{}: indices must be strictly increasing",
                    key()
                )));
            }
            if j >= n {
                return Err(Error::IndexOutOfRange(format!(
                    "{} with dimension {n}",
                    key()
                )));
            }
            if f.width() > n {
                return Err(Error::ForeignCoordinate { entry: key() });
            }
            bivector.add_term(Blade::from_indices(&[i, j]).expect("distinct"), f.clone());
        }
        PoissonStructure::new(chart, bivector)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn bivector(&self) -> &GradedElement {
        &self.bivector
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `Λ^{ij}` for any `i`, `j`.
    pub fn entry(&self, i: usize, j: usize) -> Expr {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.bivector.coefficient(&[i, j]),
            std::cmp::Ordering::Greater => -self.bivector.coefficient(&[j, i]),
            std::cmp::Ordering::Equal => Expr::zero(),
        }
    }

    pub fn tangent(&self) -> Algebroid {
        Algebroid::tangent_on(self.chart.clone())
    }

    fn check_function(&self, f: &Expr) -> Result<()> {
        if f.width() > self.dim() {
            return Err(Error::Mismatch(format!(
                "function uses coordinates beyond the {}-dimensional chart",
                self.dim()
            )));
        }
        Ok(())
    }

    /// `{f, g} = Σ_{i<j} Λ^{ij} (∂_i f ∂_j g − ∂_j f ∂_i g)`.
    pub fn poisson_bracket(&self, f: &Expr, g: &Expr) -> Result<Expr> {
        self.check_function(f)?;
        self.check_function(g)?;
        let df: Vec<Expr> = (0..self.dim()).map(|i| f.differentiate(i)).collect();
        let dg: Vec<Expr> = (0..self.dim()).map(|i| g.differentiate(i)).collect();
        let mut out = Expr::zero();
        for (blade, l) in self.bivector.terms() {
            let (i, j) = match blade.indices().as_slice() {
                [i, j] => (*i, *j),
                _ => unreachable!("bivector has pure degree 2"),
            };
            out += l * &(&df[i] * &dg[j] - &df[j] * &dg[i]);
        }
        Ok(out)
    }

    /// `[Λ, Λ]` together with the coordinate Jacobi defects.
    pub fn is_poisson(&self) -> PoissonReport {
        let tangent = self.tangent();
        let residual = tangent
            .schouten_bracket(&self.bivector, &self.bivector)
            .expect("bivector lives on the tangent algebroid");
        let n = self.dim();
        let x = Expr::var;
        let br = |f: &Expr, g: &Expr| self.poisson_bracket(f, g).expect("chart functions");
        let mut jacobi_defects = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let d = br(&br(&x(i), &x(j)), &x(k))
                        + br(&br(&x(j), &x(k)), &x(i))
                        + br(&br(&x(k), &x(i)), &x(j));
                    jacobi_defects.insert((i, j, k), d);
                }
            }
        }
        let passed = residual.is_zero() && jacobi_defects.values().all(Expr::is_zero);
        PoissonReport {
            residual,
            jacobi_defects,
            passed,
        }
    }

    /// Checks the Poisson condition and marks the structure verified.
    pub fn verify(mut self) -> std::result::Result<PoissonStructure, PoissonReport> {
        let report = self.is_poisson();
        if report.passed {
            self.verified = true;
            Ok(self)
        } else {
            Err(report)
        }
    }

    /// Marks the structure verified without checking; for negative tests
    /// that push a non-Poisson bivector through gated constructions.
    pub fn assume_verified(mut self) -> PoissonStructure {
        self.verified = true;
        self
    }

    fn require_verified(&self, what: &str) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified(format!(
                "Poisson structure used for {what}"
            )))
        }
    }

    /// `Λ#(dx^i) = Σ_j Λ^{ij} ∂_j`.
    fn sharp_basis(&self, i: usize) -> GradedElement {
        GradedElement::section((0..self.dim()).map(|j| self.entry(i, j)).collect())
    }

    /// `Λ#`, extended to forms of every degree as a wedge homomorphism that
    /// is the identity on functions.
    pub fn sharp(&self, eta: &GradedElement) -> Result<GradedElement> {
        let tangent = self.tangent();
        tangent.check_element(eta, Variance::Form)?;
        let n = self.dim();
        let mut out = GradedElement::zero(Variance::Multivector, n);
        for (blade, f) in eta.terms() {
            let mut image = GradedElement::scalar(Variance::Multivector, n, f.clone());
            for i in blade.indices() {
                image = image.wedge(&self.sharp_basis(i))?;
            }
            out = out.try_add(&image)?;
        }
        Ok(out)
    }

    /// Cotangent algebroid data without any gate: basis `dx^i`, anchor
    /// `ρ(dx^i) = Λ#dx^i`, structure functions `C^k_ij = ∂_k Λ^{ij}`.
    pub fn cotangent_data(&self) -> Algebroid {
        let n = self.dim();
        let anchor = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect();
        let mut structure = StructureTable::new();
        for i in 0..n {
            for j in i + 1..n {
                let l = self.entry(i, j);
                for k in 0..n {
                    let c = l.differentiate(k);
                    if !c.is_zero() {
                        structure.insert((k, i, j), c);
                    }
                }
            }
        }
        Algebroid::new(self.chart.clone(), n, anchor, structure)
            .expect("cotangent data is well formed")
    }

    /// The cotangent Lie algebroid of a verified Poisson structure, marked
    /// verified once it passes the axiom check. A structure that was only
    /// assumed verified yields its data unmarked when the axioms fail.
    pub fn cotangent_algebroid(&self) -> Result<Algebroid> {
        self.require_verified("the cotangent algebroid")?;
        let data = self.cotangent_data();
        Ok(data.clone().verify().unwrap_or(data))
    }

    /// Koszul bracket of forms: the Schouten bracket of the cotangent
    /// algebroid, with forms on the chart read as its multivectors.
    pub fn koszul_bracket(
        &self,
        eta: &GradedElement,
        zeta: &GradedElement,
    ) -> Result<GradedElement> {
        self.require_verified("the Koszul bracket")?;
        let tangent = self.tangent();
        tangent.check_element(eta, Variance::Form)?;
        tangent.check_element(zeta, Variance::Form)?;
        let cotangent = self.cotangent_data();
        let p = eta.clone().with_variance(Variance::Multivector);
        let q = zeta.clone().with_variance(Variance::Multivector);
        Ok(cotangent
            .schouten_bracket(&p, &q)?
            .with_variance(Variance::Form))
    }

    /// `δ_Λ(P) = [Λ, P]`.
    pub fn lichnerowicz_differential(&self, p: &GradedElement) -> Result<GradedElement> {
        self.require_verified("the Lichnerowicz differential")?;
        self.tangent().schouten_bracket(&self.bivector, p)
    }
}
