//! Lie algebroids over a single global chart.
//!
//! The bundle is trivialized by basis sections `e_1, …, e_k`. The anchor is
//! stored as the matrix `ρ^i_a` (component `i` of `ρ(e_a)` in the coordinate
//! frame) and the bracket by structure functions `{e_a, e_b} = Σ_c C^c_ab e_c`.
//! All indices in this API are zero-based; user-facing text is one-based.

use std::collections::BTreeMap;

use crate::calculus::{Blade, GradedElement, Variance};
use crate::error::{Error, Result};
use crate::expr::{Chart, Expr, Rational};

/// Structure functions keyed by `(c, a, b)` with `a < b`.
pub type StructureTable = BTreeMap<(usize, usize, usize), Expr>;

#[derive(Clone, Debug)]
pub struct Algebroid {
    chart: Chart,
    rank: usize,
    /// `anchor[a][i] = ρ^i_a`.
    anchor: Vec<Vec<Expr>>,
    /// `structure[a][b][c] = C^c_ab`, antisymmetric in `(a, b)`.
    structure: Vec<Vec<Vec<Expr>>>,
    verified: bool,
}

/// Residuals of the anchor homomorphism and Jacobi identity on basis sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// `(a, b) → ρ({e_a, e_b}) − [ρ(e_a), ρ(e_b)]`, one entry per coordinate.
    pub anchor_residuals: BTreeMap<(usize, usize), Vec<Expr>>,
    /// `(a, b, c) → {{e_a,e_b},e_c} + {{e_b,e_c},e_a} + {{e_c,e_a},e_b}`.
    pub jacobi_residuals: BTreeMap<(usize, usize, usize), GradedElement>,
    pub passed: bool,
}

impl AxiomReport {
    /// Nonzero anchor residual components as `((a, b), i, value)`.
    pub fn anchor_failures(&self) -> Vec<((usize, usize), usize, &Expr)> {
        self.anchor_residuals
            .iter()
            .flat_map(|(ab, comps)| {
                comps
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| !f.is_zero())
                    .map(move |(i, f)| (*ab, i, f))
            })
            .collect()
    }

    /// Nonzero Jacobi residuals.
    pub fn jacobi_failures(&self) -> Vec<((usize, usize, usize), &GradedElement)> {
        self.jacobi_residuals
            .iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(abc, r)| (*abc, r))
            .collect()
    }
}

/// Commutator of polynomial vector fields given by their components.
pub fn vector_field_bracket(x: &[Expr], y: &[Expr]) -> Vec<Expr> {
    assert_eq!(x.len(), y.len(), "vector fields of different dimension");
    let n = x.len();
    (0..n)
        .map(|i| {
            let mut out = Expr::zero();
            for j in 0..n {
                if !x[j].is_zero() {
                    out += &x[j] * &y[i].differentiate(j);
                }
                if !y[j].is_zero() {
                    out -= &y[j] * &x[i].differentiate(j);
                }
            }
            out
        })
        .collect()
}

fn check_chart(f: &Expr, chart: &Chart, entry: impl FnOnce() -> String) -> Result<()> {
    if f.width() > chart.dim() {
        Err(Error::ForeignCoordinate { entry: entry() })
    } else {
        Ok(())
    }
}

impl Algebroid {
    /// Builds an algebroid without checking its axioms.
    pub fn new(
        chart: Chart,
        rank: usize,
        anchor: Vec<Vec<Expr>>,
        structure: StructureTable,
    ) -> Result<Algebroid> {
        let n = chart.dim();
        if rank > crate::calculus::MAX_RANK {
            return Err(Error::Shape(format!(
                "rank {rank} exceeds the supported maximum {}",
                crate::calculus::MAX_RANK
            )));
        }
        if anchor.len() != rank {
            return Err(Error::Shape(format!(
                "anchor has {} rows, expected rank {rank}",
                anchor.len()
            )));
        }
        for (a, row) in anchor.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "anchor row {} has {} entries, expected {n}",
                    a + 1,
                    row.len()
                )));
            }
            for (i, f) in row.iter().enumerate() {
                check_chart(f, &chart, || format!("anchor[{}][{}]", a + 1, i + 1))?;
            }
        }
        let mut table = vec![vec![vec![Expr::zero(); rank]; rank]; rank];
        for (&(c, a, b), f) in &structure {
            let key = || format!("C[{}][{}][{}]", c + 1, a + 1, b + 1);
            if a >= b {
                return Err(Error::IndexOutOfRange(format!(
                    "{}: lower indices must be strictly increasing",
                    key()
                )));
            }
            if c >= rank || b >= rank {
                return Err(Error::IndexOutOfRange(format!(
                    "{} with rank {rank}",
                    key()
                )));
            }
            check_chart(f, &chart, key)?;
            table[a][b][c] = f.clone();
            table[b][a][c] = -f;
        }
        Ok(Algebroid {
            chart,
            rank,
            anchor,
            structure: table,
            verified: false,
        })
    }

    /// Tangent bundle of the chart: identity anchor, vanishing bracket.
    pub fn tangent_on(chart: Chart) -> Algebroid {
        let n = chart.dim();
        let anchor = (0..n)
            .map(|a| {
                (0..n)
                    .map(|i| if a == i { Expr::one() } else { Expr::zero() })
                    .collect()
            })
            .collect();
        let mut out = Algebroid::new(chart, n, anchor, StructureTable::new())
            .expect("tangent data is well formed");
        out.verified = true;
        out
    }

    /// Tangent bundle of `R^n` on the chart `x1, …, xn`.
    pub fn tangent(n: usize) -> Algebroid {
        Algebroid::tangent_on(Chart::standard(n))
    }

    /// Lie algebra over a point from structure constants keyed `(c, a, b)`.
    pub fn lie_algebra(
        rank: usize,
        constants: &BTreeMap<(usize, usize, usize), Rational>,
    ) -> Result<Algebroid> {
        let structure = constants
            .iter()
            .map(|(k, v)| (*k, Expr::constant(v.clone())))
            .collect();
        Algebroid::lie_algebra_bundle(Chart::default(), rank, structure)
    }

    /// Zero anchor with structure functions over a chart (a bundle of Lie
    /// algebras). Jacobi is not assumed.
    pub fn lie_algebra_bundle(
        chart: Chart,
        rank: usize,
        structure: StructureTable,
    ) -> Result<Algebroid> {
        let anchor = vec![vec![Expr::zero(); chart.dim()]; rank];
        Algebroid::new(chart, rank, anchor, structure)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Base dimension `n`.
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `ρ^i_a`.
    pub fn anchor(&self, a: usize, i: usize) -> &Expr {
        &self.anchor[a][i]
    }

    /// Components of `ρ(e_a)`.
    pub fn anchor_column(&self, a: usize) -> &[Expr] {
        &self.anchor[a]
    }

    /// `C^c_ab` for any `a`, `b`.
    pub fn structure(&self, c: usize, a: usize, b: usize) -> &Expr {
        &self.structure[a][b][c]
    }

    /// Components of `{e_a, e_b}`.
    pub fn structure_column(&self, a: usize, b: usize) -> &[Expr] {
        &self.structure[a][b]
    }

    /// Nonzero structure functions keyed `(c, a, b)` with `a < b`.
    pub fn structure_table(&self) -> StructureTable {
        let mut out = StructureTable::new();
        for a in 0..self.rank {
            for b in a + 1..self.rank {
                for c in 0..self.rank {
                    let f = &self.structure[a][b][c];
                    if !f.is_zero() {
                        out.insert((c, a, b), f.clone());
                    }
                }
            }
        }
        out
    }

    /// Same data, same table for every entry.
    pub fn same_data(&self, other: &Algebroid) -> bool {
        self.chart == other.chart
            && self.rank == other.rank
            && self.anchor == other.anchor
            && self.structure == other.structure
    }

    /// `ρ(e_a) f = Σ_i ρ^i_a ∂f/∂x^i`.
    pub fn anchor_derivative(&self, a: usize, f: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (i, r) in self.anchor[a].iter().enumerate() {
            if !r.is_zero() {
                out += r * &f.differentiate(i);
            }
        }
        out
    }

    /// `ρ(V) f` for a section `V`.
    pub fn anchor_apply(&self, v: &GradedElement, f: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (blade, va) in v.terms() {
            if let [a] = blade.indices().as_slice() {
                out += va * &self.anchor_derivative(*a, f);
            }
        }
        out
    }

    /// Checks that `x` belongs to this algebroid's algebra of the given
    /// variance: matching rank and coefficients over the chart.
    pub fn check_element(&self, x: &GradedElement, variance: Variance) -> Result<()> {
        x.check_variance(variance, "algebroid operand")?;
        x.check_rank(self.rank, "algebroid operand")?;
        if x.width() > self.dim() {
            return Err(Error::Mismatch(format!(
                "operand uses coordinates beyond the {}-dimensional chart",
                self.dim()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_section(&self, v: &GradedElement) -> Result<()> {
        self.check_element(v, Variance::Multivector)?;
        if v.degrees().iter().any(|&p| p != 1) {
            return Err(Error::Degree {
                expected: "1".into(),
                found: format!("{:?}", v.degrees()),
            });
        }
        Ok(())
    }

    /// Basis section `e_a` as a multivector.
    pub fn basis_section(&self, a: usize) -> GradedElement {
        GradedElement::basis_multivector(self.rank, &[a])
    }

    /// `{s1, s2}` extended from the basis by the Leibniz rules.
    pub fn bracket_sections(
        &self,
        s1: &GradedElement,
        s2: &GradedElement,
    ) -> Result<GradedElement> {
        self.check_section(s1)?;
        self.check_section(s2)?;
        let mut out = GradedElement::zero(Variance::Multivector, self.rank);
        for (b1, f) in s1.terms() {
            let a = b1.indices()[0];
            for (b2, g) in s2.terms() {
                let b = b2.indices()[0];
                let fg = f * g;
                for (c, coef) in self.structure[a][b].iter().enumerate() {
                    if !coef.is_zero() {
                        out.add_term(Blade::single(c), &fg * coef);
                    }
                }
            }
        }
        for (b2, g) in s2.terms() {
            out.add_term(b2, self.anchor_apply(s1, g));
        }
        for (b1, f) in s1.terms() {
            out.add_term(b1, -self.anchor_apply(s2, f));
        }
        Ok(out)
    }

    /// `ρ(e_a)` as a section of the tangent algebroid of the chart.
    fn pushed_basis(&self, a: usize) -> GradedElement {
        GradedElement::section(self.anchor[a].clone())
    }

    /// Extends the anchor to multivectors, wedge-multiplicatively, with the
    /// identity on functions. The result lives on the tangent algebroid of
    /// the chart.
    pub fn anchor_push(&self, p: &GradedElement) -> Result<GradedElement> {
        self.check_element(p, Variance::Multivector)?;
        let n = self.dim();
        let mut out = GradedElement::zero(Variance::Multivector, n);
        for (blade, f) in p.terms() {
            let mut image = GradedElement::scalar(Variance::Multivector, n, f.clone());
            for a in blade.indices() {
                image = image.wedge(&self.pushed_basis(a))?;
            }
            out = out.try_add(&image)?;
        }
        Ok(out)
    }

    /// Anchor and Jacobi residuals on basis sections.
    pub fn verify_axioms(&self) -> AxiomReport {
        let k = self.rank;
        let n = self.dim();
        let mut anchor_residuals = BTreeMap::new();
        for a in 0..k {
            for b in a + 1..k {
                let commutator = vector_field_bracket(&self.anchor[a], &self.anchor[b]);
                let residual: Vec<Expr> = (0..n)
                    .map(|i| {
                        let mut r = -&commutator[i];
                        for c in 0..k {
                            r += &self.structure[a][b][c] * &self.anchor[c][i];
                        }
                        r
                    })
                    .collect();
                anchor_residuals.insert((a, b), residual);
            }
        }
        let mut jacobi_residuals = BTreeMap::new();
        let e = |a: usize| self.basis_section(a);
        let bracket = |x: &GradedElement, y: &GradedElement| {
            self.bracket_sections(x, y)
                .expect("basis brackets are sections")
        };
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    let r = bracket(&bracket(&e(a), &e(b)), &e(c))
                        .try_add(&bracket(&bracket(&e(b), &e(c)), &e(a)))
                        .and_then(|s| s.try_add(&bracket(&bracket(&e(c), &e(a)), &e(b))))
                        .expect("same algebra");
                    jacobi_residuals.insert((a, b, c), r);
                }
            }
        }
        let passed = anchor_residuals.values().flatten().all(Expr::is_zero)
            && jacobi_residuals.values().all(GradedElement::is_zero);
        AxiomReport {
            anchor_residuals,
            jacobi_residuals,
            passed,
        }
    }

    /// Runs the axiom check and marks the algebroid verified if it passes.
    pub fn verify(mut self) -> std::result::Result<Algebroid, AxiomReport> {
        let report = self.verify_axioms();
        if report.passed {
            self.verified = true;
            Ok(self)
        } else {
            Err(report)
        }
    }

    /// Marks the algebroid verified without checking. Only for negative
    /// tests that need to push unverified data through gated operations.
    pub fn assume_verified(mut self) -> Algebroid {
        self.verified = true;
        self
    }
}

impl PartialEq for Algebroid {
    fn eq(&self, other: &Self) -> bool {
        self.same_data(other)
    }
}

impl Eq for Algebroid {}
