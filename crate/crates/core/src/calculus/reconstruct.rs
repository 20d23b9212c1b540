//! Recovering an algebroid from a square-zero degree-1 derivation of the
//! form algebra.
//!
//! The anchor is read off `δ` on coordinate functions, `⟨δ x^i, e_a⟩ = ρ^i_a`,
//! and the structure functions from the derived bracket,
//! `C^c_ab = [[i(e_a), δ], i(e_b)](e^c)`.

use super::graded::{GradedElement, Variance};
use super::operator::Operator;
use crate::algebroid::{Algebroid, StructureTable};
use crate::error::{Error, Result};
use crate::expr::{Chart, Expr};

fn reject(probe: impl Into<String>, residual: &GradedElement, chart: &Chart) -> Error {
    Error::Rejected {
        probe: probe.into(),
        residual: residual.render(chart),
    }
}

fn expect_zero(
    probe: impl FnOnce() -> String,
    residual: GradedElement,
    chart: &Chart,
) -> Result<()> {
    if residual.is_zero() {
        Ok(())
    } else {
        Err(reject(probe(), &residual, chart))
    }
}

/// Reconstructs the algebroid whose exterior derivative is `delta`.
///
/// `delta` is probed on generators only: `δ(1)`, the derivation rule on
/// products of generators, `δ²` on generators, and agreement of `δ` with the
/// exterior derivative of the reconstructed data. The result must also pass
/// the axiom check; any failure is reported with its residual.
pub fn delta_reconstruct(chart: &Chart, rank: usize, delta: &Operator) -> Result<Algebroid> {
    if delta.degree() != Some(1) {
        return Err(Error::Rejected {
            probe: "degree".into(),
            residual: format!("operator degrees {:?}", delta.degrees()),
        });
    }
    let n = chart.dim();
    let scalar = |f: Expr| GradedElement::scalar(Variance::Form, rank, f);
    let basis = |c: usize| GradedElement::basis_form(rank, &[c]);
    let coordinates: Vec<GradedElement> = (0..n).map(|i| scalar(Expr::var(i))).collect();
    let dx: Vec<GradedElement> = coordinates
        .iter()
        .map(|x| delta.apply(x))
        .collect::<Result<_>>()?;

    let anchor: Vec<Vec<Expr>> = (0..rank)
        .map(|a| (0..n).map(|i| dx[i].coefficient(&[a])).collect())
        .collect();
    let mut structure = StructureTable::new();
    for a in 0..rank {
        for b in a + 1..rank {
            let ia = Operator::interior(&GradedElement::basis_multivector(rank, &[a]));
            let ib = Operator::interior(&GradedElement::basis_multivector(rank, &[b]));
            let op = ia.graded_commutator(delta).graded_commutator(&ib);
            for c in 0..rank {
                let value = op.apply(&basis(c))?.scalar_part();
                if !value.is_zero() {
                    structure.insert((c, a, b), value);
                }
            }
        }
    }
    let algebroid = Algebroid::new(chart.clone(), rank, anchor, structure)?;

    expect_zero(
        || "delta(1)".into(),
        delta.apply(&scalar(Expr::one()))?,
        chart,
    )?;
    for i in 0..n {
        for j in i..n {
            let lhs = delta.apply(&scalar(Expr::var(i) * Expr::var(j)))?;
            let rhs = dx[i]
                .mul_fn(&Expr::var(j))
                .try_add(&dx[j].mul_fn(&Expr::var(i)))?;
            expect_zero(
                || format!("delta({}*{})", chart.name(i), chart.name(j)),
                lhs.try_sub(&rhs)?,
                chart,
            )?;
        }
    }
    let de: Vec<GradedElement> = (0..rank)
        .map(|c| delta.apply(&basis(c)))
        .collect::<Result<_>>()?;
    for (i, dxi) in dx.iter().enumerate() {
        for (c, dec) in de.iter().enumerate() {
            let lhs = delta.apply(&basis(c).mul_fn(&Expr::var(i)))?;
            let rhs = dxi.wedge(&basis(c))?.try_add(&dec.mul_fn(&Expr::var(i)))?;
            expect_zero(
                || format!("delta({}*e^{})", chart.name(i), c + 1),
                lhs.try_sub(&rhs)?,
                chart,
            )?;
        }
    }
    for (i, d) in dx.iter().enumerate() {
        expect_zero(
            || format!("delta^2({})", chart.name(i)),
            delta.apply(d)?,
            chart,
        )?;
        let expected = algebroid.exterior_derivative(&coordinates[i])?;
        expect_zero(
            || format!("delta({}) vs d", chart.name(i)),
            d.try_sub(&expected)?,
            chart,
        )?;
    }
    for (c, d) in de.iter().enumerate() {
        expect_zero(|| format!("delta^2(e^{})", c + 1), delta.apply(d)?, chart)?;
        let expected = algebroid.exterior_derivative(&basis(c))?;
        expect_zero(
            || format!("delta(e^{}) vs d", c + 1),
            d.try_sub(&expected)?,
            chart,
        )?;
    }

    algebroid.verify().map_err(|report| {
        if let Some((abc, r)) = report.jacobi_failures().first() {
            reject(
                format!("jacobi {},{},{}", abc.0 + 1, abc.1 + 1, abc.2 + 1),
                r,
                chart,
            )
        } else {
            let ((a, b), i, f) = report.anchor_failures()[0];
            Error::Rejected {
                probe: format!("anchor {},{}", a + 1, b + 1),
                residual: format!("{}: {}", i + 1, f.to_string_in(chart)),
            }
        }
    })
}
