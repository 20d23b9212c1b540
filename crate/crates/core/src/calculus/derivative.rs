//! Exterior derivative and Lie derivatives of an algebroid.

use super::graded::{pairing, sign, Blade, GradedElement, Variance};
use super::operator::Operator;
use crate::algebroid::Algebroid;
use crate::error::Result;
use crate::expr::Expr;

/// `η(e_{r1}, …, e_c, …, e_{r(p-1)})` with `e_c` in slot `slot` and the
/// remaining slots filled by the increasing tuple `rest`.
fn value_with_inserted(eta: &GradedElement, rest: Blade, c: usize, slot: usize) -> Expr {
    if rest.contains(c) {
        return Expr::zero();
    }
    let coef = eta.component(rest.insert(c));
    if coef.is_zero() {
        return coef;
    }
    coef.scale_int(sign(slot + rest.count_below(c)) as i64)
}

impl Algebroid {
    /// `d_ρ η`. On functions, `(df)(e_a) = ρ(e_a) f`; in degree `p` the
    /// value on `(e_{j0}, …, e_{jp})` is
    /// `Σ_i (−1)^i ρ(e_{ji}) η(…ĵi…) + Σ_{i<l} (−1)^{i+l} η({e_ji, e_jl}, …ĵi…ĵl…)`.
    pub fn exterior_derivative(&self, eta: &GradedElement) -> Result<GradedElement> {
        self.check_element(eta, Variance::Form)?;
        let k = self.rank();
        let mut out = GradedElement::zero(Variance::Form, k);
        for p in eta.degrees() {
            if p >= k {
                continue;
            }
            for j in Blade::all_of_degree(k, p + 1) {
                let js = j.indices();
                let mut value = Expr::zero();
                for (i, &ji) in js.iter().enumerate() {
                    let coef = eta.component(j.remove(ji));
                    if !coef.is_zero() {
                        value += self.anchor_derivative(ji, &coef).scale_int(sign(i) as i64);
                    }
                }
                for (i, &ji) in js.iter().enumerate() {
                    for (l, &jl) in js.iter().enumerate().skip(i + 1) {
                        let rest = j.remove(ji).remove(jl);
                        for (c, cf) in self.structure_column(ji, jl).iter().enumerate() {
                            if cf.is_zero() {
                                continue;
                            }
                            let v = value_with_inserted(eta, rest, c, 0);
                            if !v.is_zero() {
                                value += (cf * &v).scale_int(sign(i + l) as i64);
                            }
                        }
                    }
                }
                out.add_term(j, value);
            }
        }
        Ok(out)
    }

    /// `d_ρ` as a degree-1 operator.
    pub fn d_operator(&self) -> Operator {
        let a = self.clone();
        Operator::new(1, move |eta| a.exterior_derivative(eta))
    }

    /// `L(V) η`, from `(L(V)η)(X1, …, Xp) = ρ(V)(η(X1, …, Xp)) − Σ_m η(…, {V, Xm}, …)`.
    pub fn lie_derivative_form(
        &self,
        v: &GradedElement,
        eta: &GradedElement,
    ) -> Result<GradedElement> {
        self.check_section(v)?;
        self.check_element(eta, Variance::Form)?;
        let k = self.rank();
        let brackets: Vec<GradedElement> = (0..k)
            .map(|a| self.bracket_sections(v, &self.basis_section(a)))
            .collect::<Result<_>>()?;
        let mut out = GradedElement::zero(Variance::Form, k);
        for p in eta.degrees() {
            for blade in Blade::all_of_degree(k, p) {
                let mut value = self.anchor_apply(v, &eta.component(blade));
                for (m, im) in blade.indices().into_iter().enumerate() {
                    let rest = blade.remove(im);
                    for (b, w) in brackets[im].terms() {
                        let c = b.indices()[0];
                        let x = value_with_inserted(eta, rest, c, m);
                        if !x.is_zero() {
                            value -= w * &x;
                        }
                    }
                }
                out.add_term(blade, value);
            }
        }
        Ok(out)
    }

    /// `L(V) P`, characterized by `⟨η, L(V)P⟩ = ρ(V)⟨η, P⟩ − ⟨L(V)η, P⟩` and
    /// extracted against every dual basis form.
    pub fn lie_derivative_multivector(
        &self,
        v: &GradedElement,
        p: &GradedElement,
    ) -> Result<GradedElement> {
        self.check_section(v)?;
        self.check_element(p, Variance::Multivector)?;
        let k = self.rank();
        let mut out = GradedElement::zero(Variance::Multivector, k);
        for blade in Blade::all(k) {
            let dual = GradedElement::from_blade(Variance::Form, k, blade, Expr::one());
            let value = self.anchor_apply(v, &p.component(blade))
                - pairing(&self.lie_derivative_form(v, &dual)?, p)?;
            out.add_term(blade, value);
        }
        Ok(out)
    }

    /// `L(P) = [i(P), d_ρ]`, of degree `1 − p` on each homogeneous part.
    pub fn lie_operator(&self, p: &GradedElement) -> Result<Operator> {
        self.check_element(p, Variance::Multivector)?;
        Ok(Operator::interior(p).graded_commutator(&self.d_operator()))
    }
}
