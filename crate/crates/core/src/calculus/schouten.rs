//! The Schouten–Nijenhuis bracket, computed two independent ways.
//!
//! [`Algebroid::schouten_bracket`] extracts `[P,Q]` from the operator
//! identity `i([P,Q]) = [[i(P), d_ρ], i(Q)]` applied to basis forms.
//! [`Algebroid::schouten_oracle`] never touches `d_ρ` or interior products:
//! it splits both arguments into wedge monomials and recurses on the
//! biderivation rule and graded antisymmetry down to the algebroid bracket.

use super::graded::{parity, sign, Blade, GradedElement, Variance};
use super::operator::Operator;
use crate::algebroid::Algebroid;
use crate::error::Result;
use crate::expr::Expr;

impl Algebroid {
    /// Normative Schouten bracket.
    pub fn schouten_bracket(&self, p: &GradedElement, q: &GradedElement) -> Result<GradedElement> {
        self.check_element(p, Variance::Multivector)?;
        self.check_element(q, Variance::Multivector)?;
        let k = self.rank();
        let mut out = GradedElement::zero(Variance::Multivector, k);
        for (pd, pp) in p.homogeneous_parts() {
            let lp = self.lie_operator(&pp)?;
            for (qd, qq) in q.homogeneous_parts() {
                if pd + qd == 0 || pd + qd - 1 > k {
                    continue;
                }
                let r = pd + qd - 1;
                let op = lp.graded_commutator(&Operator::interior(&qq));
                let s = sign(r * (r.saturating_sub(1)) / 2) as i64;
                for blade in Blade::all_of_degree(k, r) {
                    let e = GradedElement::from_blade(Variance::Form, k, blade, Expr::one());
                    let value = op.apply(&e)?.scalar_part();
                    out.add_term(blade, value.scale_int(s));
                }
            }
        }
        Ok(out)
    }

    /// Schouten bracket by the biderivation recursion.
    pub fn schouten_oracle(&self, p: &GradedElement, q: &GradedElement) -> Result<GradedElement> {
        self.check_element(p, Variance::Multivector)?;
        self.check_element(q, Variance::Multivector)?;
        let mut out = GradedElement::zero(Variance::Multivector, self.rank());
        for (bp, f) in p.terms() {
            let left = self.atoms(bp, f);
            for (bq, g) in q.terms() {
                let right = self.atoms(bq, g);
                out = out.try_add(&self.bracket_atoms(&left, &right)?)?;
            }
        }
        Ok(out)
    }

    /// `f · e_{i1} ∧ … ∧ e_{ip}` as the factor list `[f, e_{i1}, …, e_{ip}]`.
    fn atoms(&self, blade: Blade, f: &Expr) -> Vec<Atom> {
        let mut out = vec![Atom::Function(f.clone())];
        out.extend(blade.indices().into_iter().map(Atom::Basis));
        out
    }

    fn bracket_atoms(&self, left: &[Atom], right: &[Atom]) -> Result<GradedElement> {
        let k = self.rank();
        if right.len() > 1 {
            // [P, Q1 ∧ R] = [P, Q1] ∧ R + (−1)^{(p−1)q1} Q1 ∧ [P, R]
            let p = degree(left);
            let (q1, rest) = right.split_at(1);
            let first = self.bracket_atoms(left, q1)?.wedge(&product(rest, k))?;
            let s = parity((p - 1) * degree(q1));
            let second = product(q1, k)
                .wedge(&self.bracket_atoms(left, rest)?)?
                .scale_int(s as i64);
            return first.try_add(&second);
        }
        if left.len() > 1 {
            // [P, Q] = −(−1)^{(p−1)(q−1)} [Q, P]
            let s = -parity((degree(left) - 1) * (degree(right) - 1));
            return Ok(self.bracket_atoms(right, left)?.scale_int(s as i64));
        }
        Ok(match (&left[0], &right[0]) {
            (Atom::Function(_), Atom::Function(_)) => GradedElement::zero(Variance::Multivector, k),
            (Atom::Basis(a), Atom::Basis(b)) => {
                GradedElement::section(self.structure_column(*a, *b).to_vec())
            }
            (Atom::Basis(a), Atom::Function(g)) => {
                GradedElement::scalar(Variance::Multivector, k, self.anchor_derivative(*a, g))
            }
            (Atom::Function(g), Atom::Basis(a)) => {
                GradedElement::scalar(Variance::Multivector, k, -self.anchor_derivative(*a, g))
            }
        })
    }
}

#[derive(Clone, Debug)]
enum Atom {
    Function(Expr),
    Basis(usize),
}

fn degree(atoms: &[Atom]) -> i64 {
    atoms.iter().filter(|a| matches!(a, Atom::Basis(_))).count() as i64
}

fn product(atoms: &[Atom], rank: usize) -> GradedElement {
    let mut f = Expr::one();
    let mut indices = Vec::new();
    for a in atoms {
        match a {
            Atom::Function(g) => f = &f * g,
            Atom::Basis(i) => indices.push(*i),
        }
    }
    GradedElement::monomial(Variance::Multivector, rank, &indices, f)
}
