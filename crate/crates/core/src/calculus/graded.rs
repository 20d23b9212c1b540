//! Multivectors and forms as tables from increasing index tuples to
//! polynomial coefficients.
//!
//! A degree-`p` form is stored through its values on basis tuples:
//! the coefficient on `I = (i1 < … < ip)` is `η(e_{i1}, …, e_{ip})`, and
//! `η = Σ_I η_I e^I` under the unnormalized shuffle product. With that
//! convention `⟨e^I, e_J⟩ = δ_IJ` and the wedge of basis blades is a pure
//! sign times the union.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{Chart, Expr};

/// Strictly increasing index tuple, stored as a bitmask over `0..32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u32);

pub const MAX_RANK: usize = 32;

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn single(index: usize) -> Blade {
        assert!(index < MAX_RANK, "blade index {index} out of range");
        Blade(1 << index)
    }

    /// Sorted indices; `None` if an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut bits = 0u32;
        for &i in indices {
            assert!(i < MAX_RANK, "blade index {i} out of range");
            if bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(Blade(bits))
    }

    /// All blades of the given degree over `0..rank`, in tuple order.
    pub fn all_of_degree(rank: usize, degree: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = (0u32..(1u32 << rank))
            .filter(|b| b.count_ones() as usize == degree)
            .map(Blade)
            .collect();
        out.sort();
        out
    }

    /// Every blade over `0..rank`, by degree then tuple.
    pub fn all(rank: usize) -> Vec<Blade> {
        (0..=rank)
            .flat_map(|p| Blade::all_of_degree(rank, p))
            .collect()
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_RANK && self.0 & (1 << index) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..MAX_RANK).filter(|&i| self.contains(i)).collect()
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| MAX_RANK - 1 - self.0.leading_zeros() as usize)
    }

    /// Number of indices strictly below `index`.
    pub fn count_below(self, index: usize) -> usize {
        (self.0 & ((1u32 << index) - 1)).count_ones() as usize
    }

    pub fn insert(self, index: usize) -> Blade {
        Blade(self.0 | (1 << index))
    }

    pub fn remove(self, index: usize) -> Blade {
        Blade(self.0 & !(1 << index))
    }

    pub fn is_disjoint(self, other: Blade) -> bool {
        self.0 & other.0 == 0
    }

    /// `e_I ∧ e_J = sign · e_{I∪J}` for disjoint `I`, `J`.
    pub fn wedge(self, other: Blade) -> Option<(i32, Blade)> {
        if !self.is_disjoint(other) {
            return None;
        }
        let inversions: usize = other
            .indices()
            .iter()
            .map(|&j| self.degree() - self.count_below(j))
            .sum();
        Some((sign(inversions), Blade(self.0 | other.0)))
    }

    /// One-based, comma separated: `1,3`.
    pub fn key(self) -> String {
        self.indices()
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

pub(crate) fn sign(n: usize) -> i32 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(-1)^n` for possibly negative `n`.
pub(crate) fn parity(n: i64) -> i32 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    Multivector,
    Form,
}

impl Variance {
    pub fn dual(self) -> Variance {
        match self {
            Variance::Multivector => Variance::Form,
            Variance::Form => Variance::Multivector,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variance::Multivector => "multivector",
            Variance::Form => "form",
        }
    }
}

/// An element of `A(M,E)` or `Ω(M,E)` for a bundle of the given rank.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement {
    variance: Variance,
    rank: usize,
    terms: BTreeMap<Blade, Expr>,
}

impl GradedElement {
    pub fn zero(variance: Variance, rank: usize) -> GradedElement {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        GradedElement {
            variance,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(variance: Variance, rank: usize, f: Expr) -> GradedElement {
        let mut out = GradedElement::zero(variance, rank);
        out.add_term(Blade::EMPTY, f);
        out
    }

    /// `f · e_{i1} ∧ … ∧ e_{ip}` for indices in any order (zero if one repeats).
    pub fn monomial(variance: Variance, rank: usize, indices: &[usize], f: Expr) -> GradedElement {
        let mut out = GradedElement::zero(variance, rank);
        let mut blade = Blade::EMPTY;
        let mut s = 1;
        for &i in indices {
            assert!(i < rank, "index {i} out of range for rank {rank}");
            match blade.wedge(Blade::single(i)) {
                Some((t, b)) => {
                    s *= t;
                    blade = b;
                }
                None => return out,
            }
        }
        out.add_term(blade, f.scale_int(s as i64));
        out
    }

    /// Basis multivector `e_{i1} ∧ … ∧ e_{ip}` (zero-based indices).
    pub fn basis_multivector(rank: usize, indices: &[usize]) -> GradedElement {
        GradedElement::monomial(Variance::Multivector, rank, indices, Expr::one())
    }

    /// Basis form `e^{i1} ∧ … ∧ e^{ip}` (zero-based indices).
    pub fn basis_form(rank: usize, indices: &[usize]) -> GradedElement {
        GradedElement::monomial(Variance::Form, rank, indices, Expr::one())
    }

    pub fn from_blade(variance: Variance, rank: usize, blade: Blade, f: Expr) -> GradedElement {
        let mut out = GradedElement::zero(variance, rank);
        out.add_term(blade, f);
        out
    }

    /// Degree-1 multivector `Σ_a coefficients[a] e_a`.
    pub fn section(coefficients: Vec<Expr>) -> GradedElement {
        let rank = coefficients.len();
        let mut out = GradedElement::zero(Variance::Multivector, rank);
        for (a, f) in coefficients.into_iter().enumerate() {
            out.add_term(Blade::single(a), f);
        }
        out
    }

    /// Degree-1 form `Σ_a coefficients[a] e^a`.
    pub fn one_form(coefficients: Vec<Expr>) -> GradedElement {
        GradedElement::section(coefficients).with_variance(Variance::Form)
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Same coefficient table read in the dual algebra.
    pub fn with_variance(mut self, variance: Variance) -> GradedElement {
        self.variance = variance;
        self
    }

    pub fn add_term(&mut self, blade: Blade, f: Expr) {
        assert!(
            blade.max_index().is_none_or(|m| m < self.rank),
            "blade {blade:?} out of range for rank {}",
            self.rank
        );
        if f.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &f;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn component(&self, blade: Blade) -> Expr {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    pub fn scalar_part(&self) -> Expr {
        self.component(Blade::EMPTY)
    }

    /// Coefficient on the basis tuple of the given sorted indices.
    pub fn coefficient(&self, indices: &[usize]) -> Expr {
        Blade::from_indices(indices)
            .map(|b| self.component(b))
            .unwrap_or_default()
    }

    /// Nonzero terms in (degree, tuple) order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Expr)> {
        self.terms.iter().map(|(b, f)| (*b, f))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degrees that carry a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|b| b.degree()).collect();
        d.dedup();
        d
    }

    /// The single degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    pub fn homogeneous_part(&self, degree: usize) -> GradedElement {
        GradedElement {
            variance: self.variance,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == degree)
                .map(|(b, f)| (*b, f.clone()))
                .collect(),
        }
    }

    /// `(degree, component)` pairs for every nonzero homogeneous component.
    pub fn homogeneous_parts(&self) -> Vec<(usize, GradedElement)> {
        self.degrees()
            .into_iter()
            .map(|p| (p, self.homogeneous_part(p)))
            .collect()
    }

    /// Largest chart width used by any coefficient.
    pub fn width(&self) -> usize {
        self.terms.values().map(Expr::width).max().unwrap_or(0)
    }

    pub(crate) fn check_same(&self, other: &GradedElement, what: &str) -> Result<()> {
        if self.variance != other.variance {
            return Err(Error::Mismatch(format!(
                "{what}: {} against {}",
                self.variance.name(),
                other.variance.name()
            )));
        }
        self.check_rank(other.rank, what)
    }

    pub(crate) fn check_rank(&self, rank: usize, what: &str) -> Result<()> {
        if self.rank != rank {
            return Err(Error::Mismatch(format!(
                "{what}: rank {} against rank {rank}",
                self.rank
            )));
        }
        Ok(())
    }

    pub(crate) fn check_variance(&self, variance: Variance, what: &str) -> Result<()> {
        if self.variance != variance {
            return Err(Error::Mismatch(format!(
                "{what}: expected a {}, found a {}",
                variance.name(),
                self.variance.name()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_same(other, "sum")?;
        let mut out = self.clone();
        for (b, f) in &other.terms {
            out.add_term(*b, f.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GradedElement) -> Result<GradedElement> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> GradedElement {
        self.map(|f| -f)
    }

    /// Multiplies every coefficient by the function `f`.
    pub fn mul_fn(&self, f: &Expr) -> GradedElement {
        self.map(|g| f * g)
    }

    pub fn scale_int(&self, c: i64) -> GradedElement {
        self.map(|g| g.scale_int(c))
    }

    pub fn map(&self, op: impl Fn(&Expr) -> Expr) -> GradedElement {
        let mut out = GradedElement::zero(self.variance, self.rank);
        for (b, f) in &self.terms {
            out.add_term(*b, op(f));
        }
        out
    }

    /// Applies `op` to every coefficient and substitutes, used when moving
    /// an element between charts.
    pub fn substitute(&self, images: &[Expr]) -> GradedElement {
        self.map(|f| f.substitute(images))
    }

    /// Exterior product; both factors must live in the same algebra.
    pub fn wedge(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_same(other, "wedge")?;
        let mut out = GradedElement::zero(self.variance, self.rank);
        for (b1, f1) in &self.terms {
            for (b2, f2) in &other.terms {
                if let Some((s, b)) = b1.wedge(*b2) {
                    out.add_term(b, (f1 * f2).scale_int(s as i64));
                }
            }
        }
        Ok(out)
    }

    /// `μ`: multiplies each degree-`p` component by `p`.
    pub fn degree_scale(&self) -> GradedElement {
        let mut out = GradedElement::zero(self.variance, self.rank);
        for (b, f) in &self.terms {
            out.add_term(*b, f.scale_int(b.degree() as i64));
        }
        out
    }

    /// Value of a form on a list of sections, by multilinear expansion
    /// `η(V1, …, Vp) = ⟨η, V1 ∧ … ∧ Vp⟩`; only the degree-`p` part of `η`
    /// contributes.
    pub fn evaluate(&self, sections: &[GradedElement]) -> Result<Expr> {
        self.check_variance(Variance::Form, "form evaluation")?;
        let mut product = GradedElement::scalar(Variance::Multivector, self.rank, Expr::one());
        for v in sections {
            v.check_variance(Variance::Multivector, "form evaluation")?;
            if v.degrees().iter().any(|&d| d != 1) {
                return Err(Error::Degree {
                    expected: "1".into(),
                    found: format!("{:?}", v.degrees()),
                });
            }
            product = product.wedge(v)?;
        }
        pairing(&self.homogeneous_part(sections.len()), &product)
    }

    /// `(key, expression)` lines; key is `scalar` or a one-based tuple.
    pub fn entries(&self, chart: &Chart) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(b, f)| {
                let key = if b.degree() == 0 {
                    "scalar".to_string()
                } else {
                    b.key()
                };
                (key, f.to_string_in(chart))
            })
            .collect()
    }
}

impl GradedElement {
    /// Single-line rendering `key = expr; …`, or `0`.
    pub fn render(&self, chart: &Chart) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.entries(chart)
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[rank {}]{{", self.variance.name(), self.rank)?;
        for (i, (b, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b:?}: {e:?}")?;
        }
        f.write_str("}")
    }
}

/// `i(e_J) e^I` as a signed blade: the contractions `i(e_j)` are applied
/// right to left, each picking up `(-1)^{position of j in the current tuple}`.
pub(crate) fn contract_blade(vector: Blade, form: Blade) -> Option<(i32, Blade)> {
    let mut current = form;
    let mut s = 1;
    for j in vector.indices().into_iter().rev() {
        if !current.contains(j) {
            return None;
        }
        s *= sign(current.count_below(j));
        current = current.remove(j);
    }
    Some((s, current))
}

/// Interior product `i(P)η` of a form by a multivector.
pub fn interior_product(p: &GradedElement, eta: &GradedElement) -> Result<GradedElement> {
    p.check_variance(Variance::Multivector, "interior product")?;
    eta.check_variance(Variance::Form, "interior product")?;
    p.check_rank(eta.rank, "interior product")?;
    let mut out = GradedElement::zero(Variance::Form, eta.rank);
    for (bp, f) in &p.terms {
        for (be, g) in &eta.terms {
            if let Some((s, b)) = contract_blade(*bp, *be) {
                out.add_term(b, (f * g).scale_int(s as i64));
            }
        }
    }
    Ok(out)
}

/// Pairing `⟨η, P⟩`; components of unequal degree pair to zero.
pub fn pairing(eta: &GradedElement, p: &GradedElement) -> Result<Expr> {
    eta.check_variance(Variance::Form, "pairing")?;
    p.check_variance(Variance::Multivector, "pairing")?;
    eta.check_rank(p.rank, "pairing")?;
    let mut total = Expr::zero();
    for (b, f) in &eta.terms {
        if let Some(g) = p.terms.get(b) {
            total += f * g;
        }
    }
    Ok(total)
}
