#![allow(dead_code)]

use cartan_core::{Blade, Expr, GradedElement, Rational, Variance};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational in `{±1, ±2, ±3} / {1, 2}`.
pub fn coefficient(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.gen_range(1..=2);
    Rational::new(num.into(), den.into())
}

/// Polynomial in `n` variables with up to three terms of degree at most `max_degree`.
pub fn expr(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Expr {
    let terms = rng.gen_range(0..=3);
    let mut out = Expr::zero();
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        if n > 0 {
            for _ in 0..rng.gen_range(0..=max_degree) {
                exps[rng.gen_range(0..n)] += 1;
            }
        }
        out += Expr::monomial(coefficient(rng), &exps);
    }
    out
}

pub fn nonzero_expr(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Expr {
    loop {
        let e = expr(rng, n, max_degree);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random element with components in the listed degrees.
pub fn element(
    rng: &mut ChaCha8Rng,
    variance: Variance,
    rank: usize,
    n: usize,
    degrees: &[usize],
) -> GradedElement {
    let mut out = GradedElement::zero(variance, rank);
    for blade in Blade::all(rank) {
        if degrees.contains(&blade.degree()) && rng.gen_bool(0.7) {
            out.add_term(blade, expr(rng, n, 2));
        }
    }
    out
}

pub fn form(rng: &mut ChaCha8Rng, rank: usize, n: usize, degree: usize) -> GradedElement {
    element(rng, Variance::Form, rank, n, &[degree])
}

/// Random form touching every degree `0..=rank`.
pub fn mixed_form(rng: &mut ChaCha8Rng, rank: usize, n: usize) -> GradedElement {
    let all: Vec<usize> = (0..=rank).collect();
    element(rng, Variance::Form, rank, n, &all)
}

pub fn multivector(rng: &mut ChaCha8Rng, rank: usize, n: usize, degree: usize) -> GradedElement {
    element(rng, Variance::Multivector, rank, n, &[degree])
}

pub fn mixed_multivector(rng: &mut ChaCha8Rng, rank: usize, n: usize) -> GradedElement {
    let all: Vec<usize> = (0..=rank).collect();
    element(rng, Variance::Multivector, rank, n, &all)
}

pub fn section(rng: &mut ChaCha8Rng, rank: usize, n: usize) -> GradedElement {
    multivector(rng, rank, n, 1)
}

pub fn function_form(rank: usize, f: Expr) -> GradedElement {
    GradedElement::scalar(Variance::Form, rank, f)
}

pub fn function_multivector(rank: usize, f: Expr) -> GradedElement {
    GradedElement::scalar(Variance::Multivector, rank, f)
}

/// `(−1)^n`.
pub fn sgn(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
