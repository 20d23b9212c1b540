mod common;

use std::sync::OnceLock;

use cartan_core::calculus::{interior_product, pairing};
use cartan_core::{fixtures, Algebroid, Expr, GradedElement, Operator, Variance};
use common::*;
use proptest::prelude::*;

fn all() -> &'static [(String, Algebroid)] {
    static CELL: OnceLock<Vec<(String, Algebroid)>> = OnceLock::new();
    CELL.get_or_init(fixtures::algebroids)
}

fn pick(i: usize) -> &'static Algebroid {
    let list = all();
    &list[i % list.len()].1
}

/// `L(V)` on forms as its own operator, independent of `i` and `d`.
fn lie_form_op(a: &Algebroid, v: &GradedElement) -> Operator {
    let (a, v) = (a.clone(), v.clone());
    Operator::new(0, move |eta| a.lie_derivative_form(&v, eta))
}

fn random_degree(rng: &mut rand_chacha::ChaCha8Rng, max: usize) -> usize {
    use rand::Rng;
    rng.gen_range(0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn wedge_is_associative_and_graded_commutative(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let (p, q) = (random_degree(&mut r, k), random_degree(&mut r, k));
        let x = form(&mut r, k, n, p);
        let y = form(&mut r, k, n, q);
        let z = mixed_form(&mut r, k, n);
        prop_assert_eq!(x.wedge(&y).unwrap().wedge(&z).unwrap(), x.wedge(&y.wedge(&z).unwrap()).unwrap());
        prop_assert_eq!(y.wedge(&x).unwrap(), x.wedge(&y).unwrap().scale_int(sgn((p * q) as i64)));
    }

    #[test]
    fn degree_scale_is_a_derivation(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let mut r = rng(seed);
        let p = mixed_multivector(&mut r, a.rank(), a.dim());
        let q = mixed_multivector(&mut r, a.rank(), a.dim());
        let lhs = p.wedge(&q).unwrap().degree_scale();
        let rhs = p.degree_scale().wedge(&q).unwrap().try_add(&p.wedge(&q.degree_scale()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_of_wedge_is_composition(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let p = mixed_multivector(&mut r, k, n);
        let q = mixed_multivector(&mut r, k, n);
        let eta = mixed_form(&mut r, k, n);
        let lhs = interior_product(&p.wedge(&q).unwrap(), &eta).unwrap();
        let rhs = interior_product(&p, &interior_product(&q, &eta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_at_equal_degree_is_signed_pairing(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let p = random_degree(&mut r, k);
        let pm = multivector(&mut r, k, n, p);
        let eta = form(&mut r, k, n, p);
        let lhs = interior_product(&pm, &eta).unwrap();
        let s = sgn((p * p.saturating_sub(1) / 2) as i64);
        let rhs = function_form(k, pairing(&eta, &pm).unwrap().scale_int(s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squares_to_zero(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let mut r = rng(seed);
        let eta = mixed_form(&mut r, a.rank(), a.dim());
        let d = a.exterior_derivative(&eta).unwrap();
        prop_assert!(a.exterior_derivative(&d).unwrap().is_zero());
    }

    #[test]
    fn d_is_a_degree_one_derivation(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let p = random_degree(&mut r, k);
        let eta = form(&mut r, k, n, p);
        let zeta = mixed_form(&mut r, k, n);
        let lhs = a.exterior_derivative(&eta.wedge(&zeta).unwrap()).unwrap();
        let rhs = a.exterior_derivative(&eta).unwrap().wedge(&zeta).unwrap()
            .try_add(&eta.wedge(&a.exterior_derivative(&zeta).unwrap()).unwrap().scale_int(sgn(p as i64)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_formula(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let eta = mixed_form(&mut r, k, n);
        let lhs = a.lie_derivative_form(&v, &eta).unwrap();
        let rhs = interior_product(&v, &a.exterior_derivative(&eta).unwrap()).unwrap()
            .try_add(&a.exterior_derivative(&interior_product(&v, &eta).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(a.lie_operator(&v).unwrap().apply(&eta).unwrap(), lhs);
    }

    #[test]
    fn lie_derivative_commutes_with_d(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let eta = mixed_form(&mut r, k, n);
        let lhs = a.lie_derivative_form(&v, &a.exterior_derivative(&eta).unwrap()).unwrap();
        let rhs = a.exterior_derivative(&a.lie_derivative_form(&v, &eta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_of_forms_is_a_derivation(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let eta = mixed_form(&mut r, k, n);
        let zeta = mixed_form(&mut r, k, n);
        let lhs = a.lie_derivative_form(&v, &eta.wedge(&zeta).unwrap()).unwrap();
        let rhs = a.lie_derivative_form(&v, &eta).unwrap().wedge(&zeta).unwrap()
            .try_add(&eta.wedge(&a.lie_derivative_form(&v, &zeta).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_along_function_multiple(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let f = expr(&mut r, n, 2);
        let eta = mixed_form(&mut r, k, n);
        let df = a.exterior_derivative(&function_form(k, f.clone())).unwrap();
        let lhs = a.lie_derivative_form(&v.mul_fn(&f), &eta).unwrap();
        let rhs = a.lie_derivative_form(&v, &eta).unwrap().mul_fn(&f)
            .try_add(&df.wedge(&interior_product(&v, &eta).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_of_bracket_is_commutator(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let w = section(&mut r, k, n);
        let eta = mixed_form(&mut r, k, n);
        let vw = a.bracket_sections(&v, &w).unwrap();
        let lhs = interior_product(&vw, &eta).unwrap();
        let rhs = lie_form_op(a, &v).graded_commutator(&Operator::interior(&w)).apply(&eta).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_of_bracket_on_forms(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let w = section(&mut r, k, n);
        let eta = mixed_form(&mut r, k, n);
        let vw = a.bracket_sections(&v, &w).unwrap();
        let lhs = a.lie_derivative_form(&vw, &eta).unwrap();
        let rhs = lie_form_op(a, &v).graded_commutator(&lie_form_op(a, &w)).apply(&eta).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_of_bracket_on_multivectors(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let w = section(&mut r, k, n);
        let p = mixed_multivector(&mut r, k, n);
        let vw = a.bracket_sections(&v, &w).unwrap();
        let lhs = a.lie_derivative_multivector(&vw, &p).unwrap();
        let lv = |x: &GradedElement| a.lie_derivative_multivector(&v, x).unwrap();
        let lw = |x: &GradedElement| a.lie_derivative_multivector(&w, x).unwrap();
        let rhs = lv(&lw(&p)).try_sub(&lw(&lv(&p))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_compatibility(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let eta = mixed_form(&mut r, k, n);
        let p = mixed_multivector(&mut r, k, n);
        let lhs = a.anchor_apply(&v, &pairing(&eta, &p).unwrap());
        let rhs = pairing(&a.lie_derivative_form(&v, &eta).unwrap(), &p).unwrap()
            + pairing(&eta, &a.lie_derivative_multivector(&v, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_of_section_is_bracket(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let w = section(&mut r, k, n);
        prop_assert_eq!(a.lie_derivative_multivector(&v, &w).unwrap(), a.bracket_sections(&v, &w).unwrap());
    }

    #[test]
    fn alternate_d_formula(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let p = 1 + random_degree(&mut r, 1);
        if p + 1 > k {
            return Ok(());
        }
        let eta = form(&mut r, k, n, p);
        let vs: Vec<GradedElement> = (0..=p).map(|_| section(&mut r, k, n)).collect();
        let without = |skip: &[usize]| -> Vec<GradedElement> {
            vs.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, v)| v.clone()).collect()
        };
        let mut expected = Expr::zero();
        for (i, v) in vs.iter().enumerate() {
            let l = a.lie_derivative_form(v, &eta).unwrap();
            expected += l.evaluate(&without(&[i])).unwrap().scale_int(sgn(i as i64));
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let mut args = vec![a.bracket_sections(&vs[i], &vs[j]).unwrap()];
                args.extend(without(&[i, j]));
                expected -= eta.evaluate(&args).unwrap().scale_int(sgn((i + j) as i64));
            }
        }
        let got = a.exterior_derivative(&eta).unwrap().evaluate(&vs).unwrap();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn lie_operator_vanishes_below_its_degree(fix in 0usize..16, seed in any::<u64>()) {
        // L(P) has degree 1 − p, so it kills Ω^j for j < p − 1.
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        for p in 2..=k {
            let pm = multivector(&mut r, k, n, p);
            let low: Vec<usize> = (0..p - 1).collect();
            let eta = element(&mut r, Variance::Form, k, n, &low);
            prop_assert!(a.lie_operator(&pm).unwrap().apply(&eta).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schouten_antisymmetry(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let (p, q) = (random_degree(&mut r, k), random_degree(&mut r, k));
        let pm = multivector(&mut r, k, n, p);
        let qm = multivector(&mut r, k, n, q);
        let s = sgn((p as i64 - 1) * (q as i64 - 1));
        let sum = a.schouten_bracket(&pm, &qm).unwrap()
            .try_add(&a.schouten_bracket(&qm, &pm).unwrap().scale_int(s))
            .unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn schouten_biderivation(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let p = random_degree(&mut r, k.min(2));
        let q1 = random_degree(&mut r, k.min(2));
        let pm = multivector(&mut r, k, n, p);
        let qa = multivector(&mut r, k, n, q1);
        let qb = mixed_multivector(&mut r, k, n);
        let lhs = a.schouten_bracket(&pm, &qa.wedge(&qb).unwrap()).unwrap();
        let rhs = a.schouten_bracket(&pm, &qa).unwrap().wedge(&qb).unwrap()
            .try_add(&qa.wedge(&a.schouten_bracket(&pm, &qb).unwrap()).unwrap()
                .scale_int(sgn((p as i64 - 1) * q1 as i64)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_graded_jacobi(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let (p, q, s) = (
            random_degree(&mut r, k.min(2)),
            random_degree(&mut r, k.min(2)),
            random_degree(&mut r, k.min(2)),
        );
        let pm = multivector(&mut r, k, n, p);
        let qm = multivector(&mut r, k, n, q);
        let rm = multivector(&mut r, k, n, s);
        let b = |x: &GradedElement, y: &GradedElement| a.schouten_bracket(x, y).unwrap();
        let (p, q, s) = (p as i64, q as i64, s as i64);
        let total = b(&b(&pm, &qm), &rm).scale_int(sgn((p - 1) * (s - 1)))
            .try_add(&b(&b(&qm, &rm), &pm).scale_int(sgn((q - 1) * (p - 1)))).unwrap()
            .try_add(&b(&b(&rm, &pm), &qm).scale_int(sgn((s - 1) * (q - 1)))).unwrap();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn schouten_paths_agree_on_mixed_inputs(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let p = mixed_multivector(&mut r, k, n);
        let q = mixed_multivector(&mut r, k, n);
        prop_assert_eq!(a.schouten_bracket(&p, &q).unwrap(), a.schouten_oracle(&p, &q).unwrap());
    }

    #[test]
    fn schouten_with_section_is_lie_derivative(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let v = section(&mut r, k, n);
        let q = mixed_multivector(&mut r, k, n);
        prop_assert_eq!(a.schouten_bracket(&v, &q).unwrap(), a.lie_derivative_multivector(&v, &q).unwrap());
    }

    #[test]
    fn lie_operator_commutes_with_d(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let pd = random_degree(&mut r, k);
        let p = multivector(&mut r, k, n, pd);
        let eta = mixed_form(&mut r, k, n);
        let c = a.lie_operator(&p).unwrap().graded_commutator(&a.d_operator());
        prop_assert!(c.apply(&eta).unwrap().is_zero());
    }

    #[test]
    fn lie_operators_bracket_to_schouten(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let pd = random_degree(&mut r, k.min(2));
        let p = multivector(&mut r, k, n, pd);
        let qd = random_degree(&mut r, k.min(2));
        let q = multivector(&mut r, k, n, qd);
        let eta = mixed_form(&mut r, k, n);
        let lhs = a.lie_operator(&p).unwrap().graded_commutator(&a.lie_operator(&q).unwrap());
        let rhs = a.lie_operator(&a.schouten_bracket(&p, &q).unwrap()).unwrap();
        prop_assert_eq!(lhs.apply(&eta).unwrap(), rhs.apply(&eta).unwrap());
    }

    #[test]
    fn interior_commutes_with_derived_bracket(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let (p, q, s) = (
            random_degree(&mut r, k.min(2)),
            random_degree(&mut r, k.min(2)),
            random_degree(&mut r, k.min(2)),
        );
        let pm = multivector(&mut r, k, n, p);
        let qm = multivector(&mut r, k, n, q);
        let rm = multivector(&mut r, k, n, s);
        let eta = mixed_form(&mut r, k, n);
        let derived = a.lie_operator(&pm).unwrap().graded_commutator(&Operator::interior(&qm));
        let ir = Operator::interior(&rm);
        let lhs = ir.compose(&derived).apply(&eta).unwrap();
        let sign = sgn((p as i64 + q as i64 - 1) * s as i64);
        let rhs = derived.compose(&ir).apply(&eta).unwrap().scale_int(sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn anchor_is_a_schouten_homomorphism(fix in 0usize..16, seed in any::<u64>()) {
        let a = pick(fix);
        let (k, n) = (a.rank(), a.dim());
        let mut r = rng(seed);
        let pd = random_degree(&mut r, k.min(2));
        let p = multivector(&mut r, k, n, pd);
        let qd = random_degree(&mut r, k.min(2));
        let q = multivector(&mut r, k, n, qd);
        let tangent = Algebroid::tangent_on(a.chart().clone());
        let lhs = a.anchor_push(&a.schouten_bracket(&p, &q).unwrap()).unwrap();
        let rhs = tangent
            .schouten_bracket(&a.anchor_push(&p).unwrap(), &a.anchor_push(&q).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
