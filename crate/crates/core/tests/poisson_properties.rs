mod common;

use cartan_core::calculus::pairing;
use cartan_core::{fixtures, Algebroid, GradedElement, PoissonStructure};
use common::*;
use proptest::prelude::*;

fn pick(i: usize) -> PoissonStructure {
    let list = fixtures::poisson_structures();
    list[i % list.len()].1.clone()
}

#[test]
fn cotangent_axioms_track_the_poisson_condition() {
    for (name, ps) in fixtures::poisson_structures() {
        assert!(ps.is_poisson().passed, "{name}");
        assert!(ps.cotangent_data().verify_axioms().passed, "{name}");
    }
    let broken = fixtures::non_poisson_r3();
    assert!(!broken.is_poisson().passed);
    assert!(!broken.cotangent_data().verify_axioms().passed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lichnerowicz_squares_to_zero(fix in 0usize..3, seed in any::<u64>()) {
        let ps = pick(fix);
        let mut r = rng(seed);
        let p = mixed_multivector(&mut r, ps.dim(), ps.dim());
        let once = ps.lichnerowicz_differential(&p).unwrap();
        prop_assert!(ps.lichnerowicz_differential(&once).unwrap().is_zero());
    }

    #[test]
    fn sharp_is_an_anti_homomorphism(fix in 0usize..3, seed in any::<u64>()) {
        let ps = pick(fix);
        let n = ps.dim();
        let mut r = rng(seed);
        let eta = element(&mut r, cartan_core::Variance::Form, n, n, &[0, 1, 2]);
        let lhs = ps.sharp(&ps.tangent().exterior_derivative(&eta).unwrap()).unwrap();
        let rhs = ps.lichnerowicz_differential(&ps.sharp(&eta).unwrap()).unwrap().neg();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sharp_is_multiplicative(fix in 0usize..3, seed in any::<u64>()) {
        let ps = pick(fix);
        let n = ps.dim();
        let mut r = rng(seed);
        let eta = mixed_form(&mut r, n, n);
        let zeta = mixed_form(&mut r, n, n);
        let lhs = ps.sharp(&eta.wedge(&zeta).unwrap()).unwrap();
        let rhs = ps.sharp(&eta).unwrap().wedge(&ps.sharp(&zeta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sharp_maps_koszul_to_schouten(fix in 0usize..3, seed in any::<u64>()) {
        let ps = pick(fix);
        let n = ps.dim();
        let mut r = rng(seed);
        let eta = element(&mut r, cartan_core::Variance::Form, n, n, &[0, 1, 2]);
        let zeta = element(&mut r, cartan_core::Variance::Form, n, n, &[0, 1, 2]);
        let lhs = ps.sharp(&ps.koszul_bracket(&eta, &zeta).unwrap()).unwrap();
        let rhs = ps.tangent().schouten_bracket(&ps.sharp(&eta).unwrap(), &ps.sharp(&zeta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_of_exact_forms(fix in 0usize..3, seed in any::<u64>()) {
        let ps = pick(fix);
        let n = ps.dim();
        let t = ps.tangent();
        let mut r = rng(seed);
        let f = expr(&mut r, n, 2);
        let g = expr(&mut r, n, 2);
        let d = |h: cartan_core::Expr| t.exterior_derivative(&function_form(n, h)).unwrap();
        let lhs = ps.koszul_bracket(&d(f.clone()), &d(g.clone())).unwrap();
        prop_assert_eq!(lhs, d(ps.poisson_bracket(&f, &g).unwrap()));
    }

    #[test]
    fn bialgebroid_compatibility(fix in 0usize..3, seed in any::<u64>()) {
        let ps = pick(fix);
        let n = ps.dim();
        let t = ps.tangent();
        let mut r = rng(seed);
        let pd = rand::Rng::gen_range(&mut r, 0..=2usize);
        let p = multivector(&mut r, n, n, pd);
        let q = mixed_multivector(&mut r, n, n);
        let delta = |x: &GradedElement| ps.lichnerowicz_differential(x).unwrap();
        let b = |x: &GradedElement, y: &GradedElement| t.schouten_bracket(x, y).unwrap();
        let lhs = delta(&b(&p, &q));
        let rhs = b(&delta(&p), &q).try_add(&b(&p, &delta(&q)).scale_int(sgn(pd as i64 - 1))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_matches_the_one_form_bracket_formula(fix in 0usize..3, seed in any::<u64>()) {
        let ps = pick(fix);
        let n = ps.dim();
        let t = ps.tangent();
        let mut r = rng(seed);
        let eta = form(&mut r, n, n, 1);
        let zeta = form(&mut r, n, n, 1);
        let x = section(&mut r, n, n);
        let lambda = ps.bivector();
        let lx = |h: cartan_core::Expr| t.schouten_bracket(lambda, &function_multivector(n, h)).unwrap();
        let lhs = pairing(&ps.koszul_bracket(&eta, &zeta).unwrap(), &x).unwrap();
        let rhs = pairing(&eta, &lx(pairing(&zeta, &x).unwrap())).unwrap()
            - pairing(&zeta, &lx(pairing(&eta, &x).unwrap())).unwrap()
            - pairing(&eta.wedge(&zeta).unwrap(), &t.schouten_bracket(lambda, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reconstruction_recovers_the_cotangent_algebroid(fix in 0usize..3, _seed in any::<u64>()) {
        let ps = pick(fix);
        let cot: Algebroid = ps.cotangent_algebroid().unwrap();
        let back = cartan_core::calculus::delta_reconstruct(ps.chart(), ps.dim(), &cot.d_operator()).unwrap();
        prop_assert_eq!(back, cot);
    }
}
