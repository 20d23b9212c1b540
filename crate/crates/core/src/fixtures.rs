//! Named example structures used throughout the tests and the CLI fixtures.
//!
//! Verified constructors return values already marked verified; the
//! deliberately broken ones return unverified data.

use std::collections::BTreeMap;

use crate::algebroid::{Algebroid, StructureTable};
use crate::expr::{Chart, Expr, Rational};
use crate::poisson::PoissonStructure;

fn constants(
    entries: &[((usize, usize, usize), i64)],
) -> BTreeMap<(usize, usize, usize), Rational> {
    entries
        .iter()
        .map(|&(k, v)| (k, Rational::from_integer(v.into())))
        .collect()
}

/// `{e1,e2} = e3`, `{e2,e3} = e1`, `{e3,e1} = e2` over a point.
pub fn so3() -> Algebroid {
    Algebroid::lie_algebra(
        3,
        &constants(&[((2, 0, 1), 1), ((0, 1, 2), 1), ((1, 0, 2), -1)]),
    )
    .expect("well formed")
    .verify()
    .expect("so(3) is a Lie algebra")
}

/// `{e1,e2} = e3` over a point.
pub fn heisenberg() -> Algebroid {
    Algebroid::lie_algebra(3, &constants(&[((2, 0, 1), 1)]))
        .expect("well formed")
        .verify()
        .expect("Heisenberg is a Lie algebra")
}

/// `{e1,e2} = e1`, `{e1,e3} = e2` over a point; Jacobi fails on `(1,2,3)`.
pub fn broken_jacobi() -> Algebroid {
    Algebroid::lie_algebra(3, &constants(&[((0, 0, 1), 1), ((1, 0, 2), 1)])).expect("well formed")
}

/// Zero anchor over the line with `{e1,e2} = x1·e3`: a bundle of Heisenberg
/// algebras whose structure varies with the base point.
pub fn heisenberg_bundle() -> Algebroid {
    let mut structure = StructureTable::new();
    structure.insert((2, 0, 1), Expr::var(0));
    Algebroid::lie_algebra_bundle(Chart::standard(1), 3, structure)
        .expect("well formed")
        .verify()
        .expect("fiberwise Heisenberg")
}

fn poisson(names: &[&str], entries: &[((usize, usize), &str)]) -> PoissonStructure {
    let chart = Chart::new(names.iter().copied()).expect("valid chart");
    let map = entries
        .iter()
        .map(|(k, v)| (*k, chart.parse(v).expect("valid entry")))
        .collect();
    PoissonStructure::from_entries(chart, &map).expect("well formed")
}

/// `Λ = ∂1∧∂2` on `R²`.
pub fn symplectic_plane() -> PoissonStructure {
    poisson(&["x1", "x2"], &[((0, 1), "1")])
        .verify()
        .expect("constant bivector")
}

/// `Λ = x3·∂1∧∂2` on `R³`.
pub fn linear_r3() -> PoissonStructure {
    poisson(&["x1", "x2", "x3"], &[((0, 1), "x3")])
        .verify()
        .expect("Poisson")
}

/// Lie–Poisson structure of so(3) on the chart `xi1, xi2, xi3`.
pub fn so3_linear() -> PoissonStructure {
    poisson(
        &["xi1", "xi2", "xi3"],
        &[((0, 1), "xi3"), ((1, 2), "xi1"), ((0, 2), "-xi2")],
    )
    .verify()
    .expect("Lie-Poisson")
}

/// `Λ = ∂1∧∂2 + x1·∂1∧∂3` on `R³`; not Poisson.
pub fn non_poisson_r3() -> PoissonStructure {
    poisson(&["x1", "x2", "x3"], &[((0, 1), "1"), ((0, 2), "x1")])
}

/// Every verified Poisson fixture.
pub fn poisson_structures() -> Vec<(&'static str, PoissonStructure)> {
    vec![
        ("symplectic R2", symplectic_plane()),
        ("linear R3", linear_r3()),
        ("so(3) linear", so3_linear()),
    ]
}

/// Every verified algebroid fixture, by name.
pub fn algebroids() -> Vec<(String, Algebroid)> {
    let mut out: Vec<(String, Algebroid)> = (1..=3)
        .map(|n| (format!("tangent R{n}"), Algebroid::tangent(n)))
        .collect();
    out.push(("so(3)".into(), so3()));
    out.push(("Heisenberg".into(), heisenberg()));
    out.push(("Heisenberg bundle".into(), heisenberg_bundle()));
    for (name, ps) in poisson_structures() {
        let cotangent = ps
            .cotangent_algebroid()
            .expect("verified Poisson structure");
        out.push((format!("cotangent of {name}"), cotangent));
    }
    out
}
