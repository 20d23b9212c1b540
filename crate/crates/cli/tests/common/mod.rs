#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use cartan_core::{Blade, Expr, GradedElement, Rational, Variance};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational in `{±1, ±2, ±3} / {1, 2}`.
pub fn coefficient(rng: &mut TestRng) -> Rational {
    let num: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.gen_range(1..=2);
    Rational::new(num.into(), den.into())
}

/// Polynomial in `n` variables, up to three terms of degree at most `max_degree`.
pub fn expr(rng: &mut TestRng, n: usize, max_degree: u32) -> Expr {
    let mut out = Expr::zero();
    for _ in 0..rng.gen_range(0..=3) {
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

/// Random element with polynomial coefficients of degree ≤ 2 in the listed degrees.
pub fn element(
    rng: &mut TestRng,
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

pub fn mixed(rng: &mut TestRng, variance: Variance, rank: usize, n: usize) -> GradedElement {
    let all: Vec<usize> = (0..=rank).collect();
    element(rng, variance, rank, n, &all)
}

pub fn section(rng: &mut TestRng, rank: usize, n: usize) -> GradedElement {
    element(rng, Variance::Multivector, rank, n, &[1])
}

/// `(−1)^n`.
pub fn sgn(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.out"))
}

/// Runs the binary from the crate directory so fixture paths stay relative.
pub fn cartan(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cartan"))
        .current_dir(crate_dir())
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

/// Golden cases: name, arguments, expected exit code.
pub const GOLDEN: &[(&str, &[&str], i32)] = &[
    (
        "check_tangent_r2",
        &["--model", "fixtures/tangent_r2.model", "check"],
        0,
    ),
    (
        "check_so3_json",
        &["--model", "fixtures/so3.model", "--json", "check"],
        0,
    ),
    (
        "check_broken_jacobi",
        &["--model", "fixtures/broken_jacobi.model", "check"],
        1,
    ),
    (
        "check_broken_jacobi_json",
        &["--model", "fixtures/broken_jacobi.model", "--json", "check"],
        1,
    ),
    (
        "poisson_check_linear_r3",
        &["--model", "fixtures/linear_r3.model", "poisson-check"],
        0,
    ),
    (
        "poisson_check_non_poisson_r3",
        &["--model", "fixtures/non_poisson_r3.model", "poisson-check"],
        1,
    ),
    (
        "poisson_check_non_poisson_r3_json",
        &[
            "--model",
            "fixtures/non_poisson_r3.model",
            "--json",
            "poisson-check",
        ],
        1,
    ),
    (
        "schouten_tangent_r3_p_q",
        &["--model", "fixtures/tangent_r3.model", "schouten", "P", "Q"],
        0,
    ),
    (
        "schouten_tangent_r3_p_p",
        &["--model", "fixtures/tangent_r3.model", "schouten", "P", "P"],
        0,
    ),
    (
        "schouten_tangent_r3_q_p_json",
        &[
            "--model",
            "fixtures/tangent_r3.model",
            "--json",
            "schouten",
            "Q",
            "P",
        ],
        0,
    ),
    (
        "dual_tangent_r2",
        &["--model", "fixtures/tangent_r2.model", "dual"],
        0,
    ),
    ("dual_so3", &["--model", "fixtures/so3.model", "dual"], 0),
    (
        "dual_heisenberg_bundle_json",
        &[
            "--model",
            "fixtures/heisenberg_bundle.model",
            "--json",
            "dual",
        ],
        0,
    ),
    (
        "dual_broken_jacobi",
        &["--model", "fixtures/broken_jacobi.model", "dual"],
        1,
    ),
];
