//! Property tests on random differential polynomials, with a fixed RNG so runs
//! are reproducible.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use superw::liesuper::catalog;
use superw::pva::{self, affine_table, BracketTable};
use superw::scalar::Scalar;
use superw::superpoly::{SuperPoly, Var};
use superw::susy_pva::{self, susy_affine_table, SusyTable};

type Terms = Vec<(i8, Vec<(usize, u32)>)>;

/// Up to three terms of degree at most three, derivatives of order at most two.
fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((-3i8..=3, prop::collection::vec((0usize..64, 0u32..=2), 0..=3)), 1..=3)
}

fn build(gens: &[Var], t: &Terms) -> SuperPoly {
    let mut out = SuperPoly::zero();
    for (c, vars) in t {
        let mut m = SuperPoly::constant(Scalar::int(*c as i64));
        for &(i, n) in vars {
            m = &m * &SuperPoly::var(gens[i % gens.len()].with_order(n));
        }
        out = &out + &m;
    }
    out
}

fn parts(p: &SuperPoly) -> Vec<SuperPoly> {
    let (e, o) = p.split_parity();
    [e, o].into_iter().filter(|q| !q.is_zero()).collect()
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn lambda_table() -> BracketTable {
    affine_table(&catalog("sl21").unwrap().graded().unwrap().g, &Scalar::k())
}

fn chi_table() -> SusyTable {
    susy_affine_table(&catalog("sl21").unwrap().graded().unwrap().g, &Scalar::k())
}

#[test]
fn lambda_bracket_rules() {
    let t = lambda_table();
    runner(24)
        .run(&(terms(), terms(), terms()), |(a, b, c)| {
            let (a, b, c) = (build(&t.gens, &a), build(&t.gens, &b), build(&t.gens, &c));
            for a in parts(&a) {
                for b in parts(&b) {
                    let (x, y) = pva::sesquilinearity_defects(&t, &a, &b);
                    prop_assert!(x.is_zero() && y.is_zero());
                    prop_assert!(pva::skew_defect(&t, &a, &b).is_zero());
                    for c in parts(&c) {
                        prop_assert!(pva::right_leibniz_defect(&t, &a, &b, &c).is_zero());
                        prop_assert!(pva::left_leibniz_defect(&t, &a, &b, &c).is_zero());
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn chi_bracket_rules() {
    let t = chi_table();
    runner(24)
        .run(&(terms(), terms(), terms()), |(a, b, c)| {
            let (a, b, c) = (build(&t.gens, &a), build(&t.gens, &b), build(&t.gens, &c));
            for a in parts(&a) {
                for b in parts(&b) {
                    let (x, y) = susy_pva::sesquilinearity_defects(&t, &a, &b);
                    prop_assert!(x.is_zero() && y.is_zero());
                    prop_assert!(susy_pva::skew_defect(&t, &a, &b).is_zero());
                    for c in parts(&c) {
                        prop_assert!(susy_pva::right_leibniz_defect(&t, &a, &b, &c).is_zero());
                        prop_assert!(susy_pva::left_leibniz_defect(&t, &a, &b, &c).is_zero());
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}

/// Jacobi on small polynomials (degree at most two).
#[test]
fn jacobi_on_polynomials() {
    let small = || prop::collection::vec((-2i8..=2, prop::collection::vec((0usize..64, 0u32..=1), 1..=2)), 1..=2);
    let lt = lambda_table();
    let ct = chi_table();
    runner(8)
        .run(&(small(), small(), small()), |(a, b, c)| {
            let (x, y, z) = (build(&lt.gens, &a), build(&lt.gens, &b), build(&lt.gens, &c));
            for x in parts(&x) {
                for y in parts(&y) {
                    for z in parts(&z) {
                        prop_assert!(pva::jacobi_defect(&lt, &x, &y, &z).is_zero());
                    }
                }
            }
            let (x, y, z) = (build(&ct.gens, &a), build(&ct.gens, &b), build(&ct.gens, &c));
            for x in parts(&x) {
                for y in parts(&y) {
                    for z in parts(&z) {
                        prop_assert!(susy_pva::jacobi_defect(&ct, &x, &y, &z).values().all(|p| p.is_zero()));
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}
