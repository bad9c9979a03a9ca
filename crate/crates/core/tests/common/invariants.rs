//! Seeded invariant checks shared by the property and acceptance targets.
//! Each takes one `u64` seed and fails with a `TestCaseError`.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use qpcollapse::collapse::predict;
use qpcollapse::ehrhart::{pick_constituent, quasi_period, quasi_polynomial, PointCounter};
use qpcollapse::fano::{polar, validate_fano};
use qpcollapse::mutation::{apply_dual_map, dual_map, mutate, mutation_neighbors};
use qpcollapse::random::{random_lattice_polygon, random_unimodular};
use qpcollapse::singularity::singularity_content;
use qpcollapse::{FanoPolygon, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

pub type Check = fn(u64) -> Result<(), TestCaseError>;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_c011_a95e),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Runs `check` on `cases` seeds drawn by a fixed-seed runner.
pub fn run(cases: u32, check: Check) -> Result<(), String> {
    TestRunner::new(config(cases))
        .run(&any::<u64>(), check)
        .map_err(|e| e.to_string())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fitting is linear in the dual denominator, which for unrestricted random
/// polygons runs into the millions; cap it.
pub fn fano(seed: u64) -> FanoPolygon {
    fano_from_seed(seed, 5, 200)
}

pub fn dual_is_an_involution(seed: u64) -> Result<(), TestCaseError> {
    let p = fano(seed);
    let d = p.dual();
    prop_assert_eq!(polar(&d).unwrap(), p.polygon().clone());
    prop_assert_eq!(sorted_vertices(&d), brute_dual_vertices(p.polygon()));
    prop_assert_eq!(d.len(), p.len());
    Ok(())
}

pub fn normal_form_is_orbit_invariant(seed: u64) -> Result<(), TestCaseError> {
    let p = fano(seed);
    let u = random_unimodular(&mut rng(seed ^ 0xabc), 6);
    let q = p.map(&u);
    prop_assert_eq!(q.normal_form(), p.normal_form());
    prop_assert_eq!(p.normal_form().normal_form(), p.normal_form());
    Ok(())
}

pub fn quasi_period_divides_denominator(seed: u64) -> Result<(), TestCaseError> {
    let d = fano(seed).dual();
    let qp = quasi_polynomial(&d).unwrap();
    prop_assert_eq!(d.denominator() % quasi_period(&qp), 0);
    prop_assert_eq!(qp.evaluate(0), Rational::one());
    let lead = &qp.constituents()[0][0];
    prop_assert!(qp.constituents().iter().all(|c| &c[0] == lead));
    prop_assert_eq!(big(&(lead * &Rational::from(2))), brute_volume(&d));
    Ok(())
}

pub fn pick_for_lattice_polygons(seed: u64) -> Result<(), TestCaseError> {
    let p = random_lattice_polygon(&mut rng(seed), 6, 6);
    let qp = quasi_polynomial(&p).unwrap();
    prop_assert_eq!(qp.period(), 1);
    let pick = pick_constituent(&p).unwrap();
    prop_assert_eq!(&qp.constituents()[0], &pick);
    prop_assert_eq!(big(&(&pick[0] * &Rational::from(2))), brute_volume(&p));
    prop_assert_eq!(
        big(&(&pick[1] * &Rational::from(2))),
        BigRational::from_integer(brute_boundary(&p).into())
    );
    Ok(())
}

pub fn quasi_polynomial_matches_oracle(seed: u64) -> Result<(), TestCaseError> {
    let d = fano_from_seed(seed, 4, 30).dual();
    let r = d.denominator();
    let qp = quasi_polynomial(&d).unwrap();
    let counter = PointCounter::new(&d);
    for k in 0..=3 * r + 3 {
        let brute = brute_count(&d, k);
        prop_assert_eq!(counter.count(k), brute);
        prop_assert_eq!(qp.evaluate(k), Rational::from(brute as i64));
    }
    Ok(())
}

/// Invertibility, Fano-ness, content and duality for every edge mutation;
/// Ehrhart and collapse data for neighbours with dual denominator up to 1000.
pub fn mutation_invariants(seed: u64) -> Result<(), TestCaseError> {
    let p = fano(seed);
    let content = singularity_content(&p).unwrap();
    let qp = quasi_polynomial(&p.dual()).unwrap().reduced();
    let report = predict(&p).unwrap();
    for (data, q) in mutation_neighbors(&p) {
        let raw = mutate(&p, &data).unwrap();
        prop_assert!(validate_fano(raw.polygon().clone()).is_ok());
        prop_assert_eq!(&raw.normal_form(), &q);
        let back = mutate(&raw, &data.inverse()).unwrap();
        prop_assert_eq!(back.normal_form(), p.normal_form());
        let other_content = singularity_content(&q).unwrap();
        prop_assert_eq!(other_content.total_d, content.total_d);
        prop_assert_eq!(&other_content.basket, &content.basket);
        let image = apply_dual_map(&dual_map(&data), &p.dual()).unwrap();
        prop_assert_eq!(image, raw.dual());

        if q.dual().denominator() > 1000 {
            continue;
        }
        prop_assert_eq!(quasi_polynomial(&q.dual()).unwrap().reduced(), qp.clone());
        let other = predict(&q).unwrap();
        prop_assert_eq!(other.measured.pi, report.measured.pi);
        prop_assert_eq!(other.predicted.pi, report.predicted.pi);
        let pi = report.measured.pi as usize;
        prop_assert_eq!(&other.correction.values[..pi], &report.correction.values[..pi]);
    }
    Ok(())
}

/// The suite reported by the acceptance target, with case counts.
pub const SUITE: &[(&str, u32, Check)] = &[
    ("dual involution", 128, dual_is_an_involution),
    ("normal form invariance", 128, normal_form_is_orbit_invariant),
    (
        "quasi-period divides denominator",
        128,
        quasi_period_divides_denominator,
    ),
    ("Pick consistency", 128, pick_for_lattice_polygons),
    ("quasi-polynomial vs count oracle", 128, quasi_polynomial_matches_oracle),
    ("mutation invariants", 100, mutation_invariants),
];
