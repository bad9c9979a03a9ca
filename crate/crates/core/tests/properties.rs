mod common;

use proptest::prelude::*;
use qpcollapse::collapse::complementary_type;
use qpcollapse::fano::Cone2;
use qpcollapse::geometry::UnimodularMap;
use qpcollapse::mutation::{mutation_neighbors, validate_factor};
use qpcollapse::random::{random_primitive, random_unimodular};
use qpcollapse::singularity::{classify_cone, gorenstein_index, index_width, is_r, is_t, residue, QuotientSingularity};
use qpcollapse::Rational;

use common::invariants::{config, fano, rng};
use common::*;

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn dual_vertices_follow_edges(seed in any::<u64>()) {
        let p = fano(seed);
        let d = p.dual();
        // the dual vertex of edge [v_i, v_{i+1}] is tight on exactly those two vertices
        for (a, b) in p.edges() {
            let tight = d.vertices().iter().filter(|u| {
                u.dot(a) == Rational::from(-1) && u.dot(b) == Rational::from(-1)
            }).count();
            prop_assert_eq!(tight, 1);
        }
    }

    #[test]
    fn denominator_is_gorenstein_index(seed in any::<u64>()) {
        let p = fano(seed);
        let d = p.dual();
        prop_assert_eq!(d.denominator(), brute_denominator(&d));
        prop_assert_eq!(d.denominator(), gorenstein_index(&p).unwrap());
    }

    #[test]
    fn classification_invariants(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (g1, g2) = loop {
            let g1 = random_primitive(&mut r, 15);
            let g2 = random_primitive(&mut r, 15);
            let det = (g1[0] * g2[1] - g1[1] * g2[0]).unsigned_abs();
            if det != 0 && det <= 200 {
                break (g1, g2);
            }
        };
        let cone = Cone2::new(g1, g2).unwrap();
        let s = classify_cone(&cone).unwrap();
        prop_assert_eq!(classify_cone(&Cone2::new(g2, g1).unwrap()).unwrap(), s);
        let u = random_unimodular(&mut r, 5);
        let image = Cone2::new(u.apply_int(g1), u.apply_int(g2)).unwrap();
        prop_assert_eq!(classify_cone(&image).unwrap(), s);
        prop_assert_eq!(index_width(&s), geometric_index_width(g1, g2));
        prop_assert_eq!(is_t(&s), t_form_by_search(s.order(), s.weight()));
        let data = residue(&s).unwrap();
        prop_assert_eq!(data.width, data.d * data.local_index + data.remainder);
        if let Some(res) = data.residue {
            prop_assert!(is_r(&res));
            prop_assert_eq!(residue(&res).unwrap().d, 0);
        } else {
            prop_assert!(is_t(&s));
        }
    }

    #[test]
    fn geometric_residue(seed in any::<u64>()) {
        // The residue is the cone left after cutting off d slabs of width ℓ
        // from the edge of a realizing cone.
        let mut r = rng(seed);
        let (g1, g2) = loop {
            let g1 = random_primitive(&mut r, 12);
            let g2 = random_primitive(&mut r, 12);
            let det = g1[0] * g2[1] - g1[1] * g2[0];
            if det > 0 && det <= 200 {
                break (g1, g2);
            }
        };
        let s = classify_cone(&Cone2::new(g1, g2).unwrap()).unwrap();
        let data = residue(&s).unwrap();
        let (l, k) = geometric_index_width(g1, g2);
        let step = [(g2[0] - g1[0]) / k as i64, (g2[1] - g1[1]) / k as i64];
        let cut = (data.d * l) as i64;
        let g3 = [g1[0] + cut * step[0], g1[1] + cut * step[1]];
        match data.residue {
            None => prop_assert_eq!(g3, g2),
            Some(res) => prop_assert_eq!(classify_cone(&Cone2::new(g3, g2).unwrap()).unwrap(), res),
        }
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn witness_choice_is_immaterial(seed in any::<u64>()) {
        let p = fano(seed);
        for (data, q) in mutation_neighbors(&p).iter().take(2) {
            let mut witness = validate_factor(&p, data).unwrap();
            // slide every R_h with slack one step back along f
            let f = data.f();
            for slice in &mut witness.slices {
                if let Some((a, b)) = slice.segment {
                    if a != b {
                        slice.segment = Some(([a[0] + f[0], a[1] + f[1]], b));
                    }
                }
            }
            if let Ok(other) = qpcollapse::mutation::mutate_with_witness(&p, data, &witness) {
                prop_assert_eq!(&other.normal_form(), q);
            }
        }
    }

    #[test]
    fn complementary_type_is_an_involution(r in 2u64..=50, a in 1u64..50) {
        prop_assume!(a < r);
        if let Ok(s) = QuotientSingularity::new(r, a) {
            if is_r(&s) {
                let c = complementary_type(&s).unwrap();
                prop_assert!(is_r(&c));
                prop_assert_eq!(c.local_index(), s.local_index());
                prop_assert_eq!(c.width() + s.width(), s.local_index());
                prop_assert_eq!(complementary_type(&c).unwrap(), s);
            }
        }
    }

    #[test]
    fn unimodular_inverse(seed in any::<u64>()) {
        let u = random_unimodular(&mut rng(seed), 8);
        prop_assert_eq!(u.compose(&u.inverse()), UnimodularMap::IDENTITY);
    }
}

#[test]
fn complementary_type_exhaustive() {
    for r in 2..=50u64 {
        for a in 1..r {
            let Ok(s) = QuotientSingularity::new(r, a) else {
                continue;
            };
            if is_r(&s) {
                assert_eq!(complementary_type(&complementary_type(&s).unwrap()).unwrap(), s, "{s}");
            }
        }
    }
}

#[test]
fn markov_triples_up_to_1000() {
    let triples = qpcollapse::markov::markov_triples(1000);
    let got: Vec<[u64; 3]> = triples.iter().map(|t| t.entries()).collect();
    assert_eq!(got, brute_markov(1000));
    for [a, b, c] in got {
        assert_eq!(a * a + b * b + c * c, 3 * a * b * c);
        assert!(a % 3 != 0 && b % 3 != 0 && c % 3 != 0);
        assert_eq!(num::Integer::gcd(&a, &b), 1);
        assert_eq!(num::Integer::gcd(&b, &c), 1);
        assert_eq!(num::Integer::gcd(&a, &c), 1);
    }
}
