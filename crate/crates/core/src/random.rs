//! Seeded generators for test corpora.

use rand::Rng;

use crate::fano::{validate_fano, FanoPolygon};
use crate::geometry::{Point2, Polygon, UnimodularMap};

/// A product of `steps` random elementary matrices and sign flips.
pub fn random_unimodular<R: Rng>(rng: &mut R, steps: usize) -> UnimodularMap {
    let mut u = UnimodularMap::IDENTITY;
    for _ in 0..steps {
        let t = rng.gen_range(-2..=2);
        let e = match rng.gen_range(0..4) {
            0 => [[1, t], [0, 1]],
            1 => [[1, 0], [t, 1]],
            2 => [[0, 1], [1, 0]],
            _ => [[-1, 0], [0, 1]],
        };
        u = UnimodularMap::new(e)
            .expect("elementary matrices are unimodular")
            .compose(&u);
    }
    u
}

fn random_hull<R: Rng>(rng: &mut R, bound: i64, points: usize) -> Option<Polygon> {
    let pts: Vec<Point2> = (0..points)
        .map(|_| Point2::int(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)))
        .collect();
    Polygon::hull(pts).ok()
}

/// A lattice polygon, the hull of up to `points` random points in the box
/// `[-bound, bound]²`.
pub fn random_lattice_polygon<R: Rng>(rng: &mut R, bound: i64, points: usize) -> Polygon {
    loop {
        if let Some(p) = random_hull(rng, bound, points.max(3)) {
            return p;
        }
    }
}

/// A Fano polygon with exactly `vertices` vertices and coordinates in
/// `[-bound, bound]`, by rejection sampling.
pub fn random_fano<R: Rng>(rng: &mut R, bound: i64, vertices: usize) -> FanoPolygon {
    loop {
        let Some(p) = random_hull(rng, bound, vertices) else {
            continue;
        };
        if p.len() != vertices {
            continue;
        }
        if let Ok(f) = validate_fano(p) {
            return f;
        }
    }
}

/// A primitive lattice vector with entries in `[-bound, bound]`.
pub fn random_primitive<R: Rng>(rng: &mut R, bound: i64) -> [i64; 2] {
    loop {
        let v = [rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)];
        if crate::fano::is_primitive(v) {
            return v;
        }
    }
}
