//! Independent oracles and corpus generators shared by the integration tests.
//!
//! The oracles work directly on vertex lists with `BigRational` and avoid the
//! library's scanline counter, half-plane representation and classification
//! code.

#![allow(dead_code)]

pub mod invariants;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use qpcollapse::fano::FanoPolygon;
use qpcollapse::random::random_fano;
use qpcollapse::Polygon;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn big(p: &qpcollapse::Rational) -> BigRational {
    p.as_big().clone()
}

fn vertices(p: &Polygon) -> Vec<(BigRational, BigRational)> {
    p.vertices().iter().map(|v| (big(&v.x), big(&v.y))).collect()
}

/// `|kP ∩ Z²|` by testing every point of the bounding box against every edge.
/// Coordinates are scaled by the common denominator `D`, so `(x, y)` lies in
/// `kP` exactly when `(Dx, Dy)` lies in the integral polygon `D kP`.
pub fn brute_count(p: &Polygon, k: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    let dd = brute_denominator(p) as i128;
    let k = k as i128;
    let vs: Vec<(i128, i128)> = vertices(p)
        .into_iter()
        .map(|(x, y)| {
            let s = |c: BigRational| -> i128 { (c * BigInt::from(dd)).to_integer().try_into().unwrap() };
            (s(x) * k, s(y) * k)
        })
        .collect();
    let lo_x = vs.iter().map(|v| v.0).min().unwrap().div_euclid(dd) - 1;
    let hi_x = vs.iter().map(|v| v.0).max().unwrap().div_euclid(dd) + 1;
    let lo_y = vs.iter().map(|v| v.1).min().unwrap().div_euclid(dd) - 1;
    let hi_y = vs.iter().map(|v| v.1).max().unwrap().div_euclid(dd) + 1;
    let n = vs.len();
    let mut count = 0u64;
    for x in lo_x..=hi_x {
        for y in lo_y..=hi_y {
            let (px, py) = (x * dd, y * dd);
            let inside = (0..n).all(|i| {
                let (ax, ay) = vs[i];
                let (bx, by) = vs[(i + 1) % n];
                (bx - ax) * (py - ay) - (by - ay) * (px - ax) >= 0
            });
            if inside {
                count += 1;
            }
        }
    }
    count
}

/// Vertices of `{u : u·v >= -1 for all vertices v}` found by intersecting
/// every pair of constraint lines and keeping the feasible extreme points.
pub fn brute_dual_vertices(p: &Polygon) -> Vec<(BigRational, BigRational)> {
    let vs = vertices(p);
    let minus_one = -BigRational::one();
    let mut out: Vec<(BigRational, BigRational)> = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let (a, b) = &vs[i];
            let (c, d) = &vs[j];
            let det = a * d - b * c;
            if det.is_zero() {
                continue;
            }
            // a u + b v = -1, c u + d v = -1
            let u = (&minus_one * d - &minus_one * b) / &det;
            let v = (a * &minus_one - c * &minus_one) / &det;
            let feasible = vs.iter().all(|(x, y)| &u * x + &v * y >= minus_one);
            let tight = vs.iter().filter(|(x, y)| &u * x + &v * y == minus_one).count();
            // extreme points of a polygon are tight on two independent constraints;
            // with strictly convex input a vertex is tight on exactly two.
            if feasible && tight == 2 && !out.contains(&(u.clone(), v.clone())) {
                out.push((u, v));
            }
        }
    }
    out.sort();
    out
}

pub fn sorted_vertices(p: &Polygon) -> Vec<(BigRational, BigRational)> {
    let mut v = vertices(p);
    v.sort();
    v
}

/// Lcm of the denominators of all coordinates.
pub fn brute_denominator(p: &Polygon) -> u64 {
    vertices(p)
        .iter()
        .flat_map(|(x, y)| [x.denom().clone(), y.denom().clone()])
        .fold(BigInt::one(), |acc, d| acc.lcm(&d))
        .try_into()
        .unwrap()
}

/// Twice the shoelace area.
pub fn brute_volume(p: &Polygon) -> BigRational {
    let vs = vertices(p);
    let n = vs.len();
    (0..n)
        .map(|i| &vs[i].0 * &vs[(i + 1) % n].1 - &vs[(i + 1) % n].0 * &vs[i].1)
        .fold(BigRational::zero(), |a, b| a + b)
        .abs()
}

/// Lattice points on the boundary of a lattice polygon.
pub fn brute_boundary(p: &Polygon) -> u64 {
    let vs = vertices(p);
    let n = vs.len();
    (0..n)
        .map(|i| {
            let dx = (&vs[(i + 1) % n].0 - &vs[i].0).to_integer();
            let dy = (&vs[(i + 1) % n].1 - &vs[i].1).to_integer();
            u64::try_from(dx.gcd(&dy)).unwrap()
        })
        .sum()
}

/// `(height, width)` of the edge `[g1, g2]`: the lattice distance of the
/// edge's line from the origin and its lattice length.
pub fn geometric_index_width(g1: [i64; 2], g2: [i64; 2]) -> (u64, u64) {
    let det = (g1[0] * g2[1] - g1[1] * g2[0]).unsigned_abs();
    let width = (g2[0] - g1[0]).gcd(&(g2[1] - g1[1])).unsigned_abs();
    (det / width, width)
}

/// Whether `1/R(1,A)` (either weight representative) has the T-form
/// `1/(d n²)(1, d n c - 1)` with `gcd(n, c) = 1`, by exhaustive search.
pub fn t_form_by_search(order: u64, weight: u64) -> bool {
    let inverse = (1..order.max(2))
        .find(|x| (x * weight) % order == 1 % order)
        .unwrap_or(0);
    for n in 1..=order {
        if !order.is_multiple_of(n * n) {
            continue;
        }
        let d = order / (n * n);
        for c in 0..n.max(1) {
            if n.gcd(&c) != 1 {
                continue;
            }
            let a = ((d * n * c) as i128 - 1).rem_euclid(order as i128) as u64;
            if a == weight % order || (order > 1 && a == inverse) {
                return true;
            }
        }
    }
    false
}

/// Markov triples with `a <= b <= c <= max_c`, solving the equation as a
/// quadratic in `c` for every pair `a <= b`.
pub fn brute_markov(max_c: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for b in 1..=max_c as u128 {
        for a in 1..=b {
            // c^2 - 3ab c + (a^2 + b^2) = 0
            let p = 3 * a * b;
            let disc = p * p - 4 * (a * a + b * b);
            let root = disc.isqrt();
            if root * root != disc || (p + root) % 2 != 0 {
                continue;
            }
            for c in [(p - root) / 2, (p + root) / 2] {
                let t = [a as u64, b as u64, c as u64];
                if c >= b && c <= max_c as u128 && !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    out
}

/// A random Fano polygon with `vertices` vertices, coordinates bounded by
/// `bound` and dual denominator at most `max_r`. Counting-based checks cost
/// roughly `r²`, so unrestricted samples (median denominator in the
/// hundreds of thousands at bound 12) are out of reach.
pub fn small_fano<R: rand::Rng>(rng: &mut R, bound: i64, vertices: usize, max_r: u64) -> FanoPolygon {
    loop {
        let p = random_fano(rng, bound, vertices);
        if p.dual().denominator() <= max_r {
            return p;
        }
    }
}

/// Deterministic corpus of triangles and quadrilaterals.
pub fn fano_corpus(seed: u64, count: usize, bound: i64, max_r: u64) -> Vec<FanoPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| small_fano(&mut rng, bound, 3 + i % 2, max_r))
        .collect()
}

/// One polygon with 3 to 5 vertices per seed.
pub fn fano_from_seed(seed: u64, bound: i64, max_r: u64) -> FanoPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 3 + (seed % 3) as usize;
    small_fano(&mut rng, bound, n, max_r)
}
