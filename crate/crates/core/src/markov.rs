//! Markov triples and the triangles of `P(a², b², c²)` reached from `P²`
//! by mutation.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num::{BigInt, Integer};
use serde::{Deserialize, Serialize};

use crate::ehrhart::{quasi_period, quasi_polynomial_with, PointCounter};
use crate::error::MarkovError;
use crate::fano::FanoPolygon;
use crate::mutation::mutation_neighbors;
use crate::singularity::cone_data;

/// A solution of `a² + b² + c² = 3abc` with `a <= b <= c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u64; 3]", into = "[u64; 3]")]
pub struct MarkovTriple {
    a: u64,
    b: u64,
    c: u64,
}

impl MarkovTriple {
    /// Accepts the entries in any order.
    pub fn new(x: u64, y: u64, z: u64) -> Result<Self, MarkovError> {
        let mut v = [x, y, z];
        v.sort_unstable();
        let [a, b, c] = v;
        let err = MarkovError::NotReachable(a, b, c);
        if a == 0 {
            return Err(err);
        }
        let (a2, b2, c2) = (a as u128, b as u128, c as u128);
        let lhs = a2.checked_mul(a2).zip(b2.checked_mul(b2)).zip(c2.checked_mul(c2));
        let rhs = a2
            .checked_mul(b2)
            .and_then(|ab| ab.checked_mul(c2))
            .and_then(|p| p.checked_mul(3));
        match (lhs, rhs) {
            (Some(((x, y), z)), Some(r)) if x.checked_add(y).and_then(|s| s.checked_add(z)) == Some(r) => {}
            _ => return Err(err),
        }
        if a.gcd(&b) != 1 || b.gcd(&c) != 1 || a.gcd(&c) != 1 {
            return Err(err);
        }
        if let Some(&m) = v.iter().find(|m| *m % 3 == 0) {
            return Err(MarkovError::InvariantViolation(m));
        }
        Ok(MarkovTriple { a, b, c })
    }

    pub fn root() -> Self {
        MarkovTriple { a: 1, b: 1, c: 1 }
    }

    pub fn entries(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    /// `(a, b, 3ab - c)` sorted; `None` at the root.
    pub fn parent(&self) -> Option<MarkovTriple> {
        if *self == MarkovTriple::root() {
            return None;
        }
        let exchanged = 3 * self.a as u128 * self.b as u128 - self.c as u128;
        let mut v = [self.a, self.b, exchanged as u64];
        v.sort_unstable();
        Some(MarkovTriple {
            a: v[0],
            b: v[1],
            c: v[2],
        })
    }

    /// The chain of triples from the root to `self`, both included.
    pub fn path_from_root(&self) -> Vec<MarkovTriple> {
        let mut path = vec![*self];
        while let Some(p) = path.last().and_then(MarkovTriple::parent) {
            path.push(p);
        }
        path.reverse();
        path
    }

    fn children(&self) -> Vec<MarkovTriple> {
        let [a, b, c] = self.entries().map(|x| x as u128);
        [(b, c, a), (a, c, b), (a, b, c)]
            .into_iter()
            .filter_map(|(x, y, z)| {
                let n = u64::try_from(3 * x * y - z).ok()?;
                MarkovTriple::new(x as u64, y as u64, n).ok()
            })
            .collect()
    }
}

impl TryFrom<[u64; 3]> for MarkovTriple {
    type Error = MarkovError;
    fn try_from(v: [u64; 3]) -> Result<Self, MarkovError> {
        MarkovTriple::new(v[0], v[1], v[2])
    }
}

impl From<MarkovTriple> for [u64; 3] {
    fn from(t: MarkovTriple) -> Self {
        t.entries()
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl fmt::Debug for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All Markov triples with largest entry at most `max_c`, sorted.
pub fn markov_triples(max_c: u64) -> Vec<MarkovTriple> {
    let mut seen = BTreeSet::new();
    if max_c == 0 {
        return Vec::new();
    }
    let mut queue = VecDeque::from([MarkovTriple::root()]);
    seen.insert(MarkovTriple::root());
    while let Some(t) = queue.pop_front() {
        for child in t.children() {
            if child.c <= max_c && seen.insert(child) {
                queue.push_back(child);
            }
        }
    }
    seen.into_iter().collect()
}

/// Weights `(λ1, λ2, λ3)` with `Σ λi vi = 0`, coprime, in vertex order.
pub fn triangle_weights(triangle: &FanoPolygon) -> Option<[u64; 3]> {
    let v = triangle.int_vertices();
    if v.len() != 3 {
        return None;
    }
    let det = |p: [i64; 2], q: [i64; 2]| (p[0] as i128 * q[1] as i128 - p[1] as i128 * q[0] as i128).unsigned_abs();
    let w = [det(v[1], v[2]), det(v[2], v[0]), det(v[0], v[1])];
    let g = w[0].gcd(&w[1]).gcd(&w[2]);
    Some(w.map(|x| (x / g) as u64))
}

fn has_weights(triangle: &FanoPolygon, t: &MarkovTriple) -> bool {
    let mut want = t.entries().map(|x| x * x);
    want.sort_unstable();
    triangle_weights(triangle).is_some_and(|mut w| {
        w.sort_unstable();
        w == want
    })
}

pub fn p2_triangle() -> FanoPolygon {
    FanoPolygon::from_ints(&[[1, 0], [0, 1], [-1, -1]]).expect("P^2 triangle is Fano")
}

/// The triangle of `P(a², b², c²)` in normal form, built by replaying one
/// mutation per edge of the Markov tree.
pub fn markov_triangle(t: &MarkovTriple) -> Result<FanoPolygon, MarkovError> {
    let mut current = p2_triangle().normal_form();
    for next in t.path_from_root().into_iter().skip(1) {
        let [a, b, c] = next.entries();
        current = mutation_neighbors(&current)
            .into_iter()
            .map(|(_, q)| q)
            .find(|q| has_weights(q, &next))
            .ok_or(MarkovError::ReplayFailed(a, b, c))?;
    }
    Ok(current)
}

/// Local index of the point with weight `x²` in `P(x², y², z²)`:
/// `x² / gcd(x², z² ȳ² + 1)` with `ȳ = y⁻¹ mod x²`.
pub fn arithmetic_local_index(x: u64, y: u64, z: u64) -> Result<u64, MarkovError> {
    if x.is_multiple_of(3) {
        return Err(MarkovError::InvariantViolation(x));
    }
    let m = BigInt::from(x) * BigInt::from(x);
    let y_bar = BigInt::from(y).extended_gcd(&m).x.mod_floor(&m);
    let z = BigInt::from(z);
    let t = (&z * &z * &y_bar * &y_bar + 1u32).mod_floor(&m);
    let index = &m / m.gcd(&t);
    Ok(u64::try_from(index).expect("local index of a Markov triple entry is at most that entry"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkovReport {
    pub triple: MarkovTriple,
    /// Arithmetic local indices, sorted.
    pub indices: Vec<u64>,
    /// Local indices of the triangle's cones, sorted.
    pub geometric_indices: Vec<u64>,
    pub r: u64,
    pub pi: u64,
    pub triangle: FanoPolygon,
}

impl MarkovReport {
    /// Indices agree and equal the triple, `r = abc` and `π = 1`.
    pub fn holds(&self) -> bool {
        let [a, b, c] = self.triple.entries();
        self.indices == self.triple.entries()
            && self.geometric_indices == self.indices
            && self.r as u128 == a as u128 * b as u128 * c as u128
            && self.pi == 1
    }
}

pub fn verify_markov(t: &MarkovTriple) -> Result<MarkovReport, MarkovError> {
    let [a, b, c] = t.entries();
    let mut indices = vec![
        arithmetic_local_index(a, b, c)?,
        arithmetic_local_index(b, c, a)?,
        arithmetic_local_index(c, a, b)?,
    ];
    indices.sort_unstable();
    let triangle = markov_triangle(t)?;
    let mut geometric_indices: Vec<u64> = cone_data(&triangle)?.iter().map(|d| d.local_index).collect();
    geometric_indices.sort_unstable();
    let dual = triangle.dual();
    let r = dual.denominator();
    let qp = quasi_polynomial_with(&PointCounter::new(&dual), r)?;
    Ok(MarkovReport {
        triple: *t,
        indices,
        geometric_indices,
        r,
        pi: quasi_period(&qp),
        triangle,
    })
}
