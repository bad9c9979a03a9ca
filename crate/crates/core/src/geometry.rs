//! Exact planar geometry over the rationals: points, unimodular maps and
//! convex polygons.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::rational::Rational;

/// A point of `Q^2`. Lattice points are points with integral coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[Rational; 2]", from = "[Rational; 2]")]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl From<Point2> for [Rational; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl From<[Rational; 2]> for Point2 {
    fn from([x, y]: [Rational; 2]) -> Self {
        Point2 { x, y }
    }
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point2::new(x.into(), y.into())
    }

    pub fn origin() -> Self {
        Point2::int(0, 0)
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Integer coordinates, if the point is integral and fits in `i64`.
    pub fn to_i64(&self) -> Option<[i64; 2]> {
        Some([self.x.to_integer()?.to_i64()?, self.y.to_integer()?.to_i64()?])
    }

    pub fn sub(&self, other: &Point2) -> Point2 {
        Point2::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Point2) -> Point2 {
        Point2::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, s: &Rational) -> Point2 {
        Point2::new(&self.x * s, &self.y * s)
    }

    pub fn dot(&self, other: &Point2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// `det(self, other)`.
    pub fn cross(&self, other: &Point2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }
}

impl From<[i64; 2]> for Point2 {
    fn from([x, y]: [i64; 2]) -> Self {
        Point2::int(x, y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `det(b - a, c - a)`: positive when `a, b, c` turn counter-clockwise.
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    b.sub(a).cross(&c.sub(a))
}

/// An element of `GL_2(Z)`, acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMap {
    m: [[i64; 2]; 2],
}

impl UnimodularMap {
    pub const IDENTITY: UnimodularMap = UnimodularMap { m: [[1, 0], [0, 1]] };

    /// Swap of the two coordinates.
    pub const SWAP: UnimodularMap = UnimodularMap { m: [[0, 1], [1, 0]] };

    pub fn new(m: [[i64; 2]; 2]) -> Result<Self, GeometryError> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() != 1 {
            return Err(GeometryError::NotUnimodular(det));
        }
        Ok(UnimodularMap { m })
    }

    /// The map sending `e1 ↦ c1` and `e2 ↦ c2`.
    pub fn from_columns(c1: [i64; 2], c2: [i64; 2]) -> Result<Self, GeometryError> {
        Self::new([[c1[0], c2[0]], [c1[1], c2[1]]])
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        let a = self.m;
        let b = other.m;
        UnimodularMap {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let [[a, b], [c, d]] = self.m;
        let det = self.det();
        UnimodularMap {
            m: [[d * det, -b * det], [-c * det, a * det]],
        }
    }

    pub fn apply_int(&self, p: [i64; 2]) -> [i64; 2] {
        [
            self.m[0][0] * p[0] + self.m[0][1] * p[1],
            self.m[1][0] * p[0] + self.m[1][1] * p[1],
        ]
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        let r = |v: i64| Rational::from(v);
        Point2::new(
            r(self.m[0][0]) * &p.x + r(self.m[0][1]) * &p.y,
            r(self.m[1][0]) * &p.x + r(self.m[1][1]) * &p.y,
        )
    }
}

/// Extended gcd on `i64`: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// A unimodular map sending the primitive vector `v` to `e1`.
pub fn map_to_e1(v: [i64; 2]) -> UnimodularMap {
    let (g, s, t) = ext_gcd(v[0], v[1]);
    debug_assert_eq!(g, 1, "vector {v:?} is not primitive");
    UnimodularMap {
        m: [[s, t], [-v[1], v[0]]],
    }
}

/// A strictly convex polygon with rational vertices.
///
/// Vertices are stored counter-clockwise starting from the lexicographically
/// smallest one, so two polygons are equal iff their vertex lists are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{:?}", self.vertices)
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

fn double_signed_area(pts: &[Point2]) -> Rational {
    let n = pts.len();
    (0..n).fold(Rational::zero(), |acc, i| acc + pts[i].cross(&pts[(i + 1) % n]))
}

fn rotate_to_min(mut vs: Vec<Point2>) -> Vec<Point2> {
    let start = vs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    vs.rotate_left(start);
    vs
}

impl Polygon {
    /// Builds a polygon from its vertices listed in cyclic order (either
    /// orientation). Degenerate input is rejected, never repaired.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i] == vertices[j] {
                    return Err(GeometryError::RepeatedVertex(Box::new(vertices[i].clone())));
                }
            }
        }
        let area = double_signed_area(&vertices);
        if area.is_zero() {
            // Either all points are collinear or the cycle self-overlaps.
            let all_collinear = (2..n).all(|i| orient(&vertices[0], &vertices[1], &vertices[i]).is_zero());
            return Err(if all_collinear {
                GeometryError::NotFullDimensional
            } else {
                GeometryError::NotConvex
            });
        }
        let mut vs = vertices;
        if area.is_negative() {
            vs.reverse();
        }
        for i in 0..n {
            let prev = &vs[(i + n - 1) % n];
            let next = &vs[(i + 1) % n];
            let turn = orient(prev, &vs[i], next);
            if turn.is_zero() {
                return Err(GeometryError::CollinearVertex(Box::new(vs[i].clone())));
            }
            if turn.is_negative() {
                return Err(GeometryError::NotConvex);
            }
        }
        // Local convexity does not rule out a polygon winding twice.
        for i in 0..n {
            let a = &vs[i];
            let b = &vs[(i + 1) % n];
            for (j, c) in vs.iter().enumerate() {
                if j != i && j != (i + 1) % n && !orient(a, b, c).is_positive() {
                    return Err(GeometryError::NotConvex);
                }
            }
        }
        Ok(Polygon {
            vertices: rotate_to_min(vs),
        })
    }

    /// Convex hull of a finite point set. Non-vertex points are dropped.
    pub fn hull<I: IntoIterator<Item = Point2>>(points: I) -> Result<Self, GeometryError> {
        let mut pts: Vec<Point2> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(GeometryError::NotFullDimensional);
        }
        let mut lower: Vec<Point2> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point2> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return Err(GeometryError::NotFullDimensional);
        }
        // Monotone chain already starts at the lexicographic minimum, ccw.
        Ok(Polygon { vertices: lower })
    }

    pub fn from_ints(vertices: &[[i64; 2]]) -> Result<Self, GeometryError> {
        Polygon::new(vertices.iter().map(|&v| Point2::from(v)).collect())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(start, end)` pairs in counter-clockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&Point2, &Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Euclidean area.
    pub fn area(&self) -> Rational {
        double_signed_area(&self.vertices) / Rational::from(2)
    }

    /// Normalised area (twice the Euclidean area).
    pub fn normalized_volume(&self) -> Rational {
        double_signed_area(&self.vertices)
    }

    /// Smallest positive `r` such that `r * self` is a lattice polygon.
    pub fn denominator(&self) -> u64 {
        let l = self
            .vertices
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.x.denom()).lcm(v.y.denom()));
        l.to_u64().expect("denominator exceeds u64")
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(Point2::is_integral)
    }

    /// Closed containment.
    pub fn contains(&self, p: &Point2) -> bool {
        self.edges().all(|(a, b)| !orient(a, b, p).is_negative())
    }

    pub fn contains_in_interior(&self, p: &Point2) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p).is_positive())
    }

    pub fn on_boundary(&self, p: &Point2) -> bool {
        self.contains(p) && !self.contains_in_interior(p)
    }

    /// Edge inequalities `a*x + b*y >= c`, one per edge in ccw order.
    pub fn inequalities(&self) -> Vec<(Rational, Rational, Rational)> {
        self.edges()
            .map(|(p, q)| {
                let a = &p.y - &q.y;
                let b = &q.x - &p.x;
                let c = &a * &p.x + &b * &p.y;
                (a, b, c)
            })
            .collect()
    }

    pub fn map(&self, u: &UnimodularMap) -> Polygon {
        Polygon::new(self.vertices.iter().map(|v| u.apply(v)).collect())
            .expect("unimodular image of a polygon is a polygon")
    }

    pub fn translate(&self, t: &Point2) -> Polygon {
        Polygon {
            vertices: rotate_to_min(self.vertices.iter().map(|v| v.add(t)).collect()),
        }
    }

    /// Number of lattice points on the boundary of a lattice polygon.
    pub fn boundary_lattice_points(&self) -> Option<BigInt> {
        if !self.is_lattice() {
            return None;
        }
        Some(self.edges().fold(BigInt::zero(), |acc, (p, q)| {
            let d = q.sub(p);
            acc + d.x.numer().abs().gcd(&d.y.numer().abs())
        }))
    }

    /// The points of the polygon satisfying `normal · x >= offset`, as the
    /// vertex list of the clipped region (may be degenerate or empty).
    pub fn clip(&self, normal: &Point2, offset: &Rational) -> Vec<Point2> {
        let n = self.vertices.len();
        let side = |p: &Point2| (normal.dot(p) - offset).cmp(&Rational::zero());
        let mut out = Vec::new();
        for i in 0..n {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            let sp = side(p);
            let sq = side(q);
            if sp != Ordering::Less {
                out.push(p.clone());
            }
            if (sp == Ordering::Less && sq == Ordering::Greater) || (sp == Ordering::Greater && sq == Ordering::Less) {
                let fp = normal.dot(p) - offset;
                let fq = normal.dot(q) - offset;
                let t = &fp / &(&fp - &fq);
                out.push(p.add(&q.sub(p).scale(&t)));
            }
        }
        out
    }
}
