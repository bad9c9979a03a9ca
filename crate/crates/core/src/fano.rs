//! Fano polygons: validation, polar duality, spanning fans and a
//! `GL_2(Z)` normal form.

use std::fmt;
use std::ops::Deref;

use num::Integer;

use crate::error::{GeometryError, SingularityError};
use crate::geometry::{map_to_e1, Point2, Polygon, UnimodularMap};
use crate::rational::Rational;

/// Coordinates beyond this bound are refused so that products of
/// coordinates stay comfortably inside `i64`.
const COORD_LIMIT: i64 = 1 << 30;

/// A lattice polygon with primitive vertices and the origin in its interior.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FanoPolygon {
    polygon: Polygon,
    ints: Vec<[i64; 2]>,
}

impl fmt::Debug for FanoPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.polygon, f)
    }
}

impl fmt::Display for FanoPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.polygon, f)
    }
}

impl Deref for FanoPolygon {
    type Target = Polygon;
    fn deref(&self) -> &Polygon {
        &self.polygon
    }
}

pub fn is_primitive(v: [i64; 2]) -> bool {
    v[0].gcd(&v[1]) == 1
}

/// Checks the Fano conditions and tags the polygon.
pub fn validate_fano(polygon: Polygon) -> Result<FanoPolygon, GeometryError> {
    if polygon.len() < 3 {
        return Err(GeometryError::NotFullDimensional);
    }
    let mut ints = Vec::with_capacity(polygon.len());
    for v in polygon.vertices() {
        if !v.is_integral() {
            return Err(GeometryError::NonIntegralVertex(Box::new(v.clone())));
        }
        let iv = v
            .to_i64()
            .filter(|c| c[0].abs() < COORD_LIMIT && c[1].abs() < COORD_LIMIT)
            .ok_or_else(|| GeometryError::CoordinateOverflow(Box::new(v.clone())))?;
        if !is_primitive(iv) {
            return Err(GeometryError::NonPrimitiveVertex(Box::new(v.clone())));
        }
        ints.push(iv);
    }
    if !polygon.contains_in_interior(&Point2::origin()) {
        return Err(GeometryError::OriginNotInterior);
    }
    Ok(FanoPolygon { polygon, ints })
}

impl FanoPolygon {
    pub fn from_ints(vertices: &[[i64; 2]]) -> Result<Self, GeometryError> {
        validate_fano(Polygon::from_ints(vertices)?)
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn into_polygon(self) -> Polygon {
        self.polygon
    }

    /// Integer vertices, same order as [`Polygon::vertices`].
    pub fn int_vertices(&self) -> &[[i64; 2]] {
        &self.ints
    }

    pub fn int_edges(&self) -> impl Iterator<Item = ([i64; 2], [i64; 2])> + '_ {
        let n = self.ints.len();
        (0..n).map(move |i| (self.ints[i], self.ints[(i + 1) % n]))
    }

    pub fn dual(&self) -> Polygon {
        dual(self)
    }

    pub fn spanning_fan(&self) -> Vec<Cone2> {
        spanning_fan(self)
    }

    pub fn normal_form(&self) -> FanoPolygon {
        normal_form(self)
    }

    pub fn map(&self, u: &UnimodularMap) -> FanoPolygon {
        validate_fano(self.polygon.map(u)).expect("Fano property is GL2(Z) invariant")
    }
}

/// Polar dual `{u : u(v) >= -1 for all v}` of a polygon containing the
/// origin in its interior. Dual vertex `i` is the one cut out by edge `i`.
pub fn polar(polygon: &Polygon) -> Result<Polygon, GeometryError> {
    if !polygon.contains_in_interior(&Point2::origin()) {
        return Err(GeometryError::OriginNotInterior);
    }
    Ok(Polygon::new(polar_vertices(polygon)).expect("polar of a polygon around the origin is a polygon"))
}

/// The dual vertex of each edge, in the polygon's edge order.
pub fn polar_vertices(polygon: &Polygon) -> Vec<Point2> {
    polygon
        .edges()
        .map(|(p, q)| {
            let det = p.cross(q);
            Point2::new((&p.y - &q.y) / &det, (&q.x - &p.x) / &det)
        })
        .collect()
}

pub fn dual(polygon: &FanoPolygon) -> Polygon {
    polar(polygon.polygon()).expect("Fano polygons contain the origin")
}

/// Two-dimensional cone spanned by primitive lattice vectors, `g1` then `g2`
/// counter-clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cone2 {
    pub g1: [i64; 2],
    pub g2: [i64; 2],
}

impl Cone2 {
    pub fn new(g1: [i64; 2], g2: [i64; 2]) -> Result<Self, SingularityError> {
        for g in [g1, g2] {
            if !is_primitive(g) {
                return Err(SingularityError::NonPrimitiveGenerator(g));
            }
        }
        let det = g1[0] * g2[1] - g1[1] * g2[0];
        if det == 0 {
            return Err(SingularityError::DegenerateCone(g1, g2));
        }
        Ok(if det > 0 {
            Cone2 { g1, g2 }
        } else {
            Cone2 { g1: g2, g2: g1 }
        })
    }

    /// `det(g1, g2) > 0`.
    pub fn det(&self) -> i64 {
        self.g1[0] * self.g2[1] - self.g1[1] * self.g2[0]
    }

    /// Lattice length of the segment `[g1, g2]`.
    pub fn edge_lattice_length(&self) -> i64 {
        (self.g2[0] - self.g1[0]).gcd(&(self.g2[1] - self.g1[1]))
    }

    /// Lattice distance from the origin to the line through `g1, g2`.
    pub fn edge_height(&self) -> i64 {
        self.det() / self.edge_lattice_length()
    }

    /// Primitive inner normal `w` of the edge, with `w(g1) = w(g2) = -height`.
    pub fn inner_normal(&self) -> [i64; 2] {
        let d = [self.g2[0] - self.g1[0], self.g2[1] - self.g1[1]];
        let g = self.edge_lattice_length();
        [-d[1] / g, d[0] / g]
    }
}

/// One cone per edge, in counter-clockwise order.
pub fn spanning_fan(polygon: &FanoPolygon) -> Vec<Cone2> {
    polygon.int_edges().map(|(a, b)| Cone2 { g1: a, g2: b }).collect()
}

pub fn apply_map(map: &UnimodularMap, polygon: &Polygon) -> Polygon {
    polygon.map(map)
}

fn canonical_int_cycle(mut vs: Vec<[i64; 2]>, reversed: bool) -> Vec<[i64; 2]> {
    if reversed {
        vs.reverse();
    }
    let start = vs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    vs.rotate_left(start);
    vs
}

/// Canonical representative of the `GL_2(Z)` orbit.
///
/// Every edge, read in either direction, is moved to Hermite position
/// (first endpoint at `e1`, second at `(x, D)` with `0 <= x < D`); the
/// lexicographically smallest resulting vertex list wins.
pub fn normal_form(polygon: &FanoPolygon) -> FanoPolygon {
    let vs = polygon.int_vertices();
    let n = vs.len();
    let flip = UnimodularMap::new([[1, 0], [0, -1]]).unwrap();
    let mut best: Option<Vec<[i64; 2]>> = None;
    for i in 0..n {
        for (a, b) in [(vs[i], vs[(i + 1) % n]), (vs[(i + 1) % n], vs[i])] {
            let mut u = map_to_e1(a);
            let mut image = u.apply_int(b);
            if image[1] < 0 {
                u = flip.compose(&u);
                image = u.apply_int(b);
            }
            let t = -Integer::div_floor(&image[0], &image[1]);
            let shear = UnimodularMap::new([[1, t], [0, 1]]).unwrap();
            let u = shear.compose(&u);
            let mapped: Vec<[i64; 2]> = vs.iter().map(|&v| u.apply_int(v)).collect();
            let cand = canonical_int_cycle(mapped, u.det() < 0);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let ints = best.expect("polygon has edges");
    let polygon = Polygon::from_ints(&ints).expect("image of a polygon");
    debug_assert_eq!(
        polygon
            .vertices()
            .iter()
            .map(|v| v.to_i64().unwrap())
            .collect::<Vec<_>>(),
        ints
    );
    FanoPolygon { polygon, ints }
}

/// Twice the Euclidean area of the dual, i.e. the anticanonical degree.
pub fn dual_normalized_volume(polygon: &FanoPolygon) -> Rational {
    polygon.dual().normalized_volume()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn fano(v: &[[i64; 2]]) -> FanoPolygon {
        FanoPolygon::from_ints(v).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(FanoPolygon::from_ints(&[[1, 0], [0, 1], [-1, -1]]).is_ok());
        assert_eq!(
            FanoPolygon::from_ints(&[[2, 0], [0, 1], [-1, -1]]),
            Err(GeometryError::NonPrimitiveVertex(Box::new(Point2::int(2, 0))))
        );
        assert_eq!(
            FanoPolygon::from_ints(&[[1, 0], [0, 1], [1, 1]]),
            Err(GeometryError::OriginNotInterior)
        );
        let rational = Polygon::new(vec![
            Point2::int(1, 0),
            Point2::int(0, 1),
            Point2::new(Rational::new(-1, 2), Rational::from(-1)),
        ])
        .unwrap();
        assert!(matches!(
            validate_fano(rational),
            Err(GeometryError::NonIntegralVertex(_))
        ));
        // origin on an edge
        assert_eq!(
            FanoPolygon::from_ints(&[[1, 0], [-1, 0], [0, 1]]),
            Err(GeometryError::OriginNotInterior)
        );
    }

    #[test]
    fn dual_examples() {
        let p2 = fano(&[[1, 0], [0, 1], [-1, -1]]);
        assert_eq!(p2.dual(), Polygon::from_ints(&[[-1, -1], [2, -1], [-1, 2]]).unwrap());
        let q = fano(&[[1, 0], [0, 1], [-1, -4]]);
        let expected = Polygon::new(vec![
            Point2::int(-1, -1),
            Point2::int(5, -1),
            Point2::new(Rational::from(-1), Rational::new(1, 2)),
        ])
        .unwrap();
        assert_eq!(q.dual(), expected);
        let sq = fano(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        assert_eq!(
            sq.dual(),
            Polygon::from_ints(&[[-1, -1], [1, -1], [1, 1], [-1, 1]]).unwrap()
        );
    }

    #[test]
    fn denominator_of_dual_of_p113() {
        let p = fano(&[[1, 0], [0, 1], [-1, -3]]);
        let d = p.dual();
        assert_eq!(d.denominator(), 3);
        assert!(d
            .vertices()
            .contains(&Point2::new(Rational::from(-1), Rational::new(2, 3))));
    }

    #[test]
    fn dual_vertices_follow_edges() {
        let p = fano(&[[1, 0], [1, 1], [-1, 2], [-2, -1], [0, -1]]);
        let duals = polar_vertices(&p);
        for ((a, b), u) in p.edges().zip(&duals) {
            assert_eq!(u.dot(a), Rational::from(-1));
            assert_eq!(u.dot(b), Rational::from(-1));
        }
        // consecutive dual vertices share the vertex between their edges
        let n = duals.len();
        for i in 0..n {
            let shared = &p.vertices()[(i + 1) % n];
            assert_eq!(duals[i].dot(shared), Rational::from(-1));
            assert_eq!(duals[(i + 1) % n].dot(shared), Rational::from(-1));
        }
    }

    #[test]
    fn spanning_fan_examples() {
        let p2 = fano(&[[1, 0], [0, 1], [-1, -1]]);
        let fan = p2.spanning_fan();
        assert_eq!(fan.len(), 3);
        assert!(fan.contains(&Cone2 { g1: [1, 0], g2: [0, 1] }));
        assert!(fan.contains(&Cone2 {
            g1: [0, 1],
            g2: [-1, -1]
        }));
        assert!(fan.contains(&Cone2 {
            g1: [-1, -1],
            g2: [1, 0]
        }));
        let q = fano(&[[1, 0], [0, 1], [-1, -4]]);
        assert!(q.spanning_fan().contains(&Cone2 {
            g1: [-1, -4],
            g2: [1, 0]
        }));
        let sq = fano(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        assert_eq!(sq.spanning_fan().len(), 4);
        for c in sq.spanning_fan() {
            assert!(c.det() > 0);
        }
    }

    #[test]
    fn cone_geometry() {
        let c = Cone2::new([0, 1], [12, -7]).unwrap();
        assert_eq!(c.det(), 12);
        assert_eq!(c.edge_height(), 3);
        assert_eq!(c.edge_lattice_length(), 4);
        let w = c.inner_normal();
        assert_eq!(w[0] * c.g1[0] + w[1] * c.g1[1], -3);
        assert_eq!(w[0] * c.g2[0] + w[1] * c.g2[1], -3);
        assert!(Cone2::new([1, 0], [-2, 0]).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let p2 = fano(&[[1, 0], [0, 1], [-1, -1]]);
        let u = UnimodularMap::new([[1, 1], [0, 1]]).unwrap();
        assert_eq!(normal_form(&p2.map(&u)), normal_form(&p2));
        let q = fano(&[[1, 0], [0, 1], [-1, -4]]);
        assert_ne!(normal_form(&p2), normal_form(&q));
        let nf = normal_form(&q);
        assert_eq!(normal_form(&nf), nf);
    }

    #[test]
    fn apply_map_scissor_move() {
        // The top cell of the partition of the dual of P^2 along u1 + 2 u2 = 0
        // is sent onto the remaining part of the dual of P(1,1,4).
        let dual_p2 = Polygon::from_ints(&[[-1, -1], [2, -1], [-1, 2]]).unwrap();
        let top = Polygon::hull(dual_p2.clip(&Point2::int(1, 2), &Rational::zero())).unwrap();
        let u = UnimodularMap::from_columns([3, -1], [4, -1]).unwrap();
        let moved = apply_map(&u, &top);
        let bottom = Polygon::hull(dual_p2.clip(&Point2::int(-1, -2), &Rational::zero())).unwrap();
        let glued = Polygon::hull(moved.vertices().iter().chain(bottom.vertices()).cloned()).unwrap();
        let target = fano(&[[1, 0], [0, 1], [-1, -4]]).dual();
        assert_eq!(glued, target);
        assert_eq!(moved.area() + bottom.area(), target.area());
    }
}
