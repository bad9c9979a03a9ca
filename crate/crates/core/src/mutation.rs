//! Mutations of Fano polygons with segment factors, the induced
//! piecewise-linear map on the dual, and exploration of mutation graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, MutationError};
use crate::fano::{is_primitive, validate_fano, FanoPolygon};
use crate::geometry::{ext_gcd, Point2, Polygon, UnimodularMap};
use crate::rational::Rational;
use crate::singularity::{classify_cone, residue};

/// Mutation data `(w, F)` with `F = conv{0, m f}` and `w(f) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MutationDataJson", into = "MutationDataJson")]
pub struct MutationData {
    w: [i64; 2],
    f: [i64; 2],
    m: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MutationDataJson {
    w: [Rational; 2],
    f: [Rational; 2],
    m: u64,
}

impl TryFrom<MutationDataJson> for MutationData {
    type Error = String;
    fn try_from(j: MutationDataJson) -> Result<Self, String> {
        let to_int = |r: &Rational| -> Result<i64, String> {
            r.to_integer()
                .and_then(|i| i64::try_from(i).ok())
                .ok_or_else(|| format!("mutation data entry {r} is not a machine integer"))
        };
        MutationData::new(
            [to_int(&j.w[0])?, to_int(&j.w[1])?],
            [to_int(&j.f[0])?, to_int(&j.f[1])?],
            j.m,
        )
        .map_err(|e| e.to_string())
    }
}

impl From<MutationData> for MutationDataJson {
    fn from(d: MutationData) -> Self {
        MutationDataJson {
            w: d.w.map(Rational::from),
            f: d.f.map(Rational::from),
            m: d.m,
        }
    }
}

impl MutationData {
    pub fn new(w: [i64; 2], f: [i64; 2], m: u64) -> Result<Self, MutationError> {
        if !is_primitive(w) {
            return Err(MutationError::NonPrimitiveCovector(w[0], w[1]));
        }
        if !is_primitive(f) {
            return Err(MutationError::NonPrimitiveDirection(f[0], f[1]));
        }
        if w[0] * f[0] + w[1] * f[1] != 0 {
            return Err(MutationError::DirectionNotOrthogonal);
        }
        if m == 0 {
            return Err(MutationError::ZeroLength);
        }
        Ok(MutationData { w, f, m })
    }

    pub fn w(&self) -> [i64; 2] {
        self.w
    }

    pub fn f(&self) -> [i64; 2] {
        self.f
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// The data `(-w, F)` undoing this mutation.
    pub fn inverse(&self) -> MutationData {
        MutationData {
            w: [-self.w[0], -self.w[1]],
            ..*self
        }
    }

    /// Data transported by a unimodular map `U` acting on `N`: `f ↦ U f`,
    /// `w ↦ w U^-1`.
    pub fn transform(&self, u: &UnimodularMap) -> MutationData {
        let inv = u.inverse().matrix();
        let w = [
            self.w[0] * inv[0][0] + self.w[1] * inv[1][0],
            self.w[0] * inv[0][1] + self.w[1] * inv[1][1],
        ];
        MutationData {
            w,
            f: u.apply_int(self.f),
            m: self.m,
        }
    }
}

fn height(w: [i64; 2], v: [i64; 2]) -> i64 {
    w[0] * v[0] + w[1] * v[1]
}

/// Lattice points of height `h` are `base(h) + t f` for integer `t`.
#[derive(Clone, Copy, Debug)]
struct Slicer {
    f: [i64; 2],
    unit: [i64; 2],
}

impl Slicer {
    fn new(w: [i64; 2], f: [i64; 2]) -> Self {
        let (_, s, t) = ext_gcd(w[0], w[1]);
        Slicer { f, unit: [s, t] }
    }

    fn base(&self, h: i64) -> [i64; 2] {
        [h * self.unit[0], h * self.unit[1]]
    }

    fn point(&self, h: i64, t: i64) -> [i64; 2] {
        let b = self.base(h);
        [b[0] + t * self.f[0], b[1] + t * self.f[1]]
    }

    /// The parameter `t` of a lattice point at height `h`.
    fn param(&self, h: i64, p: [i64; 2]) -> i64 {
        let b = self.base(h);
        if self.f[0] != 0 {
            (p[0] - b[0]) / self.f[0]
        } else {
            (p[1] - b[1]) / self.f[1]
        }
    }

    /// Integer range of `t` with `base(h) + t f` in the polygon.
    fn slice(&self, polygon: &FanoPolygon, h: i64) -> Option<(i64, i64)> {
        let x0 = self.base(h);
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for (p, q) in polygon.int_edges() {
            let e = [(q[0] - p[0]) as i128, (q[1] - p[1]) as i128];
            let alpha = e[0] * (x0[1] - p[1]) as i128 - e[1] * (x0[0] - p[0]) as i128;
            let beta = e[0] * self.f[1] as i128 - e[1] * self.f[0] as i128;
            if beta > 0 {
                lo = lo.max(-Integer::div_floor(&alpha, &beta) as i64);
            } else if beta < 0 {
                hi = hi.min(Integer::div_floor(&alpha, &(-beta)) as i64);
            } else if alpha < 0 {
                return None;
            }
        }
        (lo <= hi).then_some((lo, hi))
    }
}

/// `R_h` for every negative height `h_min <= h < 0`, in increasing `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorWitness {
    pub slices: Vec<WitnessSlice>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSlice {
    pub height: i64,
    /// Endpoints of the lattice segment `R_h`; equal endpoints for a point.
    pub segment: Option<([i64; 2], [i64; 2])>,
}

impl FactorWitness {
    pub fn get(&self, h: i64) -> Option<&WitnessSlice> {
        self.slices.iter().find(|s| s.height == h)
    }
}

fn min_height(polygon: &FanoPolygon, w: [i64; 2]) -> i64 {
    polygon.int_vertices().iter().map(|&v| height(w, v)).min().unwrap()
}

fn max_height(polygon: &FanoPolygon, w: [i64; 2]) -> i64 {
    polygon.int_vertices().iter().map(|&v| height(w, v)).max().unwrap()
}

/// Checks that `F` is a factor of `P` with respect to `w`, taking each `R_h`
/// to be the largest Minkowski difference `w_h(P) ⊖ |h|F`.
pub fn validate_factor(polygon: &FanoPolygon, data: &MutationData) -> Result<FactorWitness, MutationError> {
    let slicer = Slicer::new(data.w, data.f);
    let m = data.m as i64;
    let mut slices = Vec::new();
    for h in min_height(polygon, data.w)..0 {
        let need = polygon.int_vertices().iter().any(|&v| height(data.w, v) == h);
        let stretch = -h * m;
        let segment = match slicer.slice(polygon, h) {
            Some((a, b)) if b - a >= stretch => Some((slicer.point(h, a), slicer.point(h, b - stretch))),
            _ if need => return Err(MutationError::FactorTooLong(h)),
            _ => None,
        };
        slices.push(WitnessSlice { height: h, segment });
    }
    let witness = FactorWitness { slices };
    check_witness(polygon, data, &witness)?;
    Ok(witness)
}

/// The factor condition `H_{w,h} ∩ V(P) ⊆ R_h + |h|F ⊆ w_h(P)` for a given
/// witness.
pub fn check_witness(polygon: &FanoPolygon, data: &MutationData, witness: &FactorWitness) -> Result<(), MutationError> {
    let slicer = Slicer::new(data.w, data.f);
    let m = data.m as i64;
    for h in min_height(polygon, data.w)..0 {
        let slice = witness.get(h).ok_or(MutationError::MissingWitness(h))?;
        let covered = match slice.segment {
            None => None,
            Some((p, q)) => {
                if height(data.w, p) != h || height(data.w, q) != h {
                    return Err(MutationError::FactorTooLong(h));
                }
                let (a, b) = (slicer.param(h, p), slicer.param(h, q));
                if slicer.point(h, a) != p || slicer.point(h, b) != q || a > b {
                    return Err(MutationError::FactorTooLong(h));
                }
                let sum = (a, b - h * m);
                match slicer.slice(polygon, h) {
                    Some((lo, hi)) if lo <= sum.0 && sum.1 <= hi => Some(sum),
                    _ => return Err(MutationError::FactorTooLong(h)),
                }
            }
        };
        for &v in polygon.int_vertices() {
            if height(data.w, v) == h {
                let t = slicer.param(h, v);
                if !covered.is_some_and(|(a, b)| a <= t && t <= b) {
                    return Err(MutationError::VertexNotCovered(h, v));
                }
            }
        }
    }
    Ok(())
}

fn build_mutant(
    polygon: &FanoPolygon,
    w: [i64; 2],
    f: [i64; 2],
    m: i64,
    negative: impl Fn(i64) -> Option<([i64; 2], [i64; 2])>,
) -> Result<FanoPolygon, MutationError> {
    let slicer = Slicer::new(w, f);
    let mut points: Vec<Point2> = Vec::new();
    for h in min_height(polygon, w)..0 {
        if let Some((p, q)) = negative(h) {
            points.push(p.into());
            points.push(q.into());
        }
    }
    for h in 0..=max_height(polygon, w) {
        if let Some((a, b)) = slicer.slice(polygon, h) {
            points.push(slicer.point(h, a).into());
            points.push(slicer.point(h, b + h * m).into());
        }
    }
    Ok(validate_fano(Polygon::hull(points)?)?)
}

/// The mutation of `P` with respect to `(w, F)`, as the exact convex hull
/// (not normalised; see [`FanoPolygon::normal_form`]).
pub fn mutate(polygon: &FanoPolygon, data: &MutationData) -> Result<FanoPolygon, MutationError> {
    let witness = validate_factor(polygon, data)?;
    mutate_with_witness(polygon, data, &witness)
}

/// Mutation using a caller-supplied choice of `R_h`.
pub fn mutate_with_witness(
    polygon: &FanoPolygon,
    data: &MutationData,
    witness: &FactorWitness,
) -> Result<FanoPolygon, MutationError> {
    check_witness(polygon, data, witness)?;
    build_mutant(polygon, data.w, data.f, data.m as i64, |h| {
        witness.get(h).and_then(|s| s.segment)
    })
}

/// Mutation with a zero-dimensional factor `F = {0}`; always returns `P`.
pub fn mutate_point_factor(polygon: &FanoPolygon, w: [i64; 2]) -> Result<FanoPolygon, MutationError> {
    if !is_primitive(w) {
        return Err(MutationError::NonPrimitiveCovector(w[0], w[1]));
    }
    let f = [-w[1], w[0]];
    let slicer = Slicer::new(w, f);
    build_mutant(polygon, w, f, 0, |h| {
        slicer
            .slice(polygon, h)
            .map(|(a, b)| (slicer.point(h, a), slicer.point(h, b)))
    })
}

/// A region of `M_Q`: `{u : u · normal >= 0}`, or everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub normal: Option<[i64; 2]>,
}

impl Chamber {
    pub fn contains(&self, u: &Point2) -> bool {
        self.normal.is_none_or(|n| !u.dot(&Point2::from(n)).is_negative())
    }
}

/// Linear action on row vectors `u ∈ M`, stored as `u ↦ A u` on columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseMap {
    pub pieces: Vec<(Chamber, UnimodularMap)>,
}

impl PiecewiseMap {
    pub fn identity() -> Self {
        PiecewiseMap {
            pieces: vec![(Chamber { normal: None }, UnimodularMap::IDENTITY)],
        }
    }

    pub fn apply(&self, u: &Point2) -> Point2 {
        let (_, map) = self
            .pieces
            .iter()
            .find(|(c, _)| c.contains(u))
            .expect("chambers cover the plane");
        map.apply(u)
    }
}

/// `u ↦ u - u_min w` with `u_min = min(0, m u(f))`: the identity where
/// `u(f) >= 0` and the shear `u ↦ u - m u(f) w` where `u(f) <= 0`.
pub fn dual_map(data: &MutationData) -> PiecewiseMap {
    let (w, f, m) = (data.w, data.f, data.m as i64);
    let mut a = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            a[i][j] = i64::from(i == j) - m * w[i] * f[j];
        }
    }
    let shear = UnimodularMap::new(a).expect("w(f) = 0 gives determinant one");
    PiecewiseMap {
        pieces: vec![
            (Chamber { normal: Some(f) }, UnimodularMap::IDENTITY),
            (
                Chamber {
                    normal: Some([-f[0], -f[1]]),
                },
                shear,
            ),
        ],
    }
}

/// Image of a polygon under a piecewise map: split along the walls, map each
/// piece and glue.
pub fn apply_dual_map(map: &PiecewiseMap, polygon: &Polygon) -> Result<Polygon, MutationError> {
    let mut points = Vec::new();
    let mut piece_area = Rational::zero();
    for (chamber, u) in &map.pieces {
        let piece = match chamber.normal {
            Some(n) => polygon.clip(&Point2::from(n), &Rational::zero()),
            None => polygon.vertices().to_vec(),
        };
        if let Ok(p) = Polygon::hull(piece.iter().cloned()) {
            piece_area = piece_area + p.area();
        }
        points.extend(piece.iter().map(|p| u.apply(p)));
    }
    let image = Polygon::hull(points).map_err(|e| match e {
        GeometryError::NotFullDimensional => MutationError::NonConvexImage,
        e => e.into(),
    })?;
    if image.area() != piece_area {
        return Err(MutationError::NonConvexImage);
    }
    Ok(image)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Neighbor {
    pub data: MutationData,
    pub polygon: FanoPolygon,
}

/// Mutations removing (part of) the T-part of each edge.
///
/// For an edge at height `ℓ` with `d >= 1` the factor is a segment parallel
/// to the edge of each length `1..=d`; results are in normal form.
pub fn mutation_neighbors(polygon: &FanoPolygon) -> Vec<(MutationData, FanoPolygon)> {
    let mut out = Vec::new();
    for cone in polygon.spanning_fan() {
        let data = classify_cone(&cone)
            .and_then(|s| residue(&s))
            .expect("fan cones are valid");
        if data.d == 0 {
            continue;
        }
        let w = cone.inner_normal();
        let e = [cone.g2[0] - cone.g1[0], cone.g2[1] - cone.g1[1]];
        let g = e[0].gcd(&e[1]);
        let f = [e[0] / g, e[1] / g];
        for m in 1..=data.d {
            let md = MutationData::new(w, f, m).expect("edge normal and direction are valid");
            if let Ok(q) = mutate(polygon, &md) {
                out.push((md, q.normal_form()));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub data: MutationData,
}

/// Nodes are normal forms sorted ascending; edge data is expressed in the
/// source node's coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MutationGraph {
    pub nodes: Vec<FanoPolygon>,
    pub edges: Vec<GraphEdge>,
}

impl MutationGraph {
    pub fn index_of(&self, polygon: &FanoPolygon) -> Option<usize> {
        self.nodes.binary_search(&polygon.normal_form()).ok()
    }
}

/// Breadth-first closure of [`mutation_neighbors`] up to `depth` steps.
pub fn mutation_graph(polygon: &FanoPolygon, depth: usize) -> MutationGraph {
    let start = polygon.normal_form();
    let mut dist: BTreeMap<FanoPolygon, usize> = BTreeMap::new();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    let mut raw_edges: BTreeSet<(FanoPolygon, FanoPolygon, MutationData)> = BTreeSet::new();
    while let Some(node) = queue.pop_front() {
        let d = dist[&node];
        if d >= depth {
            continue;
        }
        for (data, next) in mutation_neighbors(&node) {
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next.clone());
            }
            raw_edges.insert((node.clone(), next, data));
        }
    }
    let nodes: Vec<FanoPolygon> = dist.into_keys().collect();
    let index = |p: &FanoPolygon| nodes.binary_search(p).expect("edge endpoints are nodes");
    let edges = raw_edges
        .iter()
        .map(|(s, t, data)| GraphEdge {
            source: index(s),
            target: index(t),
            data: *data,
        })
        .collect();
    MutationGraph { nodes, edges }
}
