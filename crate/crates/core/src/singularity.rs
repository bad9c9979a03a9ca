//! Cyclic quotient singularities `1/R(1,A)` of the cones over the edges of a
//! Fano polygon: local index, width, T/R classification, residues and the
//! singularity content.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{FormatError, SingularityError};
use crate::fano::{Cone2, FanoPolygon};
use crate::geometry::{map_to_e1, UnimodularMap};

/// Modular inverse of `a` mod `m` (`gcd(a, m) = 1`, `m >= 1`).
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// A cyclic quotient singularity `1/R(1,A)` with the weight in canonical
/// form `A = min(A, A^-1 mod R)`; the smooth point is `1/1(1,0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientSingularity {
    order: u64,
    weight: u64,
}

impl QuotientSingularity {
    pub fn new(order: u64, weight: u64) -> Result<Self, SingularityError> {
        if order == 0 {
            return Err(SingularityError::NotWellFormed(order, weight));
        }
        if order == 1 {
            return Ok(QuotientSingularity { order: 1, weight: 0 });
        }
        let a = weight % order;
        let inv = mod_inverse(a, order).ok_or(SingularityError::NotWellFormed(order, weight))?;
        Ok(QuotientSingularity {
            order,
            weight: a.min(inv),
        })
    }

    pub fn smooth() -> Self {
        QuotientSingularity { order: 1, weight: 0 }
    }

    /// `R`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Canonical `A`.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn is_smooth(&self) -> bool {
        self.order == 1
    }

    pub fn local_index(&self) -> u64 {
        index_width(self).0
    }

    pub fn width(&self) -> u64 {
        index_width(self).1
    }

    /// The model cone `cone(e2, R e1 - A e2)`, generators in that order.
    pub fn model_generators(&self) -> ([i64; 2], [i64; 2]) {
        ([0, 1], [self.order as i64, -(self.weight as i64)])
    }

    /// Ordering used for deterministic basket processing: `(ℓ, R, A)`.
    pub fn sort_key(&self) -> (u64, u64, u64) {
        (self.local_index(), self.order, self.weight)
    }
}

impl fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.order, self.weight)
    }
}

impl fmt::Debug for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuotientSingularity {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FormatError::Json(format!("malformed singularity {s:?}"));
        let rest = s.strip_prefix("1/").ok_or_else(bad)?;
        let (order, rest) = rest.split_once("(1,").ok_or_else(bad)?;
        let weight = rest.strip_suffix(')').ok_or_else(bad)?;
        let order: u64 = order.parse().map_err(|_| bad())?;
        let weight: u64 = weight.parse().map_err(|_| bad())?;
        let q = QuotientSingularity::new(order, weight).map_err(|_| bad())?;
        if q.weight != weight {
            return Err(bad());
        }
        Ok(q)
    }
}

impl Serialize for QuotientSingularity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuotientSingularity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Classifies a cone as `1/R(1,A)`.
///
/// `g1` is moved to `e2`; the image of `g2` is then `(R, y)` and the shears
/// fixing `e2` reduce `y` to `-A` with `0 <= A < R`.
pub fn classify_cone(cone: &Cone2) -> Result<QuotientSingularity, SingularityError> {
    let cone = Cone2::new(cone.g1, cone.g2)?;
    let order = cone.det();
    let to_e2 = UnimodularMap::SWAP.compose(&map_to_e1(cone.g1));
    let mut image = to_e2.apply_int(cone.g2);
    if image[0] < 0 {
        image[0] = -image[0];
    }
    debug_assert_eq!(image[0], order);
    let weight = (-image[1]).rem_euclid(order);
    QuotientSingularity::new(order as u64, weight as u64)
}

/// `(ℓ, k) = (R / gcd(R, A+1), gcd(R, A+1))`.
pub fn index_width(s: &QuotientSingularity) -> (u64, u64) {
    let k = s.order.gcd(&(s.weight + 1));
    (s.order / k, k)
}

/// Width divisible by the local index.
pub fn is_t(s: &QuotientSingularity) -> bool {
    let (l, k) = index_width(s);
    k % l == 0
}

/// Width strictly less than the local index.
pub fn is_r(s: &QuotientSingularity) -> bool {
    let (l, k) = index_width(s);
    k < l
}

/// Local data of one cone: `k = d ℓ + ρ` and the residue when `ρ ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityData {
    #[serde(rename = "type")]
    pub singularity: QuotientSingularity,
    pub local_index: u64,
    pub width: u64,
    pub d: u64,
    pub remainder: u64,
    pub residue: Option<QuotientSingularity>,
}

impl SingularityData {
    pub fn is_t(&self) -> bool {
        self.remainder == 0
    }
}

pub fn residue(s: &QuotientSingularity) -> Result<SingularityData, SingularityError> {
    let (l, k) = index_width(s);
    let (d, rho) = k.div_rem(&l);
    let residue = if rho == 0 {
        None
    } else {
        let c = s.weight + 1;
        if !(rho * c).is_multiple_of(k) {
            return Err(SingularityError::NonIntegralResidue(*s));
        }
        let order = rho * l;
        // rho c / k >= 1, so the weight is non-negative before reduction.
        let weight = (rho * c / k - 1) % order;
        Some(QuotientSingularity::new(order, weight)?)
    };
    Ok(SingularityData {
        singularity: *s,
        local_index: l,
        width: k,
        d,
        remainder: rho,
        residue,
    })
}

/// `(Σ d_i, basket, local indices of every cone)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityContent {
    pub total_d: u64,
    /// Sorted by `(ℓ, R, A)`.
    #[serde(with = "crate::format::basket_strings")]
    pub basket: Vec<QuotientSingularity>,
    /// Sorted ascending.
    pub t_indices: Vec<u64>,
}

/// Local data for every cone of the spanning fan, in edge order.
pub fn cone_data(polygon: &FanoPolygon) -> Result<Vec<SingularityData>, SingularityError> {
    polygon
        .spanning_fan()
        .iter()
        .map(|c| residue(&classify_cone(c)?))
        .collect()
}

pub fn singularity_content(polygon: &FanoPolygon) -> Result<SingularityContent, SingularityError> {
    let data = cone_data(polygon)?;
    let total_d = data.iter().map(|s| s.d).sum();
    let mut basket: Vec<QuotientSingularity> = data.iter().filter_map(|s| s.residue).collect();
    basket.sort_by_key(QuotientSingularity::sort_key);
    let mut t_indices: Vec<u64> = data.iter().map(|s| s.local_index).collect();
    t_indices.sort_unstable();
    Ok(SingularityContent {
        total_d,
        basket,
        t_indices,
    })
}

/// Lcm of the local indices of all cones.
pub fn gorenstein_index(polygon: &FanoPolygon) -> Result<u64, SingularityError> {
    Ok(cone_data(polygon)?.iter().fold(1, |acc, s| acc.lcm(&s.local_index)))
}

/// Multiset rendering: `"m x 1/R(1,A)"`, sorted by `(R, A)`.
pub fn multiset_strings(items: &[QuotientSingularity]) -> Vec<String> {
    let mut counts: BTreeMap<QuotientSingularity, usize> = BTreeMap::new();
    for s in items {
        *counts.entry(*s).or_default() += 1;
    }
    counts.iter().map(|(s, m)| format!("{m} x {s}")).collect()
}
