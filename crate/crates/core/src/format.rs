//! JSON interchange formats.
//!
//! Polygons are `{"vertices": [["p/q", "r/s"], ...]}`. Parsing happens in two
//! phases so callers can tell malformed input (bad JSON, bad rationals,
//! degenerate vertex lists) apart from a well-formed polygon that is not Fano.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, FormatError};
use crate::fano::{validate_fano, FanoPolygon};
use crate::geometry::{Point2, Polygon};
use crate::rational::Rational;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonJson {
    vertices: Vec<[Rational; 2]>,
}

impl From<&Polygon> for PolygonJson {
    fn from(p: &Polygon) -> Self {
        PolygonJson {
            vertices: p.vertices().iter().cloned().map(Into::into).collect(),
        }
    }
}

impl Serialize for Polygon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolygonJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = PolygonJson::deserialize(deserializer)?;
        Polygon::new(json.vertices.into_iter().map(Point2::from).collect()).map_err(serde::de::Error::custom)
    }
}

impl Serialize for FanoPolygon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.polygon().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FanoPolygon {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        validate_fano(Polygon::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// First phase: JSON syntax, rational strings and polygon invariants.
pub fn parse_polygon(text: &str) -> Result<Polygon, Error> {
    let json: PolygonJson = serde_json::from_str(text).map_err(FormatError::from)?;
    Ok(Polygon::new(json.vertices.into_iter().map(Point2::from).collect())?)
}

/// Both phases at once. Callers that must tell a malformed polygon from a
/// non-Fano one call [`parse_polygon`] and [`validate_fano`] separately.
pub fn parse_fano(text: &str) -> Result<FanoPolygon, Error> {
    Ok(validate_fano(parse_polygon(text)?)?)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("serializing in-memory values cannot fail")
}

pub fn to_json_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializing in-memory values cannot fail")
}

/// Baskets as sorted multiplicity strings, e.g. `["2 x 1/4(1,3)", "1 x 1/8(1,3)"]`.
pub mod basket_strings {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::singularity::{multiset_strings, QuotientSingularity};

    pub fn serialize<S: Serializer>(basket: &[QuotientSingularity], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(multiset_strings(basket))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<QuotientSingularity>, D::Error> {
        let mut out = Vec::new();
        for entry in Vec::<String>::deserialize(deserializer)? {
            let (count, s) = entry
                .split_once(" x ")
                .ok_or_else(|| D::Error::custom(format!("malformed basket entry {entry:?}")))?;
            let count: usize = count
                .parse()
                .map_err(|_| D::Error::custom(format!("malformed multiplicity in {entry:?}")))?;
            if count == 0 {
                return Err(D::Error::custom(format!("zero multiplicity in {entry:?}")));
            }
            let s: QuotientSingularity = s.parse().map_err(D::Error::custom)?;
            out.extend(std::iter::repeat_n(s, count));
        }
        out.sort_by_key(QuotientSingularity::sort_key);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singularity::QuotientSingularity;

    #[test]
    fn polygon_round_trip() {
        let text = r#"{"vertices":[["5","-1"],["-1","1/2"],["-1","-1"]]}"#;
        let p = parse_polygon(text).unwrap();
        assert_eq!(p.denominator(), 2);
        let out = to_json(&p);
        assert_eq!(out, r#"{"vertices":[["-1","-1"],["5","-1"],["-1","1/2"]]}"#);
        assert_eq!(parse_polygon(&out).unwrap(), p);
    }

    #[test]
    fn strict_rationals() {
        let e = parse_polygon(r#"{"vertices":[["2/4","0"],["0","1"],["-1","-1"]]}"#).unwrap_err();
        assert!(e.to_string().contains("lowest terms"), "{e}");
        assert!(parse_polygon(r#"{"vertices":[["1/0","0"],["0","1"],["-1","-1"]]}"#).is_err());
        assert!(parse_polygon(r#"{"vertices":[["1","0"],["0","1"],["-1","-1"]],"x":1}"#).is_err());
        assert!(parse_polygon(r#"{"vertices":[[1,0],[0,1],[-1,-1]]}"#).is_err());
    }

    #[test]
    fn two_phases() {
        let e = parse_fano(r#"{"vertices":[["1","0"],["0","1"],["1","1"]]}"#).unwrap_err();
        assert!(matches!(e, Error::Geometry(_)));
        let e = parse_fano(r#"{"vertices":[["1","0"],["0","1"],["-1"]]}"#).unwrap_err();
        assert!(matches!(e, Error::Format(_)));
        let e = parse_fano(r#"{"vertices":[["1","0"],["2","0"],["3","0"]]}"#).unwrap_err();
        assert!(matches!(e, Error::Geometry(_)));
    }

    #[derive(Serialize, Deserialize)]
    struct Wrap {
        #[serde(with = "basket_strings")]
        b: Vec<QuotientSingularity>,
    }

    #[test]
    fn baskets() {
        let q = |r, a| QuotientSingularity::new(r, a).unwrap();
        let w = Wrap {
            b: vec![q(8, 3), q(4, 3), q(4, 3)],
        };
        let text = to_json(&w);
        assert_eq!(text, r#"{"b":["2 x 1/4(1,3)","1 x 1/8(1,3)"]}"#);
        let back: Wrap = serde_json::from_str(&text).unwrap();
        assert_eq!(back.b, vec![q(4, 3), q(4, 3), q(8, 3)]);
        assert!(serde_json::from_str::<Wrap>(r#"{"b":["0 x 1/3(1,1)"]}"#).is_err());
        assert!(serde_json::from_str::<Wrap>(r#"{"b":["1 x 1/5(1,3)"]}"#).is_err());
    }
}
