//! Quasi-period and denominator of the dual of a Fano polygon, predicted
//! from its singularity content and compared with direct measurement.
//!
//! The Ehrhart series of `P^∨` splits into a smooth part fixed by the degree
//! `K^2 = Vol(P^∨)` and a periodic correction coming from the basket.
//! Pairs of R-singularities whose cones glue to a T-cone contribute nothing
//! to the correction; removing them leaves the reduced basket, whose local
//! indices govern the quasi-period. The denominator additionally sees every
//! cone's local index.

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::ehrhart::{quasi_period, quasi_polynomial_with, PointCounter, QuasiPolynomial};
use crate::error::{CollapseError, SingularityError};
use crate::fano::{Cone2, FanoPolygon};
use crate::format::basket_strings;
use crate::geometry::Polygon;
use crate::rational::Rational;
use crate::singularity::{
    classify_cone, index_width, is_r, singularity_content, QuotientSingularity, SingularityContent,
};

fn lcm_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(1, |acc, v| acc.lcm(&v))
}

/// The polynomial part `(K²/2)k² + (K²/2)k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothPart {
    pub degree: Rational,
}

impl SmoothPart {
    pub fn value(&self, k: u64) -> Rational {
        let half = &self.degree / &Rational::from(2);
        let kr = Rational::from(k as i64);
        &(&(&half * &kr) * &kr) + &(&(&half * &kr) + &Rational::one())
    }
}

/// `K² = 2 area(P^∨)`, checked against the fitted leading coefficient.
pub fn smooth_part(polygon: &FanoPolygon) -> Result<SmoothPart, CollapseError> {
    let dual = polygon.dual();
    let counter = PointCounter::new(&dual);
    let qp = quasi_polynomial_with(&counter, dual.denominator())?;
    smooth_part_with(polygon, &qp)
}

pub fn smooth_part_with(polygon: &FanoPolygon, qp: &QuasiPolynomial) -> Result<SmoothPart, CollapseError> {
    let degree = polygon.dual().normalized_volume();
    for [c2, _, _] in qp.constituents() {
        let twice = c2 * &Rational::from(2);
        if twice != degree {
            return Err(CollapseError::LeadingCoefficientMismatch {
                leading: c2.to_string(),
                degree: degree.to_string(),
            });
        }
    }
    Ok(SmoothPart { degree })
}

/// One period of `c(k) = L_{P^∨}(k) - smooth(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionFunction {
    pub period: u64,
    pub values: Vec<Rational>,
}

impl CorrectionFunction {
    pub fn at(&self, k: u64) -> &Rational {
        &self.values[(k % self.period) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }

    pub fn minimal_period(&self) -> u64 {
        let r = self.period;
        (1..=r)
            .filter(|s| r.is_multiple_of(*s))
            .find(|&s| (0..r).all(|i| self.values[i as usize] == self.values[(i % s) as usize]))
            .unwrap_or(r)
    }
}

pub fn correction(polygon: &FanoPolygon) -> Result<CorrectionFunction, CollapseError> {
    let dual = polygon.dual();
    correction_with(
        &PointCounter::new(&dual),
        dual.denominator(),
        &SmoothPart {
            degree: dual.normalized_volume(),
        },
    )
}

fn correction_with(counter: &PointCounter, r: u64, smooth: &SmoothPart) -> Result<CorrectionFunction, CollapseError> {
    let c = |k: u64| Rational::from(counter.count(k) as i64) - smooth.value(k);
    let values: Vec<Rational> = (0..r).map(c).collect();
    for k in r..2 * r {
        if c(k) != values[(k - r) as usize] {
            return Err(CollapseError::NotPeriodic(r));
        }
    }
    Ok(CorrectionFunction { period: r, values })
}

/// The R-singularity whose cone, glued onto the cone of `s` along a
/// generator, completes the edge to a T-cone of width `ℓ` at height `ℓ`.
pub fn complementary_type(s: &QuotientSingularity) -> Result<QuotientSingularity, SingularityError> {
    if !is_r(s) {
        return Err(SingularityError::NotR(*s));
    }
    let (l, k) = index_width(s);
    let (g1, g2) = s.model_generators();
    let steps = (l - k) as i64;
    let k = k as i64;
    let step = [(g2[0] - g1[0]) / k, (g2[1] - g1[1]) / k];
    let g3 = [g2[0] + steps * step[0], g2[1] + steps * step[1]];
    classify_cone(&Cone2::new(g2, g3)?)
}

/// `reduced ⊎ invisible = basket`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasketSplit {
    pub reduced: Vec<QuotientSingularity>,
    pub invisible: Vec<(QuotientSingularity, QuotientSingularity)>,
    /// `true` when no cancelling tuple can remain inside `reduced`.
    pub pairing_complete: bool,
}

/// Greedily removes complementary pairs, in `(ℓ, R, A)` order.
pub fn split_basket(basket: &[QuotientSingularity]) -> Result<BasketSplit, SingularityError> {
    let mut rest: Vec<QuotientSingularity> = basket.to_vec();
    rest.sort_by_key(QuotientSingularity::sort_key);
    rest.reverse();
    let mut reduced = Vec::new();
    let mut invisible = Vec::new();
    while let Some(s) = rest.pop() {
        let partner = complementary_type(&s)?;
        match rest.iter().rposition(|t| *t == partner) {
            Some(i) => {
                rest.remove(i);
                invisible.push((s, partner));
            }
            None => reduced.push(s),
        }
    }
    let pairing_complete = no_cancelling_tuple_possible(&reduced);
    Ok(BasketSplit {
        reduced,
        invisible,
        pairing_complete,
    })
}

fn prime_power_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Sufficient test that no sub-multiset of `basket` cancels.
///
/// Each correction term is periodic with minimal period its local index `ℓ`,
/// so for every prime power `q ∥ ℓ` it has a non-zero Fourier mode whose
/// order is divisible by `q`. A member can only lie in a cancelling tuple if
/// every such `q` also divides the local index of another member of that
/// tuple. Members failing this are discarded until nothing changes; an empty
/// result rules out every cancelling tuple.
pub fn no_cancelling_tuple_possible(basket: &[QuotientSingularity]) -> bool {
    let mut live: Vec<u64> = basket.iter().map(QuotientSingularity::local_index).collect();
    loop {
        let keep: Vec<bool> = (0..live.len())
            .map(|i| {
                prime_power_factors(live[i])
                    .iter()
                    .all(|q| live.iter().enumerate().any(|(j, l)| j != i && l % q == 0))
            })
            .collect();
        if keep.iter().all(|&k| k) {
            break;
        }
        live = live.into_iter().zip(keep).filter_map(|(l, k)| k.then_some(l)).collect();
    }
    live.is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Measured {
    pub pi: u64,
    pub r: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Predicted {
    pub pi: u64,
    pub r: u64,
    pub discrepancy: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollapseReport {
    pub measured: Measured,
    pub predicted: Predicted,
    pub content: SingularityContent,
    #[serde(with = "basket_strings")]
    pub reduced_basket: Vec<QuotientSingularity>,
    pub invisible_pairs: Vec<(QuotientSingularity, QuotientSingularity)>,
    pub t_indices: Vec<u64>,
    pub degree: Rational,
    pub correction: CorrectionFunction,
    pub pairing_complete: bool,
    pub consistent: bool,
}

/// Everything `predict` computes, including the intermediate objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Analysis {
    pub polygon: FanoPolygon,
    pub dual: Polygon,
    pub quasi_polynomial: QuasiPolynomial,
    pub report: CollapseReport,
}

pub fn predict(polygon: &FanoPolygon) -> Result<CollapseReport, CollapseError> {
    Ok(analyze(polygon)?.report)
}

pub fn analyze(polygon: &FanoPolygon) -> Result<Analysis, CollapseError> {
    let content = singularity_content(polygon)?;
    let split = split_basket(&content.basket)?;

    let reduced_lcm = lcm_all(split.reduced.iter().map(|s| s.local_index()));
    let hidden_lcm = lcm_all(
        split
            .invisible
            .iter()
            .flat_map(|(a, b)| [a.local_index(), b.local_index()])
            .chain(content.t_indices.iter().copied()),
    );
    let predicted = Predicted {
        pi: reduced_lcm,
        r: reduced_lcm.lcm(&hidden_lcm),
        discrepancy: Rational::new(hidden_lcm, reduced_lcm.gcd(&hidden_lcm)),
    };

    let dual = polygon.dual();
    let r = dual.denominator();
    let counter = PointCounter::new(&dual);
    let qp = quasi_polynomial_with(&counter, r)?;
    let smooth = smooth_part_with(polygon, &qp)?;
    let correction = correction_with(&counter, r, &smooth)?;
    let measured = Measured {
        pi: quasi_period(&qp),
        r,
    };

    let consistent = if split.pairing_complete {
        measured.pi == predicted.pi && measured.r == predicted.r
    } else {
        // Unpaired cancelling tuples can only shrink the quasi-period.
        predicted.pi.is_multiple_of(measured.pi) && measured.r == predicted.r
    };

    let report = CollapseReport {
        measured,
        predicted,
        t_indices: content.t_indices.clone(),
        content,
        reduced_basket: split.reduced,
        invisible_pairs: split.invisible,
        degree: smooth.degree,
        correction,
        pairing_complete: split.pairing_complete,
        consistent,
    };
    Ok(Analysis {
        polygon: polygon.clone(),
        dual,
        quasi_polynomial: qp,
        report,
    })
}
