//! Lattice-point counting in dilates of rational polygons and exact
//! quasi-polynomial fitting.

use std::fmt;

use num::{BigInt, Integer, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::EhrhartError;
use crate::geometry::Polygon;
use crate::rational::Rational;

/// Exact integer arithmetic for the slab sums. `None` signals overflow.
trait SlabInt: Clone + Ord + Sized {
    fn int(v: i64) -> Self;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// Floor division and remainder for a positive divisor.
    fn div_mod(&self, o: &Self) -> (Self, Self);
}

impl SlabInt for i128 {
    fn int(v: i64) -> Self {
        v as i128
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_mod(&self, o: &Self) -> (Self, Self) {
        Integer::div_mod_floor(self, o)
    }
}

impl SlabInt for BigInt {
    fn int(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_mod(&self, o: &Self) -> (Self, Self) {
        Integer::div_mod_floor(self, o)
    }
}

/// `Σ_{i<n} floor((a i + b) / m)` for `n >= 0` and `m > 0`, by the usual
/// Euclid-like reduction.
fn floor_sum<T: SlabInt>(n: T, m: T, a: T, b: T) -> Option<T> {
    let zero = T::int(0);
    let (mut n, mut m, mut a, mut b) = (n, m, a, b);
    let mut ans = zero.clone();
    loop {
        let (qa, ra) = a.div_mod(&m);
        if qa != zero {
            // n (n - 1) is even
            let tri = n.mul(&n.sub(&T::int(1))?)?.div_mod(&T::int(2)).0;
            ans = ans.add(&tri.mul(&qa)?)?;
            a = ra;
        }
        let (qb, rb) = b.div_mod(&m);
        if qb != zero {
            ans = ans.add(&n.mul(&qb)?)?;
            b = rb;
        }
        let top = a.mul(&n)?.add(&b)?;
        if top < m {
            return Some(ans);
        }
        (n, b) = top.div_mod(&m);
        std::mem::swap(&mut m, &mut a);
    }
}

/// A horizontal slab of the polygon between consecutive vertex heights,
/// bounded on the left and right by single edges.
#[derive(Clone, Debug)]
struct Slab<T> {
    /// Upper height as `num / den` with `den > 0`.
    top: (T, T),
    /// `a x + b y >= c` with `a > 0`.
    left: (T, T, T),
    /// `a x + b y >= c` with `a < 0`.
    right: (T, T, T),
}

#[derive(Clone, Debug)]
struct Slabs<T> {
    bottom: (T, T),
    slabs: Vec<Slab<T>>,
}

impl<T: SlabInt> Slabs<T> {
    fn convert(big: &Slabs<BigInt>) -> Option<Self> {
        let pair = |(p, q): &(BigInt, BigInt)| Some((T::from_big(p)?, T::from_big(q)?));
        let triple = |(a, b, c): &(BigInt, BigInt, BigInt)| Some((T::from_big(a)?, T::from_big(b)?, T::from_big(c)?));
        Some(Slabs {
            bottom: pair(&big.bottom)?,
            slabs: big
                .slabs
                .iter()
                .map(|s| {
                    Some(Slab {
                        top: pair(&s.top)?,
                        left: triple(&s.left)?,
                        right: triple(&s.right)?,
                    })
                })
                .collect::<Option<_>>()?,
        })
    }

    /// Each integer row `y` of `kP` contributes
    /// `floor((b_r y - k c_r) / -a_r) + floor((b_l y - k c_l) / a_l) + 1`.
    fn count(&self, k: &T) -> Option<T> {
        let zero = T::int(0);
        let one = T::int(1);
        let (p, q) = &self.bottom;
        let mut start = zero.sub(&zero.sub(&k.mul(p)?)?.div_mod(q).0)?;
        let mut total = zero.clone();
        for s in &self.slabs {
            let end = k.mul(&s.top.0)?.div_mod(&s.top.1).0;
            if end < start {
                continue;
            }
            let n = end.sub(&start)?.add(&one)?;
            let (a, b, c) = &s.right;
            let right = floor_sum(n.clone(), zero.sub(a)?, b.clone(), b.mul(&start)?.sub(&k.mul(c)?)?)?;
            let (a, b, c) = &s.left;
            let left = floor_sum(n.clone(), a.clone(), b.clone(), b.mul(&start)?.sub(&k.mul(c)?)?)?;
            total = total.add(&right)?.add(&left)?.add(&n)?;
            start = end.add(&one)?;
        }
        Some(total)
    }
}

/// Precomputed slab data for counting `|kP ∩ Z^2|` over many `k`. Each count
/// costs `O(vertices · log)` operations, independent of `k`.
#[derive(Clone, Debug)]
pub struct PointCounter {
    big: Slabs<BigInt>,
    small: Option<Slabs<i128>>,
}

fn pair(r: &Rational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

impl PointCounter {
    pub fn new(polygon: &Polygon) -> Self {
        let ineqs: Vec<(Rational, Rational, Rational)> = polygon
            .inequalities()
            .into_iter()
            .map(|(a, b, c)| {
                let l = a.denom().lcm(b.denom()).lcm(c.denom());
                let s = Rational::from(l);
                let (a, b, c) = (&a * &s, &b * &s, &c * &s);
                let g = Rational::from(a.numer().gcd(b.numer()).gcd(c.numer()));
                (&a / &g, &b / &g, &c / &g)
            })
            .collect();
        let mut ys: Vec<Rational> = polygon.vertices().iter().map(|v| v.y.clone()).collect();
        ys.sort();
        ys.dedup();
        let int = |r: &Rational| r.to_integer().expect("normalised coefficients are integers");
        let slabs = ys
            .windows(2)
            .map(|w| {
                let mid = &(&w[0] + &w[1]) / &Rational::from(2);
                let bound = |(a, b, c): &(Rational, Rational, Rational)| &(c - &(b * &mid)) / a;
                let pick = |positive: bool| {
                    let side = ineqs.iter().filter(|i| i.0.is_positive() == positive && !i.0.is_zero());
                    let best = if positive {
                        side.max_by(|x, y| bound(x).cmp(&bound(y)))
                    } else {
                        side.min_by(|x, y| bound(x).cmp(&bound(y)))
                    };
                    let (a, b, c) = best.expect("a bounded polygon has edges on both sides");
                    (int(a), int(b), int(c))
                };
                Slab {
                    top: pair(&w[1]),
                    left: pick(true),
                    right: pick(false),
                }
            })
            .collect();
        let big = Slabs {
            bottom: pair(&ys[0]),
            slabs,
        };
        let small = Slabs::convert(&big);
        PointCounter { big, small }
    }

    /// Number of lattice points in the closed dilate `kP`.
    pub fn count(&self, k: u64) -> u64 {
        let small = self.small.as_ref().and_then(|s| s.count(&(k as i128)));
        let n = small.map_or_else(
            || self.big.count(&BigInt::from(k)).expect("BigInt cannot overflow"),
            |n| n.to_big(),
        );
        n.to_u64().expect("lattice point count exceeds u64")
    }
}

/// `L_P(k) = |kP ∩ Z^2|`.
pub fn count_points(polygon: &Polygon, k: u64) -> u64 {
    PointCounter::new(polygon).count(k)
}

/// Degree-two quasi-polynomial; constituent `i` is `(c2, c1, c0)` and is used
/// for arguments `k ≡ i (mod period)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "QuasiPolynomialJson", into = "QuasiPolynomialJson")]
pub struct QuasiPolynomial {
    period: u64,
    constituents: Vec<[Rational; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuasiPolynomialJson {
    period: u64,
    constituents: Vec<[Rational; 3]>,
}

impl TryFrom<QuasiPolynomialJson> for QuasiPolynomial {
    type Error = String;
    fn try_from(j: QuasiPolynomialJson) -> Result<Self, String> {
        if j.period == 0 || j.period != j.constituents.len() as u64 {
            return Err(format!(
                "period {} does not match {} constituents",
                j.period,
                j.constituents.len()
            ));
        }
        Ok(QuasiPolynomial::new(j.constituents))
    }
}

impl From<QuasiPolynomial> for QuasiPolynomialJson {
    fn from(q: QuasiPolynomial) -> Self {
        QuasiPolynomialJson {
            period: q.period,
            constituents: q.constituents,
        }
    }
}

impl QuasiPolynomial {
    pub fn new(constituents: Vec<[Rational; 3]>) -> Self {
        assert!(!constituents.is_empty(), "quasi-polynomial needs a constituent");
        QuasiPolynomial {
            period: constituents.len() as u64,
            constituents,
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn constituents(&self) -> &[[Rational; 3]] {
        &self.constituents
    }

    pub fn constituent(&self, k: u64) -> &[Rational; 3] {
        &self.constituents[(k % self.period) as usize]
    }

    pub fn evaluate(&self, k: u64) -> Rational {
        let [c2, c1, c0] = self.constituent(k);
        let kr = Rational::from(BigInt::from(k));
        &(&(c2 * &kr) * &kr) + &(&(c1 * &kr) + c0)
    }

    /// The minimal period: smallest divisor `s` of the period with
    /// constituent `i` equal to constituent `i mod s` for every `i`.
    pub fn minimal_period(&self) -> u64 {
        let r = self.period;
        (1..=r)
            .filter(|s| r.is_multiple_of(*s))
            .find(|&s| (0..r).all(|i| self.constituents[i as usize] == self.constituents[(i % s) as usize]))
            .unwrap_or(r)
    }

    /// The same function re-indexed to its minimal period.
    pub fn reduced(&self) -> QuasiPolynomial {
        let s = self.minimal_period();
        QuasiPolynomial::new(self.constituents[..s as usize].to_vec())
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, [c2, c1, c0]) in self.constituents.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "[{i} mod {}] {c2}k^2 + {c1}k + {c0}", self.period)?;
        }
        Ok(())
    }
}

/// The quadratic through three samples at `x0, x0 + h, x0 + 2h`.
fn fit_quadratic(x0: u64, h: u64, ys: [u64; 3]) -> [Rational; 3] {
    let r = |v: u64| Rational::from(BigInt::from(v));
    let (x0, x1, h) = (r(x0), r(x0 + h), r(h));
    let [y0, y1, y2] = ys.map(r);
    let two = Rational::from(2);
    let c2 = (&(&y2 - &(&two * &y1)) + &y0) / (&(&two * &h) * &h);
    let d1 = (&y1 - &y0) / &h;
    let c1 = &d1 - &(&c2 * &(&x0 + &x1));
    let c0 = &(&y0 - &(&x0 * &d1)) + &(&(&x0 * &x1) * &c2);
    [c2, c1, c0]
}

/// Fits the Ehrhart quasi-polynomial with period equal to the denominator.
///
/// Each residue class is interpolated from three counts and checked against
/// a fourth.
pub fn quasi_polynomial(polygon: &Polygon) -> Result<QuasiPolynomial, EhrhartError> {
    let counter = PointCounter::new(polygon);
    quasi_polynomial_with(&counter, polygon.denominator())
}

pub fn quasi_polynomial_with(counter: &PointCounter, r: u64) -> Result<QuasiPolynomial, EhrhartError> {
    let mut constituents = Vec::with_capacity(r as usize);
    for i in 0..r {
        let ys = [i, i + r, i + 2 * r].map(|k| counter.count(k));
        let coeffs = fit_quadratic(i, r, ys);
        let check = i + 3 * r;
        let counted = counter.count(check);
        let kr = Rational::from(BigInt::from(check));
        let predicted = &(&(&coeffs[0] * &kr) * &kr) + &(&(&coeffs[1] * &kr) + &coeffs[2]);
        if predicted != Rational::from(BigInt::from(counted)) {
            return Err(EhrhartError::InconsistentFit {
                class: i,
                k: check,
                predicted: predicted.to_string(),
                counted,
            });
        }
        constituents.push(coeffs);
    }
    Ok(QuasiPolynomial::new(constituents))
}

pub fn quasi_period(qp: &QuasiPolynomial) -> u64 {
    qp.minimal_period()
}

/// The values `L_P(0), ..., L_P(n)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EhrhartSeries {
    pub coefficients: Vec<u64>,
}

pub fn ehrhart_series(polygon: &Polygon, n: u64) -> Result<EhrhartSeries, EhrhartError> {
    let counter = PointCounter::new(polygon);
    let qp = quasi_polynomial_with(&counter, polygon.denominator())?;
    let mut coefficients = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let counted = counter.count(k);
        let predicted = qp.evaluate(k);
        if predicted != Rational::from(BigInt::from(counted)) {
            return Err(EhrhartError::InconsistentFit {
                class: k % qp.period(),
                k,
                predicted: predicted.to_string(),
                counted,
            });
        }
        coefficients.push(counted);
    }
    Ok(EhrhartSeries { coefficients })
}

/// Counting data of one polygon, as printed by the CLI.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EhrhartReport {
    pub polygon: Polygon,
    pub denominator: u64,
    pub quasi_period: u64,
    pub quasi_polynomial: QuasiPolynomial,
    pub series: Vec<u64>,
}

pub fn ehrhart_report(polygon: &Polygon, n: u64) -> Result<EhrhartReport, EhrhartError> {
    let qp = quasi_polynomial(polygon)?;
    Ok(EhrhartReport {
        polygon: polygon.clone(),
        denominator: polygon.denominator(),
        quasi_period: quasi_period(&qp),
        quasi_polynomial: qp,
        series: ehrhart_series(polygon, n)?.coefficients,
    })
}

/// `|∂P ∩ Z^2| / 2` and `Vol/2` for a lattice polygon: the Pick constituent.
pub fn pick_constituent(polygon: &Polygon) -> Option<[Rational; 3]> {
    let b = polygon.boundary_lattice_points()?;
    Some([polygon.area(), Rational::new(b, 2), Rational::one()])
}
