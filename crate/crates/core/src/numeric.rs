//! Exact rational helpers and certified logarithm bounds.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Serializes as `"num/den"`, always with an explicit denominator.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod rational_str {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Same as [`rational_str`] for sequences.
pub mod rational_vec {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&fmt_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Closed interval with rational endpoints known to contain a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lower: Rational,
    pub upper: Rational,
}

impl Interval {
    pub fn contains_f64(&self, x: f64) -> bool {
        to_f64(&self.lower) <= x && x <= to_f64(&self.upper)
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }
}

/// Endpoints are rounded outward to this grid, so the width stays below 1e-9.
const GRID: i64 = 1_000_000_000_000;
const SERIES_TERMS: usize = 24;

// ln x = 2 * atanh((x-1)/(x+1)); all terms positive for x >= 1, tail bounded
// geometrically by 2 z^(2N+1) / ((2N+1)(1 - z^2)).
fn ln_series(x: &Rational) -> Interval {
    let one = Rational::one();
    let z = (x - &one) / (x + &one);
    let z2 = &z * &z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    for i in 0..SERIES_TERMS {
        sum += &power / int(2 * i as i64 + 1);
        power *= &z2;
    }
    let two = int(2);
    let lower = &two * &sum;
    let tail = &two * &power / (int(2 * SERIES_TERMS as i64 + 1) * (&one - &z2));
    let upper = &lower + tail;
    Interval { lower, upper }
}

fn round_outward(iv: Interval) -> Interval {
    let grid = BigInt::from(GRID);
    let lo = (&iv.lower * Rational::from_integer(grid.clone())).floor();
    let hi = (&iv.upper * Rational::from_integer(grid.clone())).ceil();
    Interval {
        lower: lo / Rational::from_integer(grid.clone()),
        upper: hi / Rational::from_integer(grid),
    }
}

fn ln2_interval() -> &'static Interval {
    static LN2: OnceLock<Interval> = OnceLock::new();
    LN2.get_or_init(|| ln_series(&int(2)))
}

/// Certified enclosure of the natural logarithm of a positive integer.
pub fn ln_bounds(d: u64) -> Interval {
    assert!(d >= 1, "ln_bounds needs d >= 1");
    if d == 1 {
        return Interval {
            lower: Rational::zero(),
            upper: Rational::zero(),
        };
    }
    let e = 63 - d.leading_zeros() as i64;
    let mantissa = Rational::new(BigInt::from(d), BigInt::one() << e as usize);
    let m = ln_series(&mantissa);
    let ln2 = ln2_interval();
    let ee = int(e);
    round_outward(Interval {
        lower: &ee * &ln2.lower + m.lower,
        upper: &ee * &ln2.upper + m.upper,
    })
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

/// Median of already-sorted floats; `None` when empty.
pub fn median(sorted: &[f64]) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let n = sorted.len();
    if n.is_odd() {
        Some(sorted[n / 2])
    } else {
        Some((sorted[n / 2 - 1] + sorted[n / 2]) / 2.0)
    }
}
