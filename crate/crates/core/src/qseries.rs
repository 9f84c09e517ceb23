//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] knows its truncation bound: every coefficient at an exponent
//! `<= bound` is determined (absent means zero), and asking for anything
//! past the bound is an error rather than a silent zero. Binary operations
//! truncate to the smaller bound.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{isqrt, is_squarefree};
use crate::error::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::invalid(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::invalid(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    bound: u64,
    coeffs: BTreeMap<u64, Rational>,
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries(O(q^{})", self.bound + 1)?;
        for (e, c) in self.coeffs.iter().take(8) {
            write!(f, " {c}q^{e}")?;
        }
        if self.coeffs.len() > 8 {
            write!(f, " ...")?;
        }
        write!(f, ")")
    }
}

impl QSeries {
    pub fn zero(bound: u64) -> Self {
        QSeries {
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// Series with coefficient `counts[e]` at `q^e`; bound is `counts.len() - 1`.
    pub fn from_counts(counts: &[u64]) -> Self {
        assert!(!counts.is_empty(), "need at least the constant term");
        QSeries {
            bound: counts.len() as u64 - 1,
            coeffs: counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| (e as u64, Rational::from_integer(c.into())))
                .collect(),
        }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(bound: u64, terms: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        let mut s = QSeries::zero(bound);
        for (e, c) in terms {
            s.accumulate(e, c)?;
        }
        Ok(s)
    }

    fn accumulate(&mut self, e: u64, c: Rational) -> Result<()> {
        if e > self.bound {
            return Err(Error::BeyondBound {
                requested: e,
                bound: self.bound,
            });
        }
        let slot = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
        Ok(())
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn coefficient(&self, e: u64) -> Result<Rational> {
        if e > self.bound {
            return Err(Error::BeyondBound {
                requested: e,
                bound: self.bound,
            });
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero))
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Same series cut down to a smaller bound.
    pub fn truncate(&self, bound: u64) -> Result<Self> {
        if bound > self.bound {
            return Err(Error::BeyondBound {
                requested: bound,
                bound: self.bound,
            });
        }
        Ok(QSeries {
            bound,
            coeffs: self.coeffs.range(..=bound).map(|(&e, c)| (e, c.clone())).collect(),
        })
    }

    /// `Theta(q)^3` with `Theta = sum_{n in Z} q^{n^2}`: coefficient `r_3(n)`.
    pub fn theta_cube(bound: u64) -> Self {
        let len = usize::try_from(bound).expect("bound too large") + 1;
        let s = isqrt(bound) as usize;
        // r_2 by pairs, then one more square
        let mut r2 = vec![0u64; len];
        for a in 0..=s {
            for b in 0..=s {
                let n = a * a + b * b;
                if n >= len {
                    break;
                }
                let w = if a == 0 { 1 } else { 2 } * if b == 0 { 1 } else { 2 };
                r2[n] += w;
            }
        }
        let mut r3 = vec![0u64; len];
        for c in 0..=s {
            let w = if c == 0 { 1 } else { 2 };
            let cc = c * c;
            for n in cc..len {
                r3[n] += w * r2[n - cc];
            }
        }
        QSeries::from_counts(&r3)
    }

    /// Unary theta function `sum_{r = h (mod N/t)} r q^{t r^2}`.
    ///
    /// Requires `t` squarefree, `t | N` and `0 <= h < N/t`.
    pub fn unary_theta(h: u64, t: u64, modulus: u64, bound: u64) -> Result<Self> {
        if t == 0 || modulus == 0 || modulus % t != 0 {
            return Err(Error::invalid(format!("unary theta needs t | N (t = {t}, N = {modulus})")));
        }
        if !is_squarefree(t) {
            return Err(Error::invalid(format!("unary theta needs squarefree t, got {t}")));
        }
        let step = modulus / t;
        if h >= step {
            return Err(Error::invalid(format!("unary theta needs 0 <= h < N/t = {step}, got {h}")));
        }
        let rmax = isqrt(bound / t) as i64;
        let step = step as i64;
        let start = -rmax + (h as i64 + rmax).rem_euclid(step);
        let terms = (0..)
            .map(|k| start + k * step)
            .take_while(|&r| r <= rmax)
            .map(|r| (t * (r * r) as u64, Rational::from_integer(r.into())));
        QSeries::from_terms(bound, terms)
    }

    /// Keeps the coefficients at exponents `= c (mod modulus)`.
    pub fn sieve(&self, modulus: u64, c: u64) -> Result<Self> {
        if modulus == 0 || c >= modulus {
            return Err(Error::invalid(format!(
                "sieve needs 0 <= c < N (c = {c}, N = {modulus})"
            )));
        }
        Ok(QSeries {
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| e % modulus == c)
                .map(|(&e, v)| (e, v.clone()))
                .collect(),
        })
    }

    /// `f(q) -> f(q^k)`; the bound becomes `k * bound`.
    pub fn dilate(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("dilation factor must be >= 1"));
        }
        let bound = self
            .bound
            .checked_mul(k)
            .ok_or_else(|| Error::invalid("dilated bound overflows"))?;
        Ok(QSeries {
            bound,
            coeffs: self.coeffs.iter().map(|(&e, v)| (e * k, v.clone())).collect(),
        })
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &QSeries, op: impl Fn(&Rational, &Rational) -> Rational) -> QSeries {
        let bound = self.bound.min(other.bound);
        let zero = Rational::zero();
        let mut coeffs = BTreeMap::new();
        let exps = self.coeffs.range(..=bound).chain(other.coeffs.range(..=bound)).map(|(&e, _)| e);
        for e in exps {
            if coeffs.contains_key(&e) {
                continue;
            }
            let v = op(
                self.coeffs.get(&e).unwrap_or(&zero),
                other.coeffs.get(&e).unwrap_or(&zero),
            );
            coeffs.insert(e, v);
        }
        coeffs.retain(|_, v| !v.is_zero());
        QSeries { bound, coeffs }
    }

    pub fn scale(&self, factor: &Rational) -> QSeries {
        if factor.is_zero() {
            return QSeries::zero(self.bound);
        }
        QSeries {
            bound: self.bound,
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * factor)).collect(),
        }
    }

    /// Exact equality of every coefficient at exponents `<= bound`.
    pub fn equal_up_to(&self, other: &QSeries, bound: u64) -> Result<bool> {
        Ok(self.first_difference(other, bound)?.is_none())
    }

    /// Smallest exponent `<= bound` where the two series differ, with both values.
    pub fn first_difference(
        &self,
        other: &QSeries,
        bound: u64,
    ) -> Result<Option<(u64, Rational, Rational)>> {
        let limit = self.bound.min(other.bound);
        if bound > limit {
            return Err(Error::BeyondBound {
                requested: bound,
                bound: limit,
            });
        }
        Ok(self.differences(other, bound).next())
    }

    /// All exponents `<= bound` where the series differ, ascending. `bound`
    /// must not exceed either series' bound.
    pub fn differences<'a>(
        &'a self,
        other: &'a QSeries,
        bound: u64,
    ) -> impl Iterator<Item = (u64, Rational, Rational)> + 'a {
        let mut exps: Vec<u64> = self
            .coeffs
            .range(..=bound)
            .chain(other.coeffs.range(..=bound))
            .map(|(&e, _)| e)
            .collect();
        exps.sort_unstable();
        exps.dedup();
        let zero = Rational::zero();
        exps.into_iter().filter_map(move |e| {
            let a = self.coeffs.get(&e).unwrap_or(&zero);
            let b = other.coeffs.get(&e).unwrap_or(&zero);
            (a != b).then(|| (e, a.clone(), b.clone()))
        })
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// CSV with header `exponent,numerator,denominator`, one row per nonzero term.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::invalid(format!("csv: {e}"));
        w.write_record(["exponent", "numerator", "denominator"]).map_err(io)?;
        for (e, c) in &self.coeffs {
            w.write_record([e.to_string(), c.numer().to_string(), c.denom().to_string()])
                .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Parses the output of [`QSeries::to_csv`]; the bound is not part of the
    /// CSV form and must be supplied.
    pub fn from_csv(bound: u64, text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let mut terms = Vec::new();
        for row in r.records() {
            let row = row.map_err(|e| Error::invalid(format!("csv: {e}")))?;
            if row.len() != 3 {
                return Err(Error::invalid("csv rows need exponent,numerator,denominator"));
            }
            let e: u64 = row[0]
                .parse()
                .map_err(|_| Error::invalid(format!("bad exponent {:?}", &row[0])))?;
            terms.push((e, parse_rational(&format!("{}/{}", &row[1], &row[2]))?));
        }
        QSeries::from_terms(bound, terms)
    }
}

/// JSON form: `{"bound": B, "terms": [{"exponent": e, "value": "p/q"}, ...]}`.
#[derive(Serialize, Deserialize)]
struct QSeriesJson {
    bound: u64,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponent: u64,
    value: String,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesJson {
            bound: self.bound,
            terms: self
                .coeffs
                .iter()
                .map(|(&exponent, v)| TermJson {
                    exponent,
                    value: format_rational(v),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QSeriesJson::deserialize(d)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| parse_rational(&t.value).map(|v| (t.exponent, v)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        QSeries::from_terms(raw.bound, terms).map_err(D::Error::custom)
    }
}

/// Serde adapter writing a [`Rational`] as its `"p/q"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        use serde::de::Error as _;
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}
