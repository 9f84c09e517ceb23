//! Kronecker symbols, class numbers of negative discriminants by reduced-form
//! enumeration, and Hurwitz class numbers.
//!
//! Everything here is exhaustive counting; no analytic class number formula
//! is used, so these values can serve as an independent check on the theta
//! series side.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, isqrt};
use crate::error::{Error, Result};
use crate::qseries::{rational, Rational};

/// The Kronecker symbol `(a / n)`, the completely multiplicative extension
/// of the Legendre symbol to all integers `n`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    const TAB2: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
    let (mut a, mut b) = (a as i128, n as i128);
    if b == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let mut k: i8 = 1;
    let v = b.trailing_zeros();
    b >>= v;
    if v % 2 == 1 {
        k = TAB2[(a & 7) as usize];
    }
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    // b odd and positive from here on
    loop {
        if a == 0 {
            return if b == 1 { k } else { 0 };
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= TAB2[(b & 7) as usize];
        }
        // quadratic reciprocity; the low bits of a two's-complement `a` give `a mod 4`
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}

/// A negative discriminant `D = 0, 1 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
            return Err(Error::invalid(format!(
                "{d} is not a negative discriminant (need D < 0, D = 0 or 1 mod 4)"
            )));
        }
        Ok(Discriminant(d))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// Half the number of units in the order of discriminant `D`.
    pub fn unit_weight(self) -> u64 {
        match self.0 {
            -3 => 3,
            -4 => 2,
            _ => 1,
        }
    }
}

/// Reduced primitive forms `(a, b, c)` with `b^2 - 4ac = D`:
/// `|b| <= a <= c`, and `b >= 0` whenever `|b| = a` or `a = c`.
pub fn reduced_forms(d: Discriminant) -> Vec<(i64, i64, i64)> {
    let disc = d.value();
    let amax = isqrt((-disc) as u64 / 3) as i64;
    let mut out = Vec::new();
    for a in 1..=amax {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push((a, b, c));
        }
    }
    out
}

/// `h(D)`: the number of reduced primitive forms of discriminant `D`.
pub fn class_number(d: Discriminant) -> u64 {
    reduced_forms(d).len() as u64
}

/// Hurwitz class number `H(d) = sum_{f^2 | d, -d/f^2 a discriminant} h(-d/f^2) / u(-d/f^2)`.
pub fn hurwitz(d: u64) -> Result<Rational> {
    if d == 0 || !matches!(d % 4, 0 | 3) {
        return Err(Error::invalid(format!(
            "Hurwitz class number needs d > 0 with d = 0 or 3 (mod 4), got {d}"
        )));
    }
    let mut total = rational(0, 1);
    let mut f = 1u64;
    while f * f <= d {
        if d % (f * f) == 0 {
            if let Ok(disc) = Discriminant::new(-((d / (f * f)) as i64)) {
                total += rational(class_number(disc) as i64, disc.unit_weight() as i64);
            }
        }
        f += 1;
    }
    Ok(total)
}

/// Closed form `H(3 ell^2) = (ell + 1 - (-3/ell)) / 3` for primes `ell > 3`.
pub fn hurwitz_3ellsq(ell: u64) -> Result<Rational> {
    if ell <= 3 || !is_prime(ell) {
        return Err(Error::invalid(format!("need a prime ell > 3, got {ell}")));
    }
    let chi = kronecker(-3, ell as i64) as i64;
    Ok(rational(ell as i64 + 1 - chi, 3))
}

/// `r_3(n) = 24 H(n)` for `n = 3 (mod 8)`, via class numbers only.
pub fn r3_via_class_number(n: u64) -> Result<u64> {
    if n % 8 != 3 {
        return Err(Error::invalid(format!("need n = 3 (mod 8), got {n}")));
    }
    let v = hurwitz(n)? * rational(24, 1);
    assert!(v.is_integer(), "24 H({n}) = {v} is not integral");
    Ok(u64::try_from(v.to_integer()).expect("r_3 fits in u64"))
}
