//! Generalized polygonal numbers `p_m(x) = ((m-2)x^2 - (m-4)x) / 2` over all
//! integers `x`, and the ternary sum `P_m(x, y, z) = p_m(x) + p_m(y) + p_m(z)`.
//!
//! Counting is over ordered signed triples so that counts line up with theta
//! series coefficients. Every coordinate range is the exact integer interval
//! on which `p_m(x) <= n`, obtained from integer square roots.

use serde::{Deserialize, Serialize};

use crate::arith::{exact_sqrt, isqrt_u128};
use crate::bits::Bits;
use crate::error::{Error, Result};

/// The polygon order `m >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PolygonalFamily {
    m: u64,
}

impl TryFrom<u64> for PolygonalFamily {
    type Error = Error;

    fn try_from(m: u64) -> Result<Self> {
        PolygonalFamily::new(m)
    }
}

impl From<PolygonalFamily> for u64 {
    fn from(f: PolygonalFamily) -> u64 {
        f.m
    }
}

/// An unrepresented `n` together with its shifted value `ell_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionRecord {
    pub n: u64,
    pub ell: u64,
    /// `ell_n = 3 r^2` for some integer `r`.
    pub square_class_3: bool,
}

impl PolygonalFamily {
    pub fn new(m: u64) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidOrder(m));
        }
        Ok(PolygonalFamily { m })
    }

    pub fn m(self) -> u64 {
        self.m
    }

    pub fn is_even(self) -> bool {
        self.m % 2 == 0
    }

    /// `p_m(x)`.
    pub fn value(self, x: i64) -> u64 {
        let m = self.m as i128;
        let x = x as i128;
        let twice = (m - 2) * x * x - (m - 4) * x;
        debug_assert!(twice >= 0 && twice % 2 == 0);
        u64::try_from(twice / 2).expect("polygonal value overflows u64")
    }

    /// The shifted value `ell_n` whose representations by the coset of
    /// [`crate::coset::CosetZ3::for_family`] biject with those of `n` by `P_m`.
    ///
    /// Even `m`: `2(m-2)n + 3((m-4)/2)^2`. Odd `m`: `8(m-2)n + 3(m-4)^2`.
    pub fn ell(self, n: u64) -> u64 {
        let m = self.m as i128;
        let n = n as i128;
        let v = if self.is_even() {
            let h = (m - 4) / 2;
            2 * (m - 2) * n + 3 * h * h
        } else {
            8 * (m - 2) * n + 3 * (m - 4) * (m - 4)
        };
        u64::try_from(v).expect("ell_n overflows u64")
    }

    /// Exact inclusive interval of integers `x` with `p_m(x) <= n`.
    pub fn coordinate_range(self, n: u64) -> (i64, i64) {
        let a = self.m as i128 - 4;
        let b = 2 * (self.m as i128 - 2);
        // roots of (m-2)x^2 - (m-4)x - 2n: x = (a +- sqrt(a^2 + 8(m-2)n)) / b
        let disc = a * a + 8 * (self.m as i128 - 2) * n as i128;
        let s = isqrt_u128(disc as u128) as i128;
        let hi = (a + s).div_euclid(b);
        let lo = -(s - a).div_euclid(b);
        debug_assert!(self.value(hi as i64) <= n && self.value(lo as i64) <= n);
        debug_assert!(self.value(hi as i64 + 1) > n && self.value(lo as i64 - 1) > n);
        (lo as i64, hi as i64)
    }

    /// Distinct values `p_m(x) <= n` with the number of `x` attaining each, ascending.
    fn value_multiplicities(self, n: u64) -> Vec<(u64, u64)> {
        let (lo, hi) = self.coordinate_range(n);
        let mut vals: Vec<u64> = (lo..=hi).map(|x| self.value(x)).collect();
        vals.sort_unstable();
        let mut out: Vec<(u64, u64)> = Vec::new();
        for v in vals {
            match out.last_mut() {
                Some((last, c)) if *last == v => *c += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    /// Number of ordered `(x, y, z)` in `Z^3` with `P_m(x, y, z) = n`.
    pub fn representation_count(self, n: u64) -> u64 {
        let vals = self.value_multiplicities(n);
        let lookup = |v: u64| {
            vals.binary_search_by_key(&v, |&(val, _)| val)
                .map_or(0, |i| vals[i].1)
        };
        let mut total = 0u64;
        for &(a, ca) in &vals {
            for &(b, cb) in &vals {
                if a + b > n {
                    break;
                }
                total += ca * cb * lookup(n - a - b);
            }
        }
        total
    }

    /// Bit `n` is set when `n <= bound` is represented by `P_m`.
    fn represented_up_to(self, bound: u64) -> Bits {
        let len = usize::try_from(bound).expect("bound too large") + 1;
        let shifts: Vec<u64> = self
            .value_multiplicities(bound)
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        let mut one = Bits::new(len);
        for &v in &shifts {
            one.set(v as usize);
        }
        one.shifted_union(&shifts).shifted_union(&shifts)
    }

    /// All `n <= bound` with no representation by `P_m`, ascending.
    pub fn exceptional_set(self, bound: u64) -> Vec<u64> {
        let rep = self.represented_up_to(bound);
        (0..=bound).filter(|&n| !rep.get(n as usize)).collect()
    }

    /// Tags an exception with `ell_n` and whether `ell_n` lies in `3 Z^2`.
    pub fn classify_exception(self, n: u64) -> Result<ExceptionRecord> {
        let count = self.representation_count(n);
        if count != 0 {
            return Err(Error::Represented {
                m: self.m,
                n,
                count,
            });
        }
        Ok(self.record_unchecked(n))
    }

    pub(crate) fn record_unchecked(self, n: u64) -> ExceptionRecord {
        let ell = self.ell(n);
        ExceptionRecord {
            n,
            ell,
            square_class_3: ell % 3 == 0 && exact_sqrt(ell / 3).is_some(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fam(m: u64) -> PolygonalFamily {
        PolygonalFamily::new(m).unwrap()
    }

    /// Independent oracle: fixed box with a crude bound, no exact ranges.
    fn naive_count(m: u64, n: u64) -> u64 {
        let f = fam(m);
        let b = 3 + 2 * (n as f64).sqrt() as i64;
        let mut c = 0;
        for x in -b..=b {
            for y in -b..=b {
                for z in -b..=b {
                    if f.value(x) + f.value(y) + f.value(z) == n {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn values() {
        assert_eq!(fam(5).value(1), 1);
        assert_eq!(fam(14).value(2), 14);
        assert_eq!(fam(14).value(-1), 11);
        assert_eq!(fam(3).value(-1), 0);
        assert_eq!(fam(4).value(-3), 9);
    }

    #[test]
    fn rejects_small_orders() {
        assert_eq!(PolygonalFamily::new(2), Err(Error::InvalidOrder(2)));
        assert!(PolygonalFamily::new(0).is_err());
    }

    #[test]
    fn ell_values() {
        assert_eq!(fam(14).ell(0), 75);
        assert_eq!(fam(14).ell(18), 507);
        assert_eq!(fam(3).ell(1), 11);
    }

    #[test]
    fn counts_match_spec_examples() {
        assert_eq!(fam(14).representation_count(0), 1);
        assert_eq!(fam(14).representation_count(1), 3);
        assert_eq!(fam(14).representation_count(18), 0);
    }

    #[test]
    fn counts_match_naive_box() {
        for m in [3, 4, 5, 6, 8, 14] {
            for n in 0..40 {
                assert_eq!(fam(m).representation_count(n), naive_count(m, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn exceptional_sets() {
        assert!(fam(5).exceptional_set(10_000).is_empty());
        let s14 = fam(14).exceptional_set(20);
        assert!(s14.contains(&10) && s14.contains(&18));
        let s8 = fam(8).exceptional_set(30);
        for n in [4, 12, 20, 28] {
            assert!(s8.contains(&n));
        }
    }

    #[test]
    fn exceptional_set_agrees_with_counts() {
        for m in [3, 7, 8, 12, 14, 26] {
            let f = fam(m);
            let exc = f.exceptional_set(600);
            let brute: Vec<u64> = (0..=600).filter(|&n| f.representation_count(n) == 0).collect();
            assert_eq!(exc, brute, "m = {m}");
        }
    }

    #[test]
    fn guy_exception() {
        for m in 8..60 {
            assert!(fam(m).exceptional_set(m - 4).contains(&(m - 4)), "m = {m}");
        }
    }

    #[test]
    fn classification() {
        let r = fam(14).classify_exception(18).unwrap();
        assert_eq!((r.ell, r.square_class_3), (507, true));
        let r = fam(14).classify_exception(10).unwrap();
        assert_eq!((r.ell, r.square_class_3), (315, false));
        let r = fam(26).classify_exception(15).unwrap();
        assert_eq!((r.ell, r.square_class_3), (1083, true));
        assert!(matches!(
            fam(14).classify_exception(1),
            Err(Error::Represented { count: 3, .. })
        ));
    }

    #[test]
    fn support_congruence() {
        for m in (3..200).filter(|m| m % 4 != 0) {
            for n in 0..200 {
                assert_eq!(fam(m).ell(n) % 8, 3, "m={m} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn values_nonnegative_and_anchored(m in 3u64..500, x in -10_000i64..10_000) {
            let f = fam(m);
            prop_assert_eq!(f.value(0), 0);
            prop_assert_eq!(f.value(1), 1);
            // value() panics on negative numerators in debug builds
            let _ = f.value(x);
        }

        #[test]
        fn coordinate_range_is_exact(m in 3u64..300, n in 0u64..1_000_000) {
            let f = fam(m);
            let (lo, hi) = f.coordinate_range(n);
            prop_assert!(f.value(lo) <= n && f.value(hi) <= n);
            prop_assert!(f.value(lo - 1) > n && f.value(hi + 1) > n);
        }

        #[test]
        fn exceptional_set_is_prefix_stable(m in 3u64..40, b in 0u64..400, extra in 0u64..400) {
            let f = fam(m);
            let short = f.exceptional_set(b);
            let long = f.exceptional_set(b + extra);
            prop_assert_eq!(&long[..short.len()], &short[..]);
            prop_assert!(long.get(short.len()).map_or(true, |&n| n > b));
        }
    }
}
