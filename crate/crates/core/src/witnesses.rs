//! Unrepresented integers for `m = 2 (mod 12)`, and exception surveys.
//!
//! Write `m = 12r + 2`. Then `n` is represented by `P_m` iff
//! `24 r n + 3 (6r - 1)^2` is a sum of three squares of integers all
//! congruent to `6r - 1` modulo `12r`. Taking `24 r n + 3 (6r-1)^2 = 3 ell^2`
//! for a prime `ell = 1 (mod 12)` (r odd) or `ell = 7 (mod 12)` (r even)
//! predicts an exception. Every predicted witness is brute-force checked
//! before it is reported.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::primes_up_to;
use crate::coset::CosetZ3;
use crate::error::{Error, Result};
use crate::polygonal::{ExceptionRecord, PolygonalFamily};

/// Default prime ceiling for [`find_witnesses`].
pub const DEFAULT_PRIME_CEILING: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub m: u64,
    pub r: u64,
    pub target_residue: u64,
}

impl WitnessSpec {
    pub fn new(m: u64) -> Result<Self> {
        if m % 12 != 2 || m < 14 {
            return Err(Error::invalid(format!("witness families need m = 2 (mod 12), m >= 14; got {m}")));
        }
        let r = (m - 2) / 12;
        Ok(WitnessSpec {
            m,
            r,
            target_residue: if r % 2 == 1 { 1 } else { 7 },
        })
    }

    fn family(&self) -> PolygonalFamily {
        PolygonalFamily::new(self.m).expect("m >= 14")
    }

    /// `3 (6r - 1)^2`, the value of `ell_n` at `n = 0`.
    fn offset(&self) -> u64 {
        let s = 6 * self.r - 1;
        3 * s * s
    }

    /// `n = (3 ell^2 - 3 (6r-1)^2) / (24 r)` when that is a nonnegative integer.
    pub fn witness_n(&self, ell: u64) -> Option<u64> {
        let target = 3u128 * ell as u128 * ell as u128;
        let offset = self.offset() as u128;
        let den = 24 * self.r as u128;
        if target < offset || (target - offset) % den != 0 {
            return None;
        }
        u64::try_from((target - offset) / den).ok()
    }
}

/// `1` if `(m - 2)/12` is odd, `7` if even.
pub fn target_residue(m: u64) -> Result<u64> {
    Ok(WitnessSpec::new(m)?.target_residue)
}

pub fn witness_n(m: u64, ell: u64) -> Result<Option<u64>> {
    if ell % 2 == 0 {
        return Err(Error::invalid(format!("ell must be odd, got {ell}")));
    }
    Ok(WitnessSpec::new(m)?.witness_n(ell))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub m: u64,
    pub ell: u64,
    pub n: u64,
    /// `24 r n + 3 (6r-1)^2 = 3 ell^2`.
    pub identity_holds: bool,
    /// Vectors of norm `3 ell^2` in the coset attached to `P_m`.
    pub coset_count: u64,
    /// Ordered triples with `P_m(x, y, z) = n`.
    pub representation_count: u64,
    /// `ell^2 = 1 (mod 8r)`.
    pub ell_sq_is_one_mod_8r: bool,
    /// `ell^2 = (6r-1)^2 (mod 8r)`; equivalent to integrality of `n`.
    pub ell_sq_matches_offset_mod_8r: bool,
    pub verified: bool,
}

/// Runs the three independent checks on a candidate witness.
pub fn verify_witness(spec: &WitnessSpec, ell: u64, n: u64) -> WitnessReport {
    let family = spec.family();
    let norm = 3 * ell * ell;
    let lhs = 24 * spec.r as u128 * n as u128 + spec.offset() as u128;
    let identity_holds = lhs == norm as u128;
    let coset_count = CosetZ3::for_family(family).rep_count(norm);
    let representation_count = family.representation_count(n);
    let modulus = 8 * spec.r;
    let s = 6 * spec.r - 1;
    WitnessReport {
        m: spec.m,
        ell,
        n,
        identity_holds,
        coset_count,
        representation_count,
        ell_sq_is_one_mod_8r: (ell * ell) % modulus == 1 % modulus,
        ell_sq_matches_offset_mod_8r: (ell * ell) % modulus == (s * s) % modulus,
        verified: identity_holds && coset_count == 0 && representation_count == 0,
    }
}

/// The first `count` primes `ell = target (mod 12)` with an integral witness,
/// each verified. Gives up past `prime_ceiling`.
pub fn find_witnesses(m: u64, count: usize, prime_ceiling: u64) -> Result<Vec<WitnessReport>> {
    let spec = WitnessSpec::new(m)?;
    if count == 0 {
        return Err(Error::invalid("witness count must be >= 1"));
    }
    let candidates: Vec<(u64, u64)> = primes_up_to(prime_ceiling)
        .into_iter()
        .filter(|&ell| ell % 12 == spec.target_residue)
        .filter_map(|ell| spec.witness_n(ell).map(|n| (ell, n)))
        .take(count)
        .collect();
    if candidates.len() < count {
        return Err(Error::WitnessSearchExhausted {
            m,
            wanted: count,
            found: candidates.len(),
            ceiling: prime_ceiling,
        });
    }
    let reports: Vec<WitnessReport> = candidates
        .par_iter()
        .map(|&(ell, n)| verify_witness(&spec, ell, n))
        .collect();
    if let Some(bad) = reports.iter().find(|w| !w.verified) {
        return Err(Error::Verification(format!(
            "predicted witness n = {} (ell = {}) for m = {} failed: identity {}, coset count {}, P_m count {}",
            bad.n, bad.ell, m, bad.identity_holds, bad.coset_count, bad.representation_count
        )));
    }
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub m: u64,
    pub bound: u64,
    pub exceptions: Vec<ExceptionRecord>,
    pub square_class_3_count: usize,
    /// Every exception above this value has `ell_n` in `3 Z^2`.
    pub largest_non_square_class: Option<u64>,
}

impl SurveyReport {
    pub fn non_square_class(&self) -> impl Iterator<Item = &ExceptionRecord> {
        self.exceptions.iter().filter(|e| !e.square_class_3)
    }
}

/// Lists and classifies the exceptional set up to `bound`.
pub fn survey(family: PolygonalFamily, bound: u64) -> SurveyReport {
    let exceptions: Vec<ExceptionRecord> = family
        .exceptional_set(bound)
        .into_iter()
        .map(|n| family.record_unchecked(n))
        .collect();
    SurveyReport {
        m: family.m(),
        bound,
        square_class_3_count: exceptions.iter().filter(|e| e.square_class_3).count(),
        largest_non_square_class: exceptions.iter().filter(|e| !e.square_class_3).map(|e| e.n).max(),
        exceptions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues() {
        assert_eq!(target_residue(14).unwrap(), 1);
        assert_eq!(target_residue(26).unwrap(), 7);
        assert_eq!(target_residue(38).unwrap(), 1);
        assert!(target_residue(15).is_err());
        assert!(target_residue(2).is_err());
    }

    #[test]
    fn witness_values() {
        assert_eq!(witness_n(14, 13).unwrap(), Some(18));
        assert_eq!(witness_n(26, 19).unwrap(), Some(15));
        assert_eq!(witness_n(14, 5).unwrap(), Some(0));
        assert_eq!(witness_n(26, 7).unwrap(), None);
        assert!(witness_n(14, 4).is_err());
    }

    #[test]
    fn first_witnesses() {
        let ws = find_witnesses(14, 3, DEFAULT_PRIME_CEILING).unwrap();
        let pairs: Vec<(u64, u64)> = ws.iter().map(|w| (w.ell, w.n)).collect();
        assert_eq!(pairs, vec![(13, 18), (37, 168), (61, 462)]);
        let w = &find_witnesses(26, 1, DEFAULT_PRIME_CEILING).unwrap()[0];
        assert_eq!((w.ell, w.n), (19, 15));
        let w = &find_witnesses(38, 1, DEFAULT_PRIME_CEILING).unwrap()[0];
        assert_eq!((w.ell, w.n), (37, 45));
    }

    #[test]
    fn every_m14_target_prime_is_a_witness() {
        let spec = WitnessSpec::new(14).unwrap();
        for ell in primes_up_to(300).into_iter().filter(|p| p % 12 == 1) {
            let n = spec.witness_n(ell).expect("integral for r = 1");
            assert!(verify_witness(&spec, ell, n).verified, "ell = {ell}");
        }
        // r = 1: integral for every odd ell
        assert!((1..400u64).step_by(2).all(|ell| ell < 5 || spec.witness_n(ell).is_some()));
    }

    #[test]
    fn integrality_congruence() {
        // odd r: both congruences agree; even r: only the shifted one holds
        let w = &find_witnesses(14, 1, DEFAULT_PRIME_CEILING).unwrap()[0];
        assert!(w.ell_sq_is_one_mod_8r && w.ell_sq_matches_offset_mod_8r);
        for w in find_witnesses(26, 5, DEFAULT_PRIME_CEILING).unwrap() {
            assert!(w.ell_sq_matches_offset_mod_8r);
            assert!(!w.ell_sq_is_one_mod_8r, "ell = {}", w.ell);
        }
    }

    #[test]
    fn ell_five_is_not_a_witness() {
        let spec = WitnessSpec::new(14).unwrap();
        let rep = verify_witness(&spec, 5, 0);
        assert!(rep.identity_holds);
        assert!(!rep.verified);
        assert_eq!(rep.representation_count, 1);
    }

    #[test]
    fn search_ceiling() {
        assert!(matches!(
            find_witnesses(14, 5, 40),
            Err(Error::WitnessSearchExhausted { found: 2, .. })
        ));
    }

    #[test]
    fn surveys() {
        let s = survey(PolygonalFamily::new(5).unwrap(), 10_000);
        assert!(s.exceptions.is_empty() && s.largest_non_square_class.is_none());
        let s = survey(PolygonalFamily::new(8).unwrap(), 100);
        for n in (4..=100).step_by(8) {
            assert!(s.exceptions.iter().any(|e| e.n == n), "n = {n}");
        }
        let s = survey(PolygonalFamily::new(14).unwrap(), 2000);
        let t = s.largest_non_square_class.unwrap();
        assert!(s.exceptions.iter().filter(|e| e.n > t).all(|e| e.square_class_3));
        assert!(s.exceptions.iter().any(|e| e.n == 18 && e.square_class_3));
    }

    #[test]
    fn witness_residue_class_under_negation() {
        // 6r - 1 = 5 (mod 12) for odd r, = -1 (mod 12) for even r
        for m in [14u64, 26, 38, 50, 62] {
            let spec = WitnessSpec::new(m).unwrap();
            let res = (6 * spec.r - 1) % 12;
            if spec.r % 2 == 1 {
                assert_eq!(res, 5);
            } else {
                assert_eq!(CosetZ3::new(12, [res as i64; 3]).negated(), CosetZ3::new(12, [1, 1, 1]));
            }
        }
    }
}
