//! The `m = 14` genus: four cosets of `12 Z^3` with their automorph weights,
//! the weighted genus and spinor-genus theta averages, and the checks built
//! on them.
//!
//! In Euclidean coordinates the cosets are `nu = (5,5,5)`, `5 nu = (1,1,1)`,
//! `mu = (5,1,1)` and `5 mu = (1,5,5)` modulo 12. The spinor genera are
//! `{nu, mu}` (called [`SpinorGenus::Plus`]) and `{5 nu, 5 mu}`
//! ([`SpinorGenus::Minus`]).
//!
//! The identities checked here:
//!
//! ```text
//! gen   = 3/4 (T[nu]/6 + T[5nu]/6 + T[mu]/2 + T[5mu]/2)
//! spn+  = 3/2 (T[nu]/6 + T[mu]/2)   = gen - u/8
//! spn-  = 3/2 (T[5nu]/6 + T[5mu]/2) = gen + u/8
//! ```
//!
//! where `u = sum_{r = 1 (mod 4)} r q^{3 r^2}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coset::CosetZ3;
use crate::error::{Error, Result};
use crate::qseries::{rational, rational_string, QSeries, Rational};

/// Number of initial coefficients the valence-formula argument needs for the
/// `m = 14` identity (weight 3/2, level 576).
pub const SIEGEL_WEIL_BOUND: u64 = 27_648;

pub const MODULUS: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusMember {
    Nu,
    FiveNu,
    Mu,
    FiveMu,
}

impl GenusMember {
    pub const ALL: [GenusMember; 4] = [
        GenusMember::Nu,
        GenusMember::FiveNu,
        GenusMember::Mu,
        GenusMember::FiveMu,
    ];

    pub fn coset(self) -> CosetZ3 {
        let r = match self {
            GenusMember::Nu => [5, 5, 5],
            GenusMember::FiveNu => [1, 1, 1],
            GenusMember::Mu => [5, 1, 1],
            GenusMember::FiveMu => [1, 5, 5],
        };
        CosetZ3::new(MODULUS, r)
    }

    /// Automorph weight used in the theta averages.
    pub fn weight(self) -> u32 {
        match self {
            GenusMember::Nu | GenusMember::FiveNu => 6,
            GenusMember::Mu | GenusMember::FiveMu => 2,
        }
    }

    pub fn spinor_genus(self) -> SpinorGenus {
        match self {
            GenusMember::Nu | GenusMember::Mu => SpinorGenus::Plus,
            GenusMember::FiveNu | GenusMember::FiveMu => SpinorGenus::Minus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenusMember::Nu => "nu",
            GenusMember::FiveNu => "5nu",
            GenusMember::Mu => "mu",
            GenusMember::FiveMu => "5mu",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinorGenus {
    /// Contains the coset attached to `P_14`.
    Plus,
    Minus,
}

impl SpinorGenus {
    pub fn members(self) -> [GenusMember; 2] {
        match self {
            SpinorGenus::Plus => [GenusMember::Nu, GenusMember::Mu],
            SpinorGenus::Minus => [GenusMember::FiveNu, GenusMember::FiveMu],
        }
    }
}

/// The hardcoded `m = 14` genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GenusM14;

impl GenusM14 {
    pub fn members(&self) -> [GenusMember; 4] {
        GenusMember::ALL
    }

    pub fn cosets(&self) -> [CosetZ3; 4] {
        GenusMember::ALL.map(GenusMember::coset)
    }

    pub fn weights(&self) -> [u32; 4] {
        GenusMember::ALL.map(GenusMember::weight)
    }

    /// Checks every stored weight against a direct stabilizer count.
    pub fn verify_weights(&self) -> Result<()> {
        for g in GenusMember::ALL {
            let found = g.coset().automorph_count(false);
            if found != g.weight() {
                return Err(Error::Verification(format!(
                    "automorph count of {} is {found}, expected {}",
                    g.name(),
                    g.weight()
                )));
            }
        }
        Ok(())
    }
}

/// The four coset theta series, computed once to a common bound.
#[derive(Debug, Clone)]
pub struct GenusThetas {
    bound: u64,
    series: [QSeries; 4],
}

impl GenusThetas {
    pub fn compute(bound: u64) -> Self {
        let series: Vec<QSeries> = GenusMember::ALL
            .par_iter()
            .map(|g| g.coset().theta_series(bound))
            .collect();
        GenusThetas {
            bound,
            series: series.try_into().expect("four members"),
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn theta(&self, g: GenusMember) -> &QSeries {
        let i = GenusMember::ALL.iter().position(|&x| x == g).expect("member");
        &self.series[i]
    }

    /// `sum_g T[g] / weight(g)` over the given members.
    fn weighted_sum(&self, members: &[GenusMember]) -> QSeries {
        members.iter().fold(QSeries::zero(self.bound), |acc, &g| {
            acc.add(&self.theta(g).scale(&rational(1, g.weight() as i64)))
        })
    }

    /// Weighted average over the genus.
    pub fn genus_theta(&self) -> QSeries {
        self.weighted_sum(&GenusMember::ALL).scale(&rational(3, 4))
    }

    /// Weighted average over one spinor genus.
    pub fn spinor_theta(&self, which: SpinorGenus) -> QSeries {
        self.weighted_sum(&which.members()).scale(&rational(3, 2))
    }

    /// `G = T[5nu]/6 + T[5mu]/2 + T[nu]/6 + T[mu]/2`, the bracket of the sieve identity.
    pub fn weighted_coset_sum(&self) -> QSeries {
        self.weighted_sum(&GenusMember::ALL)
    }
}

pub fn genus_theta(bound: u64) -> QSeries {
    GenusThetas::compute(bound).genus_theta()
}

pub fn spinor_theta(which: SpinorGenus, bound: u64) -> QSeries {
    GenusThetas::compute(bound).spinor_theta(which)
}

/// `u = sum_{r = 1 (mod 4)} r q^{3 r^2}`, the unary correction term.
pub fn correction_series(bound: u64) -> QSeries {
    QSeries::unary_theta(1, 3, 12, bound).expect("valid unary theta parameters")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub identity: String,
    pub exponent: u64,
    #[serde(with = "rational_string")]
    pub lhs: Rational,
    #[serde(with = "rational_string")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub holds: bool,
    pub discrepancy_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiegelWeilReport {
    pub bound: u64,
    pub coefficients_checked: u64,
    pub weights_verified: bool,
    pub identities: Vec<IdentityCheck>,
    /// At most [`SiegelWeilReport::MAX_LISTED`] discrepancies, smallest exponents first.
    pub discrepancies: Vec<Discrepancy>,
    pub verified: bool,
}

impl SiegelWeilReport {
    pub const MAX_LISTED: usize = 32;
}

/// Checks `spn+ = gen - u/8` and `spn- = gen + u/8` exactly at every exponent `<= bound`.
pub fn verify_siegel_weil(bound: u64) -> SiegelWeilReport {
    let thetas = GenusThetas::compute(bound);
    let gen = thetas.genus_theta();
    let u8 = correction_series(bound).scale(&rational(1, 8));
    let checks = [
        (
            "spn+ = gen - u/8",
            thetas.spinor_theta(SpinorGenus::Plus),
            gen.sub(&u8),
        ),
        (
            "spn- = gen + u/8",
            thetas.spinor_theta(SpinorGenus::Minus),
            gen.add(&u8),
        ),
    ];
    let mut identities = Vec::new();
    let mut discrepancies = Vec::new();
    for (name, lhs, rhs) in &checks {
        let diffs: Vec<_> = lhs.differences(rhs, bound).collect();
        identities.push(IdentityCheck {
            identity: name.to_string(),
            holds: diffs.is_empty(),
            discrepancy_count: diffs.len(),
        });
        discrepancies.extend(diffs.into_iter().map(|(exponent, lhs, rhs)| Discrepancy {
            identity: name.to_string(),
            exponent,
            lhs,
            rhs,
        }));
    }
    discrepancies.sort_by_key(|d| d.exponent);
    discrepancies.truncate(SiegelWeilReport::MAX_LISTED);
    let weights_verified = GenusM14.verify_weights().is_ok();
    SiegelWeilReport {
        bound,
        coefficients_checked: bound + 1,
        weights_verified,
        verified: weights_verified && identities.iter().all(|c| c.holds),
        identities,
        discrepancies,
    }
}

/// `[SL_2(Z) : Gamma_1(N)] = N^2 prod_{p | N} (1 - 1/p^2)`.
pub fn sturm_index(level: u64) -> u64 {
    assert!(level >= 1);
    crate::arith::prime_divisors(level)
        .into_iter()
        .fold(level * level, |acc, p| acc / (p * p) * (p * p - 1))
}

/// Coefficients needed to pin down a weight-3/2 form on `Gamma_1(N)`:
/// `(3/2)/12 * index`, rounded up.
pub fn weight_three_halves_coefficient_count(level: u64) -> u64 {
    sturm_index(level).div_ceil(8)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub ell: u64,
    /// The coset class that must miss `3 ell^2`.
    pub class: GenusMember,
    pub norm: u64,
    pub solutions: u64,
}

/// For every prime `5 <= ell <= prime_bound` with `ell = 1 (mod 12)`, counts
/// solutions of `X^2 + Y^2 + Z^2 = 3 ell^2` with `X = Y = Z = 5 (mod 12)`;
/// for `ell = 7 (mod 12)`, with `X = Y = Z = 1 (mod 12)`. Any solution is an error.
pub fn prime_class_scan(prime_bound: u64) -> Result<Vec<PrimeCheck>> {
    if prime_bound < 5 {
        return Err(Error::invalid(format!("prime bound must be >= 5, got {prime_bound}")));
    }
    let checks: Vec<PrimeCheck> = crate::arith::primes_up_to(prime_bound)
        .into_par_iter()
        .filter_map(|ell| {
            let class = match ell % 12 {
                1 => GenusMember::Nu,
                7 => GenusMember::FiveNu,
                _ => return None,
            };
            let norm = 3 * ell * ell;
            Some(PrimeCheck {
                ell,
                class,
                norm,
                solutions: class.coset().rep_count(norm),
            })
        })
        .collect();
    if let Some(bad) = checks.iter().find(|c| c.solutions != 0) {
        return Err(Error::Verification(format!(
            "{} solutions of X^2+Y^2+Z^2 = {} in class {} (ell = {})",
            bad.solutions,
            bad.norm,
            bad.class.name(),
            bad.ell
        )));
    }
    Ok(checks)
}

/// Which closed form the residual `R = sieve(T^3, 24, 3) - 48 G` matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    /// `R = sieve(T^3(q^9), 24, 3)`, coefficient `r_3(n/9)`.
    NinthDilation,
    /// `R = 8 sieve(T^3(q^3), 24, 3)`, coefficient `8 r_3(n/3)`.
    PrintedTripleDilation,
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateResult {
    pub form: String,
    pub matches: bool,
    pub mismatches: usize,
    pub first_mismatch: Option<Discrepancy>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveProbeReport {
    pub bound: u64,
    /// Nonzero residual coefficients at exponents `<= bound` (at most 16 listed).
    pub residual_sample: Vec<(u64, String)>,
    pub residual_nonzero_terms: usize,
    pub candidates: Vec<CandidateResult>,
    pub verdict: ProbeVerdict,
}

/// Splits `r_3` on the class `3 (mod 24)` into the `m = 14` coset sum and a
/// residual, and compares the residual against two closed forms.
pub fn sieve_identity_probe(bound: u64) -> SieveProbeReport {
    let thetas = GenusThetas::compute(bound);
    let cube = QSeries::theta_cube(bound);
    let sieved = cube.sieve(24, 3).expect("3 < 24");
    let residual = sieved.sub(&thetas.weighted_coset_sum().scale(&rational(48, 1)));

    let ninth = sieved_dilation(9, bound);
    let printed = sieved_dilation(3, bound).scale(&rational(8, 1));

    let mut candidates = Vec::new();
    for (name, cand) in [
        ("sieve(T^3(q^9), 24, 3)", &ninth),
        ("8 sieve(T^3(q^3), 24, 3)", &printed),
    ] {
        let diffs: Vec<_> = residual.differences(cand, bound).collect();
        candidates.push(CandidateResult {
            form: name.to_string(),
            matches: diffs.is_empty(),
            mismatches: diffs.len(),
            first_mismatch: diffs.first().map(|(e, a, b)| Discrepancy {
                identity: format!("R = {name}"),
                exponent: *e,
                lhs: a.clone(),
                rhs: b.clone(),
            }),
        });
    }
    let verdict = match (candidates[0].matches, candidates[1].matches) {
        (true, true) => ProbeVerdict::Both,
        (true, false) => ProbeVerdict::NinthDilation,
        (false, true) => ProbeVerdict::PrintedTripleDilation,
        (false, false) => ProbeVerdict::Neither,
    };
    SieveProbeReport {
        bound,
        residual_sample: residual
            .terms()
            .take(16)
            .map(|(e, c)| (e, c.to_string()))
            .collect(),
        residual_nonzero_terms: residual.support().count(),
        candidates,
        verdict,
    }
}

/// `sieve(T^3(q^k), 24, 3)` truncated at `bound`.
///
/// `dilate` of `T^3` truncated at `floor(bound / k)` is exact up to
/// `k * floor(bound / k)`; the exponents above that and `<= bound` are not
/// multiples of `k`, so their coefficients are zero and the bound can be
/// raised to `bound`.
pub fn sieved_dilation(k: u64, bound: u64) -> QSeries {
    let terms = QSeries::theta_cube(bound / k)
        .terms()
        .map(|(e, c)| (e * k, c.clone()))
        .filter(|(e, _)| e % 24 == 3)
        .collect::<Vec<_>>();
    QSeries::from_terms(bound, terms).expect("terms within bound")
}

/// Eisenstein coefficient at `3 ell^2` two ways: from the weighted genus
/// average, and as `24 H(3 ell^2) / 64` from class numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinCheck {
    pub ell: u64,
    #[serde(with = "rational_string")]
    pub from_genus: Rational,
    #[serde(with = "rational_string")]
    pub from_class_numbers: Rational,
}

pub fn eisenstein_checks(prime_bound: u64) -> Result<Vec<EisensteinCheck>> {
    let bound = 3 * prime_bound * prime_bound;
    let gen = genus_theta(bound);
    crate::arith::primes_up_to(prime_bound)
        .into_iter()
        .filter(|&p| p > 3)
        .map(|ell| {
            let h = crate::class_numbers::hurwitz(3 * ell * ell)?;
            Ok(EisensteinCheck {
                ell,
                from_genus: gen.coefficient(3 * ell * ell)?,
                from_class_numbers: h * rational(24, 64),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn r(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn weights_are_stabilizer_counts() {
        GenusM14.verify_weights().unwrap();
        assert_eq!(GenusM14.weights(), [6, 6, 2, 2]);
    }

    #[test]
    fn theta_series_are_pairwise_distinct() {
        let t = GenusThetas::compute(2000);
        for (i, a) in GenusMember::ALL.iter().enumerate() {
            for b in &GenusMember::ALL[i + 1..] {
                assert_ne!(t.theta(*a), t.theta(*b), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn support_is_three_mod_24() {
        let t = GenusThetas::compute(5000);
        for g in GenusMember::ALL {
            assert!(t.theta(g).support().all(|e| e % 24 == 3), "{g:?}");
        }
    }

    #[test]
    fn genus_coefficients() {
        let g = genus_theta(600);
        assert_eq!(g.coefficient(27).unwrap(), r(3, 8));
        assert_eq!(g.coefficient(75).unwrap(), r(7, 8));
        assert_eq!(g.coefficient(507).unwrap(), r(13, 8));
    }

    #[test]
    fn spinor_coefficients() {
        let t = GenusThetas::compute(600);
        let plus = t.spinor_theta(SpinorGenus::Plus);
        let minus = t.spinor_theta(SpinorGenus::Minus);
        assert_eq!(plus.coefficient(27).unwrap(), r(3, 4));
        assert!(plus.coefficient(507).unwrap().is_zero());
        assert!(minus.coefficient(147).unwrap().is_zero());
        assert_eq!(plus.coefficient(75).unwrap(), r(1, 4));
        // gen is the mean of the two spinor genera
        let mean = plus.add(&minus).scale(&r(1, 2));
        assert_eq!(mean, t.genus_theta());
        assert!(plus.has_nonnegative_coefficients() && minus.has_nonnegative_coefficients());
    }

    #[test]
    fn siegel_weil_small_bound() {
        let rep = verify_siegel_weil(3000);
        assert!(rep.verified, "{rep:?}");
        assert_eq!(rep.coefficients_checked, 3001);
        assert!(rep.discrepancies.is_empty());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(sturm_index(576), 221_184);
        assert_eq!(sturm_index(1), 1);
        assert_eq!(sturm_index(4), 12);
        assert_eq!(weight_three_halves_coefficient_count(576), SIEGEL_WEIL_BOUND);
    }

    #[test]
    fn prime_class_examples() {
        assert_eq!(GenusMember::Nu.coset().rep_count(3 * 13 * 13), 0);
        assert_eq!(GenusMember::FiveNu.coset().rep_count(3 * 7 * 7), 0);
        // ell = 5 sits outside both residue classes and is represented
        assert_eq!(GenusMember::Nu.coset().rep_count(75), 1);
        let checks = prime_class_scan(100).unwrap();
        let ells: Vec<u64> = checks.iter().map(|c| c.ell).collect();
        assert_eq!(ells, vec![7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97]);
        assert!(prime_class_scan(4).is_err());
    }

    #[test]
    fn probe_small() {
        let rep = sieve_identity_probe(600);
        assert_eq!(rep.verdict, ProbeVerdict::NinthDilation);
        let printed = &rep.candidates[1];
        let first = printed.first_mismatch.as_ref().unwrap();
        assert_eq!((first.exponent, first.lhs.clone(), first.rhs.clone()), (3, r(0, 1), r(48, 1)));
        assert_eq!(sieved_dilation(9, 600).coefficient(27).unwrap(), r(8, 1));
        assert_eq!(sieved_dilation(3, 600).coefficient(27).unwrap() * r(8, 1), r(240, 1));
    }

    #[test]
    fn eisenstein_two_routes() {
        for c in eisenstein_checks(40).unwrap() {
            assert_eq!(c.from_genus, c.from_class_numbers, "ell = {}", c.ell);
            if c.ell % 3 == 1 {
                assert_eq!(c.from_genus, r(c.ell as i64, 8));
            }
        }
    }
}
