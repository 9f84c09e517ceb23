//! Congruence-level admissibility of `P_m`: residue images of `p_m` and of
//! the ternary sum modulo prime powers, the mod-8 obstructions for `4 | m`,
//! and 2-adic surjectivity of a single `p_m`.
//!
//! All checks are finite residue enumerations. For a prime `p` the working
//! precision is `p^{k_p}` with `k_p = ord_p(8 (m-2)^3) + 1`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, ord, prime_divisors};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::polygonal::PolygonalFamily;

/// A subset of `Z / modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    modulus: u64,
    bits: Bits,
}

impl ResidueSet {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, r: u64) -> bool {
        self.bits.get((r % self.modulus) as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(|r| r as u64)
    }

    /// Residues in `0..modulus` not in the set.
    pub fn missing(&self) -> Vec<u64> {
        (0..self.modulus).filter(|&r| !self.contains(r)).collect()
    }

    /// Image under reduction modulo a divisor `d` of the modulus.
    pub fn reduce(&self, d: u64) -> ResidueSet {
        assert!(d > 0 && self.modulus % d == 0, "{d} does not divide {}", self.modulus);
        let mut bits = Bits::new(d as usize);
        for r in self.iter() {
            bits.set((r % d) as usize);
        }
        ResidueSet { modulus: d, bits }
    }

    pub fn to_set(&self) -> BTreeSet<u64> {
        self.iter().collect()
    }

    fn sumset(&self, other: &ResidueSet) -> ResidueSet {
        assert_eq!(self.modulus, other.modulus);
        ResidueSet {
            modulus: self.modulus,
            bits: self.bits.cyclic_sumset(&other.bits),
        }
    }
}

/// Residues of `P_m` missing modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub m: u64,
    pub modulus: u64,
    pub missing_residues: BTreeSet<u64>,
}

/// `p_m(x) mod d`, which depends only on `x mod 2d`.
fn value_mod(family: PolygonalFamily, x: u64, d: u64) -> u64 {
    let m = family.m() as i128;
    let x = x as i128;
    let twice = (m - 2) * x * x - (m - 4) * x;
    debug_assert!(twice >= 0);
    ((twice / 2) % d as i128) as u64
}

/// Least period of `x -> p_m(x) mod d`; always a divisor of `2d`.
pub fn polygonal_period(family: PolygonalFamily, d: u64) -> u64 {
    assert!(d >= 1);
    let m = family.m() as i128;
    let d128 = d as i128;
    // p(x + L) - p(x) = (m-2) L x + ((m-2) L^2 - (m-4) L) / 2, linear in x
    divisors(2 * d)
        .into_iter()
        .find(|&l| {
            let l = l as i128;
            let constant = ((m - 2) * l * l - (m - 4) * l) / 2;
            constant % d128 == 0 && ((m - 2) * l) % d128 == 0
        })
        .expect("2d is always a period")
}

/// `{ p_m(x) mod d : x in Z }`, by enumerating one full period.
pub fn polygonal_residues(family: PolygonalFamily, modulus: u64) -> ResidueSet {
    assert!(modulus >= 1, "modulus must be positive");
    let period = polygonal_period(family, modulus);
    let mut bits = Bits::new(modulus as usize);
    for x in 0..period {
        bits.set(value_mod(family, x, modulus) as usize);
    }
    ResidueSet { modulus, bits }
}

/// `{ a + b + c mod d : a, b, c polygonal residues }`.
pub fn sum_residues(family: PolygonalFamily, modulus: u64) -> ResidueSet {
    let one = polygonal_residues(family, modulus);
    one.sumset(&one).sumset(&one)
}

pub fn obstruction_report(family: PolygonalFamily, modulus: u64) -> ObstructionReport {
    ObstructionReport {
        m: family.m(),
        modulus,
        missing_residues: sum_residues(family, modulus).missing().into_iter().collect(),
    }
}

/// The residue class mod 8 that `P_m` misses when `4 | m`: 4 for `m = 0 (mod 8)`,
/// 7 for `m = 4 (mod 8)`; `None` otherwise.
pub fn mod8_obstruction(family: PolygonalFamily) -> Option<u64> {
    match family.m() % 8 {
        0 => Some(4),
        4 => Some(7),
        _ => None,
    }
}

/// Whether `p_m` alone hits every residue modulo `2^k`.
pub fn two_adic_surjective(family: PolygonalFamily, k: u32) -> Result<bool> {
    if family.m() % 4 == 0 {
        return Err(Error::invalid(format!(
            "two-adic surjectivity is only claimed for 4 not dividing m (m = {})",
            family.m()
        )));
    }
    if !(1..=24).contains(&k) {
        return Err(Error::invalid(format!("need 1 <= k <= 24, got {k}")));
    }
    Ok(polygonal_residues(family, 1 << k).is_full())
}

/// `k_p = ord_p(8 (m-2)^3) + 1`.
pub fn precision(family: PolygonalFamily, p: u64) -> u32 {
    let n = family.m() - 2;
    ord(p, 8) + 3 * ord(p, n) + 1
}

/// Primes where local checks are run: the prime divisors of `6 (m-2)`.
pub fn critical_primes(family: PolygonalFamily) -> Vec<u64> {
    prime_divisors(6 * (family.m() - 2))
}

/// Precomputed residue images of `P_m` at every critical prime power, so many
/// `n` can be tested cheaply.
#[derive(Debug, Clone)]
pub struct LocalProfile {
    family: PolygonalFamily,
    images: Vec<(u64, u32, ResidueSet)>,
}

impl LocalProfile {
    pub fn new(family: PolygonalFamily) -> Self {
        let images = critical_primes(family)
            .into_iter()
            .map(|p| {
                let k = precision(family, p);
                let modulus = p.checked_pow(k).expect("prime power modulus overflows");
                (p, k, sum_residues(family, modulus))
            })
            .collect();
        LocalProfile { family, images }
    }

    pub fn family(&self) -> PolygonalFamily {
        self.family
    }

    /// `(p, k_p, image of P_m mod p^{k_p})` for each critical prime.
    pub fn images(&self) -> &[(u64, u32, ResidueSet)] {
        &self.images
    }

    /// Primes `p` at which `P_m = n (mod p^{k_p})` has no solution.
    pub fn failing_primes(&self, n: u64) -> Vec<u64> {
        self.images
            .iter()
            .filter(|(_, _, img)| !img.contains(n))
            .map(|(p, _, _)| *p)
            .collect()
    }

    pub fn admits(&self, n: u64) -> bool {
        self.images.iter().all(|(_, _, img)| img.contains(n))
    }
}

/// Whether `P_m = n` is solvable modulo `p^{k_p}` for every critical prime `p`.
pub fn locally_admissible(family: PolygonalFamily, n: u64) -> bool {
    LocalProfile::new(family).admits(n)
}
