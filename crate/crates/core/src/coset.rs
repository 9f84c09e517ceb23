//! Translated sublattices `{ v in Z^3 : v_i = rho_i (mod M) }` of the cube
//! lattice with the sum-of-squares norm.
//!
//! The lattice coset attached to `P_m` lives here after rescaling by
//! `1/(m-2)` (even `m`) or `1/(2(m-2))` (odd `m`), so counting is over small
//! integer vectors. The stored sign convention is `rho = +(m-4)/2` resp.
//! `+(m-4)`; global negation of `rho` never changes a count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::isqrt;
use crate::polygonal::PolygonalFamily;
use crate::qseries::QSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetZ3 {
    modulus: u64,
    residues: [u64; 3],
}

impl CosetZ3 {
    /// Reduces `residues` modulo `modulus`. Panics on `modulus == 0`.
    pub fn new(modulus: u64, residues: [i64; 3]) -> Self {
        assert!(modulus > 0, "coset modulus must be positive");
        let m = modulus as i64;
        CosetZ3 {
            modulus,
            residues: residues.map(|r| r.rem_euclid(m) as u64),
        }
    }

    /// The full cube lattice `Z^3`.
    pub fn cube() -> Self {
        CosetZ3::new(1, [0, 0, 0])
    }

    /// The rescaled coset whose norm-`ell_n` vectors correspond to
    /// representations of `n` by `P_m`.
    ///
    /// Defined for every `m >= 3`; when `4 | m` the local obstruction of
    /// [`crate::local::mod8_obstruction`] applies to the attached form.
    pub fn for_family(family: PolygonalFamily) -> Self {
        let m = family.m() as i64;
        if family.is_even() {
            let h = (m - 4) / 2;
            CosetZ3::new((m - 2) as u64, [h, h, h])
        } else {
            CosetZ3::new(2 * (m - 2) as u64, [m - 4, m - 4, m - 4])
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> [u64; 3] {
        self.residues
    }

    pub fn negated(&self) -> Self {
        CosetZ3::new(self.modulus, self.residues.map(|r| -(r as i64)))
    }

    pub fn contains(&self, v: [i64; 3]) -> bool {
        let m = self.modulus as i64;
        v.iter()
            .zip(self.residues)
            .all(|(&x, r)| x.rem_euclid(m) as u64 == r)
    }

    /// Members of the residue class of coordinate `i` with `x^2 <= limit`, ascending.
    fn coordinate_values(&self, i: usize, limit: u64) -> Vec<i64> {
        let m = self.modulus as i64;
        let s = isqrt(limit) as i64;
        let r = self.residues[i] as i64;
        // smallest x >= -s with x = r (mod m)
        let start = -s + (r - (-s)).rem_euclid(m);
        (0..)
            .map(|k| start + k * m)
            .take_while(|&x| x <= s)
            .collect()
    }

    /// Number of ordered `(X, Y, Z)` in the coset with `X^2 + Y^2 + Z^2 = ell`.
    pub fn rep_count(&self, ell: u64) -> u64 {
        let xs = self.coordinate_values(0, ell);
        let ys = self.coordinate_values(1, ell);
        let m = self.modulus as i64;
        let rz = self.residues[2] as i64;
        let mut count = 0u64;
        for &x in &xs {
            let rx = ell - (x * x) as u64;
            for &y in &ys {
                let yy = (y * y) as u64;
                if yy > rx {
                    continue;
                }
                let rest = rx - yy;
                let z = isqrt(rest);
                if z * z != rest {
                    continue;
                }
                let z = z as i64;
                if z.rem_euclid(m) == rz {
                    count += 1;
                }
                if z != 0 && (-z).rem_euclid(m) == rz {
                    count += 1;
                }
            }
        }
        count
    }

    /// Theta series `sum_v q^{|v|^2}` over coset vectors, truncated at `bound`.
    pub fn theta_series(&self, bound: u64) -> QSeries {
        QSeries::from_counts(&self.norm_counts(bound))
    }

    /// `counts[l]` = number of coset vectors of norm `l`, for `l <= bound`.
    pub fn norm_counts(&self, bound: u64) -> Vec<u64> {
        let len = usize::try_from(bound).expect("bound too large") + 1;
        let xs = self.coordinate_values(0, bound);
        let ys = self.coordinate_values(1, bound);
        let zs = self.coordinate_values(2, bound);
        xs.par_iter()
            .fold(
                || vec![0u64; len],
                |mut acc, &x| {
                    let xx = (x * x) as u64;
                    for &y in &ys {
                        let xy = xx + (y * y) as u64;
                        if xy > bound {
                            continue;
                        }
                        for &z in &zs {
                            let n = xy + (z * z) as u64;
                            if n <= bound {
                                acc[n as usize] += 1;
                            }
                        }
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    }

    /// Number of signed coordinate permutations `s` with `s(rho) = rho (mod M)`.
    ///
    /// With `proper_only`, only the determinant `+1` elements are counted.
    pub fn automorph_count(&self, proper_only: bool) -> u32 {
        signed_permutations()
            .filter(|sp| !proper_only || sp.determinant() == 1)
            .filter(|sp| {
                let image = sp.apply(self.residues.map(|r| r as i64));
                self.contains(image)
            })
            .count() as u32
    }
}

/// An element of the hyperoctahedral group acting on `Z^3`:
/// `v -> (signs[0] v[perm[0]], signs[1] v[perm[1]], signs[2] v[perm[2]])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: [usize; 3],
    pub signs: [i64; 3],
}

impl SignedPermutation {
    pub fn apply(&self, v: [i64; 3]) -> [i64; 3] {
        [0, 1, 2].map(|i| self.signs[i] * v[self.perm[i]])
    }

    pub fn determinant(&self) -> i64 {
        let p = self.perm;
        let inversions = (p[0] > p[1]) as u32 + (p[0] > p[2]) as u32 + (p[1] > p[2]) as u32;
        let parity = if inversions % 2 == 0 { 1 } else { -1 };
        parity * self.signs.iter().product::<i64>()
    }
}

/// All 48 signed permutation matrices of size 3.
pub fn signed_permutations() -> impl Iterator<Item = SignedPermutation> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PERMS.into_iter().flat_map(|perm| {
        (0..8).map(move |mask: u32| SignedPermutation {
            perm,
            signs: [0, 1, 2].map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }),
        })
    })
}
