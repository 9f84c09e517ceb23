//! Packed bit vectors with the two sumset kernels the crate needs: truncated
//! integer sumsets (global representability up to a bound) and cyclic
//! sumsets (residue images modulo `n`).

use rayon::prelude::*;

const CHUNK_WORDS: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        b.clear_tail();
        b
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// `{ i + s : i in self, s in shifts }` truncated to `[0, len)`.
    ///
    /// Output words are independent, so they are filled in parallel chunks.
    pub fn shifted_union(&self, shifts: &[u64]) -> Bits {
        let mut out = Bits::new(self.len);
        let src = &self.words;
        let shifts: Vec<(usize, u32)> = shifts
            .iter()
            .filter(|&&s| (s as usize) < self.len)
            .map(|&s| ((s / 64) as usize, (s % 64) as u32))
            .collect();
        out.words
            .par_chunks_mut(CHUNK_WORDS)
            .enumerate()
            .for_each(|(ci, chunk)| {
                let base = ci * CHUNK_WORDS;
                for &(ws, bs) in &shifts {
                    for (k, dst) in chunk.iter_mut().enumerate() {
                        let i = base + k;
                        if i < ws {
                            continue;
                        }
                        let j = i - ws;
                        let mut v = src[j] << bs;
                        if bs != 0 && j > 0 {
                            v |= src[j - 1] >> (64 - bs);
                        }
                        *dst |= v;
                    }
                }
            });
        out.clear_tail();
        out
    }

    /// `{ (a + b) mod len : a in self, b in other }` for two sets of equal length.
    pub fn cyclic_sumset(&self, other: &Bits) -> Bits {
        assert_eq!(self.len, other.len);
        let n = self.len;
        let (na, nb) = (self.count_ones(), other.count_ones());
        if na == 0 || nb == 0 {
            return Bits::new(n);
        }
        // |A| + |B| > |G| forces A + B = G in any finite abelian group.
        if na + nb > n {
            return Bits::full(n);
        }
        let (small, large) = if na <= nb {
            (self, other)
        } else {
            (other, self)
        };
        let mut wide = Bits::new(2 * n);
        wide.words[..large.words.len()].copy_from_slice(&large.words);
        let shifts: Vec<u64> = small.iter_ones().map(|a| a as u64).collect();
        let linear = wide.shifted_union(&shifts);
        let mut out = Bits::new(n);
        for i in linear.iter_ones() {
            out.set(i % n);
        }
        out
    }
}
