//! Canonical Shannon–Fano codes over the blocks `Σ^l`.
//!
//! Block `b` with probability `p(b)` gets a codeword of length
//! `⌈log2(1/p(b))⌉`. Codewords are assigned canonically: blocks sorted by
//! decreasing probability (ties broken by the block itself, lexicographic),
//! each codeword being the previous one plus one, left-shifted to the new
//! length. Lengths are computed exactly, so dyadic probabilities never land
//! on the wrong side of a power of two.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::compressors::BitString;
use crate::error::{Error, Result};
use crate::exact::{ceil_log2_inverse, kraft_sum, rational_log2};

/// Float keys closer than this are compared exactly.
const KEY_TIE_WINDOW: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct BlockCode {
    k: usize,
    l: usize,
    codewords: Vec<BitString>,
}

impl BlockCode {
    /// Builds the code for `probs[block_index(b)] = p(b)`. Every probability
    /// must be positive and their sum at most 1.
    pub fn shannon_fano(k: usize, l: usize, probs: &[BigRational]) -> Result<Self> {
        if let Some(i) = probs.iter().position(|p| !p.is_positive()) {
            return Err(Error::InvalidProbability { symbol: i, value: probs[i].to_string() });
        }
        let lengths: Vec<u32> = probs.iter().map(ceil_log2_inverse).collect();
        let keys: Vec<f64> = probs.iter().map(rational_log2).collect();

        let mut order: Vec<usize> = (0..probs.len()).collect();
        order.sort_by(|&i, &j| {
            let by_prob = if (keys[i] - keys[j]).abs() > KEY_TIE_WINDOW {
                keys[j].partial_cmp(&keys[i]).unwrap_or(Ordering::Equal)
            } else {
                probs[j].cmp(&probs[i])
            };
            by_prob.then(i.cmp(&j))
        });

        let mut codewords = vec![BitString::new(); probs.len()];
        let mut code = BigUint::zero();
        let mut prev_len = 0u32;
        for (rank, &i) in order.iter().enumerate() {
            let len = lengths[i];
            if rank > 0 {
                code += 1u32;
            }
            code <<= (len - prev_len) as usize;
            if code.bits() > len as u64 {
                return Err(Error::InvalidParameter("block probabilities violate Kraft's inequality".into()));
            }
            codewords[i] = BitString::from_bits((0..len as u64).rev().map(|b| code.bit(b)).collect());
            prev_len = len;
        }
        Ok(Self { k, l, codewords })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn block_len(&self) -> usize {
        self.l
    }

    pub fn codeword(&self, block_index: usize) -> &BitString {
        &self.codewords[block_index]
    }

    pub fn codewords(&self) -> &[BitString] {
        &self.codewords
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.codewords.iter().map(|c| c.len() as u32).collect()
    }

    /// Exact `Σ_b 2^{-|code(b)|}`.
    pub fn kraft_sum(&self) -> BigRational {
        kraft_sum(&self.lengths())
    }

    pub fn is_prefix_free(&self) -> bool {
        let mut sorted: Vec<&BitString> = self.codewords.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| !w[0].is_prefix_of(w[1]))
    }

    pub fn decoder(&self) -> BlockDecoder {
        BlockDecoder {
            table: self.codewords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect(),
            max_len: self.codewords.iter().map(BitString::len).max().unwrap_or(0),
        }
    }
}

/// Codeword lookup for decoding.
#[derive(Clone, Debug)]
pub struct BlockDecoder {
    table: HashMap<BitString, usize>,
    max_len: usize,
}

impl BlockDecoder {
    /// Reads one codeword from `bits[start..]`; returns the block index and
    /// the position after it.
    pub fn read(&self, bits: &[bool], start: usize) -> Option<(usize, usize)> {
        let mut word = BitString::new();
        let mut pos = start;
        if let Some(&i) = self.table.get(&word) {
            return Some((i, pos));
        }
        while pos < bits.len() && word.len() < self.max_len {
            word.push(bits[pos]);
            pos += 1;
            if let Some(&i) = self.table.get(&word) {
                return Some((i, pos));
            }
        }
        None
    }
}

/// Whether the Kraft sum of a code is at most one.
pub fn kraft_feasible(code: &BlockCode) -> bool {
    code.kraft_sum() <= BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn dyadic_code() {
        let code = BlockCode::shannon_fano(2, 2, &[q(1, 2), q(1, 4), q(1, 8), q(1, 8)]).unwrap();
        let words: Vec<String> = code.codewords().iter().map(|c| c.to_string()).collect();
        assert_eq!(words, ["0", "10", "110", "111"]);
        assert_eq!(code.kraft_sum(), q(1, 1));
    }

    #[test]
    fn ties_break_lexicographically() {
        let code = BlockCode::shannon_fano(2, 2, &[q(1, 8), q(3, 8), q(1, 8), q(3, 8)]).unwrap();
        let words: Vec<String> = code.codewords().iter().map(|c| c.to_string()).collect();
        // lengths 3, 2, 3, 2; order 01, 11, 00, 10
        assert_eq!(words, ["100", "00", "101", "01"]);
        assert!(code.is_prefix_free());
        assert!(kraft_feasible(&code));
    }

    #[test]
    fn uniform_code_is_fixed_width() {
        let code = BlockCode::shannon_fano(3, 1, &[q(1, 3), q(1, 3), q(1, 3)]).unwrap();
        let words: Vec<String> = code.codewords().iter().map(|c| c.to_string()).collect();
        assert_eq!(words, ["00", "01", "10"]);
    }

    #[test]
    fn very_small_probabilities() {
        let tiny = BigRational::new(BigInt::one(), BigInt::one() << 200usize);
        let rest = BigRational::one() - &tiny;
        let code = BlockCode::shannon_fano(2, 1, &[rest, tiny]).unwrap();
        assert_eq!(code.codeword(0).len(), 1);
        assert_eq!(code.codeword(1).len(), 200);
        assert!(code.is_prefix_free());
    }

    #[test]
    fn decoder_reads_codewords() {
        let code = BlockCode::shannon_fano(2, 2, &[q(1, 2), q(1, 4), q(1, 8), q(1, 8)]).unwrap();
        let d = code.decoder();
        let bits: Vec<bool> = "110010".chars().map(|c| c == '1').collect();
        assert_eq!(d.read(&bits, 0), Some((2, 3)));
        assert_eq!(d.read(&bits, 3), Some((0, 4)));
        assert_eq!(d.read(&bits, 4), Some((1, 6)));
        assert_eq!(d.read(&bits, 6), None);
    }

    #[test]
    fn rejects_zero_probability() {
        assert!(BlockCode::shannon_fano(2, 1, &[q(1, 1), q(0, 1)]).is_err());
    }
}
