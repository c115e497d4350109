//! Seeded random measures, automata and strings for property suites and
//! examples.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::rand_core::RngCore;

use crate::compressors::{BitString, FiniteStateCompressor};
use crate::gales::FiniteStateGambler;
use crate::measures::ProbabilityMeasure;

/// Uniform integer in `0..n`.
pub fn below<R: RngCore>(rng: &mut R, n: usize) -> usize {
    ((rng.next_u64() as u128 * n as u128) >> 64) as usize
}

/// Uniform string over `k` symbols with length uniform in `0..=max_len`.
pub fn random_string<R: RngCore>(rng: &mut R, k: usize, max_len: usize) -> Vec<u8> {
    let len = below(rng, max_len + 1);
    (0..len).map(|_| below(rng, k) as u8).collect()
}

/// Rational weights `c_a / Σ c`, with `c_a` uniform in `min..=8`.
fn random_weights<R: RngCore>(rng: &mut R, k: usize, min: usize) -> Vec<BigRational> {
    loop {
        let counts: Vec<usize> = (0..k).map(|_| min + below(rng, 9 - min)).collect();
        let total: usize = counts.iter().sum();
        if total > 0 {
            return counts
                .into_iter()
                .map(|c| BigRational::new(BigInt::from(c), BigInt::from(total)))
                .collect();
        }
    }
}

/// A positive rational measure.
pub fn random_measure<R: RngCore>(rng: &mut R, k: usize) -> ProbabilityMeasure {
    ProbabilityMeasure::from_rationals(random_weights(rng, k, 1)).expect("weights are normalised")
}

/// A gambler with `1..=max_states` states, random transitions and rational
/// bets. Some bets may be zero.
pub fn random_gambler<R: RngCore>(rng: &mut R, k: usize, max_states: usize) -> FiniteStateGambler {
    let states = 1 + below(rng, max_states);
    let transitions = (0..states).map(|_| (0..k).map(|_| below(rng, states)).collect()).collect();
    let bets = (0..states).map(|_| random_weights(rng, k, 0)).collect();
    FiniteStateGambler::new(k, transitions, 0, bets).expect("valid gambler")
}

/// An information-lossless compressor with `1..=max_states` states. Each
/// state writes a prefix-free code of the next symbol, with codeword lengths
/// between 1 and 4.
pub fn random_compressor<R: RngCore>(rng: &mut R, k: usize, max_states: usize) -> FiniteStateCompressor {
    let states = 1 + below(rng, max_states);
    let min_len = crate::compressors::symbol_width(k);
    let transitions = (0..states).map(|_| (0..k).map(|_| below(rng, states)).collect()).collect();
    let outputs = (0..states)
        .map(|_| loop {
            let mut lengths: Vec<usize> = (0..k).map(|_| 1 + below(rng, 4)).collect();
            let kraft: f64 = lengths.iter().map(|&l| 0.5f64.powi(l as i32)).sum();
            if kraft > 1.0 {
                continue;
            }
            if lengths.iter().all(|&l| l < min_len) {
                lengths[0] = min_len;
            }
            break canonical_code(&lengths);
        })
        .collect();
    FiniteStateCompressor::new(k, transitions, 0, outputs).expect("valid compressor")
}

/// Canonical prefix code with the given lengths, which must satisfy
/// Kraft's inequality. Symbols of equal length are assigned in order.
pub fn canonical_code(lengths: &[usize]) -> Vec<BitString> {
    let mut order: Vec<usize> = (0..lengths.len()).collect();
    order.sort_by_key(|&a| (lengths[a], a));
    let mut codes = vec![BitString::new(); lengths.len()];
    let mut code = 0u64;
    let mut prev = 0;
    for (rank, &a) in order.iter().enumerate() {
        if rank > 0 {
            code += 1;
        }
        code <<= lengths[a] - prev;
        prev = lengths[a];
        codes[a] = BitString::from_value(code, lengths[a]);
    }
    codes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compressors::il_check;
    use crate::streams::rng_stream;

    #[test]
    fn canonical_codes_are_prefix_free() {
        let codes = canonical_code(&[2, 1, 3, 3]);
        let words: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
        assert_eq!(words, ["10", "0", "110", "111"]);
    }

    #[test]
    fn random_compressors_are_lossless() {
        let mut rng = rng_stream(3, 0);
        for _ in 0..20 {
            let k = 2 + below(&mut rng, 2);
            let c = random_compressor(&mut rng, k, 5);
            assert!(il_check(&c, 5).unwrap().is_lossless());
        }
    }

    #[test]
    fn below_is_in_range() {
        let mut rng = rng_stream(3, 1);
        assert!((0..1000).all(|_| below(&mut rng, 7) < 7));
    }
}
