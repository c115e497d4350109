//! Finite symbol strings, sequence generators and aligned block statistics.
//!
//! # Generator
//!
//! All random sequences come from ChaCha20 (`rand_chacha::ChaCha20Rng`)
//! seeded with `seed_from_u64(seed)`. Independent sub-streams of one seed are
//! selected with `set_stream(stream)`; [`iid_sample`] always uses stream 0,
//! so `(measure, n, seed)` determines the output bytes.
//!
//! Symbols are drawn by inverse CDF: the cumulative probabilities are
//! computed exactly and scaled to 64-bit thresholds `⌊c_j · 2^64⌋`, then a
//! uniform `u64` picks the first threshold it falls under.

use std::fmt;
use std::io::Write;
use std::ops::Deref;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{check_symbols, entropy, kl_divergence, self_information, ProbabilityMeasure};

/// Largest alphabet held in memory (symbols are bytes).
pub const MAX_ALPHABET: usize = 256;

/// Largest alphabet the digit file format can represent.
pub const MAX_FILE_ALPHABET: usize = 10;

/// Largest block space `k^l` a dense block histogram may allocate.
pub const MAX_BLOCK_SPACE: usize = 1 << 24;

/// A finite string over `{0, …, k−1}`, indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolString {
    k: usize,
    data: Vec<u8>,
}

impl SymbolString {
    pub fn new(k: usize, data: Vec<u8>) -> Result<Self> {
        check_k(k)?;
        check_symbols(&data, k)?;
        Ok(Self { k, data })
    }

    pub fn empty(k: usize) -> Result<Self> {
        Self::new(k, Vec::new())
    }

    /// Parses ASCII digits, e.g. `"0110"`.
    pub fn from_digits(k: usize, text: &str) -> Result<Self> {
        let data = text
            .bytes()
            .enumerate()
            .map(|(i, b)| {
                if b.is_ascii_digit() {
                    Ok(b - b'0')
                } else {
                    Err(Error::Parse(format!("unexpected byte {b:#04x} at offset {i}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, data)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn symbols(&self) -> &[u8] {
        &self.data
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.data
    }

    pub fn prefix(&self, n: usize) -> Result<SymbolString> {
        if n > self.data.len() {
            return Err(Error::InsufficientPrefix { required: n, available: self.data.len() });
        }
        Ok(Self { k: self.k, data: self.data[..n].to_vec() })
    }

    pub fn concat(&self, other: &SymbolString) -> Result<SymbolString> {
        if self.k != other.k {
            return Err(Error::AlphabetMismatch(self.k, other.k));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { k: self.k, data })
    }

    pub fn letter_counts(&self) -> Vec<u64> {
        letter_counts(&self.data, self.k)
    }
}

impl Deref for SymbolString {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.data
    }
}

impl fmt::Display for SymbolString {
    /// Digits for `k <= 10`, comma-separated values otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= MAX_FILE_ALPHABET {
            for &s in &self.data {
                write!(f, "{}", (b'0' + s) as char)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.data.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::AlphabetTooSmall(k));
    }
    if k > MAX_ALPHABET {
        return Err(Error::AlphabetTooLarge(k));
    }
    Ok(())
}

pub(crate) fn letter_counts(w: &[u8], k: usize) -> Vec<u64> {
    let mut counts = vec![0u64; k];
    for &s in w {
        counts[s as usize] += 1;
    }
    counts
}

/// ChaCha20 generator for sub-stream `stream` of `seed`.
pub fn rng_stream(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Inverse-CDF sampler over 64-bit thresholds.
#[derive(Clone, Debug)]
pub struct SymbolSampler {
    thresholds: Vec<u128>,
}

impl SymbolSampler {
    pub fn new(alpha: &ProbabilityMeasure) -> Result<Self> {
        check_k(alpha.k())?;
        let exact: Vec<BigRational> = match alpha.exact_probs() {
            Some(p) => p.to_vec(),
            None => alpha
                .probs()
                .iter()
                .map(|&x| BigRational::from_float(x).unwrap_or_else(BigRational::zero))
                .collect(),
        };
        let total: BigRational = exact.iter().sum();
        let scale = BigRational::from_integer(BigInt::one() << 64usize);
        let mut cumulative = BigRational::zero();
        let mut thresholds = Vec::with_capacity(exact.len());
        for (i, p) in exact.iter().enumerate() {
            cumulative += p;
            let t = if i + 1 == exact.len() {
                1u128 << 64
            } else {
                (&cumulative / &total * &scale).floor().to_integer().to_u128().unwrap_or(1 << 64)
            };
            thresholds.push(t);
        }
        Ok(Self { thresholds })
    }

    pub fn sample<R: RngCore>(&self, rng: &mut R) -> u8 {
        let u = rng.next_u64() as u128;
        self.thresholds.partition_point(|&t| t <= u) as u8
    }
}

/// `n` symbols drawn independently from `alpha` (stream 0 of `seed`).
pub fn iid_sample(alpha: &ProbabilityMeasure, n: usize, seed: u64) -> Result<SymbolString> {
    iid_sample_stream(alpha, n, seed, 0)
}

pub fn iid_sample_stream(
    alpha: &ProbabilityMeasure,
    n: usize,
    seed: u64,
    stream: u64,
) -> Result<SymbolString> {
    let sampler = SymbolSampler::new(alpha)?;
    let mut rng = rng_stream(seed, stream);
    let data = (0..n).map(|_| sampler.sample(&mut rng)).collect();
    Ok(SymbolString { k: alpha.k(), data })
}

/// First `n` symbols of the base-`k` sequence listing every string of
/// length 1, then every string of length 2, and so on, each level in
/// lexicographic order.
pub fn champernowne(k: usize, n: usize) -> Result<SymbolString> {
    check_k(k)?;
    let mut data = Vec::with_capacity(n);
    let mut width = 1;
    'outer: loop {
        let mut digits = vec![0u8; width];
        'level: loop {
            for &d in &digits {
                if data.len() == n {
                    break 'outer;
                }
                data.push(d);
            }
            // odometer increment, most significant digit first
            for i in (0..width).rev() {
                if (digits[i] as usize) + 1 < k {
                    digits[i] += 1;
                    continue 'level;
                }
                digits[i] = 0;
            }
            width += 1;
            continue 'outer;
        }
    }
    Ok(SymbolString { k, data })
}

/// Number of aligned occurrences of `w` in `x`: positions `m|w|` with
/// `x[m|w| .. (m+1)|w|] = w`.
pub fn block_count(w: &[u8], x: &[u8]) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyBlock);
    }
    Ok(x.chunks_exact(w.len()).filter(|chunk| *chunk == w).count())
}

/// Base-`k` index of a block, most significant symbol first.
pub fn block_index(block: &[u8], k: usize) -> usize {
    block.iter().fold(0usize, |acc, &s| acc * k + s as usize)
}

/// Inverse of [`block_index`].
pub fn block_from_index(mut index: usize, k: usize, l: usize) -> Vec<u8> {
    let mut out = vec![0u8; l];
    for slot in out.iter_mut().rev() {
        *slot = (index % k) as u8;
        index /= k;
    }
    out
}

/// `k^l`, or `BlockTooLarge` above `limit`.
pub fn block_space(k: usize, l: usize, limit: usize) -> Result<usize> {
    let mut size = 1usize;
    for _ in 0..l {
        size = size
            .checked_mul(k)
            .filter(|s| *s <= limit)
            .ok_or(Error::BlockTooLarge { k, l })?;
    }
    Ok(size)
}

/// Histogram of aligned length-`l` blocks, filled one block at a time.
#[derive(Clone, Debug)]
pub struct BlockCounter {
    k: usize,
    l: usize,
    n: u64,
    counts: Vec<u64>,
}

impl BlockCounter {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::EmptyBlock);
        }
        let size = block_space(k, l, MAX_BLOCK_SPACE)?;
        Ok(Self { k, l, n: 0, counts: vec![0; size] })
    }

    pub fn push(&mut self, block: &[u8]) {
        debug_assert_eq!(block.len(), self.l);
        self.counts[block_index(block, self.k)] += 1;
        self.n += 1;
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `H(π)` in bits, with `0 log(1/0) = 0`.
    pub fn entropy_bits(&self) -> f64 {
        histogram_entropy(&self.counts, self.n)
    }

    pub fn merge(&mut self, other: &BlockCounter) {
        debug_assert_eq!((self.k, self.l), (other.k, other.l));
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.n += other.n;
    }

    pub fn into_measure(self) -> EmpiricalBlockMeasure {
        EmpiricalBlockMeasure { k: self.k, l: self.l, n: self.n, counts: self.counts }
    }
}

fn histogram_entropy(counts: &[u64], n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let c = c as f64;
            (c / n) * (n / c).log2()
        })
        .sum()
}

/// The block-frequency measure on `Σ^l` from the first `n` aligned blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmpiricalBlockMeasure {
    k: usize,
    l: usize,
    n: u64,
    counts: Vec<u64>,
}

impl EmpiricalBlockMeasure {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn block_len(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Counts indexed by [`block_index`].
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, block: &[u8]) -> u64 {
        if block.len() != self.l || block.iter().any(|&s| s as usize >= self.k) {
            return 0;
        }
        self.counts[block_index(block, self.k)]
    }

    pub fn frequency(&self, block: &[u8]) -> f64 {
        self.count(block) as f64 / self.n as f64
    }

    pub fn frequency_exact(&self, block: &[u8]) -> BigRational {
        BigRational::new(BigInt::from(self.count(block)), BigInt::from(self.n))
    }

    pub fn entropy_bits(&self) -> f64 {
        histogram_entropy(&self.counts, self.n)
    }

    /// Nonzero cells as `(block, count)`.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<u8>, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (block_from_index(i, self.k, self.l), c))
    }

    /// The frequencies as an exact measure on a `k^l`-letter alphabet.
    pub fn to_measure(&self) -> Result<ProbabilityMeasure> {
        ProbabilityMeasure::from_counts(&self.counts)
    }
}

/// `π_{S,n}^{(l)}`: frequencies of the first `n` aligned length-`l` blocks.
pub fn block_frequencies(s: &SymbolString, l: usize, n: usize) -> Result<EmpiricalBlockMeasure> {
    if l == 0 {
        return Err(Error::EmptyBlock);
    }
    if n == 0 {
        return Err(Error::InvalidParameter("block count n must be positive".into()));
    }
    let required = n.checked_mul(l).ok_or(Error::BlockTooLarge { k: s.k, l })?;
    if s.len() < required {
        return Err(Error::InsufficientPrefix { required, available: s.len() });
    }
    let mut counter = BlockCounter::new(s.k, l)?;
    for block in s.data[..required].chunks_exact(l) {
        counter.push(block);
    }
    Ok(counter.into_measure())
}

/// `I_β(w)/|w| − (H(α) + D(α‖β))`, the per-symbol gap between the
/// self-information of `w` and its expectation under `α`.
pub fn frequency_divergence_residual(
    alpha: &ProbabilityMeasure,
    beta: &ProbabilityMeasure,
    w: &[u8],
) -> Result<f64> {
    beta.require_positive()?;
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    let info = self_information(beta, w)?;
    let expected = entropy(alpha) + kl_divergence(alpha, beta)?;
    Ok(info / w.len() as f64 - expected)
}

/// Exact form of [`frequency_divergence_residual`] for rational measures.
pub fn frequency_divergence_residual_exact(
    alpha: &ProbabilityMeasure,
    beta: &ProbabilityMeasure,
    w: &[u8],
) -> Result<crate::exact::LogForm> {
    use crate::measures::{entropy_exact, kl_divergence_exact, self_information_exact};
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    let per_symbol = BigRational::new(BigInt::one(), BigInt::from(w.len()));
    let info = self_information_exact(beta, w)?.scale(&per_symbol);
    Ok(info - (entropy_exact(alpha)? + kl_divergence_exact(alpha, beta)?))
}

/// Parses the digit sequence format. A single trailing newline (`\n` or
/// `\r\n`) is ignored. With `k = None` the alphabet is the smallest
/// `k >= 2` covering every digit present.
pub fn parse_sequence(text: &str, k: Option<usize>) -> Result<SymbolString> {
    let body = text.strip_suffix('\n').map(|t| t.strip_suffix('\r').unwrap_or(t)).unwrap_or(text);
    if let Some(k) = k {
        if k > MAX_FILE_ALPHABET {
            return Err(Error::UnsupportedFileAlphabet(k));
        }
        return SymbolString::from_digits(k, body);
    }
    let max = body.bytes().filter(u8::is_ascii_digit).map(|b| (b - b'0') as usize).max();
    SymbolString::from_digits(max.map_or(2, |m| (m + 1).max(2)), body)
}

pub fn read_sequence(path: &Path, k: Option<usize>) -> Result<SymbolString> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_sequence(&text, k)
}

pub fn write_sequence<W: Write>(out: &mut W, s: &SymbolString) -> Result<()> {
    if s.k > MAX_FILE_ALPHABET {
        return Err(Error::UnsupportedFileAlphabet(s.k));
    }
    let bytes: Vec<u8> = s.data.iter().map(|&d| b'0' + d).collect();
    out.write_all(&bytes)?;
    out.write_all(b"\n")?;
    Ok(())
}
