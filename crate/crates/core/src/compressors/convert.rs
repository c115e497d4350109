//! Constructions between compressors and gamblers, each with a checkable
//! pointwise bound:
//!
//! * [`fsg_from_ilfsc`]: `log2 d_G(w) ≥ |w| log2 k − |C(w)| − m(|w|/l + l)`
//! * [`nonvanishing_smooth`]: `d_G'(w) ≥ k^{−δ|w|} d_G(w)`
//! * [`ilfsc_from_fsg`]: `|C(w)| ≤ (1 + 2/l)|w| log2 k − log2 d_G(w)`
//!
//! Both block constructions keep the symbols of an unfinished block in the
//! automaton state; state `slot · B + buffer` pairs a block-start state of
//! the source automaton with the pending prefix, where `B = Σ_{j<l} k^j`
//! and prefixes are numbered by length, then lexicographically.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::compressors::block_code::BlockCode;
use crate::compressors::{compressed_len, il_check, BitString, FiniteStateCompressor, IlCheck};
use crate::error::{Error, Result};
use crate::exact::{ceil_log2_inverse, inv_pow2, kraft_sum, pow2};
use crate::gales::{martingale_eval, martingale_fraction, FiniteStateGambler};
use crate::streams::{block_from_index, block_space};

/// Largest `k^l` a construction enumerates.
pub const MAX_CONVERSION_BLOCKS: usize = 1 << 20;

/// Largest number of transitions in a constructed automaton.
pub const MAX_CONVERSION_TRANSITIONS: usize = 1 << 24;

/// Relative slack allowed when a bound is checked in floating point.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// Where a constructed automaton came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub construction: &'static str,
    pub k: usize,
    pub source_states: usize,
    pub block_len: Option<usize>,
}

/// One side-by-side evaluation of a construction's bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl BoundCheck {
    fn at_least(lhs: f64, rhs: f64) -> Self {
        let slack = BOUND_TOLERANCE * lhs.abs().max(rhs.abs()).max(1.0);
        Self { lhs, rhs, holds: rhs == f64::NEG_INFINITY || lhs >= rhs - slack }
    }

    fn at_most(lhs: f64, rhs: f64) -> Self {
        let slack = BOUND_TOLERANCE * lhs.abs().max(rhs.abs()).max(1.0);
        Self { lhs, rhs, holds: rhs == f64::INFINITY || lhs <= rhs + slack }
    }
}

fn buffer_offsets(k: usize, l: usize) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(l + 1);
    let mut total = 0;
    let mut level = 1;
    for _ in 0..=l {
        offsets.push(total);
        total += level;
        level *= k;
    }
    offsets
}

fn check_size(k: usize, l: usize, slots: usize) -> Result<()> {
    let buffers = buffer_offsets(k, l)[l];
    if slots.saturating_mul(buffers).saturating_mul(k) > MAX_CONVERSION_TRANSITIONS {
        return Err(Error::BlockTooLarge { k, l });
    }
    Ok(())
}

fn check_block_len(k: usize, l: usize) -> Result<usize> {
    if l == 0 {
        return Err(Error::EmptyBlock);
    }
    block_space(k, l, MAX_CONVERSION_BLOCKS)
}

/// `p_q(b)`, the product of `G`'s bets along `b` from `q`, and the state
/// reached, for every `b ∈ Σ^l` in index order.
pub fn block_probabilities(g: &FiniteStateGambler, q: usize, l: usize) -> Result<(Vec<BigRational>, Vec<usize>)> {
    let k = g.k();
    check_block_len(k, l)?;
    let mut level: Vec<(BigInt, BigInt, usize)> = vec![(BigInt::one(), BigInt::one(), q)];
    for _ in 0..l {
        let mut next = Vec::with_capacity(level.len() * k);
        for (num, den, state) in &level {
            for a in 0..k as u8 {
                let bet = g.bet(*state, a);
                next.push((num * bet.numer(), den * bet.denom(), g.next(*state, a)));
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|(n, d, s)| (BigRational::new_raw(n, d), s))
        .unzip())
}

/// The Shannon–Fano code for the blocks `G` bets on from state `q`.
pub fn block_code(g: &FiniteStateGambler, q: usize, l: usize) -> Result<BlockCode> {
    let (probs, _) = block_probabilities(g, q, l)?;
    BlockCode::shannon_fano(g.k(), l, &probs)
}

/// A gambler built from a compressor.
#[derive(Clone, Debug)]
pub struct GamblerFromCompressor {
    pub gambler: FiniteStateGambler,
    pub block_len: usize,
    /// Correction constant of the bound.
    pub m: u64,
    pub source: FiniteStateCompressor,
    pub provenance: Provenance,
}

impl GamblerFromCompressor {
    /// `log2 d_G(w)` against `|w| log2 k − |C(w)| − m(|w|/l + l)`.
    pub fn check(&self, w: &[u8]) -> Result<BoundCheck> {
        let lhs = martingale_eval(&self.gambler, w)?.log2;
        let n = w.len() as f64;
        let l = self.block_len as f64;
        let rhs = n * (self.source.k() as f64).log2()
            - compressed_len(&self.source, w)? as f64
            - self.m as f64 * (n / l + l);
        Ok(BoundCheck::at_least(lhs, rhs))
    }
}

/// Turns an information-lossless compressor into a gambler that, on each
/// block `b` read from compressor state `q`, bets in proportion to
/// `2^{−|ν_q(b)|}`; leftover Kraft mass is spread uniformly over `Σ^l`, and
/// an excess is normalised away.
///
/// The returned `m` is `max(m0, ⌈t/l⌉)`, where `m0 = ⌈log2 W⌉` bounds the
/// per-block normalisation loss (`W` the largest Kraft sum, taken as 1 when
/// below 1) and `t` bounds the loss on an unfinished block. Both are
/// computed exactly, so the bound holds for every string.
pub fn fsg_from_ilfsc(c: &FiniteStateCompressor, l: usize) -> Result<GamblerFromCompressor> {
    let k = c.k();
    let blocks = check_block_len(k, l)?;
    if let IlCheck::Collision { first, second } = il_check(c, l)? {
        return Err(Error::NotInformationLossless { first: digits(&first), second: digits(&second) });
    }
    let offsets = buffer_offsets(k, l);
    let buffers = offsets[l];

    let mut slot_state = vec![c.initial()];
    let mut slot_of: HashMap<usize, usize> = HashMap::from([(c.initial(), 0)]);
    let mut next_slot: Vec<Vec<usize>> = Vec::new();
    let mut slot_probs: Vec<Vec<Vec<BigRational>>> = Vec::new();
    let mut slot_out_lens: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut m0 = 0u32;
    let uniform_share = BigRational::new(BigInt::one(), BigInt::from(blocks));

    let mut s = 0;
    while s < slot_state.len() {
        check_size(k, l, slot_state.len())?;
        // Output length and end state for every prefix, level by level.
        let mut lens: Vec<Vec<u32>> = vec![vec![0]];
        let mut ends = vec![slot_state[s]];
        for _ in 0..l {
            let prev = lens.last().unwrap();
            let mut level_lens = Vec::with_capacity(prev.len() * k);
            let mut level_ends = Vec::with_capacity(prev.len() * k);
            for (&len, &q) in prev.iter().zip(&ends) {
                for a in 0..k as u8 {
                    level_lens.push(len + c.output(q, a).len() as u32);
                    level_ends.push(c.next(q, a));
                }
            }
            lens.push(level_lens);
            ends = level_ends;
        }
        let leaf_lens = &lens[l];
        let total = kraft_sum(leaf_lens);
        let leaf: Vec<BigRational> = if total > BigRational::one() {
            m0 = m0.max(ceil_log2_inverse(&total.recip()));
            leaf_lens.iter().map(|&len| inv_pow2(len) / &total).collect()
        } else {
            let slack = (BigRational::one() - &total) * &uniform_share;
            leaf_lens.iter().map(|&len| inv_pow2(len) + &slack).collect()
        };
        // Prefix masses P(u) = Σ_{b ⊒ u} P(b), level by level up to the root.
        let mut probs = vec![leaf];
        for _ in 0..l {
            let below = probs.last().unwrap();
            let level: Vec<BigRational> = below.chunks(k).map(|c| c.iter().sum()).collect();
            probs.push(level);
        }
        probs.reverse();

        let mut targets = Vec::with_capacity(blocks);
        for &end in &ends {
            let slot = *slot_of.entry(end).or_insert_with(|| {
                slot_state.push(end);
                slot_state.len() - 1
            });
            targets.push(slot);
        }
        next_slot.push(targets);
        slot_probs.push(probs);
        slot_out_lens.push(lens);
        s += 1;
    }

    let mut tail = 0u32;
    for (probs, lens) in slot_probs.iter().zip(&slot_out_lens) {
        for j in 1..l {
            for (p, &len) in probs[j].iter().zip(&lens[j]) {
                tail = tail.max(ceil_log2_inverse(&(p * pow2(len))));
            }
        }
    }
    let m = m0.max(tail.div_ceil(l as u32)) as u64;

    let slots = slot_state.len();
    let mut transitions = Vec::with_capacity(slots * buffers);
    let mut bets = Vec::with_capacity(slots * buffers);
    for s in 0..slots {
        for j in 0..l {
            for idx in 0..(offsets[j + 1] - offsets[j]) {
                let parent = &slot_probs[s][j][idx];
                let mut row_t = Vec::with_capacity(k);
                let mut row_b = Vec::with_capacity(k);
                for a in 0..k {
                    let child = idx * k + a;
                    row_b.push(&slot_probs[s][j + 1][child] / parent);
                    row_t.push(if j + 1 < l {
                        s * buffers + offsets[j + 1] + child
                    } else {
                        next_slot[s][child] * buffers
                    });
                }
                transitions.push(row_t);
                bets.push(row_b);
            }
        }
    }
    let gambler = FiniteStateGambler::new(k, transitions, 0, bets)?;
    Ok(GamblerFromCompressor {
        gambler,
        block_len: l,
        m,
        source: c.clone(),
        provenance: Provenance {
            construction: "compressor-to-gambler",
            k,
            source_states: c.num_states(),
            block_len: Some(l),
        },
    })
}

/// A gambler mixed with uniform betting so that no bet is zero.
#[derive(Clone, Debug)]
pub struct SmoothedGambler {
    pub gambler: FiniteStateGambler,
    pub delta: f64,
    /// Mixing weight given to uniform betting.
    pub epsilon: BigRational,
    pub source: FiniteStateGambler,
    pub provenance: Provenance,
}

impl SmoothedGambler {
    /// `log2 d_G'(w)` against `log2 d_G(w) − δ|w| log2 k`.
    pub fn check(&self, w: &[u8]) -> Result<BoundCheck> {
        let lhs = martingale_eval(&self.gambler, w)?.log2;
        let rhs = martingale_eval(&self.source, w)?.log2
            - self.delta * w.len() as f64 * (self.gambler.k() as f64).log2();
        Ok(BoundCheck::at_least(lhs, rhs))
    }

    /// `d_G'(w) ≥ (1 − ε)^{|w|} d_G(w)` in exact arithmetic. Since
    /// `1 − ε ≥ k^{−δ}`, this implies the bound of [`Self::check`].
    pub fn check_exact(&self, w: &[u8]) -> Result<bool> {
        let keep = BigRational::one() - &self.epsilon;
        let (num, den) = martingale_fraction(&self.gambler, w)?;
        let (src_num, src_den) = martingale_fraction(&self.source, w)?;
        let n = w.len();
        let lhs = num * src_den * num_traits::pow(keep.denom().clone(), n);
        let rhs = src_num * den * num_traits::pow(keep.numer().clone(), n);
        Ok(lhs >= rhs)
    }
}

/// Denominator of the mixing weight.
const EPSILON_BITS: usize = 32;

/// Mixes every bet with the uniform distribution,
/// `B'(q) = (1 − ε) B(q) + ε/k`. `ε` is a dyadic rational just below
/// `1 − k^{−δ}`, so each step loses at most a factor `k^{−δ}`.
pub fn nonvanishing_smooth(g: &FiniteStateGambler, delta: f64) -> Result<SmoothedGambler> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!("smoothing delta must be positive, got {delta}")));
    }
    let k = g.k();
    let target = -(-delta * (k as f64).ln()).exp_m1() * (1.0 - 1e-9);
    let scaled = (target * (1u64 << EPSILON_BITS) as f64).floor();
    if scaled < 1.0 {
        return Err(Error::InvalidParameter(format!("smoothing delta {delta} is too small")));
    }
    let epsilon = BigRational::new(BigInt::from(scaled as u64), BigInt::one() << EPSILON_BITS);
    let keep = BigRational::one() - &epsilon;
    let share = &epsilon / BigRational::from_integer(BigInt::from(k));

    let states = g.num_states();
    let transitions = (0..states)
        .map(|q| (0..k as u8).map(|a| g.next(q, a)).collect())
        .collect();
    let bets = (0..states)
        .map(|q| g.bet_row(q).iter().map(|b| &keep * b + &share).collect())
        .collect();
    let gambler = FiniteStateGambler::new(k, transitions, g.initial(), bets)?;
    Ok(SmoothedGambler {
        gambler,
        delta,
        epsilon,
        source: g.clone(),
        provenance: Provenance {
            construction: "nonvanishing-smoothing",
            k,
            source_states: states,
            block_len: None,
        },
    })
}

/// A compressor built from a nonvanishing gambler.
#[derive(Clone, Debug)]
pub struct CompressorFromGambler {
    pub compressor: FiniteStateCompressor,
    pub block_len: usize,
    pub source: FiniteStateGambler,
    pub provenance: Provenance,
    slot_state: Vec<usize>,
    next_slot: Vec<Vec<usize>>,
    codes: Vec<BlockCode>,
}

impl CompressorFromGambler {
    /// `|C(w)|` against `(1 + 2/l)|w| log2 k − log2 d_G(w)`.
    pub fn check(&self, w: &[u8]) -> Result<BoundCheck> {
        let lhs = compressed_len(&self.compressor, w)? as f64;
        let n = w.len() as f64;
        let rhs = (1.0 + 2.0 / self.block_len as f64) * n * (self.source.k() as f64).log2()
            - martingale_eval(&self.source, w)?.log2;
        Ok(BoundCheck::at_most(lhs, rhs))
    }

    /// Gambler states at which blocks start, indexed by slot.
    pub fn slot_states(&self) -> &[usize] {
        &self.slot_state
    }

    /// Block code used from each slot.
    pub fn codes(&self) -> &[BlockCode] {
        &self.codes
    }

    /// Recovers `w` from `C(w)` and `δ(w)`.
    pub fn decode(&self, bits: &BitString, final_state: usize) -> Result<Vec<u8>> {
        let k = self.source.k();
        let l = self.block_len;
        if final_state >= self.compressor.num_states() {
            return Err(Error::InvalidParameter(format!("state {final_state} does not exist")));
        }
        let decoders: Vec<_> = self.codes.iter().map(BlockCode::decoder).collect();
        let bits = bits.bits();
        let mut out = Vec::new();
        let mut slot = 0;
        let mut pos = 0;
        while pos < bits.len() {
            let (index, next) = decoders[slot]
                .read(bits, pos)
                .ok_or_else(|| Error::Parse(format!("no codeword at bit {pos}")))?;
            out.extend(block_from_index(index, k, l));
            slot = self.next_slot[slot][index];
            pos = next;
        }
        let buffers = buffer_offsets(k, l)[l];
        if final_state / buffers != slot {
            return Err(Error::Parse("final state does not match the decoded blocks".into()));
        }
        out.extend_from_slice(self.compressor.pending(final_state).unwrap_or(&[]));
        Ok(out)
    }
}

/// Turns a nonvanishing gambler into a compressor that writes, for each
/// completed block `b` read from gambler state `q`, the Shannon–Fano
/// codeword of `b` under `p_q(b)`. Unfinished blocks are held in the state
/// and written only by [`crate::compressors::compress_flushed`].
pub fn ilfsc_from_fsg(g: &FiniteStateGambler, l: usize) -> Result<CompressorFromGambler> {
    let k = g.k();
    check_block_len(k, l)?;
    if let Some((state, symbol)) = g.first_zero_bet() {
        return Err(Error::VanishingBets { state, symbol });
    }
    let offsets = buffer_offsets(k, l);
    let buffers = offsets[l];

    let mut slot_state = vec![g.initial()];
    let mut slot_of: HashMap<usize, usize> = HashMap::from([(g.initial(), 0)]);
    let mut next_slot = Vec::new();
    let mut codes = Vec::new();
    let mut s = 0;
    while s < slot_state.len() {
        check_size(k, l, slot_state.len())?;
        let (probs, ends) = block_probabilities(g, slot_state[s], l)?;
        codes.push(BlockCode::shannon_fano(k, l, &probs)?);
        let mut targets = Vec::with_capacity(ends.len());
        for end in ends {
            let slot = *slot_of.entry(end).or_insert_with(|| {
                slot_state.push(end);
                slot_state.len() - 1
            });
            targets.push(slot);
        }
        next_slot.push(targets);
        s += 1;
    }

    let slots = slot_state.len();
    let mut transitions = Vec::with_capacity(slots * buffers * k);
    let mut outputs = Vec::with_capacity(slots * buffers * k);
    let mut pending = Vec::with_capacity(slots * buffers);
    for s in 0..slots {
        for j in 0..l {
            for idx in 0..(offsets[j + 1] - offsets[j]) {
                pending.push(block_from_index(idx, k, j));
                for a in 0..k {
                    let child = idx * k + a;
                    if j + 1 < l {
                        transitions.push(s * buffers + offsets[j + 1] + child);
                        outputs.push(BitString::new());
                    } else {
                        transitions.push(next_slot[s][child] * buffers);
                        outputs.push(codes[s].codeword(child).clone());
                    }
                }
            }
        }
    }
    let compressor = FiniteStateCompressor::from_parts(k, transitions, 0, outputs, Some(pending));
    Ok(CompressorFromGambler {
        compressor,
        block_len: l,
        source: g.clone(),
        provenance: Provenance {
            construction: "gambler-to-compressor",
            k,
            source_states: g.num_states(),
            block_len: Some(l),
        },
        slot_state,
        next_slot,
        codes,
    })
}

pub(crate) fn digits(w: &[u8]) -> String {
    if w.is_empty() {
        return "λ".into();
    }
    let sep = if w.iter().any(|&s| s > 9) { "," } else { "" };
    w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compressors::{compress, compress_flushed, il_check};
    use crate::measures::ProbabilityMeasure;
    use crate::random::{random_compressor, random_gambler, random_string};
    use crate::streams::rng_stream;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn skewed() -> FiniteStateGambler {
        FiniteStateGambler::single_state(&ProbabilityMeasure::parse(&["3/4", "1/4"]).unwrap()).unwrap()
    }

    #[test]
    fn identity_coder_gives_uniform_gambler() {
        let id = FiniteStateCompressor::identity(2).unwrap();
        let art = fsg_from_ilfsc(&id, 1).unwrap();
        assert_eq!(art.m, 0);
        assert_eq!(art.gambler.bet_row(0), &[q(1, 2), q(1, 2)]);
        let c = art.check(&[0, 1, 1, 0]).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        assert!(c.holds);
        assert!(art.check(&[]).unwrap().holds);
    }

    #[test]
    fn lossy_coder_is_rejected() {
        let silent = FiniteStateCompressor::silent(2).unwrap();
        assert!(matches!(fsg_from_ilfsc(&silent, 2), Err(Error::NotInformationLossless { .. })));
    }

    #[test]
    fn run_length_coder_bound() {
        let c = crate::compressors::tests::run_length_coder();
        let art = fsg_from_ilfsc(&c, 2).unwrap();
        let mut rng = rng_stream(7, 0);
        for _ in 0..100 {
            let w = random_string(&mut rng, 2, 200);
            let check = art.check(&w).unwrap();
            assert!(check.holds, "{w:?}: {check:?}");
        }
    }

    #[test]
    fn smoothing_bounds() {
        let zero = FiniteStateGambler::single_state(&ProbabilityMeasure::parse(&["1", "0"]).unwrap()).unwrap();
        let art = nonvanishing_smooth(&zero, 0.1).unwrap();
        assert!(art.gambler.is_nonvanishing());
        let w = [0, 0, 1, 0];
        assert!(art.check(&w).unwrap().holds);
        assert!(art.check_exact(&w).unwrap());

        let g = skewed();
        let art = nonvanishing_smooth(&g, 1e-6).unwrap();
        let diff = art.gambler.bet(0, 0) - g.bet(0, 0);
        assert!(crate::exact::rational_to_f64(&diff).abs() < 1e-6);
        assert!(nonvanishing_smooth(&g, 0.0).is_err());
        assert!(nonvanishing_smooth(&g, 1e-12).is_err());
    }

    #[test]
    fn uniform_gambler_gives_one_bit_codes() {
        let u = FiniteStateGambler::uniform(2).unwrap();
        let art = ilfsc_from_fsg(&u, 1).unwrap();
        let w = [0, 1, 1, 0, 1];
        assert_eq!(compress(&art.compressor, &w).unwrap().to_string(), "01101");
        assert!(art.check(&w).unwrap().holds);
        assert_eq!(art.check(&[]).unwrap().lhs, 0.0);
    }

    #[test]
    fn skewed_gambler_on_zeros() {
        let art = ilfsc_from_fsg(&skewed(), 4).unwrap();
        let w = vec![0u8; 100];
        let check = art.check(&w).unwrap();
        assert!(check.holds);
        // p(0000) = 81/256 gets a 2-bit codeword: 25 blocks, 50 bits
        assert_eq!(check.lhs, 50.0);
        assert!((check.rhs - (150.0 - 100.0 * 1.5f64.log2())).abs() < 1e-9);
    }

    #[test]
    fn vanishing_gambler_is_rejected() {
        let zero = FiniteStateGambler::single_state(&ProbabilityMeasure::parse(&["1", "0"]).unwrap()).unwrap();
        assert_eq!(ilfsc_from_fsg(&zero, 2).err(), Some(Error::VanishingBets { state: 0, symbol: 1 }));
    }

    #[test]
    fn constructed_compressors_round_trip() {
        let mut rng = rng_stream(11, 0);
        for _ in 0..10 {
            let k = 2 + (rng_u(&mut rng) % 2) as usize;
            let g = nonvanishing_smooth(&random_gambler(&mut rng, k, 4), 0.05).unwrap().gambler;
            for l in [1, 2, 3] {
                let art = ilfsc_from_fsg(&g, l).unwrap();
                assert!(il_check(&art.compressor, 6).unwrap().is_lossless());
                for code in art.codes() {
                    assert!(code.kraft_sum() <= BigRational::one());
                    assert!(code.is_prefix_free());
                }
                for _ in 0..10 {
                    let w = random_string(&mut rng, k, 60);
                    let bits = compress(&art.compressor, &w).unwrap();
                    let end = art.compressor.state_after(&w);
                    assert_eq!(art.decode(&bits, end).unwrap(), w);
                    assert!(art.check(&w).unwrap().holds);
                    let flushed = compress_flushed(&art.compressor, &w).unwrap();
                    assert!(bits.is_prefix_of(&flushed));
                }
            }
        }
    }

    #[test]
    fn random_compressors_give_bounded_gamblers() {
        let mut rng = rng_stream(12, 0);
        for _ in 0..10 {
            let k = 2 + (rng_u(&mut rng) % 2) as usize;
            let c = random_compressor(&mut rng, k, 4);
            for l in [1, 2, 4] {
                let art = fsg_from_ilfsc(&c, l).unwrap();
                for _ in 0..10 {
                    let w = random_string(&mut rng, k, 100);
                    let check = art.check(&w).unwrap();
                    assert!(check.holds, "l={l} {w:?} {check:?}");
                }
            }
        }
    }

    fn rng_u(rng: &mut rand_chacha::ChaCha20Rng) -> u32 {
        use rand_chacha::rand_core::RngCore;
        rng.next_u32()
    }
}
