//! Information-lossless finite-state compressors (ILFSCs).
//!
//! A compressor `C = (Q, δ, q0, ν)` writes `ν(q, a)` for each symbol read:
//! `C(λ) = λ`, `C(wa) = C(w) · ν(δ(w), a)`. It is information-lossless when
//! `w ↦ (C(w), δ(w))` is injective.
//!
//! [`convert`] holds the three constructions linking compressors and
//! gamblers; [`block_code`] the state-indexed prefix codes they use.

pub mod block_code;
pub mod convert;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gales::flatten_transitions;
use crate::measures::{check_symbols, self_information, ProbabilityMeasure};

pub use block_code::BlockCode;
pub use convert::{
    fsg_from_ilfsc, ilfsc_from_fsg, nonvanishing_smooth, BoundCheck, CompressorFromGambler,
    GamblerFromCompressor, Provenance, SmoothedGambler,
};

/// Largest number of strings [`il_check`] will enumerate.
pub const MAX_IL_CHECK_STRINGS: usize = 1 << 22;

/// A finite binary string.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// The low `width` bits of `value`, most significant first.
    pub fn from_value(value: u64, width: usize) -> Self {
        Self((0..width).rev().map(|i| i < 64 && (value >> i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn append(&mut self, other: &BitString) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("`{other}` is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl TryFrom<String> for BitString {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> Self {
        b.to_string()
    }
}

/// Bits per symbol of the fixed-width symbol code, `⌈log2 k⌉`.
pub fn symbol_width(k: usize) -> usize {
    (usize::BITS - (k - 1).leading_zeros()) as usize
}

/// A finite-state compressor. Information-losslessness is not enforced at
/// construction; use [`il_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CompressorFile", into = "CompressorFile")]
pub struct FiniteStateCompressor {
    k: usize,
    transitions: Vec<usize>,
    initial: usize,
    outputs: Vec<BitString>,
    /// Symbols held in each state and not yet written, if the compressor
    /// buffers input.
    pending: Option<Vec<Vec<u8>>>,
}

impl FiniteStateCompressor {
    /// `transitions[q][a]` is `δ(q, a)`; `outputs[q][a]` is `ν(q, a)`.
    pub fn new(
        k: usize,
        transitions: Vec<Vec<usize>>,
        initial: usize,
        outputs: Vec<Vec<BitString>>,
    ) -> Result<Self> {
        let flat = flatten_transitions(k, transitions, initial)?;
        let states = flat.len() / k;
        if outputs.len() != states {
            return Err(Error::LengthMismatch { expected: states, got: outputs.len() });
        }
        let mut flat_out = Vec::with_capacity(states * k);
        for row in outputs {
            if row.len() != k {
                return Err(Error::LengthMismatch { expected: k, got: row.len() });
            }
            flat_out.extend(row);
        }
        Ok(Self { k, transitions: flat, initial, outputs: flat_out, pending: None })
    }

    /// Declares the symbols each state holds back; used by
    /// [`compress_flushed`].
    pub fn with_pending(mut self, pending: Vec<Vec<u8>>) -> Result<Self> {
        if pending.len() != self.num_states() {
            return Err(Error::LengthMismatch { expected: self.num_states(), got: pending.len() });
        }
        for buffer in &pending {
            check_symbols(buffer, self.k)?;
        }
        self.pending = Some(pending);
        Ok(self)
    }

    /// One state writing each symbol as its `⌈log2 k⌉`-bit binary code.
    pub fn identity(k: usize) -> Result<Self> {
        let width = symbol_width(k);
        let row = (0..k).map(|a| BitString::from_value(a as u64, width)).collect();
        Self::new(k, vec![vec![0; k]], 0, vec![row])
    }

    /// One state that never writes anything. Not information-lossless.
    pub fn silent(k: usize) -> Result<Self> {
        Self::new(k, vec![vec![0; k]], 0, vec![vec![BitString::new(); k]])
    }

    pub(crate) fn from_parts(
        k: usize,
        transitions: Vec<usize>,
        initial: usize,
        outputs: Vec<BitString>,
        pending: Option<Vec<Vec<u8>>>,
    ) -> Self {
        Self { k, transitions, initial, outputs, pending }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_states(&self) -> usize {
        self.transitions.len() / self.k
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn next(&self, q: usize, a: u8) -> usize {
        self.transitions[q * self.k + a as usize]
    }

    pub fn output(&self, q: usize, a: u8) -> &BitString {
        &self.outputs[q * self.k + a as usize]
    }

    pub fn pending(&self, q: usize) -> Option<&[u8]> {
        self.pending.as_ref().map(|p| p[q].as_slice())
    }

    pub fn state_after(&self, w: &[u8]) -> usize {
        self.run_from(self.initial, w)
    }

    pub fn run_from(&self, q: usize, w: &[u8]) -> usize {
        w.iter().fold(q, |q, &a| self.next(q, a))
    }

    /// Longest single-step output.
    pub fn max_output_len(&self) -> usize {
        self.outputs.iter().map(BitString::len).max().unwrap_or(0)
    }
}

/// On-disk form of a compressor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompressorFile {
    pub k: usize,
    pub states: usize,
    pub q0: usize,
    pub transitions: Vec<Vec<usize>>,
    pub outputs: Vec<Vec<BitString>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pending: Option<Vec<Vec<u8>>>,
}

impl TryFrom<CompressorFile> for FiniteStateCompressor {
    type Error = Error;

    fn try_from(file: CompressorFile) -> Result<Self> {
        if file.transitions.len() != file.states {
            return Err(Error::LengthMismatch { expected: file.states, got: file.transitions.len() });
        }
        let c = Self::new(file.k, file.transitions, file.q0, file.outputs)?;
        match file.pending {
            Some(p) => c.with_pending(p),
            None => Ok(c),
        }
    }
}

impl From<FiniteStateCompressor> for CompressorFile {
    fn from(c: FiniteStateCompressor) -> Self {
        let k = c.k;
        CompressorFile {
            k,
            states: c.num_states(),
            q0: c.initial,
            transitions: c.transitions.chunks(k).map(<[usize]>::to_vec).collect(),
            outputs: c.outputs.chunks(k).map(<[BitString]>::to_vec).collect(),
            pending: c.pending,
        }
    }
}

/// `C(w)`.
pub fn compress(c: &FiniteStateCompressor, w: &[u8]) -> Result<BitString> {
    check_symbols(w, c.k)?;
    let mut out = BitString::new();
    let mut q = c.initial;
    for &a in w {
        out.append(c.output(q, a));
        q = c.next(q, a);
    }
    Ok(out)
}

/// `|C(w)|` without materialising the output.
pub fn compressed_len(c: &FiniteStateCompressor, w: &[u8]) -> Result<usize> {
    check_symbols(w, c.k)?;
    let mut len = 0;
    let mut q = c.initial;
    for &a in w {
        len += c.output(q, a).len();
        q = c.next(q, a);
    }
    Ok(len)
}

/// `C(w)` followed by the symbols still held in `δ(w)`, written with the
/// fixed-width symbol code, so the output decodes without the final state.
pub fn compress_flushed(c: &FiniteStateCompressor, w: &[u8]) -> Result<BitString> {
    let mut out = compress(c, w)?;
    if let Some(tail) = c.pending(c.state_after(w)) {
        let width = symbol_width(c.k);
        for &a in tail {
            out.append(&BitString::from_value(a as u64, width));
        }
    }
    Ok(out)
}

/// Result of an exhaustive injectivity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum IlCheck {
    Lossless { depth: usize },
    /// `first` precedes `second` in shortlex order; both give the same
    /// output and end state.
    Collision { first: Vec<u8>, second: Vec<u8> },
}

impl IlCheck {
    pub fn is_lossless(&self) -> bool {
        matches!(self, IlCheck::Lossless { .. })
    }
}

/// Tests whether `w ↦ (C(w), δ(w))` is injective on all strings of length
/// at most `depth`.
///
/// Nonempty strings are scanned in shortlex order and the first string to
/// collide with an earlier one is reported with its earliest partner. The
/// empty string is compared last, so a collision involving `λ` is only
/// reported when the nonempty strings are collision-free.
pub fn il_check(c: &FiniteStateCompressor, depth: usize) -> Result<IlCheck> {
    let mut total = 0usize;
    let mut level = 1usize;
    for _ in 0..depth {
        level = level.saturating_mul(c.k);
        total = total.saturating_add(level);
        if total > MAX_IL_CHECK_STRINGS {
            return Err(Error::BlockTooLarge { k: c.k, l: depth });
        }
    }

    let mut seen: HashMap<(BitString, usize), Vec<u8>> = HashMap::with_capacity(total);
    let mut frontier: Vec<(Vec<u8>, usize, BitString)> = vec![(Vec::new(), c.initial, BitString::new())];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * c.k);
        for (w, q, out) in &frontier {
            for a in 0..c.k as u8 {
                let mut child = w.clone();
                child.push(a);
                let mut child_out = out.clone();
                child_out.append(c.output(*q, a));
                let child_q = c.next(*q, a);
                let key = (child_out.clone(), child_q);
                if let Some(first) = seen.get(&key) {
                    return Ok(IlCheck::Collision { first: first.clone(), second: child });
                }
                seen.insert(key, child.clone());
                next.push((child, child_q, child_out));
            }
        }
        frontier = next;
    }
    if let Some(other) = seen.get(&(BitString::new(), c.initial)) {
        return Ok(IlCheck::Collision { first: Vec::new(), second: other.clone() });
    }
    Ok(IlCheck::Lossless { depth })
}

/// `|C(w)| / I_β(w)`.
pub fn compression_ratio(c: &FiniteStateCompressor, beta: &ProbabilityMeasure, w: &[u8]) -> Result<f64> {
    beta.require_positive()?;
    if beta.k() != c.k {
        return Err(Error::AlphabetMismatch(c.k, beta.k()));
    }
    if w.is_empty() {
        return Err(Error::EmptyInput);
    }
    let len = compressed_len(c, w)?;
    Ok(len as f64 / self_information(beta, w)?)
}
