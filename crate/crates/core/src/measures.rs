//! Probability measures on a `k`-symbol alphabet and the information
//! functionals built on them: Shannon entropy, Kullback–Leibler divergence,
//! self-information and the divergence formula `H / (H + D)`.
//!
//! All functionals are reported in bits. A measure built from rationals keeps
//! its exact values next to the `f64` view, and the `*_exact` variants return
//! [`LogForm`]s so algebraic identities can be checked without rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, rational_to_f64, LogForm};

/// Largest `|Σ p − 1|` accepted for measures given as floats.
pub const FLOAT_NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// A probability measure on `{0, …, k−1}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "MeasureFile", into = "MeasureFile")]
pub struct ProbabilityMeasure {
    probs: Vec<f64>,
    exact: Option<Vec<BigRational>>,
    positive: bool,
}

impl ProbabilityMeasure {
    /// Exact measure; the entries must sum to exactly one.
    pub fn from_rationals(p: Vec<BigRational>) -> Result<Self> {
        check_alphabet(p.len())?;
        for (a, x) in p.iter().enumerate() {
            if x.is_negative() {
                return Err(Error::InvalidProbability { symbol: a, value: x.to_string() });
            }
        }
        let total: BigRational = p.iter().sum();
        if !total.is_one() {
            return Err(Error::NonNormalizedMeasure(total.to_string()));
        }
        let probs = p.iter().map(rational_to_f64).collect();
        let positive = p.iter().all(|x| x.is_positive());
        Ok(Self { probs, exact: Some(p), positive })
    }

    /// Float measure; the entries must sum to one within
    /// [`FLOAT_NORMALIZATION_TOLERANCE`].
    pub fn from_f64(p: Vec<f64>) -> Result<Self> {
        check_alphabet(p.len())?;
        for (a, &x) in p.iter().enumerate() {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::InvalidProbability { symbol: a, value: x.to_string() });
            }
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > FLOAT_NORMALIZATION_TOLERANCE {
            return Err(Error::NonNormalizedMeasure(total.to_string()));
        }
        let positive = p.iter().all(|&x| x > 0.0);
        Ok(Self { probs: p, exact: None, positive })
    }

    /// Exact measure from `"num/den"` (or integer / decimal) strings.
    pub fn parse(entries: &[&str]) -> Result<Self> {
        let p = entries.iter().map(|e| parse_rational(e)).collect::<Result<Vec<_>>>()?;
        Self::from_rationals(p)
    }

    /// The uniform measure μ with μ(a) = 1/k.
    pub fn uniform(k: usize) -> Result<Self> {
        check_alphabet(k)?;
        let p = vec![BigRational::new(BigInt::one(), BigInt::from(k)); k];
        Self::from_rationals(p)
    }

    /// Empirical measure `counts[a] / Σ counts`, exact.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::EmptyInput);
        }
        let den = BigInt::from(total);
        Self::from_rationals(
            counts.iter().map(|&c| BigRational::new(BigInt::from(c), den.clone())).collect(),
        )
    }

    pub fn k(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, a: usize) -> f64 {
        self.probs[a]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn exact_probs(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    /// `log2(1/p(a))` per symbol; `+inf` where `p(a) = 0`.
    pub fn surprisal_table(&self) -> Vec<f64> {
        self.probs.iter().map(|&p| -p.log2()).collect()
    }

    pub(crate) fn require_positive(&self) -> Result<()> {
        match self.probs.iter().position(|&p| p <= 0.0) {
            Some(a) => Err(Error::NonPositiveMeasure(a)),
            None => Ok(()),
        }
    }

    pub(crate) fn require_exact(&self) -> Result<&[BigRational]> {
        self.exact_probs()
            .ok_or_else(|| Error::NotExact("measure was given as floats".into()))
    }

    /// Human-readable entries: `"num/den"` when exact, decimals otherwise.
    pub fn entries(&self) -> Vec<String> {
        match &self.exact {
            Some(p) => p.iter().map(|x| x.to_string()).collect(),
            None => self.probs.iter().map(|x| x.to_string()).collect(),
        }
    }
}

impl PartialEq for ProbabilityMeasure {
    fn eq(&self, other: &Self) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => self.probs == other.probs,
        }
    }
}

fn check_alphabet(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::AlphabetTooSmall(k));
    }
    Ok(())
}

pub(crate) fn check_same_alphabet(a: &ProbabilityMeasure, b: &ProbabilityMeasure) -> Result<()> {
    if a.k() != b.k() {
        return Err(Error::AlphabetMismatch(a.k(), b.k()));
    }
    Ok(())
}

pub(crate) fn check_symbols(w: &[u8], k: usize) -> Result<()> {
    match w.iter().position(|&s| s as usize >= k) {
        Some(position) => Err(Error::SymbolOutOfRange { symbol: w[position] as usize, position, k }),
        None => Ok(()),
    }
}

/// On-disk form: `{"k": 2, "p": ["3/4", "1/4"]}`. Entries may be JSON
/// numbers (float mode) or strings parsed as exact rationals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasureFile {
    pub k: usize,
    pub p: Vec<MeasureEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MeasureEntry {
    Float(f64),
    Text(String),
}

impl TryFrom<MeasureFile> for ProbabilityMeasure {
    type Error = Error;

    fn try_from(file: MeasureFile) -> Result<Self> {
        if file.p.len() != file.k {
            return Err(Error::LengthMismatch { expected: file.k, got: file.p.len() });
        }
        if file.p.iter().all(|e| matches!(e, MeasureEntry::Text(_))) {
            let p = file
                .p
                .iter()
                .map(|e| match e {
                    MeasureEntry::Text(t) => parse_rational(t),
                    MeasureEntry::Float(_) => unreachable!(),
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::from_rationals(p);
        }
        let p = file
            .p
            .iter()
            .map(|e| match e {
                MeasureEntry::Float(x) => Ok(*x),
                MeasureEntry::Text(t) => parse_rational(t).map(|r| rational_to_f64(&r)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_f64(p)
    }
}

impl From<ProbabilityMeasure> for MeasureFile {
    fn from(m: ProbabilityMeasure) -> Self {
        let p = match &m.exact {
            Some(p) => p.iter().map(|x| MeasureEntry::Text(x.to_string())).collect(),
            None => m.probs.iter().map(|&x| MeasureEntry::Float(x)).collect(),
        };
        MeasureFile { k: m.k(), p }
    }
}

/// Shannon entropy `H(α) = Σ α(a) log2(1/α(a))`, with `0 log(1/0) = 0`.
pub fn entropy(alpha: &ProbabilityMeasure) -> f64 {
    alpha.probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum::<f64>().max(0.0)
}

/// Kullback–Leibler divergence `D(α‖β) = Σ α(a) log2(α(a)/β(a))`.
pub fn kl_divergence(alpha: &ProbabilityMeasure, beta: &ProbabilityMeasure) -> Result<f64> {
    check_same_alphabet(alpha, beta)?;
    let mut d = 0.0;
    for (a, (&p, &q)) in alpha.probs.iter().zip(&beta.probs).enumerate() {
        if p == 0.0 {
            continue;
        }
        if q <= 0.0 {
            return Err(Error::NonPositiveMeasure(a));
        }
        d += p * (p / q).log2();
    }
    Ok(d.max(0.0))
}

/// Shannon self-information `I_β(w) = Σ log2(1/β(w[i]))`.
pub fn self_information(beta: &ProbabilityMeasure, w: &[u8]) -> Result<f64> {
    beta.require_positive()?;
    check_symbols(w, beta.k())?;
    let table = beta.surprisal_table();
    let mut counts = vec![0u64; beta.k()];
    for &s in w {
        counts[s as usize] += 1;
    }
    Ok(counts.iter().zip(&table).map(|(&c, &t)| c as f64 * t).sum())
}

/// Product probability `α(w) = Π α(w[i])`, with `α(λ) = 1`.
pub fn induced_probability(alpha: &ProbabilityMeasure, w: &[u8]) -> Result<f64> {
    check_symbols(w, alpha.k())?;
    let log: f64 = w.iter().map(|&s| alpha.probs[s as usize].log2()).sum();
    Ok(log.exp2())
}

/// Exact product probability for a rational measure.
pub fn induced_probability_exact(alpha: &ProbabilityMeasure, w: &[u8]) -> Result<BigRational> {
    let p = alpha.require_exact()?;
    check_symbols(w, alpha.k())?;
    Ok(w.iter().fold(BigRational::one(), |acc, &s| acc * &p[s as usize]))
}

/// `H(α) / (H(α) + D(α‖β))`.
pub fn divergence_formula(alpha: &ProbabilityMeasure, beta: &ProbabilityMeasure) -> Result<f64> {
    beta.require_positive()?;
    let h = entropy(alpha);
    let d = kl_divergence(alpha, beta)?;
    if h + d <= 0.0 {
        return Err(Error::DegenerateFormula);
    }
    Ok(h / (h + d))
}

/// Exact entropy of a rational measure.
pub fn entropy_exact(alpha: &ProbabilityMeasure) -> Result<LogForm> {
    let p = alpha.require_exact()?;
    let mut total = LogForm::zero();
    for x in p.iter().filter(|x| x.is_positive()) {
        total = total + LogForm::log2_of(&x.recip())?.scale(x);
    }
    Ok(total)
}

/// Exact divergence of two rational measures.
pub fn kl_divergence_exact(alpha: &ProbabilityMeasure, beta: &ProbabilityMeasure) -> Result<LogForm> {
    check_same_alphabet(alpha, beta)?;
    let p = alpha.require_exact()?;
    let q = beta.require_exact()?;
    let mut total = LogForm::zero();
    for (a, (x, y)) in p.iter().zip(q).enumerate() {
        if x.is_zero() {
            continue;
        }
        if y.is_zero() {
            return Err(Error::NonPositiveMeasure(a));
        }
        total = total + LogForm::log2_of(&(x / y))?.scale(x);
    }
    Ok(total)
}

/// Exact self-information for a rational positive measure.
pub fn self_information_exact(beta: &ProbabilityMeasure, w: &[u8]) -> Result<LogForm> {
    beta.require_positive()?;
    let q = beta.require_exact()?;
    check_symbols(w, beta.k())?;
    let mut counts = vec![0u64; beta.k()];
    for &s in w {
        counts[s as usize] += 1;
    }
    let mut total = LogForm::zero();
    for (c, y) in counts.iter().zip(q) {
        if *c > 0 {
            let c = BigRational::from_integer(BigInt::from(*c));
            total = total + LogForm::log2_of(&y.recip())?.scale(&c);
        }
    }
    Ok(total)
}

/// Entropy, divergence, their base-`k` normalisations and the formula value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfoSummary {
    pub entropy_bits: f64,
    pub divergence_bits: f64,
    pub entropy_base_k: f64,
    pub divergence_base_k: f64,
    pub formula_value: f64,
}

pub fn info_summary(alpha: &ProbabilityMeasure, beta: &ProbabilityMeasure) -> Result<InfoSummary> {
    let entropy_bits = entropy(alpha);
    let divergence_bits = kl_divergence(alpha, beta)?;
    let log_k = (alpha.k() as f64).log2();
    Ok(InfoSummary {
        entropy_bits,
        divergence_bits,
        entropy_base_k: entropy_bits / log_k,
        divergence_base_k: divergence_bits / log_k,
        formula_value: divergence_formula(alpha, beta)?,
    })
}
