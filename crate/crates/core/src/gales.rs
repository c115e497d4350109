//! Finite-state gamblers and the gales they induce.
//!
//! A gambler `G = (Q, δ, q0, B)` bets the fraction `B(q)(a)` of its capital
//! on each next symbol `a`. Its martingale obeys
//!
//! ```text
//! d_G(λ) = 1,    d_G(wa) = k · d_G(w) · B(δ(w))(a)
//! ```
//!
//! and its `s`-`β`-gale is `d(w) = μ(w) / β(w)^s · d_G(w)`. Long-string
//! values are carried as `log2` only: `d_G` leaves the `f64` range after a
//! few thousand symbols.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, rational_to_f64, small_rational, Surd, SurdSum};
use crate::grid::{check_increasing, tail_range};
use crate::measures::{check_same_alphabet, check_symbols, ProbabilityMeasure};
use crate::streams::letter_counts;

/// Relative tolerance for the gale law when it is checked in floating point.
pub const FLOAT_GALE_TOLERANCE: f64 = 1e-9;

/// Largest denominator tried when recovering a rational payoff exponent.
const EXPONENT_MAX_DENOMINATOR: u64 = 1024;

/// A finite-state gambler with rational bets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GamblerFile", into = "GamblerFile")]
pub struct FiniteStateGambler {
    k: usize,
    transitions: Vec<usize>,
    initial: usize,
    bets: Vec<BigRational>,
    #[serde(skip)]
    log_payoff: Vec<f64>,
}

impl FiniteStateGambler {
    /// `transitions[q][a]` is `δ(q, a)`; `bets[q][a]` is `B(q)(a)`.
    pub fn new(
        k: usize,
        transitions: Vec<Vec<usize>>,
        initial: usize,
        bets: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        let flat = flatten_transitions(k, transitions, initial)?;
        let states = flat.len() / k;
        if bets.len() != states {
            return Err(Error::LengthMismatch { expected: states, got: bets.len() });
        }
        let mut flat_bets = Vec::with_capacity(states * k);
        for (q, row) in bets.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::LengthMismatch { expected: k, got: row.len() });
            }
            if let Some(a) = row.iter().position(|b| b.is_negative()) {
                return Err(Error::InvalidProbability { symbol: a, value: row[a].to_string() });
            }
            let total: BigRational = row.iter().sum();
            if !total.is_one() {
                return Err(Error::InvalidAutomaton(format!(
                    "bets of state {q} sum to {total}, not 1"
                )));
            }
            flat_bets.extend(row);
        }
        let kf = BigRational::from_integer(BigInt::from(k));
        let log_payoff = flat_bets.iter().map(|b| crate::exact::rational_log2(&(b * &kf))).collect();
        Ok(Self { k, transitions: flat, initial, bets: flat_bets, log_payoff })
    }

    /// One state betting `bets` on every step.
    pub fn single_state(bets: &ProbabilityMeasure) -> Result<Self> {
        let row = bets
            .exact_probs()
            .ok_or_else(|| Error::NotExact("gambler bets must be rational".into()))?
            .to_vec();
        Self::new(bets.k(), vec![vec![0; bets.k()]], 0, vec![row])
    }

    /// One state betting uniformly; its martingale is identically 1.
    pub fn uniform(k: usize) -> Result<Self> {
        Self::single_state(&ProbabilityMeasure::uniform(k)?)
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

    pub fn bet(&self, q: usize, a: u8) -> &BigRational {
        &self.bets[q * self.k + a as usize]
    }

    pub fn bet_row(&self, q: usize) -> &[BigRational] {
        &self.bets[q * self.k..(q + 1) * self.k]
    }

    /// `log2(k · B(q)(a))`, `-inf` for a zero bet.
    pub fn log_payoff(&self, q: usize, a: u8) -> f64 {
        self.log_payoff[q * self.k + a as usize]
    }

    pub fn first_zero_bet(&self) -> Option<(usize, usize)> {
        self.bets.iter().position(|b| b.is_zero()).map(|i| (i / self.k, i % self.k))
    }

    pub fn is_nonvanishing(&self) -> bool {
        self.first_zero_bet().is_none()
    }

    /// `δ(w)`, the state reached from `q0` after reading `w`.
    pub fn state_after(&self, w: &[u8]) -> usize {
        self.run_from(self.initial, w)
    }

    pub fn run_from(&self, q: usize, w: &[u8]) -> usize {
        w.iter().fold(q, |q, &a| self.next(q, a))
    }
}

pub(crate) fn flatten_transitions(
    k: usize,
    transitions: Vec<Vec<usize>>,
    initial: usize,
) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::AlphabetTooSmall(k));
    }
    if k > crate::streams::MAX_ALPHABET {
        return Err(Error::AlphabetTooLarge(k));
    }
    let states = transitions.len();
    if states == 0 {
        return Err(Error::InvalidAutomaton("no states".into()));
    }
    if initial >= states {
        return Err(Error::InvalidAutomaton(format!("initial state {initial} out of range")));
    }
    let mut flat = Vec::with_capacity(states * k);
    for (q, row) in transitions.into_iter().enumerate() {
        if row.len() != k {
            return Err(Error::LengthMismatch { expected: k, got: row.len() });
        }
        if let Some(&t) = row.iter().find(|&&t| t >= states) {
            return Err(Error::InvalidAutomaton(format!(
                "transition from state {q} to missing state {t}"
            )));
        }
        flat.extend(row);
    }
    Ok(flat)
}

/// On-disk form of a gambler.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GamblerFile {
    pub k: usize,
    pub states: usize,
    pub q0: usize,
    pub transitions: Vec<Vec<usize>>,
    pub bets: Vec<Vec<String>>,
}

impl TryFrom<GamblerFile> for FiniteStateGambler {
    type Error = Error;

    fn try_from(file: GamblerFile) -> Result<Self> {
        if file.transitions.len() != file.states {
            return Err(Error::LengthMismatch { expected: file.states, got: file.transitions.len() });
        }
        let bets = file
            .bets
            .iter()
            .map(|row| row.iter().map(|b| parse_rational(b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.k, file.transitions, file.q0, bets)
    }
}

impl From<FiniteStateGambler> for GamblerFile {
    fn from(g: FiniteStateGambler) -> Self {
        let states = g.num_states();
        GamblerFile {
            k: g.k,
            states,
            q0: g.initial,
            transitions: g.transitions.chunks(g.k).map(<[usize]>::to_vec).collect(),
            bets: g.bets.chunks(g.k).map(|r| r.iter().map(|b| b.to_string()).collect()).collect(),
        }
    }
}

/// A capital value with its `log2`. Zero capital has `log2 = -inf`; values
/// beyond the `f64` range are reported as `+inf` while `log2` stays exact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaleValue {
    pub value: f64,
    pub log2: f64,
}

impl GaleValue {
    pub fn from_log2(log2: f64) -> Self {
        Self { value: log2.exp2(), log2 }
    }
}

/// A payoff exponent `s`. Kept as a float, with the exact rational alongside
/// when `s = p/q` for a small `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Exponent {
    value: f64,
    exact: Option<BigRational>,
}

impl Exponent {
    pub fn new(value: f64) -> Self {
        Self { value, exact: small_rational(value, EXPONENT_MAX_DENOMINATOR) }
    }

    pub fn rational(r: BigRational) -> Self {
        Self { value: rational_to_f64(&r), exact: Some(r) }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }
}

impl From<f64> for Exponent {
    fn from(value: f64) -> Self {
        Self::new(value)
    }
}

/// A function `Σ* → [0, ∞)` evaluated on valid strings.
pub trait Gale {
    fn k(&self) -> usize;

    fn log2_value(&self, w: &[u8]) -> f64;

    /// The exact value, when every ingredient is rational.
    fn exact_value(&self, _w: &[u8]) -> Option<Surd> {
        None
    }
}

impl<D: Gale + ?Sized> Gale for &D {
    fn k(&self) -> usize {
        (**self).k()
    }
    fn log2_value(&self, w: &[u8]) -> f64 {
        (**self).log2_value(w)
    }
    fn exact_value(&self, w: &[u8]) -> Option<Surd> {
        (**self).exact_value(w)
    }
}

/// `d_G` as a [`Gale`].
#[derive(Clone, Copy, Debug)]
pub struct Martingale<'a>(pub &'a FiniteStateGambler);

impl Gale for Martingale<'_> {
    fn k(&self) -> usize {
        self.0.k
    }

    fn log2_value(&self, w: &[u8]) -> f64 {
        martingale_log2(self.0, w)
    }

    fn exact_value(&self, w: &[u8]) -> Option<Surd> {
        Some(Surd::rational(martingale_rational(self.0, w)))
    }
}

/// `d_{G,β}^{(s)}` as a [`Gale`].
#[derive(Clone, Debug)]
pub struct FsgGale<'a> {
    gambler: &'a FiniteStateGambler,
    beta: &'a ProbabilityMeasure,
    s: Exponent,
}

impl<'a> FsgGale<'a> {
    pub fn new(
        gambler: &'a FiniteStateGambler,
        beta: &'a ProbabilityMeasure,
        s: impl Into<Exponent>,
    ) -> Result<Self> {
        beta.require_positive()?;
        if beta.k() != gambler.k {
            return Err(Error::AlphabetMismatch(gambler.k, beta.k()));
        }
        Ok(Self { gambler, beta, s: s.into() })
    }
}

impl Gale for FsgGale<'_> {
    fn k(&self) -> usize {
        self.gambler.k
    }

    fn log2_value(&self, w: &[u8]) -> f64 {
        let log_k = (self.gambler.k as f64).log2();
        let info: f64 = letter_counts(w, self.gambler.k)
            .iter()
            .zip(self.beta.probs())
            .map(|(&c, &p)| -(c as f64) * p.log2())
            .sum();
        martingale_log2(self.gambler, w) - w.len() as f64 * log_k + self.s.value * info
    }

    fn exact_value(&self, w: &[u8]) -> Option<Surd> {
        let s = self.s.exact()?;
        let beta = self.beta.exact_probs()?;
        let k = self.gambler.k;
        let mu_w = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(k), w.len()));
        let mut value = Surd::rational(mu_w * martingale_rational(self.gambler, w));
        for (c, b) in letter_counts(w, k).into_iter().zip(beta) {
            if c > 0 {
                let exp = -(s * BigRational::from_integer(BigInt::from(c)));
                value = value.mul(&Surd::power(b, &exp).ok()?);
            }
        }
        Some(value)
    }
}

/// `d̃(w) = α(w)^s / β(w)^t · d(w)`; turns an `s`-`α`-gale into a
/// `t`-`β`-gale.
#[derive(Clone, Debug)]
pub struct GaleTransform<'a, D> {
    inner: D,
    alpha: &'a ProbabilityMeasure,
    s: Exponent,
    beta: &'a ProbabilityMeasure,
    t: Exponent,
}

impl<'a, D: Gale> GaleTransform<'a, D> {
    pub fn new(
        inner: D,
        alpha: &'a ProbabilityMeasure,
        s: impl Into<Exponent>,
        beta: &'a ProbabilityMeasure,
        t: impl Into<Exponent>,
    ) -> Result<Self> {
        alpha.require_positive()?;
        beta.require_positive()?;
        check_same_alphabet(alpha, beta)?;
        if inner.k() != alpha.k() {
            return Err(Error::AlphabetMismatch(inner.k(), alpha.k()));
        }
        Ok(Self { inner, alpha, s: s.into(), beta, t: t.into() })
    }
}

impl<D: Gale> Gale for GaleTransform<'_, D> {
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn log2_value(&self, w: &[u8]) -> f64 {
        let counts = letter_counts(w, self.k());
        let scale: f64 = counts
            .iter()
            .zip(self.alpha.probs().iter().zip(self.beta.probs()))
            .map(|(&c, (&pa, &pb))| c as f64 * (self.s.value * pa.log2() - self.t.value * pb.log2()))
            .sum();
        self.inner.log2_value(w) + scale
    }

    fn exact_value(&self, w: &[u8]) -> Option<Surd> {
        let s = self.s.exact()?;
        let t = self.t.exact()?;
        let alpha = self.alpha.exact_probs()?;
        let beta = self.beta.exact_probs()?;
        let mut value = self.inner.exact_value(w)?;
        for (a, c) in letter_counts(w, self.k()).into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(c));
            value = value.mul(&Surd::power(&alpha[a], &(s * &c)).ok()?);
            value = value.mul(&Surd::power(&beta[a], &-(t * &c)).ok()?);
        }
        Some(value)
    }
}

/// A constant function; a gale only for `(α, s)` with `Σ α(a)^s = 1`.
#[derive(Clone, Debug)]
pub struct ConstantGale {
    pub k: usize,
    pub value: BigRational,
}

impl Gale for ConstantGale {
    fn k(&self) -> usize {
        self.k
    }
    fn log2_value(&self, _w: &[u8]) -> f64 {
        crate::exact::rational_log2(&self.value)
    }
    fn exact_value(&self, _w: &[u8]) -> Option<Surd> {
        Some(Surd::rational(self.value.clone()))
    }
}

fn martingale_log2(g: &FiniteStateGambler, w: &[u8]) -> f64 {
    let mut q = g.initial;
    let mut total = 0.0;
    for &a in w {
        total += g.log_payoff(q, a);
        q = g.next(q, a);
    }
    total
}

/// Direct product of the payoffs; exact for short strings with dyadic bets.
fn martingale_product(g: &FiniteStateGambler, w: &[u8]) -> f64 {
    let k = g.k as f64;
    let mut q = g.initial;
    let mut value = 1.0;
    for &a in w {
        value *= k * rational_to_f64(g.bet(q, a));
        q = g.next(q, a);
    }
    value
}

fn martingale_rational(g: &FiniteStateGambler, w: &[u8]) -> BigRational {
    let k = BigRational::from_integer(BigInt::from(g.k));
    let mut q = g.initial;
    let mut value = BigRational::one();
    for &a in w {
        value = value * &k * g.bet(q, a);
        if value.is_zero() {
            break;
        }
        q = g.next(q, a);
    }
    value
}

/// `d_G(w)`, evaluated in the log domain.
pub fn martingale_eval(g: &FiniteStateGambler, w: &[u8]) -> Result<GaleValue> {
    check_symbols(w, g.k)?;
    let log2 = martingale_log2(g, w);
    if log2.abs() < 1000.0 {
        Ok(GaleValue { value: martingale_product(g, w), log2 })
    } else {
        Ok(GaleValue::from_log2(log2))
    }
}

/// `d_G(w)` as an unreduced fraction `(numerator, denominator)`; cheaper
/// than [`martingale_exact`] when only comparisons are needed.
pub fn martingale_fraction(g: &FiniteStateGambler, w: &[u8]) -> Result<(BigInt, BigInt)> {
    check_symbols(w, g.k)?;
    let k = BigInt::from(g.k);
    let mut q = g.initial;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for &a in w {
        let bet = g.bet(q, a);
        num = num * &k * bet.numer();
        den *= bet.denom();
        q = g.next(q, a);
    }
    Ok((num, den))
}

/// `d_G(w)` in exact rational arithmetic.
pub fn martingale_exact(g: &FiniteStateGambler, w: &[u8]) -> Result<BigRational> {
    check_symbols(w, g.k)?;
    Ok(martingale_rational(g, w))
}

/// `d_{G,β}^{(s)}(w) = μ(w)/β(w)^s · d_G(w)`, computed as
/// `log2 d_G(w) − |w| log2 k + s · I_β(w)`.
pub fn gale_eval(
    g: &FiniteStateGambler,
    beta: &ProbabilityMeasure,
    s: f64,
    w: &[u8],
) -> Result<GaleValue> {
    let gale = FsgGale::new(g, beta, s)?;
    check_symbols(w, g.k)?;
    Ok(GaleValue::from_log2(gale.log2_value(w)))
}

/// `α(w)^s / β(w)^t · d(w)`.
pub fn gale_transform_eval<D: Gale>(
    d: D,
    alpha: &ProbabilityMeasure,
    s: f64,
    beta: &ProbabilityMeasure,
    t: f64,
    w: &[u8],
) -> Result<GaleValue> {
    let transform = GaleTransform::new(d, alpha, s, beta, t)?;
    check_symbols(w, transform.k())?;
    Ok(GaleValue::from_log2(transform.log2_value(w)))
}

/// Outcome of checking `d(w) = Σ_a d(wa) · α(a)^s` on every `|w| < depth`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaleConditionReport {
    pub depth: usize,
    pub nodes_checked: usize,
    /// Whether equality was decided in exact arithmetic.
    pub exact: bool,
    /// First node (shortlex order) where the law fails.
    pub first_violation: Option<Vec<u8>>,
    /// Largest `|rhs/lhs − 1|` seen, from the floating-point evaluation.
    pub max_relative_violation: f64,
}

impl GaleConditionReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks the gale law of `d` with respect to `(α, s)` on all strings
/// shorter than `depth`. Exact when `α`, `s` and `d` are all rational
/// (radicals from fractional `s` included); otherwise relative error
/// against [`FLOAT_GALE_TOLERANCE`].
pub fn gale_condition_check<D: Gale>(
    d: &D,
    alpha: &ProbabilityMeasure,
    s: impl Into<Exponent>,
    depth: usize,
) -> Result<GaleConditionReport> {
    let s = s.into();
    let k = alpha.k();
    if d.k() != k {
        return Err(Error::AlphabetMismatch(d.k(), k));
    }
    let weights: Option<Vec<Surd>> = match (alpha.exact_probs(), s.exact()) {
        (Some(p), Some(e)) => p.iter().map(|x| Surd::power(x, e).ok()).collect(),
        _ => None,
    };
    let log_weights: Vec<f64> = alpha
        .probs()
        .iter()
        .map(|&p| if s.value == 0.0 { 0.0 } else { s.value * p.log2() })
        .collect();

    let nodes = shortlex(k, depth);
    let mut exact = weights.is_some();
    let mut exact_violation = None;
    let mut float_violation = None;
    let mut max_rel: f64 = 0.0;

    for w in &nodes {
        let mut child = w.clone();
        child.push(0);

        let lhs_log = d.log2_value(w);
        let mut terms = Vec::with_capacity(k);
        for a in 0..k {
            *child.last_mut().unwrap() = a as u8;
            terms.push(d.log2_value(&child) + log_weights[a]);
        }
        let rhs_log = log_sum_exp2(&terms);
        let rel = if lhs_log == f64::NEG_INFINITY {
            if rhs_log == f64::NEG_INFINITY { 0.0 } else { f64::INFINITY }
        } else {
            ((rhs_log - lhs_log).exp2() - 1.0).abs()
        };
        max_rel = max_rel.max(rel);
        if float_violation.is_none() && !(rel <= FLOAT_GALE_TOLERANCE) {
            float_violation = Some(w.clone());
        }

        if exact {
            let weights = weights.as_ref().unwrap();
            let mut rhs = SurdSum::new();
            let mut ok = true;
            for (a, weight) in weights.iter().enumerate() {
                *child.last_mut().unwrap() = a as u8;
                match d.exact_value(&child) {
                    Some(v) => rhs.add(&v.mul(weight)),
                    None => ok = false,
                }
            }
            match (ok, d.exact_value(w)) {
                (true, Some(lhs)) => {
                    if exact_violation.is_none() && SurdSum::from(&lhs) != rhs {
                        exact_violation = Some(w.clone());
                    }
                }
                _ => exact = false,
            }
        }
    }

    Ok(GaleConditionReport {
        depth,
        nodes_checked: nodes.len(),
        exact,
        first_violation: if exact { exact_violation } else { float_violation },
        max_relative_violation: max_rel,
    })
}

/// All strings of length `< depth` over `k` symbols, in shortlex order.
pub(crate) fn shortlex(k: usize, depth: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if depth == 0 {
        return out;
    }
    out.push(Vec::new());
    let mut start = 0;
    for _ in 1..depth {
        let end = out.len();
        for i in start..end {
            for a in 0..k {
                let mut w = out[i].clone();
                w.push(a as u8);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

fn log_sum_exp2(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY || max.is_infinite() {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp2()).sum::<f64>().log2()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub len: usize,
    pub log2_value: f64,
    pub state: usize,
}

/// `log2 d_{G,β}^{(s)}` sampled on a prefix-length grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaleTrace {
    pub points: Vec<TracePoint>,
    /// Max of `log2 d` over the tail of the grid (limsup proxy).
    pub tail_max: f64,
    /// Min of `log2 d` over the tail of the grid (liminf proxy).
    pub tail_min: f64,
    /// Capital hit zero at some point; it stays zero.
    pub ruined: bool,
}

pub fn success_trace(
    g: &FiniteStateGambler,
    beta: &ProbabilityMeasure,
    s: f64,
    seq: &[u8],
    grid: &[usize],
) -> Result<GaleTrace> {
    FsgGale::new(g, beta, s)?;
    check_symbols(seq, g.k)?;
    check_increasing(grid, seq.len())?;
    let log_k = (g.k as f64).log2();
    let surprisal = beta.surprisal_table();
    let step: Vec<f64> = (0..g.num_states() * g.k)
        .map(|i| g.log_payoff[i] - log_k + s * surprisal[i % g.k])
        .collect();

    let mut points = Vec::with_capacity(grid.len());
    let mut q = g.initial;
    let mut log_value = 0.0;
    let mut pos = 0;
    for &len in grid {
        for &a in &seq[pos..len] {
            log_value += step[q * g.k + a as usize];
            q = g.next(q, a);
        }
        pos = len;
        points.push(TracePoint { len, log2_value: log_value, state: q });
    }
    let tail = &points[tail_range(points.len())];
    let tail_max = tail.iter().map(|p| p.log2_value).fold(f64::NEG_INFINITY, f64::max);
    let tail_min = tail.iter().map(|p| p.log2_value).fold(f64::INFINITY, f64::min);
    Ok(GaleTrace { points, tail_max, tail_min, ruined: log_value == f64::NEG_INFINITY })
}
