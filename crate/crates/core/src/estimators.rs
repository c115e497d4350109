//! Block-entropy rates, finite-state dimension and β-dimension estimates,
//! and end-to-end divergence-formula reports.
//!
//! Limits over prefix lengths have no finite meaning, so every `liminf` is
//! replaced by the minimum, and every `limsup` by the maximum, over the
//! upper half of a geometric grid of block counts `n/2^j`.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compressors::{compressed_len, ilfsc_from_fsg, nonvanishing_smooth};
use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, LogForm};
use crate::gales::FiniteStateGambler;
use crate::grid::{geometric_grid, tail_range};
use crate::measures::{
    check_same_alphabet, entropy, entropy_exact, info_summary, kl_divergence, kl_divergence_exact,
    self_information, InfoSummary, ProbabilityMeasure,
};
use crate::streams::{frequency_divergence_residual, iid_sample, BlockCounter, SymbolString};

pub const DEFAULT_GRID_POINTS: usize = 8;

/// Smoothing applied to fitted gamblers before they are turned into codes.
pub const SMOOTHING_DELTA: f64 = 1e-3;

/// Largest `k^L` for the block codes of the compression route.
pub const COMPRESSION_BLOCK_SPACE: usize = 1 << 16;

/// Block-count grid used for each block length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridSpec {
    /// `points` halvings ending at the largest block count the prefix allows
    /// for each block length.
    Geometric { points: usize },
    /// The same block counts for every block length.
    Explicit(Vec<usize>),
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::Geometric { points: DEFAULT_GRID_POINTS }
    }
}

impl GridSpec {
    /// Block counts for block length `l` on a prefix of `len` symbols.
    pub fn block_counts(&self, len: usize, l: usize) -> Result<Vec<usize>> {
        if l == 0 {
            return Err(Error::EmptyBlock);
        }
        let grid = match self {
            GridSpec::Geometric { points } => geometric_grid(len / l, *points),
            GridSpec::Explicit(grid) => grid.clone(),
        };
        check_grid(&grid, len, l)?;
        Ok(grid)
    }
}

fn check_grid(grid: &[usize], len: usize, l: usize) -> Result<()> {
    let Some(&last) = grid.last() else {
        return Err(Error::InsufficientPrefix { required: l, available: len });
    };
    if grid[0] == 0 || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("block-count grid must be positive and increasing".into()));
    }
    let required = last.saturating_mul(l);
    if required > len {
        return Err(Error::InsufficientPrefix { required, available: len });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatePoint {
    pub n: usize,
    pub entropy_bits: f64,
    /// `H(π_{S,n}^{(l)}) / (l log2 k)`.
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockEntropyRate {
    pub l: usize,
    pub points: Vec<RatePoint>,
    pub tail_min: f64,
    pub tail_max: f64,
}

/// Normalised entropy of the aligned length-`l` block frequencies at each
/// block count of `grid`.
pub fn block_entropy_rate(s: &SymbolString, l: usize, grid: &[usize]) -> Result<BlockEntropyRate> {
    if l == 0 {
        return Err(Error::EmptyBlock);
    }
    check_grid(grid, s.len(), l)?;
    let k = s.k();
    let scale = l as f64 * (k as f64).log2();
    let mut counter = BlockCounter::new(k, l)?;
    let mut blocks = s.chunks_exact(l);
    let mut points = Vec::with_capacity(grid.len());
    for &n in grid {
        while (counter.n() as usize) < n {
            counter.push(blocks.next().expect("grid checked against prefix length"));
        }
        let entropy_bits = counter.entropy_bits();
        points.push(RatePoint { n, entropy_bits, rate: (entropy_bits / scale).clamp(0.0, 1.0) });
    }
    let tail = &points[tail_range(points.len())];
    Ok(BlockEntropyRate {
        l,
        tail_min: tail.iter().map(|p| p.rate).fold(f64::INFINITY, f64::min),
        tail_max: tail.iter().map(|p| p.rate).fold(f64::NEG_INFINITY, f64::max),
        points,
    })
}

/// Lower and upper finite-state dimension estimates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionEstimate {
    /// `min_l` of the tail minimum.
    pub lower: f64,
    /// `min_l` of the tail maximum.
    pub upper: f64,
    pub per_block: Vec<BlockEntropyRate>,
}

/// Minimum over `l ≤ l_max` of the tail block-entropy rates. Block lengths
/// are evaluated in parallel.
pub fn fs_dimension_estimate(s: &SymbolString, l_max: usize, grid: &GridSpec) -> Result<DimensionEstimate> {
    if l_max == 0 {
        return Err(Error::InvalidParameter("l_max must be at least 1".into()));
    }
    let per_block = (1..=l_max)
        .into_par_iter()
        .map(|l| block_entropy_rate(s, l, &grid.block_counts(s.len(), l)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionEstimate {
        lower: per_block.iter().map(|r| r.tail_min).fold(f64::INFINITY, f64::min),
        upper: per_block.iter().map(|r| r.tail_max).fold(f64::INFINITY, f64::min),
        per_block,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Entropy,
    Compression,
}

/// β-dimension estimate from block entropies and letter frequencies.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyRouteEstimate {
    pub lower: f64,
    pub upper: f64,
    /// Letter frequencies of the whole prefix.
    pub alpha_hat: Vec<String>,
    /// `H_k(α̂) + D_k(α̂‖β)`.
    pub denominator: f64,
    /// Whether the denominator was found rational in exact arithmetic.
    pub denominator_exact: bool,
    pub dimension: DimensionEstimate,
}

/// Compression ratio of one member of the code family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CodeRatio {
    /// Block length of the fitted gambler.
    pub fit_block_len: usize,
    /// Block length of the code built from it.
    pub code_block_len: usize,
    pub compressed_bits: usize,
    pub ratio: f64,
}

/// β-dimension upper bound from the best code of the family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompressionRouteEstimate {
    pub upper_bound: f64,
    pub self_information_bits: f64,
    pub family: Vec<CodeRatio>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum BetaDimensionEstimate {
    Entropy(EntropyRouteEstimate),
    Compression(CompressionRouteEstimate),
}

impl BetaDimensionEstimate {
    /// The headline number: the lower estimate for the entropy route, the
    /// upper bound for the compression route.
    pub fn value(&self) -> f64 {
        match self {
            BetaDimensionEstimate::Entropy(e) => e.lower,
            BetaDimensionEstimate::Compression(c) => c.upper_bound,
        }
    }
}

pub fn fs_beta_dimension_estimate(
    s: &SymbolString,
    beta: &ProbabilityMeasure,
    l_max: usize,
    grid: &GridSpec,
    route: Route,
) -> Result<BetaDimensionEstimate> {
    beta.require_positive()?;
    if beta.k() != s.k() {
        return Err(Error::AlphabetMismatch(s.k(), beta.k()));
    }
    match route {
        Route::Entropy => entropy_route(s, beta, l_max, grid).map(BetaDimensionEstimate::Entropy),
        Route::Compression => compression_route(s, beta, l_max).map(BetaDimensionEstimate::Compression),
    }
}

/// `H_k(α) + D_k(α‖β)`, exact when both measures are rational and the
/// result is a rational number.
fn cross_entropy_base_k(alpha: &ProbabilityMeasure, beta: &ProbabilityMeasure) -> Result<(f64, bool)> {
    check_same_alphabet(alpha, beta)?;
    let k = alpha.k();
    if alpha.is_exact() && beta.is_exact() {
        let total = entropy_exact(alpha)? + kl_divergence_exact(alpha, beta)?;
        let log_k = LogForm::log2_of(&BigRational::from_integer(BigInt::from(k)))?;
        if let Some(r) = total.ratio_to(&log_k) {
            return Ok((rational_to_f64(&r), true));
        }
        return Ok((total.to_f64() / (k as f64).log2(), false));
    }
    Ok(((entropy(alpha) + kl_divergence(alpha, beta)?) / (k as f64).log2(), false))
}

fn entropy_route(
    s: &SymbolString,
    beta: &ProbabilityMeasure,
    l_max: usize,
    grid: &GridSpec,
) -> Result<EntropyRouteEstimate> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    let alpha_hat = ProbabilityMeasure::from_counts(&s.letter_counts())?;
    let (denominator, denominator_exact) = cross_entropy_base_k(&alpha_hat, beta)?;
    if !(denominator > 0.0) {
        return Err(Error::DegenerateFormula);
    }
    let dimension = fs_dimension_estimate(s, l_max, grid)?;
    Ok(EntropyRouteEstimate {
        lower: dimension.lower / denominator,
        upper: dimension.upper / denominator,
        alpha_hat: alpha_hat.entries(),
        denominator,
        denominator_exact,
        dimension,
    })
}

/// A gambler that bets the empirical conditional frequencies of aligned
/// length-`l` blocks: in the state for prefix `u` of the current block it
/// bets `#(ua·)/#(u·)` on `a`, or uniformly if `u` never occurs.
pub fn fit_block_gambler(s: &SymbolString, l: usize) -> Result<FiniteStateGambler> {
    let k = s.k();
    let mut counter = BlockCounter::new(k, l)?;
    for block in s.chunks_exact(l) {
        counter.push(block);
    }
    let measure = counter.into_measure();
    let mut levels: Vec<Vec<u64>> = vec![measure.counts().to_vec()];
    for _ in 0..l {
        let below = levels.last().unwrap();
        let up: Vec<u64> = below.chunks(k).map(|c| c.iter().sum()).collect();
        levels.push(up);
    }
    levels.reverse();

    let mut offsets = vec![0usize];
    for j in 0..l {
        offsets.push(offsets[j] + levels[j].len());
    }
    let uniform = BigRational::new(BigInt::from(1), BigInt::from(k));
    let mut transitions = Vec::with_capacity(offsets[l]);
    let mut bets = Vec::with_capacity(offsets[l]);
    for j in 0..l {
        for (idx, &total) in levels[j].iter().enumerate() {
            let children = &levels[j + 1][idx * k..(idx + 1) * k];
            transitions.push(
                (0..k)
                    .map(|a| if j + 1 < l { offsets[j + 1] + idx * k + a } else { 0 })
                    .collect(),
            );
            bets.push(if total == 0 {
                vec![uniform.clone(); k]
            } else {
                children
                    .iter()
                    .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(total)))
                    .collect()
            });
        }
    }
    FiniteStateGambler::new(k, transitions, 0, bets)
}

/// Largest multiple of `l` with `k^L ≤ limit`, if any.
fn code_block_len(k: usize, l: usize, limit: usize) -> Option<usize> {
    let mut best = None;
    let mut len = l;
    while crate::streams::block_space(k, len, limit).is_ok() {
        best = Some(len);
        len += l;
    }
    best
}

fn compression_route(s: &SymbolString, beta: &ProbabilityMeasure, l_max: usize) -> Result<CompressionRouteEstimate> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    if l_max == 0 {
        return Err(Error::InvalidParameter("l_max must be at least 1".into()));
    }
    let info = self_information(beta, s)?;
    let k = s.k();
    let family = (1..=l_max)
        .into_par_iter()
        .filter_map(|l| code_block_len(k, l, COMPRESSION_BLOCK_SPACE).map(|big| (l, big)))
        .map(|(l, big)| {
            let fitted = fit_block_gambler(s, l)?;
            let smoothed = nonvanishing_smooth(&fitted, SMOOTHING_DELTA)?;
            let code = ilfsc_from_fsg(&smoothed.gambler, big)?;
            let bits = compressed_len(&code.compressor, s)?;
            Ok(CodeRatio { fit_block_len: l, code_block_len: big, compressed_bits: bits, ratio: bits as f64 / info })
        })
        .collect::<Result<Vec<_>>>()?;
    if family.is_empty() {
        return Err(Error::BlockTooLarge { k, l: 1 });
    }
    Ok(CompressionRouteEstimate {
        upper_bound: family.iter().map(|c| c.ratio).fold(f64::INFINITY, f64::min),
        self_information_bits: info,
        family,
    })
}

/// Pass/fail thresholds of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// β-dimension estimates against the formula.
    pub beta_dimension: f64,
    /// Dimension estimates against `H_k(α)`.
    pub dimension: f64,
    /// Compression route against entropy route.
    pub cross_route: f64,
    /// Per-symbol self-information against `H(α) + D(α‖β)`.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { beta_dimension: 0.03, dimension: 0.02, cross_route: 0.05, residual: 0.01 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub alpha: ProbabilityMeasure,
    pub beta: ProbabilityMeasure,
    pub n: usize,
    pub seed: u64,
    pub l_max: usize,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_true")]
    pub compression_route: bool,
}

fn default_true() -> bool {
    true
}

impl VerifyConfig {
    pub fn new(alpha: ProbabilityMeasure, beta: ProbabilityMeasure, n: usize, seed: u64, l_max: usize) -> Self {
        Self {
            alpha,
            beta,
            n,
            seed,
            l_max,
            grid: GridSpec::default(),
            tolerances: Tolerances::default(),
            compression_route: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn within(name: &'static str, value: f64, target: f64, tolerance: f64) -> Self {
        Self { name, value, target, tolerance, pass: (value - target).abs() <= tolerance }
    }
}

/// `|C(w)|/I_β(w)` and `|C(w)|/I_α(w)` for the best code; their quotient
/// equals `I_α(w)/I_β(w)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioDiagnostic {
    pub ratio_beta: f64,
    pub ratio_alpha: f64,
    pub quotient: f64,
    pub information_quotient: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: VerifyConfig,
    /// How finite-prefix proxies for the limits are taken.
    pub limit_proxy: &'static str,
    pub prediction: f64,
    pub info: InfoSummary,
    pub fs_dim_lower: f64,
    pub fs_dim_upper: f64,
    pub entropy_route: EntropyRouteEstimate,
    pub compression_route: Option<CompressionRouteEstimate>,
    /// `I_β(R)/n − (H(α) + D(α‖β))`.
    pub residual: f64,
    pub ratio_diagnostic: Option<RatioDiagnostic>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

pub const LIMIT_PROXY: &str =
    "liminf/limsup over n are the min/max over the upper half of a geometric grid of block counts";

/// Samples `n` symbols from `α` and compares both β-dimension estimates,
/// the dimension estimate and the per-symbol self-information with their
/// predicted values.
pub fn verify_divergence(config: &VerifyConfig) -> Result<DimensionReport> {
    let VerifyConfig { alpha, beta, n, seed, l_max, grid, tolerances, .. } = config;
    check_same_alphabet(alpha, beta)?;
    beta.require_positive()?;
    let info = info_summary(alpha, beta)?;
    let prediction = info.formula_value;
    let sample = iid_sample(alpha, *n, *seed)?;

    let entropy = entropy_route(&sample, beta, *l_max, grid)?;
    let compression = if config.compression_route {
        Some(compression_route(&sample, beta, *l_max)?)
    } else {
        None
    };
    let residual = frequency_divergence_residual(alpha, beta, &sample)?;
    let ratio_diagnostic = match (&compression, alpha.is_positive()) {
        (Some(c), true) => {
            let best = c.family.iter().min_by(|a, b| a.ratio.total_cmp(&b.ratio)).unwrap();
            let info_alpha = self_information(alpha, &sample)?;
            let ratio_alpha = best.compressed_bits as f64 / info_alpha;
            Some(RatioDiagnostic {
                ratio_beta: best.ratio,
                ratio_alpha,
                quotient: best.ratio / ratio_alpha,
                information_quotient: info_alpha / c.self_information_bits,
            })
        }
        _ => None,
    };

    let d = &entropy.dimension;
    let mut checks = vec![
        Check::within("dimension_lower_vs_entropy", d.lower, info.entropy_base_k, tolerances.dimension),
        Check::within("dimension_upper_vs_entropy", d.upper, info.entropy_base_k, tolerances.dimension),
        Check::within("beta_dimension_lower_vs_formula", entropy.lower, prediction, tolerances.beta_dimension),
        Check::within("beta_dimension_upper_vs_formula", entropy.upper, prediction, tolerances.beta_dimension),
        Check::within("self_information_residual", residual, 0.0, tolerances.residual),
    ];
    if let Some(c) = &compression {
        checks.push(Check::within("compression_vs_entropy_route", c.upper_bound, entropy.lower, tolerances.cross_route));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(DimensionReport {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: config.clone(),
        limit_proxy: LIMIT_PROXY,
        prediction,
        info,
        fs_dim_lower: d.lower,
        fs_dim_upper: d.upper,
        entropy_route: entropy,
        compression_route: compression,
        residual,
        ratio_diagnostic,
        checks,
        pass,
    })
}

/// One CSV row: a `(l, n)` cell or a named summary value.
#[derive(Clone, Debug, Serialize)]
struct CsvRow<'a> {
    row: &'a str,
    name: &'a str,
    l: Option<usize>,
    n: Option<usize>,
    entropy_bits: Option<f64>,
    value: f64,
}

impl DimensionReport {
    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }

    /// Cells first (value = normalised rate), then summary rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        for rate in &self.entropy_route.dimension.per_block {
            for p in &rate.points {
                writer.serialize(CsvRow {
                    row: "cell",
                    name: "rate",
                    l: Some(rate.l),
                    n: Some(p.n),
                    entropy_bits: Some(p.entropy_bits),
                    value: p.rate,
                })?;
            }
        }
        let mut summary = vec![
            ("prediction", self.prediction),
            ("fs_dim_lower", self.fs_dim_lower),
            ("fs_dim_upper", self.fs_dim_upper),
            ("beta_dim_entropy_lower", self.entropy_route.lower),
            ("beta_dim_entropy_upper", self.entropy_route.upper),
            ("residual", self.residual),
        ];
        if let Some(c) = &self.compression_route {
            summary.push(("beta_dim_compression_upper_bound", c.upper_bound));
        }
        for (name, value) in summary {
            writer.serialize(CsvRow { row: "summary", name, l: None, n: None, entropy_bits: None, value })?;
        }
        for check in &self.checks {
            let value = if check.pass { 1.0 } else { 0.0 };
            writer.serialize(CsvRow { row: "check", name: check.name, l: None, n: None, entropy_bits: None, value })?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Estimates for a given sequence, as printed by `fsdim estimate`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub k: usize,
    pub len: usize,
    pub l_max: usize,
    pub grid: GridSpec,
    pub limit_proxy: &'static str,
    pub fs_dim_lower: f64,
    pub fs_dim_upper: f64,
    pub per_block: Vec<BlockEntropyRate>,
    pub beta: Option<Vec<String>>,
    pub beta_entropy_route: Option<EntropyRouteEstimate>,
    pub beta_compression_route: Option<CompressionRouteEstimate>,
    /// `H(α̂)/(H(α̂) + D(α̂‖β))` for the letter frequencies `α̂`.
    pub formula_prediction: Option<f64>,
}

pub fn estimate_sequence(
    s: &SymbolString,
    l_max: usize,
    grid: &GridSpec,
    beta: Option<&ProbabilityMeasure>,
) -> Result<EstimateReport> {
    let dim = fs_dimension_estimate(s, l_max, grid)?;
    let (beta_entropy_route, beta_compression_route, formula_prediction) = match beta {
        Some(b) => {
            let e = match fs_beta_dimension_estimate(s, b, l_max, grid, Route::Entropy)? {
                BetaDimensionEstimate::Entropy(e) => e,
                BetaDimensionEstimate::Compression(_) => unreachable!(),
            };
            let c = match fs_beta_dimension_estimate(s, b, l_max, grid, Route::Compression)? {
                BetaDimensionEstimate::Compression(c) => c,
                BetaDimensionEstimate::Entropy(_) => unreachable!(),
            };
            let alpha_hat = ProbabilityMeasure::from_counts(&s.letter_counts())?;
            (Some(e), Some(c), Some(crate::measures::divergence_formula(&alpha_hat, b)?))
        }
        None => (None, None, None),
    };
    Ok(EstimateReport {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        k: s.k(),
        len: s.len(),
        l_max,
        grid: grid.clone(),
        limit_proxy: LIMIT_PROXY,
        fs_dim_lower: dim.lower,
        fs_dim_upper: dim.upper,
        per_block: dim.per_block,
        beta: beta.map(ProbabilityMeasure::entries),
        beta_entropy_route,
        beta_compression_route,
        formula_prediction,
    })
}

/// `|H(π_{S,n}^{(l)}) − l·H(α)|` in bits, the distance of an empirical
/// block entropy from its limit for IID sources.
pub fn block_entropy_gap(s: &SymbolString, alpha: &ProbabilityMeasure, l: usize, n: usize) -> Result<f64> {
    let measure = crate::streams::block_frequencies(s, l, n)?;
    Ok((measure.entropy_bits() - l as f64 * entropy(alpha)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::streams::champernowne;

    fn alternating(n: usize) -> SymbolString {
        SymbolString::new(2, (0..n).map(|i| (i % 2) as u8).collect()).unwrap()
    }

    fn m(entries: &[&str]) -> ProbabilityMeasure {
        ProbabilityMeasure::parse(entries).unwrap()
    }

    #[test]
    fn alternating_rates() {
        let s = alternating(1000);
        let r2 = block_entropy_rate(&s, 2, &[10, 100, 500]).unwrap();
        assert!(r2.points.iter().all(|p| p.rate == 0.0));
        let r1 = block_entropy_rate(&s, 1, &[10, 100, 1000]).unwrap();
        assert!(r1.points.iter().all(|p| p.rate == 1.0));
        assert_eq!(
            block_entropy_rate(&s, 2, &[501]),
            Err(Error::InsufficientPrefix { required: 1002, available: 1000 })
        );
    }

    #[test]
    fn degenerate_dimensions() {
        let est = fs_dimension_estimate(&alternating(10_000), 2, &GridSpec::default()).unwrap();
        assert_eq!((est.lower, est.upper), (0.0, 0.0));
        let zeros = SymbolString::new(2, vec![0; 1000]).unwrap();
        let est = fs_dimension_estimate(&zeros, 1, &GridSpec::default()).unwrap();
        assert_eq!((est.lower, est.upper), (0.0, 0.0));
    }

    #[test]
    fn dimension_is_monotone_in_l_max() {
        let s = champernowne(2, 50_000).unwrap();
        let mut prev = (f64::INFINITY, f64::INFINITY);
        for l_max in 1..=5 {
            let est = fs_dimension_estimate(&s, l_max, &GridSpec::default()).unwrap();
            assert!(est.lower <= prev.0 && est.upper <= prev.1);
            assert!(est.lower <= est.upper);
            prev = (est.lower, est.upper);
        }
    }

    #[test]
    fn uniform_beta_denominator_is_exactly_one() {
        let s = iid_sample(&m(&["3/4", "1/4"]), 20_000, 5).unwrap();
        let mu = ProbabilityMeasure::uniform(2).unwrap();
        let BetaDimensionEstimate::Entropy(e) =
            fs_beta_dimension_estimate(&s, &mu, 3, &GridSpec::default(), Route::Entropy).unwrap()
        else {
            panic!("wrong route")
        };
        assert!(e.denominator_exact);
        assert_eq!(e.denominator, 1.0);
        assert_eq!((e.lower, e.upper), (e.dimension.lower, e.dimension.upper));
    }

    #[test]
    fn fitted_gambler_reproduces_block_frequencies() {
        let s = SymbolString::from_digits(2, "00011011").unwrap();
        let g = fit_block_gambler(&s, 2).unwrap();
        assert_eq!(g.num_states(), 3);
        // each block has frequency 1/4, so d_G(b) = 2^2 · 1/4
        for block in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
            assert_eq!(crate::gales::martingale_exact(&g, &block).unwrap(), BigRational::from_integer(1.into()));
        }
        let g = fit_block_gambler(&SymbolString::from_digits(2, "0001").unwrap(), 2).unwrap();
        assert_eq!(crate::gales::martingale_exact(&g, &[0, 0]).unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn compression_route_bounds_entropy_route() {
        let alpha = m(&["3/4", "1/4"]);
        let s = iid_sample(&alpha, 100_000, 9).unwrap();
        let mu = ProbabilityMeasure::uniform(2).unwrap();
        let c = fs_beta_dimension_estimate(&s, &mu, 4, &GridSpec::default(), Route::Compression).unwrap();
        let e = fs_beta_dimension_estimate(&s, &mu, 4, &GridSpec::default(), Route::Entropy).unwrap();
        assert!(c.value() >= e.value() - 0.01, "{} vs {}", c.value(), e.value());
        assert!((c.value() - 0.811_278).abs() < 0.05, "{}", c.value());
    }

    #[test]
    fn verify_small_alpha_equals_beta() {
        let a = m(&["3/5", "2/5"]);
        let report = verify_divergence(&VerifyConfig::new(a.clone(), a, 100_000, 1, 4)).unwrap();
        assert_eq!(report.prediction, 1.0);
        assert!((report.entropy_route.lower - 1.0).abs() < 0.03, "{}", report.entropy_route.lower);
        let mut csv = Vec::new();
        report.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("row,name,l,n,entropy_bits,value\ncell,rate,1,"));
        assert!(text.contains("summary,prediction,,,,1"));
    }

    #[test]
    fn grid_specs() {
        assert_eq!(GridSpec::default().block_counts(1000, 2).unwrap().last(), Some(&500));
        assert_eq!(GridSpec::Explicit(vec![5, 10]).block_counts(20, 2).unwrap(), vec![5, 10]);
        assert!(GridSpec::Explicit(vec![5, 11]).block_counts(20, 2).is_err());
        assert!(GridSpec::default().block_counts(1, 2).is_err());
    }

    #[test]
    fn code_lengths_for_family() {
        assert_eq!(code_block_len(2, 3, 1 << 16), Some(15));
        assert_eq!(code_block_len(3, 1, 1 << 16), Some(10));
        assert_eq!(code_block_len(2, 17, 1 << 16), None);
    }
}
