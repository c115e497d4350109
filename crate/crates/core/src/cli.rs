//! The `fsdim` command line.
//!
//! Exit codes: 0 on success, 1 on domain errors (the error name is printed
//! first on stderr), 2 on usage errors. `FSDIM_THREADS` caps the worker
//! pool used by the estimators.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::compressors::{
    compress, compress_flushed, compression_ratio, fsg_from_ilfsc, il_check, ilfsc_from_fsg,
    nonvanishing_smooth, CompressorFile, FiniteStateCompressor, IlCheck,
};
use crate::error::{Error, Result};
use crate::estimators::{estimate_sequence, verify_divergence, GridSpec, Tolerances, VerifyConfig};
use crate::gales::{gale_condition_check, success_trace, FiniteStateGambler, FsgGale, GamblerFile};
use crate::grid::geometric_grid;
use crate::measures::{MeasureFile, ProbabilityMeasure};
use crate::streams::{champernowne, iid_sample, read_sequence, write_sequence};

#[derive(Debug, Parser)]
#[command(name = "fsdim", version, about = "Finite-state dimension toolkit: gamblers, gales, compressors and estimators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a symbol sequence (IID sample or Champernowne)
    Gen(GenArgs),
    /// Trace the gale of a finite-state gambler along a sequence
    GaleRun(GaleRunArgs),
    /// Compress a sequence with a finite-state compressor
    Compress(CompressArgs),
    /// Convert between gamblers and compressors
    Convert(ConvertArgs),
    /// Exhaustively test a compressor for information losslessness
    IlCheck(IlCheckArgs),
    /// Estimate finite-state (β-)dimension of a sequence file
    Estimate(EstimateArgs),
    /// Sample an IID sequence and check the divergence formula
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Plain,
    Csv,
}

#[derive(Debug, Args, Serialize)]
pub struct GenArgs {
    /// Measure file to sample from: {"k": 2, "p": ["3/4", "1/4"]}
    #[arg(long, conflicts_with = "champernowne", required_unless_present = "champernowne")]
    pub measure: Option<PathBuf>,
    /// Emit the Champernowne sequence instead of a sample
    #[arg(long)]
    pub champernowne: bool,
    /// Alphabet size for --champernowne
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Number of symbols
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    /// Halving from the full length down
    Log,
    /// Evenly spaced up to the full length
    Linear,
}

#[derive(Debug, Args, Serialize)]
pub struct GaleRunArgs {
    /// Gambler file
    #[arg(long)]
    pub fsg: PathBuf,
    /// Sequence file
    #[arg(long)]
    pub seq: PathBuf,
    /// Payoff measure β (uniform if absent)
    #[arg(long, alias = "measure")]
    pub beta: Option<PathBuf>,
    /// Payoff exponent
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// Spacing of the prefix lengths at which capital is reported
    #[arg(long, value_enum, default_value_t = GridKind::Log)]
    pub grid: GridKind,
    /// Number of prefix lengths in the grid
    #[arg(long, default_value_t = 8)]
    pub grid_points: usize,
    /// Also check the gale law on all strings shorter than this depth
    #[arg(long)]
    pub check_depth: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CompressArgs {
    /// Compressor file
    #[arg(long)]
    pub ilfsc: PathBuf,
    /// Sequence file
    #[arg(long)]
    pub seq: PathBuf,
    /// Print a JSON report instead of the bits
    #[arg(long)]
    pub report: bool,
    /// Append held-back symbols verbatim so the output stands alone
    #[arg(long)]
    pub flush: bool,
    /// Measure for the compression ratio in the report (uniform if absent)
    #[arg(long)]
    pub beta: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ConvertArgs {
    /// Gambler to turn into a compressor (or to smooth)
    #[arg(long, conflicts_with = "from_ilfsc", required_unless_present = "from_ilfsc")]
    pub from_fsg: Option<PathBuf>,
    /// Compressor to turn into a gambler
    #[arg(long)]
    pub from_ilfsc: Option<PathBuf>,
    /// Block length; required except when only smoothing a gambler
    #[arg(long)]
    pub l: Option<usize>,
    /// Mix the gambler with uniform betting first, losing at most
    /// k^(-delta) per symbol
    #[arg(long)]
    pub smooth: Option<f64>,
    /// Output automaton file
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct IlCheckArgs {
    #[arg(long)]
    pub ilfsc: PathBuf,
    /// Test all strings up to this length
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct EstimateArgs {
    /// Sequence file
    #[arg(long)]
    pub seq: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub lmax: usize,
    /// Alphabet size (inferred from the largest digit if absent)
    #[arg(long)]
    pub k: Option<usize>,
    /// Also estimate the β-dimension for this measure
    #[arg(long)]
    pub beta: Option<PathBuf>,
    #[arg(long, default_value_t = crate::estimators::DEFAULT_GRID_POINTS)]
    pub grid_points: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Measure the sequence is sampled from
    #[arg(long)]
    pub alpha: PathBuf,
    /// Payoff measure
    #[arg(long)]
    pub beta: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub lmax: usize,
    #[arg(long, default_value_t = crate::estimators::DEFAULT_GRID_POINTS)]
    pub grid_points: usize,
    /// Skip the compression-route estimate
    #[arg(long)]
    pub no_compression: bool,
    /// Tolerance of β-dimension estimates against the formula
    #[arg(long)]
    pub tol_beta: Option<f64>,
    /// Tolerance of dimension estimates against the entropy
    #[arg(long)]
    pub tol_dim: Option<f64>,
    /// Tolerance between the two β-dimension routes
    #[arg(long)]
    pub tol_cross: Option<f64>,
    /// Tolerance of the per-symbol self-information residual
    #[arg(long)]
    pub tol_residual: Option<f64>,
    /// JSON report file
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV report file
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Format of the report on stdout
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            1
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("FSDIM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(args) => gen(&args),
        Command::GaleRun(args) => gale_run(&args),
        Command::Compress(args) => compress_cmd(&args),
        Command::Convert(args) => convert(&args),
        Command::IlCheck(args) => il_check_cmd(&args),
        Command::Estimate(args) => estimate(&args),
        Command::Verify(args) => verify(&args),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_measure(path: &Path) -> Result<ProbabilityMeasure> {
    let file: MeasureFile = serde_json::from_str(&read_text(path)?)?;
    ProbabilityMeasure::try_from(file)
}

pub fn read_gambler(path: &Path) -> Result<FiniteStateGambler> {
    let file: GamblerFile = serde_json::from_str(&read_text(path)?)?;
    FiniteStateGambler::try_from(file)
}

pub fn read_compressor(path: &Path) -> Result<FiniteStateCompressor> {
    let file: CompressorFile = serde_json::from_str(&read_text(path)?)?;
    FiniteStateCompressor::try_from(file)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut out = output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn gen(args: &GenArgs) -> Result<i32> {
    let seq = match &args.measure {
        Some(path) => iid_sample(&read_measure(path)?, args.n, args.seed)?,
        None => champernowne(args.k, args.n)?,
    };
    let mut out = output(args.out.as_deref())?;
    write_sequence(&mut out, &seq)?;
    out.flush()?;
    Ok(0)
}

#[derive(Serialize)]
struct GaleRunReport<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a GaleRunArgs,
    trace: crate::gales::GaleTrace,
    gale_condition: Option<crate::gales::GaleConditionReport>,
}

fn gale_run(args: &GaleRunArgs) -> Result<i32> {
    let g = read_gambler(&args.fsg)?;
    let seq = read_sequence(&args.seq, Some(g.k()))?;
    let beta = match &args.beta {
        Some(p) => read_measure(p)?,
        None => ProbabilityMeasure::uniform(g.k())?,
    };
    let grid = match args.grid {
        GridKind::Log => geometric_grid(seq.len(), args.grid_points),
        GridKind::Linear => {
            let mut g: Vec<usize> = (1..=args.grid_points).map(|i| seq.len() * i / args.grid_points).filter(|&n| n > 0).collect();
            g.dedup();
            g
        }
    };
    if grid.is_empty() {
        return Err(Error::EmptyInput);
    }
    let trace = success_trace(&g, &beta, args.s, &seq, &grid)?;
    let gale_condition = match args.check_depth {
        Some(depth) => Some(gale_condition_check(&FsgGale::new(&g, &beta, args.s)?, &beta, args.s, depth)?),
        None => None,
    };
    write_json(
        args.out.as_deref(),
        &GaleRunReport { tool: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION"), config: args, trace, gale_condition },
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct CompressReport<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a CompressArgs,
    input_symbols: usize,
    output_bits: usize,
    final_state: usize,
    compression_ratio: Option<f64>,
}

fn compress_cmd(args: &CompressArgs) -> Result<i32> {
    let c = read_compressor(&args.ilfsc)?;
    let seq = read_sequence(&args.seq, Some(c.k()))?;
    let bits = if args.flush { compress_flushed(&c, &seq)? } else { compress(&c, &seq)? };
    if args.report {
        let beta = match &args.beta {
            Some(p) => read_measure(p)?,
            None => ProbabilityMeasure::uniform(c.k())?,
        };
        let ratio = if seq.is_empty() { None } else { Some(compression_ratio(&c, &beta, &seq)?) };
        write_json(
            args.out.as_deref(),
            &CompressReport {
                tool: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                config: args,
                input_symbols: seq.len(),
                output_bits: bits.len(),
                final_state: c.state_after(&seq),
                compression_ratio: ratio,
            },
        )?;
    } else {
        let mut out = output(args.out.as_deref())?;
        writeln!(out, "{bits}")?;
        out.flush()?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct ConvertSummary<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a ConvertArgs,
    constructions: Vec<crate::compressors::Provenance>,
    states: usize,
    /// Correction constant, for compressor-to-gambler conversions.
    m: Option<u64>,
    /// Uniform mixing weight, when smoothing was applied.
    epsilon: Option<String>,
}

fn convert(args: &ConvertArgs) -> Result<i32> {
    let mut constructions = Vec::new();
    let mut epsilon = None;
    let mut m = None;
    let states;
    if let Some(path) = &args.from_ilfsc {
        let l = args.l.ok_or_else(|| Error::InvalidParameter("--l is required with --from-ilfsc".into()))?;
        let art = fsg_from_ilfsc(&read_compressor(path)?, l)?;
        let mut g = art.gambler;
        constructions.push(art.provenance);
        m = Some(art.m);
        if let Some(delta) = args.smooth {
            let smoothed = nonvanishing_smooth(&g, delta)?;
            constructions.push(smoothed.provenance);
            epsilon = Some(smoothed.epsilon.to_string());
            g = smoothed.gambler;
        }
        states = g.num_states();
        write_json(Some(&args.out), &g)?;
    } else {
        let path = args.from_fsg.as_ref().expect("clap requires one source");
        let mut g = read_gambler(path)?;
        if let Some(delta) = args.smooth {
            let smoothed = nonvanishing_smooth(&g, delta)?;
            constructions.push(smoothed.provenance);
            epsilon = Some(smoothed.epsilon.to_string());
            g = smoothed.gambler;
        }
        match args.l {
            Some(l) => {
                let art = ilfsc_from_fsg(&g, l)?;
                constructions.push(art.provenance);
                states = art.compressor.num_states();
                write_json(Some(&args.out), &art.compressor)?;
            }
            None if args.smooth.is_some() => {
                states = g.num_states();
                write_json(Some(&args.out), &g)?;
            }
            None => return Err(Error::InvalidParameter("--from-fsg needs --l, --smooth or both".into())),
        }
    }
    write_json(
        None,
        &ConvertSummary { tool: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION"), config: args, constructions, states, m, epsilon },
    )?;
    Ok(0)
}

fn il_check_cmd(args: &IlCheckArgs) -> Result<i32> {
    let c = read_compressor(&args.ilfsc)?;
    match il_check(&c, args.depth)? {
        IlCheck::Lossless { depth } => {
            println!("lossless up to length {depth}");
            Ok(0)
        }
        IlCheck::Collision { first, second } => Err(Error::NotInformationLossless {
            first: crate::compressors::convert::digits(&first),
            second: crate::compressors::convert::digits(&second),
        }),
    }
}

fn estimate(args: &EstimateArgs) -> Result<i32> {
    let seq = read_sequence(&args.seq, args.k)?;
    let beta = args.beta.as_deref().map(read_measure).transpose()?;
    let grid = GridSpec::Geometric { points: args.grid_points };
    let report = estimate_sequence(&seq, args.lmax, &grid, beta.as_ref())?;
    match args.format {
        Format::Json => write_json(args.out.as_deref(), &report)?,
        Format::Plain | Format::Csv => {
            let mut out = output(args.out.as_deref())?;
            let sep = if args.format == Format::Csv { "," } else { "\t" };
            writeln!(out, "fs_dim_lower{sep}{}", report.fs_dim_lower)?;
            writeln!(out, "fs_dim_upper{sep}{}", report.fs_dim_upper)?;
            if let Some(e) = &report.beta_entropy_route {
                writeln!(out, "beta_dim_entropy_lower{sep}{}", e.lower)?;
                writeln!(out, "beta_dim_entropy_upper{sep}{}", e.upper)?;
            }
            if let Some(c) = &report.beta_compression_route {
                writeln!(out, "beta_dim_compression_upper_bound{sep}{}", c.upper_bound)?;
            }
            if let Some(p) = report.formula_prediction {
                writeln!(out, "formula_prediction{sep}{p}")?;
            }
            out.flush()?;
        }
    }
    Ok(0)
}

fn verify(args: &VerifyArgs) -> Result<i32> {
    let defaults = Tolerances::default();
    let config = VerifyConfig {
        alpha: read_measure(&args.alpha)?,
        beta: read_measure(&args.beta)?,
        n: args.n,
        seed: args.seed,
        l_max: args.lmax,
        grid: GridSpec::Geometric { points: args.grid_points },
        tolerances: Tolerances {
            beta_dimension: args.tol_beta.unwrap_or(defaults.beta_dimension),
            dimension: args.tol_dim.unwrap_or(defaults.dimension),
            cross_route: args.tol_cross.unwrap_or(defaults.cross_route),
            residual: args.tol_residual.unwrap_or(defaults.residual),
        },
        compression_route: !args.no_compression,
    };
    let report = verify_divergence(&config)?;
    if let Some(path) = &args.out {
        let mut out = output(Some(path))?;
        report.write_json(&mut out)?;
        writeln!(out)?;
        out.flush()?;
    }
    if let Some(path) = &args.csv {
        let mut out = output(Some(path))?;
        report.write_csv(&mut out)?;
        out.flush()?;
    }
    let mut out = output(None)?;
    match args.format {
        Format::Json => {
            report.write_json(&mut out)?;
            writeln!(out)?;
        }
        Format::Csv => report.write_csv(&mut out)?,
        Format::Plain => {
            writeln!(out, "prediction\t{}", report.prediction)?;
            writeln!(out, "beta_dim_entropy\t{}\t{}", report.entropy_route.lower, report.entropy_route.upper)?;
            if let Some(c) = &report.compression_route {
                writeln!(out, "beta_dim_compression_upper_bound\t{}", c.upper_bound)?;
            }
            writeln!(out, "fs_dim\t{}\t{}", report.fs_dim_lower, report.fs_dim_upper)?;
            writeln!(out, "residual\t{}", report.residual)?;
            for check in &report.checks {
                writeln!(out, "{}\t{}", if check.pass { "PASS" } else { "FAIL" }, check.name)?;
            }
        }
    }
    out.flush()?;
    Ok(0)
}
