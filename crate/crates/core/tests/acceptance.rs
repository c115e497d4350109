//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Statistical criteria use fixed seeds; the reference values are computed
//! independently below (hand-derived closed forms, not library calls).

use std::time::{Duration, Instant};

use fsdim::compressors::{
    compress, fsg_from_ilfsc, il_check, ilfsc_from_fsg, nonvanishing_smooth,
    FiniteStateCompressor, IlCheck,
};
use fsdim::estimators::{
    fs_beta_dimension_estimate, fs_dimension_estimate, BetaDimensionEstimate, EntropyRouteEstimate,
    GridSpec, Route,
};
use fsdim::gales::{gale_condition_check, FsgGale, GaleTransform, Martingale};
use fsdim::measures::{self_information, ProbabilityMeasure};
use fsdim::random::{below, random_compressor, random_gambler, random_measure, random_string};
use fsdim::streams::{
    champernowne, frequency_divergence_residual_exact, iid_sample, rng_stream, SymbolString,
};

const N: usize = 1_000_000;

/// `H(3/4, 1/4) = 2 − (3/4) log2 3`.
fn h_34() -> f64 {
    2.0 - 0.75 * 3f64.log2()
}

/// Formula value for α = (3/4, 1/4), β = (1/4, 3/4): `H / (H + D)` with
/// `D = (1/2) log2 3`.
fn formula_34_vs_14() -> f64 {
    h_34() / (h_34() + 0.5 * 3f64.log2())
}

/// `H(1/2, 1/4, 1/4) / log2 3 = 1.5 / log2 3`.
fn h_half_quarters_base3() -> f64 {
    1.5 / 3f64.log2()
}

/// `H(3/5, 2/5)`.
fn h_35() -> f64 {
    -(0.6 * 0.6f64.log2() + 0.4 * 0.4f64.log2())
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn m(entries: &[&str]) -> ProbabilityMeasure {
    ProbabilityMeasure::parse(entries).unwrap()
}

fn entropy_route(s: &SymbolString, beta: &ProbabilityMeasure, l_max: usize) -> EntropyRouteEstimate {
    match fs_beta_dimension_estimate(s, beta, l_max, &GridSpec::default(), Route::Entropy).unwrap() {
        BetaDimensionEstimate::Entropy(e) => e,
        BetaDimensionEstimate::Compression(_) => unreachable!(),
    }
}

fn compression_route(s: &SymbolString, beta: &ProbabilityMeasure, l_max: usize) -> f64 {
    fs_beta_dimension_estimate(s, beta, l_max, &GridSpec::default(), Route::Compression)
        .unwrap()
        .value()
}

fn within(e: &EntropyRouteEstimate, target: f64, tol: f64) -> Outcome {
    let pass = (e.lower - target).abs() <= tol && (e.upper - target).abs() <= tol;
    outcome(pass, format!("lower {:.6}, upper {:.6}, target {:.6} ± {tol}", e.lower, e.upper, target))
}

struct Samples {
    a34: SymbolString,
    k3: SymbolString,
    a35: SymbolString,
    c1_elapsed: Duration,
    c1: EntropyRouteEstimate,
}

fn samples() -> Samples {
    let mu = ProbabilityMeasure::uniform(2).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let (a34, c1) = pool.install(|| {
        let s = iid_sample(&m(&["3/4", "1/4"]), N, 1).unwrap();
        let e = entropy_route(&s, &mu, 8);
        (s, e)
    });
    let c1_elapsed = start.elapsed();
    Samples {
        a34,
        k3: iid_sample(&m(&["1/2", "1/4", "1/4"]), N, 3).unwrap(),
        a35: iid_sample(&m(&["3/5", "2/5"]), N, 4).unwrap(),
        c1_elapsed,
        c1,
    }
}

fn criterion_1(s: &Samples) -> Outcome {
    let o = within(&s.c1, h_34(), 0.02);
    let fast = s.c1_elapsed <= Duration::from_secs(10);
    outcome(o.pass && fast, format!("{}; {:.2?} single-threaded (limit 10 s)", o.detail, s.c1_elapsed))
}

fn criterion_2(s: &Samples) -> Outcome {
    within(&entropy_route(&s.a34, &m(&["1/4", "3/4"]), 8), formula_34_vs_14(), 0.03)
}

fn criterion_3(s: &Samples) -> Outcome {
    within(&entropy_route(&s.k3, &ProbabilityMeasure::uniform(3).unwrap(), 5), h_half_quarters_base3(), 0.02)
}

fn criterion_4(s: &Samples) -> Outcome {
    within(&entropy_route(&s.a35, &m(&["3/5", "2/5"]), 8), 1.0, 0.02)
}

fn criterion_5(s: &Samples) -> Outcome {
    let cases = [(&s.a34, 8, h_34()), (&s.k3, 5, h_half_quarters_base3()), (&s.a35, 8, h_35())];
    let mut pass = true;
    let mut parts = Vec::new();
    for (seq, l_max, target) in cases {
        let d = fs_dimension_estimate(seq, l_max, &GridSpec::default()).unwrap();
        pass &= (d.lower - target).abs() <= 0.02 && (d.upper - target).abs() <= 0.02;
        parts.push(format!("[{:.4}, {:.4}] vs {:.4}", d.lower, d.upper, target));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_6(s: &Samples) -> Outcome {
    // H + D = Σ α(a) log2(1/β(a)): 1 for β = μ, (3/4)·2 + (1/4)·log2(4/3) otherwise.
    let cases = [
        (m(&["1/2", "1/2"]), 1.0),
        (m(&["1/4", "3/4"]), 1.5 + 0.25 * (2.0 - 3f64.log2())),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (beta, target) in cases {
        let gap = (self_information(&beta, &s.a34).unwrap() / N as f64 - target).abs();
        pass &= gap <= 0.01;
        parts.push(format!("gap {gap:.5}"));
    }
    let mut rng = rng_stream(6, 0);
    let mut exact_ok = 0;
    for _ in 0..100 {
        let k = 2 + below(&mut rng, 2);
        let beta = random_measure(&mut rng, k);
        let mut w = random_string(&mut rng, k, 40);
        if w.is_empty() {
            w.push(0);
        }
        let counts: Vec<u64> = (0..k).map(|a| w.iter().filter(|&&x| x as usize == a).count() as u64).collect();
        let alpha_hat = ProbabilityMeasure::from_counts(&counts).unwrap();
        if frequency_divergence_residual_exact(&alpha_hat, &beta, &w).unwrap().is_zero() {
            exact_ok += 1;
        }
    }
    pass &= exact_ok == 100;
    parts.push(format!("exact identity on {exact_ok}/100 strings"));
    outcome(pass, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let mut rng = rng_stream(7, 0);
    let mut failures = 0;
    let mut inexact = 0;
    let mut checks = 0;
    for _ in 0..100 {
        let k = 2 + below(&mut rng, 2);
        let g = random_gambler(&mut rng, k, 4);
        let mu = ProbabilityMeasure::uniform(k).unwrap();
        let beta = random_measure(&mut rng, k);
        let target = random_measure(&mut rng, k);
        let mut reports = vec![gale_condition_check(&Martingale(&g), &mu, 1.0, 4).unwrap()];
        for s in [0.5, 1.0, 2.0] {
            let d = FsgGale::new(&g, &beta, s).unwrap();
            reports.push(gale_condition_check(&d, &beta, s, 4).unwrap());
            for t in [0.5, 1.0, 2.0] {
                let moved = GaleTransform::new(&d, &beta, s, &target, t).unwrap();
                reports.push(gale_condition_check(&moved, &target, t, 4).unwrap());
            }
        }
        for r in reports {
            checks += 1;
            failures += usize::from(!r.holds());
            inexact += usize::from(!r.exact);
        }
    }
    outcome(
        failures == 0 && inexact == 0,
        format!("{checks} gale-law checks to depth 4, {failures} violations, {inexact} not exact"),
    )
}

struct AppendixSuite {
    violations: usize,
    evaluations: usize,
    artifacts: Vec<fsdim::compressors::CompressorFromGambler>,
    strings: Vec<Vec<Vec<u8>>>,
}

fn appendix_suite() -> AppendixSuite {
    let mut rng = rng_stream(8, 0);
    let mut suite = AppendixSuite { violations: 0, evaluations: 0, artifacts: Vec::new(), strings: Vec::new() };
    for _ in 0..100 {
        let k = 2 + below(&mut rng, 2);
        let g = random_gambler(&mut rng, k, 5);
        let c = random_compressor(&mut rng, k, 5);
        let strings: Vec<Vec<u8>> = (0..50).map(|_| random_string(&mut rng, k, 200)).collect();
        let smoothed = nonvanishing_smooth(&g, 0.1).unwrap();
        for w in &strings {
            let float = smoothed.check(w).unwrap().holds;
            let exact = smoothed.check_exact(w).unwrap();
            suite.evaluations += 1;
            suite.violations += usize::from(!(float && exact));
        }
        for l in [1, 2, 4] {
            let to_gambler = fsg_from_ilfsc(&c, l).unwrap();
            let to_compressor = ilfsc_from_fsg(&smoothed.gambler, l).unwrap();
            for w in &strings {
                suite.evaluations += 2;
                suite.violations += usize::from(!to_gambler.check(w).unwrap().holds);
                suite.violations += usize::from(!to_compressor.check(w).unwrap().holds);
            }
            suite.artifacts.push(to_compressor);
            suite.strings.push(strings.clone());
        }
    }
    suite
}

fn criterion_8(suite: &AppendixSuite) -> Outcome {
    outcome(
        suite.violations == 0,
        format!("{} bound evaluations, {} violations", suite.evaluations, suite.violations),
    )
}

fn criterion_9(suite: &AppendixSuite) -> Outcome {
    let mut lossless = 0;
    let mut round_trips = 0;
    let mut total = 0;
    for (art, strings) in suite.artifacts.iter().zip(&suite.strings) {
        if il_check(&art.compressor, 8).unwrap().is_lossless() {
            lossless += 1;
        }
        for w in strings {
            total += 1;
            let bits = compress(&art.compressor, w).unwrap();
            if art.decode(&bits, art.compressor.state_after(w)).unwrap() == *w {
                round_trips += 1;
            }
        }
    }
    let silent = FiniteStateCompressor::silent(2).unwrap();
    let rejected = matches!(il_check(&silent, 1).unwrap(), IlCheck::Collision { .. });
    let n = suite.artifacts.len();
    outcome(
        lossless == n && round_trips == total && rejected,
        format!(
            "{lossless}/{n} lossless at depth 8, {round_trips}/{total} round trips, silent coder rejected: {rejected}"
        ),
    )
}

fn criterion_10() -> Outcome {
    let s = SymbolString::new(2, (0..100_000).map(|i| (i % 2) as u8).collect()).unwrap();
    let d = fs_dimension_estimate(&s, 2, &GridSpec::default()).unwrap();
    outcome(d.lower == 0.0 && d.upper == 0.0, format!("({}, {})", d.lower, d.upper))
}

fn criterion_11(s: &Samples) -> Outcome {
    let mu2 = ProbabilityMeasure::uniform(2).unwrap();
    let mu3 = ProbabilityMeasure::uniform(3).unwrap();
    let b = m(&["1/4", "3/4"]);
    let cases = [(&s.a34, &mu2, 8), (&s.a34, &b, 8), (&s.k3, &mu3, 5)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (seq, beta, l_max) in cases {
        let e = entropy_route(seq, beta, l_max).lower;
        let c = compression_route(seq, beta, l_max);
        pass &= (c - e).abs() <= 0.05;
        parts.push(format!("{c:.4} vs {e:.4}"));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_12() -> Outcome {
    let s = champernowne(2, N).unwrap();
    let d = fs_dimension_estimate(&s, 4, &GridSpec::default()).unwrap();
    outcome(d.lower >= 0.95, format!("lower {:.4}, upper {:.4} (sanity only)", d.lower, d.upper))
}

fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    eprintln!("  {label} took {:.2?}", start.elapsed());
    out
}

fn main() {
    let s = timed("sampling", samples);
    let suite = timed("conversion suite", appendix_suite);
    let results: Vec<(&str, Outcome)> = vec![
        ("1 divergence formula, uniform beta", criterion_1(&s)),
        ("2 divergence formula, non-uniform beta", timed("2", || criterion_2(&s))),
        ("3 divergence formula, k = 3", timed("3", || criterion_3(&s))),
        ("4 alpha = beta gives dimension 1", timed("4", || criterion_4(&s))),
        ("5 dimension of IID samples equals normalised entropy", timed("5", || criterion_5(&s))),
        ("6 self-information per symbol", timed("6", || criterion_6(&s))),
        ("7 gale laws in exact arithmetic", timed("7", criterion_7)),
        ("8 conversion bounds", criterion_8(&suite)),
        ("9 information-lossless integrity", timed("9", || criterion_9(&suite))),
        ("10 alternating sequence has dimension 0", timed("10", criterion_10)),
        ("11 compression and entropy routes agree", timed("11", || criterion_11(&s))),
        ("12 Champernowne sanity", timed("12", criterion_12)),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
