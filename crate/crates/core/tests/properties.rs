use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use fsdim::compressors::{
    compress, compression_ratio, ilfsc_from_fsg, nonvanishing_smooth,
};
use fsdim::compressors::block_code::kraft_feasible;
use fsdim::compressors::convert::block_code;
use fsdim::estimators::{block_entropy_gap, fs_dimension_estimate, GridSpec};
use fsdim::gales::{gale_condition_check, martingale_exact, martingale_fraction, Martingale};
use fsdim::measures::{
    divergence_formula, entropy, induced_probability_exact, kl_divergence, self_information,
    ProbabilityMeasure,
};
use fsdim::random::{random_compressor, random_gambler, random_measure};
use fsdim::streams::{block_frequencies, champernowne, iid_sample, rng_stream, SymbolString};

fn word(k: usize, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..k as u8, 0..=max_len)
}

fn alphabet_and_word(max_len: usize) -> impl Strategy<Value = (usize, Vec<u8>)> {
    (2usize..=3).prop_flat_map(move |k| (Just(k), word(k, max_len)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compress_is_prefix_monotone(seed in any::<u64>(), (k, w) in alphabet_and_word(60), cut in 0usize..=60) {
        let c = random_compressor(&mut rng_stream(seed, 0), k, 4);
        let cut = cut.min(w.len());
        let whole = compress(&c, &w).unwrap();
        prop_assert!(compress(&c, &w[..cut]).unwrap().is_prefix_of(&whole));
    }

    #[test]
    fn block_coder_round_trips(seed in any::<u64>(), (k, w) in alphabet_and_word(200), l in prop::sample::select(vec![1usize, 2, 4])) {
        let g = random_gambler(&mut rng_stream(seed, 1), k, 4);
        let smoothed = nonvanishing_smooth(&g, 0.1).unwrap();
        let c = ilfsc_from_fsg(&smoothed.gambler, l).unwrap();
        let bits = compress(&c.compressor, &w).unwrap();
        let end = c.compressor.state_after(&w);
        prop_assert_eq!(c.decode(&bits, end).unwrap(), w.clone());
        prop_assert!(c.check(&w).unwrap().holds);
    }

    #[test]
    fn block_codes_satisfy_kraft(seed in any::<u64>(), k in 2usize..=3, l in 1usize..=3) {
        let g = nonvanishing_smooth(&random_gambler(&mut rng_stream(seed, 2), k, 3), 0.1).unwrap().gambler;
        for q in 0..g.num_states() {
            let code = block_code(&g, q, l).unwrap();
            prop_assert!(kraft_feasible(&code));
            prop_assert!(code.is_prefix_free());
        }
    }

    #[test]
    fn smoothing_loses_a_bounded_factor(seed in any::<u64>(), (k, w) in alphabet_and_word(40), delta in 0.01f64..1.0) {
        let g = random_gambler(&mut rng_stream(seed, 3), k, 4);
        let smoothed = nonvanishing_smooth(&g, delta).unwrap();
        prop_assert!(smoothed.gambler.is_nonvanishing());
        prop_assert!(smoothed.check_exact(&w).unwrap());
        prop_assert!(smoothed.check(&w).unwrap().holds);
    }

    #[test]
    fn martingale_law_is_exact(seed in any::<u64>(), k in 2usize..=3) {
        let g = random_gambler(&mut rng_stream(seed, 4), k, 3);
        let mu = ProbabilityMeasure::uniform(k).unwrap();
        let report = gale_condition_check(&Martingale(&g), &mu, 1.0, 4).unwrap();
        prop_assert!(report.exact);
        prop_assert!(report.holds());
    }

    #[test]
    fn martingale_fraction_matches_reduced_value(seed in any::<u64>(), (k, w) in alphabet_and_word(12)) {
        let g = random_gambler(&mut rng_stream(seed, 5), k, 3);
        let (num, den) = martingale_fraction(&g, &w).unwrap();
        prop_assert_eq!(BigRational::new(num, den), martingale_exact(&g, &w).unwrap());
    }

    #[test]
    fn divergence_is_nonnegative(seed in any::<u64>(), k in 2usize..=4) {
        let mut rng = rng_stream(seed, 6);
        let (alpha, beta) = (random_measure(&mut rng, k), random_measure(&mut rng, k));
        prop_assert!(kl_divergence(&alpha, &beta).unwrap() >= -1e-12);
        prop_assert!(kl_divergence(&alpha, &alpha).unwrap().abs() < 1e-12);
        let uniform = ProbabilityMeasure::uniform(k).unwrap();
        let gap = kl_divergence(&alpha, &uniform).unwrap() - ((k as f64).log2() - entropy(&alpha));
        prop_assert!(gap.abs() < 1e-10);
        let f = divergence_formula(&alpha, &beta).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&f));
    }

    #[test]
    fn induced_probability_is_consistent(seed in any::<u64>(), (k, w) in alphabet_and_word(8)) {
        let alpha = random_measure(&mut rng_stream(seed, 7), k);
        let mut children = BigRational::zero();
        let mut wa = w.clone();
        wa.push(0);
        for a in 0..k as u8 {
            *wa.last_mut().unwrap() = a;
            children += induced_probability_exact(&alpha, &wa).unwrap();
        }
        prop_assert_eq!(children, induced_probability_exact(&alpha, &w).unwrap());
    }

    #[test]
    fn self_information_is_additive(seed in any::<u64>(), (k, u) in alphabet_and_word(30), v in word(2, 30)) {
        let beta = random_measure(&mut rng_stream(seed, 8), k);
        let uv: Vec<u8> = u.iter().chain(&v).copied().collect();
        let sum = self_information(&beta, &u).unwrap() + self_information(&beta, &v).unwrap();
        prop_assert!((self_information(&beta, &uv).unwrap() - sum).abs() < 1e-9);
    }

    #[test]
    fn compression_ratios_differ_by_self_information(seed in any::<u64>(), (k, w) in alphabet_and_word(80)) {
        prop_assume!(!w.is_empty());
        let mut rng = rng_stream(seed, 9);
        let c = random_compressor(&mut rng, k, 3);
        let (alpha, beta) = (random_measure(&mut rng, k), random_measure(&mut rng, k));
        let bits = compress(&c, &w).unwrap().len() as f64;
        let (ia, ib) = (self_information(&alpha, &w).unwrap(), self_information(&beta, &w).unwrap());
        let (ra, rb) = (compression_ratio(&c, &alpha, &w).unwrap(), compression_ratio(&c, &beta, &w).unwrap());
        prop_assert!((ra * ia - bits).abs() <= 1e-9 * bits.max(1.0));
        prop_assert!((rb * ib - bits).abs() <= 1e-9 * bits.max(1.0));
        if bits > 0.0 {
            prop_assert!((ra / rb - ib / ia).abs() <= 1e-9 * (ib / ia));
        }
    }

    #[test]
    fn block_frequencies_sum_to_one(seed in any::<u64>(), k in 2usize..=3, l in 1usize..=4, n in 1usize..500) {
        let alpha = ProbabilityMeasure::uniform(k).unwrap();
        let s = iid_sample(&alpha, n * l, seed).unwrap();
        let freq = block_frequencies(&s, l, n).unwrap();
        prop_assert_eq!(freq.n(), n as u64);
        prop_assert_eq!(freq.counts().iter().sum::<u64>(), n as u64);
        let total: BigRational = freq.iter().map(|(b, _)| freq.frequency_exact(&b)).sum();
        prop_assert_eq!(total, BigRational::one());
    }

    #[test]
    fn champernowne_is_prefix_monotone(k in 2usize..=4, n in 0usize..400) {
        let short = champernowne(k, n).unwrap();
        let long = champernowne(k, n + 1).unwrap();
        prop_assert_eq!(short.symbols(), &long.symbols()[..n]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dimension_estimates_are_ordered_rates(seed in any::<u64>(), k in 2usize..=3, l_max in 1usize..=4) {
        let mut rng = rng_stream(seed, 10);
        let alpha = random_measure(&mut rng, k);
        let s = iid_sample(&alpha, 20_000, seed).unwrap();
        let grid = GridSpec::default();
        let est = fs_dimension_estimate(&s, l_max, &grid).unwrap();
        prop_assert!(0.0 <= est.lower && est.lower <= est.upper && est.upper <= 1.0 + 1e-12);
        let wider = fs_dimension_estimate(&s, l_max + 1, &grid).unwrap();
        prop_assert!(wider.lower <= est.lower + 1e-15);
        prop_assert!(wider.upper <= est.upper + 1e-15);
    }

    #[test]
    fn sequences_of_any_length_are_accepted(k in 2usize..=10, data in prop::collection::vec(any::<u8>(), 0..100)) {
        let symbols: Vec<u8> = data.iter().map(|b| b % k as u8).collect();
        let s = SymbolString::new(k, symbols.clone()).unwrap();
        prop_assert_eq!(s.symbols(), &symbols[..]);
        prop_assert_eq!(s.letter_counts().iter().sum::<u64>(), symbols.len() as u64);
    }
}

#[test]
fn block_entropy_gap_shrinks_with_n() {
    let alpha = ProbabilityMeasure::from_rationals(vec![
        BigRational::new(BigInt::from(3), BigInt::from(4)),
        BigRational::new(BigInt::from(1), BigInt::from(4)),
    ])
    .unwrap();
    let s = iid_sample(&alpha, 1 << 21, 5).unwrap();
    for l in 1..=4 {
        let gaps: Vec<f64> = [1usize << 8, 1 << 12, 1 << 16]
            .iter()
            .map(|&n| block_entropy_gap(&s, &alpha, l, n).unwrap())
            .collect();
        assert!(gaps[2] < gaps[0], "l = {l}: {gaps:?}");
        assert!(gaps[2] < 0.01, "l = {l}: {gaps:?}");
    }
}
