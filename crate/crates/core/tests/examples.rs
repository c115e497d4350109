macro_rules! example_test {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(information_measures, "information_measures.rs");
example_test!(normal_sequences, "normal_sequences.rs");
example_test!(gambler_gales, "gambler_gales.rs");
example_test!(block_compressors, "block_compressors.rs");
example_test!(dimension_estimates, "dimension_estimates.rs");
example_test!(divergence_formula, "divergence_formula.rs");
