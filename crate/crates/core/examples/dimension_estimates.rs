// Block-entropy rates and finite-state dimension estimates for a periodic
// sequence, an IID sample and the Champernowne sequence.

use fsdim::estimators::{block_entropy_rate, fs_dimension_estimate, GridSpec};
use fsdim::measures::ProbabilityMeasure;
use fsdim::streams::{champernowne, iid_sample, SymbolString};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alternating = SymbolString::new(2, (0..100_000).map(|i| (i % 2) as u8).collect())?;
    let rate = block_entropy_rate(&alternating, 1, &[1_000, 10_000, 100_000])?;
    println!("alternating, l = 1: tail rates [{}, {}]", rate.tail_min, rate.tail_max);

    let grid = GridSpec::default();
    let sequences = [
        ("alternating", alternating),
        ("iid (3/4, 1/4)", iid_sample(&ProbabilityMeasure::parse(&["3/4", "1/4"])?, 200_000, 1)?),
        ("champernowne", champernowne(2, 200_000)?),
    ];
    for (name, seq) in &sequences {
        let est = fs_dimension_estimate(seq, 6, &grid)?;
        println!("{name:>15}: dimension in [{:.4}, {:.4}]", est.lower, est.upper);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
