// Seeded IID samples, the Champernowne sequence and their aligned block
// frequencies.

use fsdim::measures::ProbabilityMeasure;
use fsdim::streams::{block_frequencies, champernowne, iid_sample};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = ProbabilityMeasure::parse(&["3/4", "1/4"])?;
    let sample = iid_sample(&alpha, 100_000, 42)?;
    println!("first 40 symbols of the sample: {}", sample.prefix(40)?);
    println!("letter counts: {:?}", sample.letter_counts());

    let blocks = block_frequencies(&sample, 2, 50_000)?;
    for (block, count) in blocks.iter() {
        println!("  block {:?}: {:.4}", block, count as f64 / blocks.n() as f64);
    }

    let c = champernowne(2, 60)?;
    println!("binary Champernowne prefix: {c}");
    let freq = block_frequencies(&champernowne(2, 1_000_000)?, 3, 300_000)?;
    println!("Champernowne 3-block entropy: {:.4} bits (max 3)", freq.entropy_bits());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
