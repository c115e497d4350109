// End-to-end check of the divergence formula: sample from alpha, estimate
// the beta-dimension two ways and compare with H / (H + D).

use fsdim::estimators::{verify_divergence, VerifyConfig};
use fsdim::measures::ProbabilityMeasure;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = ProbabilityMeasure::parse(&["3/4", "1/4"])?;
    let beta = ProbabilityMeasure::parse(&["1/4", "3/4"])?;
    let report = verify_divergence(&VerifyConfig::new(alpha, beta, 200_000, 42, 6))?;

    println!("prediction            {:.4}", report.prediction);
    println!("entropy route         [{:.4}, {:.4}]", report.entropy_route.lower, report.entropy_route.upper);
    if let Some(c) = &report.compression_route {
        println!("compression route     <= {:.4}", c.upper_bound);
    }
    println!("residual              {:+.5}", report.residual);
    for check in &report.checks {
        println!("{} {}", if check.pass { "PASS" } else { "FAIL" }, check.name);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
