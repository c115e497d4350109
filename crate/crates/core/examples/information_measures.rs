// Entropy, divergence, self-information and the divergence formula for a
// pair of measures, in floating point and in exact log-form.

use fsdim::measures::{
    divergence_formula, entropy, entropy_exact, info_summary, kl_divergence, kl_divergence_exact,
    self_information, ProbabilityMeasure,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = ProbabilityMeasure::parse(&["3/4", "1/4"])?;
    let beta = ProbabilityMeasure::parse(&["1/4", "3/4"])?;

    println!("H(alpha)          = {:.6} bits", entropy(&alpha));
    println!("D(alpha || beta)  = {:.6} bits", kl_divergence(&alpha, &beta)?);
    println!("I_beta(\"01\")      = {:.6} bits", self_information(&beta, &[0, 1])?);
    println!("H / (H + D)       = {:.6}", divergence_formula(&alpha, &beta)?);

    // Exact forms are sums of rational multiples of log2(prime).
    let h = entropy_exact(&alpha)?;
    let d = kl_divergence_exact(&alpha, &beta)?;
    println!("H + D exactly     = {:.6} bits", (h + d).to_f64());

    let summary = info_summary(&alpha, &beta)?;
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
