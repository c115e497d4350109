// A two-state gambler, its martingale and gales, an exact check of the gale
// law, and the capital trace along a sampled sequence.

use fsdim::gales::{
    gale_condition_check, martingale_exact, success_trace, FiniteStateGambler, FsgGale, Martingale,
};
use fsdim::grid::geometric_grid;
use fsdim::measures::ProbabilityMeasure;
use fsdim::streams::iid_sample;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // After a 0 the gambler favours 0; after a 1 it bets evenly.
    let g: FiniteStateGambler = serde_json::from_str(
        r#"{"k": 2, "states": 2, "q0": 0,
            "transitions": [[0, 1], [0, 1]],
            "bets": [["3/4", "1/4"], ["1/2", "1/2"]]}"#,
    )?;
    println!("d_G(\"0010\") = {}", martingale_exact(&g, &[0, 0, 1, 0])?);

    let mu = ProbabilityMeasure::uniform(2)?;
    let report = gale_condition_check(&Martingale(&g), &mu, 1.0, 6)?;
    println!("martingale law, {} nodes, exact {}: holds {}", report.nodes_checked, report.exact, report.holds());

    let beta = ProbabilityMeasure::parse(&["1/3", "2/3"])?;
    for s in [0.5, 1.0, 2.0] {
        let gale = FsgGale::new(&g, &beta, s)?;
        let r = gale_condition_check(&gale, &beta, s, 4)?;
        println!("s = {s}: gale law holds {} (exact {})", r.holds(), r.exact);
    }

    let alpha = ProbabilityMeasure::parse(&["3/4", "1/4"])?;
    let seq = iid_sample(&alpha, 100_000, 7)?;
    let trace = success_trace(&g, &mu, 1.0, &seq, &geometric_grid(seq.len(), 6))?;
    for p in &trace.points {
        println!("  n = {:>6}: log2 capital = {:>10.2}", p.len, p.log2_value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
