// Compressors and the three gambler/compressor constructions, each with
// its bound checked on a sample string, plus a decoding round trip.

use fsdim::compressors::{
    compress, compress_flushed, fsg_from_ilfsc, il_check, ilfsc_from_fsg, nonvanishing_smooth,
    FiniteStateCompressor,
};
use fsdim::gales::FiniteStateGambler;
use fsdim::measures::ProbabilityMeasure;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let w = [0u8, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0];

    let id = FiniteStateCompressor::identity(2)?;
    println!("identity coder: {}", compress(&id, &w)?);
    println!("silent coder: {:?}", il_check(&FiniteStateCompressor::silent(2)?, 3)?);

    let to_gambler = fsg_from_ilfsc(&id, 2)?;
    println!("compressor -> gambler: m = {}, bound {:?}", to_gambler.m, to_gambler.check(&w)?);

    let never_one = FiniteStateGambler::single_state(&ProbabilityMeasure::parse(&["1", "0"])?)?;
    let smoothed = nonvanishing_smooth(&never_one, 0.05)?;
    println!("smoothing: epsilon = {}, exact bound holds {}", smoothed.epsilon, smoothed.check_exact(&w)?);

    let art = ilfsc_from_fsg(&smoothed.gambler, 4)?;
    let bits = compress(&art.compressor, &w)?;
    let end = art.compressor.state_after(&w);
    println!("gambler -> compressor: {} bits, bound {:?}", bits.len(), art.check(&w)?);
    println!("decoded from (bits, state): {:?}", art.decode(&bits, end)?);
    println!("flushed output: {}", compress_flushed(&art.compressor, &w)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("example failed");
}
