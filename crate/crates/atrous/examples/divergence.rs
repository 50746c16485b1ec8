//! A bank whose iterated frame function grows without bound.

use atrous::filterbank::{certify_stability, frame_function_at, infinite_frame_bounds};
use atrous::{registry, GridSpec};

fn main() -> atrous::Result<()> {
    let bank = registry::divergent_example();
    let c = certify_stability(&bank)?;
    println!("verdict: {:?}", c.verdict);
    let r = infinite_frame_bounds(&bank, 20, GridSpec::default())?;
    println!("tail flag: {:?}, sampled sup Φ = {:.1}", r.tail_flag, r.b_estimate());
    let phi = frame_function_at(&bank, 1.0 / 3.0, 12);
    for (j, v) in phi.iter().enumerate().step_by(3) {
        println!("  Φ_{}(1/3) = {v:.3}", j + 1);
    }
    Ok(())
}
