//! Recovers a signal from its pyramid with the iterative frame algorithm.

use atrous::filterbank::{analyze, frame_bounds, frame_reconstruct_traced};
use atrous::{registry, FiniteSequence, GridSpec};

fn main() -> atrous::Result<()> {
    let bank = registry::example_5_1();
    let x = FiniteSequence::new(0, (0..32).map(|k| ((k * 7 % 11) as f64 - 5.0) / 3.0).collect());
    let pyr = analyze(&bank, &x, 3)?;
    let (a, b) = frame_bounds(&bank, 3, GridSpec::default())?.certified_bounds();
    let rec = frame_reconstruct_traced(&bank, &pyr, a, b, 1e-12, 10_000)?;
    println!("A = {a:.6}, B = {b:.6}, predicted rate ≤ {:.6}", (b - a) / (b + a));
    println!("{} iterations, error {:.2e}", rec.iterations, rec.signal.sub(&x).max_abs());
    for (n, q) in rec.contraction_factors().iter().enumerate().take(5) {
        println!("  step {n}: residual ratio {q:.6}");
    }
    Ok(())
}
