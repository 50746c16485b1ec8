//! The symmetric one-parameter family and its ratio optimizer.

use atrous::design::{optimize_symmetric, symmetric_family, symmetric_ratio, SymmetricSearch};
use atrous::GridSpec;

fn main() -> atrous::Result<()> {
    let grid = GridSpec::default();
    for a in [0.1, 0.25, 0.41, 0.8, 1.2] {
        println!("a = {a:<5} ratio = {:.6}", symmetric_ratio(2, &[a], grid));
    }
    let best = optimize_symmetric(2, 1, &SymmetricSearch::default_for(2, 1))?;
    println!("optimum a = {:.6}, ratio = {:.6}", best.params[0], best.ratio);
    let bank = symmetric_family(2, &best.params)?;
    println!("h = {:?}", bank.lowpass().taps());
    println!("g = {:?}", bank.highpass()[0].taps());
    Ok(())
}
