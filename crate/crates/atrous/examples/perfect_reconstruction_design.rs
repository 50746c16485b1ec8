//! Two-high-pass perfect-reconstruction banks from Bezout identities.

use std::f64::consts::PI;

use atrous::design::{pr_triplet_design_with, TripletPhases};
use atrous::filterbank::check_perfect_reconstruction;
use atrous::GridSpec;

fn main() -> atrous::Result<()> {
    let t = pr_triplet_design_with(5.0 * PI / 16.0, PI / 4.0, TripletPhases::default())?;
    println!("s0 = {:.6}, s1 = {:.6}", t.s0, t.s1);
    println!("p = {:?}", t.p.coeffs());
    println!("q = {:?}", t.q.coeffs());
    println!("Bezout residual {:.1e}", t.bezout_residual);
    println!("h  = {:?}", t.bank.lowpass().taps());
    for (l, g) in t.bank.highpass().iter().enumerate() {
        println!("g{} = {:?}", l + 1, g.taps());
    }
    let dev = check_perfect_reconstruction(&t.bank, GridSpec::default());
    println!("max |Φ₁ − 1| = {dev:.1e}");

    let m = pr_triplet_design_with(5.0 * PI / 16.0, PI / 4.0, TripletPhases::all_minimum())?;
    println!("all-minimum-phase h = {:?}", m.bank.lowpass().taps());
    Ok(())
}
