//! Undecimated analysis of a signal followed by adjoint synthesis.

use atrous::filterbank::{analyze, synthesize};
use atrous::{registry, FiniteSequence};

fn main() -> atrous::Result<()> {
    let x = FiniteSequence::new(-4, vec![1.0, 3.0, -2.0, 0.5, 4.0, 0.0, -1.0, 2.5]);
    for bank in [registry::haar(), registry::example_5_4()] {
        let pyr = analyze(&bank, &x, 3)?;
        let y = synthesize(&bank, &pyr)?;
        println!("{}", bank.name());
        for j in 1..=pyr.order() {
            println!("  level {j}: {} detail coefficients", pyr.detail(j, 1).len());
        }
        println!("  ‖x‖² = {:.12}  ‖pyr‖² = {:.12}", x.norm_sq(), pyr.energy());
        println!("  max |x − F*F x| = {:.2e}", y.sub(&x).max_abs());
    }
    Ok(())
}
