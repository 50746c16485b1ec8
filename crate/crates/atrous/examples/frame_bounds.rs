//! Certified frame bounds for finite and truncated infinite iterations.

use atrous::filterbank::{frame_bounds, infinite_frame_bounds};
use atrous::{registry, GridSpec};

fn main() -> atrous::Result<()> {
    let grid = GridSpec::default();
    for bank in registry::all() {
        if bank.name() == "divergent-example" {
            continue;
        }
        let r = frame_bounds(&bank, 4, grid)?;
        let (a, b) = r.certified_bounds();
        println!(
            "{:<12} J=4  A ∈ [{a:.6}, {:.6}]  B ∈ [{:.6}, {b:.6}]",
            bank.name(),
            r.a_estimate(),
            r.b_estimate()
        );
    }
    let r = infinite_frame_bounds(&registry::example_5_1(), 16, grid)?;
    let (a, b) = r.certified_bounds();
    println!("example-5.1 J=∞  A ≥ {a:.4}  B ≤ {b:.4}  tail {:?}", r.tail_flag);
    Ok(())
}
