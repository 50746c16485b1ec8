//! High-pass filters from magnitude constraints at chosen frequencies.

use atrous::design::interp_design;
use atrous::filterbank::frame_bounds;
use atrous::{registry, FilterBank, GridSpec};

fn main() -> atrous::Result<()> {
    let r = 0.5f64.sqrt();
    let bands = [
        vec![(0.0, 0.0), (5.0 / 32.0, r), (9.0 / 32.0, 1.0), (0.375, r), (0.5, 0.0)],
        vec![(0.0, 0.0), (0.125, 0.0), (0.25, 0.0), (0.375, r), (0.5, 1.0)],
    ];
    let g = bands
        .iter()
        .map(|c| Ok(interp_design(4, c)?.to_sequence()))
        .collect::<atrous::Result<Vec<_>>>()?;
    for (l, gl) in g.iter().enumerate() {
        println!("g{}: {:?}", l + 1, gl.taps());
    }
    let h = registry::example_5_3().lowpass().clone();
    let bank = FilterBank::new("designed", h, g)?;
    let (a, b) = frame_bounds(&bank, 3, GridSpec::default())?.certified_bounds();
    println!("J=3 bounds: A ≥ {a:.4}, B ≤ {b:.4}");
    Ok(())
}
