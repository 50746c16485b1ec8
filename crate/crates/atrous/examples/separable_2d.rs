//! Separable 2-D banks: bounds, analysis and synthesis.

use atrous::registry;
use atrous::separable2d::{
    analyze_2d, frame_bounds_2d, level_uniform_bounds, separable_product, synthesize_2d, FiniteSequence2D,
};
use atrous::GridSpec;

fn main() -> atrous::Result<()> {
    let bx = registry::example_5_1();
    let by = registry::haar();
    let bank = separable_product(&bx, &by);
    println!("{} filters, high-pass indices {:?}", bank.highpass().len() + 1, bank.highpass_indices());

    let grid = GridSpec::new(64)?;
    let r = frame_bounds_2d(&bank, 2, grid)?;
    let (a, b) = r.certified_bounds();
    println!("2-D J=2: A ∈ [{a:.6}, {:.6}], B ∈ [{:.6}, {b:.6}]", r.a_estimate(), r.b_estimate());
    let (ax, bxx) = level_uniform_bounds(&bx, 2, grid)?;
    let (ay, byy) = level_uniform_bounds(&by, 2, grid)?;
    println!("products of level-uniform 1-D bounds: {:.6} ≤ A, B ≤ {:.6}", ax * ay, bxx * byy);

    let x = FiniteSequence2D::new((0, 0), 3, 4, (0..12).map(|v| (v as f64).sin()).collect());
    let pyr = analyze_2d(&bank, &x, 2)?;
    let y = synthesize_2d(&bank, &pyr)?;
    println!("‖x‖² = {:.9}, ‖pyr‖² = {:.9}", x.norm_sq(), pyr.energy());
    println!("⟨F*F x, x⟩ = {:.9}", y.dot(&x));
    Ok(())
}
