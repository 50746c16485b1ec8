//! Builds the iterated filters of a bank and prints their supports.

use atrous::registry;

fn main() -> atrous::Result<()> {
    let bank = registry::example_5_1();
    let f = bank.iterated_filters(4);
    for j in 1..=f.order() {
        let h = bank.iterated_lowpass(j);
        let g = &f.highpass[j - 1][0];
        println!(
            "j={j}  h_j: {:>3} taps at {:>4}   g_j: {:>3} taps at {:>4}",
            h.len(),
            h.offset(),
            g.len(),
            g.offset()
        );
    }
    let h3 = bank.iterated_lowpass(3);
    let direct = bank
        .lowpass()
        .convolve(&bank.lowpass().upsample(1))
        .convolve(&bank.lowpass().upsample(2));
    println!("|h_3 - h*Uh*U²h| = {:.1e}", h3.sub(&direct).max_abs());
    println!("sum h_3 = {}", h3.sum());
    Ok(())
}
