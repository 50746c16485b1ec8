//! Prints squared magnitude responses and the one-level frame function as CSV.

use atrous::spectrum::power_grid;
use atrous::{registry, GridSpec};

fn main() -> atrous::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "example-5.3".into());
    let bank = registry::get(&name)?;
    let grid = GridSpec::new(64)?;
    let h = power_grid(bank.lowpass(), grid)?;
    let g = bank
        .highpass()
        .iter()
        .map(|x| power_grid(x, grid))
        .collect::<atrous::Result<Vec<_>>>()?;
    print!("xi,h2");
    for l in 1..=g.len() {
        print!(",g{l}_2");
    }
    println!(",phi1");
    let n = grid.n;
    for k in 0..n {
        // Rotate so ξ runs from −1/2 upward.
        let i = (k + n / 2) % n;
        let xi = k as f64 / n as f64 - 0.5;
        let phi: f64 = h[i] + g.iter().map(|gl| gl[i]).sum::<f64>();
        print!("{xi},{}", h[i]);
        for gl in &g {
            print!(",{}", gl[i]);
        }
        println!(",{phi}");
    }
    Ok(())
}
