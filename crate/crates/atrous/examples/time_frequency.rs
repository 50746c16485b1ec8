//! Time and frequency spreads of the filters of each bank.

use atrous::registry;
use atrous::tfmetrics::{tf_stats, SpreadMode};

fn main() -> atrous::Result<()> {
    for bank in registry::all() {
        println!("{}", bank.name());
        let filters = std::iter::once(bank.lowpass()).chain(bank.highpass());
        for (i, x) in filters.enumerate() {
            let s = tf_stats(x, SpreadMode::auto(x))?;
            println!(
                "  {:<3} {:<9} σn² = {:.6}  ω0 = {:.4}  σω² = {:.6}  product = {:.6}",
                if i == 0 { "h".to_string() } else { format!("g{i}") },
                format!("{:?}", s.mode),
                s.sigma_n2,
                s.omega0,
                s.sigma_w2,
                s.product
            );
        }
    }
    Ok(())
}
