//! Stability certificate of an infinitely iterated bank.

use atrous::filterbank::certify_stability;
use atrous::registry;

fn main() -> atrous::Result<()> {
    for name in ["haar", "example-5.1", "example-5.3"] {
        let bank = registry::get(name)?;
        let c = certify_stability(&bank)?;
        println!("{name}: n = {}, verdict {:?}", c.n, c.verdict);
        if let Some(b) = c.bessel {
            println!("  Bessel: s = {}, ε = {:.6} (certified {:.6})", b.s, b.epsilon, b.epsilon_certified);
        }
        if let Some(l) = c.lower {
            println!("  lower: p0 = {:.6}, a = {:.4}, δ = {:.4}, q0 = {:.6}", l.p0, l.a, l.delta, l.q0);
        }
    }
    Ok(())
}
