//! Built-in filter banks.

use crate::error::{AtrousError, Result};
use crate::filterbank::FilterBank;
use crate::sequences::FiniteSequence;

/// Names of the built-in banks, in listing order.
pub const NAMES: [&str; 6] = [
    "haar",
    "example-5.1",
    "example-5.2",
    "example-5.3",
    "example-5.4",
    "divergent-example",
];

fn seq(offset: i64, taps: &[f64]) -> FiniteSequence {
    FiniteSequence::new(offset, taps.to_vec())
}

fn bank(name: &str, h: FiniteSequence, g: Vec<FiniteSequence>) -> FilterBank {
    FilterBank::new(name, h, g).expect("built-in banks are valid")
}

pub fn haar() -> FilterBank {
    bank("haar", seq(0, &[0.5, 0.5]), vec![seq(0, &[0.5, -0.5])])
}

/// Symmetric bank with `p̂(ξ) = 1 + a − a cos 2πξ`, `a = 0.410013`.
pub fn example_5_1() -> FilterBank {
    bank(
        "example-5.1",
        seq(-2, &[-0.05125162, 0.25, 0.60250325, 0.25, -0.05125162]),
        vec![seq(-2, &[-0.05125162, -0.25, 0.60250325, -0.25, -0.05125162])],
    )
}

/// Symmetric bank with a two-parameter `p`.
pub fn example_5_2() -> FilterBank {
    bank(
        "example-5.2",
        seq(
            -3,
            &[-0.00531052, -0.05173370, 0.25531052, 0.60346740, 0.25531052, -0.05173370, -0.00531052],
        ),
        vec![seq(
            -3,
            &[0.00531052, -0.05173370, -0.25531052, 0.60346740, -0.25531052, -0.05173370, 0.00531052],
        )],
    )
}

/// Two high-pass filters designed by frequency interpolation.
pub fn example_5_3() -> FilterBank {
    bank(
        "example-5.3",
        seq(-3, &[-0.05, 0.05, 0.3, 0.4, 0.3, 0.05, -0.05]),
        vec![
            seq(
                -4,
                &[
                    -0.03511286, 0.02810626, -0.24357939, -0.02810626, 0.55738452, -0.02810626,
                    -0.24357939, 0.02810626, -0.03511286,
                ],
            ),
            seq(
                -4,
                &[-0.02588834, 0.0, 0.125, -0.25, 0.30177670, -0.25, 0.125, 0.0, -0.02588834],
            ),
        ],
    )
}

/// Perfect-reconstruction triplet from Bezout identities and spectral factorization.
pub fn example_5_4() -> FilterBank {
    bank(
        "example-5.4",
        seq(-2, &[-0.10956917, 0.09694723, 0.31919216, 0.40305277, 0.29037701]),
        vec![
            seq(
                -4,
                &[
                    -0.03342562, -0.10296278, -0.05386255, 0.33807931, 0.13363824, -0.36727027,
                    0.02801366, 0.13215374, -0.07436373,
                ],
            ),
            seq(
                -4,
                &[
                    0.01271264, 0.04169253, 0.01150312, -0.13643441, -0.06718653, 0.20830747,
                    -0.26150312, 0.38643441, -0.19552611,
                ],
            ),
        ],
    )
}

/// `ĥ = (1+e^{2πiξ})/2 · (2 − cos 2πξ)`, whose infinite bank is not Bessel.
pub fn divergent_example() -> FilterBank {
    let h = seq(-2, &[-0.25, 0.75, 0.75, -0.25]);
    let g = h.modulate_half();
    bank("divergent-example", h, vec![g])
}

/// Looks up a built-in bank by name.
pub fn get(name: &str) -> Result<FilterBank> {
    match name {
        "haar" => Ok(haar()),
        "example-5.1" => Ok(example_5_1()),
        "example-5.2" => Ok(example_5_2()),
        "example-5.3" => Ok(example_5_3()),
        "example-5.4" => Ok(example_5_4()),
        "divergent-example" => Ok(divergent_example()),
        other => Err(AtrousError::BadParams(format!("unknown bank '{other}'"))),
    }
}

/// Every built-in bank.
pub fn all() -> Vec<FilterBank> {
    NAMES.iter().map(|n| get(n).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_bank_loads() {
        assert_eq!(all().len(), 6);
        for n in NAMES {
            assert_eq!(get(n).unwrap().name(), n);
        }
        assert!(get("nope").is_err());
    }

    #[test]
    fn symmetric_highpass_is_modulated_lowpass() {
        for b in [example_5_1(), example_5_2()] {
            assert_eq!(b.lowpass().modulate_half(), b.highpass()[0]);
        }
    }
}
