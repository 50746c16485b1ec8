//! Filter designs: symmetric one-parameter and two-parameter families with an optimizer,
//! frequency-interpolation high-pass filters, and perfect-reconstruction triplets from
//! Bezout identities and spectral factorization.

mod bezout;
mod interp;
mod poly;
mod riesz;
mod symmetric;
mod triplet;

pub use bezout::{bezout_residual, bezout_solve};
pub use interp::{interp_design, MAX_CONDITION};
pub use poly::{CosinePolynomial, ZPolynomial};
pub use riesz::{normalize_sign, poly_from_roots, poly_roots, riesz_factor, riesz_factor_z, Phase, UNIT_BAND};
pub use symmetric::{
    center, certified_sup_p, optimize_symmetric, symmetric_family, symmetric_p, symmetric_ratio,
    SymmetricOptimum, SymmetricSearch,
};
pub use triplet::{pr_triplet_design, pr_triplet_design_with, PrTriplet, TripletPhases};
