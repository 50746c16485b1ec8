//! Shift-invariant (à trous) iterated filter banks.
//!
//! Iterated filters, undecimated analysis and synthesis in 1-D and 2-D, certified frame bounds,
//! stability certificates for infinitely iterated banks, filter design, and time-frequency
//! spreads.
//!
//! Runnable examples, one per capability, live in `examples/`:
//!
//! | example | shows |
//! |---|---|
//! | `iterated_filters` | building `h_j` and `g_j`, support growth |
//! | `transform_roundtrip` | analysis, synthesis and the energy identity |
//! | `frame_bounds` | certified bounds for finite and truncated infinite banks |
//! | `stability_certificate` | Bessel and lower-bound conditions |
//! | `divergence` | a bank whose infinite iteration is not Bessel |
//! | `frame_reconstruction` | iterative reconstruction from a pyramid |
//! | `symmetric_design` | the symmetric family and its optimizer |
//! | `interpolation_design` | high-pass filters from frequency constraints |
//! | `perfect_reconstruction_design` | Bezout identities and spectral factorization |
//! | `time_frequency` | time and frequency spreads |
//! | `frequency_response` | response and frame-function data for plotting |
//! | `separable_2d` | separable products and 2-D bounds |

pub mod cli;
pub mod design;
pub mod error;
pub mod filterbank;
pub mod separable2d;
pub mod sequences;
pub mod spectrum;
pub mod tfmetrics;

pub use cli::registry;
pub use error::{AtrousError, Result};
pub use filterbank::{CoefficientPyramid, FilterBank};
pub use sequences::FiniteSequence;
pub use spectrum::GridSpec;
