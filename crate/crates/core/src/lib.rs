//! Fredholm data of Toeplitz operators with piecewise continuous symbols.
//!
//! Symbols are finite partitions of the unit circle into arcs, each carrying a
//! trigonometric polynomial. From such a symbol the crate computes
//!
//! * exact Fourier coefficients, Toeplitz finite sections and the action of
//!   `T_a f = P(af)` on analytic polynomials ([`hardy`]),
//! * essential spectra on `H^p`, `1 < p < ∞`, built from the range of the
//!   symbol and the `p`-circular arcs filling each jump ([`spectra`]),
//! * Fredholm indices from the winding number of the arc-completed range,
//! * dyadic estimates of the BMO, `BMO_log` and `Lip_log` seminorms and a
//!   three-valued `H^1` boundedness verdict ([`bmo`]),
//! * desk-scale numerical experiments that probe the same questions through
//!   finite sections ([`experiments`]).
//!
//! The data-parallel kernels run on rayon when the `parallel` feature is on
//! (the default); [`Execution`] selects the strategy at run time.

pub mod bmo;
mod error;
mod exec;
pub mod experiments;
mod fft;
pub mod hardy;
pub mod spectra;
pub mod symbol;

pub use error::{Error, Result};
pub use exec::Execution;
pub use num_complex::Complex64;
pub use symbol::{CoefficientSequence, JumpPoint, Piece, PiecewiseSymbol, JUMP_TOLERANCE};
