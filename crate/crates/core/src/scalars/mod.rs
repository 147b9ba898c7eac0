//! The exact coefficient field.
//!
//! A [`Scalar`] is a reduced ratio of two sparse multivariate polynomials
//! ([`MPoly`]) with arbitrary-precision rational coefficients, taken over a
//! fixed ordered list of formal generators (a [`GeneratorSet`]).
//!
//! The three core generators are square roots:
//!
//! ```text
//!     sq = q^{1/2},   st = t^{1/2},   sT = T^{1/2}
//! ```
//!
//! so that half powers such as q^{r/2} (operator shifts) and T^{1/2}
//! (principal specializations) stay inside an ordinary polynomial ring.
//! Identity checks extend the set with auxiliary symbols (a, u, v, x, y and
//! the square root sU) on a per-computation basis.

mod generators;
mod gcd;
mod mpoly;
mod scalar;

pub use generators::{Generator, GeneratorSet};
pub use gcd::poly_gcd;
pub use mpoly::{MPoly, Mono};
pub use scalar::{qpoch, qpoch_multi, Scalar, ScalarError};
