//! Exact symbolic computation of Macdonald polynomials attached to the
//! root systems B_n, C_n and D_n, together with a verification harness for
//! the q-series identities and transition conjectures that relate the three
//! one-row families to each other and to their stable limit.
//!
//! Everything is exact: coefficients live in a field of rational functions
//! over arbitrary-precision rationals, and every identity check is an exact
//! equality of normal forms (symbolic) or of rational numbers (sampled).
//!
//! Module layout:
//!
//! * [`scalars`]   — the coefficient field: sparse multivariate polynomials
//!   and reduced rational functions in the formal generators q^{1/2},
//!   t^{1/2}, T^{1/2} and per-computation auxiliaries.
//! * [`laurent`]   — sparse Laurent polynomials in x_1..x_n over that field.
//! * [`rootsys`]   — root data, Weyl orbits, dominance order, orbit sums.
//! * [`qseries`]   — terminating basic hypergeometric series, the classical
//!   summation oracles, and the two-parameter transformation layer.
//! * [`macdonald`] — the operator construction of P_{r omega_1}, the
//!   normalized families g_r and G_r, inner products and specializations.
//! * [`transition`] — the four lower-triangular matrix families and the
//!   conjecture harness connecting g^(B), g^(C), g^(D), G.
//! * [`verify`]    — suite orchestration, caching, machine-readable reports.

pub mod laurent;
pub mod qseries;
pub mod report;
pub mod rootsys;
pub mod sampling;
pub mod scalars;
