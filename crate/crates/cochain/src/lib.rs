//! Exact cohomological computations over the rationals, plus a floating-point
//! laboratory for a projective cross-ratio cocycle.
//!
//! The crate is organized around a small set of independent engines:
//!
//! - [`ratlin`]: arbitrary-precision rational matrices, reduced echelon form,
//!   kernels, and cohomology dimensions of two-step complexes.
//! - [`rootsys`]: root systems from Cartan type, Weyl group enumeration with
//!   lengths, the longest element, and Chevalley structure constants.
//! - [`liecoh`]: the weight-graded Chevalley-Eilenberg complex of a nilradical
//!   and its cohomology, with the Kostant dimension/weight comparison.
//! - [`weylact`]: the Weyl group action on exterior powers of the Cartan dual,
//!   invariant dimensions and the longest-element parity check.
//! - [`specseq`]: a first-quadrant bicomplex spectral-sequence engine with a
//!   total-cohomology oracle, and a dimension ledger for boundary cohomology.
//! - [`boundary`]: cross-ratios, the bivariate function `F`, the cocycle
//!   `omega` and its five-term functional equation, verified numerically.
//! - [`cli`]: the command-line front end emitting pass/fail reports.

pub mod boundary;
pub mod cli;
pub mod liecoh;
pub mod ratlin;
pub mod report;
pub mod rootsys;
pub mod specseq;
pub mod weylact;
