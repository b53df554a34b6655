//! Exact combinatorics for the balanced double A_{2k+1}-curve of genus `g = 2k`.
//!
//! The crate is organised bottom-up:
//!
//! * [`monomial`]: monomials in `x_1..x_k, y_1..y_k`, one-parameter subgroup
//!   weights, weighted degree and enumeration.
//! * [`laurent`] and [`sections`]: pluricanonical sections as triples of
//!   Laurent polynomials on the three components of the normalization.
//! * [`chi`]: χ-bases, the explicit T/S/B families and minimum-weight selection.
//! * [`rnc`]: monomial bases for the rational normal curve factor (Kempf's bound).
//! * [`lp`] and [`certify`]: exact rational LP and semistability certificates
//!   for the diagonal Kempf–Morrison condition.
//! * [`slope`]: closed-form bielliptic and slope calculators.
//!
//! Everything is exact: integers for weights, arbitrary-precision rationals
//! wherever a division appears.

pub mod certify;
pub mod chi;
pub mod error;
pub mod laurent;
pub mod lp;
pub mod monomial;
pub mod ratio;
pub mod rnc;
pub mod sections;
pub mod slope;

pub use error::{Error, Result};
pub use monomial::{Monomial, OccurrenceVector, Purity, RhoWeights};
