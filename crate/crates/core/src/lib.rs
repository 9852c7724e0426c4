//! Exact and empirical distributions of splitting types and Galois groups of
//! random monic polynomials over the integers of a p-adic field.
//!
//! The crate is organised bottom-up:
//!
//! * [`ff`] and [`fqpoly`]: the residue field `F_q` and monic polynomials over it,
//!   including factorization and splitting types.
//! * [`split_types`]: splitting-type combinatorics and every closed-form
//!   probability (cycle-type frequencies, square-free counts, the degree 2 and
//!   degree 3 tables, error bounds).
//! * [`padic`]: truncated arithmetic in `O_p` with tracked precision, Haar
//!   sampling, Newton polygons and Hensel lifting.
//! * [`decide`]: per-instance splitting type / Galois group / ramification of
//!   quadratics and cubics.
//! * [`oracle`]: brute-force censuses used to validate the closed forms.
//! * [`montecarlo`]: seeded, parallel sampling experiments.

pub mod arith;
pub mod decide;
mod error;
pub mod ff;
pub mod fqpoly;
pub mod montecarlo;
pub mod oracle;
pub mod padic;
pub mod split_types;

pub use error::{Error, Result};
pub use split_types::{GroupLabel, Rat, SplittingType};
