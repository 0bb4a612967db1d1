//! Exact computation of subgroup-sum functions `sigma_a` on finite abelian
//! p-groups and of their multivariate generating series.
//!
//! A group `[p; f_1, ..., f_r]` is `Z/p^{e_1} x ... x Z/p^{e_r}` with
//! `e_i = f_1 + ... + f_i`. With `q = p^a`, `sigma_a` of such a group is a
//! polynomial in `p` and `q`; every routine here works with that polynomial
//! symbolically and only substitutes numbers at the very end.
//!
//! - [`poly`]: exact arithmetic in `Z[p, 1/p, q]`, fractions, and
//!   polynomials in `X_1..X_r`.
//! - [`group`]: subgroup enumeration through Hermite normal forms, the
//!   ground truth every formula is checked against.
//! - [`sigma`]: three recursive/closed formulas for the sigma polynomial.
//! - [`series`]: the generating series as an exact rational function.
//! - [`verify`] and [`bench`]: the cross-check suite and timing harness
//!   behind the `abzeta` binary.

pub mod bench;
pub mod error;
pub mod golden;
pub mod group;
pub mod poly;
pub mod series;
pub mod sigma;
pub mod verify;

pub use error::{Error, Result};
