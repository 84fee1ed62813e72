//! Exact-arithmetic kernel for re-checking the rational-root obstruction of
//! the second cuboid quintic `P_s`.
//!
//! Everything here is pure and allocation-only: arbitrary-precision
//! rationals, sparse multivariate polynomials with two independent resultant
//! routes, the cuboid polynomial families and their symbolic identities, the
//! genus-2 curve `w^2 = (t+1)(t^4+20t^3+6t^2+4t+1)` with a bounded-height point
//! search, and the divisor-based rational root sweep. Parallel drivers, JSON
//! and the command line live in the `cuboid-verify` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod check;
pub mod cuboid;
pub mod curve;
pub mod poly;
pub mod sweep;

pub use arith::{is_square_rational, isqrt, Integer, Rational};
pub use check::{CheckId, CheckResult, CheckStatus};
pub use cuboid::{CuboidParams, IdentityName};
pub use curve::{CurvePoint, ExternalCertificate};
pub use poly::{MultiPoly, PolyError, RationalFunction, UniPolyZ, Var};
pub use sweep::{SweepReport, Violation};
