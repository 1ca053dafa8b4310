//! Exact symbolic engine for Drinfeld twists of `U(sl3)`.
//!
//! Everything here is computed over exact rationals: multivariate polynomials
//! in formal deformation parameters, truncated (Laurent) power series, the
//! PBW-ordered enveloping algebra of `sl3` and its tensor powers, a catalog of
//! twisting elements with their carriers and classical r-matrices, the
//! fundamental-representation oracle, and the q-deformed side
//! (`U_q(sl3)`, q-exponentials, coboundary twists, classical limits).
//!
//! The crate is `no_std` + `alloc`; all I/O lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod coeff;
pub mod hopf;
pub mod lie;
pub mod paperdata;
pub mod pbw;
pub mod qdeform;
pub mod rat;
pub mod rep3;

pub use coeff::{ParamId, Poly, TruncSeries};
pub use lie::{Carrier, GeneratorId, LieElement, RMatrixClassical};
pub use pbw::{PbwMonomial, UElement};
pub use rat::Rat;
