//! skewforge: exact computer algebra for invariant skew group rings
//! `(L * M)^G` over multivariate rational function fields.
//!
//! The crate builds, multiplies and decomposes G-invariant elements of skew
//! group rings with affine automorphism supports, computes double-coset and
//! Hecke-algebra data, and ships ready-made realizations: rank-1 generalized
//! Weyl algebras, the Gelfand-Tsetlin realization of U(gl_n), and rings of
//! invariant differential operators on a torus. All arithmetic is exact over
//! the rationals.

pub mod error;
pub mod rat;
pub mod poly;
pub mod ratfunc;
pub mod linalg;
pub mod aut;
pub mod monoid;
pub mod setting;
pub mod skew;
pub mod hecke;
pub mod presets;
pub mod parser;
pub mod json;
pub mod suites;

pub use error::{Error, Result};
pub use rat::Rat;
