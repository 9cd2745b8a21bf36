//! Fredholm determinants of truncated Bessel, Wiener–Hopf and Hankel
//! operators, the identities relating them, and the hard-edge
//! determinantal point process.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod dpp;
pub mod error;
pub mod fredholm;
pub mod identity;
pub mod kernels;
pub mod quadrature;
pub mod special_functions;
pub mod symbols;

pub use error::{Error, Result};
