//! Genuine multipartite nonlocality of permutationally invariant Gaussian
//! states.
//!
//! The crate builds the pure symmetric n-mode Gaussian family, evaluates
//! Svetlichny functionals for two measurement strategies (displaced parity on
//! all modes, and pseudospin on a three-mode squeezed family), optimizes the
//! measurement settings deterministically, and exposes the scans behind the
//! `svlab` command line tool.

// Frozen reference values keep every digit they were computed with;
// `!(x >= 0.0)` is the NaN-rejecting domain guard; `% 2` reads better than
// is_multiple_of for parity.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::manual_is_multiple_of)]

pub mod error;
pub mod fit;
pub mod gaussian;
pub mod math;
pub mod optim;
pub mod parity;
pub mod pseudospin;
pub mod svetlichny;

pub use error::{Error, Result};
