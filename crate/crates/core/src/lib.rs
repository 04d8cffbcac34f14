//! Exact combinatorics of weighted blowups of orbifold pairs.
//!
//! * [`local_model`] and [`rank`]: twisted sectors and fiber-class labels of
//!   the cyclic local model.
//! * [`invariants`]: closed-form fiber-class invariants with an independent
//!   fixed-point check.
//! * [`correspondence`]: relative and absolute data, the correspondence
//!   between them, the order on relative data and the transfer matrix.

// Errors carry exact rationals; they are rare and not worth boxing.
#![allow(clippy::result_large_err)]

pub mod arith;
pub mod cli;
pub mod correspondence;
pub mod error;
pub mod invariants;
pub mod local_model;
pub mod rank;

pub use arith::Rational;
pub use error::{Error, Result};
pub use local_model::{LocalModel, SectorIndex};
