//! Relative data of the weighted blowup pair, the correspondence with
//! absolute data of the base, the order on relative data and the triangular
//! transfer matrix.

pub mod data;
pub mod enumerate;
pub mod lattice;
pub mod matrix;
pub mod model;
pub mod order;
pub mod psi;

pub use data::*;
pub use matrix::{assemble_l, solve_lower_triangular, CoefficientRule, Matrix, OffDiagonalEntry, RationalVector};
pub use model::FormalPairModel;
pub use order::{linear_extension, precedes, SearchOptions};
pub use psi::{glue, glue_ruled, n_minimal_companion, psi_forward, psi_inverse};
