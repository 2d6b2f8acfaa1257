//! Exact and numerically pinned computations around the metaplectic double
//! cover of `GL_r`: Hilbert symbols and cocycles, Weil indices, a finite
//! lattice model of the Weil representation, and the unramified local
//! computation of twisted symmetric-square L-factors.

pub mod arith;
pub mod cocycle;
pub mod error;
pub mod symsq;
pub mod weil_index;
pub mod weil_rep;

pub use error::{Error, Result};
