//! A finite lattice-quotient model of the Weil representation of the
//! metaplectic `SL₂` and `GL₂^{(2)}` over `Q_p`, `p` odd.

pub mod checks;
pub mod model;

pub use checks::*;
pub use model::{normal_form, FiniteWeilModel, FunctionBatch, Generator, Window, MAX_CARRIER};
