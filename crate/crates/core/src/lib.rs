//! Exact modular data for the modular tensor categories C(sl3,k).
//!
//! The crate computes fusion rules by affine folding of weight diagrams,
//! twists, quantum dimensions and S-matrices over cyclotomic fields, the
//! Type-D condensation `C(sl3,3m)_A^0`, its modular invariant, simplicity
//! certificates, and a central-charge ledger for Witt-group relations.

pub mod alcove;
pub mod condense;
pub mod cyclo;
pub mod error;
pub mod fusion;
pub mod modular;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
