//! Garden of Eden decision procedures for endomorphisms of shifts of finite
//! type.
//!
//! The crate recodes a window-constrained shift into an edge presentation,
//! analyses its structure (irreducibility, mixing, non-wandering part,
//! cyclic classes, entropy, periodic points), and decides injectivity,
//! surjectivity and pre-injectivity of sliding block codes exactly, with
//! witnesses that re-verify by direct application of the code.

pub mod analysis;
pub mod cli;
pub mod code;
pub mod decision;
pub mod dynamics;
pub mod error;
pub mod harness;
pub mod report;
pub mod shift;

pub use error::{Error, Result};
