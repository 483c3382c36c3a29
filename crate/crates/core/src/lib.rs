//! Exact toolkit for canonical Fano lattice polytopes.

pub mod arith;
pub mod bounds;
pub mod classify;
pub mod construct;
pub mod error;
pub mod linalg;
pub mod polytope;

pub use error::{Error, Result};
