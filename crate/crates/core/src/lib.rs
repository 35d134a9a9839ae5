//! Broken circuit complexes of regular matroids, their distinguished
//! linear systems of parameters, and NBC monomial bases.

pub mod cli;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod matroid;
pub mod nbc;
pub mod ordering;
pub mod poly;
pub mod signing;
pub mod verify;

pub use error::{Error, Result};
