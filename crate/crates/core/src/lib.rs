//! Exact construction of multiple orthogonal polynomials and the
//! Wronskian, Hankel and Turán-type determinants built from them, with exact
//! sign and zero certification and complex zero extraction.

pub mod analyze;
pub mod error;
pub mod mop;
pub mod ratcore;
pub mod wronsk;

pub use error::{Error, Result};
