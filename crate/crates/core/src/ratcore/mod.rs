//! Exact rational and polynomial arithmetic, polynomial-matrix determinants
//! and real-root machinery.

pub mod matrix;
pub mod poly;
pub mod rational;
pub mod sturm;
pub mod zpoly;

pub use matrix::{solve_rational, PolyMatrix};
pub use poly::Poly;
pub use rational::{format_rational, parse_rational, Rational};
pub use sturm::{isolate_real_roots, sturm_count, Bound, RationalInterval};
