//! Exact sign and zero certification, complex zero extraction, and the
//! numerical grid check for type I Wronskians.

pub mod grid;
pub mod positivity;
pub mod roots;
pub mod zeros;

pub use grid::{type1_wronskian_grid_sign, uniform_grid, GridSignReport};
pub use positivity::{certify_positive, Domain, PositivityCertificate, Refutation};
pub use roots::{complex_roots, read_roots_csv, write_roots_csv, RootRow, RootSet, DEFAULT_TOL};
pub use zeros::{interlacing_check, real_zero_profile, real_zero_profile_with_width, InterlacingReport, ZeroProfile};
