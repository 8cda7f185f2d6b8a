//! Multiple orthogonal polynomials of type I and type II.

pub mod at_probe;
pub mod closed_form;
pub mod construct;
pub mod family;
pub mod index;
pub mod raising;
pub mod weights;

pub use at_probe::{at_system_probe, AtProbeReport};
pub use closed_form::{closed_form, hermite_closed_form, laguerre1_closed_form, laguerre2_closed_form};
pub use construct::{construct_type1, construct_type2, type2, type2_with, LinearForm, Method};
pub use family::{CustomMoments, MomentOracle, MomentTable, WeightFamily};
pub use index::{MultiIndex, PathSpec};
pub use raising::{raised_direct, raising_apply};
