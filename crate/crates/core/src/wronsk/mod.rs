//! Wronskian and Hankel determinants along multi-index paths, Turán-type
//! expressions, and the identities relating them.

pub mod confluent;
pub mod determinants;
pub mod paths;
pub mod sylvester;
pub mod turan;

pub use confluent::{confluent_check, ConfluentReport};
pub use determinants::{
    hankel_det, hankel_wronskian_identity_check, moment_acp, superfactorial, turanian, wronskian, wronskian_matrix,
    wronskian_of, PolyCache, PolyReport, WronskianRequest,
};
pub use paths::{path_independence_check, PathIndependenceReport, DEFAULT_PATH_CAP};
pub use sylvester::{sylvester_check, wronskian_sylvester_check};
pub use turan::{turan_expression, TuranVariant};
