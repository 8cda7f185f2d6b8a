//! Path independence of the Wronskian.
//!
//! The averaged moment `E[prod (z - x_k)^m]` does not depend on the path,
//! so every monotone path between the same endpoints' starting index must
//! give the same Wronskian. Enumeration is exhaustive up to a cap, beyond
//! which a seeded random subset of step sequences is drawn.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mop::{MultiIndex, PathSpec, WeightFamily};
use crate::ratcore::Poly;

use super::determinants::PolyCache;

pub const DEFAULT_PATH_CAP: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct PathIndependenceReport {
    pub ok: bool,
    pub total_paths: u128,
    pub paths_checked: usize,
    pub exhaustive: bool,
    /// Reference path and the first path whose Wronskian differs from it.
    pub witness: Option<(PathSpec, PathSpec)>,
}

/// The paths to compare: all of them when at most `cap`, otherwise the
/// straight path along direction 1 plus `cap - 1` seeded random ones.
pub fn sample_paths(n: &MultiIndex, l: usize, cap: usize, seed: u64) -> (Vec<PathSpec>, bool) {
    let total = PathSpec::count(n.r(), l);
    if total <= cap as u128 {
        return (PathSpec::enumerate(n, l), true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![PathSpec::straight(n.clone(), 1, l)];
    while out.len() < cap.max(2) {
        let steps: Vec<usize> = (0..l - 1).map(|_| rng.gen_range(1..=n.r())).collect();
        let p = PathSpec::new(n.clone(), steps);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    (out, false)
}

pub fn path_independence_check(
    family: &WeightFamily,
    n: &MultiIndex,
    l: usize,
    cap: usize,
    seed: u64,
) -> Result<PathIndependenceReport> {
    if l < 2 {
        return Err(Error::InvalidIndex("path independence needs l >= 2".into()));
    }
    if n.r() < 2 || family.r() != n.r() {
        return Err(Error::InvalidIndex(
            "path independence needs r >= 2 and a multi-index matching the family".into(),
        ));
    }
    let (paths, exhaustive) = sample_paths(n, l, cap, seed);
    let mut cache = PolyCache::new(family);
    let reference: Poly = cache.wronskian(&paths[0])?;
    let mut witness = None;
    let mut checked = 1;
    for p in &paths[1..] {
        checked += 1;
        if cache.wronskian(p)? != reference {
            witness = Some((paths[0].clone(), p.clone()));
            break;
        }
    }
    Ok(PathIndependenceReport {
        ok: witness.is_none(),
        total_paths: PathSpec::count(n.r(), l),
        paths_checked: checked,
        exhaustive,
        witness,
    })
}
