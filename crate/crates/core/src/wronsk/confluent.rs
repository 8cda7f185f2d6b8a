//! Confluent limit of the generalized Vandermonde ratio.
//!
//! With `z_i = z + (i-1) eps`,
//! `D(eps) = det(P_{n_j}(z_i)) / prod_{i<j} (z_j - z_i)` tends to
//! `W(path; z) / prod_{i<m} i!` as `eps -> 0`. Residuals are computed
//! exactly; the caller checks that they shrink linearly in `eps`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mop::{PathSpec, WeightFamily};
use crate::ratcore::rational::{int, serde_rational, to_f64};
use crate::ratcore::{Poly, PolyMatrix, Rational};

use super::determinants::{superfactorial, wronskian_of, PolyCache};

#[derive(Clone, Debug, Serialize)]
pub struct ConfluentStep {
    #[serde(with = "serde_rational")]
    pub eps: Rational,
    #[serde(with = "serde_rational")]
    pub value: Rational,
    #[serde(with = "serde_rational")]
    pub residual: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluentReport {
    #[serde(with = "serde_rational")]
    pub target: Rational,
    pub steps: Vec<ConfluentStep>,
}

impl ConfluentReport {
    /// `|r(eps_k)| / |r(eps_{k+1})|` for consecutive steps; `None` where the
    /// later residual is exactly zero.
    pub fn ratios(&self) -> Vec<Option<f64>> {
        self.steps
            .windows(2)
            .map(|w| {
                if w[1].residual.is_zero() {
                    None
                } else {
                    Some(to_f64(&(w[0].residual.abs() / w[1].residual.abs())))
                }
            })
            .collect()
    }

    pub fn all_zero(&self) -> bool {
        self.steps.iter().all(|s| s.residual.is_zero())
    }
}

/// `D(eps)` for a single `eps`.
pub fn divided_ratio(polys: &[Poly], z: &Rational, eps: &Rational) -> Rational {
    let m = polys.len();
    let pts: Vec<Rational> = (0..m).map(|i| z + eps * int(i as i64)).collect();
    let mat = PolyMatrix::from_fn(m, m, |i, j| Poly::constant(polys[j].eval(&pts[i])));
    let det = mat.det().expect("square").coeff(0);
    let mut vdm = Rational::from_integer(1.into());
    for i in 0..m {
        for j in i + 1..m {
            vdm *= &pts[j] - &pts[i];
        }
    }
    det / vdm
}

pub fn confluent_check(
    family: &WeightFamily,
    path: &PathSpec,
    z: &Rational,
    eps: &[Rational],
) -> Result<ConfluentReport> {
    if eps.iter().any(|e| !e.is_positive()) {
        return Err(Error::InvalidIndex("eps must be positive".into()));
    }
    let mut cache = PolyCache::new(family);
    let polys = cache.path_polys(path)?;
    let target = wronskian_of(&polys)?.eval(z) / superfactorial(polys.len());
    let steps = eps
        .iter()
        .map(|e| {
            let value = divided_ratio(&polys, z, e);
            ConfluentStep {
                eps: e.clone(),
                residual: &value - &target,
                value,
            }
        })
        .collect();
    Ok(ConfluentReport { target, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mop::MultiIndex;
    use crate::ratcore::rational::rat;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    fn decades() -> Vec<Rational> {
        vec![rat(1, 10), rat(1, 100), rat(1, 1000), rat(1, 10000)]
    }

    #[test]
    fn single_index_needs_no_limit() {
        let f = WeightFamily::hermite(vec![int(0), int(1)]).unwrap();
        let rep = confluent_check(&f, &PathSpec::new(mi(&[2, 1]), vec![]), &rat(1, 3), &decades()).unwrap();
        assert!(rep.all_zero());
    }

    #[test]
    fn linear_second_column_is_exact() {
        let f = WeightFamily::hermite(vec![int(0), int(1)]).unwrap();
        let rep = confluent_check(&f, &PathSpec::new(mi(&[0, 0]), vec![1]), &rat(1, 3), &decades()).unwrap();
        assert_eq!(rep.target, int(1));
        assert!(rep.all_zero());
    }

    #[test]
    fn residual_is_first_order() {
        let f = WeightFamily::hermite(vec![int(0), int(1)]).unwrap();
        let rep = confluent_check(&f, &PathSpec::new(mi(&[1, 1]), vec![1, 2]), &rat(1, 3), &decades()).unwrap();
        for r in rep.ratios() {
            let r = r.unwrap();
            assert!(r > 5.0 && r < 20.0, "ratio {r}");
        }
    }

    #[test]
    fn rejects_nonpositive_eps() {
        let f = WeightFamily::hermite(vec![int(0), int(1)]).unwrap();
        assert!(confluent_check(&f, &PathSpec::new(mi(&[1, 1]), vec![1]), &int(0), &[int(0)]).is_err());
    }
}
