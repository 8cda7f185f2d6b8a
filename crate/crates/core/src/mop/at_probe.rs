//! Randomized probe of the algebraic Chebyshev (AT) property.
//!
//! For an index `n` the functions `x^k w_j`, `k < n_j`, are sampled at
//! `|n|` distinct random points and the determinant is formed. A Chebyshev
//! system never gives a zero determinant; a zero or near-zero value flags a
//! probable violation. This is a diagnostic, not a proof.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde::Serialize;

use super::family::WeightFamily;
use super::index::MultiIndex;
use super::weights::{float_det, to_float, weight_value};
use crate::error::{Error, Result};
use crate::ratcore::rational::{int, Rational};

const PRECISION: u32 = 256;
const POINT_DENOM: i64 = 64;

#[derive(Clone, Debug, Serialize)]
pub struct AtProbeReport {
    pub trials: usize,
    /// Smallest `|det|` seen.
    pub min_abs_det: f64,
    /// Smallest Hadamard-relative size `|det| / prod(row norms)`, taken
    /// after each point column is scaled to unit max-norm.
    pub min_relative_det: f64,
    /// Points of the trial that produced `min_relative_det`.
    pub worst_points: Vec<String>,
    /// Some trial fell at or below `threshold`.
    pub flagged: bool,
    pub threshold: f64,
}

fn sample_window(family: &WeightFamily) -> (Rational, Rational) {
    match family {
        WeightFamily::Hermite { c } => {
            let mean = c.iter().sum::<Rational>() / int(2 * c.len() as i64);
            (&mean - int(4), mean + int(4))
        }
        _ => (Rational::zero(), int(12)),
    }
}

fn draw_points(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    let span = ((hi - lo) * int(POINT_DENOM)).to_integer();
    let span: i64 = span.try_into().unwrap_or(i64::MAX);
    let mut pts: Vec<Rational> = Vec::with_capacity(count);
    while pts.len() < count {
        // strictly inside (lo, hi) so half-line supports exclude 0
        let k = rng.gen_range(1..span.max(2));
        let x = lo + Rational::new(BigInt::from(k), BigInt::from(POINT_DENOM));
        if !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts.sort();
    pts
}

pub fn at_system_probe(family: &WeightFamily, n: &MultiIndex, trials: usize, seed: u64) -> Result<AtProbeReport> {
    if trials == 0 {
        return Err(Error::InvalidIndex("at least one trial is required".into()));
    }
    if n.r() != family.r() {
        return Err(Error::InvalidIndex(format!(
            "{n} does not match {} weights",
            family.r()
        )));
    }
    let size = n.size();
    let threshold = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = sample_window(family);
    let mut min_abs = f64::INFINITY;
    let mut min_rel = f64::INFINITY;
    let mut worst = Vec::new();
    for _ in 0..trials {
        let pts = draw_points(&mut rng, &lo, &hi, size);
        let mut rows = Vec::with_capacity(size);
        for j in 1..=n.r() {
            let w: Vec<Float> = pts
                .iter()
                .map(|x| weight_value(family, j, x, PRECISION, false))
                .collect::<Result<_>>()?;
            for k in 0..n.get(j) {
                let row: Vec<Float> = pts
                    .iter()
                    .zip(&w)
                    .map(|(x, wx)| {
                        let xp = to_float(&num_traits::pow(x.clone(), k), PRECISION);
                        Float::with_val(PRECISION, &xp * wx)
                    })
                    .collect();
                rows.push(row);
            }
        }
        // equilibrate columns; the determinant only changes by a positive factor
        for col in 0..size {
            let mut m = Float::with_val(PRECISION, 0u32);
            for row in &rows {
                let a = Float::with_val(PRECISION, row[col].abs_ref());
                if a > m {
                    m = a;
                }
            }
            if !m.is_zero() {
                for row in rows.iter_mut() {
                    row[col] /= &m;
                }
            }
        }
        let mut norms = Float::with_val(PRECISION, 1u32);
        for row in &rows {
            let mut s = Float::with_val(PRECISION, 0u32);
            for v in row {
                s += Float::with_val(PRECISION, v * v);
            }
            norms *= s.sqrt();
        }
        let det = float_det(rows, PRECISION).abs();
        let rel = if norms.is_zero() {
            0.0
        } else {
            Float::with_val(PRECISION, &det / &norms).to_f64()
        };
        min_abs = min_abs.min(det.to_f64());
        if rel < min_rel {
            min_rel = rel;
            worst = pts.iter().map(crate::ratcore::format_rational).collect();
        }
    }
    if size == 0 {
        // empty system: determinant of the 0x0 matrix
        min_abs = f64::one();
        min_rel = 1.0;
    }
    Ok(AtProbeReport {
        trials,
        min_abs_det: min_abs,
        min_relative_det: min_rel,
        worst_points: worst,
        flagged: min_rel <= threshold,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::rat;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hermite_pair_is_chebyshev() {
        let f = WeightFamily::hermite(vec![int(0), int(1)]).unwrap();
        let rep = at_system_probe(&f, &mi(&[1, 1]), 20, 7).unwrap();
        assert!(!rep.flagged);
        assert!(rep.min_abs_det > 0.0);
    }

    #[test]
    fn equal_shifts_give_zero_determinant() {
        let f = WeightFamily::Hermite {
            c: vec![int(1), int(1)],
        };
        let rep = at_system_probe(&f, &mi(&[1, 1]), 5, 1).unwrap();
        assert!(rep.flagged);
        assert_eq!(rep.min_abs_det, 0.0);
    }

    #[test]
    fn laguerre_first_probe() {
        let f = WeightFamily::laguerre_first(vec![rat(1, 2), rat(1, 3)]).unwrap();
        let rep = at_system_probe(&f, &mi(&[2, 2]), 100, 2024).unwrap();
        assert!(!rep.flagged, "{rep:?}");
    }

    #[test]
    fn deterministic_in_seed() {
        let f = WeightFamily::laguerre_second(rat(1, 2), vec![int(2), rat(3, 5)]).unwrap();
        let a = at_system_probe(&f, &mi(&[2, 1]), 10, 3).unwrap();
        let b = at_system_probe(&f, &mi(&[2, 1]), 10, 3).unwrap();
        assert_eq!(a.min_relative_det, b.min_relative_det);
        assert!(at_system_probe(&f, &mi(&[2, 1]), 0, 3).is_err());
    }
}
