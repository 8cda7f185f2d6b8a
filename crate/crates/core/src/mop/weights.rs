//! Pointwise weight values in multi-precision floating point.

use num_traits::Signed;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::family::WeightFamily;
use crate::error::{Error, Result};
use crate::ratcore::Rational;

pub fn to_float(q: &Rational, prec: u32) -> Float {
    let n = Float::with_val(prec, Float::parse(q.numer().to_string()).expect("integer literal"));
    let d = Float::with_val(prec, Float::parse(q.denom().to_string()).expect("integer literal"));
    n / d
}

/// `w_j(x)`; with `normalized`, divided by the total mass of `w_j`.
pub fn weight_value(family: &WeightFamily, j: usize, x: &Rational, prec: u32, normalized: bool) -> Result<Float> {
    family.check_weight(j)?;
    let xf = to_float(x, prec);
    match family {
        WeightFamily::Hermite { c } => {
            let cj = to_float(&c[j - 1], prec);
            if normalized {
                // exp(-(x - c/2)^2) / sqrt(pi)
                let half_c = Float::with_val(prec, &cj / 2u32);
                let shifted = Float::with_val(prec, &xf - &half_c);
                let e = Float::with_val(prec, -shifted.square()).exp();
                let pi = Float::with_val(prec, Constant::Pi);
                Ok(e / pi.sqrt())
            } else {
                let t = Float::with_val(prec, &cj * &xf) - Float::with_val(prec, xf.clone().square());
                Ok(t.exp())
            }
        }
        WeightFamily::LaguerreFirst { alpha } => {
            if !x.is_positive() {
                return Err(Error::InvalidIndex("Laguerre weights live on x > 0".into()));
            }
            let a = to_float(&alpha[j - 1], prec);
            let mut v = Float::with_val(prec, (&xf).pow(&a)) * Float::with_val(prec, -xf.clone()).exp();
            if normalized {
                let g = Float::with_val(prec, &a + 1u32).gamma();
                v /= g;
            }
            Ok(v)
        }
        WeightFamily::LaguerreSecond { alpha, c } => {
            if !x.is_positive() {
                return Err(Error::InvalidIndex("Laguerre weights live on x > 0".into()));
            }
            let a = to_float(alpha, prec);
            let cj = to_float(&c[j - 1], prec);
            let mut v =
                Float::with_val(prec, (&xf).pow(&a)) * Float::with_val(prec, -(Float::with_val(prec, &cj * &xf))).exp();
            if normalized {
                let a1 = Float::with_val(prec, &a + 1u32);
                let scale = Float::with_val(prec, (&cj).pow(&a1)) / a1.gamma();
                v *= scale;
            }
            Ok(v)
        }
        WeightFamily::Custom(_) => Err(Error::Unsupported(
            "custom moment families have no pointwise weight".into(),
        )),
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn float_det(mut m: Vec<Vec<Float>>, prec: u32) -> Float {
    let n = m.len();
    let mut det = Float::with_val(prec, 1u32);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&a, &b| {
                m[a][k]
                    .clone()
                    .abs()
                    .partial_cmp(&m[b][k].clone().abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(k);
        if m[p][k].is_zero() {
            return Float::with_val(prec, 0u32);
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let f = Float::with_val(prec, &row[k] / &pivot);
            if f.is_zero() {
                continue;
            }
            for (x, p) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                *x -= Float::with_val(prec, &f * p);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::{int, rat};

    #[test]
    fn normalized_weights_have_expected_peaks() {
        let f = WeightFamily::hermite(vec![int(0)]).unwrap();
        let v = weight_value(&f, 1, &int(0), 128, true).unwrap();
        assert!((v.to_f64() - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);

        let f = WeightFamily::laguerre_first(vec![int(0)]).unwrap();
        let v = weight_value(&f, 1, &int(1), 128, true).unwrap();
        assert!((v.to_f64() - (-1.0f64).exp()).abs() < 1e-15);

        let f = WeightFamily::laguerre_second(int(0), vec![int(2)]).unwrap();
        let v = weight_value(&f, 1, &rat(1, 2), 128, true).unwrap();
        assert!((v.to_f64() - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!(weight_value(&f, 1, &int(0), 128, true).is_err());
    }

    #[test]
    fn det_small() {
        let m = vec![
            vec![Float::with_val(64, 2), Float::with_val(64, 1)],
            vec![Float::with_val(64, 4), Float::with_val(64, 3)],
        ];
        assert_eq!(float_det(m, 64).to_f64(), 2.0);
    }
}
