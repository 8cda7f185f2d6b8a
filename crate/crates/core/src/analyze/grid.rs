//! Sign of the Wronskian of type I linear forms on a grid.
//!
//! A type I form is `Q = sum_j A_j w_j` with polynomial `A_j`. Because each
//! `w_j'/w_j` is a Laurent polynomial, `Q^(k) = sum_j B_{j,k} w_j` with
//! `B_{j,k} = R_{j,k} / x^k` for polynomials `R_{j,k}`. The `R` are exact;
//! only the weights are evaluated in floating point. The Wronskian is not a
//! polynomial, so this is a numerical diagnostic over a finite grid.

use num_traits::Signed;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mop::weights::{float_det, to_float, weight_value};
use crate::mop::{construct_type1, PathSpec, WeightFamily};
use crate::ratcore::rational::{int, serde_rational_vec};
use crate::ratcore::{Poly, Rational};

/// `R_{j,k}` for `k < l`, indexed `[k][j]`, for one linear form.
fn derivative_numerators(family: &WeightFamily, a: &[Poly], l: usize) -> Result<Vec<Vec<Poly>>> {
    let mut out = vec![a.to_vec()];
    for k in 0..l.saturating_sub(1) {
        let prev = &out[k];
        let mut next = Vec::with_capacity(prev.len());
        for (j, r) in prev.iter().enumerate() {
            let step = match family {
                // B' + (-2x + c) B
                WeightFamily::Hermite { c } => {
                    let log_d = Poly::new(vec![c[j].clone(), int(-2)]);
                    &r.derivative() + &(r * &log_d)
                }
                // x R' - k R + (alpha - c x) R
                WeightFamily::LaguerreFirst { alpha } => laurent_step(r, k, &alpha[j], &int(1)),
                WeightFamily::LaguerreSecond { alpha, c } => laurent_step(r, k, alpha, &c[j]),
                WeightFamily::Custom(_) => {
                    return Err(Error::Unsupported(
                        "custom moment families have no pointwise weight".into(),
                    ))
                }
            };
            next.push(step);
        }
        out.push(next);
    }
    Ok(out)
}

fn laurent_step(r: &Poly, k: usize, alpha: &Rational, c: &Rational) -> Poly {
    let xr = &Poly::x() * &r.derivative();
    let kr = r.scale(&int(k as i64));
    let factor = Poly::new(vec![alpha.clone(), -c.clone()]);
    &(&xr - &kr) + &(r * &factor)
}

#[derive(Clone, Debug, Serialize)]
pub struct GridSignReport {
    #[serde(with = "serde_rational_vec")]
    pub grid: Vec<Rational>,
    /// Sign at each point; 0 where the value could not be separated from
    /// zero at the working precision.
    pub signs: Vec<i32>,
    pub values: Vec<f64>,
    pub constant_sign: bool,
    /// Consecutive grid indices where the sign flips.
    pub sign_changes: Vec<(usize, usize)>,
    /// Points where doubling the precision changed the sign.
    pub unstable: Vec<usize>,
    pub precision_bits: u32,
    /// Always true: grid evaluation is evidence, not proof.
    pub heuristic: bool,
}

/// `B_{j,k}(x)`: Hermite numerators are already the coefficients; Laguerre
/// ones carry the `x^{-k}`.
fn laurent_value(family: &WeightFamily, r: &Poly, k: usize, x: &Rational) -> Rational {
    let v = r.eval(x);
    if family.on_half_line() {
        v / num_traits::pow(x.clone(), k)
    } else {
        v
    }
}

fn evaluate(family: &WeightFamily, numerators: &[Vec<Vec<Poly>>], x: &Rational, prec: u32) -> Result<Float> {
    let r = family.r();
    let l = numerators.len();
    let weights = (1..=r)
        .map(|j| weight_value(family, j, x, prec, true))
        .collect::<Result<Vec<_>>>()?;
    let mut m = Vec::with_capacity(l);
    for k in 0..l {
        let mut row = Vec::with_capacity(l);
        for form in numerators {
            let mut acc = Float::with_val(prec, 0u32);
            for (j, rjk) in form[k].iter().enumerate() {
                if rjk.is_zero() {
                    continue;
                }
                let b = laurent_value(family, rjk, k, x);
                acc += Float::with_val(prec, &to_float(&b, prec) * &weights[j]);
            }
            row.push(acc);
        }
        m.push(row);
    }
    Ok(float_det(m, prec))
}

fn float_sign(v: &Float) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_sign_negative() {
        -1
    } else {
        1
    }
}

pub fn type1_wronskian_grid_sign(
    family: &WeightFamily,
    path: &PathSpec,
    grid: &[Rational],
    precision_bits: u32,
) -> Result<GridSignReport> {
    let l = path.len();
    if !l.is_multiple_of(2) {
        return Err(Error::InvalidIndex(format!(
            "the type I grid check needs even l, got {l}"
        )));
    }
    if matches!(family, WeightFamily::Custom(_)) {
        return Err(Error::Unsupported(
            "custom moment families have no pointwise weight".into(),
        ));
    }
    if family.on_half_line() {
        if let Some(x) = grid.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidIndex(format!("grid point {x} lies outside x > 0")));
        }
    }
    let indices = path.validate()?;
    let numerators = indices
        .iter()
        .map(|n| {
            let form = construct_type1(family, n)?;
            derivative_numerators(family, &form.coeff_polys, l)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut signs = Vec::with_capacity(grid.len());
    let mut values = Vec::with_capacity(grid.len());
    let mut unstable = Vec::new();
    for (i, x) in grid.iter().enumerate() {
        let v = evaluate(family, &numerators, x, precision_bits)?;
        let check = evaluate(family, &numerators, x, precision_bits * 2)?;
        let s = float_sign(&v);
        if s != float_sign(&check) {
            unstable.push(i);
        }
        signs.push(s);
        values.push(v.to_f64());
    }
    let sign_changes: Vec<(usize, usize)> = (1..signs.len())
        .filter(|&i| signs[i] * signs[i - 1] < 0)
        .map(|i| (i - 1, i))
        .collect();
    let constant_sign = sign_changes.is_empty() && unstable.is_empty() && signs.iter().all(|&s| s != 0);
    Ok(GridSignReport {
        grid: grid.to_vec(),
        signs,
        values,
        constant_sign,
        sign_changes,
        unstable,
        precision_bits,
        heuristic: true,
    })
}

/// `count` equally spaced rational points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    if count < 2 {
        return vec![lo.clone()];
    }
    let step = (hi - lo) / int(count as i64 - 1);
    (0..count).map(|i| lo + &step * int(i as i64)).collect()
}
