//! Type I and type II multiple orthogonal polynomials from moment systems.

use num_traits::{One, Zero};
use serde::Serialize;

use super::closed_form;
use super::family::{MomentTable, WeightFamily};
use super::index::MultiIndex;
use crate::error::{Error, Result};
use crate::ratcore::matrix::solve_rational;
use crate::ratcore::{Poly, Rational};

/// How to obtain a type II polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Solve the orthogonality conditions against the moment table.
    Moments,
    /// Evaluate the explicit sum for the family.
    ClosedForm,
}

fn check_r(family: &WeightFamily, n: &MultiIndex) -> Result<()> {
    if family.r() != n.r() {
        return Err(Error::InvalidIndex(format!(
            "multi-index {n} has {} entries but the family has {} weights",
            n.r(),
            family.r()
        )));
    }
    Ok(())
}

/// Monic `P_n` of degree `|n|` with `sum_i a_i nu_{j,i+s} = 0` for every
/// weight `j` and `s < n_j`.
pub fn construct_type2(family: &WeightFamily, n: &MultiIndex) -> Result<Poly> {
    check_r(family, n)?;
    let size = n.size();
    if size == 0 {
        return Ok(Poly::one());
    }
    let table = MomentTable::build(family, 2 * size - 1)?;
    let mut a = Vec::with_capacity(size);
    let mut b = Vec::with_capacity(size);
    for j in 1..=n.r() {
        for s in 0..n.get(j) {
            a.push((0..size).map(|i| table.get(j, i + s).clone()).collect::<Vec<_>>());
            b.push(-table.get(j, size + s).clone());
        }
    }
    let x = solve_rational(&a, &b).ok_or_else(|| Error::NotNormal(format!("moment system for {n} is singular")))?;
    let mut coeffs = x;
    coeffs.push(Rational::one());
    Ok(Poly::new(coeffs))
}

/// Type II polynomial, from the closed form when the family has one.
pub fn type2(family: &WeightFamily, n: &MultiIndex) -> Result<Poly> {
    match family {
        WeightFamily::Custom(_) => construct_type2(family, n),
        _ => closed_form::closed_form(family, n),
    }
}

pub fn type2_with(family: &WeightFamily, n: &MultiIndex, method: Method) -> Result<Poly> {
    match method {
        Method::Moments => construct_type2(family, n),
        Method::ClosedForm => closed_form::closed_form(family, n),
    }
}

/// `Q_n = sum_j A_{n,j} w_j` against unit-mass weights.
#[derive(Clone, Debug, Serialize)]
pub struct LinearForm {
    #[serde(skip)]
    pub family: WeightFamily,
    #[serde(skip)]
    pub n: MultiIndex,
    /// `A_{n,j}` for `j = 1..=r`, each of degree at most `n_j - 1`.
    pub coeff_polys: Vec<Poly>,
}

impl LinearForm {
    /// `int Q_n(x) x^k dx` computed from the moment table.
    pub fn moment(&self, table: &MomentTable, k: usize) -> Rational {
        let mut acc = Rational::zero();
        for (j, a) in self.coeff_polys.iter().enumerate() {
            for (i, c) in a.coeffs().iter().enumerate() {
                acc += c * table.get(j + 1, i + k);
            }
        }
        acc
    }
}

/// Type I linear form: `int Q x^k = 0` for `k <= |n| - 2` and
/// `int Q x^{|n|-1} = 1`.
pub fn construct_type1(family: &WeightFamily, n: &MultiIndex) -> Result<LinearForm> {
    check_r(family, n)?;
    let size = n.size();
    if size == 0 {
        return Err(Error::InvalidIndex("type I forms need |n| >= 1".into()));
    }
    let max_nj = n.entries().iter().copied().max().unwrap_or(0);
    let table = MomentTable::build(family, max_nj + size)?;
    let mut a = Vec::with_capacity(size);
    let mut b = Vec::with_capacity(size);
    for k in 0..size {
        let mut row = Vec::with_capacity(size);
        for j in 1..=n.r() {
            for i in 0..n.get(j) {
                row.push(table.get(j, i + k).clone());
            }
        }
        a.push(row);
        b.push(if k == size - 1 {
            Rational::one()
        } else {
            Rational::zero()
        });
    }
    let x = solve_rational(&a, &b).ok_or_else(|| Error::NotNormal(format!("type I system for {n} is singular")))?;
    let mut coeff_polys = Vec::with_capacity(n.r());
    let mut off = 0;
    for j in 1..=n.r() {
        let nj = n.get(j);
        coeff_polys.push(Poly::new(x[off..off + nj].to_vec()));
        off += nj;
    }
    Ok(LinearForm {
        family: family.clone(),
        n: n.clone(),
        coeff_polys,
    })
}

/// Re-checks `sum_k coeff_k nu_{j,k+s} = 0` for all `s < n_j`, exactly.
pub fn verify_type2_orthogonality(family: &WeightFamily, n: &MultiIndex, p: &Poly) -> Result<bool> {
    let deg = p.degree().unwrap_or(0);
    let max_nj = n.entries().iter().copied().max().unwrap_or(0);
    let table = MomentTable::build(family, deg + max_nj)?;
    for j in 1..=n.r() {
        for s in 0..n.get(j) {
            let v: Rational = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c * table.get(j, k + s))
                .sum();
            if !v.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Re-checks the type I moment conditions exactly.
pub fn verify_type1_duality(form: &LinearForm) -> Result<bool> {
    let size = form.n.size();
    let max_nj = form.n.entries().iter().copied().max().unwrap_or(0);
    let table = MomentTable::build(&form.family, max_nj + size)?;
    for k in 0..size {
        let v = form.moment(&table, k);
        let want = if k == size - 1 {
            Rational::one()
        } else {
            Rational::zero()
        };
        if v != want {
            return Ok(false);
        }
    }
    for (j, a) in form.coeff_polys.iter().enumerate() {
        if a.degree().is_some_and(|d| d + 1 > form.n.get(j + 1)) {
            return Ok(false);
        }
    }
    Ok(true)
}
