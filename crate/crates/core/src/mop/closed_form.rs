//! Explicit sums for multiple Hermite and multiple Laguerre polynomials.

use num_traits::{One, Zero};

use super::family::WeightFamily;
use super::index::MultiIndex;
use crate::error::{Error, Result};
use crate::ratcore::rational::{binomial, factorial, int};
use crate::ratcore::{Poly, Rational};

/// Calls `f` with every `k` satisfying `0 <= k_i <= n_i`.
fn for_each_sub_index(n: &[usize], mut f: impl FnMut(&[usize])) {
    let mut k = vec![0usize; n.len()];
    loop {
        f(&k);
        let mut pos = 0;
        loop {
            if pos == n.len() {
                return;
            }
            if k[pos] < n[pos] {
                k[pos] += 1;
                break;
            }
            k[pos] = 0;
            pos += 1;
        }
    }
}

fn check_len(n: &MultiIndex, r: usize) -> Result<()> {
    if n.r() != r {
        return Err(Error::InvalidIndex(format!(
            "multi-index {n} has {} entries, parameters describe {r} weights",
            n.r()
        )));
    }
    Ok(())
}

/// Classical Hermite polynomials `H_0..=H_max` with leading coefficient `2^k`.
pub fn classical_hermite(max: usize) -> Vec<Poly> {
    let mut h = vec![Poly::one()];
    if max >= 1 {
        h.push(Poly::from_ints(&[0, 2]));
    }
    for k in 1..max {
        let next = &(&Poly::from_ints(&[0, 2]) * &h[k]) - &h[k - 1].scale(&int(2 * k as i64));
        h.push(next);
    }
    h
}

/// `(-1)^{|n|} / 2^{|n|} sum_k prod C(n_j, k_j) c_j^{n_j - k_j} (-1)^{|k|} H_{|k|}(x)`
pub fn hermite_closed_form(n: &MultiIndex, c: &[Rational]) -> Result<Poly> {
    check_len(n, c.len())?;
    WeightFamily::hermite(c.to_vec())?;
    let size = n.size();
    let h = classical_hermite(size);
    // collect the scalar weight of each H_m first
    let mut weight = vec![Rational::zero(); size + 1];
    for_each_sub_index(n.entries(), |k| {
        let mut t = Rational::one();
        for (j, (&nj, &kj)) in n.entries().iter().zip(k).enumerate() {
            t *= binomial(&int(nj as i64), kj);
            t *= num_traits::pow(c[j].clone(), nj - kj);
        }
        let m: usize = k.iter().sum();
        if m % 2 == 1 {
            t = -t;
        }
        weight[m] += t;
    });
    let mut acc = Poly::zero();
    for (m, w) in weight.iter().enumerate() {
        if !w.is_zero() {
            acc = &acc + &h[m].scale(w);
        }
    }
    let mut pre = Rational::one() / num_traits::pow(int(2), size);
    if size % 2 == 1 {
        pre = -pre;
    }
    Ok(acc.scale(&pre))
}

/// Multiple Laguerre polynomial of the first kind:
///
/// `sum_k prod_i C(n_i, k_i) C(n_i + sum_{m>i}(n_m - k_m) + a_i, k_i) k_i! (-1)^{|k|} x^{|n|-|k|}`
pub fn laguerre1_closed_form(n: &MultiIndex, alpha: &[Rational]) -> Result<Poly> {
    check_len(n, alpha.len())?;
    WeightFamily::laguerre_first(alpha.to_vec())?;
    let size = n.size();
    let r = n.r();
    let mut coeffs = vec![Rational::zero(); size + 1];
    for_each_sub_index(n.entries(), |k| {
        let mut t = Rational::one();
        // sum_{m > i} (n_m - k_m), accumulated from the right
        let mut tail = 0usize;
        for i in (0..r).rev() {
            let (ni, ki) = (n.entries()[i], k[i]);
            let top = int((ni + tail) as i64) + &alpha[i];
            t *= binomial(&int(ni as i64), ki);
            t *= binomial(&top, ki);
            t *= factorial(ki);
            tail += ni - ki;
        }
        let kk: usize = k.iter().sum();
        if kk % 2 == 1 {
            t = -t;
        }
        coeffs[size - kk] += t;
    });
    Ok(Poly::new(coeffs))
}

/// Multiple Laguerre polynomial of the second kind:
///
/// `sum_k prod_j C(n_j, k_j) C(|n| + a, |k|) |k|! (-1)^{|k|} / prod_j c_j^{k_j} x^{|n|-|k|}`
pub fn laguerre2_closed_form(n: &MultiIndex, alpha: &Rational, c: &[Rational]) -> Result<Poly> {
    check_len(n, c.len())?;
    WeightFamily::laguerre_second(alpha.clone(), c.to_vec())?;
    let size = n.size();
    let top = int(size as i64) + alpha;
    let mut coeffs = vec![Rational::zero(); size + 1];
    for_each_sub_index(n.entries(), |k| {
        let kk: usize = k.iter().sum();
        let mut t = binomial(&top, kk) * factorial(kk);
        for (j, (&nj, &kj)) in n.entries().iter().zip(k).enumerate() {
            t *= binomial(&int(nj as i64), kj);
            t /= num_traits::pow(c[j].clone(), kj);
        }
        if kk % 2 == 1 {
            t = -t;
        }
        coeffs[size - kk] += t;
    });
    Ok(Poly::new(coeffs))
}

/// Closed form for the named families; custom moment families have none.
pub fn closed_form(family: &WeightFamily, n: &MultiIndex) -> Result<Poly> {
    match family {
        WeightFamily::Hermite { c } => hermite_closed_form(n, c),
        WeightFamily::LaguerreFirst { alpha } => laguerre1_closed_form(n, alpha),
        WeightFamily::LaguerreSecond { alpha, c } => laguerre2_closed_form(n, alpha, c),
        WeightFamily::Custom(_) => Err(Error::Unsupported("custom moment families have no closed form".into())),
    }
}
