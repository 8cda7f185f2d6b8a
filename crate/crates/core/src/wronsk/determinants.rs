//! Wronskian and Hankel determinants of type II polynomials along paths.

use std::collections::HashMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mop::{type2, MultiIndex, PathSpec, WeightFamily};
use crate::ratcore::rational::{factorial, int};
use crate::ratcore::{Poly, PolyMatrix, Rational};

/// Memoizes type II polynomials of one family.
pub struct PolyCache<'a> {
    family: &'a WeightFamily,
    polys: HashMap<MultiIndex, Poly>,
}

impl<'a> PolyCache<'a> {
    pub fn new(family: &'a WeightFamily) -> Self {
        PolyCache {
            family,
            polys: HashMap::new(),
        }
    }

    pub fn family(&self) -> &WeightFamily {
        self.family
    }

    pub fn get(&mut self, n: &MultiIndex) -> Result<Poly> {
        if let Some(p) = self.polys.get(n) {
            return Ok(p.clone());
        }
        let p = type2(self.family, n)?;
        self.polys.insert(n.clone(), p.clone());
        Ok(p)
    }

    /// `W(P_{n_0}, ..., P_{n_{l-1}})` for the given path.
    pub fn wronskian(&mut self, path: &PathSpec) -> Result<Poly> {
        let polys = self.path_polys(path)?;
        wronskian_of(&polys)
    }

    pub fn path_polys(&mut self, path: &PathSpec) -> Result<Vec<Poly>> {
        check_path(self.family, path)?;
        path.validate()?.iter().map(|n| self.get(n)).collect()
    }
}

fn check_path(family: &WeightFamily, path: &PathSpec) -> Result<()> {
    if path.start.r() != family.r() {
        return Err(Error::InvalidIndex(format!(
            "path starts at {} but the family has {} weights",
            path.start,
            family.r()
        )));
    }
    Ok(())
}

/// Matrix with entry `(i, j)` equal to the `i`-th derivative of `polys[j]`.
pub fn wronskian_matrix(polys: &[Poly]) -> PolyMatrix {
    let l = polys.len();
    let mut derivs: Vec<Vec<Poly>> = Vec::with_capacity(l);
    for p in polys {
        let mut col = Vec::with_capacity(l);
        let mut d = p.clone();
        for _ in 0..l {
            col.push(d.clone());
            d = d.derivative();
        }
        derivs.push(col);
    }
    PolyMatrix::from_fn(l, l, |i, j| derivs[j][i].clone())
}

pub fn wronskian_of(polys: &[Poly]) -> Result<Poly> {
    wronskian_matrix(polys).det()
}

#[derive(Clone, Debug)]
pub struct WronskianRequest {
    pub family: WeightFamily,
    pub path: PathSpec,
}

impl WronskianRequest {
    pub fn new(family: WeightFamily, path: PathSpec) -> Result<Self> {
        check_path(&family, &path)?;
        path.validate()?;
        Ok(WronskianRequest { family, path })
    }
}

/// `W(n, l; x)`: degree `l |n|`, leading coefficient `prod_{k<l} k!`.
pub fn wronskian(req: &WronskianRequest) -> Result<Poly> {
    PolyCache::new(&req.family).wronskian(&req.path)
}

/// `l x l` Hankel determinant with entry `(a, b) = P_{n + (a+b) e_j}`.
pub fn hankel_det(family: &WeightFamily, n: &MultiIndex, j: usize, l: usize) -> Result<Poly> {
    PolyCache::new(family).hankel_det(n, j, l)
}

/// The Turánian `(-1)^{l(l-1)/2}` times the Hankel determinant, so that
/// `l = 2` gives `P_{n+e_j}^2 - P_n P_{n+2e_j}`.
pub fn turanian(family: &WeightFamily, n: &MultiIndex, j: usize, l: usize) -> Result<Poly> {
    PolyCache::new(family).turanian(n, j, l)
}

fn hankel_sign(l: usize) -> Rational {
    if (l * (l - 1) / 2).is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

impl PolyCache<'_> {
    pub fn turanian(&mut self, n: &MultiIndex, j: usize, l: usize) -> Result<Poly> {
        Ok(self.hankel_det(n, j, l)?.scale(&hankel_sign(l)))
    }

    pub fn hankel_det(&mut self, n: &MultiIndex, j: usize, l: usize) -> Result<Poly> {
        if l == 0 {
            return Err(Error::InvalidIndex("Hankel size must be at least 1".into()));
        }
        if n.r() != self.family.r() {
            return Err(Error::InvalidIndex(format!(
                "{n} does not match {} weights",
                self.family.r()
            )));
        }
        let seq = (0..2 * l - 1)
            .map(|k| self.get(&n.raised_by(j, k)?))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_fn(l, l, |a, b| seq[a + b].clone()).det()
    }
}

/// `prod_{i<m} i!`
pub fn superfactorial(m: usize) -> Rational {
    (0..m).fold(Rational::one(), |acc, i| acc * factorial(i))
}

/// For the multiple Hermite family: the Wronskian along `n, n+e_j, ...,
/// n+(l-1)e_j` equals `(-2)^{l(l-1)/2}` times the Hankel determinant
/// (equivalently `2^{l(l-1)/2}` times the Turánian).
pub fn hankel_wronskian_identity_check(n: &MultiIndex, c: &[Rational], j: usize, l: usize) -> Result<bool> {
    let family = WeightFamily::hermite(c.to_vec())?;
    let mut cache = PolyCache::new(&family);
    let w = cache.wronskian(&PathSpec::straight(n.clone(), j, l))?;
    let t = cache.hankel_det(n, j, l)?;
    let factor = num_traits::pow(int(-2), l * (l - 1) / 2);
    Ok(w == t.scale(&factor))
}

/// `E[prod_k (z - x_k)^m] = W(path; z) / prod_{i<m} i!` for a path of
/// length `m`. Returns the normalized polynomial and its value at `z`.
pub fn moment_acp(family: &WeightFamily, path: &PathSpec, z: &Rational) -> Result<(Poly, Rational)> {
    let w = PolyCache::new(family).wronskian(path)?;
    let p = w.scale(&superfactorial(path.len()).recip());
    let v = p.eval(z);
    Ok((p, v))
}

/// Polynomial as `{"poly": [...], "degree": n, "leading": "p/q"}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyReport {
    pub poly: Poly,
    pub degree: Option<usize>,
    pub leading: String,
}

impl From<&Poly> for PolyReport {
    fn from(p: &Poly) -> Self {
        PolyReport {
            poly: p.clone(),
            degree: p.degree(),
            leading: crate::ratcore::format_rational(&p.leading()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::rat;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    fn hermite01() -> WeightFamily {
        WeightFamily::hermite(vec![int(0), int(1)]).unwrap()
    }

    #[test]
    fn length_one_is_the_polynomial() {
        let f = hermite01();
        let req = WronskianRequest::new(f.clone(), PathSpec::new(mi(&[2, 1]), vec![])).unwrap();
        assert_eq!(wronskian(&req).unwrap(), type2(&f, &mi(&[2, 1])).unwrap());
    }

    #[test]
    fn from_zero_index_is_constant() {
        for steps in [vec![1], vec![2], vec![1, 2], vec![2, 2, 1]] {
            let l = steps.len() + 1;
            let req = WronskianRequest::new(hermite01(), PathSpec::new(mi(&[0, 0]), steps)).unwrap();
            assert_eq!(wronskian(&req).unwrap(), Poly::constant(superfactorial(l)));
        }
    }

    #[test]
    fn degree_and_leading_coefficient() {
        let f = WeightFamily::laguerre_second(rat(1, 2), vec![int(2), rat(3, 5)]).unwrap();
        for l in 1..=4 {
            for p in PathSpec::enumerate(&mi(&[2, 1]), l) {
                let w = PolyCache::new(&f).wronskian(&p).unwrap();
                assert_eq!(w.degree(), Some(l * 3));
                assert_eq!(w.leading(), superfactorial(l));
            }
        }
    }

    #[test]
    fn hermite_l2_degree_two() {
        let req = WronskianRequest::new(hermite01(), PathSpec::new(mi(&[1, 0]), vec![1])).unwrap();
        let w = wronskian(&req).unwrap();
        assert_eq!(w.degree(), Some(2));
        assert_eq!(crate::ratcore::sturm::count_real_roots(&w).unwrap(), 0);
        assert!(w.leading() > int(0));
    }

    #[test]
    fn turanian_quintic() {
        let f = WeightFamily::laguerre_first(vec![rat(1, 2), rat(1, 3)]).unwrap();
        let t = turanian(&f, &mi(&[1, 1]), 1, 2).unwrap();
        let expect = Poly::new(vec![
            int(-10),
            rat(185, 3),
            rat(-7495, 72),
            rat(647, 9),
            rat(-119, 6),
            int(2),
        ]);
        assert_eq!(t, expect);
        assert_eq!(hankel_det(&f, &mi(&[1, 1]), 1, 2).unwrap(), -expect);
        assert_eq!(
            turanian(&f, &mi(&[1, 1]), 1, 1).unwrap(),
            type2(&f, &mi(&[1, 1])).unwrap()
        );
    }

    #[test]
    fn turanian_sign_pattern() {
        let f = hermite01();
        let n = mi(&[1, 2]);
        for (l, sign) in [(1, 1), (2, -1), (3, -1), (4, 1), (5, 1)] {
            let h = hankel_det(&f, &n, 2, l).unwrap();
            assert_eq!(turanian(&f, &n, 2, l).unwrap(), h.scale(&int(sign)));
        }
    }

    #[test]
    fn hankel_identity_examples() {
        let c = [rat(1, 3), rat(2, 5)];
        assert!(hankel_wronskian_identity_check(&mi(&[1, 1]), &c, 1, 1).unwrap());
        assert!(hankel_wronskian_identity_check(&mi(&[1, 1]), &c, 1, 2).unwrap());
        assert!(hankel_wronskian_identity_check(&mi(&[2, 1]), &[int(0), int(1)], 2, 3).unwrap());
    }

    #[test]
    fn moment_acp_examples() {
        let f = hermite01();
        let z = rat(3, 7);
        let (p, v) = moment_acp(&f, &PathSpec::new(mi(&[2, 1]), vec![]), &z).unwrap();
        assert_eq!(p, type2(&f, &mi(&[2, 1])).unwrap());
        assert_eq!(v, p.eval(&z));
        let (p, v) = moment_acp(&f, &PathSpec::new(mi(&[0, 0]), vec![2]), &z).unwrap();
        assert_eq!(p, Poly::one());
        assert_eq!(v, int(1));
    }
}
