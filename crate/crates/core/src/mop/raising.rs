//! Raising relations, solved for the raised polynomial.
//!
//! * Hermite: `P' = -2 P_{n+e_j} + (2x - c_j) P`
//! * Laguerre, first kind: `x P' = (x - a_j) P - P^{a - e_j}_{n+e_j}`
//! * Laguerre, second kind: `x P' = (c_j x - a) P - c_j P^{(a-1, c)}_{n+e_j}`
//!
//! The output is built only from `P_n` and its derivative, which makes it
//! an independent check on direct construction at the lowered parameters.

use super::construct::type2;
use super::family::WeightFamily;
use super::index::MultiIndex;
use crate::error::{Error, Result};
use crate::ratcore::rational::int;
use crate::ratcore::Poly;

/// The polynomial at `n + e_j` (with lowered parameters for Laguerre
/// families) obtained from `P_n` through the raising relation.
pub fn raising_apply(family: &WeightFamily, n: &MultiIndex, j: usize) -> Result<Poly> {
    n.check_direction(j)?;
    family.check_weight(j)?;
    let x = Poly::x();
    match family {
        WeightFamily::Hermite { c } => {
            let p = type2(family, n)?;
            let lin = Poly::new(vec![-c[j - 1].clone(), int(2)]);
            Ok((&(&lin * &p) - &p.derivative()).scale(&crate::ratcore::rational::rat(1, 2)))
        }
        WeightFamily::LaguerreFirst { alpha } => {
            // the lowered family must itself be valid
            family.lowered(j)?;
            let p = type2(family, n)?;
            let lin = Poly::linear_root(alpha[j - 1].clone());
            Ok(&(&lin * &p) - &(&x * &p.derivative()))
        }
        WeightFamily::LaguerreSecond { alpha, c } => {
            family.lowered(j)?;
            let p = type2(family, n)?;
            let cj = &c[j - 1];
            let lin = Poly::new(vec![-alpha.clone(), cj.clone()]);
            Ok((&(&lin * &p) - &(&x * &p.derivative())).scale(&cj.recip()))
        }
        WeightFamily::Custom(_) => Err(Error::Unsupported(
            "raising relations exist only for Hermite and Laguerre families".into(),
        )),
    }
}

/// Direct construction of the polynomial the raising relation produces.
pub fn raised_direct(family: &WeightFamily, n: &MultiIndex, j: usize) -> Result<Poly> {
    let lowered = family.lowered(j)?;
    type2(&lowered, &n.raised(j)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::rat;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let f = WeightFamily::hermite(vec![int(0), int(1)]).unwrap();
        assert_eq!(raising_apply(&f, &mi(&[0, 0]), 1).unwrap(), Poly::x());
        let out = raising_apply(&f, &mi(&[2, 1]), 2).unwrap();
        assert!(out.is_monic());
        assert_eq!(out.degree(), Some(4));

        let f = WeightFamily::laguerre_first(vec![rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(
            raising_apply(&f, &mi(&[0, 0]), 1).unwrap(),
            Poly::linear_root(rat(1, 2))
        );
    }

    #[test]
    fn out_of_range() {
        let f = WeightFamily::laguerre_first(vec![rat(1, 2), rat(-1, 3)]).unwrap();
        assert!(raising_apply(&f, &mi(&[1, 1]), 2).is_err());
        assert!(raising_apply(&f, &mi(&[1, 1]), 3).is_err());
        let f = WeightFamily::laguerre_second(rat(-1, 2), vec![int(1), int(2)]).unwrap();
        assert!(raising_apply(&f, &mi(&[1, 1]), 1).is_err());
    }

    #[test]
    fn consistent_with_direct_construction() {
        let fams = vec![
            WeightFamily::hermite(vec![rat(1, 3), rat(2, 5)]).unwrap(),
            WeightFamily::laguerre_first(vec![rat(3, 2), rat(4, 3)]).unwrap(),
            WeightFamily::laguerre_second(rat(1, 2), vec![int(2), rat(3, 5)]).unwrap(),
        ];
        for f in &fams {
            for n in MultiIndex::all_up_to(2, 3) {
                for j in 1..=2 {
                    assert_eq!(
                        raising_apply(f, &n, j).unwrap(),
                        raised_direct(f, &n, j).unwrap(),
                        "{f:?} n={n} j={j}"
                    );
                }
            }
        }
    }
}
