//! Turán-type expressions.

use serde::{Deserialize, Serialize};

use crate::analyze::Domain;
use crate::error::{Error, Result};
use crate::mop::{type2, MultiIndex, WeightFamily};
use crate::ratcore::Poly;

/// Directions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TuranVariant {
    /// `H_{n+e_j} H_{n+e_k} - H_n H_{n+e_j+e_k}`
    HermitePair(usize, usize),
    /// `H_{n+e_j}^2 - H_n H_{n+2e_j}`
    HermiteDiag(usize),
    /// `L^a_{n+e_k} L^{a-e_j}_{n+e_j} - L^a_n L^{a-e_j}_{n+e_j+e_k}`
    LaguerreFirstTwoParam(usize, usize),
    /// `L^{(a,c)}_{n+e_k} L^{(a-1,c)}_{n+e_j} - L^{(a,c)}_n L^{(a-1,c)}_{n+e_j+e_k}`
    LaguerreSecondTwoParam(usize, usize),
    /// `P_{n+e_j}^2 - P_n P_{n+2e_j}` for any family.
    PlainTuran(usize),
}

impl TuranVariant {
    fn directions(&self) -> (usize, usize) {
        match *self {
            TuranVariant::HermitePair(j, k)
            | TuranVariant::LaguerreFirstTwoParam(j, k)
            | TuranVariant::LaguerreSecondTwoParam(j, k) => (j, k),
            TuranVariant::HermiteDiag(j) | TuranVariant::PlainTuran(j) => (j, j),
        }
    }

    /// Where the inequality is asserted: the whole line for Hermite
    /// variants, `x > 0` for Laguerre ones (plain variants follow the
    /// family's support).
    pub fn domain(&self, family: &WeightFamily) -> Domain {
        match self {
            TuranVariant::HermitePair(..) | TuranVariant::HermiteDiag(_) => Domain::Real,
            TuranVariant::LaguerreFirstTwoParam(..) | TuranVariant::LaguerreSecondTwoParam(..) => Domain::PositiveReals,
            TuranVariant::PlainTuran(_) => {
                if family.on_half_line() {
                    Domain::PositiveReals
                } else {
                    Domain::Real
                }
            }
        }
    }
}

fn two_term(lower: &WeightFamily, upper: &WeightFamily, n: &MultiIndex, j: usize, k: usize) -> Result<Poly> {
    let a = type2(upper, &n.raised(k)?)?;
    let b = type2(lower, &n.raised(j)?)?;
    let c = type2(upper, n)?;
    let d = type2(lower, &n.raised(j)?.raised(k)?)?;
    Ok(&(&a * &b) - &(&c * &d))
}

pub fn turan_expression(family: &WeightFamily, n: &MultiIndex, variant: TuranVariant) -> Result<Poly> {
    let (j, k) = variant.directions();
    n.check_direction(j)?;
    n.check_direction(k)?;
    if n.r() != family.r() {
        return Err(Error::InvalidIndex(format!(
            "{n} does not match {} weights",
            family.r()
        )));
    }
    let mismatch = |want: &str| {
        Err(Error::Unsupported(format!(
            "{variant:?} needs a {want} family, got {}",
            family.kind_name()
        )))
    };
    match variant {
        TuranVariant::HermitePair(..) | TuranVariant::HermiteDiag(_) => {
            if !matches!(family, WeightFamily::Hermite { .. }) {
                return mismatch("hermite");
            }
            two_term(family, family, n, j, k)
        }
        TuranVariant::LaguerreFirstTwoParam(..) => {
            if !matches!(family, WeightFamily::LaguerreFirst { .. }) {
                return mismatch("laguerre1");
            }
            two_term(&family.lowered(j)?, family, n, j, k)
        }
        TuranVariant::LaguerreSecondTwoParam(..) => {
            if !matches!(family, WeightFamily::LaguerreSecond { .. }) {
                return mismatch("laguerre2");
            }
            two_term(&family.lowered(j)?, family, n, j, k)
        }
        TuranVariant::PlainTuran(_) => two_term(family, family, n, j, j),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::{int, rat};
    use crate::wronsk::determinants::turanian;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn plain_equals_two_by_two_hankel() {
        let f = WeightFamily::laguerre_first(vec![rat(1, 2), rat(1, 3)]).unwrap();
        let p = turan_expression(&f, &mi(&[1, 1]), TuranVariant::PlainTuran(1)).unwrap();
        let t = turanian(&f, &mi(&[1, 1]), 1, 2).unwrap();
        assert_eq!(p, t);
    }

    #[test]
    fn plain_quintic() {
        let f = WeightFamily::laguerre_first(vec![rat(1, 2), rat(1, 3)]).unwrap();
        let p = turan_expression(&f, &mi(&[1, 1]), TuranVariant::PlainTuran(1)).unwrap();
        assert_eq!(p.to_strings(), ["-10", "185/3", "-7495/72", "647/9", "-119/6", "2"]);
    }

    #[test]
    fn diag_is_symmetric_pair() {
        let f = WeightFamily::hermite(vec![rat(1, 3), rat(2, 5)]).unwrap();
        let a = turan_expression(&f, &mi(&[1, 2]), TuranVariant::HermiteDiag(2)).unwrap();
        let b = turan_expression(&f, &mi(&[1, 2]), TuranVariant::HermitePair(2, 2)).unwrap();
        assert_eq!(a, b);
        let c = turan_expression(&f, &mi(&[1, 2]), TuranVariant::HermitePair(1, 2)).unwrap();
        let d = turan_expression(&f, &mi(&[1, 2]), TuranVariant::HermitePair(2, 1)).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn family_mismatch_and_parameter_errors() {
        let h = WeightFamily::hermite(vec![int(0), int(1)]).unwrap();
        assert!(turan_expression(&h, &mi(&[1, 1]), TuranVariant::LaguerreFirstTwoParam(1, 1)).is_err());
        let l = WeightFamily::laguerre_first(vec![rat(1, 2), rat(-1, 3)]).unwrap();
        assert!(turan_expression(&l, &mi(&[1, 1]), TuranVariant::HermiteDiag(1)).is_err());
        assert!(turan_expression(&l, &mi(&[1, 1]), TuranVariant::LaguerreFirstTwoParam(2, 1)).is_err());
        assert!(turan_expression(&l, &mi(&[1, 1]), TuranVariant::PlainTuran(3)).is_err());
    }
}
