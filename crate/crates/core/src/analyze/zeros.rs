//! Real zero profiles and strict interlacing.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratcore::rational::rat;
use crate::ratcore::sturm::refine;
use crate::ratcore::{isolate_real_roots, Poly, Rational, RationalInterval};

pub fn default_width() -> Rational {
    rat(1, 1 << 20)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroProfile {
    pub count: usize,
    pub simple: bool,
    pub intervals: Vec<RationalInterval>,
}

pub fn real_zero_profile(p: &Poly) -> Result<ZeroProfile> {
    real_zero_profile_with_width(p, &default_width())
}

pub fn real_zero_profile_with_width(p: &Poly, width: &Rational) -> Result<ZeroProfile> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = p.square_free();
    let intervals: Vec<_> = isolate_real_roots(&s)?.iter().map(|iv| refine(&s, iv, width)).collect();
    Ok(ZeroProfile {
        count: intervals.len(),
        simple: p.gcd(&p.derivative()).is_constant(),
        intervals,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InterlacingReport {
    pub ok: bool,
    pub counts: (usize, usize),
    /// Interval around a shared root, or where alternation breaks.
    pub witness: Option<RationalInterval>,
    pub reason: Option<String>,
}

impl InterlacingReport {
    fn fail(counts: (usize, usize), witness: Option<RationalInterval>, reason: &str) -> Self {
        InterlacingReport {
            ok: false,
            counts,
            witness,
            reason: Some(reason.to_string()),
        }
    }
}

/// Strict interlacing of the real zeros of `p` and `q`: after refinement the
/// isolating intervals are disjoint, ownership alternates along the line, and
/// the counts differ by exactly one.
pub fn interlacing_check(p: &Poly, q: &Poly) -> Result<InterlacingReport> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sp = p.square_free();
    let sq = q.square_free();
    let mut ip = isolate_real_roots(&sp)?;
    let mut iq = isolate_real_roots(&sq)?;
    let counts = (ip.len(), iq.len());

    let g = sp.gcd(&sq);
    if !g.is_constant() {
        let shared = isolate_real_roots(&g)?;
        let reason = "the polynomials share a root";
        return Ok(InterlacingReport::fail(counts, shared.into_iter().next(), reason));
    }
    if !p.gcd(&p.derivative()).is_constant() || !q.gcd(&q.derivative()).is_constant() {
        return Ok(InterlacingReport::fail(counts, None, "multiple real or complex roots"));
    }

    // No shared roots, so repeated halving eventually separates everything.
    loop {
        let mut clash = false;
        for a in ip.iter_mut() {
            for b in iq.iter_mut() {
                if a.overlaps(b) {
                    clash = true;
                    *a = refine(&sp, a, &(a.width() / rat(2, 1)));
                    *b = refine(&sq, b, &(b.width() / rat(2, 1)));
                }
            }
        }
        if !clash {
            break;
        }
    }

    let mut all: Vec<(Rational, bool, RationalInterval)> = ip
        .iter()
        .map(|iv| (iv.lo.clone(), true, iv.clone()))
        .chain(iq.iter().map(|iv| (iv.lo.clone(), false, iv.clone())))
        .collect();
    all.sort_by(|a, b| a.0.cmp(&b.0));
    for w in all.windows(2) {
        if w[0].1 == w[1].1 {
            let iv = RationalInterval {
                lo: w[0].2.lo.clone(),
                hi: w[1].2.hi.clone(),
            };
            return Ok(InterlacingReport::fail(
                counts,
                Some(iv),
                "two consecutive roots of the same polynomial",
            ));
        }
    }
    if counts.0.abs_diff(counts.1) != 1 {
        return Ok(InterlacingReport::fail(
            counts,
            None,
            "root counts do not differ by one",
        ));
    }
    Ok(InterlacingReport {
        ok: true,
        counts,
        witness: None,
        reason: None,
    })
}

/// True when `iv` still isolates one simple root of `p` (sign change across).
pub fn isolates_sign_change(p: &Poly, iv: &RationalInterval) -> bool {
    let a = p.sign_at(&iv.lo);
    let b = p.sign_at(&iv.hi);
    a != 0 && b != 0 && a != b && !iv.width().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::int;
    use proptest::prelude::*;

    #[test]
    fn profile_examples() {
        let p = &Poly::linear_root(int(1)).pow(2) * &Poly::linear_root(int(-2));
        let z = real_zero_profile(&p).unwrap();
        assert_eq!(z.count, 2);
        assert!(!z.simple);
        let z = real_zero_profile(&Poly::constant(int(6))).unwrap();
        assert_eq!(z.count, 0);
        assert!(z.simple);
        assert!(real_zero_profile(&Poly::zero()).is_err());
    }

    #[test]
    fn refined_width() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        let z = real_zero_profile(&p).unwrap();
        for iv in &z.intervals {
            assert!(iv.width() <= default_width());
            assert!(isolates_sign_change(&p, iv));
        }
    }

    #[test]
    fn interlacing_examples() {
        let x = Poly::x();
        let q = Poly::from_ints(&[-1, 0, 1]);
        assert!(interlacing_check(&x, &q).unwrap().ok);
        assert!(interlacing_check(&q, &x).unwrap().ok);
        let r = Poly::from_ints(&[-4, 0, 1]);
        assert!(!interlacing_check(&q, &r).unwrap().ok);
        let shared = interlacing_check(&Poly::linear_root(int(1)), &q).unwrap();
        assert!(!shared.ok);
        assert!(shared.witness.unwrap().contains(&int(1)));
    }

    #[test]
    fn close_roots_need_refinement() {
        let a = &Poly::linear_root(rat(1000, 1001)) * &Poly::linear_root(rat(3, 1));
        let b = Poly::linear_root(rat(1001, 1000));
        assert!(interlacing_check(&a, &b).unwrap().ok);
    }

    proptest! {
        #[test]
        fn built_interlacing(mut roots in prop::collection::btree_set(-40i64..40, 3..8)) {
            let v: Vec<i64> = std::mem::take(&mut roots).into_iter().collect();
            let mut p = Poly::one();
            let mut q = Poly::one();
            for (i, r) in v.iter().enumerate() {
                let f = Poly::linear_root(rat(*r, 3));
                if i % 2 == 0 { p = &p * &f } else { q = &q * &f }
            }
            // alternation always holds; counts differ by one only for odd totals
            prop_assert_eq!(interlacing_check(&p, &q).unwrap().ok, v.len() % 2 == 1);
        }
    }
}
