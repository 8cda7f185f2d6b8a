//! Exact real-root counting and isolation via Sturm sequences.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::{int, serde_rational, Rational};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// A point of the extended real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl From<Rational> for Bound {
    fn from(q: Rational) -> Self {
        Bound::Finite(q)
    }
}

/// Open interval `(lo, hi)` holding exactly one real root of the polynomial
/// it was produced for. Neither endpoint is a root, so the square-free part
/// changes sign across it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "serde_rational")]
    pub lo: Rational,
    #[serde(with = "serde_rational")]
    pub hi: Rational,
}

impl RationalInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn overlaps(&self, other: &RationalInterval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        super::rational::to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        super::rational::to_f64(&self.hi)
    }
}

/// Sturm chain of the square-free part of a polynomial, kept as primitive
/// integer polynomials.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    head: Poly,
    chain: Vec<ZPoly>,
    input_square_free: bool,
}

fn chain_of(s: ZPoly) -> Vec<ZPoly> {
    let d = s.derivative();
    let mut chain = vec![s];
    if !d.is_zero() {
        chain.push(d);
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
    }
    chain
}

impl SturmSequence {
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        // the chain of p ends in gcd(p, p'); when that is constant p is
        // already square-free and the chain can be kept as is
        let chain = chain_of(ZPoly::primitive_of(p));
        if chain.last().is_some_and(|g| g.degree() == Some(0)) || chain.len() == 1 {
            return Ok(SturmSequence {
                head: p.monic(),
                chain,
                input_square_free: true,
            });
        }
        let head = p.square_free();
        Ok(SturmSequence {
            chain: chain_of(ZPoly::primitive_of(&head)),
            head,
            input_square_free: false,
        })
    }

    /// Whether the polynomial the chain was built from had no repeated root.
    pub fn input_square_free(&self) -> bool {
        self.input_square_free
    }

    /// The square-free polynomial at the head of the chain.
    pub fn head(&self) -> &Poly {
        &self.head
    }

    fn variations_at(&self, b: &Bound) -> usize {
        let signs = self.chain.iter().map(|q| match b {
            Bound::Finite(x) => q.sign_at(x),
            Bound::PosInf => q.leading_sign(),
            Bound::NegInf => {
                let s = q.leading_sign();
                if q.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        });
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        let a = self.variations_at(lo);
        let b = self.variations_at(hi);
        a.saturating_sub(b)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize> {
    let ordered = match (lo, hi) {
        (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::Finite(a), Bound::Finite(b)) => a < b,
        _ => true,
    };
    if !ordered {
        return Err(Error::InvalidIndex("sturm_count needs lo < hi".into()));
    }
    Ok(SturmSequence::new(p)?.count(lo, hi))
}

pub fn count_real_roots(p: &Poly) -> Result<usize> {
    sturm_count(p, &Bound::NegInf, &Bound::PosInf)
}

/// Strict bound on root magnitudes: `1 + max |a_i / a_n|`.
pub fn cauchy_bound(p: &Poly) -> Rational {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len().saturating_sub(1)]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// Isolating intervals, sorted left to right, one per distinct real root.
pub fn isolate_real_roots(p: &Poly) -> Result<Vec<RationalInterval>> {
    let seq = SturmSequence::new(p)?;
    let b = cauchy_bound(seq.head());
    let mut out = Vec::new();
    let lo = Bound::Finite(-b.clone());
    let total = seq.count(&lo, &Bound::Finite(b.clone()));
    bisect(&seq, -b.clone(), b, total, &mut out);
    Ok(out)
}

fn bisect(seq: &SturmSequence, lo: Rational, hi: Rational, n: usize, out: &mut Vec<RationalInterval>) {
    match n {
        0 => {}
        1 => out.push(RationalInterval { lo, hi }),
        _ => {
            let m = split_point(seq.head(), &lo, &hi);
            let left = seq.count(&Bound::Finite(lo.clone()), &Bound::Finite(m.clone()));
            bisect(seq, lo, m.clone(), left, out);
            bisect(seq, m, hi, n - left, out);
        }
    }
}

/// A point strictly inside `(lo, hi)` that is not a root of `s`, close to
/// the midpoint.
fn split_point(s: &Poly, lo: &Rational, hi: &Rational) -> Rational {
    let s = ZPoly::primitive_of(s);
    let w = hi - lo;
    let mut den = 2i64;
    loop {
        for num in [den / 2, den / 2 - 1, den / 2 + 1] {
            if num <= 0 || num >= den {
                continue;
            }
            let m = lo + &w * Rational::new(num.into(), den.into());
            if s.sign_at(&m) != 0 {
                return m;
            }
        }
        den = den * 2 + 1;
    }
}

/// Shrinks an isolating interval of the square-free polynomial `s` until
/// its width is at most `width`.
pub fn refine(s: &Poly, iv: &RationalInterval, width: &Rational) -> RationalInterval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let s = ZPoly::primitive_of(s);
    let lo_sign = s.sign_at(&lo);
    while &(&hi - &lo) > width {
        let m = (&lo + &hi) / int(2);
        let v = s.sign_at(&m);
        if v == 0 {
            // exact rational root; every other point of (lo, hi) is nonzero
            let d = std::cmp::min(width.clone(), &hi - &lo) / int(4);
            return RationalInterval {
                lo: &m - &d,
                hi: &m + &d,
            };
        }
        if v == lo_sign {
            lo = m;
        } else {
            hi = m;
        }
    }
    RationalInterval { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::rat;

    fn pos_inf() -> Bound {
        Bound::PosInf
    }

    #[test]
    fn counts_over_the_line() {
        assert_eq!(count_real_roots(&Poly::from_ints(&[1, 0, 1])).unwrap(), 0);
        let p = Poly::new(vec![rat(-1, 2), int(0), int(1)]);
        assert_eq!(count_real_roots(&p).unwrap(), 2);
        assert_eq!(count_real_roots(&Poly::constant(int(3))).unwrap(), 0);
        assert!(count_real_roots(&Poly::zero()).is_err());
    }

    #[test]
    fn half_open_convention() {
        // roots at -1, 0, 2
        let p = &(&Poly::linear_root(int(-1)) * &Poly::x()) * &Poly::linear_root(int(2));
        let f = |a: i64, b: i64| sturm_count(&p, &Bound::Finite(int(a)), &Bound::Finite(int(b))).unwrap();
        assert_eq!(f(-1, 2), 2);
        assert_eq!(f(-2, 0), 2);
        assert_eq!(f(0, 1), 0);
        assert_eq!(sturm_count(&p, &Bound::Finite(int(0)), &pos_inf()).unwrap(), 1);
        assert!(sturm_count(&p, &Bound::Finite(int(1)), &Bound::Finite(int(1))).is_err());
    }

    #[test]
    fn multiplicities_collapse() {
        let p = &Poly::linear_root(int(1)).pow(3) * &Poly::linear_root(int(-2)).pow(2);
        assert_eq!(count_real_roots(&p).unwrap(), 2);
    }

    #[test]
    fn isolation_examples() {
        let p = Poly::new(vec![rat(-1, 2), int(0), int(1)]);
        let iv = isolate_real_roots(&p).unwrap();
        assert_eq!(iv.len(), 2);
        assert!(iv[0].hi <= int(0) && iv[1].lo >= int(0));

        let iv = isolate_real_roots(&Poly::from_ints(&[0, 0, 0, 1])).unwrap();
        assert_eq!(iv.len(), 1);
        assert!(iv[0].contains(&int(0)));

        // x^2 - x/2 - 1/2 = (x - 1)(x + 1/2)
        let p = Poly::new(vec![rat(-1, 2), rat(-1, 2), int(1)]);
        let iv = isolate_real_roots(&p).unwrap();
        assert_eq!(iv.len(), 2);
        assert!(iv[0].contains(&rat(-1, 2)));
        assert!(iv[1].contains(&int(1)));
    }

    #[test]
    fn refine_hits_exact_root() {
        let p = Poly::linear_root(int(0));
        let iv = RationalInterval {
            lo: int(-1),
            hi: int(1),
        };
        let r = refine(&p, &iv, &rat(1, 1 << 20));
        assert!(r.contains(&int(0)));
        assert!(r.width() <= rat(1, 1 << 20));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        // Product of linear factors (x - r_i) and irreducible quadratics
        // (x - a)^2 + b^2, so the real-root count is known by construction.
        fn arb_factored() -> impl Strategy<Value = (Poly, usize, usize)> {
            (
                prop::collection::vec((-12i64..=12, 1i64..=4, 1usize..=2), 0..4),
                prop::collection::vec((-6i64..=6, 1i64..=5), 0..3),
            )
                .prop_map(|(lin, quad)| {
                    let mut p = Poly::one();
                    let mut roots: Vec<Rational> = Vec::new();
                    for (n, d, m) in lin {
                        let r = rat(n, d);
                        p = &p * &Poly::linear_root(r.clone()).pow(m);
                        if !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                    let pairs = quad.len();
                    for (a, b) in quad {
                        let q = Poly::new(vec![int(a * a + b * b), int(-2 * a), int(1)]);
                        p = &p * &q;
                    }
                    (p, roots.len(), pairs)
                })
        }

        proptest! {
            #[test]
            fn count_matches_construction((p, real, pairs) in arb_factored()) {
                let n = count_real_roots(&p).unwrap();
                prop_assert_eq!(n, real);
                let deg = p.degree().unwrap();
                prop_assert!(n <= deg);
                let sf = p.square_free();
                let sf_deg = sf.degree().unwrap();
                prop_assert_eq!((sf_deg - n) % 2, 0);
                prop_assert!(pairs == 0 || sf_deg > n);
            }

            #[test]
            fn intervals_are_disjoint_sign_changing((p, real, _) in arb_factored()) {
                let iv = isolate_real_roots(&p).unwrap();
                prop_assert_eq!(iv.len(), real);
                let sf = p.square_free();
                for w in iv.windows(2) {
                    prop_assert!(w[0].hi <= w[1].lo);
                }
                for i in &iv {
                    prop_assert!(i.lo < i.hi);
                    prop_assert_eq!(sf.sign_at(&i.lo) * sf.sign_at(&i.hi), -1);
                    let r = refine(&sf, i, &rat(1, 1 << 16));
                    prop_assert!(r.width() <= rat(1, 1 << 16));
                    prop_assert_eq!(sf.sign_at(&r.lo) * sf.sign_at(&r.hi), -1);
                }
            }
        }
    }
}
