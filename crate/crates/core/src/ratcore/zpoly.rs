//! Integer-coefficient polynomials for remainder sequences.
//!
//! Euclid over the rationals lets coefficient sizes explode on high-degree
//! inputs. Pseudo-remainders with the content divided out after each step
//! stay at subresultant size, and every rescaling here is by a positive
//! constant so Sturm sign patterns survive.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::Rational;

/// Lowest power first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    /// Positive multiple of `p` with coprime integer coefficients.
    pub fn primitive_of(p: &Poly) -> ZPoly {
        let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
        ZPoly(ints).primitive()
    }

    fn primitive(mut self) -> ZPoly {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        let g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.0 {
                *c /= &g;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading_sign(&self) -> i32 {
        self.0.last().map_or(0, |c| if c.is_positive() { 1 } else { -1 })
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.0.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
        .primitive()
    }

    /// Primitive positive multiple of the remainder of `self` by `d`.
    pub fn rem(&self, d: &ZPoly) -> ZPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.0.last().unwrap();
        let mut r = self.0.clone();
        // keep the multiplier positive by scaling with |lc| and fixing signs
        let (lc_abs, flip) = (lc.abs(), lc.is_negative());
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let top = r.pop().unwrap();
            let top = if flip { -top } else { top };
            for c in r.iter_mut() {
                *c *= &lc_abs;
            }
            for (i, dc) in d.0[..dd].iter().enumerate() {
                r[k + i] -= &top * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        ZPoly(r).primitive()
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.leading_sign() < 0 {
            -a
        } else {
            a
        }
    }

    /// Sign at a rational point, by integer Horner on the homogenized form.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // q > 0, so the q^deg factor does not change the sign
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }
}

impl std::ops::Neg for ZPoly {
    type Output = ZPoly;

    fn neg(mut self) -> ZPoly {
        for c in &mut self.0 {
            *c = -&*c;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::{int, rat};

    #[test]
    fn rem_is_positive_multiple() {
        let a = Poly::new(vec![rat(1, 2), int(-3), rat(2, 3), int(5)]);
        let b = Poly::new(vec![int(1), rat(-7, 4), int(-3)]);
        let exact = a.rem(&b).unwrap();
        let z = ZPoly::primitive_of(&a).rem(&ZPoly::primitive_of(&b)).to_poly();
        let ratio = z.leading() / exact.leading();
        assert!(ratio > int(0));
        assert_eq!(exact.scale(&ratio), z);
    }

    #[test]
    fn gcd_and_sign() {
        let f = Poly::new(vec![int(-1), int(1)]);
        let g = Poly::new(vec![int(2), int(0), int(3)]);
        let a = &(&f * &f) * &g;
        let d = ZPoly::primitive_of(&a).gcd(&ZPoly::primitive_of(&a.derivative()));
        assert_eq!(d.to_poly(), f);
        let z = ZPoly::primitive_of(&a);
        for x in [rat(-3, 2), rat(1, 3), int(1), rat(7, 5)] {
            assert_eq!(z.sign_at(&x), a.sign_at(&x));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
            prop::collection::vec((-30i64..30, 1i64..8), 1..=max_deg + 1)
                .prop_map(|v| Poly::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
        }

        proptest! {
            #[test]
            fn matches_rational_arithmetic(a in arb_poly(7), b in arb_poly(4), x in (-40i64..40, 1i64..9)) {
                prop_assume!(!b.is_zero());
                let (za, zb) = (ZPoly::primitive_of(&a), ZPoly::primitive_of(&b));
                let exact = a.rem(&b).unwrap();
                let z = za.rem(&zb).to_poly();
                prop_assert_eq!(exact.is_zero(), z.is_zero());
                if !exact.is_zero() {
                    let ratio = z.leading() / exact.leading();
                    prop_assert!(ratio > int(0));
                    prop_assert_eq!(exact.scale(&ratio), z);
                }
                let x = rat(x.0, x.1);
                prop_assert_eq!(za.sign_at(&x), a.sign_at(&x));
                prop_assert_eq!(za.gcd(&zb).to_poly().monic(), {
                    let (mut p, mut q) = (a.monic(), b.monic());
                    while !q.is_zero() {
                        let r = p.rem(&q).unwrap().monic();
                        p = q;
                        q = r;
                    }
                    p
                });
            }
        }
    }
}
