//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, int, parse_rational, to_f64, Rational};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Coefficients are stored lowest power first with no trailing zeros; the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Poly::new(coeffs)
    }

    /// `x - a`
    pub fn linear_root(a: Rational) -> Self {
        Poly::new(vec![-a, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Poly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / int(k as i64 + 1));
        }
        Poly::new(coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        sign(&self.eval(x))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Fails only when dividing by zero.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidIndex("division by the zero polynomial".into()))?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Numerical("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        ZPoly::primitive_of(self)
            .gcd(&ZPoly::primitive_of(other))
            .to_poly()
            .monic()
    }

    /// `p / gcd(p, p')`, made monic. Each distinct root appears once.
    pub fn square_free(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.monic();
        }
        self.exact_div(&g).expect("gcd divides p").monic()
    }

    /// Largest coefficient magnitude; zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// Coefficients divided by the largest magnitude and rounded to doubles.
    /// Returns the doubles together with the scale that was divided out.
    pub fn to_scaled_f64(&self) -> Result<(Vec<f64>, f64)> {
        if self.is_zero() {
            return Ok((Vec::new(), 1.0));
        }
        let m = self.max_abs_coeff();
        let coeffs: Vec<f64> = self.coeffs.iter().map(|c| to_f64(&(c / &m))).collect();
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Numerical("coefficient overflow after scaling".into()));
        }
        Ok((coeffs, to_f64(&m)))
    }

    /// Evaluates `p / s` at a complex point, where `s` is the largest
    /// coefficient magnitude. Returns the value and `s` (as a double, which
    /// may itself be infinite for enormous coefficients).
    pub fn eval_complex(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let (coeffs, s) = self.to_scaled_f64()?;
        let v = horner_c(&coeffs, z);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Numerical("overflow evaluating scaled polynomial".into()));
        }
        Ok((v, s))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Poly> {
        let coeffs = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }
}

pub(crate) fn horner_c(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.to_strings())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&a))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show_coeff { "*" } else { "" }, k)?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        Poly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::rat;

    fn quintic() -> Poly {
        Poly::new(vec![
            int(-10),
            rat(185, 3),
            rat(-7495, 72),
            rat(647, 9),
            rat(-119, 6),
            int(2),
        ])
    }

    #[test]
    fn derivative_examples() {
        let p = Poly::new(vec![rat(-1, 2), int(0), int(1)]);
        assert_eq!(p.derivative(), Poly::from_ints(&[0, 2]));
        assert_eq!(Poly::constant(int(5)).derivative(), Poly::zero());
        let head = Poly::new(vec![int(0), int(0), int(0), int(0), rat(-119, 6), int(2)]);
        let expect = Poly::new(vec![int(0), int(0), int(0), rat(-238, 3), int(10)]);
        assert_eq!(head.derivative(), expect);
    }

    #[test]
    fn eval_examples() {
        let p = Poly::new(vec![rat(-1, 2), int(0), int(1)]);
        assert_eq!(p.eval(&int(0)), rat(-1, 2));
        assert_eq!(p.eval(&int(1)), rat(1, 2));
        // 2 - 119/6 + 647/9 - 7495/72 + 185/3 - 10 over the common
        // denominator 72: (144 - 1428 + 5176 - 7495 + 4440 - 720) / 72
        assert_eq!(rat(144 - 1428 + 5176 - 7495 + 4440 - 720, 72), rat(13, 8));
        assert_eq!(quintic().eval(&int(1)), rat(13, 8));
    }

    #[test]
    fn complex_eval_examples() {
        let (v, s) = Poly::from_ints(&[0, 0, 1])
            .eval_complex(Complex64::new(0.0, 1.0))
            .unwrap();
        assert_eq!(s, 1.0);
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let (v, s) = Poly::new(vec![rat(-1, 2), int(0), int(1)])
            .eval_complex(Complex64::new(0.0, 0.0))
            .unwrap();
        assert!((v.re * s + 0.5).abs() < 1e-15);
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2)
        let p = &Poly::linear_root(int(1)).pow(2) * &Poly::linear_root(int(-2));
        let g = p.gcd(&p.derivative());
        assert_eq!(g, Poly::linear_root(int(1)));
        assert_eq!(
            p.square_free(),
            &Poly::linear_root(int(1)) * &Poly::linear_root(int(-2))
        );
        let (q, r) = p.div_rem(&Poly::linear_root(int(3))).unwrap();
        assert_eq!(&(&q * &Poly::linear_root(int(3))) + &r, p);
        assert!(p.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn no_trailing_zeros() {
        let p = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        let q = &Poly::from_ints(&[0, 0, 1]) - &Poly::from_ints(&[0, 0, 1]);
        assert!(q.is_zero());
        assert_eq!(q.degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(
            Poly::new(vec![rat(-1, 2), rat(-1, 2), int(1)]).to_string(),
            "x^2 - 1/2*x - 1/2"
        );
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn json_roundtrip() {
        let s = serde_json::to_string(&quintic()).unwrap();
        assert_eq!(s, r#"["-10","185/3","-7495/72","647/9","-119/6","2"]"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, quintic());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = Poly> {
            prop::collection::vec((-20i64..20, 1i64..6), 0..8)
                .prop_map(|v| Poly::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
        }

        proptest! {
            #[test]
            fn antiderivative_of_derivative(p in arb_poly()) {
                let back = p.derivative().integral();
                let expect = &p - &Poly::constant(p.coeff(0));
                prop_assert_eq!(back, expect);
            }

            #[test]
            fn div_rem_reconstructs(p in arb_poly(), d in arb_poly()) {
                prop_assume!(!d.is_zero());
                let (q, r) = p.div_rem(&d).unwrap();
                prop_assert_eq!(&(&q * &d) + &r, p);
                prop_assert!(r.is_zero() || r.degree() < d.degree());
            }
        }
    }
}
