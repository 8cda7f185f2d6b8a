//! Exact positivity certificates on the line or the open half-line.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratcore::poly::sign;
use crate::ratcore::rational::{int, rat, serde_rational};
use crate::ratcore::sturm::{refine, SturmSequence};
use crate::ratcore::{isolate_real_roots, Bound, Poly, Rational, RationalInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// The whole real line.
    Real,
    /// The open half-line `x > 0`.
    PositiveReals,
}

impl Domain {
    fn lower(&self) -> Bound {
        match self {
            Domain::Real => Bound::NegInf,
            Domain::PositiveReals => Bound::Finite(Rational::zero()),
        }
    }

    fn sample(&self) -> Rational {
        match self {
            Domain::Real => Rational::zero(),
            Domain::PositiveReals => int(1),
        }
    }
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::Real => write!(f, "R"),
            Domain::PositiveReals => write!(f, "(0,inf)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityCertificate {
    pub domain: Domain,
    pub real_root_count_in_domain: usize,
    #[serde(with = "serde_rational")]
    pub sample_point: Rational,
    pub sample_sign: i32,
    pub leading_sign: i32,
    /// Sign of `p(0)` on the half-line, reported but not part of the claim.
    pub sign_at_zero: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// A rational point of the domain with `p(x) <= 0`.
    NonPositiveAt {
        #[serde(with = "serde_rational")]
        x: Rational,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    /// An irrational root of even multiplicity: `p` touches zero inside the
    /// interval without changing sign, so no rational point has `p <= 0`.
    TouchesZeroIn { interval: RationalInterval },
}

pub fn certify_positive(p: &Poly, domain: Domain) -> Result<std::result::Result<PositivityCertificate, Refutation>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let seq = SturmSequence::new(p)?;
    let count = seq.count(&domain.lower(), &Bound::PosInf);
    let sample_point = domain.sample();
    let sample_value = p.eval(&sample_point);
    let leading_sign = sign(&p.leading());
    if count == 0 {
        if sample_value.is_positive() {
            return Ok(Ok(PositivityCertificate {
                domain,
                real_root_count_in_domain: 0,
                sample_point,
                sample_sign: 1,
                leading_sign,
                sign_at_zero: match domain {
                    Domain::Real => None,
                    Domain::PositiveReals => Some(sign(&p.coeff(0))),
                },
            }));
        }
        return Ok(Err(Refutation::NonPositiveAt {
            x: sample_point,
            value: sample_value,
        }));
    }
    if !sample_value.is_positive() {
        return Ok(Err(Refutation::NonPositiveAt {
            x: sample_point,
            value: sample_value,
        }));
    }
    Ok(Err(find_witness(p, seq.head(), domain)))
}

/// Isolating intervals of the square-free part `s` that lie in the domain.
pub(crate) fn intervals_in_domain(s: &Poly, domain: Domain) -> Result<Vec<RationalInterval>> {
    let all = isolate_real_roots(s)?;
    if domain == Domain::Real {
        return Ok(all);
    }
    let zero = Rational::zero();
    let zero_is_root = s.eval(&zero).is_zero();
    let mut out = Vec::new();
    for iv in all {
        if iv.hi <= zero {
            continue;
        }
        if iv.lo >= zero {
            out.push(iv);
        } else if !zero_is_root {
            // lo < 0 < hi with 0 not a root: the root lies on one side
            if s.sign_at(&zero) != s.sign_at(&iv.hi) {
                out.push(RationalInterval {
                    lo: zero.clone(),
                    hi: iv.hi,
                });
            }
        }
    }
    Ok(out)
}

/// On the half-line, bisects until the left endpoint is strictly positive
/// so that both endpoints are admissible witnesses.
fn away_from_zero(s: &Poly, mut iv: RationalInterval, domain: Domain) -> RationalInterval {
    while domain == Domain::PositiveReals && !iv.lo.is_positive() {
        let half = iv.width() / int(2);
        iv = refine(s, &iv, &half);
    }
    iv
}

/// The rational with the smallest denominator in `[lo, hi]`, by continued
/// fractions. A rational root `a/b` is found once the width is below `1/b^2`.
fn simplest_rational(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + int(1);
    if &next <= hi {
        return next;
    }
    let inner = simplest_rational(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

fn find_witness(p: &Poly, s: &Poly, domain: Domain) -> Refutation {
    let ivs: Vec<RationalInterval> = intervals_in_domain(s, domain)
        .expect("nonzero square-free part")
        .into_iter()
        .map(|iv| away_from_zero(s, iv, domain))
        .collect();
    for iv in &ivs {
        for x in [&iv.lo, &iv.hi] {
            let v = p.eval(x);
            if !v.is_positive() {
                return Refutation::NonPositiveAt { x: x.clone(), value: v };
            }
        }
    }
    // p is positive around every root: even multiplicities only. A rational
    // root still gives an exact witness.
    for iv in &ivs {
        let fine = refine(s, iv, &rat(1, 1 << 40));
        let m = simplest_rational(&fine.lo, &fine.hi);
        if p.eval(&m).is_zero() {
            return Refutation::NonPositiveAt {
                x: m,
                value: Rational::zero(),
            };
        }
    }
    Refutation::TouchesZeroIn {
        interval: ivs[0].clone(),
    }
}
