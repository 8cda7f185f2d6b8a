//! Weight systems and their unit-mass moments.
//!
//! Every weight is normalized to total mass one before moments are taken,
//! so all moments stay rational:
//!
//! * multiple Hermite, `w_j = exp(-x^2 + c_j x)` on the real line,
//! * multiple Laguerre of the first kind, `w_j = x^{a_j} exp(-x)` on `(0, inf)`,
//! * multiple Laguerre of the second kind, `w_j = x^a exp(-c_j x)` on `(0, inf)`,
//! * a user-supplied moment oracle.
//!
//! Type II polynomials do not see the normalization. Type I coefficient
//! polynomials are expressed against the normalized weights.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ratcore::rational::{format_rational, int, is_integer, parse_rational, Rational};

/// Supplies the raw moment `int x^k w_j dx` (up to any positive per-weight
/// constant) for a 1-based weight index `j`, or `None` if not available.
pub type MomentOracle = Arc<dyn Fn(usize, usize) -> Option<Rational> + Send + Sync>;

#[derive(Clone)]
pub struct CustomMoments {
    r: usize,
    oracle: MomentOracle,
    /// Kept only so table-backed families can be written back out as JSON.
    table: Option<Vec<Vec<Rational>>>,
}

impl CustomMoments {
    pub fn new(r: usize, oracle: MomentOracle) -> Self {
        CustomMoments { r, oracle, table: None }
    }

    /// `table[j-1][k]` is the `k`-th moment of weight `j`.
    pub fn from_table(table: Vec<Vec<Rational>>) -> Self {
        let r = table.len();
        let t = table.clone();
        CustomMoments {
            r,
            oracle: Arc::new(move |j, k| t.get(j - 1).and_then(|row| row.get(k)).cloned()),
            table: Some(table),
        }
    }

    fn moment(&self, j: usize, k: usize) -> Result<Rational> {
        (self.oracle)(j, k)
            .ok_or_else(|| Error::InvalidFamily(format!("moment oracle has no value for weight {j}, power {k}")))
    }
}

#[derive(Clone)]
pub enum WeightFamily {
    Hermite { c: Vec<Rational> },
    LaguerreFirst { alpha: Vec<Rational> },
    LaguerreSecond { alpha: Rational, c: Vec<Rational> },
    Custom(CustomMoments),
}

fn pairwise_distinct(v: &[Rational]) -> bool {
    v.iter().enumerate().all(|(i, a)| v[i + 1..].iter().all(|b| a != b))
}

impl WeightFamily {
    pub fn hermite(c: Vec<Rational>) -> Result<Self> {
        let f = WeightFamily::Hermite { c };
        f.validate()?;
        Ok(f)
    }

    pub fn laguerre_first(alpha: Vec<Rational>) -> Result<Self> {
        let f = WeightFamily::LaguerreFirst { alpha };
        f.validate()?;
        Ok(f)
    }

    pub fn laguerre_second(alpha: Rational, c: Vec<Rational>) -> Result<Self> {
        let f = WeightFamily::LaguerreSecond { alpha, c };
        f.validate()?;
        Ok(f)
    }

    pub fn custom(moments: CustomMoments) -> Result<Self> {
        let f = WeightFamily::Custom(moments);
        f.validate()?;
        Ok(f)
    }

    /// Number of weights.
    pub fn r(&self) -> usize {
        match self {
            WeightFamily::Hermite { c } => c.len(),
            WeightFamily::LaguerreFirst { alpha } => alpha.len(),
            WeightFamily::LaguerreSecond { c, .. } => c.len(),
            WeightFamily::Custom(m) => m.r,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            WeightFamily::Hermite { .. } => "hermite",
            WeightFamily::LaguerreFirst { .. } => "laguerre1",
            WeightFamily::LaguerreSecond { .. } => "laguerre2",
            WeightFamily::Custom(_) => "moments",
        }
    }

    /// Weights supported on `(0, inf)` rather than the whole line.
    pub fn on_half_line(&self) -> bool {
        matches!(
            self,
            WeightFamily::LaguerreFirst { .. } | WeightFamily::LaguerreSecond { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.r() == 0 {
            return Err(Error::InvalidFamily("at least one weight is required".into()));
        }
        match self {
            WeightFamily::Hermite { c } => {
                if !pairwise_distinct(c) {
                    return Err(Error::InvalidFamily(
                        "Hermite shifts c_j must be pairwise distinct".into(),
                    ));
                }
            }
            WeightFamily::LaguerreFirst { alpha } => {
                if let Some(a) = alpha.iter().find(|a| **a <= int(-1)) {
                    return Err(Error::InvalidFamily(format!(
                        "Laguerre exponent {} must exceed -1",
                        format_rational(a)
                    )));
                }
                for (i, a) in alpha.iter().enumerate() {
                    for b in &alpha[i + 1..] {
                        if is_integer(&(a - b)) {
                            return Err(Error::InvalidFamily(format!(
                                "Laguerre exponents {} and {} differ by an integer",
                                format_rational(a),
                                format_rational(b)
                            )));
                        }
                    }
                }
            }
            WeightFamily::LaguerreSecond { alpha, c } => {
                if *alpha <= int(-1) {
                    return Err(Error::InvalidFamily("Laguerre exponent must exceed -1".into()));
                }
                if c.iter().any(|cj| !cj.is_positive()) {
                    return Err(Error::InvalidFamily("Laguerre rates c_j must be positive".into()));
                }
                if !pairwise_distinct(c) {
                    return Err(Error::InvalidFamily(
                        "Laguerre rates c_j must be pairwise distinct".into(),
                    ));
                }
            }
            WeightFamily::Custom(m) => {
                for j in 1..=m.r {
                    if m.moment(j, 0)?.is_zero() {
                        return Err(Error::InvalidFamily(format!("weight {j} has zero mass")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_weight(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.r() {
            return Err(Error::InvalidIndex(format!(
                "weight index {j} outside 1..={}",
                self.r()
            )));
        }
        Ok(())
    }

    /// Unit-mass moments `nu_{j,0..=k_max}` of weight `j` (1-based).
    pub fn normalized_moments(&self, j: usize, k_max: usize) -> Result<Vec<Rational>> {
        self.check_weight(j)?;
        let mut nu = Vec::with_capacity(k_max + 1);
        nu.push(Rational::one());
        match self {
            WeightFamily::Hermite { c } => {
                // Gaussian with mean c/2, variance 1/2
                let half_c = &c[j - 1] / int(2);
                for k in 1..=k_max {
                    let mut v = &half_c * &nu[k - 1];
                    if k >= 2 {
                        v += &nu[k - 2] * int(k as i64 - 1) / int(2);
                    }
                    nu.push(v);
                }
            }
            WeightFamily::LaguerreFirst { alpha } => {
                let a = &alpha[j - 1];
                for k in 1..=k_max {
                    let v = &nu[k - 1] * (a + int(k as i64));
                    nu.push(v);
                }
            }
            WeightFamily::LaguerreSecond { alpha, c } => {
                let cj = &c[j - 1];
                for k in 1..=k_max {
                    let v = &nu[k - 1] * (alpha + int(k as i64)) / cj;
                    nu.push(v);
                }
            }
            WeightFamily::Custom(m) => {
                let mass = m.moment(j, 0)?;
                if mass.is_zero() {
                    return Err(Error::InvalidFamily(format!("weight {j} has zero mass")));
                }
                for k in 1..=k_max {
                    nu.push(m.moment(j, k)? / &mass);
                }
            }
        }
        Ok(nu)
    }

    /// The family with weight `j`'s parameter lowered as the raising
    /// operator requires: `alpha - e_j` (first kind), `alpha - 1` (second
    /// kind). Hermite families are unchanged.
    pub fn lowered(&self, j: usize) -> Result<WeightFamily> {
        self.check_weight(j)?;
        match self {
            WeightFamily::Hermite { .. } => Ok(self.clone()),
            WeightFamily::LaguerreFirst { alpha } => {
                if !alpha[j - 1].is_positive() {
                    return Err(Error::InvalidFamily(format!(
                        "lowering needs alpha_{j} > 0, got {}",
                        format_rational(&alpha[j - 1])
                    )));
                }
                let mut a = alpha.clone();
                a[j - 1] -= Rational::one();
                WeightFamily::laguerre_first(a)
            }
            WeightFamily::LaguerreSecond { alpha, c } => {
                if !alpha.is_positive() {
                    return Err(Error::InvalidFamily(format!(
                        "lowering needs alpha > 0, got {}",
                        format_rational(alpha)
                    )));
                }
                WeightFamily::laguerre_second(alpha - Rational::one(), c.clone())
            }
            WeightFamily::Custom(_) => Err(Error::Unsupported(
                "parameter lowering is only defined for Hermite and Laguerre families".into(),
            )),
        }
    }
}

/// Unit-mass moments of every weight, `values[j-1][k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    values: Vec<Vec<Rational>>,
}

impl MomentTable {
    pub fn build(family: &WeightFamily, k_max: usize) -> Result<Self> {
        let values = (1..=family.r())
            .map(|j| family.normalized_moments(j, k_max))
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentTable { values })
    }

    /// `nu_{j,k}` with 1-based `j`.
    pub fn get(&self, j: usize, k: usize) -> &Rational {
        &self.values[j - 1][k]
    }

    pub fn k_max(&self) -> usize {
        self.values.first().map_or(0, |v| v.len() - 1)
    }
}

impl fmt::Debug for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match serde_json::to_string(self) {
            Ok(s) => write!(f, "{s}"),
            Err(_) => write!(f, "WeightFamily::Custom(r={})", self.r()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum FamilyJson {
    Hermite { c: Vec<String> },
    Laguerre1 { alpha: Vec<String> },
    Laguerre2 { alpha: String, c: Vec<String> },
    Moments { table: Vec<Vec<String>> },
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn fmt_all(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl TryFrom<FamilyJson> for WeightFamily {
    type Error = Error;
    fn try_from(j: FamilyJson) -> Result<Self> {
        match j {
            FamilyJson::Hermite { c } => WeightFamily::hermite(parse_all(&c)?),
            FamilyJson::Laguerre1 { alpha } => WeightFamily::laguerre_first(parse_all(&alpha)?),
            FamilyJson::Laguerre2 { alpha, c } => {
                WeightFamily::laguerre_second(parse_rational(&alpha)?, parse_all(&c)?)
            }
            FamilyJson::Moments { table } => {
                let t = table.iter().map(|row| parse_all(row)).collect::<Result<Vec<_>>>()?;
                WeightFamily::custom(CustomMoments::from_table(t))
            }
        }
    }
}

impl Serialize for WeightFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = match self {
            WeightFamily::Hermite { c } => FamilyJson::Hermite { c: fmt_all(c) },
            WeightFamily::LaguerreFirst { alpha } => FamilyJson::Laguerre1 { alpha: fmt_all(alpha) },
            WeightFamily::LaguerreSecond { alpha, c } => FamilyJson::Laguerre2 {
                alpha: format_rational(alpha),
                c: fmt_all(c),
            },
            WeightFamily::Custom(m) => match &m.table {
                Some(t) => FamilyJson::Moments {
                    table: t.iter().map(|row| fmt_all(row)).collect(),
                },
                None => {
                    return Err(serde::ser::Error::custom(
                        "oracle-backed moment families have no JSON form",
                    ))
                }
            },
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FamilyJson::deserialize(d)?;
        WeightFamily::try_from(j).map_err(serde::de::Error::custom)
    }
}
