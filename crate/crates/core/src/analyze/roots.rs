//! All complex roots of an exact polynomial in double precision.
//!
//! Aberth-Ehrlich simultaneous iteration on the coefficient vector scaled by
//! its largest magnitude, then Newton polishing. Real roots are snapped to
//! the axis using the exact Sturm count, and the remaining roots are paired
//! into exact conjugates.

use std::io::{Read, Write};

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratcore::sturm::{Bound, SturmSequence};
use crate::ratcore::Poly;

pub const MAX_SWEEPS: usize = 2000;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    /// `(re, im)` pairs, sorted by real then imaginary part.
    pub roots: Vec<(f64, f64)>,
    /// Relative residual `|p(z)| / sum |a_k| |z|^k` of each root.
    pub residuals: Vec<f64>,
    /// Largest coefficient magnitude divided out before iterating.
    pub residual_scale: f64,
    pub degree: usize,
}

impl RootSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }

    pub fn min_abs_im(&self) -> Option<f64> {
        self.roots.iter().map(|r| r.1.abs()).reduce(f64::min)
    }

    pub fn complex(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots.iter().map(|&(re, im)| Complex64::new(re, im))
    }
}

fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut d = Complex64::zero();
    for &a in c.iter().rev() {
        d = d * z + p;
        p = p * z + a;
    }
    (p, d)
}

fn relative_residual(c: &[f64], z: Complex64) -> f64 {
    let (p, _) = eval_with_derivative(c, z);
    let r = z.norm();
    let mut bound = 0.0;
    for a in c.iter().rev() {
        bound = bound * r + a.abs();
    }
    if bound == 0.0 {
        0.0
    } else {
        p.norm() / bound
    }
}

/// Initial guesses on a circle whose radius is the geometric mean of the
/// root moduli, rotated off the real axis.
fn initial_guesses(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let ratio = (c[0].abs() / c[n].abs()).max(f64::MIN_POSITIVE);
    let radius = ratio.powf(1.0 / n as f64).clamp(1e-8, 1e8);
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

fn aberth(c: &[f64], tol: f64) -> std::result::Result<Vec<Complex64>, (usize, Vec<Complex64>)> {
    let n = c.len() - 1;
    let mut z = initial_guesses(c);
    let mut done = vec![false; n];
    for sweep in 0..MAX_SWEEPS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, d) = eval_with_derivative(c, z[i]);
            if p.is_zero() {
                done[i] = true;
                continue;
            }
            let ratio = p / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
        if sweep % 16 == 15 && z.iter().all(|&zi| relative_residual(c, zi) <= tol * 1e-4) {
            return Ok(z);
        }
    }
    if z.iter().all(|&zi| relative_residual(c, zi) <= tol) {
        return Ok(z);
    }
    Err((MAX_SWEEPS, z))
}

fn polish(c: &[f64], z: Complex64) -> Complex64 {
    let mut best = z;
    let mut best_r = relative_residual(c, z);
    let mut cur = z;
    for _ in 0..5 {
        let (p, d) = eval_with_derivative(c, cur);
        if d.is_zero() {
            break;
        }
        cur -= p / d;
        let r = relative_residual(c, cur);
        if r < best_r {
            best = cur;
            best_r = r;
        } else {
            break;
        }
    }
    best
}

/// Pushes the `k` roots nearest the axis onto it, and pairs the rest into
/// conjugates by averaging each upper-half root with its nearest mirror.
fn symmetrize(c: &[f64], mut z: Vec<Complex64>, k: usize) -> Vec<Complex64> {
    z.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    let mut out: Vec<Complex64> = Vec::with_capacity(z.len());
    for r in z.iter().take(k) {
        let real = polish(c, Complex64::new(r.re, 0.0));
        out.push(Complex64::new(real.re, 0.0));
    }
    let rest = &z[k..];
    let mut upper: Vec<Complex64> = rest.iter().filter(|r| r.im > 0.0).cloned().collect();
    let mut lower: Vec<Complex64> = rest.iter().filter(|r| r.im <= 0.0).cloned().collect();
    if upper.len() != lower.len() {
        out.extend_from_slice(rest);
        return out;
    }
    upper.sort_by(|a, b| a.re.total_cmp(&b.re));
    for u in upper {
        let (idx, _) = lower
            .iter()
            .enumerate()
            .map(|(i, l)| (i, (u - l.conj()).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("equal halves");
        let l = lower.swap_remove(idx);
        let m = (u + l.conj()) / 2.0;
        let m = if relative_residual(c, m) <= relative_residual(c, u) {
            m
        } else {
            u
        };
        out.push(m);
        out.push(m.conj());
    }
    out
}

/// All `deg p` complex roots. Roots at the origin are split off exactly.
pub fn complex_roots(p: &Poly, tol: f64) -> Result<RootSet> {
    let degree = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::InvalidIndex("constant polynomials have no roots".into())),
        Some(d) => d,
    };
    let (scaled, scale) = p.to_scaled_f64()?;
    let zeros_at_origin = p.coeffs().iter().take_while(|a| a.is_zero()).count();
    let c = &scaled[zeros_at_origin..];
    if c.last() == Some(&0.0) {
        return Err(Error::Numerical("leading coefficient underflows after scaling".into()));
    }
    let mut roots = vec![Complex64::zero(); zeros_at_origin];
    if c.len() > 1 {
        let found = aberth(c, tol).map_err(|(iterations, partial)| Error::NoConvergence {
            iterations,
            partial: partial.iter().map(|z| (z.re, z.im)).collect(),
        })?;
        let polished: Vec<Complex64> = found.into_iter().map(|z| polish(c, z)).collect();
        let reduced = Poly::new(p.coeffs()[zeros_at_origin..].to_vec());
        // Snapping is only safe when every real root is simple.
        let seq = SturmSequence::new(&reduced)?;
        let k = if seq.input_square_free() {
            seq.count(&Bound::NegInf, &Bound::PosInf)
        } else {
            0
        };
        roots.extend(symmetrize(c, polished, k));
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let residuals: Vec<f64> = roots.iter().map(|&z| relative_residual(&scaled, z)).collect();
    if let Some(bad) = residuals.iter().find(|r| r.is_nan() || **r > tol) {
        return Err(Error::Numerical(format!(
            "polished residual {bad:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(RootSet {
        roots: roots.iter().map(|z| (z.re, z.im)).collect(),
        residuals,
        residual_scale: scale,
        degree,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRow {
    pub re: f64,
    pub im: f64,
    pub series: String,
}

/// Writes `re,im,series` rows with 17 significant digits.
pub fn write_roots_csv<W: Write>(out: W, series: &[(String, RootSet)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["re", "im", "series"]).map_err(io)?;
    for (label, set) in series {
        for (re, im) in &set.roots {
            w.write_record([format!("{re:.16e}"), format!("{im:.16e}"), label.clone()])
                .map_err(io)?;
        }
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn read_roots_csv<R: Read>(input: R) -> Result<Vec<RootRow>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(|e| Error::Io(e.to_string()))?.clone();
    if headers.iter().ne(["re", "im", "series"]) {
        return Err(Error::Io(format!("unexpected CSV header {headers:?}")));
    }
    r.deserialize()
        .map(|row| row.map_err(|e| Error::Io(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::{int, rat};
    use proptest::prelude::*;

    fn close(a: (f64, f64), b: (f64, f64), eps: f64) -> bool {
        (a.0 - b.0).hypot(a.1 - b.1) <= eps
    }

    #[test]
    fn plus_minus_i() {
        let rs = complex_roots(&Poly::from_ints(&[1, 0, 1]), DEFAULT_TOL).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!(close(rs.roots[0], (0.0, -1.0), 1e-14));
        assert!(close(rs.roots[1], (0.0, 1.0), 1e-14));
    }

    #[test]
    fn cube_roots_of_unity() {
        let rs = complex_roots(&Poly::from_ints(&[-1, 0, 0, 1]), DEFAULT_TOL).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let expect = [(-0.5, -h), (-0.5, h), (1.0, 0.0)];
        for (got, want) in rs.roots.iter().zip(expect) {
            assert!(close(*got, want, 1e-12), "{got:?} vs {want:?}");
        }
        assert_eq!(rs.roots[2].1, 0.0);
    }

    #[test]
    fn zero_roots_and_errors() {
        let rs = complex_roots(&Poly::from_ints(&[0, 0, -4, 1]), DEFAULT_TOL).unwrap();
        assert_eq!(rs.roots, vec![(0.0, 0.0), (0.0, 0.0), (4.0, 0.0)]);
        assert!(complex_roots(&Poly::constant(int(3)), DEFAULT_TOL).is_err());
        assert!(complex_roots(&Poly::zero(), DEFAULT_TOL).is_err());
    }

    #[test]
    fn multiple_root_stays_within_backward_error() {
        let p = Poly::linear_root(rat(1, 3)).pow(3);
        let rs = complex_roots(&p, DEFAULT_TOL).unwrap();
        assert_eq!(rs.degree, 3);
        for r in &rs.roots {
            assert!(close(*r, (1.0 / 3.0, 0.0), 1e-4));
        }
    }

    #[test]
    fn csv_round_trip() {
        let rs = complex_roots(&Poly::from_ints(&[3, -1, 0, 7]), DEFAULT_TOL).unwrap();
        let mut buf = Vec::new();
        write_roots_csv(&mut buf, &[("l=2".into(), rs.clone())]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("re,im,series\n"));
        let rows = read_roots_csv(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), 3);
        for (row, root) in rows.iter().zip(&rs.roots) {
            assert_eq!((row.re, row.im), *root);
            assert_eq!(row.series, "l=2");
        }
        let mut empty = Vec::new();
        write_roots_csv(&mut empty, &[]).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap(), "re,im,series\n");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn known_factorizations(real in prop::collection::btree_set(-20i64..20, 0..5),
                                pairs in prop::collection::btree_set((-10i64..10, 1i64..10), 0..4)) {
            prop_assume!(!real.is_empty() || !pairs.is_empty());
            let mut p = Poly::one();
            for r in &real {
                p = &p * &Poly::linear_root(rat(*r, 4));
            }
            for (a, b) in &pairs {
                // (x - a/3)^2 + (b/3)^2
                let q = Poly::new(vec![rat(a * a + b * b, 9), rat(-2 * a, 3), int(1)]);
                p = &p * &q;
            }
            let rs = complex_roots(&p, DEFAULT_TOL).unwrap();
            prop_assert_eq!(rs.roots.len(), p.degree().unwrap());
            let mut conj: Vec<(f64, f64)> = rs.roots.iter().map(|&(a, b)| (a, -b)).collect();
            conj.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
            for (x, y) in rs.roots.iter().zip(&conj) {
                prop_assert!(close(*x, *y, 1e-6));
            }
        }
    }
}
