//! Matrices of polynomials and fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidIndex(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    /// The matrix with the given (0-based) rows and columns removed.
    pub fn delete(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !cols.contains(j)).collect();
        PolyMatrix::from_fn(keep_r.len(), keep_c.len(), |i, j| {
            self.get(keep_r[i], keep_c[j]).clone()
        })
    }

    /// Exact determinant by Bareiss elimination over `Q[x]`.
    ///
    /// Every intermediate entry is a minor of the input, so the division by
    /// the previous pivot is exact. The empty matrix has determinant one.
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut a: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(Poly::zero());
                };
                a.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = t.exact_div(&prev)?;
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }
}

/// Solves the square rational system `a x = b` by fraction-free elimination.
///
/// Rows are first scaled to integers; the forward pass is Bareiss
/// elimination on the integer augmented matrix, followed by exact rational
/// back-substitution. Returns `None` when the matrix is singular.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let lcm = row
                .iter()
                .chain(std::iter::once(rhs))
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .chain(std::iter::once(rhs))
                .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        // smallest nonzero pivot keeps the integers from growing needlessly
        let p = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by(|&i, &j| m[i][k].abs().cmp(&m[j][k].abs()))?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::rational::{int, rat};
    use proptest::prelude::*;

    /// Cofactor expansion along the first row. Independent of `det`.
    fn cofactor_det(m: &PolyMatrix) -> Poly {
        let n = m.rows();
        if n == 0 {
            return Poly::one();
        }
        let mut acc = Poly::zero();
        for j in 0..n {
            let minor = m.delete(&[0], &[j]);
            let term = m.get(0, j) * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn identity_and_triangular() {
        let id = PolyMatrix::from_fn(3, 3, |i, j| if i == j { Poly::one() } else { Poly::zero() });
        assert_eq!(id.det().unwrap(), Poly::one());
        let m = PolyMatrix::new(2, 2, vec![Poly::x(), Poly::one(), Poly::zero(), Poly::x()]).unwrap();
        assert_eq!(m.det().unwrap(), Poly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn non_square_rejected() {
        let m = PolyMatrix::from_fn(2, 3, |_, _| Poly::one());
        assert!(matches!(m.det(), Err(Error::NotSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = PolyMatrix::new(2, 2, vec![Poly::zero(), Poly::one(), Poly::x(), Poly::one()]).unwrap();
        assert_eq!(m.det().unwrap(), Poly::from_ints(&[0, -1]));
    }

    #[test]
    fn empty_matrix() {
        let m = PolyMatrix::from_fn(0, 0, |_, _| Poly::zero());
        assert_eq!(m.det().unwrap(), Poly::one());
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![int(1), int(0)], vec![int(0), rat(1, 2)]];
        let b = vec![int(0), int(1)];
        assert_eq!(solve_rational(&a, &b).unwrap(), vec![int(0), int(2)]);
        let sing = vec![vec![int(1), int(2)], vec![rat(1, 2), int(1)]];
        assert!(solve_rational(&sing, &b).is_none());
    }

    fn arb_entry() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-5i64..=5, 1i64..=3), 0..=3)
            .prop_map(|v| Poly::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = PolyMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(arb_entry(), n * n).prop_map(move |e| PolyMatrix::new(n, n, e).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_matches_cofactor(m in arb_matrix(5)) {
            prop_assert_eq!(m.det().unwrap(), cofactor_det(&m));
        }

        #[test]
        fn solve_satisfies_system(
            entries in prop::collection::vec((-9i64..=9, 1i64..=4), 16),
            rhs in prop::collection::vec((-9i64..=9, 1i64..=4), 4),
        ) {
            let a: Vec<Vec<Rational>> = entries
                .chunks(4)
                .map(|r| r.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect();
            let b: Vec<Rational> = rhs.iter().map(|&(n, d)| rat(n, d)).collect();
            if let Some(x) = solve_rational(&a, &b) {
                for (row, bi) in a.iter().zip(&b) {
                    let lhs: Rational = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                    prop_assert_eq!(&lhs, bi);
                }
            } else {
                let m = PolyMatrix::from_fn(4, 4, |i, j| Poly::constant(a[i][j].clone()));
                prop_assert!(m.det().unwrap().is_zero());
            }
        }
    }
}
