//! Sylvester's two-row/two-column determinant identity.
//!
//! For a square `A` and 1-based rows `m1 > m2`, columns `n1 > n2`:
//!
//! `det A * det A[m1,m2; n1,n2] = det A[m1;n1] det A[m2;n2] - det A[m1;n2] det A[m2;n1]`
//!
//! where `A[...; ...]` deletes the listed rows and columns. The 0x0
//! determinant is 1.

use crate::error::{Error, Result};
use crate::mop::{PathSpec, WeightFamily};
use crate::ratcore::{Poly, PolyMatrix};

use super::determinants::{wronskian_matrix, PolyCache};

pub fn sylvester_check(m: &PolyMatrix, m1: usize, m2: usize, n1: usize, n2: usize) -> Result<bool> {
    let size = m.rows();
    if m.cols() != size {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let in_range = |i: usize| (1..=size).contains(&i);
    if !(in_range(m1) && in_range(m2) && in_range(n1) && in_range(n2)) || m1 <= m2 || n1 <= n2 {
        return Err(Error::InvalidIndex(format!(
            "need {size} >= m1 > m2 >= 1 and {size} >= n1 > n2 >= 1, got ({m1},{m2};{n1},{n2})"
        )));
    }
    let (r1, r2, c1, c2) = (m1 - 1, m2 - 1, n1 - 1, n2 - 1);
    let lhs = &m.det()? * &m.delete(&[r1, r2], &[c1, c2]).det()?;
    let a11 = m.delete(&[r1], &[c1]).det()?;
    let a12 = m.delete(&[r1], &[c2]).det()?;
    let a21 = m.delete(&[r2], &[c1]).det()?;
    let a22 = m.delete(&[r2], &[c2]).det()?;
    let rhs = &(&a11 * &a22) - &(&a12 * &a21);
    Ok(lhs == rhs)
}

/// The configuration used for interlacing: with `A` the Wronskian matrix of
/// a path `n_0, ..., n_l` (length `l+1`) and `(m1,m2,n1,n2) = (l+1, l, l+1, 1)`,
/// checks both the raw identity and its Wronskian reading
///
/// `W(n_0..n_l) W(n_1..n_{l-1}) = W(n_0..n_{l-1}) W'(n_1..n_l) - W'(n_0..n_{l-1}) W(n_1..n_l)`.
pub fn wronskian_sylvester_check(family: &WeightFamily, path: &PathSpec) -> Result<bool> {
    let total = path.len();
    if total < 2 {
        return Err(Error::InvalidIndex("need a path of length at least 2".into()));
    }
    let l = total - 1;
    let mut cache = PolyCache::new(family);
    let polys = cache.path_polys(path)?;
    let a = wronskian_matrix(&polys);
    if !sylvester_check(&a, l + 1, l, l + 1, 1)? {
        return Ok(false);
    }
    let w_full = a.det()?;
    let w_inner = if l >= 2 {
        super::determinants::wronskian_of(&polys[1..l])?
    } else {
        Poly::one()
    };
    let w_first = super::determinants::wronskian_of(&polys[..l])?;
    let w_last = super::determinants::wronskian_of(&polys[1..])?;
    let lhs = &w_full * &w_inner;
    let rhs = &(&w_first * &w_last.derivative()) - &(&w_first.derivative() * &w_last);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mop::MultiIndex;
    use crate::ratcore::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn two_by_two_uses_empty_minor() {
        let m = PolyMatrix::new(
            2,
            2,
            vec![
                Poly::x(),
                Poly::one(),
                Poly::from_ints(&[3, 1]),
                Poly::from_ints(&[0, 0, 2]),
            ],
        )
        .unwrap();
        assert!(sylvester_check(&m, 2, 1, 2, 1).unwrap());
    }

    #[test]
    fn invalid_indices() {
        let m = PolyMatrix::from_fn(3, 3, |i, j| Poly::constant(int((i * 3 + j) as i64)));
        assert!(sylvester_check(&m, 2, 2, 3, 1).is_err());
        assert!(sylvester_check(&m, 3, 1, 1, 1).is_err());
        assert!(sylvester_check(&m, 4, 1, 3, 1).is_err());
        assert!(sylvester_check(&m, 3, 0, 3, 1).is_err());
        let r = PolyMatrix::from_fn(2, 3, |_, _| Poly::one());
        assert!(sylvester_check(&r, 2, 1, 2, 1).is_err());
    }

    #[test]
    fn wronskian_configuration() {
        let f = WeightFamily::hermite(vec![rat(1, 3), rat(2, 5)]).unwrap();
        let start = MultiIndex::new(vec![1, 1]).unwrap();
        for len in 2..=5 {
            for p in PathSpec::enumerate(&start, len) {
                assert!(wronskian_sylvester_check(&f, &p).unwrap(), "{p}");
            }
        }
    }

    fn arb_entry() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-6i64..=6, 1i64..=3), 0..=2)
            .prop_map(|v| Poly::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn random_four_by_four(entries in prop::collection::vec(arb_entry(), 16),
                               m2 in 1usize..4, n2 in 1usize..4) {
            let m = PolyMatrix::new(4, 4, entries).unwrap();
            prop_assert!(sylvester_check(&m, 4, 3, 4, 1).unwrap());
            prop_assert!(sylvester_check(&m, 4, m2, 4, n2).unwrap());
        }
    }
}
