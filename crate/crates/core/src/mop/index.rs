//! Multi-indices and monotone unit-step paths between them.
//!
//! Directions and weight indices are numbered from 1, as in path JSON.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidIndex("a multi-index needs at least one entry".into()));
        }
        Ok(MultiIndex(entries))
    }

    pub fn zeros(r: usize) -> Self {
        MultiIndex(vec![0; r.max(1)])
    }

    /// Parses `"2,3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidIndex(format!("bad multi-index {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(entries)
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    /// `|n|`
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Entry for direction `dir` (1-based).
    pub fn get(&self, dir: usize) -> usize {
        self.0[dir - 1]
    }

    pub fn check_direction(&self, dir: usize) -> Result<()> {
        if dir == 0 || dir > self.r() {
            return Err(Error::InvalidIndex(format!("direction {dir} outside 1..={}", self.r())));
        }
        Ok(())
    }

    /// `n + k e_dir`
    pub fn raised_by(&self, dir: usize, k: usize) -> Result<MultiIndex> {
        self.check_direction(dir)?;
        let mut v = self.0.clone();
        v[dir - 1] += k;
        Ok(MultiIndex(v))
    }

    pub fn raised(&self, dir: usize) -> Result<MultiIndex> {
        self.raised_by(dir, 1)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.r() == other.r() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All multi-indices with `r` entries and size at most `max_size`.
    pub fn all_up_to(r: usize, max_size: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; r];
        fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if pos == cur.len() {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur[pos] = v;
                rec(pos + 1, left - v, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, max_size, &mut cur, &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for MultiIndex {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        MultiIndex::new(v)
    }
}

impl From<MultiIndex> for Vec<usize> {
    fn from(m: MultiIndex) -> Self {
        m.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A start index plus the direction of each unit step; `l = steps.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathSpec {
    pub start: MultiIndex,
    pub steps: Vec<usize>,
}

impl PathSpec {
    pub fn new(start: MultiIndex, steps: Vec<usize>) -> Self {
        PathSpec { start, steps }
    }

    /// `l` indices moving along one direction.
    pub fn straight(start: MultiIndex, dir: usize, l: usize) -> Self {
        PathSpec {
            start,
            steps: vec![dir; l.saturating_sub(1)],
        }
    }

    /// Number of multi-indices on the path.
    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Materializes `(n_0, ..., n_{l-1})`, rejecting out-of-range directions.
    pub fn validate(&self) -> Result<Vec<MultiIndex>> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.start.clone();
        out.push(cur.clone());
        for &d in &self.steps {
            cur = cur.raised(d)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// The path with one more step appended.
    pub fn extended(&self, dir: usize) -> PathSpec {
        let mut steps = self.steps.clone();
        steps.push(dir);
        PathSpec {
            start: self.start.clone(),
            steps,
        }
    }

    /// Drops the first index: `(n_1, ..., n_{l-1})`.
    pub fn tail(&self) -> Result<PathSpec> {
        let Some((&first, rest)) = self.steps.split_first() else {
            return Err(Error::InvalidIndex("path of length 1 has no tail".into()));
        };
        Ok(PathSpec {
            start: self.start.raised(first)?,
            steps: rest.to_vec(),
        })
    }

    /// Every monotone path of length `l` out of `start`, in lexicographic
    /// order of the step sequence.
    pub fn enumerate(start: &MultiIndex, l: usize) -> Vec<PathSpec> {
        let r = start.r();
        let k = l.saturating_sub(1);
        let mut out = Vec::new();
        let mut steps = vec![1usize; k];
        loop {
            out.push(PathSpec::new(start.clone(), steps.clone()));
            // odometer increment
            let mut pos = k;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if steps[pos] < r {
                    steps[pos] += 1;
                    for s in steps.iter_mut().skip(pos + 1) {
                        *s = 1;
                    }
                    break;
                }
            }
        }
    }

    /// Number of monotone paths of length `l` out of a start with `r` entries.
    pub fn count(r: usize, l: usize) -> u128 {
        (r as u128).saturating_pow(l.saturating_sub(1) as u32)
    }
}

impl fmt::Display for PathSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.validate() {
            Ok(v) => {
                for (i, m) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, "->")?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
            Err(_) => write!(f, "{}+{:?}", self.start, self.steps),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let p = PathSpec::new(mi(&[3, 3]), vec![1]);
        assert_eq!(p.validate().unwrap(), vec![mi(&[3, 3]), mi(&[4, 3])]);

        let p = PathSpec::new(mi(&[2, 3]), vec![1, 1, 2]);
        assert_eq!(
            p.validate().unwrap(),
            vec![mi(&[2, 3]), mi(&[3, 3]), mi(&[4, 3]), mi(&[4, 4])]
        );

        let p = PathSpec::new(mi(&[0, 0]), vec![3]);
        assert!(p.validate().is_err());
        let p = PathSpec::new(mi(&[0, 0]), vec![0]);
        assert!(p.validate().is_err());
    }

    #[test]
    fn path_invariants() {
        for p in PathSpec::enumerate(&mi(&[1, 0, 2]), 4) {
            let v = p.validate().unwrap();
            for (j, m) in v.iter().enumerate() {
                assert_eq!(m.size(), 3 + j);
            }
            for w in v.windows(2) {
                assert!(w[0].le(&w[1]));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(PathSpec::enumerate(&mi(&[1, 1]), 1).len(), 1);
        assert_eq!(PathSpec::enumerate(&mi(&[1, 1]), 3).len(), 4);
        assert_eq!(PathSpec::enumerate(&mi(&[0, 0, 0]), 4).len(), 27);
        assert_eq!(PathSpec::count(3, 4), 27);
    }

    #[test]
    fn tail_and_extend() {
        let p = PathSpec::new(mi(&[2, 3]), vec![1, 2]);
        let t = p.tail().unwrap();
        assert_eq!(t.start, mi(&[3, 3]));
        assert_eq!(t.steps, vec![2]);
        assert_eq!(p.extended(1).len(), 4);
    }

    #[test]
    fn json_shape() {
        let p: PathSpec = serde_json::from_str(r#"{"start":[3,3],"steps":[1,1,1]}"#).unwrap();
        assert_eq!(p.len(), 4);
        assert!(serde_json::from_str::<MultiIndex>("[]").is_err());
        assert_eq!(mi(&[2, 3]).to_string(), "(2,3)");
    }

    #[test]
    fn all_up_to_counts() {
        // number of (a, b) with a + b <= 4
        assert_eq!(MultiIndex::all_up_to(2, 4).len(), 15);
        assert_eq!(MultiIndex::all_up_to(3, 2).len(), 10);
    }
}
