//! Subsets of the ground set, stored as bit masks over 0-based indices.
//!
//! The text form is the comma-joined ascending list of 1-based indices,
//! e.g. `"1,3"`; the empty set is `""`.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(m: usize) -> Subset {
        if m >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0u64, |acc, i| acc | (1u64 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Ascending 0-based indices.
    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut bits = self.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out.push(i);
            bits &= bits - 1;
        }
        out
    }

    pub fn one_based(self) -> Vec<usize> {
        self.indices().into_iter().map(|i| i + 1).collect()
    }

    pub fn parse_one_based(s: &str, m: usize) -> Result<Subset> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let mut out = Subset::EMPTY;
        for part in s.split(',') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("bad subset index {part:?}")))?;
            if i == 0 || i > m {
                return Err(Error::input(format!("subset index {i} outside 1..={m}")));
            }
            out = out.with(i - 1);
        }
        Ok(out)
    }

    /// All subsets of `{0..m}`, in mask order.
    pub fn all(m: usize) -> impl Iterator<Item = Subset> {
        (0..(1u64 << m)).map(Subset)
    }

    /// All `k`-element subsets of `{0..m}`, lexicographic in index lists.
    pub fn combinations(m: usize, k: usize) -> Vec<Subset> {
        if k > m {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Subset::from_indices(idx.iter().copied()));
            let Some(i) = (0..k).rev().find(|&i| idx[i] < i + m - k) else {
                return out;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}
