use std::fmt;

use serde::{Deserialize, Serialize};

/// Subset of a ground set of at most 64 elements, as a bitmask. Element `i`
/// of the ground set corresponds to bit `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct EdgeSubset(pub u64);

impl EdgeSubset {
    pub const EMPTY: EdgeSubset = EdgeSubset(0);

    pub fn full(n: usize) -> EdgeSubset {
        assert!(n <= 64, "ground sets are capped at 64 elements");
        if n == 64 {
            EdgeSubset(u64::MAX)
        } else {
            EdgeSubset((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> EdgeSubset {
        EdgeSubset(1u64 << e)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(iter: I) -> EdgeSubset {
        let mut mask = 0u64;
        for e in iter {
            mask |= 1u64 << e;
        }
        EdgeSubset(mask)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn insert(&self, e: usize) -> EdgeSubset {
        EdgeSubset(self.0 | 1u64 << e)
    }

    pub fn remove(&self, e: usize) -> EdgeSubset {
        EdgeSubset(self.0 & !(1u64 << e))
    }

    pub fn union(&self, other: EdgeSubset) -> EdgeSubset {
        EdgeSubset(self.0 | other.0)
    }

    pub fn intersect(&self, other: EdgeSubset) -> EdgeSubset {
        EdgeSubset(self.0 & other.0)
    }

    pub fn minus(&self, other: EdgeSubset) -> EdgeSubset {
        EdgeSubset(self.0 & !other.0)
    }

    pub fn complement(&self, n: usize) -> EdgeSubset {
        EdgeSubset::full(n).minus(*self)
    }

    pub fn is_subset_of(&self, other: EdgeSubset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Iterate the elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        Elems(self.0)
    }

    pub fn elems(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in an arbitrary but fixed order, including the
    /// empty set and `self`.
    pub fn subsets(&self) -> impl Iterator<Item = EdgeSubset> {
        Subsets {
            mask: self.0,
            cur: 0,
            done: false,
        }
    }
}

struct Elems(u64);

impl Iterator for Elems {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }
}

struct Subsets {
    mask: u64,
    cur: u64,
    done: bool,
}

impl Iterator for Subsets {
    type Item = EdgeSubset;
    fn next(&mut self) -> Option<EdgeSubset> {
        if self.done {
            return None;
        }
        let out = EdgeSubset(self.cur);
        if self.cur == self.mask {
            self.done = true;
        } else {
            self.cur = (self.cur.wrapping_sub(self.mask)) & self.mask;
        }
        Some(out)
    }
}

impl fmt::Debug for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "}}")
    }
}
