//! Finite index subsets of `{0..k-1}` with the subset-lexicographic order.
//!
//! Subsets are compared as increasingly sorted integer sequences,
//! lexicographically, so `{0} < {0,1} < {0,2} < {1} < {1,2} < {2}`.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

pub const MAX_ARITY: usize = 24;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    /// `{0, .., k-1}`.
    pub fn full(k: usize) -> Self {
        if k == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - k))
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Subset(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn insert(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element plus one (0 for the empty set).
    pub fn bound(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// Shift every index up by `by`.
    pub fn shift(self, by: usize) -> Self {
        Subset(self.0 << by)
    }

    /// Delete index `i` and close the gap (order-preserving reindexing).
    pub fn delete_index(self, i: usize) -> Self {
        let low = self.0 & ((1u32 << i) - 1);
        let high = (self.0 >> (i + 1)) << i;
        Subset(low | high)
    }

    /// Inverse of [`Subset::delete_index`]: open a gap at `i` (which stays empty).
    pub fn insert_gap(self, i: usize) -> Self {
        let low = self.0 & ((1u32 << i) - 1);
        let high = (self.0 >> i) << (i + 1);
        Subset(low | high)
    }

    /// Image under the transposition swapping `i` and `j`.
    pub fn swap(self, i: usize, j: usize) -> Self {
        let bi = self.contains(i);
        let bj = self.contains(j);
        if bi == bj {
            return self;
        }
        let s = self.remove(i).remove(j);
        if bi {
            s.insert(j)
        } else {
            s.insert(i)
        }
    }

    /// Image under an arbitrary permutation given as `perm[old] = new`.
    pub fn permute(self, perm: &[usize]) -> Self {
        Subset::from_indices(self.iter().map(|i| perm[i]))
    }

    /// All nonempty subsets of `{0..k-1}`, in subset-lex order.
    pub fn all_nonempty(k: usize) -> Vec<Subset> {
        let mut v: Vec<Subset> = (1..(1u32 << k)).map(Subset).collect();
        v.sort();
        v
    }

    /// Nonempty proper subsets of `self` (as bitmask submasks).
    pub fn proper_nonempty_subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut sub = full;
        std::iter::from_fn(move || loop {
            if sub == 0 {
                return None;
            }
            sub = (sub - 1) & full;
            if sub != 0 {
                return Some(Subset(sub));
            }
        })
    }

    /// Comma-joined sorted indices, e.g. `0,2`.
    pub fn key(self) -> String {
        self.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_key(s: &str) -> Option<Subset> {
        let s = s.trim();
        if s.is_empty() {
            return Some(Subset::EMPTY);
        }
        let mut out = Subset::EMPTY;
        for part in s.split(',') {
            let i: usize = part.trim().parse().ok()?;
            if i >= MAX_ARITY {
                return None;
            }
            out = out.insert(i);
        }
        Some(out)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    o => return o,
                },
            }
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
