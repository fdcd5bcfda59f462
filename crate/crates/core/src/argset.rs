//! Dense bit sets over interned argument indices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use smallvec::SmallVec;

use crate::framework::ArgumentId;

const WORD_BITS: usize = 64;

/// A finite set of arguments stored as a bit vector.
///
/// Storage is kept trimmed (no trailing zero words), so two sets are equal
/// exactly when their members are equal, regardless of how they were built.
/// Frameworks of up to 61 user arguments (plus the three reserved dummies)
/// fit in a single inline word.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ArgSet {
    words: SmallVec<[u64; 1]>,
}

/// An extension is just a set of arguments; which semantics it satisfies is
/// decided by the caller.
pub type Extension = ArgSet;

impl ArgSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(id: ArgumentId) -> Self {
        let mut s = Self::new();
        s.insert(id);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// The set whose members are the bits of `word`.
    pub(crate) fn from_word(word: u64) -> Self {
        let mut s = ArgSet {
            words: smallvec::smallvec![word],
        };
        s.trim();
        s
    }

    /// The members as a single word, when every index is below 64.
    pub(crate) fn as_word(&self) -> Option<u64> {
        match self.words.as_slice() {
            [] => Some(0),
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn insert(&mut self, id: ArgumentId) -> bool {
        let (w, b) = (id.index() / WORD_BITS, id.index() % WORD_BITS);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, id: ArgumentId) -> bool {
        let (w, b) = (id.index() / WORD_BITS, id.index() % WORD_BITS);
        match self.words.get_mut(w) {
            Some(word) if *word & (1 << b) != 0 => {
                *word &= !(1 << b);
                self.trim();
                true
            }
            _ => false,
        }
    }

    pub fn contains(&self, id: ArgumentId) -> bool {
        let (w, b) = (id.index() / WORD_BITS, id.index() % WORD_BITS);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &ArgSet) -> bool {
        if self.words.len() > other.words.len() {
            return false;
        }
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &ArgSet) -> bool {
        other.is_subset(self)
    }

    pub fn intersects(&self, other: &ArgSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &ArgSet) -> bool {
        !self.intersects(other)
    }

    pub fn union_with(&mut self, other: &ArgSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ArgSet) {
        self.words.truncate(other.words.len());
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        self.trim();
    }

    pub fn difference_with(&mut self, other: &ArgSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn union(&self, other: &ArgSet) -> ArgSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ArgSet) -> ArgSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &ArgSet) -> ArgSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<ArgumentId> {
        self.iter().next()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = ArgumentId;

    fn next(&mut self) -> Option<ArgumentId> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(ArgumentId::new(self.word_idx * WORD_BITS + bit));
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

impl<'a> IntoIterator for &'a ArgSet {
    type Item = ArgumentId;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<ArgumentId> for ArgSet {
    fn from_iter<I: IntoIterator<Item = ArgumentId>>(iter: I) -> Self {
        let mut s = ArgSet::new();
        for id in iter {
            s.insert(id);
        }
        s
    }
}

impl Extend<ArgumentId> for ArgSet {
    fn extend<I: IntoIterator<Item = ArgumentId>>(&mut self, iter: I) {
        for id in iter {
            self.insert(id);
        }
    }
}

// Lexicographic over the ascending member sequence, so the empty set sorts
// first and {a} < {a,b} < {b}.
impl Ord for ArgSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ArgSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for &ArgSet {
    type Output = ArgSet;
    fn bitor(self, rhs: &ArgSet) -> ArgSet {
        self.union(rhs)
    }
}

impl BitAnd for &ArgSet {
    type Output = ArgSet;
    fn bitand(self, rhs: &ArgSet) -> ArgSet {
        self.intersection(rhs)
    }
}

impl Sub for &ArgSet {
    type Output = ArgSet;
    fn sub(self, rhs: &ArgSet) -> ArgSet {
        self.difference(rhs)
    }
}

impl fmt::Debug for ArgSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|id| id.index()))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ids: &[usize]) -> ArgSet {
        ids.iter().map(|&i| ArgumentId::new(i)).collect()
    }

    #[test]
    fn insert_remove_keeps_trimmed() {
        let mut s = set(&[3, 70]);
        assert_eq!(s.len(), 2);
        assert!(s.remove(ArgumentId::new(70)));
        assert_eq!(s, set(&[3]));
        assert!(!s.remove(ArgumentId::new(70)));
        assert!(s.remove(ArgumentId::new(3)));
        assert!(s.is_empty());
        assert_eq!(s, ArgSet::new());
    }

    #[test]
    fn lexicographic_order() {
        let mut v = vec![set(&[1]), set(&[]), set(&[0, 4]), set(&[0])];
        v.sort();
        assert_eq!(v, vec![set(&[]), set(&[0]), set(&[0, 4]), set(&[1])]);
    }

    #[test]
    fn multiword_iteration() {
        let s = set(&[0, 63, 64, 130]);
        let got: Vec<usize> = s.iter().map(|i| i.index()).collect();
        assert_eq!(got, vec![0, 63, 64, 130]);
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(
            a in proptest::collection::btree_set(0usize..140, 0..12),
            b in proptest::collection::btree_set(0usize..140, 0..12),
        ) {
            let sa: ArgSet = a.iter().map(|&i| ArgumentId::new(i)).collect();
            let sb: ArgSet = b.iter().map(|&i| ArgumentId::new(i)).collect();
            let to_vec = |s: &ArgSet| s.iter().map(|i| i.index()).collect::<Vec<_>>();
            prop_assert_eq!(to_vec(&(&sa | &sb)), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(to_vec(&(&sa & &sb)), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(to_vec(&(&sa - &sb)), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.intersects(&sb), !a.is_disjoint(&b));
            prop_assert_eq!(sa.cmp(&sb), a.iter().cmp(b.iter()));
        }
    }
}
