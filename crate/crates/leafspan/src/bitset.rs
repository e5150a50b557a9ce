//! Fixed-capacity vertex sets backed by u64 words.
//!
//! Every set operation the rule conditions perform is set algebra over
//! vertices of one graph, so all sets created for a graph share its
//! capacity. Mixing capacities is a bug and panics in debug builds.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: u32,
}

impl VertexSet {
    pub fn new(capacity: u32) -> Self {
        let nwords = (capacity as usize).div_ceil(64).max(1);
        VertexSet {
            words: vec![0; nwords],
            capacity,
        }
    }

    pub fn full(capacity: u32) -> Self {
        let mut s = VertexSet::new(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn singleton(capacity: u32, v: u32) -> Self {
        let mut s = VertexSet::new(capacity);
        s.insert(v);
        s
    }

    pub fn from_iter<I: IntoIterator<Item = u32>>(capacity: u32, vs: I) -> Self {
        let mut s = VertexSet::new(capacity);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    #[inline]
    pub fn insert(&mut self, v: u32) {
        debug_assert!(v < self.capacity, "vertex {v} out of range");
        self.words[(v / 64) as usize] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: u32) {
        debug_assert!(v < self.capacity, "vertex {v} out of range");
        self.words[(v / 64) as usize] &= !(1u64 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        debug_assert!(v < self.capacity, "vertex {v} out of range");
        self.words[(v / 64) as usize] & (1u64 << (v % 64)) != 0
    }

    pub fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn minus_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.minus_with(other);
        s
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn with(&self, v: u32) -> VertexSet {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn without(&self, v: u32) -> VertexSet {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint_from(other)
    }

    /// Smallest member, if any. Iteration order everywhere is ascending id,
    /// which is what makes rule tie-breaking deterministic.
    pub fn first(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i as u32 * 64 + w.trailing_zeros());
            }
        }
        None
    }

    /// The sole member if the set is a singleton.
    pub fn single(&self) -> Option<u32> {
        if self.count() == 1 {
            self.first()
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = i as u32 * 64;
            BitIter { word: w, base }
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

struct BitIter {
    word: u64,
    base: u32,
}

impl Iterator for BitIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros();
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = VertexSet::new(70);
        s.insert(0);
        s.insert(65);
        s.insert(3);
        assert!(s.contains(65));
        assert!(!s.contains(64));
        assert_eq!(s.count(), 3);
        assert_eq!(s.to_vec(), vec![0, 3, 65]);
        s.remove(3);
        assert_eq!(s.to_vec(), vec![0, 65]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.single(), None);
        assert_eq!(VertexSet::singleton(70, 65).single(), Some(65));
    }

    #[test]
    fn algebra() {
        let a = VertexSet::from_iter(10, [1, 2, 3]);
        let b = VertexSet::from_iter(10, [3, 4]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(a.minus(&b).to_vec(), vec![1, 2]);
        assert_eq!(a.intersect(&b).to_vec(), vec![3]);
        assert!(a.intersect(&b).is_subset_of(&a));
        assert!(!a.is_disjoint_from(&b));
        assert!(a.minus(&b).is_disjoint_from(&b));
        assert_eq!(VertexSet::full(10).count(), 10);
    }
}
