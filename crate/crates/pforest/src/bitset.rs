//! Fixed-width bit sets over a ground set {1..n}.
//!
//! Sets up to 64 elements live in a single machine word; larger ground sets
//! switch to a boxed word vector. The tier is picked from `n` at construction
//! time, so two sets over the same poset always share a representation.
//!
//! Ordering is canonical everywhere in this crate: first by cardinality,
//! then by numeric value of the bit pattern. This keeps every enumeration
//! deterministic.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Bits {
    Word(u64),
    Wide(Box<[u64]>),
}

/// Subset of the ground set {1..n}. Elements are 1-based labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    n: u32,
    bits: Bits,
}

fn wide_len(n: u32) -> usize {
    (n as usize + 63) / 64
}

impl ElemSet {
    pub fn empty(n: u32) -> Self {
        let bits = if n <= 64 {
            Bits::Word(0)
        } else {
            Bits::Wide(vec![0u64; wide_len(n)].into_boxed_slice())
        };
        ElemSet { n, bits }
    }

    pub fn full(n: u32) -> Self {
        let mut s = Self::empty(n);
        for e in 1..=n {
            s.insert(e);
        }
        s
    }

    pub fn singleton(n: u32, e: u32) -> Self {
        let mut s = Self::empty(n);
        s.insert(e);
        s
    }

    pub fn from_elems<I: IntoIterator<Item = u32>>(n: u32, elems: I) -> Self {
        let mut s = Self::empty(n);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Size of the ground set, not of the subset.
    pub fn ground_size(&self) -> u32 {
        self.n
    }

    pub fn insert(&mut self, e: u32) {
        debug_assert!(e >= 1 && e <= self.n, "element {e} out of range 1..={}", self.n);
        let i = (e - 1) as usize;
        match &mut self.bits {
            Bits::Word(w) => *w |= 1 << i,
            Bits::Wide(v) => v[i / 64] |= 1 << (i % 64),
        }
    }

    pub fn remove(&mut self, e: u32) {
        debug_assert!(e >= 1 && e <= self.n);
        let i = (e - 1) as usize;
        match &mut self.bits {
            Bits::Word(w) => *w &= !(1 << i),
            Bits::Wide(v) => v[i / 64] &= !(1 << (i % 64)),
        }
    }

    pub fn contains(&self, e: u32) -> bool {
        debug_assert!(e >= 1 && e <= self.n);
        let i = (e - 1) as usize;
        match &self.bits {
            Bits::Word(w) => w >> i & 1 == 1,
            Bits::Wide(v) => v[i / 64] >> (i % 64) & 1 == 1,
        }
    }

    pub fn len(&self) -> u32 {
        match &self.bits {
            Bits::Word(w) => w.count_ones(),
            Bits::Wide(v) => v.iter().map(|w| w.count_ones()).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match &self.bits {
            Bits::Word(w) => *w == 0,
            Bits::Wide(v) => v.iter().all(|w| *w == 0),
        }
    }

    fn zip_words<F: Fn(u64, u64) -> u64>(&self, other: &Self, f: F) -> Self {
        debug_assert_eq!(self.n, other.n, "sets over different ground sets");
        let bits = match (&self.bits, &other.bits) {
            (Bits::Word(a), Bits::Word(b)) => Bits::Word(f(*a, *b)),
            (Bits::Wide(a), Bits::Wide(b)) => {
                Bits::Wide(a.iter().zip(b.iter()).map(|(x, y)| f(*x, *y)).collect())
            }
            _ => unreachable!("tier mismatch for equal ground size"),
        };
        ElemSet { n: self.n, bits }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &Self) {
        *self = self.union(other);
    }

    pub fn intersects(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        match (&self.bits, &other.bits) {
            (Bits::Word(a), Bits::Word(b)) => a & b != 0,
            (Bits::Wide(a), Bits::Wide(b)) => a.iter().zip(b.iter()).any(|(x, y)| x & y != 0),
            _ => unreachable!(),
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self.intersects(other)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        match (&self.bits, &other.bits) {
            (Bits::Word(a), Bits::Word(b)) => a & !b == 0,
            (Bits::Wide(a), Bits::Wide(b)) => a.iter().zip(b.iter()).all(|(x, y)| x & !y == 0),
            _ => unreachable!(),
        }
    }

    pub fn is_strict_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    /// Numeric comparison of the raw bit pattern.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        match (&self.bits, &other.bits) {
            (Bits::Word(a), Bits::Word(b)) => a.cmp(b),
            (Bits::Wide(a), Bits::Wide(b)) => {
                for (x, y) in a.iter().zip(b.iter()).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            _ => unreachable!(),
        }
    }

    /// Ascending 1-based labels of the members.
    pub fn elems(&self) -> impl Iterator<Item = u32> + '_ {
        let n = self.n;
        (1..=n).filter(move |&e| self.contains(e))
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.elems().collect()
    }
}

/// Canonical order: by cardinality, then by numeric bit-pattern value.
impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.cmp_value(other))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elems().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_tier_ops() {
        let a = ElemSet::from_elems(6, [1, 3, 4, 6]);
        let b = ElemSet::from_elems(6, [4, 5, 6]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection(&b).to_vec(), vec![4, 6]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 3, 4, 5, 6]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 3]);
        assert!(b.intersects(&a));
        assert!(!b.is_subset(&a));
        assert!(ElemSet::from_elems(6, [4, 6]).is_strict_subset(&b));
        assert_eq!(format!("{a}"), "{1,3,4,6}");
    }

    #[test]
    fn wide_tier_matches_word_semantics() {
        let n = 130;
        let a = ElemSet::from_elems(n, [1, 64, 65, 128, 130]);
        let b = ElemSet::from_elems(n, [64, 65, 129]);
        assert_eq!(a.len(), 5);
        assert!(a.contains(130) && !a.contains(129));
        assert_eq!(a.intersection(&b).to_vec(), vec![64, 65]);
        assert!(ElemSet::from_elems(n, [64, 65]).is_strict_subset(&b));
        assert!(a.union(&b).contains(129));
        assert_eq!(
            a.difference(&b).to_vec(),
            vec![1, 128, 130],
        );
    }

    #[test]
    fn canonical_order_is_size_then_value() {
        let mut sets = vec![
            ElemSet::from_elems(6, [4, 5, 6]),
            ElemSet::from_elems(6, [6]),
            ElemSet::from_elems(6, [3]),
            ElemSet::from_elems(6, [4, 6]),
        ];
        sets.sort();
        let rendered: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
        assert_eq!(rendered, vec!["{3}", "{6}", "{4,6}", "{4,5,6}"]);
    }

    #[test]
    fn wide_value_order_uses_high_words() {
        let n = 100;
        let lo = ElemSet::from_elems(n, [1, 2]);
        let hi = ElemSet::from_elems(n, [1, 100]);
        assert_eq!(lo.cmp(&hi), Ordering::Less);
        assert_eq!(lo.cmp_value(&hi), Ordering::Less);
    }
}
