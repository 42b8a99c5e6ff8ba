//! Finite labeled posets on {1..n}: construction from cover relations,
//! order ideals, linear extensions, and P-partitions.
//!
//! Conventions used throughout:
//! - elements are the integers 1..n;
//! - a cover pair (a, b) means a is covered by b, so a < b in the order;
//! - the poset is naturally labeled when a < b in the order implies a < b
//!   as integers;
//! - a linear extension is a word w1..wn such that i < j whenever
//!   wi < wj in the order.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};

/// Partial order on {1..n}, stored as reduced covers plus closed
/// down-sets and up-sets per element. Debug shows n and the covers;
/// the redundant closures would only add noise.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: u32,
    covers: Vec<(u32, u32)>,
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
    lower_covers: Vec<Vec<u32>>,
    upper_covers: Vec<Vec<u32>>,
    natural: bool,
}

/// Construction result: the poset plus input pairs that were dropped
/// because the remaining covers already implied them.
pub struct PosetBuild {
    pub poset: Poset,
    pub implied_pairs: Vec<(u32, u32)>,
    pub duplicate_pairs: Vec<(u32, u32)>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.covers)
    }
}

impl Poset {
    /// Builds a poset from claimed cover pairs, validating labels,
    /// rejecting cycles, and reducing transitively implied pairs.
    pub fn build(n: u32, pairs: &[(u32, u32)]) -> Result<PosetBuild> {
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        for &(a, b) in pairs {
            for e in [a, b] {
                if e < 1 || e > n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
            }
            if a == b {
                return Err(Error::CycleDetected { element: a });
            }
        }

        let mut seen = std::collections::BTreeSet::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut duplicate_pairs = Vec::new();
        for &pair in pairs {
            if seen.insert(pair) {
                edges.push(pair);
            } else {
                duplicate_pairs.push(pair);
            }
        }

        // Kahn's algorithm over the raw digraph; leftover indegree means a cycle.
        let mut succ: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
        let mut indeg = vec![0u32; n as usize];
        for &(a, b) in &edges {
            succ[(a - 1) as usize].push(b);
            indeg[(b - 1) as usize] += 1;
        }
        let mut queue: Vec<u32> = (1..=n).filter(|&e| indeg[(e - 1) as usize] == 0).collect();
        let mut topo = Vec::with_capacity(n as usize);
        while let Some(e) = queue.pop() {
            topo.push(e);
            for &u in &succ[(e - 1) as usize] {
                indeg[(u - 1) as usize] -= 1;
                if indeg[(u - 1) as usize] == 0 {
                    queue.push(u);
                }
            }
        }
        if topo.len() < n as usize {
            let stuck = (1..=n).find(|&e| indeg[(e - 1) as usize] > 0).unwrap();
            return Err(Error::CycleDetected { element: stuck });
        }

        // Transitive closure as down-sets, in topological order.
        let mut pred: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
        for &(a, b) in &edges {
            pred[(b - 1) as usize].push(a);
        }
        let mut down: Vec<ElemSet> = (1..=n).map(|e| ElemSet::singleton(n, e)).collect();
        for &e in &topo {
            let mut d = down[(e - 1) as usize].clone();
            for &a in &pred[(e - 1) as usize] {
                d.union_with(&down[(a - 1) as usize]);
            }
            down[(e - 1) as usize] = d;
        }

        let mut up: Vec<ElemSet> = (1..=n).map(|e| ElemSet::singleton(n, e)).collect();
        for b in 1..=n {
            for a in down[(b - 1) as usize].elems() {
                up[(a - 1) as usize].insert(b);
            }
        }

        // Reduced covers: a is covered by b iff a is maximal in down(b) \ {b}.
        let mut covers = Vec::new();
        let mut lower_covers: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
        let mut upper_covers: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
        for b in 1..=n {
            let mut strict = down[(b - 1) as usize].clone();
            strict.remove(b);
            for a in strict.elems() {
                let above_within = up[(a - 1) as usize].intersection(&strict);
                if above_within.len() == 1 {
                    covers.push((a, b));
                    lower_covers[(b - 1) as usize].push(a);
                    upper_covers[(a - 1) as usize].push(b);
                }
            }
        }
        covers.sort_unstable();
        let cover_set: std::collections::BTreeSet<(u32, u32)> = covers.iter().copied().collect();
        let implied_pairs: Vec<(u32, u32)> = edges
            .iter()
            .copied()
            .filter(|p| !cover_set.contains(p))
            .collect();

        let natural = covers.iter().all(|&(a, b)| a < b);
        Ok(PosetBuild {
            poset: Poset {
                n,
                covers,
                down,
                up,
                lower_covers,
                upper_covers,
                natural,
            },
            implied_pairs,
            duplicate_pairs,
        })
    }

    /// `build` without the report.
    pub fn new(n: u32, pairs: &[(u32, u32)]) -> Result<Poset> {
        Ok(Self::build(n, pairs)?.poset)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Reduced cover pairs (a, b) with a covered by b, sorted.
    pub fn covers(&self) -> &[(u32, u32)] {
        &self.covers
    }

    pub fn lower_covers(&self, e: u32) -> &[u32] {
        &self.lower_covers[(e - 1) as usize]
    }

    pub fn upper_covers(&self, e: u32) -> &[u32] {
        &self.upper_covers[(e - 1) as usize]
    }

    /// True iff a <= b in the order.
    pub fn leq(&self, a: u32, b: u32) -> bool {
        self.down[(b - 1) as usize].contains(a)
    }

    /// True iff a < b in the order.
    pub fn lt(&self, a: u32, b: u32) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn is_naturally_labeled(&self) -> bool {
        self.natural
    }

    /// Down-set of e including e itself, as a raw element set.
    pub fn down_set(&self, e: u32) -> &ElemSet {
        &self.down[(e - 1) as usize]
    }

    /// Up-set of e including e itself.
    pub fn up_set(&self, e: u32) -> &ElemSet {
        &self.up[(e - 1) as usize]
    }

    /// Principal ideal of element i: everything at or below i.
    pub fn principal_ideal(&self, i: u32) -> Result<Ideal> {
        if i < 1 || i > self.n {
            return Err(Error::ElementOutOfRange { element: i, n: self.n });
        }
        Ok(Ideal {
            members: self.down[(i - 1) as usize].clone(),
        })
    }

    /// Checks that `set` is down-closed, then reports whether its cover
    /// graph is connected. Empty sets are down-closed but not connected.
    pub fn is_connected_ideal(&self, set: &ElemSet) -> Result<bool> {
        self.check_down_closed(set)?;
        if set.is_empty() {
            return Ok(false);
        }
        Ok(self.cover_connected(set))
    }

    fn check_down_closed(&self, set: &ElemSet) -> Result<()> {
        for e in set.elems() {
            for &a in self.lower_covers(e) {
                if !set.contains(a) {
                    return Err(Error::NotDownClosed {
                        set: set.to_string(),
                        missing: a,
                    });
                }
            }
        }
        Ok(())
    }

    /// Connectivity of the cover graph restricted to `set` (assumed down-closed).
    pub(crate) fn cover_connected(&self, set: &ElemSet) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut uf = UnionFind::new(self.n as usize);
        for &(a, b) in &self.covers {
            if set.contains(a) && set.contains(b) {
                uf.union((a - 1) as usize, (b - 1) as usize);
            }
        }
        let mut root = None;
        for e in set.elems() {
            let r = uf.find((e - 1) as usize);
            match root {
                None => root = Some(r),
                Some(r0) if r0 != r => return false,
                _ => {}
            }
        }
        true
    }

    /// Maximal elements of a nonempty ideal.
    pub fn generating_set(&self, ideal: &Ideal) -> Result<ElemSet> {
        if ideal.members.is_empty() {
            return Err(Error::EmptyIdeal {
                context: "generating set",
            });
        }
        let mut gens = ElemSet::empty(self.n);
        for e in ideal.members.elems() {
            if self.up[(e - 1) as usize].intersection(&ideal.members).len() == 1 {
                gens.insert(e);
            }
        }
        Ok(gens)
    }

    /// Relabels so the order becomes naturally labeled, using the
    /// lexicographically smallest linear extension. Already-natural input
    /// yields the identity permutation.
    pub fn natural_relabel(&self) -> (Poset, Relabeling) {
        let mut cursor = ExtensionCursor::new(self);
        let word = cursor
            .advance()
            .expect("nonempty poset has a linear extension")
            .to_vec();
        let mut to_new = vec![0u32; self.n as usize];
        for (pos, &old) in word.iter().enumerate() {
            to_new[(old - 1) as usize] = pos as u32 + 1;
        }
        let mapped: Vec<(u32, u32)> = self
            .covers
            .iter()
            .map(|&(a, b)| (to_new[(a - 1) as usize], to_new[(b - 1) as usize]))
            .collect();
        let relabeled = Poset::new(self.n, &mapped).expect("relabeling preserves acyclicity");
        (relabeled, Relabeling { to_new })
    }

    /// Streams all linear extensions in lexicographic order.
    pub fn linear_extensions(&self) -> LinearExtensionIter<'_> {
        LinearExtensionIter {
            cursor: ExtensionCursor::new(self),
        }
    }

    /// Drives `f` over every linear extension in lexicographic order,
    /// stopping with an error once more than `cap` have been produced.
    /// Returns the number visited.
    pub fn try_for_each_extension<F>(&self, cap: u64, mut f: F) -> Result<u64>
    where
        F: FnMut(&[u32]),
    {
        let mut cursor = ExtensionCursor::new(self);
        let mut count = 0u64;
        while let Some(word) = cursor.advance() {
            count += 1;
            if count > cap {
                return Err(Error::CapExceeded {
                    stage: "linear extension enumeration",
                    limit: cap,
                    reached: count,
                });
            }
            f(word);
        }
        Ok(count)
    }
}

/// Element permutation produced by `natural_relabel`; `to_new[old - 1]`
/// is the new label of `old`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub to_new: Vec<u32>,
}

impl Relabeling {
    pub fn apply(&self, old: u32) -> u32 {
        self.to_new[(old - 1) as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.to_new.iter().enumerate().all(|(i, &e)| e == i as u32 + 1)
    }
}

/// Down-closed subset of a poset's elements. The empty set is a valid
/// ideal; connectivity is a separate property.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    members: ElemSet,
}

impl Ideal {
    /// Validates down-closure of `members` against `p`.
    pub fn new(p: &Poset, members: ElemSet) -> Result<Ideal> {
        p.check_down_closed(&members)?;
        Ok(Ideal { members })
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn len(&self) -> u32 {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub(crate) fn from_set_unchecked(members: ElemSet) -> Ideal {
        Ideal { members }
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.members.fmt(f)
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.members.fmt(f)
    }
}

/// Positions i (1-based) with word[i] > word[i+1].
pub fn descent_set(word: &[u32]) -> Vec<u32> {
    word.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i as u32 + 1)
        .collect()
}

/// Sum of descent positions.
pub fn major_index(word: &[u32]) -> u64 {
    descent_set(word).iter().map(|&i| i as u64).sum()
}

/// A single linear extension, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearExtension {
    word: Vec<u32>,
}

impl LinearExtension {
    pub fn new(p: &Poset, word: Vec<u32>) -> Result<LinearExtension> {
        if word.len() != p.n() as usize {
            return Err(Error::Invalid {
                msg: format!("word length {} != n = {}", word.len(), p.n()),
            });
        }
        let mut pos = vec![u32::MAX; p.n() as usize];
        for (i, &e) in word.iter().enumerate() {
            if e < 1 || e > p.n() {
                return Err(Error::ElementOutOfRange { element: e, n: p.n() });
            }
            if pos[(e - 1) as usize] != u32::MAX {
                return Err(Error::Invalid {
                    msg: format!("element {e} repeated in extension word"),
                });
            }
            pos[(e - 1) as usize] = i as u32;
        }
        for &(a, b) in p.covers() {
            if pos[(a - 1) as usize] > pos[(b - 1) as usize] {
                return Err(Error::Invalid {
                    msg: format!("word is not a linear extension: {a} must precede {b}"),
                });
            }
        }
        Ok(LinearExtension { word })
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn descent_set(&self) -> Vec<u32> {
        descent_set(&self.word)
    }

    pub fn major_index(&self) -> u64 {
        major_index(&self.word)
    }
}

/// Backtracking enumerator for linear extensions. At every step the
/// smallest available minimal element extends the word, which yields
/// lexicographic order; a nonempty remainder always has a minimal
/// element, so partial words never dead-end.
struct ExtensionCursor<'a> {
    p: &'a Poset,
    word: Vec<u32>,
    placed: Vec<bool>,
    pending: Vec<u32>,
    started: bool,
    done: bool,
}

impl<'a> ExtensionCursor<'a> {
    fn new(p: &'a Poset) -> Self {
        let n = p.n() as usize;
        let mut pending = vec![0u32; n];
        for e in 1..=p.n() {
            pending[(e - 1) as usize] = p.lower_covers(e).len() as u32;
        }
        ExtensionCursor {
            p,
            word: Vec::with_capacity(n),
            placed: vec![false; n],
            pending,
            started: false,
            done: false,
        }
    }

    fn place(&mut self, e: u32) {
        self.placed[(e - 1) as usize] = true;
        self.word.push(e);
        for &u in self.p.upper_covers(e) {
            self.pending[(u - 1) as usize] -= 1;
        }
    }

    fn unplace(&mut self, e: u32) {
        self.placed[(e - 1) as usize] = false;
        for &u in self.p.upper_covers(e) {
            self.pending[(u - 1) as usize] += 1;
        }
    }

    fn smallest_available(&self, from: u32) -> Option<u32> {
        (from..=self.p.n())
            .find(|&e| !self.placed[(e - 1) as usize] && self.pending[(e - 1) as usize] == 0)
    }

    fn fill(&mut self) {
        while self.word.len() < self.p.n() as usize {
            let e = self
                .smallest_available(1)
                .expect("remainder of a finite poset has a minimal element");
            self.place(e);
        }
    }

    fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return Some(&self.word);
        }
        loop {
            let Some(last) = self.word.pop() else {
                self.done = true;
                return None;
            };
            self.unplace(last);
            if let Some(e) = self.smallest_available(last + 1) {
                self.place(e);
                self.fill();
                return Some(&self.word);
            }
        }
    }
}

/// Iterator over linear extensions; see `Poset::linear_extensions`.
pub struct LinearExtensionIter<'a> {
    cursor: ExtensionCursor<'a>,
}

impl Iterator for LinearExtensionIter<'_> {
    type Item = LinearExtension;

    fn next(&mut self) -> Option<LinearExtension> {
        self.cursor.advance().map(|w| LinearExtension { word: w.to_vec() })
    }
}

/// Map f from elements to naturals that weakly decreases up the order
/// and strictly decreases across label-inverted relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPartition {
    values: Vec<u64>,
}

impl PPartition {
    /// Validates the two defining conditions. Checking covers suffices:
    /// weak decrease is transitive, and any inverted relation contains an
    /// inverted cover along its cover chain, forcing strictness.
    pub fn new(p: &Poset, values: Vec<u64>) -> Result<PPartition> {
        if values.len() != p.n() as usize {
            return Err(Error::Invalid {
                msg: format!("expected {} values, got {}", p.n(), values.len()),
            });
        }
        for &(a, b) in p.covers() {
            let fa = values[(a - 1) as usize];
            let fb = values[(b - 1) as usize];
            if fa < fb {
                return Err(Error::Invalid {
                    msg: format!("value must not increase from {a} up to {b}"),
                });
            }
            if a > b && fa == fb {
                return Err(Error::Invalid {
                    msg: format!("inverted relation {a} < {b} requires a strict drop"),
                });
            }
        }
        Ok(PPartition { values })
    }

    /// Exponent vector of the monomial this map contributes.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn weight(&self) -> u64 {
        self.values.iter().sum()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

pub(crate) fn union_find_components(count: usize, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::new(count);
    for &(a, b) in edges {
        uf.union(a as usize, b as usize);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<u32>> = std::collections::BTreeMap::new();
    for v in 0..count {
        groups.entry(uf.find(v)).or_default().push(v as u32);
    }
    // Order components by their smallest vertex.
    let mut comps: Vec<Vec<u32>> = groups.into_values().collect();
    comps.sort_by_key(|c| c[0]);
    comps
}

#[cfg(test)]
pub(crate) fn sample6() -> Poset {
    Poset::new(6, &[(3, 1), (4, 1), (1, 2), (4, 5), (6, 4)]).unwrap()
}
