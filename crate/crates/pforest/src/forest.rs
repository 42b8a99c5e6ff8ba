//! Forests over a poset's elements whose subtrees are connected order
//! ideals, and the bijection between such forests and global maximum
//! independent sets of the ideal intersection graph.
//!
//! A forest here is a parent map on {1..n}; roots point to themselves.
//! The forward map sends a forest to its set of subtree ideals; the
//! inverse map labels each member of a global maximum independent set
//! with its leftover element and wires parents along immediate
//! containment.

use std::collections::HashSet;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::exec;
use crate::ideal_graph::{ideals_adjacent, IdealGraph};
use crate::mis::{self, MaxIndSet, Scope};
use crate::poset::{Ideal, Poset};

/// Forest on {1..n} whose subtree below each node is a connected order
/// ideal of the underlying poset, and whose incomparable subtrees are
/// disjoint with disconnected union. `parents[i - 1]` is the parent of
/// node i; a root is its own parent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PForest {
    parents: Vec<u32>,
    #[doc(hidden)]
    subtrees: Vec<ElemSet>,
}

impl PForest {
    /// Validates the parent map against the poset: it must be acyclic,
    /// every subtree a connected order ideal, and the union of any two
    /// incomparable subtrees a disconnected ideal.
    pub fn new(p: &Poset, parents: Vec<u32>) -> Result<PForest> {
        let n = p.n();
        if parents.len() != n as usize {
            return Err(Error::InvalidForest {
                reason: format!("parent map has {} entries, expected {n}", parents.len()),
            });
        }
        for &q in &parents {
            if q < 1 || q > n {
                return Err(Error::ElementOutOfRange { element: q, n });
            }
        }
        // Cycle check: walk up from each node; a walk longer than n repeats.
        for start in 1..=n {
            let mut cur = start;
            for _ in 0..n {
                let up = parents[(cur - 1) as usize];
                if up == cur {
                    break;
                }
                cur = up;
            }
            if parents[(cur - 1) as usize] != cur {
                return Err(Error::InvalidForest {
                    reason: format!("parent chain from {start} never reaches a root"),
                });
            }
        }

        let subtrees = subtree_sets(n, &parents);
        for i in 1..=n {
            let sub = &subtrees[(i - 1) as usize];
            if !matches!(p.is_connected_ideal(sub), Ok(true)) {
                return Err(Error::InvalidForest {
                    reason: format!("subtree {sub} of node {i} is not a connected order ideal"),
                });
            }
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                let si = &subtrees[(i - 1) as usize];
                let sj = &subtrees[(j - 1) as usize];
                let comparable = si.contains(j) || sj.contains(i);
                if comparable {
                    continue;
                }
                if si.intersects(sj) {
                    return Err(Error::InvalidForest {
                        reason: format!("incomparable subtrees of {i} and {j} overlap"),
                    });
                }
                if p.cover_connected(&si.union(sj)) {
                    return Err(Error::InvalidForest {
                        reason: format!("union of incomparable subtrees of {i} and {j} is connected"),
                    });
                }
            }
        }
        Ok(PForest { parents, subtrees })
    }

    pub fn n(&self) -> u32 {
        self.parents.len() as u32
    }

    /// Parent map, roots as self-parents.
    pub fn parents(&self) -> &[u32] {
        &self.parents
    }

    pub fn parent(&self, i: u32) -> Option<u32> {
        let q = self.parents[(i - 1) as usize];
        (q != i).then_some(q)
    }

    pub fn roots(&self) -> Vec<u32> {
        (1..=self.n()).filter(|&i| self.parent(i).is_none()).collect()
    }

    /// Node i together with all its descendants.
    pub fn subtree(&self, i: u32) -> &ElemSet {
        &self.subtrees[(i - 1) as usize]
    }

    /// Nodes that are larger than their parent.
    pub fn descents(&self) -> Vec<u32> {
        parent_map_descents(&self.parents)
    }

    /// Cover pairs (child, parent) viewed as a poset on {1..n}.
    pub fn as_poset(&self) -> Poset {
        let covers: Vec<(u32, u32)> = (1..=self.n())
            .filter_map(|i| self.parent(i).map(|q| (i, q)))
            .collect();
        Poset::new(self.n(), &covers).expect("validated forest is acyclic")
    }
}

/// Descent set of a raw parent map: nodes exceeding their parent.
/// Self-parents (roots) never count.
pub fn parent_map_descents(parents: &[u32]) -> Vec<u32> {
    parents
        .iter()
        .enumerate()
        .filter_map(|(k, &q)| {
            let i = k as u32 + 1;
            (q != i && i > q).then_some(i)
        })
        .collect()
}

fn subtree_sets(n: u32, parents: &[u32]) -> Vec<ElemSet> {
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
    for i in 1..=n {
        let q = parents[(i - 1) as usize];
        if q != i {
            children[(q - 1) as usize].push(i);
        }
    }
    let mut subtrees = vec![ElemSet::empty(n); n as usize];
    fn fill(n: u32, i: u32, children: &[Vec<u32>], subtrees: &mut [ElemSet]) {
        let mut s = ElemSet::singleton(n, i);
        for &c in &children[(i - 1) as usize] {
            fill(n, c, children, subtrees);
            s = s.union(&subtrees[(c - 1) as usize]);
        }
        subtrees[(i - 1) as usize] = s;
    }
    for i in 1..=n {
        if parents[(i - 1) as usize] == i {
            fill(n, i, &children, &mut subtrees);
        }
    }
    subtrees
}

/// Forward direction of the bijection: the subtree ideals of a forest
/// form a global maximum independent set.
pub fn forest_to_mis(g: &IdealGraph, f: &PForest) -> Result<MaxIndSet> {
    let n = f.n();
    let mut members = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let sub = f.subtree(i);
        let v = g.vertex_of_set(sub).ok_or_else(|| Error::NotAConnectedIdeal {
            set: sub.to_string(),
        })?;
        members.push(v);
    }
    members.sort_unstable();
    members.dedup();
    if members.len() != n as usize {
        return Err(Error::TheoremViolation {
            check: "forest to independent set",
            details: "subtree ideals are not pairwise distinct".to_string(),
        });
    }
    for (k, &a) in members.iter().enumerate() {
        for &b in &members[k + 1..] {
            if ideals_adjacent(g.ideal(a).members(), g.ideal(b).members()) {
                return Err(Error::TheoremViolation {
                    check: "forest to independent set",
                    details: format!("subtrees {} and {} are adjacent", g.ideal(a), g.ideal(b)),
                });
            }
        }
    }
    Ok(MaxIndSet::from_sorted_members(members, Scope::Global))
}

/// Inverse direction: label each member by its leftover element, then
/// attach each member to its unique immediate container. The round trip
/// back through `forest_to_mis` is checked.
pub fn mis_to_forest(p: &Poset, g: &IdealGraph, m: &MaxIndSet) -> Result<PForest> {
    if m.scope() != Scope::Global {
        return Err(Error::RequiresGlobalSet {
            op: "forest construction",
        });
    }
    let lm = mis::label_map(p, g, m)?;
    let n = g.n();
    let mut parents = vec![0u32; n as usize];
    for (k, &v) in m.members().iter().enumerate() {
        let label = lm.element_of_member(k);
        let vm = g.ideal(v).members();
        let containers: Vec<usize> = m
            .members()
            .iter()
            .enumerate()
            .filter(|&(_, &w)| vm.is_strict_subset(g.ideal(w).members()))
            .map(|(l, _)| l)
            .collect();
        if containers.is_empty() {
            parents[(label - 1) as usize] = label;
            continue;
        }
        let minimal: Vec<usize> = containers
            .iter()
            .copied()
            .filter(|&l| {
                let wm = g.ideal(m.members()[l]).members();
                !containers
                    .iter()
                    .any(|&x| x != l && g.ideal(m.members()[x]).members().is_strict_subset(wm))
            })
            .collect();
        if minimal.len() != 1 {
            return Err(Error::TheoremViolation {
                check: "immediate container uniqueness",
                details: format!(
                    "member {} has {} minimal containers",
                    g.ideal(v),
                    minimal.len()
                ),
            });
        }
        parents[(label - 1) as usize] = lm.element_of_member(minimal[0]);
    }
    let forest = PForest::new(p, parents).map_err(|e| Error::TheoremViolation {
        check: "forest construction from independent set",
        details: e.to_string(),
    })?;
    let back = forest_to_mis(g, &forest)?;
    if back.members() != m.members() {
        return Err(Error::TheoremViolation {
            check: "bijection round trip",
            details: "subtree ideals differ from the original members".to_string(),
        });
    }
    Ok(forest)
}

/// All forests over the poset, via the bijection, ordered by parent map.
pub fn enumerate_pforests(p: &Poset, g: &IdealGraph, cap: u64) -> Result<Vec<PForest>> {
    let global = mis::enumerate_global_mis(g, cap)?;
    let mut forests = global
        .iter()
        .map(|m| mis_to_forest(p, g, m))
        .collect::<Result<Vec<_>>>()?;
    forests.sort();
    Ok(forests)
}

/// Descent data of an independent set: the descent elements and the
/// members they label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentData {
    /// Sorted descent elements.
    pub elements: Vec<u32>,
    /// Members labeled by a descent element, in canonical ideal order.
    pub ideals: Vec<Ideal>,
}

/// Descents of a global maximum independent set, computed two ways and
/// cross-checked: via the forest's parent map, and directly via
/// containment covers whose labels invert.
pub fn mis_descents(p: &Poset, g: &IdealGraph, m: &MaxIndSet) -> Result<DescentData> {
    let forest = mis_to_forest(p, g, m)?;
    let via_forest = forest.descents();

    let lm = mis::label_map(p, g, m)?;
    let mut via_covers = Vec::new();
    for (k, &va) in m.members().iter().enumerate() {
        for (l, &vb) in m.members().iter().enumerate() {
            if k == l {
                continue;
            }
            if mis::is_containment_cover_by_id(g, m, va, vb)
                && lm.element_of_member(k) > lm.element_of_member(l)
            {
                via_covers.push(lm.element_of_member(k));
            }
        }
    }
    via_covers.sort_unstable();
    via_covers.dedup();
    if via_forest != via_covers {
        return Err(Error::TheoremViolation {
            check: "descent characterization agreement",
            details: format!(
                "forest descents {via_forest:?} != containment-cover descents {via_covers:?}"
            ),
        });
    }

    let mut ideals: Vec<Ideal> = via_forest
        .iter()
        .map(|&e| g.ideal(m.members()[lm.member_of_element(e)]).clone())
        .collect();
    ideals.sort();
    Ok(DescentData {
        elements: via_forest,
        ideals,
    })
}

/// Descents of a single component's maximum independent set, read off a
/// global extension. Requires natural labeling, which makes the result
/// independent of how the other components are extended; with
/// `verify_cap` set, that independence is checked over all extensions.
pub fn component_descents(
    p: &Poset,
    g: &IdealGraph,
    lists: &[Vec<MaxIndSet>],
    r: usize,
    mr: &MaxIndSet,
    verify_cap: Option<u64>,
) -> Result<DescentData> {
    if !p.is_naturally_labeled() {
        return Err(Error::NotNaturallyLabeled);
    }
    if r >= g.components().len() {
        return Err(Error::BadComponent {
            id: r,
            count: g.components().len(),
        });
    }
    if mr.scope() != Scope::Component(r as u32)
        || !mr.members().iter().all(|&v| g.component_of(v) == r as u32)
    {
        return Err(Error::NotAMember {
            set: format!("{:?}", mr.members()),
        });
    }

    let restricted = |choice: &[usize]| -> Result<DescentData> {
        let mut members = mr.members().to_vec();
        for (other, &pick) in choice.iter().enumerate() {
            if other != r {
                members.extend_from_slice(lists[other][pick].members());
            }
        }
        members.sort_unstable();
        let global = MaxIndSet::from_sorted_members(members, Scope::Global);
        let dd = mis_descents(p, g, &global)?;
        let lm = mis::label_map(p, g, &global)?;
        let mut elements = Vec::new();
        let mut ideals = Vec::new();
        for &e in &dd.elements {
            let k = lm.member_of_element(e);
            let v = global.members()[k];
            if mr.contains_vertex(v) {
                elements.push(e);
                ideals.push(g.ideal(v).clone());
            }
        }
        ideals.sort();
        Ok(DescentData { elements, ideals })
    };

    let first_choice: Vec<usize> = vec![0; lists.len()];
    let base = restricted(&first_choice)?;

    if let Some(cap) = verify_cap {
        let mut product: u128 = 1;
        for (other, list) in lists.iter().enumerate() {
            if other != r {
                product = product.saturating_mul(list.len() as u128);
            }
        }
        if product > cap as u128 {
            return Err(Error::CapExceeded {
                stage: "descent extension verification",
                limit: cap,
                reached: product.min(u64::MAX as u128) as u64,
            });
        }
        let mut choice = vec![0usize; lists.len()];
        loop {
            let dd = restricted(&choice)?;
            if dd != base {
                return Err(Error::TheoremViolation {
                    check: "descent extension independence",
                    details: format!(
                        "descents {:?} under one extension, {:?} under another",
                        base.elements, dd.elements
                    ),
                });
            }
            // Advance the mixed-radix counter over the other components.
            let mut pos = 0;
            loop {
                if pos == lists.len() {
                    return Ok(base);
                }
                if pos == r {
                    pos += 1;
                    continue;
                }
                choice[pos] += 1;
                if choice[pos] < lists[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }
    Ok(base)
}

/// Descent data of every maximum independent set of every component,
/// one table per component, computed component-parallel.
pub fn component_descent_tables(
    p: &Poset,
    g: &IdealGraph,
    lists: &[Vec<MaxIndSet>],
    verify_cap: Option<u64>,
) -> Result<Vec<Vec<DescentData>>> {
    if !p.is_naturally_labeled() {
        return Err(Error::NotNaturallyLabeled);
    }
    exec::map_indexed(lists.len(), |r| {
        lists[r]
            .iter()
            .map(|mr| component_descents(p, g, lists, r, mr, verify_cap))
            .collect::<Result<Vec<_>>>()
    })
    .into_iter()
    .collect()
}

/// Outcome of checking that linear extensions of the poset split into
/// the linear extensions of its forests.
pub struct DecompositionReport {
    pub forests: Vec<PForest>,
    pub per_forest: Vec<u64>,
    pub total: u64,
}

/// Enumerates the poset's linear extensions and each forest's linear
/// extensions, checking every word is covered exactly once.
pub fn verify_decomposition(
    p: &Poset,
    max_ideals: u64,
    max_mis: u64,
    max_extensions: u64,
) -> Result<DecompositionReport> {
    let g = crate::ideal_graph::ideal_graph(p, max_ideals)?;
    let forests = enumerate_pforests(p, &g, max_mis)?;

    let mut remaining: HashSet<Vec<u32>> = HashSet::new();
    let total = p.try_for_each_extension(max_extensions, |w| {
        remaining.insert(w.to_vec());
    })?;

    let mut per_forest = Vec::with_capacity(forests.len());
    for f in &forests {
        let fp = f.as_poset();
        let mut count = 0u64;
        let mut stray = false;
        fp.try_for_each_extension(max_extensions, |w| {
            stray |= !remaining.remove(w);
            count += 1;
        })?;
        if stray {
            return Err(Error::TheoremViolation {
                check: "extension decomposition",
                details: format!(
                    "forest {:?} produced a word outside the remaining extensions",
                    f.parents()
                ),
            });
        }
        per_forest.push(count);
    }
    if !remaining.is_empty() {
        return Err(Error::TheoremViolation {
            check: "extension decomposition",
            details: format!("{} extensions not covered by any forest", remaining.len()),
        });
    }
    Ok(DecompositionReport {
        forests,
        per_forest,
        total,
    })
}
