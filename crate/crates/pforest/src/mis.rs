//! Maximum independent sets of the ideal intersection graph, per
//! component and globally, plus the member structure built on them:
//! strict-containment unions, label maps, and the containment-cover
//! relation between members.
//!
//! Key facts the code leans on (and asserts where cheap): members of an
//! independent set are pairwise nested or disjoint; every global maximum
//! independent set has exactly n members; removing from a member the
//! union of its strictly contained members leaves exactly one element,
//! and those leftover elements label the members bijectively.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::exec;
use crate::ideal_graph::IdealGraph;
use crate::poset::{Ideal, Poset};

/// Whether an independent set is maximum within one component or across
/// the whole graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Component(u32),
    Global,
}

/// An independent set of maximum size, as sorted vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MaxIndSet {
    members: Vec<u32>,
    scope: Scope,
}

impl MaxIndSet {
    pub(crate) fn from_sorted_members(members: Vec<u32>, scope: Scope) -> MaxIndSet {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        MaxIndSet { members, scope }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn member_ideals<'g>(&self, g: &'g IdealGraph) -> Vec<&'g Ideal> {
        self.members.iter().map(|&v| g.ideal(v)).collect()
    }
}

// Ord sorts by members first; Scope order is irrelevant but must exist.
impl PartialOrd for Scope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |s: &Scope| match s {
            Scope::Global => (0u32, 0u32),
            Scope::Component(r) => (1, *r),
        };
        key(self).cmp(&key(other))
    }
}

/// All maximum independent sets of component `r`, canonically ordered
/// (each set sorted by vertex id, sets ordered lexicographically).
///
/// Exhaustive branch and bound in two passes: first the maximum size,
/// then every set achieving it. The cap bounds the result count.
pub fn enumerate_component_mis(g: &IdealGraph, r: usize, cap: u64) -> Result<Vec<MaxIndSet>> {
    let comps = g.components();
    if r >= comps.len() {
        return Err(Error::BadComponent {
            id: r,
            count: comps.len(),
        });
    }
    let mut order: Vec<u32> = comps[r].clone();
    order.sort_by_key(|&v| (g.degree(v), v));

    let best = max_independent_size(g, &order);
    let mut sets = Vec::new();
    let mut chosen = Vec::new();
    let mut banned = vec![0u32; g.vertex_count()];
    collect_of_size(g, &order, 0, best, &mut chosen, &mut banned, cap, &mut sets)?;

    let mut sets: Vec<MaxIndSet> = sets
        .into_iter()
        .map(|mut members| {
            members.sort_unstable();
            MaxIndSet {
                members,
                scope: Scope::Component(r as u32),
            }
        })
        .collect();
    sets.sort();
    Ok(sets)
}

fn max_independent_size(g: &IdealGraph, order: &[u32]) -> u32 {
    fn rec(g: &IdealGraph, order: &[u32], idx: usize, size: u32, banned: &mut [u32], best: &mut u32) {
        if size + (order.len() - idx) as u32 <= *best {
            return;
        }
        if idx == order.len() {
            *best = (*best).max(size);
            return;
        }
        let v = order[idx];
        if banned[v as usize] == 0 {
            for &u in g.neighbors(v) {
                banned[u as usize] += 1;
            }
            rec(g, order, idx + 1, size + 1, banned, best);
            for &u in g.neighbors(v) {
                banned[u as usize] -= 1;
            }
        }
        rec(g, order, idx + 1, size, banned, best);
    }
    let mut best = 0;
    let mut banned = vec![0u32; g.vertex_count()];
    rec(g, order, 0, 0, &mut banned, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn collect_of_size(
    g: &IdealGraph,
    order: &[u32],
    idx: usize,
    target: u32,
    chosen: &mut Vec<u32>,
    banned: &mut [u32],
    cap: u64,
    out: &mut Vec<Vec<u32>>,
) -> Result<()> {
    if chosen.len() as u32 + ((order.len() - idx) as u32) < target {
        return Ok(());
    }
    if chosen.len() as u32 == target {
        if out.len() as u64 >= cap {
            return Err(Error::CapExceeded {
                stage: "component MIS enumeration",
                limit: cap,
                reached: out.len() as u64 + 1,
            });
        }
        out.push(chosen.clone());
        return Ok(());
    }
    if idx == order.len() {
        return Ok(());
    }
    let v = order[idx];
    if banned[v as usize] == 0 {
        chosen.push(v);
        for &u in g.neighbors(v) {
            banned[u as usize] += 1;
        }
        collect_of_size(g, order, idx + 1, target, chosen, banned, cap, out)?;
        for &u in g.neighbors(v) {
            banned[u as usize] -= 1;
        }
        chosen.pop();
    }
    collect_of_size(g, order, idx + 1, target, chosen, banned, cap, out)
}

/// Per-component MIS lists for every component, in component order.
pub fn component_mis_lists(g: &IdealGraph, cap: u64) -> Result<Vec<Vec<MaxIndSet>>> {
    let results = exec::map_indexed(g.components().len(), |r| enumerate_component_mis(g, r, cap));
    results.into_iter().collect()
}

/// All global maximum independent sets: one choice per component,
/// combined. Every set is checked to have exactly n members.
pub fn enumerate_global_mis(g: &IdealGraph, cap: u64) -> Result<Vec<MaxIndSet>> {
    let lists = component_mis_lists(g, cap)?;
    global_mis_from_lists(g, &lists, cap)
}

/// Combines per-component lists into the global product list.
pub fn global_mis_from_lists(
    g: &IdealGraph,
    lists: &[Vec<MaxIndSet>],
    cap: u64,
) -> Result<Vec<MaxIndSet>> {
    let mut product: u128 = 1;
    for list in lists {
        product = product.saturating_mul(list.len() as u128);
        if product > cap as u128 {
            return Err(Error::CapExceeded {
                stage: "global MIS enumeration",
                limit: cap,
                reached: cap + 1,
            });
        }
    }

    let mut out: Vec<MaxIndSet> = vec![MaxIndSet {
        members: Vec::new(),
        scope: Scope::Global,
    }];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for partial in &out {
            for set in list {
                let mut members = partial.members.clone();
                members.extend_from_slice(&set.members);
                next.push(MaxIndSet {
                    members,
                    scope: Scope::Global,
                });
            }
        }
        out = next;
    }
    for set in &mut out {
        set.members.sort_unstable();
        if set.members.len() != g.n() as usize {
            return Err(Error::TheoremViolation {
                check: "global MIS size",
                details: format!(
                    "global maximum independent set has {} members, expected {}",
                    set.members.len(),
                    g.n()
                ),
            });
        }
    }
    out.sort();
    Ok(out)
}

fn require_member(g: &IdealGraph, m: &MaxIndSet, j: &Ideal) -> Result<u32> {
    let v = g.vertex_of(j).ok_or_else(|| Error::NotAMember {
        set: j.to_string(),
    })?;
    if !m.contains_vertex(v) {
        return Err(Error::NotAMember {
            set: j.to_string(),
        });
    }
    Ok(v)
}

/// Union of the members strictly contained in member `j`. May be empty;
/// always a proper subset of `j`.
pub fn contained_union(g: &IdealGraph, m: &MaxIndSet, j: &Ideal) -> Result<ElemSet> {
    let v = require_member(g, m, j)?;
    Ok(contained_union_by_id(g, m, v))
}

pub(crate) fn contained_union_by_id(g: &IdealGraph, m: &MaxIndSet, v: u32) -> ElemSet {
    let jm = g.ideal(v).members();
    let mut u = ElemSet::empty(g.n());
    for &w in m.members() {
        let wm = g.ideal(w).members();
        if wm.is_strict_subset(jm) {
            u.union_with(wm);
        }
    }
    u
}

/// Members strictly contained in `j` that are maximal under inclusion
/// among those. Checked to be pairwise disjoint.
pub fn maximal_contained(g: &IdealGraph, m: &MaxIndSet, j: &Ideal) -> Result<Vec<Ideal>> {
    let v = require_member(g, m, j)?;
    let jm = g.ideal(v).members();
    let inside: Vec<u32> = m
        .members()
        .iter()
        .copied()
        .filter(|&w| g.ideal(w).members().is_strict_subset(jm))
        .collect();
    let mut maximal = Vec::new();
    for &w in &inside {
        let wm = g.ideal(w).members();
        if !inside
            .iter()
            .any(|&x| x != w && wm.is_strict_subset(g.ideal(x).members()))
        {
            maximal.push(w);
        }
    }
    for (a, &x) in maximal.iter().enumerate() {
        for &y in &maximal[a + 1..] {
            if g.ideal(x).members().intersects(g.ideal(y).members()) {
                return Err(Error::TheoremViolation {
                    check: "maximal contained members disjoint",
                    details: format!(
                        "members {} and {} inside {} overlap",
                        g.ideal(x),
                        g.ideal(y),
                        g.ideal(v)
                    ),
                });
            }
        }
    }
    Ok(maximal.into_iter().map(|w| g.ideal(w).clone()).collect())
}

/// Bijection between the members of a global maximum independent set and
/// the elements 1..n: each member keeps exactly one element once its
/// strictly contained members are removed, and that element is maximal
/// in the member.
pub struct LabelMap {
    element_of_member: Vec<u32>,
    member_of_element: Vec<u32>,
}

impl LabelMap {
    /// Label of the k-th member (index into the set's member list).
    pub fn element_of_member(&self, k: usize) -> u32 {
        self.element_of_member[k]
    }

    /// Member index labeled by element e.
    pub fn member_of_element(&self, e: u32) -> usize {
        self.member_of_element[(e - 1) as usize] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.element_of_member
    }
}

pub fn label_map(p: &Poset, g: &IdealGraph, m: &MaxIndSet) -> Result<LabelMap> {
    if m.scope() != Scope::Global {
        return Err(Error::RequiresGlobalSet { op: "label map" });
    }
    let n = g.n();
    let mut element_of_member = Vec::with_capacity(m.len());
    let mut member_of_element = vec![u32::MAX; n as usize];
    for (k, &v) in m.members().iter().enumerate() {
        let jm = g.ideal(v).members();
        let diff = jm.difference(&contained_union_by_id(g, m, v));
        if diff.len() != 1 {
            return Err(Error::TheoremViolation {
                check: "label map singleton",
                details: format!(
                    "member {} minus contained members is {diff}, not a singleton",
                    g.ideal(v)
                ),
            });
        }
        let e = diff.elems().next().unwrap();
        if p.up_set(e).intersection(jm).len() != 1 {
            return Err(Error::TheoremViolation {
                check: "label map maximality",
                details: format!("label {e} is not maximal in member {}", g.ideal(v)),
            });
        }
        if member_of_element[(e - 1) as usize] != u32::MAX {
            return Err(Error::TheoremViolation {
                check: "label map bijectivity",
                details: format!("element {e} labels two members"),
            });
        }
        member_of_element[(e - 1) as usize] = k as u32;
        element_of_member.push(e);
    }
    Ok(LabelMap {
        element_of_member,
        member_of_element,
    })
}

/// True iff member `a` is strictly contained in member `b` with no member
/// strictly between: the cover relation of inclusion restricted to `m`.
pub fn is_containment_cover(g: &IdealGraph, m: &MaxIndSet, a: &Ideal, b: &Ideal) -> Result<bool> {
    let va = require_member(g, m, a)?;
    let vb = require_member(g, m, b)?;
    Ok(is_containment_cover_by_id(g, m, va, vb))
}

pub(crate) fn is_containment_cover_by_id(g: &IdealGraph, m: &MaxIndSet, va: u32, vb: u32) -> bool {
    let am = g.ideal(va).members();
    let bm = g.ideal(vb).members();
    if !am.is_strict_subset(bm) {
        return false;
    }
    !m.members().iter().any(|&w| {
        w != va && w != vb && {
            let wm = g.ideal(w).members();
            am.is_strict_subset(wm) && wm.is_strict_subset(bm)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal_graph::ideal_graph;
    use crate::poset::sample6;

    fn set_names(g: &IdealGraph, m: &MaxIndSet) -> Vec<String> {
        m.members().iter().map(|&v| g.ideal(v).to_string()).collect()
    }

    #[test]
    fn path_component_has_three_maximum_sets() {
        let p = sample6();
        let g = ideal_graph(&p, 1 << 20).unwrap();
        let sets = enumerate_component_mis(&g, 3, 1 << 16).unwrap();
        let names: Vec<Vec<String>> = sets.iter().map(|m| set_names(&g, m)).collect();
        assert_eq!(
            names,
            vec![
                vec!["{4,5,6}".to_string(), "{1,3,4,5,6}".to_string()],
                vec!["{1,3,4,6}".to_string(), "{1,2,3,4,6}".to_string()],
                vec!["{1,3,4,6}".to_string(), "{1,3,4,5,6}".to_string()],
            ]
        );
        for r in [0usize, 1, 2, 4] {
            assert_eq!(enumerate_component_mis(&g, r, 1 << 16).unwrap().len(), 1);
        }
    }

    #[test]
    fn global_sets_combine_components() {
        let p = sample6();
        let g = ideal_graph(&p, 1 << 20).unwrap();
        let global = enumerate_global_mis(&g, 1 << 16).unwrap();
        assert_eq!(global.len(), 3);
        for m in &global {
            assert_eq!(m.len(), 6);
            assert_eq!(m.scope(), Scope::Global);
        }
        // Sorted by member ids: {0,1,2,3,6,7} < {0,1,2,4,5,7} < {0,1,2,4,6,7}.
        assert_eq!(global[0].members(), &[0, 1, 2, 3, 6, 7]);
        assert_eq!(global[1].members(), &[0, 1, 2, 4, 5, 7]);
        assert_eq!(global[2].members(), &[0, 1, 2, 4, 6, 7]);

        let err = enumerate_global_mis(&g, 2).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn contained_union_examples() {
        let p = sample6();
        let g = ideal_graph(&p, 1 << 20).unwrap();
        let global = enumerate_global_mis(&g, 1 << 16).unwrap();
        let m1 = &global[1]; // {3},{6},{4,6},{1,3,4,6},{1,2,3,4,6},{1,2,3,4,5,6}
        let j2 = p.principal_ideal(2).unwrap();
        assert_eq!(contained_union(&g, m1, &j2).unwrap().to_vec(), vec![1, 3, 4, 6]);
        let whole = g.ideal(7).clone();
        assert_eq!(
            contained_union(&g, m1, &whole).unwrap().to_vec(),
            vec![1, 2, 3, 4, 6]
        );
        let j3 = p.principal_ideal(3).unwrap();
        assert!(contained_union(&g, m1, &j3).unwrap().is_empty());
        // {4,5,6} is a vertex but not a member of m1.
        let j5 = p.principal_ideal(5).unwrap();
        assert!(matches!(
            contained_union(&g, m1, &j5),
            Err(Error::NotAMember { .. })
        ));
    }

    #[test]
    fn maximal_contained_members_are_disjoint() {
        let p = sample6();
        let g = ideal_graph(&p, 1 << 20).unwrap();
        let global = enumerate_global_mis(&g, 1 << 16).unwrap();
        let m1 = &global[1];
        let j1 = p.principal_ideal(1).unwrap();
        let u = maximal_contained(&g, m1, &j1).unwrap();
        let names: Vec<String> = u.iter().map(|j| j.to_string()).collect();
        assert_eq!(names, vec!["{3}", "{4,6}"]);

        let whole = g.ideal(7).clone();
        let u = maximal_contained(&g, m1, &whole).unwrap();
        let names: Vec<String> = u.iter().map(|j| j.to_string()).collect();
        assert_eq!(names, vec!["{1,2,3,4,6}"]);
    }

    #[test]
    fn label_map_for_first_global_set() {
        let p = sample6();
        let g = ideal_graph(&p, 1 << 20).unwrap();
        let global = enumerate_global_mis(&g, 1 << 16).unwrap();
        let m1 = &global[1];
        let lm = label_map(&p, &g, m1).unwrap();
        let pairs: Vec<(String, u32)> = m1
            .members()
            .iter()
            .enumerate()
            .map(|(k, &v)| (g.ideal(v).to_string(), lm.element_of_member(k)))
            .collect();
        assert_eq!(
            pairs,
            vec![
                ("{3}".to_string(), 3),
                ("{6}".to_string(), 6),
                ("{4,6}".to_string(), 4),
                ("{1,3,4,6}".to_string(), 1),
                ("{1,2,3,4,6}".to_string(), 2),
                ("{1,2,3,4,5,6}".to_string(), 5),
            ]
        );
        assert_eq!(lm.member_of_element(5), 5);

        let comp_set = &enumerate_component_mis(&g, 3, 16).unwrap()[0];
        assert!(matches!(
            label_map(&p, &g, comp_set),
            Err(Error::RequiresGlobalSet { .. })
        ));
    }

    #[test]
    fn containment_cover_relation() {
        let p = sample6();
        let g = ideal_graph(&p, 1 << 20).unwrap();
        let global = enumerate_global_mis(&g, 1 << 16).unwrap();
        let m1 = &global[1];
        let j1 = p.principal_ideal(1).unwrap();
        let j2 = p.principal_ideal(2).unwrap();
        let j4 = p.principal_ideal(4).unwrap();
        let j6 = p.principal_ideal(6).unwrap();
        assert!(is_containment_cover(&g, m1, &j1, &j2).unwrap());
        assert!(is_containment_cover(&g, m1, &j4, &j1).unwrap());
        // {6} < {4,6} < {1,3,4,6} blocks the cover from {6} to {1,3,4,6}.
        assert!(!is_containment_cover(&g, m1, &j6, &j1).unwrap());
        assert!(!is_containment_cover(&g, m1, &j2, &j1).unwrap());
    }
}
