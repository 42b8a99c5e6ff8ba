//! The intersection graph of connected order ideals.
//!
//! Vertices are the nonempty connected order ideals of a poset. Two
//! vertices are adjacent when their ideals overlap nontrivially: the
//! intersection is nonempty and neither ideal contains the other.
//! Containment and disjointness both mean non-adjacency, which is what
//! makes maximum independent sets of this graph meaningful.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::exec;
use crate::poset::{union_find_components, Ideal, Poset};

/// Enumerates every nonempty connected order ideal, in canonical order
/// (cardinality, then bit-pattern value).
///
/// All down-closed subsets are generated by include/exclude decisions in
/// topological order, then filtered by cover-graph connectivity. The cap
/// bounds the number of down-closed subsets visited, so wildly
/// disconnected posets fail fast instead of thrashing.
pub fn enumerate_connected_ideals(p: &Poset, cap: u64) -> Result<Vec<Ideal>> {
    let n = p.n();
    let mut order: Vec<u32> = (1..=n).collect();
    order.sort_by_key(|&e| (p.down_set(e).len(), e));

    let mut out: Vec<ElemSet> = Vec::new();
    let mut visited = 0u64;
    let mut mask = ElemSet::empty(n);
    descend(p, &order, 0, &mut mask, &mut visited, cap, &mut out)?;

    let mut ideals: Vec<Ideal> = out.into_iter().map(Ideal::from_set_unchecked).collect();
    ideals.sort();
    Ok(ideals)
}

fn descend(
    p: &Poset,
    order: &[u32],
    k: usize,
    mask: &mut ElemSet,
    visited: &mut u64,
    cap: u64,
    out: &mut Vec<ElemSet>,
) -> Result<()> {
    if k == order.len() {
        *visited += 1;
        if *visited > cap {
            return Err(Error::CapExceeded {
                stage: "connected ideal enumeration",
                limit: cap,
                reached: *visited,
            });
        }
        if !mask.is_empty() && p.cover_connected(mask) {
            out.push(mask.clone());
        }
        return Ok(());
    }
    let e = order[k];
    descend(p, order, k + 1, mask, visited, cap, out)?;
    if p.lower_covers(e).iter().all(|&a| mask.contains(a)) {
        mask.insert(e);
        descend(p, order, k + 1, mask, visited, cap, out)?;
        mask.remove(e);
    }
    Ok(())
}

/// Intersection graph over the connected order ideals, with its connected
/// components and the induced subgraph on principal ideals.
pub struct IdealGraph {
    n: u32,
    ideals: Vec<Ideal>,
    neighbors: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    component_of: Vec<u32>,
    components: Vec<Vec<u32>>,
    principal_vertex: Vec<u32>,
    principal: PrincipalSubgraph,
}

/// Induced subgraph on the n principal ideals, keyed by element label.
pub struct PrincipalSubgraph {
    /// Element pairs (i, j) with i < j whose principal ideals are adjacent.
    pub edges: Vec<(u32, u32)>,
    /// Element groups, each sorted, ordered by smallest element.
    pub components: Vec<Vec<u32>>,
    /// 0-based component index per element.
    pub component_of_element: Vec<u32>,
}

pub(crate) fn ideals_adjacent(a: &ElemSet, b: &ElemSet) -> bool {
    a.intersects(b) && !a.is_subset(b) && !b.is_subset(a)
}

/// Builds the intersection graph over the given canonical ideal list.
pub fn build_ideal_graph(p: &Poset, ideals: Vec<Ideal>) -> IdealGraph {
    let count = ideals.len();
    let neighbors: Vec<Vec<u32>> = exec::map_indexed(count, |a| {
        let ma = ideals[a].members();
        (0..count)
            .filter(|&b| b != a && ideals_adjacent(ma, ideals[b].members()))
            .map(|b| b as u32)
            .collect()
    });

    let mut edges = Vec::new();
    for (a, nb) in neighbors.iter().enumerate() {
        for &b in nb {
            if (a as u32) < b {
                edges.push((a as u32, b));
            }
        }
    }

    let components = union_find_components(count, &edges);
    let mut component_of = vec![0u32; count];
    for (ci, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v as usize] = ci as u32;
        }
    }

    let principal_vertex: Vec<u32> = (1..=p.n())
        .map(|i| {
            let target = p.down_set(i);
            ideals
                .binary_search_by(|probe| probe.members().cmp(target))
                .expect("principal ideals are connected") as u32
        })
        .collect();

    let mut principal_edges = Vec::new();
    for i in 1..=p.n() {
        for j in (i + 1)..=p.n() {
            let vi = principal_vertex[(i - 1) as usize];
            let vj = principal_vertex[(j - 1) as usize];
            if neighbors[vi as usize].contains(&vj) {
                principal_edges.push((i, j));
            }
        }
    }
    let element_edges: Vec<(u32, u32)> = principal_edges
        .iter()
        .map(|&(i, j)| (i - 1, j - 1))
        .collect();
    let principal_components_raw = union_find_components(p.n() as usize, &element_edges);
    let principal_components: Vec<Vec<u32>> = principal_components_raw
        .iter()
        .map(|c| c.iter().map(|&e| e + 1).collect())
        .collect();
    let mut component_of_element = vec![0u32; p.n() as usize];
    for (ci, comp) in principal_components.iter().enumerate() {
        for &e in comp {
            component_of_element[(e - 1) as usize] = ci as u32;
        }
    }

    IdealGraph {
        n: p.n(),
        ideals,
        neighbors,
        edges,
        component_of,
        components,
        principal_vertex,
        principal: PrincipalSubgraph {
            edges: principal_edges,
            components: principal_components,
            component_of_element,
        },
    }
}

/// Enumerates connected ideals and builds the graph in one step.
pub fn ideal_graph(p: &Poset, cap: u64) -> Result<IdealGraph> {
    Ok(build_ideal_graph(p, enumerate_connected_ideals(p, cap)?))
}

impl IdealGraph {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.ideals.len()
    }

    /// Vertex ideals in canonical order; vertex ids index this slice.
    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn ideal(&self, v: u32) -> &Ideal {
        &self.ideals[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors[v as usize].len()
    }

    /// Edges as vertex-id pairs (a, b) with a < b.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// vertex id.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component_of(&self, v: u32) -> u32 {
        self.component_of[v as usize]
    }

    /// Vertex id of element i's principal ideal.
    pub fn principal_vertex(&self, i: u32) -> u32 {
        self.principal_vertex[(i - 1) as usize]
    }

    pub fn principal(&self) -> &PrincipalSubgraph {
        &self.principal
    }

    /// Resolves an ideal to its vertex id, if it is a vertex.
    pub fn vertex_of(&self, ideal: &Ideal) -> Option<u32> {
        self.ideals
            .binary_search_by(|probe| probe.cmp(ideal))
            .ok()
            .map(|v| v as u32)
    }

    pub fn vertex_of_set(&self, set: &ElemSet) -> Option<u32> {
        self.ideals
            .binary_search_by(|probe| probe.members().cmp(set))
            .ok()
            .map(|v| v as u32)
    }

    /// True when every vertex has degree at most one, i.e. the graph is a
    /// disjoint union of single vertices and single edges.
    pub fn is_forest_with_duplications(&self) -> bool {
        self.neighbors.iter().all(|nb| nb.len() <= 1)
    }
}

/// Subgraph induced by the principal ideals of an ideal's maximal
/// elements. Guaranteed connected; construction checks that.
pub struct GeneratorSubgraph {
    pub ideal: Ideal,
    pub generators: ElemSet,
    pub vertex_ids: Vec<u32>,
}

pub fn generator_subgraph(p: &Poset, g: &IdealGraph, ideal: &Ideal) -> Result<GeneratorSubgraph> {
    let Some(_) = g.vertex_of(ideal) else {
        return Err(Error::NotAConnectedIdeal {
            set: ideal.to_string(),
        });
    };
    let generators = p.generating_set(ideal)?;
    let vertex_ids: Vec<u32> = generators.elems().map(|i| g.principal_vertex(i)).collect();

    // Breadth-first reachability inside the induced vertex set.
    let mut seen = vec![false; vertex_ids.len()];
    let mut queue = vec![0usize];
    seen[0] = true;
    while let Some(k) = queue.pop() {
        let v = vertex_ids[k];
        for (m, &u) in vertex_ids.iter().enumerate() {
            if !seen[m] && g.neighbors(v).contains(&u) {
                seen[m] = true;
                queue.push(m);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::TheoremViolation {
            check: "generator subgraph connectivity",
            details: format!("generators of {ideal} induce a disconnected subgraph"),
        });
    }
    Ok(GeneratorSubgraph {
        ideal: ideal.clone(),
        generators,
        vertex_ids,
    })
}

/// Union of all vertex ideals of component r. Guaranteed to be a
/// connected order ideal and an isolated vertex of the graph; both are
/// checked here.
pub fn component_union_ideal(p: &Poset, g: &IdealGraph, r: usize) -> Result<Ideal> {
    let comps = g.components();
    if r >= comps.len() {
        return Err(Error::BadComponent {
            id: r,
            count: comps.len(),
        });
    }
    let mut union = ElemSet::empty(g.n());
    for &v in &comps[r] {
        union.union_with(g.ideal(v).members());
    }
    match p.is_connected_ideal(&union) {
        Ok(true) => {}
        _ => {
            return Err(Error::TheoremViolation {
                check: "component union ideal",
                details: format!("union {union} of component {r} is not a connected ideal"),
            })
        }
    }
    let Some(v) = g.vertex_of_set(&union) else {
        return Err(Error::TheoremViolation {
            check: "component union ideal",
            details: format!("union {union} of component {r} is not a vertex"),
        });
    };
    if g.degree(v) != 0 {
        return Err(Error::TheoremViolation {
            check: "component union ideal",
            details: format!("union {union} of component {r} is not isolated"),
        });
    }
    Ok(g.ideal(v).clone())
}
