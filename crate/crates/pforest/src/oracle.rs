//! Brute-force reference implementations. Everything here works from
//! first principles (definition checks over exhaustive enumeration) so
//! the structured pipeline can be validated against it, plus a seeded
//! random poset generator for corpus tests.

use num::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::forest::PForest;
use crate::genfun::QPoly;
use crate::ideal_graph::IdealGraph;
use crate::mis::{MaxIndSet, Scope};
use crate::poset::{major_index, PPartition, Poset};
use crate::series::Series;

/// Number of linear extensions by direct enumeration.
pub fn oracle_extension_count(p: &Poset, cap: u64) -> Result<u64> {
    p.try_for_each_extension(cap, |_| {})
}

/// Major-index distribution over the linear extensions, as a polynomial
/// in q, by direct enumeration.
pub fn oracle_maj_polynomial(p: &Poset, cap: u64) -> Result<QPoly> {
    let mut hist: Vec<BigInt> = Vec::new();
    p.try_for_each_extension(cap, |w| {
        let m = major_index(w) as usize;
        if hist.len() <= m {
            hist.resize(m + 1, BigInt::from(0));
        }
        hist[m] += 1;
    })?;
    Ok(QPoly::from_coeffs(hist))
}

/// Coefficients of the order-reversing map generating function up to
/// total degree `bound`, by enumerating every value vector with that
/// weight budget and keeping the ones the definition accepts.
pub fn oracle_ppartition_series(p: &Poset, bound: u32) -> Result<Series> {
    let n = p.n();
    let mut series = Series::zero(n, bound);
    let mut values = vec![0u64; n as usize];
    fill(p, bound as u64, 0, &mut values, &mut series);
    return Ok(series);

    fn fill(p: &Poset, budget: u64, idx: usize, values: &mut Vec<u64>, series: &mut Series) {
        if idx == values.len() {
            if PPartition::new(p, values.clone()).is_ok() {
                let expo: Vec<u16> = values.iter().map(|&v| v as u16).collect();
                series.insert_add(expo, BigInt::from(1));
            }
            return;
        }
        for v in 0..=budget {
            values[idx] = v;
            fill(p, budget - v, idx + 1, values, series);
        }
        values[idx] = 0;
    }
}

/// All forests whose subtrees are connected order ideals, by scanning
/// every acyclic parent map and keeping the ones the definition
/// accepts. Exponential in n, so n is capped at 8.
pub fn oracle_pforests(p: &Poset) -> Result<Vec<PForest>> {
    let n = p.n();
    if n > 8 {
        return Err(Error::CapExceeded {
            stage: "forest oracle size",
            limit: 8,
            reached: n as u64,
        });
    }
    let mut parents = vec![0u32; n as usize];
    let mut out = Vec::new();
    dfs(p, &mut parents, 0, &mut out);
    out.sort();
    return Ok(out);

    fn dfs(p: &Poset, parents: &mut Vec<u32>, i: usize, out: &mut Vec<PForest>) {
        let n = parents.len();
        if i == n {
            if let Ok(f) = PForest::new(p, parents.clone()) {
                out.push(f);
            }
            return;
        }
        let node = (i + 1) as u32;
        for cand in 1..=n as u32 {
            parents[i] = cand;
            // A new arc can only close a cycle through the node itself;
            // walk the assigned prefix to rule that out before recursing.
            // cand == node is a root, which is always fine.
            if cand != node {
                let mut cur = cand;
                let mut cycles = false;
                for _ in 0..=n {
                    if cur == node {
                        cycles = true;
                        break;
                    }
                    if cur > node {
                        break; // unassigned frontier
                    }
                    let up = parents[(cur - 1) as usize];
                    if up == cur {
                        break; // root
                    }
                    cur = up;
                }
                if cycles {
                    continue;
                }
            }
            dfs(p, parents, i + 1, out);
        }
        parents[i] = 0;
    }
}

/// All maximum independent sets of the whole graph by scanning every
/// vertex subset. Exponential in the vertex count, so it is capped
/// at 20.
pub fn oracle_global_mis(g: &IdealGraph) -> Result<Vec<MaxIndSet>> {
    let v = g.vertex_count();
    if v > 20 {
        return Err(Error::CapExceeded {
            stage: "independent set oracle size",
            limit: 20,
            reached: v as u64,
        });
    }
    let mut adj = vec![0u32; v];
    for &(a, b) in g.edges() {
        adj[a as usize] |= 1 << b;
        adj[b as usize] |= 1 << a;
    }
    let mut best = 0;
    let mut masks: Vec<u32> = Vec::new();
    for mask in 0..(1u32 << v) {
        let mut rest = mask;
        let mut independent = true;
        while rest != 0 {
            let x = rest.trailing_zeros();
            if adj[x as usize] & mask != 0 {
                independent = false;
                break;
            }
            rest &= rest - 1;
        }
        if !independent {
            continue;
        }
        let size = mask.count_ones();
        if size > best {
            best = size;
            masks.clear();
        }
        if size == best {
            masks.push(mask);
        }
    }
    let mut sets: Vec<MaxIndSet> = masks
        .into_iter()
        .map(|mask| {
            let members: Vec<u32> = (0..v as u32).filter(|&x| mask >> x & 1 == 1).collect();
            MaxIndSet::from_sorted_members(members, Scope::Global)
        })
        .collect();
    sets.sort();
    Ok(sets)
}

/// All nonempty down-closed subsets with connected restriction, by
/// scanning every subset of the ground set. Exponential in n, so n is
/// capped at 20.
pub fn oracle_connected_ideals(p: &Poset) -> Result<Vec<ElemSet>> {
    let n = p.n();
    if n > 20 {
        return Err(Error::CapExceeded {
            stage: "ideal oracle size",
            limit: 20,
            reached: n as u64,
        });
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let set = ElemSet::from_elems(n, (1..=n).filter(|&e| mask >> (e - 1) & 1 == 1));
        let down_closed = set.elems().all(|e| p.down_set(e).is_subset(&set));
        if down_closed && p.is_connected_ideal(&set)? {
            out.push(set);
        }
    }
    out.sort();
    Ok(out)
}

/// Seeded random poset: a random permutation fixes a compatible total
/// order, then each of the C(n, 2) pairs becomes a relation with
/// probability `density`. The result is usually not naturally labeled.
pub fn random_poset(n: u32, density: f64, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<u32> = (1..=n).collect();
    perm.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for i in 0..n as usize {
        for j in (i + 1)..n as usize {
            if rng.gen::<f64>() < density {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    Poset::new(n, &pairs).expect("relations drawn from a total order cannot cycle")
}
