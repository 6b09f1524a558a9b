//! Exponential-time reference implementations, used as ground truth for
//! small instances. Deliberately naive: everything enumerates simple paths
//! and subsets directly off the definitions, with a hard budget so the
//! exhaustive suites stay fast.

use std::collections::{BTreeSet, HashMap};

use crate::digraph::{
    build_graph, in_edges, EdgeId, EdgeRecord, EdgeSet, RootedDigraph, Subdigraph, VertexId,
    VertexSet,
};
use crate::error::{Error, Result};

/// Instance-size cap for the oracle operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl OracleBudget {
    pub const fn new(max_vertices: usize, max_edges: usize) -> Self {
        OracleBudget {
            max_vertices,
            max_edges,
        }
    }

    /// Budget for exhaustive product suites over all small graphs.
    pub const fn exhaustive() -> Self {
        OracleBudget::new(4, 5)
    }

    /// Budget for targeted hand-picked cases.
    pub const fn targeted() -> Self {
        OracleBudget::new(6, 8)
    }

    fn admit<S: Subdigraph>(&self, d: &S) -> Result<()> {
        if d.vertex_count() > self.max_vertices
            || d.member_count() > self.max_edges
            || d.host().edge_count() > 64
        {
            return Err(Error::BudgetExceeded);
        }
        Ok(())
    }
}

fn edge_mask(edges: &[EdgeId]) -> u64 {
    edges.iter().fold(0u64, |m, e| m | (1 << e.index()))
}

/// All simple paths from the root whose only vertex in `x` is the terminus.
fn paths_into<S: Subdigraph>(d: &S, x: &VertexSet) -> Vec<Vec<EdgeId>> {
    fn dfs<S: Subdigraph>(
        d: &S,
        x: &VertexSet,
        at: VertexId,
        on_walk: &mut [bool],
        edges: &mut Vec<EdgeId>,
        result: &mut Vec<Vec<EdgeId>>,
    ) {
        let host = d.host();
        for e in d.out_edges_of(at) {
            let h = host.head(e);
            if x.contains(&h) {
                edges.push(e);
                result.push(edges.clone());
                edges.pop();
            } else if !on_walk[h.index()] {
                on_walk[h.index()] = true;
                edges.push(e);
                dfs(d, x, h, on_walk, edges, result);
                edges.pop();
                on_walk[h.index()] = false;
            }
        }
    }

    let mut result = Vec::new();
    if x.contains(&d.root()) {
        return result;
    }
    let mut on_walk = vec![false; d.vertex_count()];
    on_walk[d.root().index()] = true;
    dfs(d, x, d.root(), &mut on_walk, &mut Vec::new(), &mut result);
    result
}

fn max_disjoint(masks: &[u64]) -> usize {
    fn rec(i: usize, used: u64, masks: &[u64], memo: &mut HashMap<(usize, u64), usize>) -> usize {
        if i == masks.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(i, used)) {
            return v;
        }
        let mut best = rec(i + 1, used, masks, memo);
        if masks[i] & used == 0 {
            best = best.max(1 + rec(i + 1, used | masks[i], masks, memo));
        }
        memo.insert((i, used), best);
        best
    }
    rec(0, 0, masks, &mut HashMap::new())
}

/// Exact λ(root, v) by exhaustive search over edge-disjoint path families.
pub fn oracle_lambda<S: Subdigraph>(d: &S, v: VertexId, budget: OracleBudget) -> Result<usize> {
    budget.admit(d)?;
    if v == d.root() {
        return Err(Error::TargetIsRoot);
    }
    let paths = paths_into(d, &VertexSet::from([v]));
    let masks: Vec<u64> = paths.iter().map(|p| edge_mask(p)).collect();
    Ok(max_disjoint(&masks))
}

/// Is there an edge-disjoint family of r→x paths whose last edges cover
/// `need`?
fn exists_cover<S: Subdigraph>(d: &S, x: &VertexSet, need: &EdgeSet) -> bool {
    if need.is_empty() {
        return true;
    }
    let need: Vec<EdgeId> = need.iter().copied().collect();
    let paths = paths_into(d, x);
    let mut options: Vec<Vec<u64>> = vec![Vec::new(); need.len()];
    for p in &paths {
        if let Some(slot) = need.iter().position(|&e| e == *p.last().unwrap()) {
            options[slot].push(edge_mask(p));
        }
    }

    fn rec(slot: usize, used: u64, options: &[Vec<u64>]) -> bool {
        if slot == options.len() {
            return true;
        }
        options[slot]
            .iter()
            .any(|&m| m & used == 0 && rec(slot + 1, used | m, options))
    }
    rec(0, 0, &options)
}

/// Definitional flame check: for each vertex, search for an edge-disjoint
/// family whose last edges are exactly its in-edges.
pub fn oracle_is_flame<S: Subdigraph>(d: &S, budget: OracleBudget) -> Result<bool> {
    budget.admit(d)?;
    Ok(d.host().non_root_vertices().all(|v| {
        let need: EdgeSet = d.in_edges_of(v).into_iter().collect();
        exists_cover(d, &VertexSet::from([v]), &need)
    }))
}

/// Definitional fillability check.
pub fn oracle_is_fillable<S: Subdigraph>(
    d: &S,
    x: &VertexSet,
    budget: OracleBudget,
) -> Result<bool> {
    budget.admit(d)?;
    if x.contains(&d.root()) {
        return Err(Error::RootInSet);
    }
    Ok(exists_cover(d, x, &in_edges(d, x)))
}

/// The smallest fillable superset of `x`, as the intersection of all
/// fillable supersets found by subset enumeration.
pub fn oracle_fill<S: Subdigraph>(d: &S, x: &VertexSet, budget: OracleBudget) -> Result<VertexSet> {
    budget.admit(d)?;
    if x.contains(&d.root()) {
        return Err(Error::RootInSet);
    }
    let host = d.host();
    let others: Vec<VertexId> = host
        .non_root_vertices()
        .filter(|v| !x.contains(v))
        .collect();
    let mut intersection: VertexSet = host.non_root_vertices().collect();
    for mask in 0u32..(1 << others.len()) {
        let mut candidate = x.clone();
        for (i, &v) in others.iter().enumerate() {
            if mask & (1 << i) != 0 {
                candidate.insert(v);
            }
        }
        if exists_cover(d, &candidate, &in_edges(d, &candidate)) {
            intersection = intersection.intersection(&candidate).copied().collect();
        }
    }
    Ok(intersection)
}

/// Every full witness system for δ(v), as lists of edge lists. Empty in-edge
/// sets yield the single empty family.
fn all_full_witnesses<S: Subdigraph>(d: &S, v: VertexId) -> Vec<Vec<Vec<EdgeId>>> {
    let need: Vec<EdgeId> = d.in_edges_of(v);
    let paths = paths_into(d, &VertexSet::from([v]));
    let mut options: Vec<Vec<usize>> = vec![Vec::new(); need.len()];
    for (i, p) in paths.iter().enumerate() {
        if let Some(slot) = need.iter().position(|&e| e == *p.last().unwrap()) {
            options[slot].push(i);
        }
    }
    let masks: Vec<u64> = paths.iter().map(|p| edge_mask(p)).collect();

    fn rec(
        slot: usize,
        used: u64,
        chosen: &mut Vec<usize>,
        options: &[Vec<usize>],
        masks: &[u64],
        families: &mut Vec<Vec<usize>>,
    ) {
        if slot == options.len() {
            families.push(chosen.clone());
            return;
        }
        for &i in &options[slot] {
            if masks[i] & used == 0 {
                chosen.push(i);
                rec(slot + 1, used | masks[i], chosen, options, masks, families);
                chosen.pop();
            }
        }
    }

    let mut families = Vec::new();
    rec(0, 0, &mut Vec::new(), &options, &masks, &mut families);
    families
        .into_iter()
        .map(|f| f.into_iter().map(|i| paths[i].clone()).collect())
        .collect()
}

fn strict_transversal_of_family(cut: &EdgeSet, family: &[Vec<EdgeId>]) -> bool {
    let mut covered = EdgeSet::new();
    for path in family {
        let hits: Vec<EdgeId> = path.iter().copied().filter(|e| cut.contains(e)).collect();
        if hits.len() != 1 {
            return false;
        }
        covered.insert(hits[0]);
    }
    covered == *cut
}

/// All v-tight sets by the definition: every candidate T ∋ v (root excluded)
/// whose cut is a strict transversal of every full witness system. Errors
/// when no full witness exists at all.
pub fn oracle_tight_sets<S: Subdigraph>(
    d: &S,
    v: VertexId,
    budget: OracleBudget,
) -> Result<BTreeSet<VertexSet>> {
    budget.admit(d)?;
    if v == d.root() {
        return Err(Error::TargetIsRoot);
    }
    let witnesses = all_full_witnesses(d, v);
    if witnesses.is_empty() {
        return Err(Error::NotWitnessable(d.host().vertex_name(v).to_string()));
    }
    let host = d.host();
    let others: Vec<VertexId> = host.non_root_vertices().filter(|&w| w != v).collect();
    let mut result = BTreeSet::new();
    for mask in 0u32..(1 << others.len()) {
        let mut t = VertexSet::from([v]);
        for (i, &w) in others.iter().enumerate() {
            if mask & (1 << i) != 0 {
                t.insert(w);
            }
        }
        let cut = in_edges(d, &t);
        if witnesses
            .iter()
            .all(|f| strict_transversal_of_family(&cut, f))
        {
            result.insert(t);
        }
    }
    Ok(result)
}

/// All edge-disjoint families of root→v paths (any size, including empty).
/// Supports exhaustive checks that quantify over partial witness systems.
pub fn oracle_disjoint_families<S: Subdigraph>(
    d: &S,
    v: VertexId,
    budget: OracleBudget,
) -> Result<Vec<Vec<Vec<EdgeId>>>> {
    budget.admit(d)?;
    if v == d.root() {
        return Err(Error::TargetIsRoot);
    }
    let paths = paths_into(d, &VertexSet::from([v]));
    let masks: Vec<u64> = paths.iter().map(|p| edge_mask(p)).collect();

    fn rec(i: usize, used: u64, chosen: &mut Vec<usize>, masks: &[u64], out: &mut Vec<Vec<usize>>) {
        if i == masks.len() {
            out.push(chosen.clone());
            return;
        }
        rec(i + 1, used, chosen, masks, out);
        if masks[i] & used == 0 {
            chosen.push(i);
            rec(i + 1, used | masks[i], chosen, masks, out);
            chosen.pop();
        }
    }

    let mut picked = Vec::new();
    rec(0, 0, &mut Vec::new(), &masks, &mut picked);
    Ok(picked
        .into_iter()
        .map(|f| f.into_iter().map(|i| paths[i].clone()).collect())
        .collect())
}

/// Is there an edge-disjoint family of exactly `size` root→v paths whose
/// first edges cover `root_out` and whose last edges cover `target_in`?
/// Backs the blocked side of the augmentation dichotomy in tests.
pub fn oracle_exists_system<S: Subdigraph>(
    d: &S,
    v: VertexId,
    size: usize,
    root_out: &EdgeSet,
    target_in: &EdgeSet,
    budget: OracleBudget,
) -> Result<bool> {
    budget.admit(d)?;
    if v == d.root() {
        return Err(Error::TargetIsRoot);
    }
    let paths = paths_into(d, &VertexSet::from([v]));
    let masks: Vec<u64> = paths.iter().map(|p| edge_mask(p)).collect();

    struct Search<'a> {
        paths: &'a [Vec<EdgeId>],
        masks: &'a [u64],
        size: usize,
        root_out: &'a EdgeSet,
        target_in: &'a EdgeSet,
    }

    impl Search<'_> {
        fn rec(
            &self,
            i: usize,
            count: usize,
            used: u64,
            firsts: &mut EdgeSet,
            lasts: &mut EdgeSet,
        ) -> bool {
            if count == self.size {
                return self.root_out.is_subset(firsts) && self.target_in.is_subset(lasts);
            }
            if i == self.paths.len() || self.paths.len() - i < self.size - count {
                return false;
            }
            if self.rec(i + 1, count, used, firsts, lasts) {
                return true;
            }
            if self.masks[i] & used == 0 {
                let p = &self.paths[i];
                let first_new = firsts.insert(p[0]);
                let last_new = lasts.insert(*p.last().unwrap());
                let found = self.rec(i + 1, count + 1, used | self.masks[i], firsts, lasts);
                if first_new {
                    firsts.remove(&p[0]);
                }
                if last_new {
                    lasts.remove(p.last().unwrap());
                }
                if found {
                    return true;
                }
            }
            false
        }
    }

    let search = Search {
        paths: &paths,
        masks: &masks,
        size,
        root_out,
        target_in,
    };
    Ok(search.rec(0, 0, 0, &mut EdgeSet::new(), &mut EdgeSet::new()))
}

/// Every rooted multidigraph with at most the given number of vertices and
/// edges, up to edge-id relabeling: for each vertex count the edge multisets
/// over all (tail, head) arc types are enumerated, and edges are named
/// `e1..` in multiset order. Vertices are `r`, `a`, `b`, …, so all graphs on
/// the same vertex count share their vertex set.
pub fn enumerate_rooted_multidigraphs(max_vertices: usize, max_edges: usize) -> Vec<RootedDigraph> {
    const LETTERS: [&str; 5] = ["a", "b", "c", "d", "e"];
    assert!(max_vertices >= 1 && max_vertices <= 1 + LETTERS.len());
    assert!(max_edges <= 9, "single-digit ids keep lexicographic order");

    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let mut vertices: Vec<String> = vec!["r".to_string()];
        vertices.extend(LETTERS[..n - 1].iter().map(|s| s.to_string()));

        let mut arcs: Vec<(String, String)> = Vec::new();
        for t in &vertices {
            for h in &vertices[1..] {
                if t != h {
                    arcs.push((t.clone(), h.clone()));
                }
            }
        }

        fn rec(
            arcs: &[(String, String)],
            vertices: &[String],
            start: usize,
            remaining: usize,
            chosen: &mut Vec<usize>,
            out: &mut Vec<RootedDigraph>,
        ) {
            if remaining == 0 {
                let records: Vec<EdgeRecord> = chosen
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| {
                        EdgeRecord::new(format!("e{}", i + 1), arcs[a].0.clone(), arcs[a].1.clone())
                    })
                    .collect();
                out.push(
                    build_graph(vertices, "r", &records).expect("enumerated instances are valid"),
                );
                return;
            }
            for a in start..arcs.len() {
                chosen.push(a);
                rec(arcs, vertices, a, remaining - 1, chosen, out);
                chosen.pop();
            }
        }

        for m in 0..=max_edges {
            rec(&arcs, &vertices, 0, m, &mut Vec::new(), &mut out);
        }
    }
    out
}
