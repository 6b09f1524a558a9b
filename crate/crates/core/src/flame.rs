//! Flame, fillable and tight predicates plus their witness constructions.
//!
//! A subdigraph is a flame when every non-root vertex v admits edge-disjoint
//! root→v paths covering all of δ(v), equivalently λ(root, v) = indeg(v). A
//! vertex set X is fillable when edge-disjoint rX-paths can end in each edge
//! of δ(X); the smallest fillable superset of X is its fill closure. A set T
//! containing v (and not the root) is v-tight when δ(T) is a strict
//! transversal of every full witness system for v; by a cut-cardinality
//! argument this is equivalent to |δ(T)| = indeg(v), which is what the
//! predicates here test (the definitional form lives in the oracle module).

use std::collections::BTreeMap;

use crate::digraph::{contract, in_edges, EdgeId, RootedDigraph, Subdigraph, VertexId, VertexSet};
use crate::error::{Error, Result};
use crate::pathflow::{in_g, max_path_system, max_system_blocked, Path, PathSystem};

/// True iff every non-root vertex has a full witness: λ(root, v) = indeg(v).
pub fn is_flame<S: Subdigraph>(d: &S) -> bool {
    d.host()
        .non_root_vertices()
        .all(|v| crate::pathflow::lambda(d, v) == d.indegree(v))
}

/// Edge-disjoint rX-paths, one ending in each edge of δ(X), or `None` when
/// `x` is not fillable. Computed by contracting `x` onto a sink and packing.
pub fn fillability_witness<S: Subdigraph>(d: &S, x: &VertexSet) -> Result<Option<Vec<Path>>> {
    let host = d.host();
    if x.contains(&d.root()) {
        return Err(Error::RootInSet);
    }
    if x.is_empty() {
        return Ok(Some(Vec::new()));
    }
    if x.iter().any(|v| v.index() >= host.vertex_count()) {
        return Err(Error::ForeignIndex);
    }
    let boundary = in_edges(d, x);
    let sink = *x.first().unwrap();
    let aux = contract(d, x, sink)?;
    let aux_sink = aux
        .vertex_by_name(host.vertex_name(sink))
        .expect("the representative survives the contraction");
    let system = max_path_system(&aux, aux_sink);
    if system.len() < boundary.len() {
        return Ok(None);
    }
    let mut witness = Vec::with_capacity(system.len());
    for p in system.paths() {
        let names = p.edges().iter().map(|&e| aux.edge_name(e));
        witness.push(Path::from_edge_names(host, names)?);
    }
    Ok(Some(witness))
}

/// Whether edge-disjoint rX-paths can end in every edge of δ(X).
pub fn is_fillable<S: Subdigraph>(d: &S, x: &VertexSet) -> Result<bool> {
    Ok(fillability_witness(d, x)?.is_some())
}

/// The smallest fillable superset of `x`.
///
/// Iterative procedure: while the current set is not fillable, run the
/// contracted maximum packing and add every vertex that can still reach the
/// sink in the residual digraph (the sink side of the sink-minimal cut;
/// such vertices are always residual-unreachable from the root, since a
/// residual root→…→sink walk through them would contradict maximality).
/// Each round grows the set, so this terminates.
pub fn fill_closure<S: Subdigraph>(d: &S, x: &VertexSet) -> Result<VertexSet> {
    let host = d.host();
    if x.contains(&d.root()) {
        return Err(Error::RootInSet);
    }
    if x.iter().any(|v| v.index() >= host.vertex_count()) {
        return Err(Error::ForeignIndex);
    }
    let mut cur = x.clone();
    loop {
        if cur.is_empty() {
            return Ok(cur);
        }
        let boundary = in_edges(d, &cur);
        let sink = *cur.first().unwrap();
        let aux = contract(d, &cur, sink)?;
        let aux_sink = aux
            .vertex_by_name(host.vertex_name(sink))
            .expect("the representative survives the contraction");
        let system = max_path_system(&aux, aux_sink);
        if system.len() == boundary.len() {
            return Ok(cur);
        }
        let keep = residual_reach_to(&aux, &system, aux_sink);
        let mut grew = false;
        for w in keep {
            if w == aux_sink {
                continue;
            }
            let hv = host
                .vertex_by_name(aux.vertex_name(w))
                .expect("contraction keeps vertex tokens");
            grew |= cur.insert(hv);
        }
        if !grew {
            return Err(Error::Internal("fill closure failed to grow".into()));
        }
    }
}

/// Vertices with a residual directed path to `goal`: traverses unused edges
/// backward and system edges forward.
fn residual_reach_to(d: &RootedDigraph, system: &PathSystem, goal: VertexId) -> VertexSet {
    let mut used = vec![false; d.edge_count()];
    for p in system.paths() {
        for &e in p.edges() {
            used[e.index()] = true;
        }
    }
    let mut reached = VertexSet::from([goal]);
    let mut stack = vec![goal];
    while let Some(w) = stack.pop() {
        for &e in d.in_adjacency(w) {
            if !used[e.index()] && reached.insert(d.tail(e)) {
                stack.push(d.tail(e));
            }
        }
        for &e in d.out_adjacency(w) {
            if used[e.index()] && reached.insert(d.head(e)) {
                stack.push(d.head(e));
            }
        }
    }
    reached
}

/// The largest v-tight set together with its cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightResult {
    pub vertex: VertexId,
    pub tight_set: VertexSet,
    pub cut: crate::digraph::EdgeSet,
}

/// Whether `t` is v-tight, via the cut criterion |δ(T)| = indeg(v).
///
/// Requires a full witness for v to exist (λ(root, v) = indeg(v)), v ∈ T and
/// the root outside T.
pub fn is_tight<S: Subdigraph>(d: &S, v: VertexId, t: &VertexSet) -> Result<bool> {
    let host = d.host();
    if t.contains(&d.root()) {
        return Err(Error::RootInSet);
    }
    if !t.contains(&v) {
        return Err(Error::VertexOutsideSet(host.vertex_name(v).to_string()));
    }
    let din = d.in_edges_of(v).into_iter().collect();
    if !in_g(d, v, &din)? {
        return Err(Error::NotWitnessable(host.vertex_name(v).to_string()));
    }
    Ok(in_edges(d, t).len() == d.indegree(v))
}

/// The ⊆-largest v-tight set: the residual-unreachable side of a maximum
/// witness flow for v. With indeg(v) = 0 this degenerates to the complement
/// of plain reachability from the root.
pub fn largest_tight_set<S: Subdigraph>(d: &S, v: VertexId) -> Result<TightResult> {
    let host = d.host();
    if v == d.root() {
        return Err(Error::TargetIsRoot);
    }
    let (system, blocked) = max_system_blocked(d, v);
    if system.len() != d.indegree(v) {
        return Err(Error::NotWitnessable(host.vertex_name(v).to_string()));
    }
    let cut = in_edges(d, &blocked);
    debug_assert!(blocked.contains(&v));
    debug_assert!(!blocked.contains(&d.root()));
    debug_assert_eq!(cut.len(), d.indegree(v));
    Ok(TightResult {
        vertex: v,
        tight_set: blocked,
        cut,
    })
}

/// For every edge e a root→head(e) path ending in e, edge-disjoint among the
/// paths of each head vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFamily {
    paths: BTreeMap<EdgeId, Path>,
}

impl WitnessFamily {
    pub fn path(&self, e: EdgeId) -> Option<&Path> {
        self.paths.get(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, &Path)> {
        self.paths.iter().map(|(e, p)| (*e, p))
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Fixes one full witness system per vertex (vertices in token order, paths
/// from the deterministic maximum packing) and indexes the paths by their
/// last edge. Requires the host to be a flame.
pub fn witness_family(d: &RootedDigraph) -> Result<WitnessFamily> {
    if !is_flame(d) {
        return Err(Error::NotAFlame);
    }
    let mut paths = BTreeMap::new();
    for v in d.non_root_vertices() {
        let system = max_path_system(d, v);
        debug_assert_eq!(system.len(), d.indegree(v));
        for p in system.paths() {
            paths.insert(p.last_edge(), p.clone());
        }
    }
    debug_assert_eq!(paths.len(), d.edge_count());
    Ok(WitnessFamily { paths })
}
