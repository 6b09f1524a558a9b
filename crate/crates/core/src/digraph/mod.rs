//! Rooted multidigraph data model.
//!
//! Graphs are finite, may carry parallel edges, have no loops, and own a
//! distinguished root vertex with no in-edges. Edge identity is primary:
//! every edge has a stable printable id, parallel edges are distinguished by
//! id, and all set operations work over ids. Tokens are case-sensitive
//! strings at the I/O boundary and dense indices internally; indices are
//! assigned in lexicographic token order, so ascending-index iteration is
//! ascending-token iteration.

pub mod generate;
pub mod io;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Dense per-graph vertex index; the token lives in the owning graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Dense per-graph edge index; the token lives in the owning graph.
///
/// Indices are only meaningful relative to one graph. Derived graphs
/// (contractions) keep edge *tokens* stable, not indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// Builder-level description of one edge: printable id plus endpoint tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: String,
    pub tail: String,
    pub head: String,
}

impl EdgeRecord {
    pub fn new(id: impl Into<String>, tail: impl Into<String>, head: impl Into<String>) -> Self {
        EdgeRecord {
            id: id.into(),
            tail: tail.into(),
            head: head.into(),
        }
    }
}

/// A finite rooted multidigraph. Immutable after construction; all algorithms
/// in this crate take it by shared reference.
#[derive(Clone, Debug)]
pub struct RootedDigraph {
    vertex_names: Vec<String>,
    root: VertexId,
    edge_names: Vec<String>,
    tails: Vec<VertexId>,
    heads: Vec<VertexId>,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
    vertex_lookup: HashMap<String, VertexId>,
    edge_lookup: HashMap<String, EdgeId>,
}

impl PartialEq for RootedDigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names
            && self.root == other.root
            && self.edge_names == other.edge_names
            && self.tails == other.tails
            && self.heads == other.heads
    }
}

impl Eq for RootedDigraph {}

/// Validates and builds a rooted multidigraph.
///
/// Rejects duplicate vertex tokens and edge ids, loops, edges into the root,
/// and edges whose endpoints were not declared.
pub fn build_graph(vertices: &[String], root: &str, edges: &[EdgeRecord]) -> Result<RootedDigraph> {
    let mut names: Vec<String> = Vec::with_capacity(vertices.len());
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for v in vertices {
        if !seen.insert(v.as_str()) {
            return Err(Error::DuplicateVertex(v.clone()));
        }
        names.push(v.clone());
    }
    names.sort();
    let vertex_lookup: HashMap<String, VertexId> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), VertexId(i as u32)))
        .collect();
    let root_id = *vertex_lookup
        .get(root)
        .ok_or_else(|| Error::UndeclaredRoot(root.to_string()))?;

    let mut sorted: Vec<&EdgeRecord> = edges.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    for pair in sorted.windows(2) {
        if pair[0].id == pair[1].id {
            return Err(Error::DuplicateEdge(pair[0].id.clone()));
        }
    }

    let mut edge_names = Vec::with_capacity(sorted.len());
    let mut tails = Vec::with_capacity(sorted.len());
    let mut heads = Vec::with_capacity(sorted.len());
    for rec in &sorted {
        if rec.tail == rec.head {
            return Err(Error::LoopEdge(rec.id.clone()));
        }
        let tail = *vertex_lookup
            .get(&rec.tail)
            .ok_or_else(|| Error::UndeclaredEndpoint {
                id: rec.id.clone(),
                vertex: rec.tail.clone(),
            })?;
        let head = *vertex_lookup
            .get(&rec.head)
            .ok_or_else(|| Error::UndeclaredEndpoint {
                id: rec.id.clone(),
                vertex: rec.head.clone(),
            })?;
        if head == root_id {
            return Err(Error::EdgeIntoRoot(rec.id.clone()));
        }
        edge_names.push(rec.id.clone());
        tails.push(tail);
        heads.push(head);
    }

    let mut out_adj = vec![Vec::new(); names.len()];
    let mut in_adj = vec![Vec::new(); names.len()];
    for i in 0..edge_names.len() {
        let e = EdgeId(i as u32);
        out_adj[tails[i].index()].push(e);
        in_adj[heads[i].index()].push(e);
    }

    let edge_lookup = edge_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), EdgeId(i as u32)))
        .collect();

    Ok(RootedDigraph {
        vertex_names: names,
        root: root_id,
        edge_names,
        tails,
        heads,
        out_adj,
        in_adj,
        vertex_lookup,
        edge_lookup,
    })
}

impl RootedDigraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.index()]
    }

    pub fn tail(&self, e: EdgeId) -> VertexId {
        self.tails[e.index()]
    }

    pub fn head(&self, e: EdgeId) -> VertexId {
        self.heads[e.index()]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    /// Vertices in ascending token order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    /// Vertices other than the root, in ascending token order.
    pub fn non_root_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        let root = self.root;
        self.vertices().filter(move |&v| v != root)
    }

    /// Edges in ascending id order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count() as u32).map(EdgeId)
    }

    /// Out-edges of `v` in the full graph, ascending by id.
    pub fn out_adjacency(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adj[v.index()]
    }

    /// In-edges of `v` in the full graph, ascending by id.
    pub fn in_adjacency(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adj[v.index()]
    }

    pub fn edge_record(&self, e: EdgeId) -> EdgeRecord {
        EdgeRecord::new(
            self.edge_name(e),
            self.vertex_name(self.tail(e)),
            self.vertex_name(self.head(e)),
        )
    }

    /// Resolves printable edge ids into an edge set.
    pub fn edge_set_from_names<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<EdgeSet> {
        names
            .into_iter()
            .map(|n| {
                self.edge_by_name(n)
                    .ok_or_else(|| Error::UnknownEdge(n.to_string()))
            })
            .collect()
    }

    /// Resolves printable vertex tokens into a vertex set.
    pub fn vertex_set_from_names<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<VertexSet> {
        names
            .into_iter()
            .map(|n| {
                self.vertex_by_name(n)
                    .ok_or_else(|| Error::UnknownVertex(n.to_string()))
            })
            .collect()
    }
}

/// View of a spanning subdigraph of a host graph: the host plus an
/// edge-membership test. Implemented by [`RootedDigraph`] itself (all edges
/// present) and by [`EdgeSubset`].
pub trait Subdigraph {
    fn host(&self) -> &RootedDigraph;
    fn contains_edge(&self, e: EdgeId) -> bool;
    /// Number of member edges.
    fn member_count(&self) -> usize;

    fn root(&self) -> VertexId {
        self.host().root()
    }

    fn vertex_count(&self) -> usize {
        self.host().vertex_count()
    }

    /// Member out-edges of `v`, ascending by id.
    fn out_edges_of(&self, v: VertexId) -> Vec<EdgeId> {
        self.host()
            .out_adjacency(v)
            .iter()
            .copied()
            .filter(|&e| self.contains_edge(e))
            .collect()
    }

    /// Member in-edges of `v`, ascending by id.
    fn in_edges_of(&self, v: VertexId) -> Vec<EdgeId> {
        self.host()
            .in_adjacency(v)
            .iter()
            .copied()
            .filter(|&e| self.contains_edge(e))
            .collect()
    }

    fn indegree(&self, v: VertexId) -> usize {
        self.host()
            .in_adjacency(v)
            .iter()
            .filter(|&&e| self.contains_edge(e))
            .count()
    }

    fn member_edges(&self) -> EdgeSet {
        self.host()
            .edges()
            .filter(|&e| self.contains_edge(e))
            .collect()
    }
}

impl Subdigraph for RootedDigraph {
    fn host(&self) -> &RootedDigraph {
        self
    }

    fn contains_edge(&self, e: EdgeId) -> bool {
        e.index() < self.edge_count()
    }

    fn member_count(&self) -> usize {
        self.edge_count()
    }

    fn out_edges_of(&self, v: VertexId) -> Vec<EdgeId> {
        self.out_adj[v.index()].clone()
    }

    fn in_edges_of(&self, v: VertexId) -> Vec<EdgeId> {
        self.in_adj[v.index()].clone()
    }

    fn indegree(&self, v: VertexId) -> usize {
        self.in_adj[v.index()].len()
    }
}

impl<T: Subdigraph> Subdigraph for &T {
    fn host(&self) -> &RootedDigraph {
        (*self).host()
    }

    fn contains_edge(&self, e: EdgeId) -> bool {
        (*self).contains_edge(e)
    }

    fn member_count(&self) -> usize {
        (*self).member_count()
    }
}

/// A set of edge ids interpreted as a spanning subdigraph of the host, with
/// the same root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSubset<'g> {
    graph: &'g RootedDigraph,
    members: EdgeSet,
}

impl<'g> EdgeSubset<'g> {
    pub fn new(graph: &'g RootedDigraph, members: EdgeSet) -> Result<Self> {
        if members.iter().any(|e| e.index() >= graph.edge_count()) {
            return Err(Error::ForeignIndex);
        }
        Ok(EdgeSubset { graph, members })
    }

    pub fn empty(graph: &'g RootedDigraph) -> Self {
        EdgeSubset {
            graph,
            members: EdgeSet::new(),
        }
    }

    pub fn full(graph: &'g RootedDigraph) -> Self {
        EdgeSubset {
            graph,
            members: graph.edges().collect(),
        }
    }

    pub fn graph(&self) -> &'g RootedDigraph {
        self.graph
    }

    pub fn members(&self) -> &EdgeSet {
        &self.members
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.members.contains(&e)
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        debug_assert!(e.index() < self.graph.edge_count());
        self.members.insert(e)
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        self.members.remove(&e)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Materializes the subset as a standalone graph on the same vertex set,
    /// keeping every token.
    pub fn to_digraph(&self) -> RootedDigraph {
        let vertices: Vec<String> = self
            .graph
            .vertices()
            .map(|v| self.graph.vertex_name(v).to_string())
            .collect();
        let records: Vec<EdgeRecord> = self
            .members
            .iter()
            .map(|&e| self.graph.edge_record(e))
            .collect();
        build_graph(
            &vertices,
            self.graph.vertex_name(self.graph.root()),
            &records,
        )
        .expect("a subset of a valid graph is valid")
    }
}

impl Subdigraph for EdgeSubset<'_> {
    fn host(&self) -> &RootedDigraph {
        self.graph
    }

    fn contains_edge(&self, e: EdgeId) -> bool {
        self.members.contains(&e)
    }

    fn member_count(&self) -> usize {
        self.members.len()
    }
}

/// The in-cut δ(X): member edges whose head lies in `x` and tail outside.
pub fn in_edges<S: Subdigraph>(d: &S, x: &VertexSet) -> EdgeSet {
    let host = d.host();
    let mut out = EdgeSet::new();
    for &v in x {
        for &e in host.in_adjacency(v) {
            if d.contains_edge(e) && !x.contains(&host.tail(e)) {
                out.insert(e);
            }
        }
    }
    out
}

/// Contracts the vertices of `u_set` to the representative `u`.
///
/// Edges internal to the set are deleted; crossing edges are re-attached to
/// `u` and keep their ids; when contracting onto the root, resulting in-edges
/// of the root are deleted. The root itself may only be contracted away if it
/// is the representative.
pub fn contract<S: Subdigraph>(d: &S, u_set: &VertexSet, u: VertexId) -> Result<RootedDigraph> {
    let host = d.host();
    if !u_set.contains(&u) {
        return Err(Error::ContractionTargetOutside);
    }
    if u_set.iter().any(|v| v.index() >= host.vertex_count()) {
        return Err(Error::ForeignIndex);
    }
    if u_set.contains(&host.root()) && u != host.root() {
        return Err(Error::ContractionSwallowsRoot);
    }

    let vertices: Vec<String> = host
        .vertices()
        .filter(|v| !u_set.contains(v) || *v == u)
        .map(|v| host.vertex_name(v).to_string())
        .collect();

    let mut records = Vec::new();
    for e in host.edges() {
        if !d.contains_edge(e) {
            continue;
        }
        let tail_in = u_set.contains(&host.tail(e));
        let head_in = u_set.contains(&host.head(e));
        if tail_in && head_in {
            continue;
        }
        let tail = if tail_in { u } else { host.tail(e) };
        let head = if head_in { u } else { host.head(e) };
        if u == host.root() && head == host.root() {
            continue;
        }
        records.push(EdgeRecord::new(
            host.edge_name(e),
            host.vertex_name(tail),
            host.vertex_name(head),
        ));
    }

    build_graph(&vertices, host.vertex_name(host.root()), &records)
}

pub use generate::random_digraph;
pub use io::{parse_edge_ids, parse_graph, serialize_edge_names, serialize_graph};

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> RootedDigraph {
        build_graph(
            &["r".into(), "a".into(), "b".into()],
            "r",
            &[
                EdgeRecord::new("e1", "r", "a"),
                EdgeRecord::new("e2", "r", "b"),
                EdgeRecord::new("e3", "a", "b"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn builds_empty_graph() {
        let g = build_graph(&["r".into()], "r", &[]).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertex_name(g.root()), "r");
    }

    #[test]
    fn builds_g1() {
        let g = g1();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        let e3 = g.edge_by_name("e3").unwrap();
        assert_eq!(g.vertex_name(g.tail(e3)), "a");
        assert_eq!(g.vertex_name(g.head(e3)), "b");
    }

    #[test]
    fn rejects_edge_into_root() {
        let err = build_graph(
            &["r".into(), "a".into()],
            "r",
            &[EdgeRecord::new("e1", "a", "r")],
        )
        .unwrap_err();
        assert!(matches!(err, Error::EdgeIntoRoot(id) if id == "e1"));
    }

    #[test]
    fn rejects_loops_duplicates_and_unknown_endpoints() {
        let vs: Vec<String> = vec!["r".into(), "a".into()];
        assert!(matches!(
            build_graph(&vs, "r", &[EdgeRecord::new("e1", "a", "a")]),
            Err(Error::LoopEdge(_))
        ));
        assert!(matches!(
            build_graph(
                &vs,
                "r",
                &[
                    EdgeRecord::new("e1", "r", "a"),
                    EdgeRecord::new("e1", "r", "a")
                ]
            ),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            build_graph(&vs, "r", &[EdgeRecord::new("e1", "r", "z")]),
            Err(Error::UndeclaredEndpoint { .. })
        ));
        assert!(matches!(
            build_graph(&["r".into(), "r".into()], "r", &[]),
            Err(Error::DuplicateVertex(_))
        ));
    }

    #[test]
    fn in_edges_matches_direct_enumeration() {
        let g = g1();
        let b = g.vertex_by_name("b").unwrap();
        let a = g.vertex_by_name("a").unwrap();
        let delta_b = in_edges(&g, &VertexSet::from([b]));
        assert_eq!(delta_b, g.edge_set_from_names(["e2", "e3"]).unwrap());
        let delta_ab = in_edges(&g, &VertexSet::from([a, b]));
        assert_eq!(delta_ab, g.edge_set_from_names(["e1", "e2"]).unwrap());
        assert!(in_edges(&g, &VertexSet::new()).is_empty());
    }

    #[test]
    fn contract_merges_and_deletes_internal_edges() {
        let g = g1();
        let a = g.vertex_by_name("a").unwrap();
        let b = g.vertex_by_name("b").unwrap();
        let c = contract(&g, &VertexSet::from([a, b]), b).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 2);
        for id in ["e1", "e2"] {
            let e = c.edge_by_name(id).unwrap();
            assert_eq!(c.vertex_name(c.tail(e)), "r");
            assert_eq!(c.vertex_name(c.head(e)), "b");
        }
        assert!(c.edge_by_name("e3").is_none());
    }

    #[test]
    fn contract_singleton_is_identity() {
        let g = g1();
        let a = g.vertex_by_name("a").unwrap();
        let c = contract(&g, &VertexSet::from([a]), a).unwrap();
        assert_eq!(c, g);
    }

    #[test]
    fn contract_onto_root_drops_new_root_in_edges() {
        let g = g1();
        let a = g.vertex_by_name("a").unwrap();
        let c = contract(&g, &VertexSet::from([g.root(), a]), g.root()).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert!(c.edge_by_name("e1").is_none());
        for id in ["e2", "e3"] {
            let e = c.edge_by_name(id).unwrap();
            assert_eq!(c.vertex_name(c.tail(e)), "r");
            assert_eq!(c.vertex_name(c.head(e)), "b");
        }
    }

    #[test]
    fn contract_rejects_bad_representative() {
        let g = g1();
        let a = g.vertex_by_name("a").unwrap();
        let b = g.vertex_by_name("b").unwrap();
        assert!(matches!(
            contract(&g, &VertexSet::from([b]), a),
            Err(Error::ContractionTargetOutside)
        ));
        assert!(matches!(
            contract(&g, &VertexSet::from([g.root(), a]), a),
            Err(Error::ContractionSwallowsRoot)
        ));
    }

    #[test]
    fn graphs_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<RootedDigraph>();
        assert_send_sync::<EdgeSubset<'static>>();
    }

    #[test]
    fn edge_subset_respects_membership() {
        let g = g1();
        let members = g.edge_set_from_names(["e1", "e3"]).unwrap();
        let sub = EdgeSubset::new(&g, members).unwrap();
        let b = g.vertex_by_name("b").unwrap();
        assert_eq!(sub.indegree(b), 1);
        assert_eq!(sub.in_edges_of(b), vec![g.edge_by_name("e3").unwrap()]);
        assert_eq!(sub.member_count(), 2);
    }
}
