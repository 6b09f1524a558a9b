//! Edge-disjoint path packing toward a target vertex.
//!
//! The central primitive is [`augment`]: given a system of edge-disjoint
//! root→v paths it either returns a system that is larger by exactly one path
//! and keeps every covered root-out and v-in edge covered, or it returns the
//! set of vertices unreachable from the root in the residual digraph, whose
//! in-cut is a strict transversal of the input system. Everything else
//! (maximum packings, local connectivity, witness extension) iterates this
//! dichotomy.
//!
//! Determinism: residual search is breadth-first with arcs explored in
//! ascending edge-id order, and path peeling always follows the smallest
//! available edge id.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::digraph::{
    contract, in_edges, EdgeId, EdgeSet, EdgeSubset, RootedDigraph, Subdigraph, VertexId, VertexSet,
};
use crate::error::{Error, Result};
use crate::flame::fillability_witness;

/// A directed path, identified with its edge sequence. The vertex sequence is
/// stored alongside (`vertices.len() == edges.len() + 1`) so simplicity
/// checks are immediate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

fn walk_vertices(host: &RootedDigraph, edges: &[EdgeId]) -> Result<Vec<VertexId>> {
    let first = *edges.first().ok_or(Error::EmptyPath)?;
    if edges.iter().any(|e| e.index() >= host.edge_count()) {
        return Err(Error::ForeignIndex);
    }
    let mut vertices = Vec::with_capacity(edges.len() + 1);
    vertices.push(host.tail(first));
    for pair in edges.windows(2) {
        if host.head(pair[0]) != host.tail(pair[1]) {
            return Err(Error::DisconnectedPath);
        }
    }
    for &e in edges {
        vertices.push(host.head(e));
    }
    let distinct: BTreeSet<VertexId> = vertices.iter().copied().collect();
    if distinct.len() != vertices.len() {
        return Err(Error::NonSimplePath);
    }
    Ok(vertices)
}

impl Path {
    /// Validates shape against the host: nonempty, consecutive edges share
    /// head→tail, no repeated vertex.
    pub fn new(host: &RootedDigraph, edges: Vec<EdgeId>) -> Result<Self> {
        let vertices = walk_vertices(host, &edges)?;
        Ok(Path { edges, vertices })
    }

    pub fn from_edge_names<'a>(
        host: &RootedDigraph,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let edges = names
            .into_iter()
            .map(|n| {
                host.edge_by_name(n)
                    .ok_or_else(|| Error::UnknownEdge(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Path::new(host, edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first_edge(&self) -> EdgeId {
        self.edges[0]
    }

    pub fn last_edge(&self) -> EdgeId {
        *self.edges.last().unwrap()
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn terminus(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    fn check_shape(&self, host: &RootedDigraph) -> Result<()> {
        let vertices = walk_vertices(host, &self.edges)?;
        if vertices != self.vertices {
            return Err(Error::MalformedSystem(
                "path vertex cache disagrees with the host".into(),
            ));
        }
        Ok(())
    }
}

/// Pairwise edge-disjoint root→target paths. Paths are kept sorted by last
/// edge id; since last edges are distinct in-edges of the target this is a
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    target: VertexId,
    paths: Vec<Path>,
}

impl PathSystem {
    pub fn empty(target: VertexId) -> Self {
        PathSystem {
            target,
            paths: Vec::new(),
        }
    }

    /// Builds and validates a system against a subdigraph.
    pub fn new<S: Subdigraph>(d: &S, target: VertexId, mut paths: Vec<Path>) -> Result<Self> {
        paths.sort_by_key(|p| p.last_edge());
        let system = PathSystem { target, paths };
        system.validate(d)?;
        Ok(system)
    }

    /// Rejects systems with paths outside the subdigraph, wrong endpoints,
    /// broken shape, or overlapping edges.
    pub fn validate<S: Subdigraph>(&self, d: &S) -> Result<()> {
        let host = d.host();
        if self.target.index() >= host.vertex_count() {
            return Err(Error::ForeignIndex);
        }
        let mut seen = EdgeSet::new();
        for p in &self.paths {
            p.check_shape(host)?;
            if p.source() != host.root() {
                return Err(Error::MalformedSystem(
                    "path does not start at the root".into(),
                ));
            }
            if p.terminus() != self.target {
                return Err(Error::MalformedSystem(
                    "path does not end at the target".into(),
                ));
            }
            for &e in p.edges() {
                if !d.contains_edge(e) {
                    return Err(Error::MalformedSystem(format!(
                        "path uses edge `{}` outside the subgraph",
                        host.edge_name(e)
                    )));
                }
                if !seen.insert(e) {
                    return Err(Error::MalformedSystem(format!(
                        "paths overlap on edge `{}`",
                        host.edge_name(e)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// In-edges of the target covered by the system (the last edges).
    pub fn covered_target_in(&self) -> EdgeSet {
        self.paths.iter().map(|p| p.last_edge()).collect()
    }

    /// Out-edges of the root used by the system (the first edges).
    pub fn covered_root_out(&self) -> EdgeSet {
        self.paths.iter().map(|p| p.first_edge()).collect()
    }

    pub fn edge_union(&self) -> EdgeSet {
        self.paths
            .iter()
            .flat_map(|p| p.edges().iter().copied())
            .collect()
    }
}

/// Result of one augmentation attempt. Exactly one alternative applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AugmentOutcome {
    /// A system larger by one path that still covers every root-out and
    /// target-in edge covered by the input.
    Augmented(PathSystem),
    /// Vertices unreachable from the root in the residual digraph. Contains
    /// the target, excludes the root, and its in-cut is a strict transversal
    /// of the input system.
    Blocked(VertexSet),
}

/// True iff `cut` contains exactly one edge of every path and nothing else.
pub fn is_strict_transversal(cut: &EdgeSet, system: &PathSystem) -> bool {
    let mut covered = EdgeSet::new();
    for p in system.paths() {
        let on_path: Vec<EdgeId> = p
            .edges()
            .iter()
            .copied()
            .filter(|e| cut.contains(e))
            .collect();
        if on_path.len() != 1 {
            return false;
        }
        covered.insert(on_path[0]);
    }
    covered == *cut
}

/// One step of the augmenting-path dichotomy.
pub fn augment<S: Subdigraph>(d: &S, system: &PathSystem) -> Result<AugmentOutcome> {
    system.validate(d)?;
    let host = d.host();
    let target = system.target();
    if target == host.root() {
        return Err(Error::TargetIsRoot);
    }

    let mut used_by: Vec<Option<usize>> = vec![None; host.edge_count()];
    for (i, p) in system.paths().iter().enumerate() {
        for &e in p.edges() {
            used_by[e.index()] = Some(i);
        }
    }

    // Breadth-first search of the residual digraph: unused member edges keep
    // their direction, system edges are reversed. Arcs leaving a vertex are
    // explored in ascending edge-id order.
    let n = host.vertex_count();
    let mut parent: Vec<Option<(EdgeId, bool)>> = vec![None; n];
    let mut visited = vec![false; n];
    visited[host.root().index()] = true;
    let mut queue = VecDeque::from([host.root()]);
    'bfs: while let Some(w) = queue.pop_front() {
        let mut arcs: Vec<(EdgeId, VertexId)> = Vec::new();
        for &e in host.out_adjacency(w) {
            if d.contains_edge(e) && used_by[e.index()].is_none() {
                arcs.push((e, host.head(e)));
            }
        }
        for &e in host.in_adjacency(w) {
            if used_by[e.index()].is_some() {
                arcs.push((e, host.tail(e)));
            }
        }
        arcs.sort_unstable_by_key(|&(e, _)| e);
        for (e, to) in arcs {
            if !visited[to.index()] {
                visited[to.index()] = true;
                parent[to.index()] = Some((e, used_by[e.index()].is_none()));
                if to == target {
                    break 'bfs;
                }
                queue.push_back(to);
            }
        }
    }

    if !visited[target.index()] {
        let blocked: VertexSet = (0..n as u32)
            .map(VertexId)
            .filter(|v| !visited[v.index()])
            .collect();
        debug_assert!(blocked.contains(&target));
        debug_assert!(!blocked.contains(&host.root()));
        debug_assert!(is_strict_transversal(&in_edges(d, &blocked), system));
        return Ok(AugmentOutcome::Blocked(blocked));
    }

    // Walk the residual path back from the target and record which system
    // paths it touched via reversed edges.
    let mut forward_new: Vec<EdgeId> = Vec::new();
    let mut reversed = EdgeSet::new();
    let mut at = target;
    while at != host.root() {
        let (e, fwd) = parent[at.index()].expect("visited vertices have parents");
        if fwd {
            forward_new.push(e);
            at = host.tail(e);
        } else {
            reversed.insert(e);
            at = host.head(e);
        }
    }
    let touched: BTreeSet<usize> = reversed
        .iter()
        .map(|e| used_by[e.index()].unwrap())
        .collect();

    // Symmetric difference of the residual path with the touched paths, then
    // peel it into |touched| + 1 fresh target paths.
    let mut pool: EdgeSet = forward_new.into_iter().collect();
    for &i in &touched {
        for &e in system.paths()[i].edges() {
            if !reversed.contains(&e) {
                pool.insert(e);
            }
        }
    }
    let peeled = peel_paths(host, &pool, target, touched.len() + 1)?;

    let mut paths: Vec<Path> = system
        .paths()
        .iter()
        .enumerate()
        .filter(|(i, _)| !touched.contains(i))
        .map(|(_, p)| p.clone())
        .collect();
    paths.extend(peeled);
    let out = PathSystem::new(d, target, paths)?;
    debug_assert_eq!(out.len(), system.len() + 1);
    debug_assert!(out
        .covered_root_out()
        .is_superset(&system.covered_root_out()));
    debug_assert!(out
        .covered_target_in()
        .is_superset(&system.covered_target_in()));
    Ok(AugmentOutcome::Augmented(out))
}

/// Greedily peels `count` root→target paths out of a unit-flow edge pool,
/// always taking the smallest available edge id and discarding any cycle the
/// walk closes.
fn peel_paths(
    host: &RootedDigraph,
    pool: &EdgeSet,
    target: VertexId,
    count: usize,
) -> Result<Vec<Path>> {
    let mut available: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); host.vertex_count()];
    for &e in pool {
        available[host.tail(e).index()].insert(e);
    }
    let mut result = Vec::with_capacity(count);
    for _ in 0..count {
        let root = host.root();
        let mut verts = vec![root];
        let mut steps: Vec<EdgeId> = Vec::new();
        let mut pos: HashMap<VertexId, usize> = HashMap::from([(root, 0)]);
        let mut cur = root;
        loop {
            let e = match available[cur.index()].pop_first() {
                Some(e) => e,
                None => {
                    return Err(Error::Internal(
                        "path peeling got stuck; the pool is not a unit flow".into(),
                    ))
                }
            };
            let next = host.head(e);
            steps.push(e);
            if next == target {
                break;
            }
            if let Some(&j) = pos.get(&next) {
                for v in verts.drain(j + 1..) {
                    pos.remove(&v);
                }
                steps.truncate(j);
                cur = next;
            } else {
                pos.insert(next, verts.len());
                verts.push(next);
                cur = next;
            }
        }
        result.push(Path::new(host, steps)?);
    }
    Ok(result)
}

/// Maximum packing together with the final blocking set.
pub(crate) fn max_system_blocked<S: Subdigraph>(d: &S, v: VertexId) -> (PathSystem, VertexSet) {
    assert!(v != d.root(), "target must differ from the root");
    let mut sys = PathSystem::empty(v);
    loop {
        match augment(d, &sys).expect("internally built systems are valid") {
            AugmentOutcome::Augmented(next) => sys = next,
            AugmentOutcome::Blocked(x) => return (sys, x),
        }
    }
}

/// A maximum system of edge-disjoint root→v paths, built by iterating
/// [`augment`] from the empty system. Its size is λ(root, v).
pub fn max_path_system<S: Subdigraph>(d: &S, v: VertexId) -> PathSystem {
    max_system_blocked(d, v).0
}

/// Local edge-connectivity λ(root, v): the maximum number of pairwise
/// edge-disjoint root→v paths.
pub fn lambda<S: Subdigraph>(d: &S, v: VertexId) -> usize {
    max_path_system(d, v).len()
}

/// Whether `wanted` ⊆ δ(v) can be covered by the last edges of a system of
/// edge-disjoint root→v paths: λ equals |wanted| once the other in-edges of
/// `v` are removed.
pub fn in_g<S: Subdigraph>(d: &S, v: VertexId, wanted: &EdgeSet) -> Result<bool> {
    if wanted.is_empty() {
        return Ok(true);
    }
    let din: EdgeSet = d.in_edges_of(v).into_iter().collect();
    if !wanted.is_subset(&din) {
        return Err(Error::NotInEdges);
    }
    let mut members = d.member_edges();
    for e in din.difference(wanted) {
        members.remove(e);
    }
    let view = EdgeSubset::new(d.host(), members)?;
    Ok(lambda(&view, v) == wanted.len())
}

/// Grows a partial system into a full witness for δ(v) while reusing every
/// root-out edge already used and adding at most one new root-out edge per
/// missing in-edge of `v`.
pub fn extend_witness<S: Subdigraph>(d: &S, v: VertexId, system: PathSystem) -> Result<PathSystem> {
    if system.target() != v {
        return Err(Error::MalformedSystem(
            "system target differs from the requested vertex".into(),
        ));
    }
    system.validate(d)?;
    let goal = d.indegree(v);
    let budget = goal.saturating_sub(system.len());
    let before = system.covered_root_out();
    let mut sys = system;
    while sys.len() < goal {
        match augment(d, &sys)? {
            AugmentOutcome::Augmented(next) => sys = next,
            AugmentOutcome::Blocked(_) => {
                return Err(Error::NotWitnessable(d.host().vertex_name(v).to_string()));
            }
        }
    }
    debug_assert!(sys.covered_root_out().difference(&before).count() <= budget);
    Ok(sys)
}

/// Variant of [`extend_witness`] relative to a fillable set `u_set`
/// containing `v`: the full witness keeps every δ(u_set) edge used by the
/// terminal segments of the input past their last δ(u_set) crossings and
/// uses at most one extra δ(u_set) edge per missing in-edge of `v`.
///
/// Works over the contraction of everything outside `u_set` onto the root,
/// then extends the resulting paths backward through a fillability witness.
pub fn extend_witness_over<S: Subdigraph>(
    d: &S,
    u_set: &VertexSet,
    v: VertexId,
    system: PathSystem,
) -> Result<PathSystem> {
    let host = d.host();
    if u_set.contains(&d.root()) {
        return Err(Error::RootInSet);
    }
    if !u_set.contains(&v) {
        return Err(Error::VertexOutsideSet(host.vertex_name(v).to_string()));
    }
    if system.target() != v {
        return Err(Error::MalformedSystem(
            "system target differs from the requested vertex".into(),
        ));
    }
    system.validate(d)?;

    let fill = fillability_witness(d, u_set)?.ok_or(Error::NotFillable)?;
    let fill_by_last: HashMap<EdgeId, &Path> = fill.iter().map(|p| (p.last_edge(), p)).collect();
    let boundary = in_edges(d, u_set);

    let outside: VertexSet = host.vertices().filter(|w| !u_set.contains(w)).collect();
    let aux = contract(d, &outside, host.root())?;
    let aux_v = aux
        .vertex_by_name(host.vertex_name(v))
        .expect("v survives the contraction");

    let mut kept_boundary = EdgeSet::new();
    let mut segments = Vec::with_capacity(system.len());
    for p in system.paths() {
        let cut = p
            .edges()
            .iter()
            .rposition(|e| boundary.contains(e))
            .ok_or_else(|| Error::Internal("system path never crosses the boundary".into()))?;
        kept_boundary.insert(p.edges()[cut]);
        let names: Vec<&str> = p.edges()[cut..]
            .iter()
            .map(|&e| host.edge_name(e))
            .collect();
        segments.push(Path::from_edge_names(&aux, names)?);
    }
    let budget = d.indegree(v).saturating_sub(system.len());

    let aux_system = PathSystem::new(&aux, aux_v, segments)?;
    let full = extend_witness(&aux, aux_v, aux_system)?;

    let mut lifted = Vec::with_capacity(full.len());
    let mut used_boundary = EdgeSet::new();
    for p in full.paths() {
        let first = host
            .edge_by_name(aux.edge_name(p.first_edge()))
            .expect("edge ids are preserved by contraction");
        used_boundary.insert(first);
        let prefix = fill_by_last.get(&first).ok_or_else(|| {
            Error::Internal("boundary edge missing from the fillability witness".into())
        })?;
        let mut names: Vec<&str> = prefix.edges().iter().map(|&e| host.edge_name(e)).collect();
        names.extend(p.edges()[1..].iter().map(|&e| aux.edge_name(e)));
        lifted.push(Path::from_edge_names(host, names)?);
    }
    let result = PathSystem::new(d, v, lifted)?;
    debug_assert!(used_boundary.is_superset(&kept_boundary));
    debug_assert!(used_boundary.len() - kept_boundary.len() <= budget);
    Ok(result)
}
