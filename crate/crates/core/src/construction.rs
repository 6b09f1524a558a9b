//! Flame-preserving edge insertion and edge orders whose prefixes are flames.
//!
//! Inserting an edge e into a flame F keeps the flame property exactly when
//! the tail of e lies outside the largest tight set of head(e) in F. When it
//! does not, helper edges drawn from the fixed witness paths of the pending
//! edges can be inserted first; the pool of still-missing witness edges
//! shrinks strictly with every helper, which bounds the loop and doubles as
//! a runtime soundness check. Iterating this per edge yields an order of the
//! whole edge set in which every prefix is a flame.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::{
    in_edges, EdgeId, EdgeSet, EdgeSubset, RootedDigraph, Subdigraph, VertexId, VertexSet,
};
use crate::error::{Error, Result};
use crate::flame::{is_flame, largest_tight_set, witness_family, WitnessFamily};
use crate::pathflow::lambda;

/// A total order on the edge ids of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precedence {
    rank: Vec<u32>,
}

impl Precedence {
    /// Ascending edge-id (token) order.
    pub fn lexicographic(d: &RootedDigraph) -> Self {
        Precedence {
            rank: (0..d.edge_count() as u32).collect(),
        }
    }

    /// The order given by an explicit permutation of all edge ids.
    pub fn from_sequence(d: &RootedDigraph, sequence: &[EdgeId]) -> Result<Self> {
        if sequence.len() != d.edge_count() {
            return Err(Error::BadPrecedence);
        }
        let mut rank = vec![u32::MAX; d.edge_count()];
        for (i, e) in sequence.iter().enumerate() {
            if e.index() >= d.edge_count() || rank[e.index()] != u32::MAX {
                return Err(Error::BadPrecedence);
            }
            rank[e.index()] = i as u32;
        }
        Ok(Precedence { rank })
    }

    /// A seeded uniformly random permutation.
    pub fn seeded(d: &RootedDigraph, seed: u64) -> Self {
        let mut order: Vec<EdgeId> = d.edges().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
        Self::from_sequence(d, &order).expect("a shuffle is a permutation")
    }

    pub fn rank_of(&self, e: EdgeId) -> u32 {
        self.rank[e.index()]
    }

    pub fn least(&self, edges: impl IntoIterator<Item = EdgeId>) -> Option<EdgeId> {
        edges.into_iter().min_by_key(|&e| self.rank_of(e))
    }

    /// All edges, smallest rank first.
    pub fn order(&self) -> Vec<EdgeId> {
        let mut edges: Vec<EdgeId> = (0..self.rank.len() as u32).map(EdgeId).collect();
        edges.sort_by_key(|&e| self.rank_of(e));
        edges
    }
}

fn require_insertable_state(f: &EdgeSubset<'_>, e: EdgeId) -> Result<()> {
    if e.index() >= f.graph().edge_count() {
        return Err(Error::ForeignIndex);
    }
    if f.contains(e) {
        return Err(Error::EdgeAlreadyPresent(
            f.graph().edge_name(e).to_string(),
        ));
    }
    if !is_flame(f) {
        return Err(Error::NotAFlame);
    }
    Ok(())
}

fn tail_outside_tight(f: &EdgeSubset<'_>, e: EdgeId) -> Result<bool> {
    let host = f.graph();
    let t = largest_tight_set(f, host.head(e))?;
    Ok(!t.tight_set.contains(&host.tail(e)))
}

/// Whether F ∪ {e} is again a flame: true iff the tail of e lies outside the
/// largest head(e)-tight set of F.
pub fn can_insert(f: &EdgeSubset<'_>, e: EdgeId) -> Result<bool> {
    require_insertable_state(f, e)?;
    tail_outside_tight(f, e)
}

/// Inserts an edge that enters the largest tight set of its head, and checks
/// that the result is a flame.
pub fn insert_entering<'g>(f: &EdgeSubset<'g>, e: EdgeId) -> Result<EdgeSubset<'g>> {
    require_insertable_state(f, e)?;
    if !tail_outside_tight(f, e)? {
        return Err(Error::DoesNotEnterTight(f.graph().edge_name(e).to_string()));
    }
    let mut grown = f.clone();
    grown.insert(e);
    if !is_flame(&grown) {
        return Err(Error::Internal(
            "insertion of an entering edge broke the flame".into(),
        ));
    }
    Ok(grown)
}

/// The sequence of one helper-assisted insertion, with the pool measure
/// recorded at the start of every helper iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionTrace {
    /// Inserted edges in order; the last entry is the requested edge.
    pub sequence: Vec<EdgeId>,
    /// |A′ ∖ F| per helper iteration; strictly decreasing.
    pub measures: Vec<usize>,
}

fn witness_path<'w>(
    w: &'w WitnessFamily,
    host: &RootedDigraph,
    e: EdgeId,
) -> Result<&'w crate::pathflow::Path> {
    let p = w.path(e).ok_or_else(|| {
        Error::BadWitnessFamily(format!("no path for edge `{}`", host.edge_name(e)))
    })?;
    if p.last_edge() != e {
        return Err(Error::BadWitnessFamily(format!(
            "path for edge `{}` ends elsewhere",
            host.edge_name(e)
        )));
    }
    Ok(p)
}

/// Inserts `e` into the flame, preceded by helper edges where necessary, so
/// that every intermediate subset is a flame.
///
/// Helpers come from A′ ∖ F, where A collects `e` and the in-edges of
/// head(e) whose fixed witness paths are not yet inside F, and A′ is the
/// union of those paths. The measure |A′ ∖ F| must shrink strictly each
/// round; if it ever fails to, the run aborts with an internal error instead
/// of looping.
pub fn insert_with_helpers(
    f: &EdgeSubset<'_>,
    e: EdgeId,
    w: &WitnessFamily,
) -> Result<Vec<EdgeId>> {
    let prec = Precedence::lexicographic(f.graph());
    Ok(insert_with_helpers_traced(f, e, w, &prec)?.sequence)
}

/// As [`insert_with_helpers`], with an explicit helper precedence and the
/// measure trace exposed.
pub fn insert_with_helpers_traced(
    f: &EdgeSubset<'_>,
    e: EdgeId,
    w: &WitnessFamily,
    prec: &Precedence,
) -> Result<InsertionTrace> {
    require_insertable_state(f, e)?;
    let host = f.graph();
    let v = host.head(e);

    let mut cur = f.clone();
    let mut sequence = Vec::new();
    let mut measures = Vec::new();
    loop {
        let tight = largest_tight_set(&cur, v)?;
        if !tight.tight_set.contains(&host.tail(e)) {
            cur.insert(e);
            sequence.push(e);
            debug_assert!(is_flame(&cur));
            return Ok(InsertionTrace { sequence, measures });
        }

        // A' = P_e ∪ { P_f : f ∈ δ_F(v), P_f ⊄ F }
        let mut pool = EdgeSet::new();
        pool.extend(witness_path(w, host, e)?.edges());
        for fe in cur.in_edges_of(v) {
            let pf = witness_path(w, host, fe)?;
            if pf.edges().iter().any(|x| !cur.contains(*x)) {
                pool.extend(pf.edges());
            }
        }
        let outside: EdgeSet = pool.into_iter().filter(|&x| !cur.contains(x)).collect();
        let measure = outside.len();
        if let Some(&previous) = measures.last() {
            if measure >= previous {
                return Err(Error::MeasureNotDecreased);
            }
        }
        measures.push(measure);

        let candidates = in_edges(&host, &tight.tight_set)
            .intersection(&outside)
            .copied()
            .collect::<Vec<_>>();
        let helper = prec.least(candidates).ok_or_else(|| {
            Error::Internal("no insertable helper inside the witness pool".into())
        })?;
        cur.insert(helper);
        sequence.push(helper);
        debug_assert!(is_flame(&cur));
    }
}

/// Role of one edge within a build order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepRole {
    /// The precedence-least missing edge requested at this point.
    Target,
    /// An edge inserted to make a later target insertable.
    Helper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildStep {
    pub edge: EdgeId,
    pub role: StepRole,
}

/// A permutation of the edge set in which every prefix is a flame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOrder {
    pub steps: Vec<BuildStep>,
}

impl BuildOrder {
    pub fn edges(&self) -> Vec<EdgeId> {
        self.steps.iter().map(|s| s.edge).collect()
    }
}

/// Orders the edge set of a flame so that every prefix is a flame: fix one
/// witness family up front, then repeatedly insert the precedence-least
/// missing edge with helpers.
pub fn build_order(d: &RootedDigraph, prec: &Precedence) -> Result<BuildOrder> {
    let w = witness_family(d)?;
    let mut cur = EdgeSubset::empty(d);
    let mut steps = Vec::with_capacity(d.edge_count());
    while cur.len() < d.edge_count() {
        let target = prec
            .least(d.edges().filter(|&e| !cur.contains(e)))
            .expect("some edge is still missing");
        let trace = insert_with_helpers_traced(&cur, target, &w, prec)?;
        let last = trace.sequence.len() - 1;
        for (i, &edge) in trace.sequence.iter().enumerate() {
            steps.push(BuildStep {
                edge,
                role: if i == last {
                    StepRole::Target
                } else {
                    StepRole::Helper
                },
            });
            cur.insert(edge);
        }
    }
    Ok(BuildOrder { steps })
}

/// Greedy reverse deletion: drops every edge whose removal preserves all
/// local connectivities from the root, recomputing λ after each tentative
/// deletion. The survivor is checked to be a flame whose indegrees equal the
/// original connectivities.
pub fn extract_minimal_preserver<'g>(
    d: &'g RootedDigraph,
    order: &Precedence,
) -> Result<EdgeSubset<'g>> {
    let targets: Vec<usize> = d
        .vertices()
        .map(|v| if v == d.root() { 0 } else { lambda(d, v) })
        .collect();
    let preserved = |sub: &EdgeSubset<'_>| {
        d.non_root_vertices()
            .all(|v| lambda(sub, v) == targets[v.index()])
    };

    let mut cur = EdgeSubset::full(d);
    for e in order.order() {
        cur.remove(e);
        if !preserved(&cur) {
            cur.insert(e);
        }
    }

    for v in d.non_root_vertices() {
        if cur.indegree(v) != targets[v.index()] {
            return Err(Error::Internal(format!(
                "minimal preserver keeps {} in-edges of `{}` but λ is {}",
                cur.indegree(v),
                d.vertex_name(v),
                targets[v.index()]
            )));
        }
    }
    if !is_flame(&cur) {
        return Err(Error::Internal("minimal preserver is not a flame".into()));
    }
    Ok(cur)
}

/// Per-layer verdict of a chain verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerVerdict {
    /// 1-based layer index.
    pub index: usize,
    pub flame: bool,
    /// λ_{F_i}(root, v) = min(λ_D(root, v), i) for every v.
    pub connectivity: bool,
    /// F_i ∖ F_{i−1} has in-degree ≤ 1 everywhere and is acyclic.
    pub branching: bool,
    /// Required (and reported) only for layers with index ≤ min_v λ_D(root, v).
    pub spanning_arborescence: Option<bool>,
}

impl LayerVerdict {
    pub fn pass(&self) -> bool {
        self.flame
            && self.connectivity
            && self.branching
            && self.spanning_arborescence.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub layers: Vec<LayerVerdict>,
}

impl ChainReport {
    pub fn pass(&self) -> bool {
        self.layers.iter().all(|l| l.pass())
    }
}

fn is_branching(d: &RootedDigraph, edges: &EdgeSet) -> bool {
    let mut indeg = vec![0usize; d.vertex_count()];
    for &e in edges {
        indeg[d.head(e).index()] += 1;
        if indeg[d.head(e).index()] > 1 {
            return false;
        }
    }
    // acyclicity via Kahn's algorithm restricted to the difference edges
    let mut out: Vec<Vec<EdgeId>> = vec![Vec::new(); d.vertex_count()];
    for &e in edges {
        out[d.tail(e).index()].push(e);
    }
    let mut queue: Vec<VertexId> = d.vertices().filter(|v| indeg[v.index()] == 0).collect();
    let mut dropped = 0usize;
    while let Some(w) = queue.pop() {
        for &e in &out[w.index()] {
            let h = d.head(e);
            indeg[h.index()] -= 1;
            dropped += 1;
            if indeg[h.index()] == 0 {
                queue.push(h);
            }
        }
    }
    dropped == edges.len()
}

fn spans_from_root(d: &RootedDigraph, edges: &EdgeSet) -> bool {
    let mut seen = VertexSet::from([d.root()]);
    let mut stack = vec![d.root()];
    while let Some(w) = stack.pop() {
        for &e in d.out_adjacency(w) {
            if edges.contains(&e) && seen.insert(d.head(e)) {
                stack.push(d.head(e));
            }
        }
    }
    seen.len() == d.vertex_count()
}

/// Verifies an ascending chain F_1 ⊆ … ⊆ F_m of edge sets: each layer must be
/// a flame with λ capped at the layer index, each difference a branching, and
/// differences up to the minimum connectivity spanning arborescences.
pub fn verify_layered_chain(d: &RootedDigraph, layers: &[EdgeSet]) -> Result<ChainReport> {
    for layer in layers {
        if layer.iter().any(|e| e.index() >= d.edge_count()) {
            return Err(Error::ForeignIndex);
        }
    }
    for pair in layers.windows(2) {
        if !pair[0].is_subset(&pair[1]) {
            return Err(Error::ChainNotAscending);
        }
    }

    let targets: Vec<usize> = d
        .vertices()
        .map(|v| if v == d.root() { 0 } else { lambda(d, v) })
        .collect();
    let min_connectivity = d
        .non_root_vertices()
        .map(|v| targets[v.index()])
        .min()
        .unwrap_or(0);

    let mut report = ChainReport { layers: Vec::new() };
    let mut previous = EdgeSet::new();
    for (i, layer) in layers.iter().enumerate() {
        let index = i + 1;
        let sub = EdgeSubset::new(d, layer.clone())?;
        let flame = is_flame(&sub);
        let connectivity = d
            .non_root_vertices()
            .all(|v| lambda(&sub, v) == targets[v.index()].min(index));
        let difference: EdgeSet = layer.difference(&previous).copied().collect();
        let branching = is_branching(d, &difference);
        let spanning_arborescence = if index <= min_connectivity {
            Some(branching && spans_from_root(d, &difference))
        } else {
            None
        };
        report.layers.push(LayerVerdict {
            index,
            flame,
            connectivity,
            branching,
            spanning_arborescence,
        });
        previous = layer.clone();
    }
    Ok(report)
}
