//! Flame machinery for finite rooted multidigraphs.
//!
//! A rooted digraph (root with no in-edges, parallel edges allowed, no
//! loops) is a *flame* when every non-root vertex v admits a system of
//! edge-disjoint root→v paths covering all in-edges of v. This crate
//! provides:
//!
//! - the multidigraph data model with stable edge ids, contraction, a
//!   line-oriented text format and seeded instance generation ([`digraph`]);
//! - the augmenting-path engine behind every witness computation
//!   ([`pathflow`]);
//! - flame, fillable and tight predicates with their closures and witness
//!   families ([`flame`]);
//! - flame-preserving edge insertion, whole-edge-set build orders with
//!   flame prefixes, minimal connectivity-preserving subgraph extraction and
//!   layered-chain verification ([`construction`]);
//! - exponential-time reference oracles for validating all of the above on
//!   small instances ([`oracle`]).
//!
//! All algorithms are pure functions over immutable graphs and are
//! deterministic: ties are broken by edge id everywhere, and randomized
//! helpers take explicit seeds.

pub mod construction;
pub mod digraph;
mod error;
pub mod flame;
pub mod oracle;
pub mod pathflow;

pub use construction::{
    build_order, can_insert, extract_minimal_preserver, insert_entering, insert_with_helpers,
    insert_with_helpers_traced, verify_layered_chain, BuildOrder, BuildStep, ChainReport,
    InsertionTrace, LayerVerdict, Precedence, StepRole,
};
pub use digraph::{
    build_graph, contract, in_edges, parse_edge_ids, parse_graph, random_digraph,
    serialize_edge_names, serialize_graph, EdgeId, EdgeRecord, EdgeSet, EdgeSubset, RootedDigraph,
    Subdigraph, VertexId, VertexSet,
};
pub use error::{Error, Result};
pub use flame::{
    fill_closure, fillability_witness, is_fillable, is_flame, is_tight, largest_tight_set,
    witness_family, TightResult, WitnessFamily,
};
pub use oracle::{
    enumerate_rooted_multidigraphs, oracle_disjoint_families, oracle_exists_system, oracle_fill,
    oracle_is_fillable, oracle_is_flame, oracle_lambda, oracle_tight_sets, OracleBudget,
};
pub use pathflow::{
    augment, extend_witness, extend_witness_over, in_g, is_strict_transversal, lambda,
    max_path_system, AugmentOutcome, Path, PathSystem,
};
