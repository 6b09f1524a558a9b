//! Seeded random instance generation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{build_graph, EdgeRecord, RootedDigraph};

fn padded(prefix: &str, index: usize, width: usize) -> String {
    format!("{prefix}{index:0width$}")
}

/// Deterministic random rooted multidigraph with `n` vertices and at most `m`
/// edges. The root is named `r`, other vertices `v01..`, edges `e01..`
/// (zero-padded so lexicographic id order matches numeric order). Heads are
/// drawn from the non-root vertices, so no edge ever points into the root,
/// and tails are re-rolled until they differ from the head, so there are no
/// loops. With a single vertex the graph has no edges.
pub fn random_digraph(n: usize, m: usize, seed: u64) -> RootedDigraph {
    assert!(n >= 1, "need at least the root vertex");
    let vwidth = format!("{}", n.saturating_sub(1).max(1)).len();
    let ewidth = format!("{}", m.max(1)).len();

    let mut vertices: Vec<String> = vec!["r".to_string()];
    for i in 1..n {
        vertices.push(padded("v", i, vwidth));
    }

    let mut records = Vec::new();
    if n >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 1..=m {
            let (tail, head) = loop {
                let tail = rng.gen_range(0..n);
                let head = rng.gen_range(1..n);
                if tail != head {
                    break (tail, head);
                }
            };
            records.push(EdgeRecord::new(
                padded("e", k, ewidth),
                vertices[tail].clone(),
                vertices[head].clone(),
            ));
        }
    }

    build_graph(&vertices, "r", &records).expect("generated instances are valid by construction")
}
