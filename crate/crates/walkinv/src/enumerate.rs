//! Exhaustive enumerators and random generators for small labelled graphs.
//!
//! Enumeration is labelled, not isomorphism-reduced: the sweeps driven by
//! these streams check universally quantified identities, so deduplication
//! would only save time, and canonical-form machinery is not worth it at
//! these sizes.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedTree};

/// Largest `n` for full labelled-tree enumeration (`n^(n-2)` trees).
pub const MAX_TREE_ENUM: usize = 9;
/// Largest `n` for full connected-graph enumeration (`2^(n(n-1)/2)` subsets).
pub const MAX_GRAPH_ENUM: usize = 7;

/// Decodes a Prüfer sequence over the alphabet `0..n` into the edge list of
/// the corresponding labelled tree on `n` vertices. `seq.len()` must equal
/// `n - 2`.
fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1u32; n];
    for &a in seq {
        degree[a] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq {
        let Reverse(leaf) = leaves.pop().expect("decode invariant");
        edges.push((leaf, a));
        degree[a] -= 1;
        if degree[a] == 1 {
            leaves.push(Reverse(a));
        }
    }
    let Reverse(u) = leaves.pop().expect("two leaves remain");
    let Reverse(v) = leaves.pop().expect("two leaves remain");
    edges.push((u, v));
    edges
}

/// Number of labelled trees on `n` vertices (`n^(n-2)`, Cayley).
pub fn labelled_tree_count(n: usize) -> u64 {
    (n as u64).pow(n as u32 - 2)
}

/// Tree with the given Prüfer code index, counting codes as base-`n`
/// numbers `0 .. n^(n-2)`. Used for deterministic parallel sweeps.
pub fn labelled_tree_by_index(n: usize, mut code: u64) -> Graph {
    let mut seq = vec![0usize; n - 2];
    for slot in seq.iter_mut() {
        *slot = (code % n as u64) as usize;
        code /= n as u64;
    }
    let edges = prufer_decode(n, &seq);
    Graph::build(n, &edges).expect("Prüfer decode yields a valid tree")
}

/// Streams every labelled tree on `n` vertices exactly once, in Prüfer code
/// order. `2 <= n <= 9`.
pub fn labelled_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n < 2 {
        return Err(Error::SizeTooSmall {
            what: "tree enumeration",
            min: 2,
            got: n,
        });
    }
    if n > MAX_TREE_ENUM {
        return Err(Error::NTooLarge {
            what: "tree enumeration",
            max: MAX_TREE_ENUM,
            got: n,
        });
    }
    Ok((0..labelled_tree_count(n)).map(move |code| labelled_tree_by_index(n, code)))
}

/// The `n(n-1)/2` possible edges on `n` vertices in lexicographic order;
/// bit `k` of an edge mask refers to `edge_pairs(n)[k]`.
pub fn edge_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    pairs
}

/// Builds the graph selected by `mask` over [`edge_pairs`]. Returns `None`
/// when the selection is disconnected.
pub fn graph_from_edge_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Option<Graph> {
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|&(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    match Graph::build(n, &edges) {
        Ok(g) => Some(g),
        Err(Error::Disconnected) => None,
        Err(e) => unreachable!("mask enumeration produced invalid edges: {e}"),
    }
}

/// Streams every connected simple labelled graph on `n` vertices exactly
/// once (edge-subset enumeration filtered by connectivity). `2 <= n <= 7`.
pub fn connected_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n < 2 {
        return Err(Error::SizeTooSmall {
            what: "graph enumeration",
            min: 2,
            got: n,
        });
    }
    if n > MAX_GRAPH_ENUM {
        return Err(Error::NTooLarge {
            what: "graph enumeration",
            max: MAX_GRAPH_ENUM,
            got: n,
        });
    }
    let pairs = edge_pairs(n);
    let masks = 1u64 << pairs.len();
    Ok((0..masks).filter_map(move |mask| graph_from_edge_mask(n, &pairs, mask)))
}

/// Uniform random labelled tree on `n` vertices with a uniform random root,
/// deterministic for a fixed seed. Sampling draws a uniform Prüfer sequence,
/// which is in bijection with labelled trees.
pub fn random_labelled_tree(n: usize, seed: u64) -> Result<RootedTree> {
    if n < 2 {
        return Err(Error::SizeTooSmall {
            what: "random tree",
            min: 2,
            got: n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let edges = prufer_decode(n, &seq);
    let root = rng.random_range(0..n);
    let graph = Graph::build(n, &edges).expect("Prüfer decode yields a valid tree");
    RootedTree::new(graph, root)
}

/// Random connected graph on `n` vertices: each possible edge is included
/// with probability 1/2, rejection-sampled until connected. Deterministic
/// for a fixed seed.
pub fn random_connected_graph(n: usize, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::SizeTooSmall {
            what: "random graph",
            min: 2,
            got: n,
        });
    }
    let pairs = edge_pairs(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let edges: Vec<_> = pairs
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .copied()
            .collect();
        match Graph::build(n, &edges) {
            Ok(g) => return Ok(g),
            Err(Error::Disconnected) => continue,
            Err(e) => unreachable!("edge sampling produced invalid edges: {e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn tree_counts_match_cayley() {
        for (n, expect) in [(2, 1), (3, 3), (4, 16), (5, 125)] {
            assert_eq!(labelled_trees(n).unwrap().count() as u64, expect);
            assert_eq!(labelled_tree_count(n), expect);
        }
    }

    #[test]
    fn trees_are_valid_and_distinct() {
        let mut seen = HashSet::new();
        for t in labelled_trees(4).unwrap() {
            assert!(t.is_tree());
            assert!(seen.insert(t.edges().to_vec()));
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn tree_enum_guards() {
        assert!(matches!(labelled_trees(1), Err(Error::SizeTooSmall { .. })));
        assert!(matches!(labelled_trees(10), Err(Error::NTooLarge { .. })));
    }

    #[test]
    fn connected_graph_counts() {
        assert_eq!(connected_graphs(2).unwrap().count(), 1);
        assert_eq!(connected_graphs(3).unwrap().count(), 4);
        assert_eq!(connected_graphs(4).unwrap().count(), 38);
        assert!(matches!(connected_graphs(8), Err(Error::NTooLarge { .. })));
    }

    #[test]
    fn random_tree_deterministic() {
        let a = random_labelled_tree(5, 42).unwrap();
        let b = random_labelled_tree(5, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(random_labelled_tree(2, 7).unwrap().graph().m(), 1);
    }

    #[test]
    fn random_tree_n3_frequencies() {
        // Three labelled paths on 3 vertices; each should appear with
        // frequency 1/3 within 0.01 over 30000 samples.
        let mut counts = [0u32; 3];
        for seed in 0..30_000u64 {
            let t = random_labelled_tree(3, 0xC0FFEE ^ seed).unwrap();
            // The missing middle vertex identifies the path.
            let mid = (0..3).find(|&v| t.graph().degree(v) == 2).unwrap();
            counts[mid] += 1;
        }
        for c in counts {
            let freq = f64::from(c) / 30_000.0;
            assert!((freq - 1.0 / 3.0).abs() < 0.01, "freq = {freq}");
        }
    }

    #[test]
    fn random_graph_connected_and_deterministic() {
        let a = random_connected_graph(6, 5).unwrap();
        let b = random_connected_graph(6, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), 6);
    }
}
