//! Ground-truth block decomposition.
//!
//! The linkage graph has the coset Wλ̄ ∩ Λ_I^+ as vertex set and an
//! undirected edge wherever a Jantzen coefficient between two coset weights
//! is nonzero (in either direction). Blocks are its connected components;
//! this is the oracle that the separable-pair and partition pipelines are
//! checked against.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::jantzen::jantzen_row;
use crate::rootsys::{ParabolicData, Root};
use crate::weights::{enumerate_coset, Weight};

// =============================================================================
// Linkage graph
// =============================================================================

/// A witnessed edge annotation: which root connected the pair, with the sign
/// parity of its normalizing Weyl element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWitness {
    /// Index of the source vertex of the underlying directed coefficient.
    pub from: usize,
    pub root: Root,
    pub parity: u8,
}

/// The undirected linkage graph over the deterministic coset list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageGraph {
    /// Coset weights in lexicographic order; vertex i is `vertices[i]`.
    pub vertices: Vec<Weight>,
    /// Undirected edges (i < j) with the witnesses that produced them.
    pub edges: Vec<(usize, usize, Vec<EdgeWitness>)>,
}

/// Blocks as a partition of the vertex index set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// Vertex indices per block, each sorted; blocks ordered by least vertex.
    pub blocks: Vec<Vec<usize>>,
    /// Number of blocks found by the oracle.
    pub oracle_count: usize,
}

/// Build the linkage graph by computing the Jantzen row of every vertex.
///
/// An empty coset yields a graph with zero vertices (flagged by the caller as
/// needed). Rows are computed in parallel; theory makes connectivity
/// symmetric, but both directions are still scanned so an asymmetry would
/// simply produce the same edge from the other side.
pub fn linkage_graph(pd: &ParabolicData, lambda_bar: &Weight) -> LinkageGraph {
    let vertices = enumerate_coset(pd, lambda_bar);
    let index: BTreeMap<&Weight, usize> =
        vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let directed: Vec<(usize, usize, Vec<EdgeWitness>)> = vertices
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, lam)| {
            let row = jantzen_row(pd, lam);
            let mut out = Vec::new();
            for (target, entry) in row {
                if entry.c == 0 {
                    continue;
                }
                if let Some(&j) = index.get(&target) {
                    if i != j {
                        let witnesses = entry
                            .witnesses
                            .iter()
                            .map(|&(root, parity)| EdgeWitness { from: i, root, parity })
                            .collect();
                        out.push((i, j, witnesses));
                    }
                }
            }
            out
        })
        .collect();

    // Merge directed coefficients into undirected edges keyed by (min, max).
    let mut merged: BTreeMap<(usize, usize), Vec<EdgeWitness>> = BTreeMap::new();
    for (i, j, ws) in directed {
        let key = (i.min(j), i.max(j));
        merged.entry(key).or_default().extend(ws);
    }
    let edges = merged.into_iter().map(|((i, j), ws)| (i, j, ws)).collect();
    LinkageGraph { vertices, edges }
}

/// Connected components of the linkage graph via union-find with
/// deterministic least-index representatives.
pub fn block_decomposition_oracle(pd: &ParabolicData, lambda_bar: &Weight) -> BlockDecomposition {
    let graph = linkage_graph(pd, lambda_bar);
    decomposition_from_graph(&graph)
}

/// Connected components of an already-built linkage graph.
pub fn decomposition_from_graph(graph: &LinkageGraph) -> BlockDecomposition {
    let n = graph.vertices.len();
    let mut uf = UnionFind::new(n);
    for (i, j, _) in &graph.edges {
        uf.union(*i, *j);
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_root.entry(uf.find(v)).or_default().push(v);
    }
    let blocks: Vec<Vec<usize>> = by_root.into_values().collect();
    BlockDecomposition {
        oracle_count: blocks.len(),
        blocks,
    }
}

/// Whether λ and μ lie in the same block of the coset of λ̄.
pub fn same_block(
    pd: &ParabolicData,
    lambda_bar: &Weight,
    lam: &Weight,
    mu: &Weight,
) -> Result<bool, CoreError> {
    let graph = linkage_graph(pd, lambda_bar);
    let find = |w: &Weight| {
        graph
            .vertices
            .iter()
            .position(|v| v == w)
            .ok_or_else(|| CoreError::WeightNotInCoset { weight: w.to_string() })
    };
    let (i, j) = (find(lam)?, find(mu)?);
    let dec = decomposition_from_graph(&graph);
    Ok(dec
        .blocks
        .iter()
        .any(|b| b.contains(&i) && b.contains(&j)))
}

// =============================================================================
// Union-find
// =============================================================================

/// Minimal union-find with path compression; the representative of a set is
/// normalized to its least member when blocks are read out.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins, keeping representatives deterministic.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}
