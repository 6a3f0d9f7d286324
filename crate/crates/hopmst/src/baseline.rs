//! Matching-style clustering baseline for benchmark comparison.
//!
//! Rounds of a greedy maximal matching on the auxiliary complete graph
//! whose edge weights are the pairwise `d^(h)` distances among active
//! vertices: repeatedly take the globally cheapest unmatched pair, merge
//! its endpoints along the connecting path, and deactivate the higher id.
//! The greedy rule deliberately replaces the exact minimum-weight
//! maximum-cardinality matching, so this baseline tracks the shape of the
//! prior algorithm but not its constants; reports say so.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hopdist::{hop_bellman_ford, reconstruct_path, HopPathTable};
use crate::tree::{hop_bfs_tree, SpanningTree};

/// Pairwise `d^(h)` distances among an active vertex set; `None` marks
/// pairs with no `<=h`-edge connecting path.
pub struct AuxiliaryGraph {
    vertices: Vec<usize>,
    dist: Vec<Vec<Option<f64>>>,
}

impl AuxiliaryGraph {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Distance between the i-th and j-th active vertices.
    pub fn dist(&self, i: usize, j: usize) -> Option<f64> {
        if i == j {
            Some(0.0)
        } else {
            self.dist[i][j]
        }
    }

    pub fn from_tables(vertices: Vec<usize>, tables: &[HopPathTable]) -> Self {
        let k = vertices.len();
        let mut dist = vec![vec![None; k]; k];
        for (i, table) in tables.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                dist[i][j] = table.dist(v);
            }
        }
        AuxiliaryGraph { vertices, dist }
    }
}

/// Greedy maximal matching: repeatedly the cheapest finite-distance
/// unmatched pair, ties broken by the (lower id, higher id) pair order.
/// Returns vertex-id pairs with the lower id first. Errors when no pair
/// has a finite distance at all.
pub fn greedy_matching_round(aux: &AuxiliaryGraph) -> Result<Vec<(usize, usize)>> {
    let k = aux.vertices.len();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if let Some(d) = aux.dist(i, j) {
                candidates.push((d, i, j));
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::MatchingStall(k));
    }
    candidates.sort_by(|a, b| {
        a.0.partial_cmp(&b.0).unwrap().then_with(|| (a.1, a.2).cmp(&(b.1, b.2)))
    });
    let mut matched = vec![false; k];
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        if !matched[i] && !matched[j] {
            matched[i] = true;
            matched[j] = true;
            pairs.push((aux.vertices[i], aux.vertices[j]));
        }
    }
    Ok(pairs)
}

#[derive(Debug)]
pub struct BaselineOutcome {
    pub tree: SpanningTree,
    /// Matching rounds executed.
    pub rounds_used: usize,
    /// The last surviving active vertex, used as the BFS root.
    pub root: usize,
}

/// Matching rounds until a single active vertex remains; returns the
/// hop-BFS tree of the accumulated path union rooted at the survivor.
pub fn solve_matching_baseline(g: &Graph, h: usize) -> Result<BaselineOutcome> {
    crate::solver::precheck_feasibility(g, h)?;
    let n = g.vertex_count();
    let mut active: Vec<usize> = (0..n).collect();
    let mut tree_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut rounds_used = 0;

    while active.len() > 1 {
        rounds_used += 1;
        // per-source tables are independent; order-preserving parallel map
        use rayon::prelude::*;
        let tables: Vec<HopPathTable> =
            active.par_iter().map(|&s| hop_bellman_ford(g, s, h)).collect();
        let aux = AuxiliaryGraph::from_tables(active.clone(), &tables);
        let pairs = greedy_matching_round(&aux)?;
        if pairs.is_empty() {
            return Err(Error::MatchingStall(active.len()));
        }
        let mut deactivated: BTreeSet<usize> = BTreeSet::new();
        for &(u, v) in &pairs {
            let (survivor, removed) = (u.min(v), u.max(v));
            let pos = active.iter().position(|&x| x == survivor).unwrap();
            let path = reconstruct_path(g, &tables[pos], removed)?;
            for &(a, b, _) in &path {
                tree_edges.insert((a.min(b), a.max(b)));
            }
            deactivated.insert(removed);
        }
        active.retain(|v| !deactivated.contains(v));
    }

    let root = active[0];
    let tree = hop_bfs_tree(g, &tree_edges, root)?;
    Ok(BaselineOutcome { tree, rounds_used, root })
}
