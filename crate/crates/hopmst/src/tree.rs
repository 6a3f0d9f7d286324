//! Spanning trees with validated invariants and JSON serialization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DisjointSets, Edge, Graph};

/// A validated spanning tree of a [`Graph`].
///
/// Construction checks: exactly `n-1` edges, acyclic, connected, every
/// edge present in the underlying graph. `total_weight` is the sum over
/// the canonically sorted edge set, so two trees with the same edge set
/// always report the bit-identical weight.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<usize>,
    edges: Vec<Edge>,
    total_weight: f64,
    hop_diameter: usize,
}

impl SpanningTree {
    /// Build from a parent array (`parent[root] == root`).
    pub fn from_parents(g: &Graph, root: usize, parent: Vec<usize>) -> Result<Self> {
        let n = g.vertex_count();
        if parent.len() != n {
            return Err(Error::Invariant(format!(
                "parent array has length {}, expected {n}",
                parent.len()
            )));
        }
        if root >= n || parent[root] != root {
            return Err(Error::Invariant("root must map to itself".into()));
        }
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        for (v, &p) in parent.iter().enumerate() {
            if v == root {
                continue;
            }
            let w = g
                .edge_weight(v, p)
                .ok_or_else(|| Error::Invariant(format!("tree edge {v}-{p} not in graph")))?;
            let (a, b) = Edge::new(v, p, w).key();
            edges.push(Edge::new(a, b, w));
        }
        Self::validate(g, root, parent, edges)
    }

    /// Build from an explicit edge set; the parent array is derived by a
    /// traversal from `root`.
    pub fn from_edges(g: &Graph, root: usize, edges: Vec<Edge>) -> Result<Self> {
        let n = g.vertex_count();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::Invariant("tree edge endpoint out of range".into()));
            }
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut parent: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        let mut canon: Vec<Edge> = edges
            .into_iter()
            .map(|e| {
                let (a, b) = e.key();
                Edge::new(a, b, e.w)
            })
            .collect();
        canon.sort_by_key(Edge::key);
        Self::validate(g, root, parent, canon)
    }

    fn validate(g: &Graph, root: usize, parent: Vec<usize>, mut edges: Vec<Edge>) -> Result<Self> {
        let n = g.vertex_count();
        edges.sort_by_key(Edge::key);
        if edges.len() + 1 != n.max(1) {
            return Err(Error::Invariant(format!(
                "tree has {} edges, expected {}",
                edges.len(),
                n.saturating_sub(1)
            )));
        }
        let mut dsu = DisjointSets::new(n);
        for e in &edges {
            match g.edge_weight(e.u, e.v) {
                Some(w) if w == e.w => {}
                _ => return Err(Error::Invariant(format!("tree edge {}-{} not in graph", e.u, e.v))),
            }
            if !dsu.union(e.u, e.v) {
                return Err(Error::Invariant(format!("cycle through edge {}-{}", e.u, e.v)));
            }
        }
        // n-1 successful unions on n vertices means connected and acyclic.
        let total_weight = edges.iter().map(|e| e.w).sum();
        let hop_diameter = diameter_by_double_bfs(n, &edges);
        Ok(SpanningTree { root, parent, edges, total_weight, hop_diameter })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self) -> &[usize] {
        &self.parent
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// Canonically sorted edge set.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn hop_diameter(&self) -> usize {
        self.hop_diameter
    }

    /// Adjacency lists of the tree, neighbors in ascending id order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); self.parent.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable_by_key(|&(v, _)| v);
        }
        adj
    }

    pub fn to_document(&self, rounds_used: usize, seed: u64) -> TreeDocument {
        TreeDocument {
            root: self.root,
            parent: self.parent.clone(),
            edges: self.edges.iter().map(|e| (e.u, e.v, e.w)).collect(),
            total_weight: self.total_weight,
            hop_diameter: self.hop_diameter,
            rounds_used,
            seed,
        }
    }

    /// Rebuild and re-validate a tree from its serialized form.
    pub fn from_document(g: &Graph, doc: &TreeDocument) -> Result<Self> {
        let edges = doc.edges.iter().map(|&(u, v, w)| Edge::new(u, v, w)).collect();
        Self::from_edges(g, doc.root, edges)
    }
}

/// Hop diameter of a tree: BFS from vertex 0, then BFS from the farthest
/// vertex found. Exact on trees.
pub fn tree_hop_diameter(tree: &SpanningTree) -> usize {
    tree.hop_diameter()
}

/// Hop-shortest-path tree of an edge subset, rooted at `root`; among
/// equal-depth candidates the lowest id becomes the parent. Errors if the
/// subset does not connect every vertex to the root.
pub(crate) fn hop_bfs_tree(
    g: &Graph,
    edges: &std::collections::BTreeSet<(usize, usize)>,
    root: usize,
) -> Result<SpanningTree> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
    }
    let mut depth = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    depth[root] = 0;
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if v == root {
            continue;
        }
        if depth[v] == usize::MAX {
            return Err(Error::Invariant(format!("vertex {v} not connected to the root")));
        }
        let p = adj[v]
            .iter()
            .copied()
            .find(|&u| depth[u] + 1 == depth[v])
            .ok_or_else(|| Error::Invariant(format!("no BFS parent for vertex {v}")))?;
        parent[v] = p;
    }
    SpanningTree::from_parents(g, root, parent)
}

fn diameter_by_double_bfs(n: usize, edges: &[Edge]) -> usize {
    if n <= 1 {
        return 0;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let far = |src: usize| -> (usize, usize) {
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        let mut best = (src, 0);
        while let Some(u) = queue.pop_front() {
            if dist[u] > best.1 {
                best = (u, dist[u]);
            }
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        best
    };
    let (endpoint, _) = far(0);
    far(endpoint).1
}

/// JSON form of a solve result: the tree plus run metadata.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TreeDocument {
    pub root: usize,
    pub parent: Vec<usize>,
    pub edges: Vec<(usize, usize, f64)>,
    pub total_weight: f64,
    pub hop_diameter: usize,
    pub rounds_used: usize,
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family, GenParams};

    fn star5() -> Graph {
        generate(Family::Star, 5, &GenParams::default(), 0).unwrap()
    }

    #[test]
    fn star_diameter_is_two() {
        let g = star5();
        let tree = SpanningTree::from_edges(&g, 0, g.edges().to_vec()).unwrap();
        assert_eq!(tree.hop_diameter(), 2);
        assert_eq!(tree.total_weight(), 4.0);
    }

    #[test]
    fn path_diameter_is_length() {
        let g = generate(Family::Path, 4, &GenParams::default(), 0).unwrap();
        let tree = SpanningTree::from_edges(&g, 0, g.edges().to_vec()).unwrap();
        assert_eq!(tree.hop_diameter(), 3);
    }

    #[test]
    fn single_edge_diameter_is_one() {
        let g = Graph::from_edge_list("p 2 1\ne 0 1 2.5\n").unwrap();
        let tree = SpanningTree::from_edges(&g, 0, g.edges().to_vec()).unwrap();
        assert_eq!(tree.hop_diameter(), 1);
        assert_eq!(tree.total_weight(), 2.5);
    }

    #[test]
    fn cycle_rejected() {
        let g = Graph::from_edge_list("p 3 3\ne 0 1 1\ne 1 2 1\ne 0 2 5\n").unwrap();
        assert!(SpanningTree::from_edges(&g, 0, g.edges().to_vec()).is_err());
    }

    #[test]
    fn foreign_edge_rejected() {
        let g = Graph::from_edge_list("p 3 2\ne 0 1 1\ne 1 2 1\n").unwrap();
        let edges = vec![Edge::new(0, 1, 1.0), Edge::new(0, 2, 1.0)];
        assert!(SpanningTree::from_edges(&g, 0, edges).is_err());
    }

    #[test]
    fn document_round_trip() {
        let g = star5();
        let tree = SpanningTree::from_edges(&g, 0, g.edges().to_vec()).unwrap();
        let doc = tree.to_document(3, 42);
        let json = serde_json::to_string(&doc).unwrap();
        let back: TreeDocument = serde_json::from_str(&json).unwrap();
        let rebuilt = SpanningTree::from_document(&g, &back).unwrap();
        assert_eq!(rebuilt.total_weight(), tree.total_weight());
        assert_eq!(rebuilt.hop_diameter(), tree.hop_diameter());
    }

    // Double BFS must agree with all-pairs BFS on trees; exhaustive over
    // seeded random trees up to n = 64.
    #[test]
    fn double_bfs_matches_all_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=64usize {
            // random attachment tree
            let mut edges = Vec::new();
            for v in 1..n {
                let p = rng.random_range(0..v);
                edges.push(Edge::new(p, v, 1.0));
            }
            let g = Graph::new(n, edges.clone()).unwrap();
            let tree = SpanningTree::from_edges(&g, 0, edges).unwrap();
            let mut best = 0;
            for s in 0..n {
                for d in g.bfs_hops(s).into_iter().flatten() {
                    best = best.max(d);
                }
            }
            assert_eq!(tree.hop_diameter(), best, "n = {n}");
        }
    }
}
