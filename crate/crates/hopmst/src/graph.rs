//! Undirected weighted graphs: validation, edge-list I/O and BFS helpers.
//!
//! Vertices are dense ids `0..n`. Graphs are immutable after
//! construction and safe to share across worker threads.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An undirected edge with a non-negative finite weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, w: f64) -> Self {
        Edge { u, v, w }
    }

    /// Endpoints normalized so the smaller id comes first.
    pub fn key(&self) -> (usize, usize) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }
}

/// Simple undirected graph with non-negative edge weights.
///
/// No self-loops, no parallel edges. Connectivity is computed once at
/// construction; loading a disconnected graph succeeds (inspection
/// tools still work) but solvers refuse it.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, f64)>>,
    weight_by_key: HashMap<(usize, usize), f64>,
    connected: bool,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut weight_by_key = HashMap::with_capacity(edges.len());
        for e in &edges {
            if e.u >= n {
                return Err(Error::VertexOutOfRange(e.u, n));
            }
            if e.v >= n {
                return Err(Error::VertexOutOfRange(e.v, n));
            }
            if e.u == e.v {
                return Err(Error::SelfLoop(e.u));
            }
            if !e.w.is_finite() || e.w < 0.0 {
                return Err(Error::BadWeight { u: e.u, v: e.v, w: e.w });
            }
            if weight_by_key.insert(e.key(), e.w).is_some() {
                let (a, b) = e.key();
                return Err(Error::DuplicateEdge(a, b));
            }
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable_by_key(|&(v, _)| v);
        }
        let connected = connected_component_size(n, &adj) == n;
        Ok(Graph { n, edges, adj, weight_by_key, connected })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with edge weights, in ascending id order.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adj[v]
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight_by_key.contains_key(&Edge::new(u, v, 0.0).key())
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        self.weight_by_key.get(&Edge::new(u, v, 0.0).key()).copied()
    }

    /// BFS hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_hops(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &(v, _) in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Parse the line-oriented edge-list format:
    ///
    /// ```text
    /// # comment
    /// p <n> <m>
    /// e <u> <v> <w>
    /// ```
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut declared_m = 0usize;
        let mut edges: Vec<Edge> = Vec::new();
        let mut edge_lines: Vec<usize> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("p") => {
                    if n.is_some() {
                        return parse_err(line_no, "duplicate problem line");
                    }
                    let nn = parse_field::<usize>(line_no, parts.next(), "vertex count")?;
                    let mm = parse_field::<usize>(line_no, parts.next(), "edge count")?;
                    if parts.next().is_some() {
                        return parse_err(line_no, "trailing tokens on problem line");
                    }
                    n = Some(nn);
                    declared_m = mm;
                }
                Some("e") => {
                    if n.is_none() {
                        return parse_err(line_no, "edge before problem line");
                    }
                    let u = parse_field::<usize>(line_no, parts.next(), "endpoint")?;
                    let v = parse_field::<usize>(line_no, parts.next(), "endpoint")?;
                    let w = parse_field::<f64>(line_no, parts.next(), "weight")?;
                    if parts.next().is_some() {
                        return parse_err(line_no, "trailing tokens on edge line");
                    }
                    edges.push(Edge::new(u, v, w));
                    edge_lines.push(line_no);
                }
                Some(other) => {
                    return parse_err(line_no, &format!("unknown line type '{other}'"));
                }
                None => unreachable!(),
            }
        }

        let n = n.ok_or(Error::Parse { line: 0, msg: "missing problem line".into() })?;
        if edges.len() != declared_m {
            return Err(Error::Parse {
                line: 0,
                msg: format!("problem line declares {declared_m} edges, found {}", edges.len()),
            });
        }
        // Re-attach line numbers to structural errors found during construction.
        match Graph::new(n, edges.clone()) {
            Ok(g) => Ok(g),
            Err(err) => {
                let culprit = |pred: &dyn Fn(&Edge) -> bool| {
                    edges.iter().position(pred).map(|i| edge_lines[i]).unwrap_or(0)
                };
                let line = match &err {
                    Error::SelfLoop(u) => culprit(&|e: &Edge| e.u == e.v && e.u == *u),
                    Error::DuplicateEdge(a, b) => {
                        let mut seen = std::collections::HashSet::new();
                        let mut line = 0;
                        for (i, e) in edges.iter().enumerate() {
                            if !seen.insert(e.key()) && e.key() == (*a, *b) {
                                line = edge_lines[i];
                                break;
                            }
                        }
                        line
                    }
                    Error::BadWeight { u, v, .. } => {
                        culprit(&|e: &Edge| e.key() == Edge::new(*u, *v, 0.0).key())
                    }
                    Error::VertexOutOfRange(v, _) => culprit(&|e: &Edge| e.u == *v || e.v == *v),
                    _ => 0,
                };
                Err(Error::Parse { line, msg: err.to_string() })
            }
        }
    }

    /// Serialize back to the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "e {} {} {}", e.u, e.v, e.w);
        }
        out
    }
}

fn parse_err<T>(line: usize, msg: &str) -> Result<T> {
    Err(Error::Parse { line, msg: msg.to_string() })
}

fn parse_field<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
    tok.parse::<T>().map_err(|_| Error::Parse { line, msg: format!("bad {what} '{tok}'") })
}

fn connected_component_size(n: usize, adj: &[Vec<(usize, f64)>]) -> usize {
    if n == 0 {
        return 0;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &(v, _) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count
}

/// A full problem statement: graph plus the solve inputs.
///
/// `epsilon` may be any positive real; values below `1/poly(n)` make the
/// round budget `ceil(3/epsilon)` itself polynomial, so tiny epsilons are
/// legal but expensive.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub h: usize,
    pub epsilon: f64,
    pub seed: u64,
}

impl Instance {
    pub fn new(graph: Graph, h: usize, epsilon: f64, seed: u64) -> Result<Self> {
        if h < 1 {
            return Err(Error::BadParameter("h must be >= 1".into()));
        }
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::BadParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        Ok(Instance { graph, h, epsilon, seed })
    }
}

/// Weight of a minimum spanning tree by Kruskal's greedy over sorted edges.
///
/// Used as a consistency oracle (`OPT_{n-1}` must equal it) and as the
/// budget precheck for the diameter-sweep solver. Errors on disconnected
/// input.
pub fn kruskal_mst_weight(g: &Graph) -> Result<f64> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut order: Vec<&Edge> = g.edges().iter().collect();
    order.sort_by(|a, b| {
        a.w.partial_cmp(&b.w).unwrap().then_with(|| a.key().cmp(&b.key()))
    });
    let mut dsu = DisjointSets::new(g.vertex_count());
    let mut picked: Vec<f64> = Vec::with_capacity(g.vertex_count().saturating_sub(1));
    for e in order {
        if dsu.union(e.u, e.v) {
            picked.push(e.w);
            if picked.len() + 1 == g.vertex_count() {
                break;
            }
        }
    }
    Ok(picked.iter().sum())
}

/// Union-find with path halving; used by validation and enumeration.
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
