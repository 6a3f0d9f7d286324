//! Hop-constrained distances `d^(h)` and minimum-weight `<=h`-edge paths.
//!
//! Everything here is a layered Bellman-Ford: `dist_i[v]` is the cheapest
//! walk of at most `i` edges reaching `v`. With non-negative weights that
//! equals the cheapest simple path of at most `i` edges, which is the
//! distance the solver rounds need. Ties are always broken toward the
//! lowest id so repeated runs are bitwise identical.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One traversed edge `(from, to, weight)` of a reconstructed path.
pub type PathEdge = (usize, usize, f64);

#[derive(Clone, Copy, Debug, PartialEq)]
struct Label {
    dist: f64,
    origin: usize,
}

struct Layered {
    rounds: usize,
    // labels[i][v]: best (weight, origin) over walks of <= i edges; None = unreachable.
    labels: Vec<Vec<Option<Label>>>,
    // preds[i][v]: Some(u) if layer i improved v via edge (u, v); None = carried over.
    preds: Vec<Vec<Option<usize>>>,
}

/// Core layered relaxation from a set of sources.
///
/// Rounds are capped at `n-1`: beyond that no walk with a smaller weight
/// exists (any optimal walk shortcuts to a simple path), so the `<=h`
/// semantics is unchanged while memory stays bounded.
fn layered_dp(g: &Graph, sources: &[usize], h: usize) -> Layered {
    let n = g.vertex_count();
    let rounds = h.min(n.saturating_sub(1));
    let mut labels: Vec<Vec<Option<Label>>> = Vec::with_capacity(rounds + 1);
    let mut preds: Vec<Vec<Option<usize>>> = Vec::with_capacity(rounds + 1);

    let mut base: Vec<Option<Label>> = vec![None; n];
    for &s in sources {
        base[s] = Some(Label { dist: 0.0, origin: s });
    }
    labels.push(base);
    preds.push(vec![None; n]);

    for i in 1..=rounds {
        let prev = &labels[i - 1];
        let mut cur: Vec<Option<Label>> = prev.clone();
        let mut pred: Vec<Option<usize>> = vec![None; n];
        for v in 0..n {
            for &(u, w) in g.neighbors(v) {
                if let Some(lu) = prev[u] {
                    let cand = Label { dist: lu.dist + w, origin: lu.origin };
                    let better = match cur[v] {
                        None => true,
                        Some(best) => {
                            cand.dist < best.dist
                                || (cand.dist == best.dist && cand.origin < best.origin)
                        }
                    };
                    if better {
                        cur[v] = Some(cand);
                        pred[v] = Some(u);
                    }
                }
            }
        }
        labels.push(cur);
        preds.push(pred);
    }
    Layered { rounds, labels, preds }
}

// Walk predecessor layers back from `target`. Returned edges are in
// discovery order, i.e. from `target` toward the source, oriented
// (nearer-to-target, nearer-to-source).
fn walk_back(g: &Graph, dp: &Layered, target: usize) -> Vec<PathEdge> {
    let mut edges = Vec::new();
    let mut layer = dp.rounds;
    let mut v = target;
    while layer > 0 {
        if let Some(u) = dp.preds[layer][v] {
            let w = g.edge_weight(u, v).expect("pred edge must exist");
            edges.push((v, u, w));
            v = u;
        }
        layer -= 1;
    }
    shortcut_repeats(edges)
}

// Remove revisits (possible only through zero-weight cycles): splice out
// the walk segment between two occurrences of the same vertex.
fn shortcut_repeats(mut edges: Vec<PathEdge>) -> Vec<PathEdge> {
    loop {
        let mut seq = Vec::with_capacity(edges.len() + 1);
        if let Some(&(first, _, _)) = edges.first() {
            seq.push(first);
        }
        for &(_, to, _) in &edges {
            seq.push(to);
        }
        let mut seen = std::collections::HashMap::new();
        let mut cut: Option<(usize, usize)> = None;
        for (idx, &v) in seq.iter().enumerate() {
            if let Some(&prev) = seen.get(&v) {
                cut = Some((prev, idx));
                break;
            }
            seen.insert(v, idx);
        }
        match cut {
            Some((i, j)) => {
                edges.drain(i..j);
            }
            None => return edges,
        }
    }
}

/// Per-source table of hop-constrained distances with enough predecessor
/// state to reconstruct an optimal `<=h`-edge path to any vertex.
pub struct HopPathTable {
    source: usize,
    h: usize,
    dp: Layered,
}

impl HopPathTable {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn hop_bound(&self) -> usize {
        self.h
    }

    /// `d^(h)(source, v)`, or `None` if no `<=h`-edge path exists.
    pub fn dist(&self, v: usize) -> Option<f64> {
        self.dp.labels[self.dp.rounds][v].map(|l| l.dist)
    }

    pub fn distances(&self) -> Vec<Option<f64>> {
        self.dp.labels[self.dp.rounds].iter().map(|l| l.map(|l| l.dist)).collect()
    }
}

/// `h` rounds of layered relaxation from `source`.
pub fn hop_bellman_ford(g: &Graph, source: usize, h: usize) -> HopPathTable {
    assert!(source < g.vertex_count(), "source out of range");
    assert!(h >= 1, "hop bound must be >= 1");
    HopPathTable { source, h, dp: layered_dp(g, &[source], h) }
}

/// Minimum-weight `<=h`-edge path from the table's source to `target`,
/// ordered source first. Errors if `target` is unreachable within `h` hops.
pub fn reconstruct_path(g: &Graph, table: &HopPathTable, target: usize) -> Result<Vec<PathEdge>> {
    if table.dist(target).is_none() {
        return Err(Error::Invariant(format!(
            "vertex {target} unreachable from {} within {} hops",
            table.source, table.h
        )));
    }
    let mut edges = walk_back(g, &table.dp, target);
    edges.reverse();
    for e in &mut edges {
        *e = (e.1, e.0, e.2);
    }
    Ok(edges)
}

/// Multi-source table: for every vertex, the nearest source under `d^(h)`
/// with deterministic tie-breaking (smallest distance, then lowest source
/// id, then lexicographically smallest path by the predecessor rule).
pub struct NearestTable {
    sources: Vec<usize>,
    h: usize,
    dp: Layered,
}

impl NearestTable {
    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    /// `(nearest source, d^(h))` for `v`, or `None` if no source is within
    /// `h` hops.
    pub fn nearest(&self, v: usize) -> Option<(usize, f64)> {
        self.dp.labels[self.dp.rounds][v].map(|l| (l.origin, l.dist))
    }

    /// Path from `v` to its nearest source, ordered with `v` first.
    pub fn path_to_source(&self, g: &Graph, v: usize) -> Result<Vec<PathEdge>> {
        if self.nearest(v).is_none() {
            return Err(Error::Invariant(format!(
                "vertex {v} has no source within {} hops",
                self.h
            )));
        }
        Ok(walk_back(g, &self.dp, v))
    }
}

/// One `h`-round sweep equivalent to running [`hop_bellman_ford`] from
/// every source and taking the per-vertex minimum.
pub fn nearest_in_set(g: &Graph, sources: &[usize], h: usize) -> Result<NearestTable> {
    if sources.is_empty() {
        return Err(Error::Invariant("nearest_in_set needs a non-empty source set".into()));
    }
    for &s in sources {
        if s >= g.vertex_count() {
            return Err(Error::VertexOutOfRange(s, g.vertex_count()));
        }
    }
    let mut sources = sources.to_vec();
    sources.sort_unstable();
    sources.dedup();
    Ok(NearestTable { h, dp: layered_dp(g, &sources, h), sources })
}
