//! Exact `OPT_h` by exhaustive spanning-tree enumeration on tiny graphs.
//!
//! Ground truth for approximation-ratio and charging tests. Hard-capped
//! at `n <= 10`; beyond that enumeration serves no testing purpose.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DisjointSets, Edge, Graph};
use crate::solver::{solve, SolveParams};
use crate::tree::SpanningTree;

pub const ENUMERATION_CAP: usize = 10;

#[derive(Debug)]
pub struct OptResult {
    /// Weight of the cheapest spanning tree with hop diameter `<= h`;
    /// `None` when no such tree exists.
    pub opt_weight: Option<f64>,
    /// One optimal tree, ties broken by lexicographically smallest edge set.
    pub witness: Option<SpanningTree>,
    /// Spanning trees examined (including those failing the diameter bound).
    pub trees_enumerated: u64,
}

/// Minimum weight over all spanning trees with hop diameter at most `h`.
pub fn brute_force_opt(g: &Graph, h: usize) -> Result<OptResult> {
    let n = g.vertex_count();
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge { n, cap: ENUMERATION_CAP });
    }
    if n <= 1 {
        let witness = SpanningTree::from_edges(g, 0, Vec::new()).ok();
        return Ok(OptResult { opt_weight: Some(0.0), witness, trees_enumerated: 1 });
    }

    // Sort edges by endpoint key so lexicographic index order equals
    // lexicographic edge-set order; the first optimum found is the witness.
    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.sort_by_key(Edge::key);
    let m = edges.len();
    let k = n - 1;
    if m < k {
        return Ok(OptResult { opt_weight: None, witness: None, trees_enumerated: 0 });
    }

    let mut trees_enumerated = 0u64;
    let mut best: Option<(f64, Vec<Edge>)> = None;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let subset: Vec<Edge> = idx.iter().map(|&i| edges[i]).collect();
        if is_spanning(n, &subset) {
            trees_enumerated += 1;
            if diameter(n, &subset) <= h {
                let weight: f64 = subset.iter().map(|e| e.w).sum();
                let better = match &best {
                    None => true,
                    Some((bw, _)) => weight < *bw,
                };
                if better {
                    best = Some((weight, subset));
                }
            }
        }
        // advance to the next k-combination of 0..m in lexicographic order
        let advanced = {
            let mut i = k;
            loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if idx[i] < i + m - k {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break true;
                }
            }
        };
        if !advanced {
            break;
        }
    }

    match best {
        Some((weight, subset)) => {
            let witness = SpanningTree::from_edges(g, 0, subset)?;
            debug_assert_eq!(witness.total_weight(), weight);
            Ok(OptResult {
                opt_weight: Some(weight),
                witness: Some(witness),
                trees_enumerated,
            })
        }
        None => Ok(OptResult { opt_weight: None, witness: None, trees_enumerated }),
    }
}

fn is_spanning(n: usize, edges: &[Edge]) -> bool {
    let mut dsu = DisjointSets::new(n);
    edges.iter().all(|e| dsu.union(e.u, e.v))
}

fn diameter(n: usize, edges: &[Edge]) -> usize {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let far = |src: usize| {
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        let mut best = (src, 0usize);
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
    far(far(0).0).1
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioRow {
    pub seed: u64,
    pub total_weight: f64,
    pub weight_ratio: f64,
    pub hop_diameter: usize,
    pub rounds_used: usize,
    pub diameter_slack: f64,
}

#[derive(Debug, Serialize)]
pub struct RatioReport {
    pub opt_weight: f64,
    pub rows: Vec<RatioRow>,
    pub min_ratio: f64,
    pub median_ratio: f64,
    pub max_ratio: f64,
}

/// Run the sampling solver once per seed against the brute-force optimum
/// and report ratio statistics. Errors if any run undercuts the optimum
/// or breaks the hard diameter bound, or if the instance is infeasible.
///
/// The ratio >= 1 assertion presumes `OPT_h` is also the unconstrained
/// MST weight (true for the usual calibration instances); with a strictly
/// tighter optimum the solver's diameter slack may legally undercut it.
pub fn ratio_report(g: &Graph, h: usize, epsilon: f64, seeds: &[u64]) -> Result<RatioReport> {
    let opt = brute_force_opt(g, h)?;
    let opt_weight = opt.opt_weight.ok_or(Error::Infeasible {
        u: 0,
        v: 0,
        dist: usize::MAX,
        h,
    })?;
    let mut rows = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let params = SolveParams::new(h, epsilon, seed)?;
        let out = solve(g, &params)?;
        let weight = out.tree.total_weight();
        let ratio = weight / opt_weight;
        if ratio < 1.0 {
            return Err(Error::Invariant(format!(
                "seed {seed}: solver weight {weight} below optimum {opt_weight}"
            )));
        }
        let diameter = out.tree.hop_diameter();
        let rounds = out.rounds_used();
        if diameter > 4 * rounds * h {
            return Err(Error::Invariant(format!(
                "seed {seed}: diameter {diameter} above 4 * {rounds} * {h}"
            )));
        }
        rows.push(RatioRow {
            seed,
            total_weight: weight,
            weight_ratio: ratio,
            hop_diameter: diameter,
            rounds_used: rounds,
            diameter_slack: diameter as f64 / h as f64,
        });
    }
    let mut ratios: Vec<f64> = rows.iter().map(|r| r.weight_ratio).collect();
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = ratios[ratios.len() / 2];
    Ok(RatioReport {
        opt_weight,
        min_ratio: ratios[0],
        median_ratio: median,
        max_ratio: *ratios.last().unwrap(),
        rows,
    })
}
