//! Executable form of the charging analysis.
//!
//! The solver's per-round weight increase is bounded by a walk process on
//! an Euler-tour cycle of a reference tree: unroll a tour of the tree
//! into a cycle (every tree edge becomes two arcs), contract the cycle to
//! the minimum-index copies of the currently active vertices, and let
//! every unsampled vertex walk clockwise to the first sampled vertex. The
//! total walked weight `phi` dominates the round's increment, and its
//! expectation is at most an explicit multiple of twice the reference
//! tree's weight. Both inequalities are checked here, exactly per round
//! and by Monte-Carlo in expectation, together with the geometric-sum
//! fact the expectation bound rests on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{SolveTrace, ROOT};
use crate::tree::SpanningTree;

/// Euler tour of a tree unrolled into a directed cycle.
///
/// `tour[i]` is the i-th visited vertex; arc `i` runs `tour[i] ->
/// tour[(i+1) % t]` with the weight of the traversed tree edge, so every
/// tree edge contributes its weight exactly twice and the cycle's total
/// weight is twice the tree weight.
#[derive(Debug, Clone)]
pub struct EulerCycle {
    tour: Vec<usize>,
    arc_weights: Vec<f64>,
    min_index_copy: Vec<usize>,
}

impl EulerCycle {
    pub fn len(&self) -> usize {
        self.tour.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tour.is_empty()
    }

    pub fn tour(&self) -> &[usize] {
        &self.tour
    }

    pub fn arc_weights(&self) -> &[f64] {
        &self.arc_weights
    }

    /// Smallest tour index whose copy is vertex `v`.
    pub fn min_index_copy(&self, v: usize) -> usize {
        self.min_index_copy[v]
    }

    pub fn total_weight(&self) -> f64 {
        self.arc_weights.iter().sum()
    }
}

/// Depth-first Euler tour from `root`, children visited in ascending id
/// order; the canonical tour all verifiers use.
pub fn build_euler_cycle(tree: &SpanningTree, root: usize) -> EulerCycle {
    let n = tree.vertex_count();
    let adj = tree.adjacency();
    let mut tour = vec![root];
    let mut arcs: Vec<f64> = Vec::with_capacity(2 * n.saturating_sub(1));
    // (vertex, parent, next neighbor position)
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
        let mut descended = false;
        while *pos < adj[v].len() {
            let (u, w) = adj[v][*pos];
            *pos += 1;
            if u != parent {
                tour.push(u);
                arcs.push(w);
                stack.push((u, v, 0));
                descended = true;
                break;
            }
        }
        if !descended {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                let w = adj[v]
                    .iter()
                    .find(|&&(x, _)| x == p)
                    .map(|&(_, w)| w)
                    .expect("parent edge");
                tour.push(p);
                arcs.push(w);
            }
        }
    }
    // the closing return to the root duplicates tour[0]
    if tour.len() > 1 {
        tour.pop();
    }
    let mut min_index_copy = vec![usize::MAX; n];
    for (i, &v) in tour.iter().enumerate() {
        if min_index_copy[v] == usize::MAX {
            min_index_copy[v] = i;
        }
    }
    EulerCycle { tour, arc_weights: arcs, min_index_copy }
}

/// The Euler cycle restricted to the minimum-index copies of an active
/// set, with skipped arcs summed into the surviving arcs.
#[derive(Debug, Clone)]
pub struct ContractedCycle {
    /// Graph vertex ids in tour order.
    vertices: Vec<usize>,
    /// Original tour index of each retained copy.
    tour_indices: Vec<usize>,
    /// Arc `j` runs `vertices[j] -> vertices[(j+1) % t]`.
    arc_weights: Vec<f64>,
}

impl ContractedCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn tour_indices(&self) -> &[usize] {
        &self.tour_indices
    }

    pub fn arc_weights(&self) -> &[f64] {
        &self.arc_weights
    }

    pub fn total_weight(&self) -> f64 {
        self.arc_weights.iter().sum()
    }
}

/// Keep only the minimum-index copies of `active` vertices; contracted
/// arc weights are the sums over the skipped underlying arcs. A single
/// active vertex degenerates to one self-arc carrying the whole cycle
/// weight.
pub fn contract_cycle(cycle: &EulerCycle, active: &[usize]) -> Result<ContractedCycle> {
    if active.is_empty() {
        return Err(Error::Invariant("contract_cycle needs a non-empty active set".into()));
    }
    let is_active: std::collections::HashSet<usize> = active.iter().copied().collect();
    let t = cycle.len();
    let mut keep: Vec<usize> = Vec::with_capacity(active.len());
    for (i, &v) in cycle.tour().iter().enumerate() {
        if is_active.contains(&v) && cycle.min_index_copy(v) == i {
            keep.push(i);
        }
    }
    if keep.is_empty() {
        return Err(Error::Invariant("no active vertex appears on the cycle".into()));
    }
    let mut vertices = Vec::with_capacity(keep.len());
    let mut arc_weights = Vec::with_capacity(keep.len());
    for (j, &i) in keep.iter().enumerate() {
        vertices.push(cycle.tour()[i]);
        let next = keep[(j + 1) % keep.len()];
        let mut w = 0.0;
        // a one-vertex tree has no arcs at all
        if !cycle.arc_weights().is_empty() {
            let mut k = i;
            loop {
                w += cycle.arc_weights()[k];
                k = (k + 1) % t;
                if k == next {
                    break;
                }
                if k == i {
                    break; // single retained copy: full loop
                }
            }
        }
        arc_weights.push(w);
    }
    Ok(ContractedCycle { vertices, tour_indices: keep, arc_weights })
}

/// One charged vertex: its first sampled clockwise successor and the
/// walked weight.
#[derive(Debug, Clone, Serialize)]
pub struct ChargeEntry {
    pub vertex: usize,
    pub next: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChargingResult {
    pub charges: Vec<ChargeEntry>,
    /// Sum of the charged walk weights.
    pub phi: f64,
}

impl ChargingResult {
    pub fn charge_of(&self, vertex: usize) -> Option<&ChargeEntry> {
        self.charges.iter().find(|c| c.vertex == vertex)
    }
}

/// Walk every unsampled copy clockwise to the first sampled copy. The
/// solver's root rule keeps `sampled` non-empty, which guarantees every
/// walk terminates.
pub fn charge(contracted: &ContractedCycle, sampled: &[usize]) -> Result<ChargingResult> {
    let is_sampled: std::collections::HashSet<usize> = sampled.iter().copied().collect();
    let t = contracted.len();
    if !contracted.vertices.iter().any(|v| is_sampled.contains(v)) {
        return Err(Error::Invariant("no sampled vertex on the contracted cycle".into()));
    }
    let mut charges = Vec::new();
    let mut phi = 0.0;
    for j in 0..t {
        let v = contracted.vertices[j];
        if is_sampled.contains(&v) {
            continue;
        }
        let mut weight = 0.0;
        let mut k = j;
        let next = loop {
            weight += contracted.arc_weights[k];
            k = (k + 1) % t;
            if is_sampled.contains(&contracted.vertices[k]) {
                break contracted.vertices[k];
            }
            if k == j {
                return Err(Error::Invariant("charging walk looped".into()));
            }
        };
        phi += weight;
        charges.push(ChargeEntry { vertex: v, next, weight });
    }
    Ok(ChargingResult { charges, phi })
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundCheck {
    pub round: usize,
    /// `w(T_i) - w(T_{i-1})` from the trace.
    pub increment: f64,
    pub phi: f64,
    /// increment <= phi.
    pub ok: bool,
    /// Every merge cost is at most its charged walk weight.
    pub merges_ok: bool,
}

#[derive(Debug, Serialize)]
pub struct ClaimMedReport {
    pub rounds: Vec<RoundCheck>,
    pub pass: bool,
}

/// Recompute `phi` for every traced round from the realized sampled sets
/// and check the per-round inequality `w(T_i) - w(T_{i-1}) <= phi(C_i)`,
/// plus the per-merge refinement `d^(h)(u, v*) <= walked weight of u`.
/// The reference tree must span the same graph with hop diameter at most
/// the trace's `h`.
pub fn verify_claim_med(
    g: &Graph,
    trace: &SolveTrace,
    reference: &SpanningTree,
) -> Result<ClaimMedReport> {
    if reference.vertex_count() != g.vertex_count() || reference.vertex_count() != trace.n {
        return Err(Error::Invariant("reference tree does not span the traced graph".into()));
    }
    if reference.hop_diameter() > trace.h {
        return Err(Error::BadReferenceTree { diameter: reference.hop_diameter(), h: trace.h });
    }
    let cycle = build_euler_cycle(reference, reference.root());
    let mut rounds = Vec::with_capacity(trace.rounds.len());
    let mut pass = true;
    for record in &trace.rounds {
        let contracted = contract_cycle(&cycle, &record.active)?;
        let charging = charge(&contracted, &record.sampled)?;
        let ok = record.weight_increment <= charging.phi;
        let mut merges_ok = true;
        for merge in &record.merges {
            match charging.charge_of(merge.u) {
                Some(entry) => {
                    if merge.weight > entry.weight {
                        merges_ok = false;
                    }
                }
                None => merges_ok = false,
            }
        }
        pass &= ok && merges_ok;
        rounds.push(RoundCheck {
            round: record.index,
            increment: record.weight_increment,
            phi: charging.phi,
            ok,
            merges_ok,
        });
    }
    Ok(ClaimMedReport { rounds, pass })
}

/// Explicit constant for the expectation bound: with sampling probability
/// `n^-eps` the per-edge overcount is at most `(n^eps + 1)^2`, and one
/// `n^eps` is already paid by the probability factor, leaving
/// `(n^eps + 1)^2 / n^eps` against twice the reference weight.
pub fn claim_hard_constant(n: usize, epsilon: f64) -> f64 {
    let m = (n as f64).powf(epsilon);
    (m + 1.0) * (m + 1.0) / m
}

#[derive(Debug, Serialize)]
pub struct ClaimHardEstimate {
    pub trials: usize,
    pub mean_phi: f64,
    pub std_error: f64,
    /// `claim_hard_constant(n, eps) * 2 * w(reference)`.
    pub bound: f64,
    /// mean <= bound + 5 * std_error.
    pub pass: bool,
}

/// Monte-Carlo estimate of the first round's expected charged weight
/// under fresh sampling, checked against the explicit bound. Trials own
/// derived seeds and run on the rayon pool; the aggregation sums the
/// collected values in trial order with Kahan compensation, so parallel
/// and serial runs agree bitwise.
pub fn estimate_claim_hard(
    g: &Graph,
    epsilon: f64,
    reference: &SpanningTree,
    h: usize,
    trials: usize,
    seed: u64,
) -> Result<ClaimHardEstimate> {
    if trials < 100 {
        return Err(Error::BadParameter("claim-hard estimation needs trials >= 100".into()));
    }
    if reference.vertex_count() != g.vertex_count() {
        return Err(Error::Invariant("reference tree does not span the graph".into()));
    }
    if reference.hop_diameter() > h {
        return Err(Error::BadReferenceTree { diameter: reference.hop_diameter(), h });
    }
    let n = g.vertex_count();
    let cycle = build_euler_cycle(reference, reference.root());
    let all: Vec<usize> = (0..n).collect();
    let contracted = contract_cycle(&cycle, &all)?;
    let p = (n as f64).powf(-epsilon);

    use rayon::prelude::*;
    let phis: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(crate::solver::derive_trial_seed(seed, trial as u64));
            let mut sampled = vec![ROOT];
            for v in 0..n {
                if v == ROOT {
                    continue;
                }
                if rng.random::<f64>() < p {
                    sampled.push(v);
                }
            }
            charge(&contracted, &sampled).map(|c| c.phi)
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut sq_sum = 0.0f64;
    let mut sq_comp = 0.0f64;
    for phi in phis {
        let y = phi - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let y2 = phi * phi - sq_comp;
        let t2 = sq_sum + y2;
        sq_comp = (t2 - sq_sum) - y2;
        sq_sum = t2;
    }
    let mean = sum / trials as f64;
    let variance = (sq_sum / trials as f64 - mean * mean).max(0.0);
    let std_error = (variance / trials as f64).sqrt();
    let bound = claim_hard_constant(n, epsilon) * 2.0 * reference.total_weight();
    Ok(ClaimHardEstimate {
        trials,
        mean_phi: mean,
        std_error,
        bound,
        pass: mean <= bound + 5.0 * std_error,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SumExpsCheck {
    pub sum: f64,
    pub bound: f64,
    pub pass: bool,
}

/// `sum_{j<N} sum_{k<N} e^((-j-k)/M)` equals the square of a geometric
/// sum, evaluated in closed form and checked against the explicit
/// `(M+1)^2` bound (the two geometric sums are each at most `M+1`).
pub fn check_sum_of_exps(m: f64, n_terms: u64) -> SumExpsCheck {
    assert!(m > 0.0, "M must be positive");
    assert!(n_terms >= 1, "N must be at least 1");
    let r = (-1.0 / m).exp();
    let single = if r == 1.0 {
        n_terms as f64
    } else {
        (1.0 - r.powf(n_terms as f64)) / (1.0 - r)
    };
    let sum = single * single;
    let bound = (m + 1.0) * (m + 1.0);
    SumExpsCheck { sum, bound, pass: sum <= bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family, GenParams};
    use crate::graph::Edge;

    fn tree_of(g: &Graph) -> SpanningTree {
        SpanningTree::from_edges(g, 0, g.edges().to_vec()).unwrap()
    }

    #[test]
    fn single_edge_cycle() {
        let g = Graph::from_edge_list("p 2 1\ne 0 1 2.5\n").unwrap();
        let cycle = build_euler_cycle(&tree_of(&g), 0);
        assert_eq!(cycle.tour(), &[0, 1]);
        assert_eq!(cycle.arc_weights(), &[2.5, 2.5]);
        assert_eq!(cycle.total_weight(), 5.0);
    }

    #[test]
    fn two_leaf_star_cycle() {
        let g = Graph::from_edge_list("p 3 2\ne 0 1 1\ne 0 2 1\n").unwrap();
        let cycle = build_euler_cycle(&tree_of(&g), 0);
        assert_eq!(cycle.tour(), &[0, 1, 0, 2]);
        assert_eq!(cycle.arc_weights(), &[1.0, 1.0, 1.0, 1.0]);
    }

    // The worked five-vertex example: root 0 with children {1, 4}, vertex
    // 1 with children {2, 3}. Ascending-id DFS visits 0 1 2 1 3 1 0 4.
    fn example_tree() -> (Graph, SpanningTree) {
        let g = Graph::from_edge_list("p 5 4\ne 0 1 1\ne 1 2 1\ne 1 3 1\ne 0 4 1\n").unwrap();
        let t = tree_of(&g);
        (g, t)
    }

    #[test]
    fn example_tour_order() {
        let (_, t) = example_tree();
        let cycle = build_euler_cycle(&t, 0);
        assert_eq!(cycle.tour(), &[0, 1, 2, 1, 3, 1, 0, 4]);
        assert_eq!(cycle.len(), 8);
        // every tree edge's weight appears exactly twice
        assert_eq!(cycle.total_weight(), 2.0 * t.total_weight());
        assert_eq!(cycle.min_index_copy(0), 0);
        assert_eq!(cycle.min_index_copy(1), 1);
        assert_eq!(cycle.min_index_copy(2), 2);
        assert_eq!(cycle.min_index_copy(3), 4);
        assert_eq!(cycle.min_index_copy(4), 7);
    }

    #[test]
    fn contract_to_all_keeps_one_copy_each() {
        let (_, t) = example_tree();
        let cycle = build_euler_cycle(&t, 0);
        let c = contract_cycle(&cycle, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2, 3, 4]);
        assert_eq!(c.total_weight(), 2.0 * t.total_weight());
    }

    #[test]
    fn contract_example_subset() {
        // active = {yellow=1, purple=3, green=4} from the worked example
        let (_, t) = example_tree();
        let cycle = build_euler_cycle(&t, 0);
        let c = contract_cycle(&cycle, &[1, 3, 4]).unwrap();
        assert_eq!(c.vertices(), &[1, 3, 4]);
        assert_eq!(c.tour_indices(), &[1, 4, 7]);
        assert_eq!(c.arc_weights(), &[3.0, 3.0, 2.0]);
        assert_eq!(c.total_weight(), 8.0);
    }

    #[test]
    fn one_vertex_tree_degenerates_gracefully() {
        let g = Graph::from_edge_list("p 1 0\n").unwrap();
        let t = SpanningTree::from_edges(&g, 0, vec![]).unwrap();
        let cycle = build_euler_cycle(&t, 0);
        assert_eq!(cycle.tour(), &[0]);
        assert!(cycle.arc_weights().is_empty());
        let c = contract_cycle(&cycle, &[0]).unwrap();
        assert_eq!(c.total_weight(), 0.0);
        let res = charge(&c, &[0]).unwrap();
        assert_eq!(res.phi, 0.0);
    }

    #[test]
    fn contract_to_root_only() {
        let (_, t) = example_tree();
        let cycle = build_euler_cycle(&t, 0);
        let c = contract_cycle(&cycle, &[0]).unwrap();
        assert_eq!(c.vertices(), &[0]);
        assert_eq!(c.arc_weights(), &[2.0 * t.total_weight()]);
    }

    #[test]
    fn charge_with_everything_sampled_is_zero() {
        let (_, t) = example_tree();
        let cycle = build_euler_cycle(&t, 0);
        let c = contract_cycle(&cycle, &[0, 1, 2, 3, 4]).unwrap();
        let res = charge(&c, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(res.phi, 0.0);
        assert!(res.charges.is_empty());
    }

    #[test]
    fn charge_root_only_closed_form() {
        // three-vertex contracted cycle with arcs a, b, c and only the
        // root sampled: vertex at position 1 walks b + c, position 2
        // walks c.
        let g = Graph::from_edge_list("p 3 2\ne 0 1 1\ne 1 2 3\n").unwrap();
        let t = tree_of(&g);
        let cycle = build_euler_cycle(&t, 0);
        // tour 0 1 2 1, arcs 1 3 3 1; contraction to all: arcs 1 3 4
        let c = contract_cycle(&cycle, &[0, 1, 2]).unwrap();
        assert_eq!(c.arc_weights(), &[1.0, 3.0, 4.0]);
        let res = charge(&c, &[0]).unwrap();
        assert_eq!(res.charge_of(1).unwrap().weight, 3.0 + 4.0);
        assert_eq!(res.charge_of(2).unwrap().weight, 4.0);
        assert_eq!(res.phi, 11.0);
        for e in &res.charges {
            assert_eq!(e.next, 0);
        }
    }

    #[test]
    fn charge_example_mapping() {
        // With {1, 3, 4} sampled in the worked example, copy 0 maps to
        // copy 1 and copy 2 maps to copy 3.
        let (_, t) = example_tree();
        let cycle = build_euler_cycle(&t, 0);
        let c = contract_cycle(&cycle, &[0, 1, 2, 3, 4]).unwrap();
        let res = charge(&c, &[1, 3, 4]).unwrap();
        assert_eq!(res.charge_of(0).unwrap().next, 1);
        assert_eq!(res.charge_of(0).unwrap().weight, 1.0);
        assert_eq!(res.charge_of(2).unwrap().next, 3);
        assert_eq!(res.charge_of(2).unwrap().weight, 2.0);
        assert_eq!(res.phi, 3.0);
    }

    #[test]
    fn charge_without_sampled_errors() {
        let (_, t) = example_tree();
        let cycle = build_euler_cycle(&t, 0);
        let c = contract_cycle(&cycle, &[1, 3, 4]).unwrap();
        assert!(charge(&c, &[0]).is_err());
    }

    #[test]
    fn claim_med_on_traced_solves() {
        use crate::oracle::brute_force_opt;
        use crate::solver::{solve, SolveParams};
        for seed in 0..20u64 {
            let g = match generate(Family::Gnp, 6, &GenParams { p: 0.55 }, seed) {
                Ok(g) => g,
                Err(_) => continue,
            };
            // smallest h with a feasible optimum
            let (h, reference) = (1..6)
                .find_map(|h| {
                    brute_force_opt(&g, h).unwrap().witness.map(|w| (h, w))
                })
                .unwrap();
            let params = SolveParams::new(h, 0.5, seed).unwrap();
            let out = solve(&g, &params).unwrap();
            let report = verify_claim_med(&g, &out.trace, &reference).unwrap();
            assert!(report.pass, "seed {seed}: {report:?}");
            for round in &report.rounds {
                assert!(round.increment <= round.phi);
            }
        }
    }

    // A round that samples every active vertex merges nothing: increment
    // 0 against phi = 0.
    #[test]
    fn claim_med_trivial_round() {
        use crate::solver::{RoundRecord, SolveTrace};
        let (g, t) = example_tree();
        let trace = SolveTrace {
            n: 5,
            h: 4,
            epsilon: 0.5,
            seed: 0,
            rounds_used: 1,
            rounds: vec![RoundRecord {
                index: 1,
                active: vec![0, 1, 2, 3, 4],
                sampled: vec![0, 1, 2, 3, 4],
                merges: vec![],
                path_weight_sum: 0.0,
                weight_increment: 0.0,
                partial_weight: 0.0,
            }],
        };
        let report = verify_claim_med(&g, &trace, &t).unwrap();
        assert!(report.pass);
        assert_eq!(report.rounds[0].phi, 0.0);
        assert_eq!(report.rounds[0].increment, 0.0);
    }

    #[test]
    fn claim_med_rejects_wide_reference() {
        use crate::solver::{solve, SolveParams};
        let g = generate(Family::Star, 6, &GenParams::default(), 0).unwrap();
        let params = SolveParams::new(2, 0.5, 1).unwrap();
        let out = solve(&g, &params).unwrap();
        let path_like = generate(Family::Path, 6, &GenParams::default(), 0).unwrap();
        let wide = SpanningTree::from_edges(&path_like, 0, path_like.edges().to_vec()).unwrap();
        // diameter 5 > h = 2, and it spans a different graph anyway
        assert!(verify_claim_med(&path_like, &out.trace, &wide).is_err());
    }

    #[test]
    fn claim_hard_on_path_and_star() {
        let path = generate(Family::Path, 6, &GenParams::default(), 0).unwrap();
        let path_tree = tree_of(&path);
        let est = estimate_claim_hard(&path, 0.5, &path_tree, 5, 2000, 7).unwrap();
        assert!(est.pass, "{est:?}");
        assert!(est.mean_phi > 0.0);

        let star = generate(Family::Star, 8, &GenParams::default(), 0).unwrap();
        let star_tree = tree_of(&star);
        let est = estimate_claim_hard(&star, 1.0, &star_tree, 2, 2000, 7).unwrap();
        assert!(est.pass, "{est:?}");
    }

    #[test]
    fn claim_hard_requires_enough_trials() {
        let path = generate(Family::Path, 6, &GenParams::default(), 0).unwrap();
        let t = tree_of(&path);
        assert!(estimate_claim_hard(&path, 0.5, &t, 5, 50, 0).is_err());
    }

    #[test]
    fn sum_exps_examples() {
        let one = check_sum_of_exps(123.0, 1);
        assert_eq!(one.sum, 1.0);
        assert!(one.pass);

        let small = check_sum_of_exps(1.0, 10);
        // direct evaluation of (sum_{j<10} e^-j)^2
        let direct: f64 = (0..10).map(|j| (-(j as f64)).exp()).sum::<f64>().powi(2);
        assert!((small.sum - direct).abs() / direct <= 1e-9);
        assert!(small.sum <= 4.0);

        let big = check_sum_of_exps(100.0, 10_000);
        assert!(big.pass);
        assert!(big.sum <= 101.0 * 101.0);
    }

    #[test]
    fn sum_exps_grid() {
        for &m in &[0.5, 1.0, 2.0, 10.0, 100.0] {
            for &n in &[1u64, 10, 1_000, 100_000] {
                let res = check_sum_of_exps(m, n);
                assert!(res.pass, "M={m} N={n}: {res:?}");
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            // Contraction preserves total weight for any active set.
            #[test]
            fn contraction_conserves_weight(seed in 0u64..1000, n in 2usize..12, mask in 1u32..4096) {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut edges = Vec::new();
                for v in 1..n {
                    let p = rng.random_range(0..v);
                    let w = (1 + rng.random_range(0..64)) as f64 / 8.0;
                    edges.push(Edge::new(p, v, w));
                }
                let g = Graph::new(n, edges.clone()).unwrap();
                let tree = SpanningTree::from_edges(&g, 0, edges).unwrap();
                let cycle = build_euler_cycle(&tree, 0);
                prop_assert_eq!(cycle.total_weight(), 2.0 * tree.total_weight());
                let mut active: Vec<usize> =
                    (0..n).filter(|&v| v == 0 || (mask >> (v % 12)) & 1 == 1).collect();
                active.sort_unstable();
                let c = contract_cycle(&cycle, &active).unwrap();
                prop_assert_eq!(c.total_weight(), cycle.total_weight());
                prop_assert_eq!(c.len(), active.len());
            }
        }
    }
}
