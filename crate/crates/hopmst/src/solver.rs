//! The randomized sampling solver.
//!
//! Starting from `T_0 = (V, {})` with every vertex active, each round
//! samples each active non-root independently with probability `n^-eps`
//! (the root is always sampled), merges every unsampled active vertex to
//! its nearest sampled vertex under `d^(h)` by unioning the connecting
//! path into the partial solution, and deactivates it. After the rounds
//! finish, the hop-BFS tree of the union rooted at the root is returned;
//! hops (not weights) are the metric that certifies the diameter bound.
//!
//! Replay discipline: the root is vertex 0, draws are consumed in
//! ascending vertex id, one per active non-root per round, so a trace is
//! fully determined by `(graph, h, epsilon, seed)`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{kruskal_mst_weight, Graph};
use crate::hopdist::{nearest_in_set, PathEdge};
use crate::tree::{SpanningTree, TreeDocument};

/// The pinned root vertex; any vertex works, a fixed one keeps runs replayable.
pub const ROOT: usize = 0;

#[derive(Debug, Clone)]
pub struct SolveParams {
    pub h: usize,
    pub epsilon: f64,
    pub seed: u64,
    /// Overrides the nominal `ceil(3/epsilon)` round budget.
    pub max_rounds: Option<usize>,
    /// Continuation rounds allowed past the nominal budget before giving
    /// up; defaults to twice the nominal budget.
    pub extra_rounds: Option<usize>,
}

impl SolveParams {
    pub fn new(h: usize, epsilon: f64, seed: u64) -> Result<Self> {
        if h < 1 {
            return Err(Error::BadParameter("h must be >= 1".into()));
        }
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::BadParameter(format!("epsilon must be positive, got {epsilon}")));
        }
        Ok(SolveParams { h, epsilon, seed, max_rounds: None, extra_rounds: None })
    }

    /// Nominal round budget `ceil(3/epsilon)`.
    pub fn nominal_rounds(&self) -> usize {
        match self.max_rounds {
            Some(m) => m.max(1),
            None => (3.0 / self.epsilon).ceil() as usize,
        }
    }

    fn extra_budget(&self) -> usize {
        self.extra_rounds.unwrap_or(2 * self.nominal_rounds())
    }
}

/// One merge: vertex `u` joined to sampled vertex `target` along `path`
/// (ordered from `u`), whose weight is exactly `d^(h)(u, target)`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MergeRecord {
    pub u: usize,
    pub target: usize,
    pub path: Vec<PathEdge>,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RoundRecord {
    pub index: usize,
    /// Active set `S_{i-1}` at the start of the round.
    pub active: Vec<usize>,
    /// Sampled set `S_i` (always contains the root).
    pub sampled: Vec<usize>,
    pub merges: Vec<MergeRecord>,
    /// Sum of merge path weights (counts shared edges repeatedly).
    pub path_weight_sum: f64,
    /// `w(T_i) - w(T_{i-1})` under union semantics.
    pub weight_increment: f64,
    /// `w(T_i)`.
    pub partial_weight: f64,
}

/// Full per-round record of a solve run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SolveTrace {
    pub n: usize,
    pub h: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub rounds_used: usize,
    pub rounds: Vec<RoundRecord>,
}

impl SolveTrace {
    /// The file form is just the rounds array.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.rounds)?)
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub tree: SpanningTree,
    pub trace: SolveTrace,
}

impl SolveOutcome {
    pub fn rounds_used(&self) -> usize {
        self.trace.rounds_used
    }

    pub fn document(&self) -> TreeDocument {
        self.tree.to_document(self.trace.rounds_used, self.trace.seed)
    }
}

/// Necessary feasibility condition: every vertex pair must be within `h`
/// hops in the graph, otherwise no spanning tree of diameter `<= h` can
/// exist (its `u`-`v` path would be a short path in the graph too). The
/// offending pair is returned as the certificate.
pub fn precheck_feasibility(g: &Graph, h: usize) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    for u in 0..g.vertex_count() {
        let hops = g.bfs_hops(u);
        for (v, d) in hops.into_iter().enumerate() {
            let d = d.expect("connected graph");
            if d > h && u < v {
                return Err(Error::Infeasible { u, v, dist: d, h });
            }
        }
    }
    Ok(())
}

/// Run the sampling solver. `rounds_used` reports the consumed budget:
/// the nominal `ceil(3/epsilon)` rounds when the run finishes within it
/// (later rounds are no-ops once only the root is active), or the actual
/// count when continuation rounds were needed.
pub fn solve(g: &Graph, params: &SolveParams) -> Result<SolveOutcome> {
    precheck_feasibility(g, params.h)?;
    let n = g.vertex_count();
    let nominal = params.nominal_rounds();
    let budget = nominal + params.extra_budget();
    let sample_prob = (n as f64).powf(-params.epsilon);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut active = vec![true; n];
    let mut active_nonroot = n.saturating_sub(1);
    let mut tree_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut partial_weight = 0.0;
    let mut rounds: Vec<RoundRecord> = Vec::new();
    let mut executed = 0usize;

    while active_nonroot > 0 && executed < budget {
        executed += 1;
        let active_before: Vec<usize> = (0..n).filter(|&v| active[v]).collect();

        let mut sampled: Vec<usize> = vec![ROOT];
        let mut unsampled: Vec<usize> = Vec::new();
        for &v in &active_before {
            if v == ROOT {
                continue;
            }
            if rng.random::<f64>() < sample_prob {
                sampled.push(v);
            } else {
                unsampled.push(v);
            }
        }
        sampled.sort_unstable();

        let table = nearest_in_set(g, &sampled, params.h)?;
        let mut merges = Vec::with_capacity(unsampled.len());
        let mut path_weight_sum = 0.0;
        let mut weight_increment = 0.0;
        for &u in &unsampled {
            let (target, weight) = table.nearest(u).ok_or_else(|| {
                Error::Invariant(format!(
                    "no merge target for vertex {u} within {} hops despite precheck",
                    params.h
                ))
            })?;
            let path = table.path_to_source(g, u)?;
            for &(a, b, w) in &path {
                let key = (a.min(b), a.max(b));
                if tree_edges.insert(key) {
                    weight_increment += w;
                }
            }
            path_weight_sum += weight;
            merges.push(MergeRecord { u, target, path, weight });
            active[u] = false;
            active_nonroot -= 1;
        }
        partial_weight += weight_increment;
        rounds.push(RoundRecord {
            index: executed,
            active: active_before,
            sampled,
            merges,
            path_weight_sum,
            weight_increment,
            partial_weight,
        });
    }

    if active_nonroot > 0 {
        return Err(Error::RoundBudgetExhausted { rounds: executed, remaining: active_nonroot });
    }
    let rounds_used = executed.max(nominal);

    let tree = crate::tree::hop_bfs_tree(g, &tree_edges, ROOT)?;
    // Hard diameter bound, checked against the tighter executed-round
    // count (which implies the reported rounds_used bound).
    let limit = 4 * executed.max(1) * params.h;
    if tree.hop_diameter() > limit {
        return Err(Error::Invariant(format!(
            "hop diameter {} exceeds 4 * rounds * h = {limit}",
            tree.hop_diameter()
        )));
    }

    let trace = SolveTrace {
        n,
        h: params.h,
        epsilon: params.epsilon,
        seed: params.seed,
        rounds_used,
        rounds,
    };
    Ok(SolveOutcome { tree, trace })
}

/// Output of the `splitmix64` stream seeded by `seed` at index `trial`;
/// trial `t` of an amplified run uses this as its solve seed.
pub fn derive_trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(trial.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Default trial count for the with-high-probability weight guarantee.
pub fn default_trials(n: usize) -> usize {
    (4.0 * (n.max(2) as f64).log2()).ceil() as usize
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    /// Total weight on success, or the error message.
    pub weight: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug)]
pub struct AmplifiedOutcome {
    pub best: SolveOutcome,
    pub best_trial: usize,
    pub reports: Vec<TrialReport>,
}

/// Run `trials` independent solves with derived seeds and keep the
/// best-weight success. Trials run on the rayon pool; selection is by
/// (weight, trial index) so parallel and serial execution agree.
pub fn solve_amplified(g: &Graph, params: &SolveParams, trials: usize) -> Result<AmplifiedOutcome> {
    if trials < 1 {
        return Err(Error::BadParameter("trials must be >= 1".into()));
    }
    use rayon::prelude::*;
    let runs: Vec<(u64, Result<SolveOutcome>)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut p = params.clone();
            p.seed = derive_trial_seed(params.seed, trial as u64);
            (p.seed, solve(g, &p))
        })
        .collect();

    let mut best: Option<(usize, SolveOutcome)> = None;
    let mut reports = Vec::with_capacity(trials);
    let mut last_err = None;
    for (trial, (seed, run)) in runs.into_iter().enumerate() {
        match run {
            Ok(outcome) => {
                reports.push(TrialReport {
                    trial,
                    seed,
                    weight: Some(outcome.tree.total_weight()),
                    error: None,
                });
                let replace = match &best {
                    None => true,
                    Some((_, b)) => outcome.tree.total_weight() < b.tree.total_weight(),
                };
                if replace {
                    best = Some((trial, outcome));
                }
            }
            // instance-level failures are seed-independent
            Err(err @ (Error::Infeasible { .. } | Error::Disconnected)) => return Err(err),
            Err(err) => {
                reports.push(TrialReport {
                    trial,
                    seed,
                    weight: None,
                    error: Some(err.to_string()),
                });
                last_err = Some(err);
            }
        }
    }
    match best {
        Some((best_trial, best)) => Ok(AmplifiedOutcome { best, best_trial, reports }),
        None => Err(last_err.expect("at least one trial ran")),
    }
}

#[derive(Debug)]
pub struct BcmdstOutcome {
    pub outcome: SolveOutcome,
    /// First diameter bound whose solve met the weight budget.
    pub h_found: usize,
    /// Achieved weight divided by the budget.
    pub weight_to_budget: f64,
}

/// Budgeted-weight, minimize-diameter variant: sweep `h = 1, 2, ...`
/// upward and return the first `h` whose amplified solve has weight at
/// most `budget * slack_factor` (`slack_factor = None` accepts the first
/// feasible diameter and just reports the achieved weight ratio).
pub fn solve_bcmdst(
    g: &Graph,
    budget: f64,
    epsilon: f64,
    seed: u64,
    slack_factor: Option<f64>,
    trials: Option<usize>,
) -> Result<BcmdstOutcome> {
    let mst = kruskal_mst_weight(g)?;
    if budget < mst {
        return Err(Error::BudgetBelowMst { budget, mst });
    }
    let n = g.vertex_count();
    let factor = slack_factor.unwrap_or(f64::INFINITY);
    let trials = trials.unwrap_or_else(|| default_trials(n));
    for h in 1..n.max(2) {
        let params = SolveParams::new(h, epsilon, seed)?;
        match solve_amplified(g, &params, trials) {
            Ok(amp) => {
                let weight = amp.best.tree.total_weight();
                if weight <= budget * factor {
                    return Ok(BcmdstOutcome {
                        outcome: amp.best,
                        h_found: h,
                        weight_to_budget: weight / budget,
                    });
                }
            }
            Err(Error::Infeasible { .. } | Error::RoundBudgetExhausted { .. }) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(Error::NoFeasibleDiameter(n.saturating_sub(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family, GenParams};
    use crate::graph::{Edge, Graph};

    fn triangle() -> Graph {
        Graph::from_edge_list("p 3 3\ne 0 1 1\ne 1 2 1\ne 0 2 5\n").unwrap()
    }

    #[test]
    fn precheck_examples() {
        let path4 = generate(Family::Path, 4, &GenParams::default(), 0).unwrap();
        assert!(precheck_feasibility(&path4, 3).is_ok());
        match precheck_feasibility(&path4, 2) {
            Err(Error::Infeasible { u: 0, v: 3, dist: 3, h: 2 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(precheck_feasibility(&triangle(), 1).is_ok());
    }

    #[test]
    fn tree_input_returns_itself() {
        let g = generate(Family::Path, 6, &GenParams::default(), 0).unwrap();
        for seed in 0..5u64 {
            for &eps in &[0.3, 1.0, 2.0] {
                let params = SolveParams::new(5, eps, seed).unwrap();
                let out = solve(&g, &params).unwrap();
                let keys: Vec<_> = out.tree.edges().iter().map(Edge::key).collect();
                let expect: Vec<_> = (0..5).map(|i| (i, i + 1)).collect();
                assert_eq!(keys, expect);
                assert_eq!(out.tree.total_weight(), 5.0);
            }
        }
    }

    #[test]
    fn star_solves_to_star() {
        let g = generate(Family::Star, 9, &GenParams::default(), 0).unwrap();
        for seed in 0..5u64 {
            let params = SolveParams::new(2, 0.5, seed).unwrap();
            let out = solve(&g, &params).unwrap();
            assert_eq!(out.tree.total_weight(), 8.0);
            assert_eq!(out.tree.hop_diameter(), 2);
        }
    }

    // Replay of one fully unsampled round on the triangle: with
    // epsilon = 3 the budget is a single round and the sampling
    // probability is 3^-3, so for almost every seed nothing is sampled
    // and both non-roots merge straight to the root.
    #[test]
    fn triangle_single_round_replay() {
        let g = triangle();
        let seed = (0..100u64)
            .find(|&s| {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let p = 3f64.powf(-3.0);
                rng.random::<f64>() >= p && rng.random::<f64>() >= p
            })
            .expect("some unsampled seed below 100");
        let params = SolveParams::new(2, 3.0, seed).unwrap();
        let out = solve(&g, &params).unwrap();
        assert_eq!(out.trace.rounds_used, 1);
        assert_eq!(out.trace.rounds.len(), 1);
        let round = &out.trace.rounds[0];
        assert_eq!(round.active, vec![0, 1, 2]);
        assert_eq!(round.sampled, vec![0]);
        assert_eq!(
            round.merges,
            vec![
                MergeRecord { u: 1, target: 0, path: vec![(1, 0, 1.0)], weight: 1.0 },
                MergeRecord {
                    u: 2,
                    target: 0,
                    path: vec![(2, 1, 1.0), (1, 0, 1.0)],
                    weight: 2.0
                },
            ]
        );
        assert_eq!(round.path_weight_sum, 3.0);
        assert_eq!(round.weight_increment, 2.0);
        assert_eq!(round.partial_weight, 2.0);
        assert_eq!(out.tree.total_weight(), 2.0);
    }

    #[test]
    fn single_vertex_graph_is_trivial() {
        let g = Graph::from_edge_list("p 1 0\n").unwrap();
        let params = SolveParams::new(1, 0.5, 0).unwrap();
        let out = solve(&g, &params).unwrap();
        assert!(out.tree.edges().is_empty());
        assert_eq!(out.tree.hop_diameter(), 0);
        assert!(out.trace.rounds.is_empty());
    }

    #[test]
    fn deterministic_replay() {
        let g = generate(Family::Gnp, 30, &GenParams { p: 0.3 }, 5).unwrap();
        let params = SolveParams::new(6, 0.5, 17).unwrap();
        let a = solve(&g, &params).unwrap();
        let b = solve(&g, &params).unwrap();
        assert_eq!(a.tree.edges(), b.tree.edges());
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn diameter_bound_holds() {
        for seed in 0..10u64 {
            let g = generate(Family::Gnp, 40, &GenParams { p: 0.25 }, seed).unwrap();
            let h = {
                let tree = bfs_tree_of_graph(&g);
                tree.hop_diameter()
            };
            let params = SolveParams::new(h, 0.5, seed).unwrap();
            let out = solve(&g, &params).unwrap();
            assert!(out.tree.hop_diameter() <= 4 * out.rounds_used() * h);
        }
    }

    fn bfs_tree_of_graph(g: &Graph) -> SpanningTree {
        let hops = g.bfs_hops(0);
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        for v in 1..g.vertex_count() {
            let dv = hops[v].unwrap();
            let p = g
                .neighbors(v)
                .iter()
                .map(|&(u, _)| u)
                .find(|&u| hops[u] == Some(dv - 1))
                .unwrap();
            parent[v] = p;
        }
        SpanningTree::from_parents(g, 0, parent).unwrap()
    }

    #[test]
    fn rounds_used_is_the_budget() {
        let g = generate(Family::Star, 20, &GenParams::default(), 0).unwrap();
        for &(eps, want) in &[(0.25, 12), (0.5, 6), (1.0, 3)] {
            let params = SolveParams::new(2, eps, 3).unwrap();
            let out = solve(&g, &params).unwrap();
            assert_eq!(out.rounds_used(), want);
        }
    }

    // E[|S_i \ {r}|] = |S_{i-1} \ {r}| * n^-eps; check the first round's
    // sampled count against the binomial mean within five standard errors.
    #[test]
    fn sampling_mean_matches_binomial() {
        let g = generate(Family::Gnp, 50, &GenParams { p: 0.2 }, 1).unwrap();
        let eps = 0.5;
        let p = 50f64.powf(-eps);
        let trials = 400;
        let mut total = 0usize;
        for seed in 0..trials as u64 {
            let params = SolveParams::new(8, eps, seed).unwrap();
            let out = solve(&g, &params).unwrap();
            total += out.trace.rounds[0].sampled.len() - 1; // root excluded
        }
        let mean = total as f64 / trials as f64;
        let expect = 49.0 * p;
        let sigma = (49.0 * p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (mean - expect).abs() <= 5.0 * sigma,
            "mean {mean} vs expected {expect} (sigma {sigma})"
        );
    }

    #[test]
    fn active_sets_shrink_and_nest() {
        let g = generate(Family::Gnp, 30, &GenParams { p: 0.3 }, 9).unwrap();
        let params = SolveParams::new(6, 0.4, 2).unwrap();
        let out = solve(&g, &params).unwrap();
        for win in out.trace.rounds.windows(2) {
            let prev: std::collections::HashSet<_> = win[0].sampled.iter().collect();
            assert!(win[1].active.iter().all(|v| prev.contains(v)));
            assert_eq!(win[1].active, win[0].sampled);
        }
        let mut prev_partial = 0.0;
        for round in &out.trace.rounds {
            assert!(round.sampled.contains(&ROOT));
            // every vertex active but unsampled is merged exactly once
            let merged: Vec<usize> = round.merges.iter().map(|m| m.u).collect();
            let expect: Vec<usize> = round
                .active
                .iter()
                .copied()
                .filter(|v| !round.sampled.contains(v))
                .collect();
            assert_eq!(merged, expect);
            assert!(round.weight_increment <= round.path_weight_sum);
            assert_eq!(round.partial_weight, prev_partial + round.weight_increment);
            prev_partial = round.partial_weight;
            for m in &round.merges {
                assert!(m.path.len() <= 6);
                let w: f64 = m.path.iter().map(|e| e.2).sum();
                assert_eq!(w, m.weight);
            }
        }
        // the BFS tree keeps a subset of the union, never more weight
        assert!(out.tree.total_weight() <= prev_partial);
    }

    #[test]
    fn infeasible_instance_rejected() {
        let g = generate(Family::Path, 5, &GenParams::default(), 0).unwrap();
        let params = SolveParams::new(2, 0.5, 0).unwrap();
        match solve(&g, &params) {
            Err(Error::Infeasible { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edge_list("p 3 1\ne 0 1 1\n").unwrap();
        let params = SolveParams::new(2, 0.5, 0).unwrap();
        match solve(&g, &params) {
            Err(Error::Disconnected) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_reports_remaining() {
        // one round with no continuation almost never finishes n = 50
        let g = generate(Family::Gnp, 50, &GenParams { p: 0.2 }, 3).unwrap();
        let mut params = SolveParams::new(8, 0.3, 12).unwrap();
        params.max_rounds = Some(1);
        params.extra_rounds = Some(0);
        match solve(&g, &params) {
            Err(Error::RoundBudgetExhausted { rounds: 1, remaining }) => assert!(remaining > 0),
            Ok(out) => panic!("unexpectedly finished in one round: {:?}", out.trace.rounds_used),
            Err(other) => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn amplified_propagates_total_failure() {
        let g = generate(Family::Gnp, 50, &GenParams { p: 0.2 }, 3).unwrap();
        let mut params = SolveParams::new(8, 0.3, 12).unwrap();
        params.max_rounds = Some(1);
        params.extra_rounds = Some(0);
        match solve_amplified(&g, &params, 3) {
            Err(Error::RoundBudgetExhausted { .. }) => {}
            Ok(amp) => panic!("unexpected success at weight {}", amp.best.tree.total_weight()),
            Err(other) => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bcmdst_default_slack_takes_first_feasible() {
        let g = generate(Family::Star, 7, &GenParams::default(), 0).unwrap();
        // no weight filter: the first h passing the precheck wins
        let out = solve_bcmdst(&g, 6.0, 0.5, 0, None, Some(2)).unwrap();
        assert_eq!(out.h_found, 2);
        assert_eq!(out.weight_to_budget, 1.0);
    }

    #[test]
    fn trial_seed_derivation_is_splitmix() {
        // first outputs of the splitmix64 stream for seed 0
        assert_eq!(derive_trial_seed(0, 0), 0xE220A8397B1DCDAF);
        assert_eq!(derive_trial_seed(0, 1), 0x6E789E6AA1B965F4);
        assert_ne!(derive_trial_seed(7, 0), derive_trial_seed(7, 1));
    }

    #[test]
    fn amplified_single_trial_matches_solve() {
        let g = generate(Family::Gnp, 20, &GenParams { p: 0.3 }, 3).unwrap();
        let params = SolveParams::new(6, 0.5, 11).unwrap();
        let amp = solve_amplified(&g, &params, 1).unwrap();
        let mut derived = params.clone();
        derived.seed = derive_trial_seed(11, 0);
        let direct = solve(&g, &derived).unwrap();
        assert_eq!(amp.best.tree.edges(), direct.tree.edges());
        assert_eq!(amp.best.trace, direct.trace);
    }

    #[test]
    fn amplified_best_is_min_over_trials() {
        let g = generate(Family::Gnp, 30, &GenParams { p: 0.3 }, 5).unwrap();
        let params = SolveParams::new(6, 0.5, 21).unwrap();
        let amp = solve_amplified(&g, &params, 8).unwrap();
        let best = amp.best.tree.total_weight();
        for r in &amp.reports {
            assert!(best <= r.weight.unwrap());
        }
        assert_eq!(amp.reports.len(), 8);
    }

    #[test]
    fn amplified_on_tree_is_constant() {
        let g = generate(Family::Path, 5, &GenParams::default(), 0).unwrap();
        let params = SolveParams::new(4, 0.5, 13).unwrap();
        let amp = solve_amplified(&g, &params, 6).unwrap();
        for r in &amp.reports {
            assert_eq!(r.weight, Some(4.0));
        }
    }

    #[test]
    fn bcmdst_tree_input() {
        let g = generate(Family::Path, 5, &GenParams::default(), 0).unwrap();
        let out = solve_bcmdst(&g, 4.0, 0.5, 0, Some(1.0), Some(4)).unwrap();
        assert_eq!(out.h_found, 4);
        assert_eq!(out.outcome.tree.total_weight(), 4.0);
        assert_eq!(out.weight_to_budget, 1.0);
    }

    #[test]
    fn bcmdst_star_input() {
        let g = generate(Family::Star, 7, &GenParams::default(), 0).unwrap();
        let out = solve_bcmdst(&g, 6.0, 0.5, 0, Some(1.0), Some(4)).unwrap();
        assert_eq!(out.h_found, 2);
    }

    #[test]
    fn bcmdst_budget_below_mst() {
        let g = generate(Family::Star, 5, &GenParams::default(), 0).unwrap();
        match solve_bcmdst(&g, 3.0, 0.5, 0, None, Some(2)) {
            Err(Error::BudgetBelowMst { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
