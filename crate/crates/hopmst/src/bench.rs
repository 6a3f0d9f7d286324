//! Benchmark sweeps over (instance, h, epsilon, algorithm, seed) cells.
//!
//! Cells are independent jobs run on the rayon pool; records come back in
//! config order regardless of completion order, so re-running a config
//! reproduces the CSV byte for byte (the wall-time column is excluded
//! from golden comparisons). Per-cell errors become row data instead of
//! aborting the sweep.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::baseline::solve_matching_baseline;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{brute_force_opt, ENUMERATION_CAP};
use crate::solver::{solve_amplified, SolveParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sampling,
    Matching,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Sampling => "sampling",
            Algorithm::Matching => "matching",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sampling" => Ok(Algorithm::Sampling),
            "matching" => Ok(Algorithm::Matching),
            other => Err(Error::BadParameter(format!("unknown algorithm '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchInstance {
    pub id: String,
    pub graph: Graph,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub instances: Vec<BenchInstance>,
    pub h_values: Vec<usize>,
    pub epsilons: Vec<f64>,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
    /// Amplification trials per sampling cell.
    pub trials: usize,
    /// Oracle optima are attached for instances up to this size.
    pub oracle_cap: usize,
}

impl BenchConfig {
    pub fn new(instances: Vec<BenchInstance>) -> Self {
        BenchConfig {
            instances,
            h_values: Vec::new(),
            epsilons: Vec::new(),
            seeds: vec![0],
            algorithms: vec![Algorithm::Sampling],
            trials: 1,
            oracle_cap: ENUMERATION_CAP.min(8),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.instances.is_empty() {
            return Err(Error::BadParameter("bench needs at least one instance".into()));
        }
        if self.h_values.is_empty() {
            return Err(Error::BadParameter("bench needs at least one h value".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::BadParameter("bench needs at least one seed".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::BadParameter("bench needs at least one algorithm".into()));
        }
        if self.algorithms.contains(&Algorithm::Sampling) && self.epsilons.is_empty() {
            return Err(Error::BadParameter("sampling sweeps need at least one epsilon".into()));
        }
        if self.trials < 1 {
            return Err(Error::BadParameter("trials must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub h: usize,
    /// Absent for the matching baseline, which has no epsilon knob.
    pub epsilon: Option<f64>,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub status: String,
    pub total_weight: Option<f64>,
    pub hop_diameter: Option<usize>,
    pub rounds_used: Option<usize>,
    pub opt_weight: Option<f64>,
    pub weight_ratio: Option<f64>,
    pub diameter_slack: Option<f64>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub algorithm: Algorithm,
    pub epsilon: Option<f64>,
    pub cells: usize,
    pub failures: usize,
    pub median_weight_ratio: Option<f64>,
    pub max_diameter_slack: Option<f64>,
}

#[derive(Debug)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub summary: Vec<SummaryRow>,
}

struct Cell {
    instance: usize,
    h: usize,
    epsilon: Option<f64>,
    algorithm: Algorithm,
    seed: u64,
    opt_weight: Option<f64>,
}

/// Run the cartesian sweep. Deterministic given the config: every cell's
/// seed is explicit and the record order is the config order.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    config.validate()?;

    // Oracle optima once per (instance, h); cells just look them up.
    let mut opt: std::collections::HashMap<(usize, usize), Option<f64>> =
        std::collections::HashMap::new();
    for (i, inst) in config.instances.iter().enumerate() {
        if inst.graph.vertex_count() > config.oracle_cap {
            continue;
        }
        for &h in &config.h_values {
            let entry = brute_force_opt(&inst.graph, h)?.opt_weight;
            opt.insert((i, h), entry);
        }
    }

    let mut cells = Vec::new();
    for i in 0..config.instances.len() {
        for &h in &config.h_values {
            for &algorithm in &config.algorithms {
                let eps_axis: Vec<Option<f64>> = match algorithm {
                    Algorithm::Sampling => config.epsilons.iter().copied().map(Some).collect(),
                    Algorithm::Matching => vec![None],
                };
                for epsilon in eps_axis {
                    for &seed in &config.seeds {
                        cells.push(Cell {
                            instance: i,
                            h,
                            epsilon,
                            algorithm,
                            seed,
                            opt_weight: opt.get(&(i, h)).copied().flatten(),
                        });
                    }
                }
            }
        }
    }

    let records: Vec<BenchRecord> = cells.par_iter().map(|cell| run_cell(config, cell)).collect();

    let summary = summarize(&records);
    Ok(BenchReport { records, summary })
}

fn run_cell(config: &BenchConfig, cell: &Cell) -> BenchRecord {
    let inst = &config.instances[cell.instance];
    let g = &inst.graph;
    let start = std::time::Instant::now();
    let solved: Result<(f64, usize, usize)> = match cell.algorithm {
        Algorithm::Sampling => SolveParams::new(cell.h, cell.epsilon.unwrap(), cell.seed)
            .and_then(|params| solve_amplified(g, &params, config.trials))
            .map(|amp| {
                (
                    amp.best.tree.total_weight(),
                    amp.best.tree.hop_diameter(),
                    amp.best.rounds_used(),
                )
            }),
        Algorithm::Matching => solve_matching_baseline(g, cell.h)
            .map(|out| (out.tree.total_weight(), out.tree.hop_diameter(), out.rounds_used)),
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut record = BenchRecord {
        instance: inst.id.clone(),
        n: g.vertex_count(),
        m: g.edge_count(),
        h: cell.h,
        epsilon: cell.epsilon,
        algorithm: cell.algorithm,
        seed: cell.seed,
        status: "ok".into(),
        total_weight: None,
        hop_diameter: None,
        rounds_used: None,
        opt_weight: cell.opt_weight,
        weight_ratio: None,
        diameter_slack: None,
        wall_ms,
    };
    match solved {
        Ok((weight, diameter, rounds)) => {
            record.total_weight = Some(weight);
            record.hop_diameter = Some(diameter);
            record.rounds_used = Some(rounds);
            record.weight_ratio = cell.opt_weight.map(|o| weight / o);
            record.diameter_slack = Some(diameter as f64 / cell.h as f64);
        }
        Err(err) => {
            record.status = status_word(&err);
            record.opt_weight = None;
        }
    }
    record
}

fn status_word(err: &Error) -> String {
    match err {
        Error::Infeasible { .. } => "infeasible".into(),
        Error::Disconnected => "disconnected".into(),
        Error::MatchingStall(_) => "stall".into(),
        Error::RoundBudgetExhausted { .. } => "round_budget".into(),
        other => format!("error:{other}"),
    }
}

fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut groups: Vec<(Algorithm, Option<f64>)> =
        records.iter().map(|r| (r.algorithm, r.epsilon)).collect();
    groups.sort_by(|a, b| {
        a.0.name()
            .cmp(b.0.name())
            .then_with(|| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
    });
    groups.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);

    groups
        .into_iter()
        .map(|(algorithm, epsilon)| {
            let rows: Vec<&BenchRecord> = records
                .iter()
                .filter(|r| r.algorithm == algorithm && r.epsilon == epsilon)
                .collect();
            let failures = rows.iter().filter(|r| r.status != "ok").count();
            let mut ratios: Vec<f64> = rows.iter().filter_map(|r| r.weight_ratio).collect();
            ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let median = if ratios.is_empty() { None } else { Some(ratios[ratios.len() / 2]) };
            let max_slack = rows
                .iter()
                .filter_map(|r| r.diameter_slack)
                .max_by(|a, b| a.partial_cmp(b).unwrap());
            SummaryRow {
                algorithm,
                epsilon,
                cells: rows.len(),
                failures,
                median_weight_ratio: median,
                max_diameter_slack: max_slack,
            }
        })
        .collect()
}

const RECORD_COLUMNS: &str = "instance,n,m,h,epsilon,algorithm,seed,status,total_weight,hop_diameter,rounds_used,opt_weight,weight_ratio,diameter_slack";

fn opt_fmt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// Records as CSV with a stable column order. `include_wall_time`
/// controls the trailing timing column that golden comparisons strip.
pub fn records_to_csv(records: &[BenchRecord], include_wall_time: bool) -> String {
    let mut out = String::new();
    let _ =
        writeln!(out, "{RECORD_COLUMNS}{}", if include_wall_time { ",wall_ms" } else { "" });
    for r in records {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.instance,
            r.n,
            r.m,
            r.h,
            opt_fmt(&r.epsilon),
            r.algorithm.name(),
            r.seed,
            r.status,
            opt_fmt(&r.total_weight),
            opt_fmt(&r.hop_diameter),
            opt_fmt(&r.rounds_used),
            opt_fmt(&r.opt_weight),
            opt_fmt(&r.weight_ratio),
            opt_fmt(&r.diameter_slack),
        );
        if include_wall_time {
            let _ = write!(out, ",{:.3}", r.wall_ms);
        }
        out.push('\n');
    }
    out
}

/// Per-(algorithm, epsilon) tradeoff frontier: median weight ratio
/// against max diameter slack, grouped by algorithm in a stable order.
pub fn emit_report(summary: &[SummaryRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algorithm,epsilon,cells,failures,median_weight_ratio,max_diameter_slack");
    for row in summary {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.algorithm.name(),
            opt_fmt(&row.epsilon),
            row.cells,
            row.failures,
            opt_fmt(&row.median_weight_ratio),
            opt_fmt(&row.max_diameter_slack),
        );
    }
    out
}

pub fn records_to_json(records: &[BenchRecord]) -> Result<String> {
    Ok(serde_json::to_string_pretty(records)?)
}
