use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use hopmst::baseline::solve_matching_baseline;
use hopmst::bench::{records_to_csv, records_to_json, run_bench, Algorithm, BenchConfig, BenchInstance};
use hopmst::charging::{check_sum_of_exps, estimate_claim_hard, verify_claim_med, ClaimHardEstimate, RoundCheck, SumExpsCheck};
use hopmst::error::Error;
use hopmst::generate::{generate, Family, GenParams};
use hopmst::graph::Graph;
use hopmst::hopdist::hop_bellman_ford;
use hopmst::oracle::{brute_force_opt, ratio_report};
use hopmst::solver::{solve, solve_amplified, solve_bcmdst, SolveParams};
use hopmst::tree::{SpanningTree, TreeDocument};

#[derive(Parser)]
#[command(name = "hopmst", version, about = "Length-constrained MST solver and verifiers")]
struct Cli {
    /// RNG seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format: text or json (bench: csv or json).
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Suppress informational stderr output.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and print it in edge-list format.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Edge probability for gnp.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the h-hop-constrained distance row of one source vertex.
    Dist {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        h: usize,
    },
    /// Solve a length-constrained MST instance.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        h: usize,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        /// sampling (default) or matching.
        #[arg(long, default_value = "sampling")]
        algo: String,
        /// Amplification trials; omit for a single run.
        #[arg(long)]
        trials: Option<usize>,
        /// Write the per-round trace JSON here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Minimize the diameter subject to a weight budget by sweeping h.
    Bcmdst {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        budget: f64,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        /// Accept the first h whose weight is at most budget * factor.
        #[arg(long)]
        slack_factor: Option<f64>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Brute-force optimum on tiny instances.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        h: usize,
        /// Also run the sampling solver per seed and report ratios.
        #[arg(long)]
        ratios: bool,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        /// Seed list: "0..49" (inclusive) or "1,5,9".
        #[arg(long, default_value = "0..49")]
        seeds: String,
    },
    /// Check the charging analysis on a traced solve.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        h: usize,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        /// Reference tree JSON; defaults to the oracle optimum when n <= 8.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
    },
    /// Sweep instances x h x epsilon x algorithm x seeds.
    Bench {
        /// Instance files; may repeat.
        #[arg(long)]
        input: Vec<PathBuf>,
        /// Optionally add one generated instance.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        gen_seed: u64,
        /// h values, comma separated.
        #[arg(long, default_value = "4")]
        h: String,
        /// epsilon values, comma separated.
        #[arg(long, default_value = "0.5")]
        epsilons: String,
        /// Seed list: "0..9" (inclusive) or "1,5,9".
        #[arg(long, default_value = "0..9")]
        seeds: String,
        /// Algorithms, comma separated: sampling,matching.
        #[arg(long, default_value = "sampling")]
        algos: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Record CSV/JSON destination (stdout if omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Infeasible { .. }
        | Error::Disconnected
        | Error::MatchingStall(_)
        | Error::BudgetBelowMst { .. }
        | Error::NoFeasibleDiameter(_) => 1,
        Error::RoundBudgetExhausted { .. } | Error::Invariant(_) | Error::BadReferenceTree { .. } => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Gen { ref family, n, p, ref output } => {
            let family: Family = family.parse()?;
            let g = generate(family, n, &GenParams { p }, cli.seed)?;
            emit(output.as_deref(), &g.to_edge_list())?;
            Ok(())
        }
        Command::Dist { ref input, source, h } => {
            let g = load(input)?;
            if source >= g.vertex_count() {
                return Err(Error::VertexOutOfRange(source, g.vertex_count()));
            }
            if h < 1 {
                return Err(Error::BadParameter("h must be >= 1".into()));
            }
            let table = hop_bellman_ford(&g, source, h);
            if cli.format == "json" {
                println!("{}", serde_json::to_string(&table.distances())?);
            } else {
                let row: Vec<String> = table
                    .distances()
                    .iter()
                    .map(|d| d.map(|x| x.to_string()).unwrap_or_else(|| "inf".into()))
                    .collect();
                println!("{}", row.join(" "));
            }
            Ok(())
        }
        Command::Solve { ref input, h, epsilon, ref algo, trials, ref trace, ref output } => {
            let g = load(input)?;
            match algo.parse::<Algorithm>()? {
                Algorithm::Sampling => {
                    let params = SolveParams::new(h, epsilon, cli.seed)?;
                    let outcome = match trials {
                        Some(t) => {
                            let amp = solve_amplified(&g, &params, t)?;
                            if !cli.quiet {
                                for r in &amp.reports {
                                    eprintln!(
                                        "trial {} seed {}: {}",
                                        r.trial,
                                        r.seed,
                                        r.weight
                                            .map(|w| w.to_string())
                                            .or(r.error.clone())
                                            .unwrap_or_default()
                                    );
                                }
                            }
                            amp.best
                        }
                        None => solve(&g, &params)?,
                    };
                    if let Some(path) = trace {
                        fs::write(path, outcome.trace.to_json()?)?;
                    }
                    let doc = outcome.document();
                    if cli.format == "json" {
                        emit(output.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
                    } else {
                        emit(
                            output.as_deref(),
                            &format!(
                                "algorithm=sampling n={} m={} h={h} epsilon={epsilon} seed={}\n\
                                 weight={} hop_diameter={} rounds_used={}\n",
                                g.vertex_count(),
                                g.edge_count(),
                                cli.seed,
                                doc.total_weight,
                                doc.hop_diameter,
                                doc.rounds_used
                            ),
                        )?;
                    }
                }
                Algorithm::Matching => {
                    if trace.is_some() && !cli.quiet {
                        eprintln!("note: --trace applies to the sampling solver only");
                    }
                    let out = solve_matching_baseline(&g, h)?;
                    let doc = out.tree.to_document(out.rounds_used, cli.seed);
                    if cli.format == "json" {
                        emit(output.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
                    } else {
                        emit(
                            output.as_deref(),
                            &format!(
                                "algorithm=matching (greedy maximal matching, not the exact \
                                 min-weight matching) n={} m={} h={h}\n\
                                 weight={} hop_diameter={} rounds={}\n",
                                g.vertex_count(),
                                g.edge_count(),
                                doc.total_weight,
                                doc.hop_diameter,
                                out.rounds_used
                            ),
                        )?;
                    }
                }
            }
            Ok(())
        }
        Command::Bcmdst { ref input, budget, epsilon, slack_factor, trials } => {
            let g = load(input)?;
            let res = solve_bcmdst(&g, budget, epsilon, cli.seed, slack_factor, trials)?;
            let doc = res.outcome.document();
            if cli.format == "json" {
                #[derive(Serialize)]
                struct BcmdstDoc {
                    h_found: usize,
                    weight_to_budget: f64,
                    tree: TreeDocument,
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&BcmdstDoc {
                        h_found: res.h_found,
                        weight_to_budget: res.weight_to_budget,
                        tree: doc,
                    })?
                );
            } else {
                println!(
                    "h_found={} weight={} budget={budget} weight/budget={} hop_diameter={}",
                    res.h_found, doc.total_weight, res.weight_to_budget, doc.hop_diameter
                );
            }
            Ok(())
        }
        Command::Oracle { ref input, h, ratios, epsilon, ref seeds } => {
            let g = load(input)?;
            let opt = brute_force_opt(&g, h)?;
            #[derive(Serialize)]
            struct OracleDoc {
                opt_weight: Option<f64>,
                trees_enumerated: u64,
                witness: Option<TreeDocument>,
            }
            let doc = OracleDoc {
                opt_weight: opt.opt_weight,
                trees_enumerated: opt.trees_enumerated,
                witness: opt.witness.as_ref().map(|w| w.to_document(0, cli.seed)),
            };
            if cli.format == "json" {
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                match doc.opt_weight {
                    Some(w) => println!(
                        "opt_weight={w} trees_enumerated={} witness_diameter={}",
                        doc.trees_enumerated,
                        doc.witness.as_ref().unwrap().hop_diameter
                    ),
                    None => println!(
                        "opt_weight=inf trees_enumerated={} (no tree of diameter <= {h})",
                        doc.trees_enumerated
                    ),
                }
            }
            if ratios {
                let seeds = parse_seed_list(seeds)?;
                let report = ratio_report(&g, h, epsilon, &seeds)?;
                if cli.format == "json" {
                    println!("{}", serde_json::to_string_pretty(&report)?);
                } else {
                    println!("seed weight ratio diameter slack");
                    for row in &report.rows {
                        println!(
                            "{} {} {} {} {}",
                            row.seed,
                            row.total_weight,
                            row.weight_ratio,
                            row.hop_diameter,
                            row.diameter_slack
                        );
                    }
                    println!(
                        "ratios: min={} median={} max={}",
                        report.min_ratio, report.median_ratio, report.max_ratio
                    );
                }
            }
            Ok(())
        }
        Command::Verify { ref input, h, epsilon, ref reference, trials } => {
            let g = load(input)?;
            let reference = match reference {
                Some(path) => {
                    let doc: TreeDocument = serde_json::from_str(&fs::read_to_string(path)?)?;
                    SpanningTree::from_document(&g, &doc)?
                }
                None => brute_force_opt(&g, h)?.witness.ok_or_else(|| {
                    Error::BadParameter(format!(
                        "no reference tree: instance has no spanning tree of diameter <= {h} \
                         (pass --reference for larger instances)"
                    ))
                })?,
            };
            let params = SolveParams::new(h, epsilon, cli.seed)?;
            let outcome = solve(&g, &params)?;
            let med = verify_claim_med(&g, &outcome.trace, &reference)?;
            let hard = estimate_claim_hard(&g, epsilon, &reference, h, trials, cli.seed)?;
            let n = g.vertex_count();
            let sum_exps = check_sum_of_exps(
                (n as f64).powf(epsilon),
                (2 * n.saturating_sub(1)).max(1) as u64,
            );
            #[derive(Serialize)]
            struct VerifyDoc {
                per_round: Vec<RoundCheck>,
                claim_med: bool,
                claim_hard: ClaimHardEstimate,
                sum_exps: SumExpsCheck,
            }
            let doc = VerifyDoc {
                claim_med: med.pass,
                per_round: med.rounds,
                claim_hard: hard,
                sum_exps,
            };
            if cli.format == "text" {
                for r in &doc.per_round {
                    println!(
                        "round {}: increment={} phi={} {}",
                        r.round,
                        r.increment,
                        r.phi,
                        if r.ok && r.merges_ok { "ok" } else { "VIOLATED" }
                    );
                }
                println!("claim_med: {}", if doc.claim_med { "pass" } else { "FAIL" });
                println!(
                    "claim_hard: mean={} bound={} {}",
                    doc.claim_hard.mean_phi,
                    doc.claim_hard.bound,
                    if doc.claim_hard.pass { "pass" } else { "FAIL" }
                );
                println!(
                    "sum_exps: sum={} bound={} {}",
                    doc.sum_exps.sum,
                    doc.sum_exps.bound,
                    if doc.sum_exps.pass { "pass" } else { "FAIL" }
                );
            } else {
                println!("{}", serde_json::to_string_pretty(&doc)?);
            }
            if !(doc.claim_med && doc.claim_hard.pass && doc.sum_exps.pass) {
                return Err(Error::Invariant("a charging check failed".into()));
            }
            Ok(())
        }
        Command::Bench {
            ref input,
            ref family,
            n,
            p,
            gen_seed,
            ref h,
            ref epsilons,
            ref seeds,
            ref algos,
            trials,
            ref output,
        } => {
            let mut instances = Vec::new();
            for path in input {
                let id = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                instances.push(BenchInstance { id, graph: load(path)? });
            }
            if let Some(family) = family {
                let fam: Family = family.parse()?;
                let graph = generate(fam, n, &GenParams { p }, gen_seed)?;
                instances.push(BenchInstance { id: format!("{family}-{n}-s{gen_seed}"), graph });
            }
            let mut config = BenchConfig::new(instances);
            config.h_values = parse_list::<usize>(h)?;
            config.epsilons = parse_list::<f64>(epsilons)?;
            config.seeds = parse_seed_list(seeds)?;
            config.algorithms = algos
                .split(',')
                .map(|a| a.trim().parse::<Algorithm>())
                .collect::<Result<Vec<_>, _>>()?;
            config.trials = trials;
            let report = run_bench(&config)?;
            let body = if cli.format == "json" {
                records_to_json(&report.records)?
            } else {
                records_to_csv(&report.records, true)
            };
            emit(output.as_deref(), &body)?;
            if !cli.quiet {
                eprint!("{}", hopmst::bench::emit_report(&report.summary));
            }
            Ok(())
        }
    }
}

fn load(path: &std::path::Path) -> Result<Graph, Error> {
    Graph::from_edge_list(&fs::read_to_string(path)?)
}

fn emit(path: Option<&std::path::Path>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Error> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| Error::BadParameter(format!("bad list item '{tok}'")))
        })
        .collect()
}

/// "a..b" is the inclusive seed range; otherwise a comma list.
fn parse_seed_list(s: &str) -> Result<Vec<u64>, Error> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo
            .trim()
            .parse()
            .map_err(|_| Error::BadParameter(format!("bad range start '{lo}'")))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .map_err(|_| Error::BadParameter(format!("bad range end '{hi}'")))?;
        if hi < lo {
            return Err(Error::BadParameter(format!("empty seed range '{s}'")));
        }
        Ok((lo..=hi).collect())
    } else {
        parse_list::<u64>(s)
    }
}
