use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use contagion::bench::{check_scaling, run_benchmark, BenchScenario};
use contagion::boolean::run_boolean_scheduled;
use contagion::discrete::{epidemic_curve, infection_times, run};
use contagion::generate::{generate_network, NetworkKind};
use contagion::graph::{
    build_approx_graph, build_realization, curve_from_infection_times, parse_arc_list, shortest_infection_times,
};
use contagion::montecarlo::{run_montecarlo, Engine};
use contagion::output::{emit_results, Format, RunOutput};
use contagion::scenario::{load_scenario, NetworkDoc, Scenario, ScenarioEngine};
use contagion::{CoinStream, ExternalSchedule, TransmissionWindowMode};

#[derive(Parser)]
#[command(name = "contagion", version, about = "Stochastic SIR epidemics on contact networks")]
struct Cli {
    /// Overrides the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true, default_value = "csv", value_parser = ["csv", "svg"])]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario JSON file.
    scenario: PathBuf,
    #[arg(long)]
    horizon: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Time-stepping simulation: curve and infection times.
    Simulate {
        #[command(flatten)]
        common: ScenarioArgs,
        #[arg(long)]
        mode: Option<TransmissionWindowMode>,
    },
    /// Boolean-matrix engine (literal transmission window).
    Boolean {
        #[command(flatten)]
        common: ScenarioArgs,
    },
    /// Infection times as shortest paths on a Contagion Graph.
    Graph {
        /// Scenario JSON; optional when `--arcs` is given.
        scenario: Option<PathBuf>,
        /// Load a fixed realization (`src dst weight` per line) instead of sampling one.
        #[arg(long)]
        arcs: Option<PathBuf>,
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Deterministic approximation with β-quantile weights.
    Approx {
        #[command(flatten)]
        common: ScenarioArgs,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Monte Carlo histogram of infection times.
    Mc {
        scenario: PathBuf,
        #[arg(long)]
        engine: Option<Engine>,
        #[arg(long)]
        replicas: Option<u64>,
        #[arg(long)]
        mode: Option<TransmissionWindowMode>,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// Overlay the β-approximation on the scatter chart.
        #[arg(long)]
        overlay_beta: Option<f64>,
    },
    /// Operation counts of the discrete and graph engines over several horizons.
    Bench {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "100,200,400,800")]
        horizons: Vec<u64>,
        /// Erdős–Rényi link probability.
        #[arg(long, default_value_t = 0.05)]
        param: f64,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long, default_value = "3:5", value_parser = parse_range)]
        recovery: (u32, u32),
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
    /// Random network generation.
    Gen {
        #[arg(long, default_value = "erdos-renyi")]
        kind: NetworkKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        param: f64,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long, default_value = "3:5", value_parser = parse_range)]
        recovery: (u32, u32),
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

enum Failure {
    Invalid(String),
    Runtime(String),
}

fn invalid(e: impl Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn runtime(e: impl Display) -> Failure {
    Failure::Runtime(e.to_string())
}

fn scenario(path: &Path, seed: Option<u64>) -> Result<Scenario, Failure> {
    let mut s = load_scenario(path).map_err(invalid)?;
    if let Some(seed) = seed {
        s.seed = seed;
    }
    Ok(s)
}

fn warn_if_no_sources(ext: &ExternalSchedule) {
    if ext.source_count() == 0 {
        eprintln!("warning: no external sources; nobody can be infected");
    }
}

fn emit(cli: &Cli, output: &RunOutput) -> Result<(), Failure> {
    let format = cli.format.parse::<Format>().map_err(invalid)?;
    for path in emit_results(output, format, &cli.out).map_err(runtime)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Simulate { common, mode } => {
            let mut s = scenario(&common.scenario, cli.seed)?;
            s.horizon = common.horizon.or(s.horizon);
            let mode = mode.unwrap_or(s.mode);
            let ext = s.schedule();
            warn_if_no_sources(&ext);
            let traj = run(
                &s.network(),
                &ext,
                &CoinStream::new(s.seed),
                s.effective_horizon(),
                mode,
            );
            let times = infection_times(&traj).map_err(runtime)?;
            emit(
                cli,
                &RunOutput {
                    curve: Some(epidemic_curve(&traj)),
                    times: Some(times),
                    ..Default::default()
                },
            )
        }
        Command::Boolean { common } => {
            let mut s = scenario(&common.scenario, cli.seed)?;
            s.horizon = common.horizon.or(s.horizon);
            let (net, ext) = (s.network(), s.schedule());
            warn_if_no_sources(&ext);
            let traj =
                run_boolean_scheduled(&net, &ext, &CoinStream::new(s.seed), s.effective_horizon()).map_err(invalid)?;
            let times = traj.infection_times().map_err(runtime)?;
            let curve = curve_from_infection_times(&times, net.recovery(), s.effective_horizon());
            emit(
                cli,
                &RunOutput {
                    curve: Some(curve),
                    times: Some(times),
                    ..Default::default()
                },
            )
        }
        Command::Graph {
            scenario: path,
            arcs,
            horizon,
        } => {
            let s = path.as_deref().map(|p| scenario(p, cli.seed)).transpose()?;
            let g = match (arcs, &s) {
                (Some(file), s) => {
                    let text =
                        std::fs::read_to_string(file).map_err(|e| invalid(format!("{}: {e}", file.display())))?;
                    let n = s.as_ref().map(|s| s.network.n);
                    parse_arc_list(&text, n).map_err(invalid)?
                }
                (None, Some(s)) => build_realization(&s.network(), &s.schedule(), &CoinStream::new(s.seed)),
                (None, None) => return Err(invalid("graph needs a scenario or --arcs")),
            };
            if !g.has_sources() {
                eprintln!("warning: no external sources; nobody can be infected");
            }
            let times = shortest_infection_times(&g);
            let curve = s.map(|s| {
                let h = horizon.unwrap_or_else(|| s.effective_horizon());
                curve_from_infection_times(&times, &s.network.recovery, h)
            });
            emit(
                cli,
                &RunOutput {
                    curve,
                    times: Some(times),
                    ..Default::default()
                },
            )
        }
        Command::Approx { common, beta } => {
            let s = scenario(&common.scenario, cli.seed)?;
            let beta = beta.or(s.beta).ok_or_else(|| invalid("approx needs a beta"))?;
            let (net, ext) = (s.network(), s.schedule());
            warn_if_no_sources(&ext);
            let g = build_approx_graph(&net, &ext, beta).map_err(invalid)?;
            let times = shortest_infection_times(&g);
            let h = common.horizon.unwrap_or_else(|| s.effective_horizon());
            let curve = curve_from_infection_times(&times, net.recovery(), h);
            emit(
                cli,
                &RunOutput {
                    curve: Some(curve),
                    times: Some(times),
                    ..Default::default()
                },
            )
        }
        Command::Mc {
            scenario: path,
            engine,
            replicas,
            mode,
            jobs,
            overlay_beta,
        } => {
            let s = scenario(path, cli.seed)?;
            let engine = match engine {
                Some(e) => *e,
                None => match s.engine {
                    ScenarioEngine::Discrete => Engine::Discrete,
                    ScenarioEngine::Boolean => Engine::Boolean,
                    ScenarioEngine::Graph => Engine::Graph,
                    ScenarioEngine::Approx => {
                        return Err(invalid("the approximation is deterministic; pick a stochastic engine"))
                    }
                },
            };
            let replicas = replicas.or(s.replicas).unwrap_or(1000);
            let mode = mode.unwrap_or(s.mode);
            let (net, ext) = (s.network(), s.schedule());
            warn_if_no_sources(&ext);
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                pool = pool.num_threads(*j);
            }
            let pool = pool.build().map_err(runtime)?;
            let hist = pool
                .install(|| run_montecarlo(&net, &ext, replicas, engine, s.seed, mode))
                .map_err(|e| match e {
                    contagion::McError::Sim(contagion::SimError::UnsupportedSchedule(_)) => invalid(e),
                    other => runtime(other),
                })?;
            let overlay = match overlay_beta {
                Some(b) => Some(shortest_infection_times(
                    &build_approx_graph(&net, &ext, *b).map_err(invalid)?,
                )),
                None => None,
            };
            emit(
                cli,
                &RunOutput {
                    histogram: Some(hist),
                    overlay,
                    ..Default::default()
                },
            )
        }
        Command::Bench {
            n,
            horizons,
            param,
            p,
            recovery,
            reps,
        } => {
            let seed = cli.seed.unwrap_or(0);
            let g = generate_network(NetworkKind::ErdosRenyi, *n, *param, *p, *recovery, seed).map_err(invalid)?;
            let ext = ExternalSchedule::from_pairs(*n, &[(0, 1)]).map_err(invalid)?;
            let scenarios: Vec<_> = horizons
                .iter()
                .map(|&horizon| BenchScenario {
                    network: g.network.clone(),
                    external: ext.clone(),
                    horizon,
                    seed,
                })
                .collect();
            let records = run_benchmark(&scenarios, *reps);
            match check_scaling(&records) {
                Ok(reports) => {
                    for r in reports {
                        println!(
                            "{}: slope {:.2} ops/step, exponent {:.3}, constant {}",
                            r.engine.name(),
                            r.slope,
                            r.exponent,
                            r.constant
                        );
                    }
                }
                Err(e) => eprintln!("warning: {e}"),
            }
            for r in records.iter().filter_map(|r| r.dense_ops.map(|d| (r.horizon, d))) {
                println!("dense count n(n+4)T at T={}: {}", r.0, r.1);
            }
            emit(
                cli,
                &RunOutput {
                    bench: Some(records),
                    ..Default::default()
                },
            )
        }
        Command::Gen {
            kind,
            n,
            param,
            p,
            recovery,
        } => {
            let g = generate_network(*kind, *n, *param, *p, *recovery, cli.seed.unwrap_or(0)).map_err(invalid)?;
            std::fs::create_dir_all(&cli.out).map_err(runtime)?;
            let path = cli.out.join("network.json");
            let doc = serde_json::to_string_pretty(&NetworkDoc::from_network(&g.network)).map_err(runtime)?;
            std::fs::write(&path, doc + "\n").map_err(runtime)?;
            println!(
                "{} components, largest {} of {}",
                g.components.count(),
                g.components.largest(),
                n
            );
            println!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
