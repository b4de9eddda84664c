//! The `relreg` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use relreg::environment::{build_environment, registered_worlds};
use relreg::planner::{plan, SamplerKind};

use crate::config::RunConfig;
use crate::error::{BenchError, Result};
use crate::output::{emit_csv, write_report, CsvRow};
use crate::runner::run_benchmark;

/// Iteration budget of `plan` when neither the config nor the flags set one.
pub const DEFAULT_PLAN_ITERATIONS: u64 = 5000;

#[derive(Debug, Parser)]
#[command(
    name = "relreg",
    version,
    about = "Relevant region sampling planner and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a single trial and print the path and its cost.
    Plan(RunArgs),
    /// Run a multi-trial study and write CSV, summary and plot files.
    Bench(RunArgs),
    /// List the registered worlds.
    Worlds,
    /// Parse and check a run configuration.
    ValidateConfig {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Run configuration (TOML with [environment], [planner], [bench]).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Registered world, used when no config is given.
    #[arg(long, conflicts_with = "config")]
    world: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Planner seed for `plan`, base seed for `bench`.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Restrict to one sampler.
    #[arg(long)]
    sampler: Option<String>,
    /// Budget flags replace the configured budget.
    #[arg(long)]
    time_budget_ms: Option<u64>,
    #[arg(long)]
    iterations: Option<u64>,
}

impl RunArgs {
    fn run_config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::for_world(self.world.as_deref().unwrap_or("multi_obstacle_2d")),
        };
        if let Some(seed) = self.seed {
            cfg.bench.base_seed = seed;
            cfg.planner.seed = seed;
        }
        if let Some(trials) = self.trials {
            cfg.bench.trials = trials;
        }
        if let Some(name) = &self.sampler {
            let kind: SamplerKind = name.parse()?;
            cfg.bench.samplers = vec![kind];
            cfg.planner.sampler = kind;
            if kind != SamplerKind::Transition {
                cfg.bench.transition_t_init.clear();
            }
        }
        if self.time_budget_ms.is_some() || self.iterations.is_some() {
            cfg.planner.time_budget_ms = self.time_budget_ms;
            cfg.planner.iterations = self.iterations;
        }
        if let Some(out) = &self.out {
            cfg.bench.out_dir = Some(out.clone());
        }
        Ok(cfg)
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 on success, 2 for usage or configuration errors,
/// 1 for run-time failures.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Worlds => {
            for w in registered_worlds() {
                writeln!(
                    out,
                    "{:<18} d={} eta={:<4} {}",
                    w.name, w.dim, w.eta, w.description
                )
                .map_err(stdout)?;
            }
            Ok(())
        }
        Command::ValidateConfig { config } => {
            let cfg = RunConfig::load(&config)?;
            let env = build_environment(&cfg.environment)?;
            let variants = cfg.variants();
            writeln!(
                out,
                "ok: world {} (d={}), {} variant(s), {} trial(s)",
                env.name(),
                env.dim(),
                variants.len(),
                cfg.bench.trials
            )
            .map_err(stdout)?;
            Ok(())
        }
        Command::Plan(args) => plan_once(&args, out),
        Command::Bench(args) => bench(&args, out),
    }
}

fn stdout(e: std::io::Error) -> BenchError {
    BenchError::io("<stdout>", e)
}

fn plan_once(args: &RunArgs, out: &mut dyn Write) -> Result<()> {
    let mut cfg = args.run_config()?;
    if args.config.is_none() && args.time_budget_ms.is_none() && args.iterations.is_none() {
        cfg.planner.time_budget_ms = None;
        cfg.planner.iterations = Some(DEFAULT_PLAN_ITERATIONS);
    }
    // the first configured sampler variant
    let planner = cfg.variants()[0].planner.clone();
    planner.validate()?;
    let env = build_environment(&cfg.environment)?;
    let res = plan(&env, planner.clone())?;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(stdout);
    w(out, format!("world: {}", env.name()))?;
    w(out, format!("sampler: {}", planner.sampler))?;
    w(out, format!("seed: {}", planner.seed))?;
    w(out, format!("iterations: {}", res.iterations))?;
    w(out, format!("vertices: {}", res.vertices))?;
    match res.best_cost {
        Some(c) => w(out, format!("cost: {c}"))?,
        None => w(out, "cost: none".into())?,
    }
    w(out, "path:".into())?;
    for x in &res.best_path {
        let coords: Vec<String> = x.as_slice().iter().map(|c| format!("{c:.6}")).collect();
        w(out, format!("  {}", coords.join(" ")))?;
    }
    if let Some(dir) = &cfg.bench.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))?;
        let rows: Vec<CsvRow> = res
            .records
            .iter()
            .map(|r| CsvRow {
                sampler: planner.sampler.to_string(),
                trial: 0,
                iteration: r.iteration,
                elapsed_ms: r.elapsed_ms,
                best_cost: r.best_cost,
                vertices: r.vertices,
            })
            .collect();
        emit_csv(&rows, &dir.join("records.csv"))?;
    }
    Ok(())
}

fn bench(args: &RunArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = args.run_config()?;
    let dir = cfg
        .bench
        .out_dir
        .clone()
        .unwrap_or_else(|| Path::new("bench_out").to_path_buf());
    let report = run_benchmark(&cfg)?;
    write_report(&report, &dir)?;
    let s = &report.summary;
    let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |c| format!("{c:.4}"));
    writeln!(out, "world: {}", s.world).map_err(stdout)?;
    writeln!(
        out,
        "{:<18} {:>8} {:>10} {:>10} {:>10}",
        "sampler", "success", "q1", "median", "q3"
    )
    .map_err(stdout)?;
    for v in &s.samplers {
        writeln!(
            out,
            "{:<18} {:>8.3} {:>10} {:>10} {:>10}",
            v.label,
            v.success_rate,
            fmt(v.final_q1),
            fmt(v.final_median),
            fmt(v.final_q3)
        )
        .map_err(stdout)?;
    }
    writeln!(out, "wrote {}", dir.display()).map_err(stdout)?;
    Ok(())
}
