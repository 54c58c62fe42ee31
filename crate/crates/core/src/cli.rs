//! The `bilin-gap` command line.
//!
//! Exit codes: 0 success, 1 input error, 2 capacity error, 3 invariant
//! violation.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::cuts::{cut_range, find_large_cut, DEFAULT_TRIAL_BUDGET};
use crate::envelopes::{gap_report, EvaluationPoint};
use crate::error::{Error, Result};
use crate::experiments::{
    run_experiment, write_outcome, ExperimentConfig, ExperimentKind, OutputFormat,
};
use crate::graph::VertexSubset;
use crate::hull_check::check_hull_exact;
use crate::instances::{InstanceFamily, InstanceSpec};
use crate::io::{read_instance, write_instance};

pub const THREADS_ENV: &str = "BILIN_GAP_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "bilin-gap",
    version,
    about = "McCormick and convex-hull gaps of bilinear functions on [0,1]^n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance file (.json or text edge list)
    Gen(GenArgs),
    /// Gap report at one point (default: all coordinates 1/2)
    Eval {
        #[arg(long)]
        instance: PathBuf,
        /// Comma-separated coordinates; `h` means 0.5
        #[arg(long)]
        point: Option<String>,
    },
    /// Randomized large cut with guarantee check
    Cut {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIAL_BUDGET)]
        budget: usize,
    },
    /// Exact maximum and minimum cut by enumeration
    Maxcut {
        #[arg(long)]
        instance: PathBuf,
        /// Comma-separated vertices of the induced subgraph (default: all)
        #[arg(long)]
        subset: Option<String>,
    },
    /// Decide whether the McCormick relaxation equals the convex hull
    Hullcheck {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Run an experiment and write its records
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_family)]
    family: InstanceFamily,
    /// Vertex count (part size for random_pm1_bipartite)
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Edge signs for cycle/path, e.g. `+,+,-` or `1,1,-1`
    #[arg(long)]
    signs: Option<String>,
    /// Source file for custom_file
    #[arg(long)]
    path: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    kind: ExperimentKind,
    /// JSON experiment config; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sets both ends of the n range
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long)]
    seed_base: Option<u64>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    threads: Option<usize>,
    /// Write 0 in the wall_time_ms column
    #[arg(long)]
    no_timing: bool,
}

fn parse_family(s: &str) -> std::result::Result<InstanceFamily, String> {
    serde_json::from_value(json!(s)).map_err(|_| {
        "expected one of random_pm1_complete, hadamard, random_pm1_bipartite, cycle, path, custom_file"
            .to_string()
    })
}

/// Parses `0.5,h,1` style coordinate lists.
pub fn parse_point(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            if t.eq_ignore_ascii_case("h") {
                Ok(0.5)
            } else {
                t.parse::<f64>()
                    .map_err(|_| Error::input(format!("bad coordinate {t:?}")))
            }
        })
        .collect()
}

fn parse_signs(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| match t.trim() {
            "+" | "+1" | "1" => Ok(1.0),
            "-" | "-1" => Ok(-1.0),
            other => Err(Error::input(format!("bad sign {other:?}"))),
        })
        .collect()
}

fn parse_subset(s: &str) -> Result<VertexSubset> {
    let vertices = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::input(format!("bad vertex {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    VertexSubset::from_vertices(vertices)
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok()
}

fn experiment_config(args: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => serde_json::from_reader(File::open(path)?)?,
        None => ExperimentConfig::default(),
    };
    cfg.kind = args.kind;
    if let Some(n) = args.n {
        cfg.n_min = n;
        cfg.n_max = n;
    }
    if let Some(v) = args.n_min {
        cfg.n_min = v;
    }
    if let Some(v) = args.n_max {
        cfg.n_max = v;
    }
    if let Some(v) = args.instances {
        cfg.num_instances = v;
    }
    if let Some(v) = args.seed_base {
        cfg.seed_base = v;
    }
    if let Some(v) = args.budget {
        cfg.trial_budget = v;
    }
    if let Some(v) = &args.out {
        cfg.output_path = Some(v.clone());
    }
    if let Some(v) = args.format {
        cfg.output_format = v;
    }
    if let Some(t) = args.threads.or_else(threads_from_env) {
        cfg.threads = t;
    }
    if args.no_timing {
        cfg.record_timing = false;
    }
    Ok(cfg)
}

fn print_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Gen(a) => {
            let spec = InstanceSpec {
                family: a.family,
                n: a.n,
                seed: a.seed,
                signs: a.signs.as_deref().map(parse_signs).transpose()?,
                path: a.path,
            };
            let g = spec.build()?;
            write_instance(&g, &a.out)?;
        }
        Command::Eval { instance, point } => {
            let g = read_instance(&instance)?;
            let x = match point {
                Some(p) => EvaluationPoint::new(parse_point(&p)?)?,
                None => EvaluationPoint::all_half(g.n())?,
            };
            print_json(out, &gap_report(&g, &x)?)?;
        }
        Command::Cut {
            instance,
            seed,
            budget,
        } => {
            let g = read_instance(&instance)?;
            print_json(out, &find_large_cut(&g, seed, budget)?)?;
        }
        Command::Maxcut { instance, subset } => {
            let g = read_instance(&instance)?;
            let x = match subset {
                Some(s) => parse_subset(&s)?,
                None => g.vertices(),
            };
            let r = cut_range(&g, x)?;
            print_json(
                out,
                &json!({
                    "subset": x,
                    "mu_plus": r.mu_plus(),
                    "max_side": r.max.side,
                    "mu_minus": r.mu_minus(),
                    "min_side": r.min.side,
                }),
            )?;
        }
        Command::Hullcheck { instance } => {
            let g = read_instance(&instance)?;
            print_json(out, &check_hull_exact(&g))?;
        }
        Command::Experiment(a) => {
            let cfg = experiment_config(&a)?;
            let outcome = run_experiment(&cfg)?;
            match &cfg.output_path {
                Some(path) => {
                    let file = BufWriter::new(File::create(path)?);
                    write_outcome(&outcome, cfg.output_format, file)?;
                }
                None => write_outcome(&outcome, cfg.output_format, &mut *out)?,
            }
        }
    }
    Ok(())
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
