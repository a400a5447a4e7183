use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tama::suites::{run, RunConfig};

/// Run verification suites and print a JSON report.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// Root system family: A, B, D or A1^d.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Dimension of the ambient space.
    #[arg(long)]
    ambient: Option<usize>,
    /// osp, relations, centre, vogan, admissible, cohomology, filtration or all; repeatable.
    #[arg(long = "suite", value_delimiter = ',')]
    suites: Vec<String>,
    /// Collapse all c_k to a single symbol.
    #[arg(long)]
    single_c: bool,
    /// Rational parameters, e.g. `s=2,c1=1/3`.
    #[arg(long)]
    specialize: Option<String>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    max_arity: Option<usize>,
    /// Largest group order to enumerate.
    #[arg(long)]
    max_group: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Record wall-clock milliseconds per check.
    #[arg(long)]
    timings: bool,
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("verify: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let mut cfg = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match RunConfig::from_json(&text) {
                Ok(c) => c,
                Err(e) => return config_error(e),
            },
            Err(e) => return config_error(format!("cannot read {}: {e}", path.display())),
        },
        None => RunConfig::default(),
    };
    if let Some(f) = cli.family {
        cfg.family = f;
    }
    cfg.rank = cli.rank.or(cfg.rank);
    cfg.ambient = cli.ambient.or(cfg.ambient);
    if !cli.suites.is_empty() {
        cfg.suites = cli.suites;
    }
    cfg.single_c |= cli.single_c;
    cfg.specialize = cli.specialize.or(cfg.specialize);
    cfg.max_degree = cli.max_degree.unwrap_or(cfg.max_degree);
    cfg.max_arity = cli.max_arity.unwrap_or(cfg.max_arity);
    cfg.max_group = cli.max_group.unwrap_or(cfg.max_group);
    cfg.samples = cli.samples.unwrap_or(cfg.samples);
    cfg.seed = cli.seed.unwrap_or(cfg.seed);
    cfg.timings |= cli.timings;
    if cfg.family.is_empty() {
        return config_error("--family is required");
    }
    if let Some(j) = cli.jobs {
        if j == 0 {
            return config_error("--jobs must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            return config_error(e);
        }
    }
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };
    let json = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("verify: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{json}"),
    }
    let s = &report.summary;
    eprintln!("{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
