use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use polydisc_cli::{emit, parse_config, run_all, Format, KINDS};

/// Runs the experiments of a TOML config and writes CSV / JSON reports.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Args {
    /// Experiment config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Run only the experiment with this name.
    #[arg(long)]
    experiment: Option<String>,
    /// Output directory (overrides `[output] dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format (overrides `[output] format`).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed (overrides the config's `seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// List the experiments in the config, or the known kinds without one.
    #[arg(long)]
    list: bool,
}

const WORKERS_VAR: &str = "POLYDISC_WORKERS";

fn init_pool() -> Result<()> {
    if let Ok(v) = std::env::var(WORKERS_VAR) {
        let n: usize = v.parse().with_context(|| format!("{WORKERS_VAR}={v} is not a worker count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool> {
    let args = Args::parse();
    let Some(path) = args.config else {
        if args.list {
            for k in KINDS {
                println!("{k}");
            }
            return Ok(true);
        }
        bail!("--config is required");
    };
    let body = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let mut config = parse_config(&body).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    config.base_dir = path.parent().map(PathBuf::from).unwrap_or_default();
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if args.list {
        for e in &config.experiments {
            println!("{}\t{}", e.name, e.kind.name());
        }
        return Ok(true);
    }
    if let Some(name) = &args.experiment {
        if !config.experiments.iter().any(|e| &e.name == name) {
            bail!("no experiment named `{name}` in {}", path.display());
        }
    }
    init_pool()?;
    let dir = args.out.unwrap_or_else(|| config.output.dir.clone());
    let format = args.format.unwrap_or(config.output.format);

    let mut all = true;
    for report in run_all(&config, args.experiment.as_deref()) {
        emit(&report, &dir, format)?;
        for g in &report.gates {
            println!(
                "{} {}/{}: {}",
                if g.pass { "PASS" } else { "FAIL" },
                report.experiment,
                g.name,
                g.detail
            );
        }
        for n in &report.notes {
            println!("     {}: {n}", report.experiment);
        }
        println!("     {}: {:.1} s", report.experiment, report.elapsed_s);
        all &= report.passed();
    }
    Ok(all)
}
