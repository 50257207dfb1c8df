use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semantic_g_experiments::record::{reference_verdicts, write_curve, write_outputs};
use semantic_g_experiments::{
    render_curve_csv, reproduce_tables, run_scenario, scenarios, ExperimentError, Overrides, Result, ScenarioConfig,
};

/// Rate-fidelity experiments for semantic information G.
#[derive(Parser)]
#[command(name = "rgfid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its CSV curve and JSON summary.
    Run {
        /// Built-in scenario name or path to a TOML config.
        config: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Reproduce the reference tables and compare cell by cell.
    Tables {
        /// Also write the report as JSON into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print (or write) the R(G) curve of a scenario as CSV.
    Curve {
        config: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Built-in scenarios.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
}

#[derive(Subcommand)]
enum ScenarioAction {
    /// List built-in scenario names.
    List,
}

#[derive(Args)]
struct CommonOpts {
    #[arg(long)]
    grid_step: Option<f64>,
    /// Comma-separated slope values, e.g. `--s 1,5,40`.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    s: Option<Vec<f64>>,
    /// Fixed number of iterations for the action marginal.
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl CommonOpts {
    fn overrides(&self) -> Overrides {
        Overrides { grid_step: self.grid_step, s_values: self.s.clone(), iterations: self.iterations }
    }
}

fn load(config: &str, opts: &CommonOpts) -> Result<ScenarioConfig> {
    let mut cfg = match scenarios::builtin(config) {
        Some(cfg) => cfg,
        None => ScenarioConfig::load(Path::new(config))?,
    };
    cfg.apply(&opts.overrides())?;
    Ok(cfg)
}

fn run(config: &str, opts: &CommonOpts) -> Result<bool> {
    let cfg = load(config, opts)?;
    let mut record = run_scenario(&cfg)?;
    record.verdicts = reference_verdicts(&cfg, &record);
    let out_dir = opts.out_dir.clone().unwrap_or_else(|| PathBuf::from("out"));
    for path in write_outputs(&record, &cfg, &out_dir)? {
        println!("wrote {}", path.display());
    }
    for row in &record.rows {
        let eff = row.efficiency.map_or("undefined".to_string(), |e| format!("{e:.4}"));
        println!("s={:<6} G={:.4} R={:.4} G/R={eff}", row.s, row.g_bits, row.r_bits);
    }
    for v in &record.verdicts {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("{tag} {}: {:.4} vs {:.4} (tol {})", v.label, v.computed, v.reference, v.tolerance);
    }
    Ok(record.verdicts.iter().all(|v| v.pass))
}

fn curve(config: &str, opts: &CommonOpts) -> Result<bool> {
    let cfg = load(config, opts)?;
    let record = run_scenario(&cfg)?;
    match &opts.out_dir {
        Some(dir) => println!("wrote {}", write_curve(&record, &cfg, dir)?.display()),
        None => {
            let mut out = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = out.write_all(render_curve_csv(&record.curve).as_bytes());
        }
    }
    Ok(true)
}

fn tables(out_dir: Option<&Path>) -> Result<bool> {
    let report = reproduce_tables()?;
    print!("{}", report.render());
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|source| ExperimentError::Io { path: dir.into(), source })?;
        let path = dir.join("tables.json");
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(&path, json + "\n").map_err(|source| ExperimentError::Io { path: path.clone(), source })?;
        println!("wrote {}", path.display());
    }
    Ok(report.all_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run { config, opts } => run(config, opts),
        Command::Curve { config, opts } => curve(config, opts),
        Command::Tables { out_dir } => tables(out_dir.as_deref()),
        Command::Scenario { action: ScenarioAction::List } => {
            for name in scenarios::names() {
                println!("{name}");
            }
            Ok(true)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
