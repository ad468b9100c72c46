use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rsuloc::harness::{run_suite, run_sweep, ScenarioConfig};
use rsuloc::scan::ModelId;

#[derive(Parser)]
#[command(version, about = "Roadside-LiDAR cooperative localization simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a multi-trial suite and write trajectories, bins and a summary.
    Run(RunArgs),
    /// Sweep channel delay and loss and write a delay-by-loss MLE table.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    delay_ms: Option<f64>,
    #[arg(long)]
    loss: Option<f64>,
    #[arg(long)]
    sensor: Option<ModelId>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Drop all roadside units, leaving the onboard-only filter.
    #[arg(long)]
    no_rsu: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Comma-separated delays in milliseconds.
    #[arg(long, value_delimiter = ',', default_value = "0,10,30")]
    delays: Vec<f64>,
    /// Comma-separated loss probabilities.
    #[arg(long, value_delimiter = ',', default_value = "0,0.1,0.2")]
    losses: Vec<f64>,
    /// Sensor models to sweep; defaults to both.
    #[arg(long, value_delimiter = ',')]
    sensor: Vec<ModelId>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn run(args: RunArgs) -> rsuloc::Result<()> {
    let mut cfg = ScenarioConfig::load(&args.config)?;
    if let Some(m) = args.sensor {
        cfg = cfg.with_sensor(m);
    }
    if let Some(d) = args.delay_ms {
        cfg.channel.delay = d / 1000.0;
    }
    if let Some(l) = args.loss {
        cfg.channel.loss_prob = l;
    }
    if let Some(s) = args.seed {
        cfg.master_seed = s;
    }
    if args.no_rsu {
        cfg = cfg.without_rsus();
    }
    let trials = args.trials.unwrap_or(cfg.trial_count);
    let report = run_suite(&cfg, trials, Some(&args.out))?;
    for a in &report.aggregate {
        println!(
            "{:<10} baseline {:.4} m  fused {:.4} m  improvement {:.1}%",
            a.name,
            a.baseline.mean,
            a.fused.mean,
            100.0 * a.improvement()
        );
    }
    println!("wrote {}", args.out.display());
    Ok(())
}

fn sweep(args: SweepArgs) -> rsuloc::Result<()> {
    let cfg = ScenarioConfig::load(&args.config)?;
    let sensors = if args.sensor.is_empty() {
        vec![ModelId::Vlp16, ModelId::Vlp32c]
    } else {
        args.sensor
    };
    let delays: Vec<f64> = args.delays.iter().map(|d| d / 1000.0).collect();
    let trials = args.trials.unwrap_or(cfg.trial_count);
    let report = run_sweep(&cfg, &sensors, &delays, &args.losses, trials, Some(&args.out))?;
    for c in &report.cells {
        println!(
            "{:<7} delay {:>4.0} ms  loss {:>4.0}%  fused {:.4} m",
            c.sensor,
            c.delay * 1000.0,
            c.loss * 100.0,
            c.region.fused.mean
        );
    }
    println!("wrote {}", args.out.join("sweep.csv").display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
