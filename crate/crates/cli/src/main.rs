use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use conewave::config::Overrides;
use conewave::zero_cache::OpenStatus;
use conewave::{run, Experiment, RunConfig, ZeroCache};

#[derive(Parser)]
#[command(name = "conewave", version, about = "Spectral-cluster and wave-kernel experiments on flat cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        experiment: Option<Experiment>,
        #[arg(long)]
        rho: Option<f64>,
        /// Comma-separated frequencies, e.g. 20,40,80,160.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Fill the Bessel-zero cache with j_{ν,m} for ν = 0, step, …, nu-max and m ≤ m-max.
    Zeros {
        #[arg(long)]
        nu_max: f64,
        #[arg(long)]
        m_max: usize,
        #[arg(long, default_value_t = 1.0)]
        nu_step: f64,
        #[arg(long)]
        cache: PathBuf,
    },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> conewave::Result<ExitCode> {
    match Cli::parse().command {
        Command::Run { config, experiment, rho, lambda, out, seed } => {
            let cfg =
                RunConfig::load(&config)?.apply(Overrides { experiment, rho, lambda_list: lambda, output_path: out, seed })?;
            let outcome = run(&cfg)?;
            for c in &outcome.checks {
                println!("{} {}: {:e} (threshold {:e})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.measured, c.threshold);
            }
            for f in &outcome.fits {
                println!(
                    "{} slope rho={} q={}: {:.4} (threshold {:.4})",
                    if f.pass { "PASS" } else { "FAIL" },
                    f.rho,
                    f.q,
                    f.slope,
                    f.threshold
                );
            }
            for n in &outcome.notes {
                println!("note: {n}");
            }
            println!("wrote {}", cfg.output_path.display());
            Ok(if outcome.pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Zeros { nu_max, m_max, nu_step, cache } => {
            if !(nu_max >= 0.0 && nu_step > 0.0 && m_max >= 1) {
                return Err(conewave::CliError::Config("need nu-max >= 0, nu-step > 0, m-max >= 1".into()));
            }
            let (zc, status) = ZeroCache::open(&cache)?;
            if let OpenStatus::Rebuilt(reason) = &status {
                eprintln!("warning: rebuilding corrupt cache ({reason})");
            }
            let n = (nu_max / nu_step + 1e-9).floor() as usize;
            let nus: Vec<f64> = (0..=n).map(|i| i as f64 * nu_step).collect();
            zc.fill(&nus, m_max)?;
            zc.save()?;
            println!("{} zeros for {} orders in {}", zc.len(), nus.len(), cache.display());
            if let Some(j) = zc.get(0.0, 1) {
                println!("j_(0,1) = {j:.16}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
