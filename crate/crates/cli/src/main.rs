use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trigauge::config::InstanceConfig;
use trigauge::error::Error;
use trigauge::report::Report;
use trigauge::suites::{self, Options};

/// Exact verification runs for differential 2-crossed modules and 3-form
/// Yang-Mills theory.
#[derive(Parser)]
#[command(name = "trigauge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Axioms, invariant forms, adjoint maps and finite group laws.
    Verify(Common),
    /// The three Bianchi identities on random connections.
    Bianchi {
        #[command(flatten)]
        common: Common,
        /// Write a fake-flat connection for the first seed in the forms text format.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Exact first variation against the field equations.
    Gradcheck {
        #[command(flatten)]
        common: Common,
        /// Run a floating-point central-difference sweep on the first seed.
        #[arg(long)]
        float_sweep: bool,
        /// Where to write the sweep CSV; defaults to the report path with a
        /// `.csv` extension, or stderr.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exact action values, checked against quadrature.
    Action(Common),
    /// Compare the field equations with a reduced theory.
    Reduce(Common),
}

#[derive(Args)]
struct Common {
    /// Instance file.
    config: PathBuf,
    #[arg(long)]
    seeds: Option<u64>,
    #[arg(long)]
    degree_cap: Option<u32>,
    #[arg(long)]
    dim: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record per-seed wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

impl Common {
    fn load(&self) -> Result<(InstanceConfig, Options), Error> {
        let cfg = InstanceConfig::load(&self.config)?;
        let mut opts = Options::from_run(&cfg.run);
        if let Some(n) = self.seeds {
            opts.seeds = n;
        }
        if let Some(k) = self.degree_cap {
            opts.degree_cap = k;
        }
        if let Some(d) = self.dim {
            opts.dim = d;
        }
        opts.timing = self.timing;
        Ok((cfg, opts))
    }
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(common: &Common, report: &Report) -> Result<(), Error> {
    let json = report.to_json();
    match &common.out {
        Some(p) => write(p, &(json + "\n"))?,
        None => println!("{json}"),
    }
    for c in report.failures() {
        let seed = c.seed.map(|s| format!(" seed {s}")).unwrap_or_default();
        eprintln!("FAIL {}{seed}: {}", c.name, c.reason.as_deref().unwrap_or(&c.residual_exact));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Error> {
    let (common, report) = match &cli.command {
        Command::Verify(c) => {
            let (cfg, opts) = c.load()?;
            (c, suites::verify(&cfg, &opts)?)
        }
        Command::Bianchi { common, witness } => {
            let (cfg, opts) = common.load()?;
            let report = suites::bianchi(&cfg, &opts)?;
            if let Some(path) = witness {
                let conn = cfg.module()?.fake_flat_witness(opts.seed_base, opts.dim, opts.degree_cap)?;
                let text = [&conn.a, &conn.b, &conn.c].map(|f| f.to_text()).concat();
                write(path, &text)?;
            }
            (common, report)
        }
        Command::Gradcheck { common, float_sweep, csv } => {
            let (cfg, mut opts) = common.load()?;
            opts.float_sweep = *float_sweep;
            let (report, sweep) = suites::gradcheck(&cfg, &opts)?;
            if let Some(text) = sweep {
                match csv.clone().or_else(|| common.out.as_ref().map(|p| p.with_extension("csv"))) {
                    Some(p) => write(&p, &text)?,
                    None => eprint!("{text}"),
                }
            }
            (common, report)
        }
        Command::Action(c) => {
            let (cfg, opts) = c.load()?;
            (c, suites::action(&cfg, &opts)?)
        }
        Command::Reduce(c) => {
            let (cfg, opts) = c.load()?;
            (c, suites::reduce(&cfg, &opts)?)
        }
    };
    emit(common, &report)?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
