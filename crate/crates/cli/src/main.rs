use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use skoda_cli::{parse, pretty_script, run, RunConfig};
use skoda_core::harness::{search_counterexamples, CheckOptions, SearchCandidate};

#[derive(Parser)]
#[command(
    name = "skoda",
    version,
    about = "Checks integral-closure containments in prime characteristic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script and emit a JSON report.
    Run(RunArgs),
    /// Print a script in canonical form.
    Fmt {
        /// Script file, or `-` for stdin.
        script: Option<PathBuf>,
    },
    /// Randomized search for candidate counterexamples to open questions.
    /// Results are never conclusive.
    Search(SearchArgs),
}

#[derive(Args)]
struct Bounds {
    /// Largest Frobenius exponent e.
    #[arg(long)]
    emax: Option<u32>,
    /// Largest degree of sampled elements.
    #[arg(long)]
    degree_bound: Option<u64>,
    /// Largest m in pure-power certificates.
    #[arg(long)]
    mmax: Option<u32>,
    /// Largest reduction exponent t.
    #[arg(long)]
    tmax: Option<u32>,
    /// Random combinations drawn per degree.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

impl Bounds {
    fn options(&self) -> CheckOptions {
        let mut o = CheckOptions::default();
        if let Some(v) = self.emax {
            o.e_max = v;
        }
        if let Some(v) = self.degree_bound {
            o.degree_bound = v;
        }
        if let Some(v) = self.mmax {
            o.m_max = v;
        }
        if let Some(v) = self.tmax {
            o.t_max = v;
        }
        if let Some(v) = self.samples {
            o.samples = v;
        }
        if let Some(v) = self.seed {
            o.seed = v;
        }
        o
    }
}

#[derive(Args)]
struct RunArgs {
    /// Script file, or `-` for stdin.
    script: Option<PathBuf>,
    #[command(flatten)]
    bounds: Bounds,
    /// Write the JSON report here and print one line per check instead.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run every check modulo each of these primes, e.g. `2,5,7`.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Leave timings out of the report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest degree of sampled elements.
    #[arg(long, default_value_t = 4)]
    degree_bound: u64,
    /// Largest m in pure-power certificates.
    #[arg(long, default_value_t = 3)]
    mmax: u32,
    /// Largest Frobenius exponent e.
    #[arg(long, default_value_t = 1)]
    emax: u32,
    /// Random combinations drawn per degree.
    #[arg(long, default_value_t = 20)]
    samples: usize,
}

#[derive(Serialize)]
struct SearchOutput {
    schema: u32,
    trials: usize,
    seed: u64,
    conclusive: bool,
    candidates: Vec<SearchCandidate>,
}

fn read_script(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => {
            let src = match read_script(&args.script) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let script = match parse(&src) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            let cfg = RunConfig {
                opts: args.bounds.options(),
                primes: args.primes,
                timing: !args.no_timing,
            };
            let out = run(&script, &cfg);
            match &args.json {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, out.to_json()) {
                        return usage_error(format!("{}: {e}", path.display()));
                    }
                    for entry in &out.reports {
                        println!("{}", entry.headline());
                    }
                }
                None => print!("{}", out.to_json()),
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Command::Fmt { script } => {
            let src = match read_script(&script) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            match parse(&src) {
                Ok(s) => {
                    print!("{}", pretty_script(&s));
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Search(args) => {
            let opts = CheckOptions {
                degree_bound: args.degree_bound,
                m_max: args.mmax,
                e_max: args.emax,
                samples: args.samples,
                seed: args.seed,
                ..CheckOptions::default()
            };
            let out = SearchOutput {
                schema: skoda_cli::runner::SCHEMA,
                trials: args.trials,
                seed: opts.seed,
                conclusive: false,
                candidates: search_counterexamples(args.trials, opts.seed, &opts),
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("candidates serialize"));
            ExitCode::SUCCESS
        }
    }
}
