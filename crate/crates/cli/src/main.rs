//! Command-line driver for the verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use yangian::suite::{run, Format, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "yangian", version, about = "Exact verification of modular Yangian identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites and write a report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    /// relations, series-identities, gauss, hc-center, p-center, maps, gr, roots or all
    #[arg(long)]
    suite: Option<String>,
    /// Matrix size; restricts the default sweep to this n.
    #[arg(long)]
    n: Option<usize>,
    /// Odd prime characteristic.
    #[arg(long)]
    p: Option<u32>,
    /// Composition of n, comma separated.
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<usize>>,
    /// Shift matrix rows such as "0,1;0,0", "zero", or a file holding them.
    #[arg(long)]
    sigma: Option<String>,
    /// Truncation order of all series.
    #[arg(long)]
    trunc: Option<usize>,
    /// Superscript budget.
    #[arg(long)]
    budget: Option<u32>,
    /// Largest ell in the series identities.
    #[arg(long)]
    ell: Option<u32>,
    /// Report path; standard output when unset.
    #[arg(long, env = "YANGIAN_REPORT")]
    out: Option<PathBuf>,
    /// Worker threads (default 1)
    #[arg(long)]
    workers: Option<usize>,
    /// Seed for the randomized checks (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// JSON file with any of the above fields; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

fn build_config(args: VerifyArgs) -> Result<RunConfig, String> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            RunConfig::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };
    if let Some(s) = args.suite {
        cfg.suite = s.parse::<Suite>().map_err(|e| e.to_string())?;
    }
    if let Some(sigma) = args.sigma {
        let path = PathBuf::from(&sigma);
        cfg.sigma = Some(if path.is_file() {
            std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?.trim().replace('\n', ";")
        } else {
            sigma
        });
    }
    cfg.n = args.n.or(cfg.n);
    cfg.p = args.p.or(cfg.p);
    cfg.mu = args.mu.or(cfg.mu);
    cfg.trunc = args.trunc.or(cfg.trunc);
    cfg.budget = args.budget.or(cfg.budget);
    cfg.ell = args.ell.or(cfg.ell);
    cfg.out = args.out.or(cfg.out);
    cfg.workers = args.workers.unwrap_or(cfg.workers);
    cfg.seed = args.seed.unwrap_or(cfg.seed);
    if let Some(f) = args.format {
        cfg.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        };
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let Command::Verify(args) = Cli::parse().command;
    let cfg = match build_config(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = report.render(cfg.format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            let s = report.summary;
            eprintln!("{} passed, {} failed, {} skipped; report written to {}", s.pass, s.fail, s.skipped, path.display());
        }
        None => print!("{body}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
