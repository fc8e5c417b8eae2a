//! `logbs`: command-line driver. Every command prints a JSON report (or a
//! short text rendering of it) and exits with 0 on success, 2 on a flagged
//! result and 1 on errors.

mod check;
mod report;
mod run;

use clap::{Parser, Subcommand, ValueEnum};
use report::{Report, Status};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "logbs", version, about = "Bernstein-Sato ideals along monoid ideals, with replayable certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// Job file.
    #[arg(long, global = true)]
    pub job: Option<PathBuf>,
    /// Degree cap for Gröbner computations.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Plateau window of the localized chain.
    #[arg(long, global = true)]
    pub window: Option<u32>,
    /// Time budget in seconds.
    #[arg(long, global = true)]
    pub timeout: Option<u64>,
    /// Largest chain index tried by the localized computation.
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    /// Number of tower levels.
    #[arg(long, global = true)]
    pub jmax: Option<u32>,
    /// Basis cache directory.
    #[arg(long, global = true, env = "LOGBS_CACHE_DIR")]
    pub cache: Option<PathBuf>,
    /// Exit 0 on flagged results.
    #[arg(long, global = true)]
    pub allow_flagged: bool,
    /// Record wall-clock timings (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Levels `⟨j·v_1, …, j·v_p⟩`.
    Scaled,
    /// Levels `K^j`.
    Power,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// b-function of the single polynomial in F.
    Bfun,
    /// Annihilator of F^s.
    Ann,
    /// Bernstein-Sato ideal B^K with certificates.
    Bs,
    /// Localized ideal along the job's m.
    BsLocal,
    /// Finite support tower.
    Tower {
        #[arg(long, value_enum, default_value_t = Mode::Power)]
        mode: Mode,
    },
    /// Zero locus as a union of flats.
    Locus,
    /// Exp-image of the zero locus.
    Exp,
    /// Replays the certificates of a report.
    Check {
        #[arg(long)]
        report: PathBuf,
    },
    /// Full pipeline; `--batch` runs several jobs in parallel.
    Report {
        #[arg(long, num_args = 1..)]
        batch: Vec<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Bfun => "bfun",
            Command::Ann => "ann",
            Command::Bs => "bs",
            Command::BsLocal => "bs-local",
            Command::Tower { .. } => "tower",
            Command::Locus => "locus",
            Command::Exp => "exp",
            Command::Check { .. } => "check",
            Command::Report { .. } => "report",
        }
    }
}

fn exit_code(status: Status, allow_flagged: bool) -> ExitCode {
    match status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Flagged if allow_flagged => ExitCode::SUCCESS,
        Status::Flagged => ExitCode::from(2),
        Status::Error => ExitCode::from(1),
    }
}

fn emit(reports: &[Report], batch: bool, format: Format) {
    match format {
        Format::Json => {
            let text = if batch {
                serde_json::to_string_pretty(reports)
            } else {
                serde_json::to_string_pretty(&reports[0])
            };
            println!("{}", text.expect("reports serialize"));
        }
        Format::Text => {
            for r in reports {
                print!("{}", run::render_text(r));
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = cli.opts;
    let cache = match run::open_cache(opts.cache.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match &cli.command {
        Command::Check { report } => check::run(report),
        Command::Report { batch } if !batch.is_empty() => {
            let mut jobs = Vec::new();
            for path in batch {
                match run::load_job(path) {
                    Ok(j) => jobs.push(j),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                }
            }
            use rayon::prelude::*;
            let reports: Vec<Report> =
                jobs.par_iter().map(|job| run::execute("report", None, job, &opts, cache.as_ref())).collect();
            emit(&reports, true, opts.format);
            let worst = reports.iter().map(|r| r.status).max().unwrap_or(Status::Ok);
            exit_code(worst, opts.allow_flagged)
        }
        cmd => {
            let Some(path) = &opts.job else {
                eprintln!("error: --job FILE is required for `{}`", cmd.name());
                return ExitCode::from(1);
            };
            let job = match run::load_job(path) {
                Ok(j) => j,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let mode = match cmd {
                Command::Tower { mode } => Some(*mode),
                _ => None,
            };
            let report = run::execute(cmd.name(), mode, &job, &opts, cache.as_ref());
            if let Some(e) = &report.error {
                eprintln!("error: {e}");
            }
            emit(std::slice::from_ref(&report), false, opts.format);
            exit_code(report.status, opts.allow_flagged)
        }
    }
}
