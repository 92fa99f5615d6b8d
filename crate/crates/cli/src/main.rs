//! `cealg`: command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on input or parse errors.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use cealg::random::DEFAULT_SEED;
use clap::{Parser, Subcommand};

use crate::commands::TdArgs;
use crate::report::{Report, Timing};

#[derive(Parser)]
#[command(
    name = "cealg",
    version,
    about = "Exact computations with semifree DGCAs, T-duality and Fourier-Mukai transforms"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include wall-clock timings (makes output vary between runs).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a definition file and check d^2 = 0.
    Check { file: String },
    /// Cohomology dimensions and representatives up to a degree.
    Cohomology {
        file: String,
        #[arg(long)]
        max_degree: u32,
    },
    /// Print the cyclification of a presentation.
    Cyclify {
        file: String,
        /// Name of the canonical degree-2 generator.
        #[arg(long, default_value = "x2")]
        canonical: String,
    },
    /// Central extension (homotopy fiber) of a cocycle.
    Hofib {
        file: String,
        /// Element label from the file, or an expression.
        #[arg(long)]
        cocycle: String,
        /// Name of the new generator (default y<degree-1>).
        #[arg(long)]
        name: Option<String>,
    },
    /// T-duality configuration checks and the derived Fourier-Mukai data.
    Tduality {
        file: String,
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        h3: String,
        /// Fiber generator names of the two extensions.
        #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"], default_values = ["e1c", "e1t"])]
        names: Vec<String>,
        #[command(subcommand)]
        action: TdAction,
    },
    /// Clifford data and super-Minkowski cocycles.
    Superminkowski {
        #[command(subcommand)]
        action: SmAction,
    },
    /// The built-in model library.
    Library {
        #[command(subcommand)]
        action: LibAction,
    },
}

#[derive(Subcommand)]
enum TdAction {
    Verify,
    Quintuple,
    FmSample {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        window: u32,
    },
}

#[derive(Subcommand)]
enum SmAction {
    Verify,
    Hori {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        window: u32,
    },
}

#[derive(Subcommand)]
enum LibAction {
    List,
    Dump { name: String },
}

fn run(cli: &Cli, report: &mut Report) -> anyhow::Result<()> {
    match &cli.command {
        Command::Check { file } => commands::check(report, file),
        Command::Cohomology { file, max_degree } => commands::cohomology(report, file, *max_degree),
        Command::Cyclify { file, canonical } => commands::cyclify_cmd(report, file, canonical),
        Command::Hofib { file, cocycle, name } => commands::hofib(report, file, cocycle, name.as_deref()),
        Command::Tduality { file, c1, c2, h3, names, action } => {
            let args = TdArgs { source: file, c1, c2, h3, names: (&names[0], &names[1]) };
            match action {
                TdAction::Verify => commands::tduality_verify(report, &args),
                TdAction::Quintuple => commands::tduality_quintuple(report, &args),
                TdAction::FmSample { samples, window } => {
                    commands::tduality_fm_sample(report, &args, cli.seed, *samples, *window)
                }
            }
        }
        Command::Superminkowski { action } => match action {
            SmAction::Verify => commands::superminkowski_verify(report),
            SmAction::Hori { samples, window } => commands::superminkowski_hori(report, cli.seed, *samples, *window),
        },
        Command::Library { action } => match action {
            LibAction::List => commands::library_list(report),
            LibAction::Dump { name } => commands::library_dump(report, name),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let mut report = Report::new(echo);
    let start = Instant::now();
    if let Err(e) = run(&cli, &mut report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if cli.timings {
        report.timings_ms.push(Timing { phase: "total".into(), ms: start.elapsed().as_millis() });
    }
    let text = if cli.json { report.render_json() } else { report.render_text() };
    print!("{text}");
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
