//! `ladder`: command-line front end for the diagram/move engine.
//!
//! Exit codes: 0 success, 1 verification discrepancy or engine failure,
//! 2 invalid input.

mod commands;
mod config;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Ctx, Failure, PartitionKind, Suite, SweepArgs, SweepKind};
use config::{Overrides, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "ladder", version, about = "Diagram, move, sweepout and growth-graph toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Weyl group element, e.g. "(s2 s3 s4)(s3)(s2)(s1)"
    #[arg(long, global = true)]
    omega: Option<String>,
    /// Rank ℓ (defaults to the largest generator in --omega)
    #[arg(long, global = true)]
    ell: Option<usize>,
    #[arg(long, global = true)]
    q: Option<f64>,
    #[arg(long, global = true)]
    n_max: Option<i64>,
    #[arg(long, global = true)]
    z_max: Option<i64>,
    #[arg(long, global = true)]
    margin: Option<i64>,
    /// Number of witnesses / ladder paths
    #[arg(long, global = true)]
    count: Option<usize>,
    /// Escape parameter K
    #[arg(long = "K", global = true)]
    k: Option<i64>,
    /// Commutator bound for `verify certificate`
    #[arg(long, global = true)]
    c: Option<f64>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// key = value file; flags take precedence
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical string decomposition and axis constants
    Decompose {
        /// Overrides --omega
        omega: Option<String>,
    },
    /// ASCII diagram
    Diagram {
        /// Remove every labelled horizontal
        #[arg(long)]
        reduced: bool,
    },
    /// Enumerate P_ij (all moves without arguments)
    Moves { i: Option<usize>, j: Option<usize> },
    /// Run a verification suite on the truncation window
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Diagonal Dirac candidate d(γ), e.g. "sumabs" or "abs(g(2,1)) + 2*g(0,1)"
        #[arg(long)]
        dirac: Option<String>,
        /// Base point of the free-plane coset for `witness`
        #[arg(long)]
        point: Option<String>,
    },
    /// Sweep constructions and the two golden tables
    Sweep {
        #[arg(value_enum)]
        kind: SweepKind,
        /// Free entry `a` of the golden tables
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        a: i64,
        /// Free entry `b` of the golden tables
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        b: i64,
        /// Start point, e.g. "(2,2)=1,(0,1)=-1"
        #[arg(long)]
        point: Option<String>,
    },
    /// Disjoint-path growth curve for a partition over windows 2..=n-max
    Ladder {
        #[arg(value_enum)]
        partition: PartitionKind,
        /// Base point of the coset partition
        #[arg(long)]
        point: Option<String>,
    },
    /// Combined evidence and verdict on the sign candidates
    Verdict {
        /// Base point of the tested coset candidate
        #[arg(long)]
        point: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let g = cli.global;
    let omega = match &cli.command {
        Command::Decompose { omega: Some(w) } => Some(w.clone()),
        _ => g.omega.clone(),
    };
    let flags = Overrides {
        omega,
        ell: g.ell,
        q: g.q,
        n_max: g.n_max,
        z_max: g.z_max,
        margin: g.margin,
        count: g.count,
        k: g.k,
        c: g.c,
        json: g.json.then_some(true),
    };
    let (cfg, d) = match RunConfig::resolve(flags, g.config.as_deref()) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let ctx = Ctx { cfg: &cfg, d: &d };
    let outcome = match &cli.command {
        Command::Decompose { .. } => commands::decompose(&ctx),
        Command::Diagram { reduced } => commands::diagram(&ctx, *reduced),
        Command::Moves { i, j } => match (i, j) {
            (Some(i), Some(j)) => commands::moves(&ctx, Some((*i, *j))),
            (None, None) => commands::moves(&ctx, None),
            _ => Err(Failure::Usage("give both i and j, or neither".into())),
        },
        Command::Verify { suite, dirac, point } => commands::verify(&ctx, *suite, dirac.as_deref(), point.as_deref()),
        Command::Sweep { kind, a, b, point } => {
            commands::sweep(&ctx, *kind, SweepArgs { a: *a, b: *b, point: point.as_deref() })
        }
        Command::Ladder { partition, point } => commands::ladder(&ctx, *partition, point.as_deref()),
        Command::Verdict { point } => commands::verdict_cmd(&ctx, point.as_deref()),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
    };
    let text = report.render(&cfg);
    match &g.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if report.discrepancies.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
