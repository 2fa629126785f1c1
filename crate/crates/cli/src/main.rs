use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orbimirror_cli::{execute, Format, Invocation, Verb};

/// Genus-0 orbifold Gromov-Witten invariants of CY3 complete intersections
/// in weighted projective stacks.
#[derive(Parser)]
#[command(name = "orbimirror", version)]
struct Cli {
    #[command(subcommand)]
    verb: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and emit the configured outputs.
    Compute(Flags),
    /// Inertia sectors with ages, dimensions and stratum masses.
    Sectors(Flags),
    /// Admissible basis and pairing.
    Basis(Flags),
    /// Extended weight matrix and multidegrees.
    Git(Flags),
}

#[derive(clap::Args)]
struct Flags {
    /// JSON config; standard input when omitted or `-`.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output format, overriding the config.
    #[arg(long, value_enum, value_name = "FORMAT")]
    emit: Option<Format>,
    /// Total degree truncation, overriding the config.
    #[arg(long, value_name = "D")]
    truncation: Option<u32>,
    /// Neither read nor write the bundle cache.
    #[arg(long)]
    no_cache: bool,
    /// Report per-stage timings on stderr.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (verb, flags) = match cli.verb {
        Command::Compute(f) => (Verb::Compute, f),
        Command::Sectors(f) => (Verb::Sectors, f),
        Command::Basis(f) => (Verb::Basis, f),
        Command::Git(f) => (Verb::Git, f),
    };
    let inv = Invocation { config: flags.config, emit: flags.emit, truncation: flags.truncation, no_cache: flags.no_cache };
    match execute(verb, &inv) {
        Ok((bundle, bytes)) => {
            if flags.timings {
                let t = &bundle.timing;
                if t.cache_hit {
                    eprintln!("cache hit");
                }
                for (stage, d) in &t.stages {
                    eprintln!("{stage:<12} {:>10.3} ms", d.as_secs_f64() * 1e3);
                }
            }
            let mut out = std::io::stdout().lock();
            if out.write_all(&bytes).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
