use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sun_gates_cli::{
    cmd_cross, cmd_disk, cmd_encode, cmd_generators, cmd_partial_wave, cmd_verify, parse_complex, parse_state,
    CliError, Format, Outcome, RunConfig,
};
use sun_gates_core::{ChannelKind, Complex64, DEFAULT_TOLERANCE};

/// SU(N) two-qudit gates, amplitudes and block encodings.
#[derive(Parser)]
#[command(name = "sun-gates", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Qudit dimension.
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,

    /// Channel (s or t). Commands that need one default to s.
    #[arg(long, global = true)]
    channel: Option<ChannelKind>,

    #[arg(long, global = true, env = "SUN_GATES_TOLERANCE", default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the generators and their checks.
    Generators,
    /// Run the identity suite.
    Verify {
        /// Check every dimension from 2 up to --n.
        #[arg(long)]
        sweep: bool,
    },
    /// Block-encode a·S_I + b·Z.
    Encode {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        b: Complex64,
        /// Input state, comma-separated real amplitudes.
        #[arg(long, allow_hyphen_values = true)]
        psi: Option<String>,
    },
    /// Map (a, b) to the other channel.
    Cross {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        b: Complex64,
    },
    /// Sample the allowed amplitude disk.
    Disk {
        #[arg(long, default_value_t = 16)]
        resolution: usize,
    },
    /// Check partial-wave sectors read from a CSV file.
    PartialWave { sectors: PathBuf },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let g = cli.global;
    let cfg = RunConfig {
        n: g.n,
        channel: g.channel,
        tolerance: g.tolerance,
        seed: g.seed,
        output: g.output,
        format: g.format,
    };
    let outcome = match cli.command {
        Command::Generators => cmd_generators(&cfg)?,
        Command::Verify { sweep } => cmd_verify(&cfg, sweep)?,
        Command::Encode { a, b, psi } => {
            let psi = psi.map(|s| parse_state(&s)).transpose().map_err(CliError::Usage)?;
            cmd_encode(&cfg, a, b, psi.as_deref())?
        }
        Command::Cross { a, b } => cmd_cross(&cfg, a, b)?,
        Command::Disk { resolution } => cmd_disk(&cfg, resolution)?,
        Command::PartialWave { sectors } => cmd_partial_wave(&cfg, &sectors)?,
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, &outcome.text)?,
        None => {
            let mut out = std::io::stdout().lock();
            let written = out.write_all(outcome.text.as_bytes()).and_then(|_| {
                if outcome.text.ends_with('\n') {
                    Ok(())
                } else {
                    out.write_all(b"\n")
                }
            });
            match written {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
