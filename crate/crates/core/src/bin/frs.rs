use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use folded_rs::cli::{self, parse_rational, ExperimentConfig};
use folded_rs::decoder::DEFAULT_PRUNE_LIMIT;
use folded_rs::verify::SuiteSizes;
use folded_rs::{Error, Rational, Result};

/// Folded Reed-Solomon codes: encode, corrupt, list decode, and check list
/// size bounds.
///
/// A params file holds one line `q gamma m n msg_len`. Words are N lines of
/// m field elements.
///
/// Exit status: 0 ok, 1 usage error, 2 a bound check failed, 3 an
/// enumeration limit was hit.
#[derive(Parser)]
#[command(name = "frs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a message given as coefficients, lowest degree first.
    Encode {
        #[arg(long)]
        params: PathBuf,
        /// e.g. "3 0 1" for 3 + X^2
        #[arg(long, allow_hyphen_values = true)]
        message: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace exactly `errors` symbols of a word with different values.
    Corrupt {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        errors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List decode a received word.
    Decode {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        word: PathBuf,
        /// Strict radius a/b; defaults to k/(k+1) (1 - m/(m-k+1) R).
        #[arg(long, value_parser = rational)]
        radius: Option<Rational>,
        #[arg(long, default_value_t = DEFAULT_PRUNE_LIMIT)]
        limit: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run seeded decoding trials from a key=value config; writes CSV.
    Experiment {
        config: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = rational)]
        radius: Option<Rational>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print radius and list size bounds.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_parser = rational)]
        rate: Option<Rational>,
        /// Subspace dimension; defaults to k - 1.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suites against brute-force enumeration.
    Verify {
        /// Trials per suite; omit for the full suite sizes.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Runs the command; `Ok(false)` means it ran but a check failed.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Encode {
            params,
            message,
            out,
        } => emit(out.as_deref(), &cli::cmd_encode(&read(&params)?, &message)?)?,
        Command::Corrupt {
            params,
            word,
            errors,
            seed,
            out,
        } => emit(
            out.as_deref(),
            &cli::cmd_corrupt(&read(&params)?, &read(&word)?, errors, seed)?,
        )?,
        Command::Decode {
            params,
            k,
            word,
            radius,
            limit,
            out,
        } => emit(
            out.as_deref(),
            &cli::cmd_decode(&read(&params)?, k, &read(&word)?, radius, limit)?,
        )?,
        Command::Experiment {
            config,
            k,
            radius,
            seed,
            trials,
            limit,
            out,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(k) = k {
                cfg.k = k;
            }
            if radius.is_some() {
                cfg.radius = radius;
            }
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(trials) = trials {
                cfg.trials = trials;
            }
            if let Some(limit) = limit {
                cfg.limit = limit;
            }
            cfg.out = out;
            let result = cli::cmd_experiment(&cfg)?;
            emit(cfg.out.as_deref(), &result.csv)?;
            return Ok(result.all_pass);
        }
        Command::Bounds {
            k,
            m,
            rate,
            d,
            csv,
            out,
        } => emit(out.as_deref(), &cli::cmd_bounds(m, k, rate, d, csv)?)?,
        Command::Verify { trials, seed, out } => {
            let sizes = trials.map_or_else(SuiteSizes::full, SuiteSizes::uniform);
            let (text, ok) = cli::cmd_verify(sizes, seed)?;
            emit(out.as_deref(), &text)?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("frs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
