mod bench;
mod failure;
mod script;
mod selfcheck;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dynsa::DEFAULT_SEED;

use failure::Failure;

/// Dynamic suffix array driver: script replay, benchmarks and self-checks.
#[derive(Debug, Parser)]
#[command(name = "dynsa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replay an operation script against a text file.
    Run {
        #[command(flatten)]
        text: TextArgs,
        /// Script file, one command per line.
        #[arg(long)]
        script: PathBuf,
    },
    /// Run a benchmark grid on random texts and emit CSV.
    Bench(bench::BenchArgs),
    /// Compare the index against the brute-force oracle under random substitutions.
    Selfcheck {
        #[command(flatten)]
        text: TextArgs,
        /// Number of random substitutions, each followed by a full comparison.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Sort the sentinel below every byte in the oracle (negative control).
        #[arg(long)]
        flip_sentinel_order: bool,
    },
}

#[derive(Debug, Args)]
struct TextArgs {
    /// Raw text file, read verbatim.
    #[arg(long)]
    text: PathBuf,
    /// Trade-off parameter; defaults to ceil(sqrt(n)), clamped to [1, n].
    #[arg(long)]
    k: Option<usize>,
    /// Seed for the fingerprint bases and any random choices.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Drop one trailing "\n" (or "\r\n") from the text.
    #[arg(long)]
    strip_trailing_newline: bool,
}

impl TextArgs {
    fn load(&self) -> Result<(Vec<u8>, usize), Failure> {
        let mut bytes = read(&self.text)?;
        if self.strip_trailing_newline && bytes.last() == Some(&b'\n') {
            bytes.pop();
            if bytes.last() == Some(&b'\r') {
                bytes.pop();
            }
        }
        if bytes.is_empty() {
            return Err(Failure::Data(format!("{}: text is empty", self.text.display())));
        }
        let k = self.k.unwrap_or_else(|| default_k(bytes.len()));
        Ok((bytes, k))
    }
}

pub(crate) fn default_k(n: usize) -> usize {
    let r = n.isqrt();
    if r * r < n {
        r + 1
    } else {
        r.max(1)
    }
}

pub(crate) fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run { text, script } => text
            .load()
            .and_then(|(bytes, k)| script::run(&bytes, k, text.seed, &script)),
        Command::Bench(args) => bench::run(&args),
        Command::Selfcheck {
            text,
            trials,
            flip_sentinel_order,
        } => text
            .load()
            .and_then(|(bytes, k)| selfcheck::run(&bytes, k, text.seed, trials, flip_sentinel_order)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dynsa: {f}");
            ExitCode::from(f.code())
        }
    }
}
